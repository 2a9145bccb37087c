#include "pcover/generators.hpp"

#include <cmath>
#include <random>
#include <string>

#include "pcover/error.hpp"

namespace pcover {
namespace {

class Draws {
 public:
  explicit Draws(std::uint64_t seed) : gen_(seed) {}
  double unit() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  // Uniform integer in [lo, hi].
  int between(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(gen_() % span);
  }

 private:
  std::mt19937_64 gen_;
};

std::vector<ColorClass> blocks(int n, int r) {
  std::vector<ColorClass> colors(r);
  for (int t = 0; t < r; ++t) {
    const int lo = static_cast<int>(static_cast<long long>(t) * n / r);
    const int hi = static_cast<int>(static_cast<long long>(t + 1) * n / r);
    for (ElementId e = lo; e < hi; ++e) colors[t].elements.push_back(e);
  }
  return colors;
}

std::vector<WeightedSet> random_sets(int n, int m, double density,
                                     double min_weight, double max_weight,
                                     Draws& draws) {
  std::vector<WeightedSet> sets(m);
  std::vector<std::uint8_t> seen(n, 0);
  for (auto& s : sets) {
    s.weight = min_weight + (max_weight - min_weight) * draws.unit();
    for (ElementId e = 0; e < n; ++e) {
      if (draws.unit() < density) {
        s.elements.push_back(e);
        seen[e] = 1;
      }
    }
  }
  for (ElementId e = 0; e < n; ++e) {
    if (!seen[e]) sets[draws.between(0, m - 1)].elements.push_back(e);
  }
  return sets;
}

void check_params(int n, int m, int r, double density, double min_weight,
                  double max_weight) {
  if (n < 1) throw InputError("n must be positive");
  if (m < 1) throw InputError("m must be positive");
  if (r < 1 || r > n) throw InputError("r must lie in [1, n]");
  if (!(density > 0.0 && density <= 1.0)) throw InputError("density must lie in (0, 1]");
  if (!(min_weight >= 0.0 && min_weight <= max_weight)) {
    throw InputError("weights need 0 <= min_weight <= max_weight");
  }
}

}  // namespace

Instance gap_instance(int n) {
  const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (n < 1 || s * s != n) {
    throw InputError("gap instance needs a positive perfect square, got " +
                     std::to_string(n));
  }
  std::vector<WeightedSet> sets(s);
  std::vector<ColorClass> colors(s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) sets[i].elements.push_back(i * s + j);
    colors[i].elements = sets[i].elements;
    colors[i].requirement = 1;
  }
  return Instance(n, std::move(sets), std::move(colors));
}

GeometricInstance setcover_to_intervals(const Instance& sc) {
  if (sc.num_colors() != 1 ||
      static_cast<int>(sc.color(0).elements.size()) != sc.num_elements() ||
      sc.color(0).requirement != sc.num_elements()) {
    throw InputError("interval encoding expects a single color covering all "
                     "elements with requirement n");
  }
  Geometry geometry;
  std::vector<WeightedSet> sets(sc.num_sets());
  std::vector<ColorClass> colors(sc.num_elements());
  ElementId next = 0;
  for (SetId i = 0; i < sc.num_sets(); ++i) {
    const auto& members = sc.set(i).elements;
    const double lo = 2.0 * i;
    geometry.set_intervals.push_back({lo, lo + 1.0});
    sets[i].weight = sc.weight(i);
    const double slots = static_cast<double>(members.size()) + 1.0;
    for (std::size_t rank = 0; rank < members.size(); ++rank) {
      geometry.points.push_back(lo + (static_cast<double>(rank) + 1.0) / slots);
      geometry.point_colors.push_back(members[rank]);
      sets[i].elements.push_back(next);
      colors[members[rank]].elements.push_back(next);
      ++next;
    }
  }
  for (auto& c : colors) c.requirement = 1;
  return {Instance(next, std::move(sets), std::move(colors)), std::move(geometry)};
}

Instance random_instance(const RandomParams& p) {
  check_params(p.n, p.m, p.r, p.density, p.min_weight, p.max_weight);
  Draws draws(p.seed);
  auto sets = random_sets(p.n, p.m, p.density, p.min_weight, p.max_weight, draws);
  auto colors = blocks(p.n, p.r);
  for (auto& c : colors) {
    c.requirement = draws.between(1, static_cast<int>(c.elements.size()));
  }
  return Instance(p.n, std::move(sets), std::move(colors));
}

Instance random_setcover(int n, int m, double density, std::uint64_t seed,
                         double min_weight, double max_weight) {
  check_params(n, m, 1, density, min_weight, max_weight);
  Draws draws(seed);
  auto sets = random_sets(n, m, density, min_weight, max_weight, draws);
  auto colors = blocks(n, 1);
  colors[0].requirement = n;
  return Instance(n, std::move(sets), std::move(colors));
}

}  // namespace pcover
