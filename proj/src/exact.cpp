#include "pcover/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "pcover/error.hpp"

namespace pcover {
namespace {

struct Incumbent {
  double weight = std::numeric_limits<double>::infinity();
  std::vector<SetId> ids;
  bool found = false;
  double tol = 1e-9;

  // Strictly lighter, or equal weight with a lexicographically smaller list.
  bool improved_by(double w, const std::vector<SetId>& sorted_ids) const {
    if (!found) return true;
    if (w < weight - tol) return true;
    if (w > weight + tol) return false;
    return sorted_ids < ids;
  }

  void offer(double w, std::vector<SetId> sorted_ids) {
    if (improved_by(w, sorted_ids)) {
      weight = w;
      ids = std::move(sorted_ids);
      found = true;
    }
  }
};

double tie_tolerance(const Instance& instance) {
  return 1e-9 * std::max(1.0, instance.total_weight());
}

OracleResult finish(const Instance& instance, Incumbent& best,
                    std::int64_t nodes) {
  if (!best.found) throw SolverError("exact: no feasible cover exists");
  OracleResult result;
  result.cover = Cover(std::move(best.ids));
  result.weight = cover_weight(instance, result.cover.chosen);
  result.nodes = nodes;
  return result;
}

class BranchAndBound {
 public:
  explicit BranchAndBound(const Instance& instance)
      : inst_(instance),
        m_(instance.num_sets()),
        covered_(instance.num_elements(), 0),
        potential_(instance.num_elements(), 0),
        color_covered_(instance.num_colors(), 0),
        color_potential_(instance.num_colors(), 0) {
    order_.resize(m_);
    std::iota(order_.begin(), order_.end(), 0);
    // Cheapest weight per element first; empty sets last.
    std::stable_sort(order_.begin(), order_.end(), [&](SetId a, SetId b) {
      const double sa = static_cast<double>(inst_.set(a).elements.size());
      const double sb = static_cast<double>(inst_.set(b).elements.size());
      if (sa == 0.0 || sb == 0.0) return sa > sb;
      return inst_.weight(a) * sb < inst_.weight(b) * sa;
    });
    suffix_min_weight_.assign(m_ + 1, std::numeric_limits<double>::infinity());
    for (int p = m_ - 1; p >= 0; --p) {
      suffix_min_weight_[p] =
          std::min(suffix_min_weight_[p + 1], inst_.weight(order_[p]));
    }
    for (SetId i = 0; i < m_; ++i) {
      for (ElementId e : inst_.set(i).elements) {
        if (potential_[e]++ == 0) {
          for (ColorId t : inst_.colors_containing(e)) ++color_potential_[t];
        }
      }
    }
    best_.tol = tie_tolerance(instance);
  }

  OracleResult run() {
    for (ColorId t = 0; t < inst_.num_colors(); ++t) {
      if (color_potential_[t] < inst_.color(t).requirement) {
        throw SolverError("exact: color " + std::to_string(t) +
                          " cannot be satisfied");
      }
    }
    dfs(0, 0.0);
    return finish(inst_, best_, nodes_);
  }

 private:
  int need(ColorId t) const {
    return std::max(0, inst_.color(t).requirement - color_covered_[t]);
  }

  double lower_bound(int p, double weight) const {
    int residual = 0;
    for (ColorId t = 0; t < inst_.num_colors(); ++t) residual += need(t);
    if (residual == 0) return weight;
    int best_gain = 0;
    std::vector<int> gain(inst_.num_colors());
    for (int q = p; q < m_; ++q) {
      std::fill(gain.begin(), gain.end(), 0);
      for (ElementId e : inst_.set(order_[q]).elements) {
        if (covered_[e]) continue;
        for (ColorId t : inst_.colors_containing(e)) ++gain[t];
      }
      int total = 0;
      for (ColorId t = 0; t < inst_.num_colors(); ++t) {
        total += std::min(gain[t], need(t));
      }
      best_gain = std::max(best_gain, total);
    }
    if (best_gain == 0) return std::numeric_limits<double>::infinity();
    const int sets_needed = (residual + best_gain - 1) / best_gain;
    return weight + sets_needed * suffix_min_weight_[p];
  }

  void include(SetId i, int delta) {
    for (ElementId e : inst_.set(i).elements) {
      if (delta > 0 ? covered_[e]++ == 0 : --covered_[e] == 0) {
        for (ColorId t : inst_.colors_containing(e)) color_covered_[t] += delta;
      }
    }
  }

  // Returns false if dropping set i leaves some color unsatisfiable.
  bool exclude(SetId i, int delta) {
    bool ok = true;
    for (ElementId e : inst_.set(i).elements) {
      if (delta < 0 ? --potential_[e] == 0 : potential_[e]++ == 0) {
        for (ColorId t : inst_.colors_containing(e)) {
          color_potential_[t] += delta;
          if (color_potential_[t] < inst_.color(t).requirement) ok = false;
        }
      }
    }
    return ok;
  }

  void dfs(int p, double weight) {
    ++nodes_;
    bool done = true;
    for (ColorId t = 0; t < inst_.num_colors() && done; ++t) done = need(t) == 0;
    if (done) {
      std::vector<SetId> ids = chosen_;
      std::sort(ids.begin(), ids.end());
      best_.offer(weight, std::move(ids));
      return;
    }
    if (p == m_) return;
    if (best_.found && lower_bound(p, weight) > best_.weight + best_.tol) return;

    const SetId i = order_[p];
    include(i, +1);
    chosen_.push_back(i);
    dfs(p + 1, weight + inst_.weight(i));
    chosen_.pop_back();
    include(i, -1);

    if (exclude(i, -1)) dfs(p + 1, weight);
    exclude(i, +1);
  }

  const Instance& inst_;
  int m_;
  std::vector<SetId> order_;
  std::vector<double> suffix_min_weight_;
  std::vector<int> covered_;
  std::vector<int> potential_;
  std::vector<int> color_covered_;
  std::vector<int> color_potential_;
  std::vector<SetId> chosen_;
  Incumbent best_;
  std::int64_t nodes_ = 0;
};

using Bits = std::vector<std::uint64_t>;

Bits to_bits(const std::vector<ElementId>& elements, int words) {
  Bits bits(words, 0);
  for (ElementId e : elements) bits[e / 64] |= std::uint64_t{1} << (e % 64);
  return bits;
}

}  // namespace

OracleResult exact_opt(const Instance& instance, int max_sets) {
  if (instance.num_sets() > max_sets) {
    throw InputError("exact: " + std::to_string(instance.num_sets()) +
                     " sets exceeds the limit of " + std::to_string(max_sets));
  }
  return BranchAndBound(instance).run();
}

OracleResult exact_opt_bruteforce(const Instance& instance) {
  const int m = instance.num_sets();
  if (m > kBruteForceMaxSets) {
    throw InputError("exact (brute force): " + std::to_string(m) +
                     " sets exceeds the limit of " +
                     std::to_string(kBruteForceMaxSets));
  }
  const int words = (instance.num_elements() + 63) / 64;
  std::vector<Bits> set_bits;
  for (const auto& s : instance.sets()) set_bits.push_back(to_bits(s.elements, words));
  std::vector<Bits> color_bits;
  for (const auto& c : instance.colors()) color_bits.push_back(to_bits(c.elements, words));

  Incumbent best;
  best.tol = tie_tolerance(instance);
  Bits uni(words);
  const std::uint64_t limit = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    std::fill(uni.begin(), uni.end(), 0);
    std::vector<SetId> ids;
    double weight = 0.0;
    for (SetId i = 0; i < m; ++i) {
      if (!((mask >> i) & 1U)) continue;
      ids.push_back(i);
      weight += instance.weight(i);
      for (int w = 0; w < words; ++w) uni[w] |= set_bits[i][w];
    }
    bool feasible = true;
    for (ColorId t = 0; t < instance.num_colors() && feasible; ++t) {
      int count = 0;
      for (int w = 0; w < words; ++w) count += std::popcount(uni[w] & color_bits[t][w]);
      feasible = count >= instance.color(t).requirement;
    }
    if (feasible) best.offer(weight, std::move(ids));
  }
  return finish(instance, best, static_cast<std::int64_t>(limit));
}

}  // namespace pcover
