#include "pcover/rounders.hpp"

#include <algorithm>
#include <string>

#include "pcover/error.hpp"
#include "pcover/lp.hpp"

namespace pcover {
namespace {

// Slack for "fractionally covered" checks after scaling by 6 alpha, which
// magnifies LP feasibility error.
constexpr double kScaledCoverTol = 1e-5;

// Original id when the system came from project(), else the local one.
ElementId source_id(const SetSystem& system, ElementId e) {
  return e < static_cast<ElementId>(system.original_element.size())
             ? system.original_element[e]
             : e;
}

}  // namespace

std::vector<ElementId> heavy_elements(const Instance& instance,
                                      std::span<const double> x, double alpha) {
  if (static_cast<int>(x.size()) != instance.num_sets()) {
    throw InputError("heavy_elements: x has " + std::to_string(x.size()) +
                     " entries, expected " + std::to_string(instance.num_sets()));
  }
  const double threshold = heavy_threshold(alpha) - kFeasibilityTol;
  std::vector<ElementId> heavy;
  for (ElementId e = 0; e < instance.num_elements(); ++e) {
    double coverage = 0.0;
    for (SetId i : instance.sets_containing(e)) coverage += x[i];
    if (coverage >= threshold) heavy.push_back(e);
  }
  return heavy;
}

std::vector<double> scale_solution(std::span<const double> x, double alpha) {
  std::vector<double> scaled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    scaled[i] = std::min(6.0 * alpha * x[i], 1.0);
  }
  return scaled;
}

Cover greedy_rounder(const SetSystem& system) {
  const int n = system.num_elements;
  const int m = static_cast<int>(system.sets.size());
  std::vector<std::uint8_t> reachable(n, 0);
  for (const auto& s : system.sets) {
    for (ElementId e : s.elements) reachable[e] = 1;
  }
  for (ElementId e = 0; e < n; ++e) {
    if (!reachable[e]) {
      throw InputError("greedy_rounder: element " +
                       std::to_string(source_id(system, e)) +
                       " is not contained in any set");
    }
  }

  std::vector<std::uint8_t> covered(n, 0);
  std::vector<std::uint8_t> taken(m, 0);
  std::vector<SetId> chosen;
  int remaining = n;
  while (remaining > 0) {
    SetId best = -1;
    int best_gain = 0;
    for (SetId i = 0; i < m; ++i) {
      if (taken[i]) continue;
      int gain = 0;
      for (ElementId e : system.sets[i].elements) gain += covered[e] ? 0 : 1;
      if (gain == 0) continue;
      // w_i / gain_i < w_best / gain_best without division.
      if (best < 0 ||
          system.sets[i].weight * best_gain < system.sets[best].weight * gain) {
        best = i;
        best_gain = gain;
      }
    }
    taken[best] = 1;
    chosen.push_back(best);
    for (ElementId e : system.sets[best].elements) {
      if (!covered[e]) {
        covered[e] = 1;
        --remaining;
      }
    }
  }
  return Cover(std::move(chosen));
}

Cover frequency_rounder(const SetSystem& system, std::span<const double> scaled) {
  const int m = static_cast<int>(system.sets.size());
  if (static_cast<int>(scaled.size()) != m) {
    throw InputError("frequency_rounder: fractional vector has wrong length");
  }
  std::vector<int> frequency(system.num_elements, 0);
  std::vector<double> coverage(system.num_elements, 0.0);
  for (SetId i = 0; i < m; ++i) {
    for (ElementId e : system.sets[i].elements) {
      ++frequency[e];
      coverage[e] += scaled[i];
    }
  }
  for (ElementId e = 0; e < system.num_elements; ++e) {
    if (coverage[e] < 1.0 - kScaledCoverTol) {
      throw InputError("frequency_rounder: element " +
                       std::to_string(source_id(system, e)) +
                       " is fractionally covered only " +
                       std::to_string(coverage[e]));
    }
  }
  const int f = system.num_elements == 0
                    ? 0
                    : *std::max_element(frequency.begin(), frequency.end());
  std::vector<SetId> chosen;
  if (f == 0) return Cover{};
  const double threshold = (1.0 - kScaledCoverTol) / f;
  for (SetId i = 0; i < m; ++i) {
    if (!system.sets[i].elements.empty() && scaled[i] >= threshold) {
      chosen.push_back(i);
    }
  }
  return Cover(std::move(chosen));
}

BetaRounder greedy_beta_rounder() {
  return BetaRounder{"greedy", false,
                     [](const SetSystem& system, std::span<const double>) {
                       return greedy_rounder(system);
                     }};
}

BetaRounder frequency_beta_rounder() {
  return BetaRounder{"frequency", true,
                     [](const SetSystem& system, std::span<const double> xt) {
                       return frequency_rounder(system, xt);
                     }};
}

BetaRounder make_rounder(std::string_view name) {
  if (name == "greedy") return greedy_beta_rounder();
  if (name == "frequency") return frequency_beta_rounder();
  throw InputError("rounder: unknown rounder '" + std::string(name) +
                   "' (expected greedy or frequency)");
}

HeavySplit split_heavy(const Instance& instance, std::span<const double> x,
                       double alpha, const BetaRounder& rounder) {
  HeavySplit split;
  split.heavy = heavy_elements(instance, x, alpha);
  const auto scaled = scale_solution(x, alpha);
  const SetSystem system = project(instance, split.heavy);
  split.heavy_cover = rounder.round(system, scaled);

  std::vector<std::uint8_t> covered(instance.num_elements(), 0);
  for (SetId i : split.heavy_cover.chosen) {
    for (ElementId e : instance.set(i).elements) covered[e] = 1;
  }
  for (ElementId e : split.heavy) {
    if (!covered[e]) {
      throw ContractError("rounder '" + rounder.name +
                          "' left heavy element " + std::to_string(e) +
                          " uncovered");
    }
  }

  split.base = split.heavy_cover.chosen;
  const double threshold = heavy_threshold(alpha);
  for (SetId i = 0; i < instance.num_sets(); ++i) {
    if (x[i] >= threshold) split.base.push_back(i);
  }
  std::sort(split.base.begin(), split.base.end());
  split.base.erase(std::unique(split.base.begin(), split.base.end()),
                   split.base.end());
  return split;
}

}  // namespace pcover
