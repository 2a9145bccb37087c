#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcover/instance.hpp"

namespace pcover {

// Coverage threshold separating heavy from light: 1 / (6 alpha).
inline double heavy_threshold(double alpha) { return 1.0 / (6.0 * alpha); }

// Elements whose fractional coverage sum_{S_i ∋ e} x_i reaches the threshold
// (with kFeasibilityTol slack), ascending.
std::vector<ElementId> heavy_elements(const Instance& instance,
                                      std::span<const double> x, double alpha);

// x~_i = min(6 alpha x_i, 1).
std::vector<double> scale_solution(std::span<const double> x, double alpha);

// Weighted greedy set cover on a projected system: repeatedly take the set
// with the smallest weight per newly covered element (lowest index on ties).
// Throws InputError if some element lies in no set.
Cover greedy_rounder(const SetSystem& system);

// Threshold rounding: every set with x~_i >= 1/f, where f is the largest
// element frequency of the system. Sets with no element in the system are
// skipped. Throws InputError if x~ does not fractionally cover every element.
Cover frequency_rounder(const SetSystem& system, std::span<const double> scaled);

// A set-cover rounding procedure used for the heavy elements. `round`
// receives the projection onto the heavy elements and the scaled solution.
struct BetaRounder {
  std::string name;
  bool uses_fractional = false;
  std::function<Cover(const SetSystem&, std::span<const double>)> round;
};

BetaRounder greedy_beta_rounder();
BetaRounder frequency_beta_rounder();
// "greedy" or "frequency"; anything else throws InputError.
BetaRounder make_rounder(std::string_view name);

// H, the rounder's cover A' of H, and A = A' ∪ {S_i : x_i >= 1/(6 alpha)}.
struct HeavySplit {
  std::vector<ElementId> heavy;
  Cover heavy_cover;
  std::vector<SetId> base;
};

HeavySplit split_heavy(const Instance& instance, std::span<const double> x,
                       double alpha, const BetaRounder& rounder);

}  // namespace pcover
