#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "pcover/instance.hpp"
#include "pcover/lp.hpp"
#include "pcover/rounders.hpp"

namespace pcover {

struct FractionalSolution {
  std::vector<double> x;  // per set
  std::vector<double> z;  // per element
};

// Variable layout shared by every partition LP: x_0..x_{m-1}, then z_0..z_{n-1}.
inline int x_var(SetId i) { return i; }
inline int z_var(const Instance& instance, ElementId e) {
  return instance.num_sets() + e;
}

// Natural relaxation: x, z in [0,1], sum_{S_i ∋ e} x_i >= z_e for every
// element, sum_{e ∈ C_t} z_e >= k_t for every color, minimize sum w_i x_i.
LinearProgram build_natural_lp(const Instance& instance);

FractionalSolution to_fractional(const Instance& instance,
                                 std::span<const double> values);

// Optimum of the natural relaxation.
double natural_lp_value(const Instance& instance);

// Knapsack-cover inequality for color t relative to the base of `state`:
//   sum_{S_i ∉ A} min(deg_t(S_i, A), k_t(A)) x_i >= k_t(A).
// Zero coefficients are omitted. Throws ContractError when k_t(A) = 0.
LpRow kc_row(const Instance& instance, const ResidualState& state, ColorId t);

// Lowest color whose knapsack-cover row for `base` is violated by more than
// kFeasibilityTol, or nullopt if every row holds (colors with k_t(A) = 0 are
// vacuous).
std::optional<ColorId> check_kc(const Instance& instance,
                                const FractionalSolution& frac,
                                std::span<const SetId> base);

struct CutRecord {
  ColorId color = 0;
  int base_size = 0;
  int rhs = 0;
  double violation = 0.0;
  double delta = 0.0;
};

struct FindOptions {
  // Guesses for the optimum never go below this value.
  double min_delta = 0.0;
  // Cap on separated cuts; 0 picks 50 r ceil(log2(sum w / w_min + 2)).
  int max_cuts = 0;
  // Seed the LP with the knapsack-cover rows for the empty base.
  bool root_cuts = true;
  std::function<void(const CutRecord&)> on_cut;
};

struct StrengthenedSolution {
  FractionalSolution frac;
  std::vector<ElementId> heavy;
  Cover heavy_cover;         // A'
  std::vector<SetId> base;   // A
  double delta = 0.0;
  double lp_value = 0.0;     // sum w_i x_i
  double root_value = 0.0;   // natural LP plus root cuts
  int root_cuts = 0;
  int separated_cuts = 0;
  int lp_solves = 0;
  LinearProgram lp;          // the last LP solved
};

// Guess-and-cut search: geometric search on the cost guess Delta; for each
// guess re-solve {natural rows, sum w x <= Delta, accumulated cuts}, derive
// H, A', A from the solution, and add the knapsack-cover row of the lowest
// violated color until none is violated.
StrengthenedSolution find_solution(const Instance& instance,
                                   const BetaRounder& rounder, double alpha,
                                   const FindOptions& options = {});

}  // namespace pcover
