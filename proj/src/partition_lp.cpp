#include "pcover/partition_lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "pcover/error.hpp"

namespace pcover {

LinearProgram build_natural_lp(const Instance& instance) {
  LinearProgram lp;
  for (SetId i = 0; i < instance.num_sets(); ++i) {
    lp.add_variable(0.0, 1.0, instance.weight(i), "x" + std::to_string(i));
  }
  for (ElementId e = 0; e < instance.num_elements(); ++e) {
    lp.add_variable(0.0, 1.0, 0.0, "z" + std::to_string(e));
  }
  for (ElementId e = 0; e < instance.num_elements(); ++e) {
    LpRow row;
    for (SetId i : instance.sets_containing(e)) row.terms.push_back({x_var(i), 1.0});
    row.terms.push_back({z_var(instance, e), -1.0});
    row.sense = RowSense::kGreaterEqual;
    row.rhs = 0.0;
    row.label = "cover[e=" + std::to_string(e) + "]";
    lp.add_row(std::move(row));
  }
  for (ColorId t = 0; t < instance.num_colors(); ++t) {
    LpRow row;
    for (ElementId e : instance.color(t).elements) {
      row.terms.push_back({z_var(instance, e), 1.0});
    }
    row.sense = RowSense::kGreaterEqual;
    row.rhs = instance.color(t).requirement;
    row.label = "color[t=" + std::to_string(t) + "]";
    lp.add_row(std::move(row));
  }
  return lp;
}

FractionalSolution to_fractional(const Instance& instance,
                                 std::span<const double> values) {
  const auto m = static_cast<std::size_t>(instance.num_sets());
  FractionalSolution frac;
  frac.x.assign(values.begin(), values.begin() + m);
  frac.z.assign(values.begin() + m, values.begin() + m + instance.num_elements());
  return frac;
}

double natural_lp_value(const Instance& instance) {
  const auto outcome = solve_lp(build_natural_lp(instance));
  if (!outcome.optimal()) {
    throw SolverError("natural LP infeasible; instance violates its invariants");
  }
  return outcome.objective;
}

LpRow kc_row(const Instance& instance, const ResidualState& state, ColorId t) {
  const int k = state.residual_per_color[t];
  if (k == 0) {
    throw ContractError("kc_row: color " + std::to_string(t) +
                        " has no residual requirement");
  }
  LpRow row;
  for (SetId i = 0; i < instance.num_sets(); ++i) {
    if (state.in_base(i)) continue;
    const int coef = std::min(degree(instance, state, i, t), k);
    if (coef > 0) row.terms.push_back({x_var(i), static_cast<double>(coef)});
  }
  row.sense = RowSense::kGreaterEqual;
  row.rhs = k;
  row.label = "kc[t=" + std::to_string(t) + ",|A|=" +
              std::to_string(state.base.size()) + "]";
  return row;
}

std::optional<ColorId> check_kc(const Instance& instance,
                                const FractionalSolution& frac,
                                std::span<const SetId> base) {
  const ResidualState state = residual(instance, base);
  for (ColorId t = 0; t < instance.num_colors(); ++t) {
    if (state.satisfied(t)) continue;
    const LpRow row = kc_row(instance, state, t);
    if (row_activity(row, frac.x) < row.rhs - kFeasibilityTol) return t;
  }
  return std::nullopt;
}

namespace {

// Greedy-style rounders ignore x~, so their output depends only on H.
BetaRounder memoized(const BetaRounder& rounder) {
  if (rounder.uses_fractional) return rounder;
  auto cache = std::make_shared<std::map<std::vector<ElementId>, Cover>>();
  BetaRounder wrapped = rounder;
  wrapped.round = [cache, inner = rounder.round](
                      const SetSystem& system, std::span<const double> xt) {
    auto it = cache->find(system.original_element);
    if (it == cache->end()) {
      it = cache->emplace(system.original_element, inner(system, xt)).first;
    }
    return it->second;
  };
  return wrapped;
}

int default_cut_cap(const Instance& instance) {
  const double w_min = instance.min_positive_weight();
  const double ratio = w_min > 0.0 ? instance.total_weight() / w_min : 0.0;
  const int logs = static_cast<int>(std::ceil(std::log2(ratio + 2.0)));
  return 50 * std::max(1, instance.num_colors()) * std::max(1, logs);
}

}  // namespace

StrengthenedSolution find_solution(const Instance& instance,
                                   const BetaRounder& rounder, double alpha,
                                   const FindOptions& options) {
  if (!(alpha > 1.0)) throw InputError("alpha must exceed 1");
  const BetaRounder round = memoized(rounder);

  StrengthenedSolution result;
  LinearProgram lp = build_natural_lp(instance);
  if (options.root_cuts) {
    const ResidualState empty = residual(instance, {});
    for (ColorId t = 0; t < instance.num_colors(); ++t) {
      lp.add_row(kc_row(instance, empty, t));
      ++result.root_cuts;
    }
  }
  const auto root = solve_lp(lp);
  ++result.lp_solves;
  if (!root.optimal()) {
    throw SolverError("root LP infeasible; instance violates its invariants");
  }
  result.root_value = root.objective;

  LpRow budget;
  for (SetId i = 0; i < instance.num_sets(); ++i) {
    budget.terms.push_back({x_var(i), instance.weight(i)});
  }
  budget.sense = RowSense::kLessEqual;
  budget.label = "budget";
  const int budget_row = lp.add_row(std::move(budget));

  const double total = instance.total_weight();
  const double w_min = instance.min_positive_weight();
  const int cut_cap = options.max_cuts > 0 ? options.max_cuts
                                           : default_cut_cap(instance);
  // The root value never exceeds OPT, so doubling from it keeps Delta <= 2 OPT.
  double delta = std::min(total, std::max(root.objective, options.min_delta));
  if (delta < 1e-12) delta = 0.0;

  std::set<std::pair<std::vector<SetId>, ColorId>> seen;
  while (true) {
    lp.set_rhs(budget_row, delta);
    while (true) {
      const auto outcome = solve_lp(lp);
      ++result.lp_solves;
      if (!outcome.optimal()) break;

      FractionalSolution frac = to_fractional(instance, outcome.values);
      HeavySplit split = split_heavy(instance, frac.x, alpha, round);
      const auto violated = check_kc(instance, frac, split.base);
      if (!violated) {
        result.frac = std::move(frac);
        result.heavy = std::move(split.heavy);
        result.heavy_cover = std::move(split.heavy_cover);
        result.base = std::move(split.base);
        result.delta = delta;
        result.lp_value = outcome.objective;
        result.lp = std::move(lp);
        return result;
      }

      if (result.separated_cuts >= cut_cap) {
        throw SolverError("find_solution: cut limit reached after " +
                          std::to_string(result.separated_cuts) + " cuts");
      }
      if (!seen.emplace(split.base, *violated).second) {
        throw SolverError("find_solution: repeated cut for color " +
                          std::to_string(*violated) + " after " +
                          std::to_string(result.separated_cuts) +
                          " cuts (LP solution stalled)");
      }
      const ResidualState state = residual(instance, split.base);
      LpRow cut = kc_row(instance, state, *violated);
      if (options.on_cut) {
        CutRecord record;
        record.color = *violated;
        record.base_size = static_cast<int>(state.base.size());
        record.rhs = static_cast<int>(cut.rhs);
        record.violation = cut.rhs - row_activity(cut, frac.x);
        record.delta = delta;
        options.on_cut(record);
      }
      lp.add_row(std::move(cut));
      ++result.separated_cuts;
    }

    if (delta >= total) {
      throw SolverError("find_solution: LP infeasible at Delta = total weight");
    }
    delta = std::min(total, std::max(2.0 * delta, w_min));
  }
}

}  // namespace pcover
