#include "pcover/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcover/log.hpp"
#include "pcover/rounders.hpp"

namespace pcover {

void validate(const RoundingConfig& config) {
  if (!(config.alpha > 1.0)) throw InputError("alpha must exceed 1");
  if (!(config.c > 0.0)) throw InputError("c must be positive");
  if (config.max_restarts < 1) throw InputError("max_restarts must be >= 1");
}

int iteration_count(int num_colors, double c) {
  const double raw = std::ceil(c * std::log(static_cast<double>(num_colors) + 1.0));
  return std::max(1, static_cast<int>(raw));
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t restart,
                           std::uint64_t iteration)
    : key_(splitmix64(splitmix64(splitmix64(seed) ^ restart) ^ iteration)) {}

double RandomStream::uniform(std::uint64_t index) const {
  const std::uint64_t bits = splitmix64(key_ ^ splitmix64(index)) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

namespace {

std::vector<std::uint8_t> base_mask(const Instance& instance,
                                    std::span<const SetId> base) {
  std::vector<std::uint8_t> mask(instance.num_sets(), 0);
  for (SetId i : base) {
    if (i < 0 || i >= instance.num_sets()) {
      throw InputError("base: set id " + std::to_string(i) + " out of range");
    }
    mask[i] = 1;
  }
  return mask;
}

std::vector<SetId> sample(std::span<const double> x,
                          const std::vector<std::uint8_t>& in_base,
                          const RandomStream& rng) {
  std::vector<SetId> chosen;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (in_base[i]) continue;
    const double p = std::min(6.0 * x[i], 1.0);
    if (p > 0.0 && rng.uniform(i) < p) chosen.push_back(static_cast<SetId>(i));
  }
  return chosen;
}

void check_light(const Instance& instance, std::span<const double> x,
                 const std::vector<std::uint8_t>& in_base, double alpha) {
  if (static_cast<int>(x.size()) != instance.num_sets()) {
    throw InputError("x has " + std::to_string(x.size()) + " entries, expected " +
                     std::to_string(instance.num_sets()));
  }
  const double threshold = heavy_threshold(alpha);
  for (SetId i = 0; i < instance.num_sets(); ++i) {
    if (!in_base[i] && x[i] >= threshold) {
      throw ContractError("set " + std::to_string(i) + " lies outside the base with x = " +
                          std::to_string(x[i]) + " >= 1/(6 alpha)");
    }
  }
}

}  // namespace

std::vector<SetId> randomized_round_once(const Instance& instance,
                                         std::span<const double> x,
                                         std::span<const SetId> base,
                                         double alpha, const RandomStream& rng) {
  const auto in_base = base_mask(instance, base);
  check_light(instance, x, in_base, alpha);
  return sample(x, in_base, rng);
}

bool round_solution(const Instance& instance, std::span<const double> x,
                    std::span<const SetId> heavy_cover,
                    std::span<const SetId> base, double delta,
                    const RoundingConfig& config, int restart_offset,
                    RoundingTrace& trace, Cover& cover) {
  const auto in_base = base_mask(instance, base);
  check_light(instance, x, in_base, config.alpha);

  const int iterations = iteration_count(instance.num_colors(), config.c);
  const double budget = 3.0 * 6.0 * iterations * delta;
  const double heavy_weight = cover_weight(instance, heavy_cover);
  trace.iterations_per_restart = iterations;
  trace.budget = budget;

  for (int k = 0; k < config.max_restarts; ++k) {
    RestartTrace rt;
    rt.restart = restart_offset + k;
    std::vector<std::uint8_t> picked(instance.num_sets(), 0);
    for (int l = 0; l < iterations; ++l) {
      const RandomStream rng(config.seed, static_cast<std::uint64_t>(rt.restart),
                             static_cast<std::uint64_t>(l));
      auto drawn = sample(x, in_base, rng);
      for (SetId i : drawn) picked[i] = 1;
      rt.iterations.push_back(std::move(drawn));
    }
    for (SetId i = 0; i < instance.num_sets(); ++i) {
      if (picked[i]) rt.sampled.push_back(i);
    }
    rt.heavy_weight = heavy_weight;
    rt.sampled_weight = cover_weight(instance, rt.sampled);

    std::vector<SetId> ids(heavy_cover.begin(), heavy_cover.end());
    ids.insert(ids.end(), rt.sampled.begin(), rt.sampled.end());
    Cover candidate(std::move(ids));
    rt.feasible = verify_cover(instance, candidate).feasible;
    rt.within_budget = rt.sampled_weight <= budget * (1.0 + 1e-12);
    const bool accepted = rt.accepted();
    log::debug("restart " + std::to_string(rt.restart) + ": feasible=" +
               std::to_string(rt.feasible) + " sampled_weight=" +
               std::to_string(rt.sampled_weight) + " budget=" +
               std::to_string(budget));
    trace.restarts.push_back(std::move(rt));
    if (accepted) {
      cover = std::move(candidate);
      return true;
    }
  }
  return false;
}

SolveResult solve(const Instance& instance, const RoundingConfig& config,
                  const FindOptions& options) {
  validate(config);
  const BetaRounder rounder = make_rounder(config.rounder);
  FindOptions search = options;
  RoundingTrace trace;

  for (int attempt = 0; attempt < 2; ++attempt) {
    StrengthenedSolution sol =
        find_solution(instance, rounder, config.alpha, search);
    trace.deltas.push_back(sol.delta);
    log::info("delta=" + std::to_string(sol.delta) + " lp=" +
              std::to_string(sol.lp_value) + " cuts=" +
              std::to_string(sol.separated_cuts) + " |A'|=" +
              std::to_string(sol.heavy_cover.size()) + " |A|=" +
              std::to_string(sol.base.size()));
    Cover cover;
    if (round_solution(instance, sol.frac.x, sol.heavy_cover.chosen, sol.base,
                       sol.delta, config, attempt * config.max_restarts, trace,
                       cover)) {
      const CoverageReport report = verify_cover(instance, cover);
      if (!report.feasible) {
        throw SolverError("solve: accepted cover failed verification");
      }
      SolveResult result;
      result.cover = std::move(cover);
      result.weight = report.total_weight;
      result.strengthened = std::move(sol);
      result.trace = std::move(trace);
      return result;
    }
    log::info("all restarts rejected at delta=" + std::to_string(sol.delta));
    search.min_delta = std::max(search.min_delta, 2.0 * sol.delta);
  }
  throw RoundingFailure("solve: " + std::to_string(trace.restarts.size()) +
                            " restarts rejected (infeasible or over budget)",
                        std::move(trace));
}

double estimate_iteration_success(const Instance& instance,
                                  std::span<const double> x,
                                  std::span<const SetId> base, ColorId t,
                                  int trials, std::uint64_t seed,
                                  double alpha) {
  if (trials <= 0) throw InputError("trials must be positive");
  if (t < 0 || t >= instance.num_colors()) {
    throw InputError("color " + std::to_string(t) + " out of range");
  }
  const ResidualState state = residual(instance, base);
  const int need = state.residual_per_color[t];
  if (need == 0) {
    throw ContractError("color " + std::to_string(t) +
                        " has no residual requirement");
  }
  const LpRow row = kc_row(instance, state, t);
  if (row_activity(row, x) < row.rhs - kFeasibilityTol) {
    throw ContractError("knapsack-cover row of color " + std::to_string(t) +
                        " is violated by x");
  }
  const auto in_base = base_mask(instance, base);
  check_light(instance, x, in_base, alpha);

  // Elements of color t still uncovered by the base.
  std::vector<std::uint8_t> open(instance.num_elements(), 0);
  for (ElementId e : instance.color(t).elements) open[e] = state.covered[e] ? 0 : 1;

  int successes = 0;
  std::vector<std::uint8_t> hit(instance.num_elements(), 0);
  for (int trial = 0; trial < trials; ++trial) {
    const RandomStream rng(seed, 0, static_cast<std::uint64_t>(trial));
    std::fill(hit.begin(), hit.end(), 0);
    int gained = 0;
    for (SetId i : sample(x, in_base, rng)) {
      for (ElementId e : instance.set(i).elements) {
        if (open[e] && !hit[e]) {
          hit[e] = 1;
          ++gained;
        }
      }
    }
    if (gained >= need) ++successes;
  }
  return static_cast<double>(successes) / trials;
}

double expected_iteration_weight(const Instance& instance,
                                 std::span<const double> x,
                                 std::span<const SetId> base) {
  const auto in_base = base_mask(instance, base);
  double total = 0.0;
  for (SetId i = 0; i < instance.num_sets(); ++i) {
    if (!in_base[i]) total += instance.weight(i) * std::min(6.0 * x[i], 1.0);
  }
  return total;
}

}  // namespace pcover
