#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pcover/error.hpp"
#include "pcover/instance.hpp"
#include "pcover/partition_lp.hpp"

namespace pcover {

struct RoundingConfig {
  double alpha = 6.0;
  // Iterations per restart: max(1, ceil(c * ln(r + 1))).
  double c = 4.0;
  int max_restarts = 20;
  std::uint64_t seed = 0;
  std::string rounder = "greedy";
};

// Throws InputError unless alpha > 1, c > 0 and max_restarts >= 1.
void validate(const RoundingConfig& config);

int iteration_count(int num_colors, double c);

// Counter-based generator: every (seed, restart, iteration) triple names an
// independent stream and uniform(i) is the draw for set i in that stream, so
// draws do not depend on evaluation order.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t restart, std::uint64_t iteration);
  // Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t index) const;

 private:
  std::uint64_t key_;
};

std::uint64_t splitmix64(std::uint64_t z);

// One randomized pass: each set outside `base` joins independently with
// probability min(6 x_i, 1). Throws ContractError if a set outside the base
// has x_i >= 1/(6 alpha).
std::vector<SetId> randomized_round_once(const Instance& instance,
                                         std::span<const double> x,
                                         std::span<const SetId> base,
                                         double alpha, const RandomStream& rng);

struct RestartTrace {
  int restart = 0;
  std::vector<std::vector<SetId>> iterations;
  std::vector<SetId> sampled;  // union over iterations
  double heavy_weight = 0.0;
  double sampled_weight = 0.0;
  bool feasible = false;
  bool within_budget = false;
  bool accepted() const { return feasible && within_budget; }
};

struct RoundingTrace {
  int iterations_per_restart = 0;
  double budget = 0.0;  // rejection threshold on the sampled weight
  std::vector<double> deltas;
  std::vector<RestartTrace> restarts;
};

// Runs restarts [restart_offset, restart_offset + max_restarts) of the
// randomized stage on (x, base), appending to `trace`. Returns true and
// fills `cover` with heavy_cover ∪ Σ on the first feasible candidate whose
// sampled weight is within 18 L delta.
bool round_solution(const Instance& instance, std::span<const double> x,
                    std::span<const SetId> heavy_cover,
                    std::span<const SetId> base, double delta,
                    const RoundingConfig& config, int restart_offset,
                    RoundingTrace& trace, Cover& cover);

class RoundingFailure : public SolverError {
 public:
  RoundingFailure(const std::string& what, RoundingTrace trace)
      : SolverError(what), trace_(std::move(trace)) {}
  const RoundingTrace& trace() const { return trace_; }

 private:
  RoundingTrace trace_;
};

struct SolveResult {
  Cover cover;
  double weight = 0.0;
  StrengthenedSolution strengthened;
  RoundingTrace trace;
};

// LP search, heavy cover, randomized rounding with restarts. If every restart
// is rejected the search is re-entered once with the guess doubled; if that
// also fails, throws RoundingFailure.
SolveResult solve(const Instance& instance, const RoundingConfig& config,
                  const FindOptions& options = {});

// Fraction of `trials` independent passes whose new elements of color t
// (outside the base's coverage) reach k_t(A). Throws ContractError if
// k_t(A) = 0 or the knapsack-cover row of (A, t) is violated by x, and
// InputError if trials <= 0.
double estimate_iteration_success(const Instance& instance,
                                  std::span<const double> x,
                                  std::span<const SetId> base, ColorId t,
                                  int trials, std::uint64_t seed,
                                  double alpha = 6.0);

// E[w(Σ_l)] = sum over sets outside the base of w_i min(6 x_i, 1).
double expected_iteration_weight(const Instance& instance,
                                 std::span<const double> x,
                                 std::span<const SetId> base);

}  // namespace pcover
