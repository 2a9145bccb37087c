#pragma once

#include <cstdint>

#include "pcover/instance.hpp"

namespace pcover {

struct OracleResult {
  Cover cover;
  double weight = 0.0;
  std::int64_t nodes = 0;
};

inline constexpr int kExactMaxSets = 25;
inline constexpr int kBruteForceMaxSets = 16;

// Minimum-weight feasible cover by depth-first branch and bound. Among covers
// of equal weight the lexicographically smallest index list wins. Throws
// InputError when m exceeds max_sets and SolverError if nothing is feasible.
OracleResult exact_opt(const Instance& instance, int max_sets = kExactMaxSets);

// Same contract by enumerating all 2^m sub-collections (m <= 16).
OracleResult exact_opt_bruteforce(const Instance& instance);

}  // namespace pcover
