#pragma once

#include <cstdint>
#include <vector>

#include "pcover/instance.hpp"

namespace pcover {

// s = sqrt(n) unit-weight sets of s elements partitioning X, one color per
// set with requirement 1. Throws InputError unless n is a positive square.
Instance gap_instance(int n);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Geometry of an instance on the real line: one interval per set and one
// point per element together with the color it was created for.
struct Geometry {
  std::vector<Interval> set_intervals;
  std::vector<double> points;
  std::vector<ColorId> point_colors;
};

struct GeometricInstance {
  Instance instance;
  Geometry geometry;
};

// Interval encoding of a plain set-cover instance (a single color equal to X
// with requirement n). Set i becomes the interval [2i, 2i+1]; each incidence
// e_j ∈ S_i becomes a point at 2i + (rank of j in S_i + 1)/(|S_i| + 1) of
// color j, and every color has requirement 1. Throws InputError if `sc` is not
// a plain set-cover instance.
GeometricInstance setcover_to_intervals(const Instance& sc);

struct RandomParams {
  int n = 8;
  int m = 6;
  int r = 2;
  double density = 0.3;
  double min_weight = 1.0;
  double max_weight = 10.0;
  std::uint64_t seed = 0;
};

// Independent incidences with probability `density`; elements left in no set
// join a random set; colors are r contiguous near-equal blocks with
// requirements uniform in [1, |C_t|]; weights uniform in [min, max].
// Throws InputError on impossible parameters.
Instance random_instance(const RandomParams& params);

// A random plain set-cover instance (r = 1, k = n).
Instance random_setcover(int n, int m, double density, std::uint64_t seed,
                         double min_weight = 1.0, double max_weight = 10.0);

}  // namespace pcover
