#include <random>

#include "doctest.h"
#include "pcover/error.hpp"
#include "pcover/exact.hpp"
#include "pcover/generators.hpp"
#include "pcover/partition_lp.hpp"
#include "support.hpp"

using namespace pcover;

TEST_CASE("exact examples agree with brute force") {
  const Instance g4 = gap_instance(4);
  auto a = exact_opt(g4);
  CHECK(a.weight == 2.0);
  CHECK(a.cover.chosen == std::vector<SetId>{0, 1});

  auto b = exact_opt(gap_instance(16));
  CHECK(b.weight == 4.0);

  Instance single(3, {{1.75, {0, 1, 2}}}, {{{0, 1, 2}, 1}});
  auto c = exact_opt(single);
  CHECK(c.weight == 1.75);

  for (const Instance* inst : std::vector<const Instance*>{&g4, &single}) {
    auto x = exact_opt(*inst);
    auto y = exact_opt_bruteforce(*inst);
    CHECK(x.weight == y.weight);
    CHECK(x.cover.chosen == y.cover.chosen);
  }
  auto g16b = exact_opt_bruteforce(gap_instance(16));
  CHECK(g16b.weight == b.weight);
  CHECK(g16b.cover.chosen == b.cover.chosen);
}

TEST_CASE("ties resolve to the lexicographically smallest cover") {
  Instance tie(2, {{1.0, {0, 1}}, {1.0, {0, 1}}, {0.5, {0}}, {0.5, {1}}}, {{{0, 1}, 2}});
  auto a = exact_opt(tie);
  auto b = exact_opt_bruteforce(tie);
  CHECK(a.weight == 1.0);
  CHECK(a.cover.chosen == std::vector<SetId>{0});
  CHECK(b.cover.chosen == a.cover.chosen);
}

TEST_CASE("guards") {
  std::vector<WeightedSet> sets(26, WeightedSet{1.0, {0}});
  Instance many(1, sets, {{{0}, 1}});
  CHECK_THROWS_AS(exact_opt(many), InputError);
  CHECK_THROWS_AS(exact_opt_bruteforce(many), InputError);
  CHECK_NOTHROW(exact_opt(many, 30));

  Instance none(2, {{1.0, {0}}}, {{{0, 1}, 2}});
  CHECK_THROWS_AS(exact_opt(none), SolverError);
  CHECK_THROWS_AS(exact_opt_bruteforce(none), SolverError);
}

TEST_CASE("branch and bound matches brute force on random instances") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    RandomParams p = testing::small_params(seed, 14, 16, 4);
    p.min_weight = 1;
    p.max_weight = seed % 3 == 0 ? 1 : 10;  // unit weights stress tie-breaking
    const Instance inst = random_instance(p);
    auto a = exact_opt(inst);
    auto b = exact_opt_bruteforce(inst);
    CHECK(a.weight == doctest::Approx(b.weight).epsilon(1e-12));
    CHECK(a.cover.chosen == b.cover.chosen);
    CHECK(verify_cover(inst, a.cover).feasible);
    CHECK(natural_lp_value(inst) <= a.weight + kObjectiveTol);
    ++checked;
  }
  CHECK(checked >= 500);
}
