#include <cmath>
#include <random>

#include "doctest.h"
#include "pcover/error.hpp"
#include "pcover/exact.hpp"
#include "pcover/generators.hpp"
#include "pcover/rounding.hpp"
#include "support.hpp"

using namespace pcover;

namespace {

// Cheapest exact cover of a projected system by subset enumeration.
double exhaustive_setcover(const SetSystem& sys) {
  const int m = static_cast<int>(sys.sets.size());
  double best = INFINITY;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> hit(sys.num_elements, 0);
    double w = 0;
    for (int i = 0; i < m; ++i) {
      if (!(mask >> i & 1u)) continue;
      w += sys.sets[i].weight;
      for (int e : sys.sets[i].elements) hit[e] = 1;
    }
    bool all = true;
    for (int h : hit) all = all && h;
    if (all) best = std::min(best, w);
  }
  return best;
}

// 40 singleton sets each holding one light element of a single color, k = 1.
Instance forty_singletons() {
  std::vector<WeightedSet> sets;
  std::vector<ElementId> all;
  for (int e = 0; e < 40; ++e) {
    sets.push_back({1.0, {e}});
    all.push_back(e);
  }
  return Instance(40, std::move(sets), {{all, 1}});
}

}  // namespace

TEST_CASE("heavy_elements threshold") {
  const Instance gap = gap_instance(4);
  std::vector<double> half{0.5, 0.5};
  CHECK(heavy_elements(gap, half, 6.0) == std::vector<ElementId>{0, 1, 2, 3});
  std::vector<double> zero{0, 0};
  CHECK(heavy_elements(gap, zero, 6.0).empty());

  Instance three(1, {{1, {0}}, {1, {0}}, {1, {0}}}, {{{0}, 1}});
  std::vector<double> small{0.01, 0.01, 0.01};
  // 0.03 against 1/36 = 0.02777...
  CHECK(0.03 >= 1.0 / 36.0);
  CHECK(heavy_elements(three, small, 6.0) == std::vector<ElementId>{0});
  std::vector<double> smaller{0.009, 0.009, 0.009};
  CHECK(heavy_elements(three, smaller, 6.0).empty());
}

TEST_CASE("scale_solution") {
  std::vector<double> x{1.0 / 36.0, 0.01, 0.0, 0.5};
  auto s = scale_solution(x, 6.0);
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[1] == doctest::Approx(0.36));
  CHECK(s[2] == 0.0);
  CHECK(s[3] == 1.0);
}

TEST_CASE("greedy rounder") {
  // Y = {1,2,3,4} renumbered 0..3; A={1,2,3}, B={1,2}, C={3,4}
  SetSystem sys;
  sys.num_elements = 4;
  sys.sets = {{1.0, {0, 1, 2}}, {1.0, {0, 1}}, {1.0, {2, 3}}};
  auto cover = greedy_rounder(sys);
  CHECK(cover.chosen == std::vector<SetId>{0, 2});
  CHECK(exhaustive_setcover(sys) == 2.0);

  SetSystem one;
  one.num_elements = 3;
  one.sets = {{4.0, {0, 1, 2}}};
  CHECK(greedy_rounder(one).chosen == std::vector<SetId>{0});

  SetSystem empty;
  empty.sets = {{1.0, {}}};
  CHECK(greedy_rounder(empty).chosen.empty());

  SetSystem bad;
  bad.num_elements = 2;
  bad.sets = {{1.0, {0}}};
  CHECK_THROWS_AS(greedy_rounder(bad), InputError);
}

TEST_CASE("frequency rounder") {
  SetSystem two;
  two.num_elements = 1;
  two.sets = {{1.0, {0}}, {1.0, {0}}};
  std::vector<double> half{0.5, 0.5};
  CHECK(frequency_rounder(two, half).chosen == std::vector<SetId>{0, 1});

  SetSystem one;
  one.num_elements = 2;
  one.sets = {{1.0, {0, 1}}, {1.0, {}}};
  std::vector<double> full{1.0, 0.0};
  CHECK(frequency_rounder(one, full).chosen == std::vector<SetId>{0});

  SetSystem three;
  three.num_elements = 1;
  three.sets = {{1.0, {0}}, {1.0, {0}}, {1.0, {0}}};
  std::vector<double> x{0.4, 0.4, 0.2};
  // threshold 1/f = 1/3
  CHECK(0.4 >= 1.0 / 3.0);
  CHECK(0.2 < 1.0 / 3.0);
  CHECK(frequency_rounder(three, x).chosen == std::vector<SetId>{0, 1});

  std::vector<double> thin{0.1, 0.1, 0.1};
  CHECK_THROWS_AS(frequency_rounder(three, thin), InputError);
}

TEST_CASE("make_rounder names") {
  CHECK(make_rounder("greedy").name == "greedy");
  CHECK(make_rounder("frequency").uses_fractional);
  CHECK_THROWS_AS(make_rounder("lp"), InputError);
}

TEST_CASE("iteration count") {
  CHECK(iteration_count(1, 4.0) == 3);  // ceil(4 ln 2)
  CHECK(iteration_count(3, 4.0) == 6);  // ceil(4 ln 4)
  CHECK(iteration_count(1, 0.1) == 1);
}

TEST_CASE("counter RNG streams are reproducible and order free") {
  RandomStream a(7, 1, 2);
  RandomStream b(7, 1, 2);
  RandomStream c(7, 1, 3);
  double u5 = a.uniform(5);
  a.uniform(1);
  CHECK(a.uniform(5) == u5);
  CHECK(b.uniform(5) == u5);
  CHECK(c.uniform(5) != u5);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform(i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("randomized pass with nothing fractional picks nothing") {
  const Instance gap = gap_instance(4);
  std::vector<double> x{0, 0};
  for (int it = 0; it < 50; ++it) {
    CHECK(randomized_round_once(gap, x, {}, 6.0, RandomStream(1, 0, it)).empty());
  }
}

TEST_CASE("randomized pass rejects heavy sets outside the base") {
  const Instance gap = gap_instance(4);
  std::vector<double> x{0.5, 0.0};
  CHECK_THROWS_AS(randomized_round_once(gap, x, {}, 6.0, RandomStream(1, 0, 0)), ContractError);
  std::vector<SetId> base{0};
  CHECK_NOTHROW(randomized_round_once(gap, x, base, 6.0, RandomStream(1, 0, 0)));
}

TEST_CASE("inclusion frequency at x = 0.02") {
  const Instance gap = gap_instance(4);
  std::vector<double> x{0.02, 0.02};
  const int trials = 100000;
  std::vector<int> hits(2, 0);
  long long total = 0;
  for (int t = 0; t < trials; ++t) {
    auto picked = randomized_round_once(gap, x, {}, 6.0, RandomStream(42, 0, t));
    for (SetId i : picked) ++hits[i];
    total += static_cast<long long>(picked.size());
  }
  for (int i = 0; i < 2; ++i) {
    CHECK(std::fabs(hits[i] / static_cast<double>(trials) - 0.12) <= 0.004);
  }
  CHECK(std::fabs(total / static_cast<double>(trials) - 0.24) <= 0.008);
}

TEST_CASE("iteration success on forty singletons matches the closed form") {
  const Instance inst = forty_singletons();
  std::vector<double> x(40, 1.0 / 40.0);
  const double closed = 1.0 - std::pow(0.85, 40);
  CHECK(closed == doctest::Approx(0.998496).epsilon(1e-6));
  const int trials = 10000;
  const double p = estimate_iteration_success(inst, x, {}, 0, trials, 9);
  const double sigma = std::sqrt(closed * (1 - closed) / trials);
  CHECK(std::fabs(p - closed) <= 4 * sigma + 1.0 / trials);
  CHECK(expected_iteration_weight(inst, x, {}) == doctest::Approx(6.0));
}

TEST_CASE("iteration success input checks") {
  const Instance inst = forty_singletons();
  std::vector<double> x(40, 1.0 / 40.0);
  CHECK_THROWS_AS(estimate_iteration_success(inst, x, {}, 0, 0, 1), InputError);
  std::vector<double> thin(40, 0.01);
  CHECK_THROWS_AS(estimate_iteration_success(inst, thin, {}, 0, 100, 1), ContractError);
  std::vector<SetId> base{0};
  CHECK_THROWS_AS(estimate_iteration_success(inst, x, base, 0, 100, 1), ContractError);
}

TEST_CASE("solve examples") {
  Instance single(3, {{2.5, {0, 1, 2}}}, {{{0, 1, 2}, 3}});
  auto s = solve(single, RoundingConfig{});
  CHECK(s.cover.chosen == std::vector<SetId>{0});
  CHECK(s.weight == 2.5);

  auto g = solve(gap_instance(4), RoundingConfig{});
  CHECK(g.cover.chosen == std::vector<SetId>{0, 1});
  CHECK(g.weight == 2.0);

  auto g16 = solve(gap_instance(16), RoundingConfig{});
  CHECK(g16.weight == 4.0);
}

TEST_CASE("config validation") {
  RoundingConfig bad;
  bad.alpha = 1.0;
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = RoundingConfig{};
  bad.c = 0;
  CHECK_THROWS_AS(validate(bad), InputError);
  bad = RoundingConfig{};
  bad.max_restarts = 0;
  CHECK_THROWS_AS(validate(bad), InputError);
}

TEST_CASE("solve on random instances: feasible, deterministic, never below OPT") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = random_instance(testing::small_params(seed, 12, 10, 4));
    RoundingConfig cfg;
    cfg.seed = seed;
    auto a = solve(inst, cfg);
    CHECK(verify_cover(inst, a.cover).feasible);
    CHECK(a.weight >= exact_opt(inst).weight - 1e-9);
    auto b = solve(inst, cfg);
    CHECK(a.cover.chosen == b.cover.chosen);
    CHECK(a.trace.restarts.size() == b.trace.restarts.size());
    for (std::size_t k = 0; k < a.trace.restarts.size(); ++k) {
      CHECK(a.trace.restarts[k].iterations == b.trace.restarts[k].iterations);
    }
  }
}

TEST_CASE("scaled solution covers heavy elements and A covers what A' covers") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Instance inst = random_instance(testing::small_params(seed, 12, 10, 4));
    auto s = find_solution(inst, greedy_beta_rounder(), 6.0);
    const auto scaled = scale_solution(s.frac.x, 6.0);
    for (ElementId e : s.heavy) {
      double cov = 0;
      for (SetId i : inst.sets_containing(e)) cov += scaled[i];
      CHECK(cov >= 1 - 1e-5);
    }
    auto st_base = residual(inst, s.base);
    auto st_heavy = residual(inst, s.heavy_cover.chosen);
    CHECK(st_base.covered == st_heavy.covered);
  }
}

TEST_CASE("ring fixtures leave a light residual below the threshold") {
  for (int span : {36, 42, 49}) {
    const Instance inst = testing::ring_fixture(span, 1, 1);
    auto s = find_solution(inst, greedy_beta_rounder(), 6.0);
    auto st = residual(inst, s.base);
    CHECK(st.residual_per_color[1] == 1);
    for (int i = 0; i < inst.num_sets(); ++i) {
      if (!st.in_base(i)) CHECK(s.frac.x[i] < heavy_threshold(6.0));
    }
    const double p = estimate_iteration_success(inst, s.frac.x, s.base, 1, 2000, span);
    CHECK(p >= 1.0 / 16.0);
  }
}
