#include <cmath>

#include "doctest.h"
#include "pcover/error.hpp"
#include "pcover/exact.hpp"
#include "pcover/generators.hpp"
#include "pcover/partition_lp.hpp"

using namespace pcover;

TEST_CASE("gap instance shape") {
  const Instance g4 = gap_instance(4);
  CHECK(g4.num_elements() == 4);
  CHECK(g4.num_sets() == 2);
  CHECK(g4.set(0).elements == std::vector<ElementId>{0, 1});
  CHECK(g4.set(1).elements == std::vector<ElementId>{2, 3});
  CHECK(g4.num_colors() == 2);
  CHECK(g4.color(1).elements == g4.set(1).elements);

  const Instance g1 = gap_instance(1);
  CHECK(g1.num_sets() == 1);
  CHECK(g1.color(0).requirement == 1);

  CHECK_THROWS_AS(gap_instance(5), InputError);
  CHECK_THROWS_AS(gap_instance(0), InputError);
}

TEST_CASE("gap instances: LP value 1, OPT sqrt(n)") {
  for (int n : {1, 4, 9, 16, 25}) {
    const Instance g = gap_instance(n);
    CHECK(natural_lp_value(g) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(exact_opt(g).weight == std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("interval encoding examples") {
  Instance one(1, {{1.0, {0}}}, {{{0}, 1}});
  auto g = setcover_to_intervals(one);
  CHECK(g.instance.num_sets() == 1);
  CHECK(g.instance.num_elements() == 1);
  CHECK(g.instance.num_colors() == 1);
  CHECK(g.instance.color(0).requirement == 1);
  CHECK(g.geometry.set_intervals[0].lo == 0.0);
  CHECK(g.geometry.set_intervals[0].hi == 1.0);

  Instance two(2, {{1.0, {0, 1}}, {1.0, {1}}}, {{{0, 1}, 2}});
  auto h = setcover_to_intervals(two);
  CHECK(h.geometry.set_intervals[1].lo == 2.0);
  CHECK(h.geometry.set_intervals[1].hi == 3.0);
  int in_first = 0;
  int in_second = 0;
  for (std::size_t p = 0; p < h.geometry.points.size(); ++p) {
    if (h.geometry.point_colors[p] != 1) continue;
    const double pos = h.geometry.points[p];
    in_first += pos > 0 && pos < 1;
    in_second += pos > 2 && pos < 3;
  }
  CHECK(in_first == 1);
  CHECK(in_second == 1);
  // set membership matches the geometry
  for (int i = 0; i < h.instance.num_sets(); ++i) {
    for (ElementId e : h.instance.set(i).elements) {
      CHECK(h.geometry.points[e] >= h.geometry.set_intervals[i].lo);
      CHECK(h.geometry.points[e] <= h.geometry.set_intervals[i].hi);
    }
  }

  Instance partial(2, {{1.0, {0, 1}}}, {{{0, 1}, 1}});
  CHECK_THROWS_AS(setcover_to_intervals(partial), InputError);
}

TEST_CASE("interval encoding keeps the optimum") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance sc = random_setcover(3 + seed % 6, 2 + seed % 7, 0.35, seed);
    const auto g = setcover_to_intervals(sc);
    CHECK(exact_opt(g.instance).weight == doctest::Approx(exact_opt(sc).weight).epsilon(1e-12));
  }
}

TEST_CASE("random instances are deterministic and valid") {
  RandomParams p;
  p.seed = 99;
  const Instance a = random_instance(p);
  const Instance b = random_instance(p);
  REQUIRE(a.num_sets() == b.num_sets());
  for (int i = 0; i < a.num_sets(); ++i) {
    CHECK(a.set(i).elements == b.set(i).elements);
    CHECK(a.weight(i) == b.weight(i));
  }
  for (int t = 0; t < a.num_colors(); ++t) CHECK(a.color(t).requirement == b.color(t).requirement);

  RandomParams dense;
  dense.density = 1.0;
  dense.n = 7;
  const Instance d = random_instance(dense);
  for (const auto& s : d.sets()) CHECK(s.elements.size() == 7u);

  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    RandomParams q;
    q.seed = seed;
    q.n = 1 + seed % 15;
    q.m = 1 + seed % 9;
    q.r = 1 + seed % q.n % 4;
    q.density = 0.05 + (seed % 10) * 0.1;
    const Instance inst = random_instance(q);
    // rebuilding through the validating constructor must succeed
    CHECK_NOTHROW(Instance(inst.num_elements(), inst.sets(), inst.colors()));
    std::vector<SetId> all(inst.num_sets());
    for (int i = 0; i < inst.num_sets(); ++i) all[i] = i;
    CHECK(verify_cover(inst, Cover(all)).feasible);
  }
}

TEST_CASE("random parameter checks") {
  RandomParams p;
  p.r = p.n + 1;
  CHECK_THROWS_AS(random_instance(p), InputError);
  p = RandomParams{};
  p.density = 0;
  CHECK_THROWS_AS(random_instance(p), InputError);
  p = RandomParams{};
  p.min_weight = 5;
  p.max_weight = 1;
  CHECK_THROWS_AS(random_instance(p), InputError);
}
