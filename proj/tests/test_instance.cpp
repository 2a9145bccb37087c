#include <random>

#include "doctest.h"
#include "pcover/error.hpp"
#include "pcover/generators.hpp"
#include "pcover/instance.hpp"
#include "support.hpp"

using namespace pcover;
using pcover::testing::three_element;

TEST_CASE("verify_cover counts per color") {
  const Instance gap = gap_instance(4);

  auto one = verify_cover(gap, Cover({0}));
  CHECK(one.covered_per_color == std::vector<int>{2, 0});
  CHECK(one.deficit_per_color == std::vector<int>{0, 1});
  CHECK_FALSE(one.feasible);

  auto both = verify_cover(gap, Cover({0, 1}));
  CHECK(both.covered_per_color == std::vector<int>{2, 2});
  CHECK(both.feasible);
  CHECK(both.total_weight == doctest::Approx(2.0));

  auto none = verify_cover(gap, Cover());
  CHECK_FALSE(none.feasible);
  CHECK(none.total_weight == 0.0);
}

TEST_CASE("verify_cover rejects unknown set ids") {
  CHECK_THROWS_AS(verify_cover(gap_instance(4), Cover({2})), InputError);
  CHECK_THROWS_AS(verify_cover(gap_instance(4), Cover({-1})), InputError);
}

TEST_CASE("residual requirement") {
  auto st = residual(three_element(3), std::vector<SetId>{0});
  CHECK(st.covered_per_color[0] == std::vector<ElementId>{0, 1});
  CHECK(st.residual_per_color[0] == 1);

  auto clamp = residual(three_element(2), std::vector<SetId>{0});
  CHECK(clamp.residual_per_color[0] == 0);
  CHECK(clamp.all_satisfied());

  const Instance gap = gap_instance(9);
  auto empty = residual(gap, {});
  for (int t = 0; t < gap.num_colors(); ++t) {
    CHECK(empty.covered_per_color[t].empty());
    CHECK(empty.residual_per_color[t] == gap.color(t).requirement);
  }
}

TEST_CASE("residual rejects bad base ids") {
  CHECK_THROWS_AS(residual(three_element(3), std::vector<SetId>{5}), InputError);
}

TEST_CASE("degree") {
  const Instance inst = three_element(3);
  auto st = residual(inst, std::vector<SetId>{0});
  CHECK(degree(inst, st, 1, 0) == 1);
  CHECK(degree(inst, st, 2, 0) == 1);
  CHECK_THROWS_AS(degree(inst, st, 0, 0), ContractError);

  const Instance gap = gap_instance(4);
  auto root = residual(gap, {});
  CHECK(degree(gap, root, 0, 0) == 2);
  CHECK(degree(gap, root, 1, 0) == 0);
}

TEST_CASE("project") {
  const Instance inst = three_element(3);
  std::vector<ElementId> all{0, 1, 2};
  auto full = project(inst, all);
  CHECK(full.num_elements == 3);
  for (int i = 0; i < inst.num_sets(); ++i) CHECK(full.sets[i].elements == inst.set(i).elements);

  auto none = project(inst, {});
  CHECK(none.num_elements == 0);
  for (const auto& s : none.sets) CHECK(s.elements.empty());

  std::vector<ElementId> mid{1};
  auto one = project(inst, mid);
  CHECK(one.sets[0].elements == std::vector<ElementId>{0});
  CHECK(one.sets[1].elements == std::vector<ElementId>{0});
  CHECK(one.sets[2].elements.empty());
  CHECK(one.original_element == std::vector<ElementId>{1});
}

TEST_CASE("construction validates invariants") {
  // element out of range
  CHECK_THROWS_AS(Instance(2, {{1.0, {0, 2}}}, {{{0, 1}, 1}}), InputError);
  // negative weight
  CHECK_THROWS_AS(Instance(1, {{-1.0, {0}}}, {{{0}, 1}}), InputError);
  // requirement above class size
  CHECK_THROWS_AS(Instance(2, {{1.0, {0, 1}}}, {{{0, 1}, 3}}), InputError);
  // element in no color
  CHECK_THROWS_AS(Instance(2, {{1.0, {0, 1}}}, {{{0}, 1}}), InputError);
  // duplicates are normalized away
  Instance ok(2, {{1.0, {1, 0, 1}}}, {{{1, 0}, 2}});
  CHECK(ok.set(0).elements == std::vector<ElementId>{0, 1});
  CHECK(ok.color(0).elements == std::vector<ElementId>{0, 1});
}

TEST_CASE("residual is monotone and the full collection is feasible") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = random_instance(testing::small_params(seed, 12, 10, 4));
    std::vector<SetId> all(inst.num_sets());
    for (int i = 0; i < inst.num_sets(); ++i) all[i] = i;
    CHECK(verify_cover(inst, Cover(all)).feasible);

    auto small = testing::random_base(inst.num_sets(), rng);
    auto big = small;
    for (int i = 0; i < inst.num_sets(); ++i) {
      if (rng() % 2 == 0) big.push_back(i);
    }
    Cover bigger(big);
    auto a = residual(inst, small);
    auto b = residual(inst, bigger.chosen);
    for (int t = 0; t < inst.num_colors(); ++t) {
      CHECK(b.residual_per_color[t] <= a.residual_per_color[t]);
      for (int i = 0; i < inst.num_sets(); ++i) {
        if (bigger.contains(i)) continue;
        const int da = degree(inst, a, i, t);
        CHECK(da <= static_cast<int>(inst.set(i).elements.size()));
        CHECK(degree(inst, b, i, t) <= da);
      }
    }
  }
}

TEST_CASE("coverage counts agree with the projection") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = random_instance(testing::small_params(seed, 12, 10, 3));
    std::mt19937_64 rng(seed);
    std::vector<ElementId> subset;
    for (int e = 0; e < inst.num_elements(); ++e) {
      if (rng() % 2) subset.push_back(e);
    }
    auto chosen = testing::random_base(inst.num_sets(), rng);
    auto sys = project(inst, subset);
    // elements of Y hit by the cover, counted both ways
    std::vector<int> hit_local(sys.num_elements, 0);
    for (SetId i : chosen) {
      for (ElementId le : sys.sets[i].elements) hit_local[le] = 1;
    }
    auto st = residual(inst, chosen);
    for (int le = 0; le < sys.num_elements; ++le) {
      CHECK(hit_local[le] == st.covered[sys.original_element[le]]);
    }
  }
}
