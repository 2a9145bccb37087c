#include <array>
#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "pcover/error.hpp"
#include "pcover/lp.hpp"

using namespace pcover;

namespace {

LpRow row(std::vector<LpTerm> terms, RowSense sense, double rhs) {
  return LpRow{std::move(terms), sense, rhs, {}};
}

// Minimum of c.x over the vertices of a 2-variable polytope given as
// a.x >= b rows plus the unit box, by intersecting every pair of boundary
// lines.
double vertex_minimum(const std::vector<std::array<double, 3>>& ge_rows,
                      std::array<double, 2> c, std::array<double, 2>* argmin) {
  std::vector<std::array<double, 3>> lines = ge_rows;  // a0 x0 + a1 x1 = b
  lines.push_back({1, 0, 0});
  lines.push_back({1, 0, 1});
  lines.push_back({0, 1, 0});
  lines.push_back({0, 1, 1});
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < lines.size(); ++p) {
    for (std::size_t q = p + 1; q < lines.size(); ++q) {
      const auto& a = lines[p];
      const auto& b = lines[q];
      const double det = a[0] * b[1] - a[1] * b[0];
      if (std::fabs(det) < 1e-12) continue;
      const double x0 = (a[2] * b[1] - a[1] * b[2]) / det;
      const double x1 = (a[0] * b[2] - a[2] * b[0]) / det;
      bool ok = x0 >= -1e-12 && x0 <= 1 + 1e-12 && x1 >= -1e-12 && x1 <= 1 + 1e-12;
      for (const auto& r : ge_rows) ok = ok && r[0] * x0 + r[1] * x1 >= r[2] - 1e-12;
      if (ok && c[0] * x0 + c[1] * x1 < best) {
        best = c[0] * x0 + c[1] * x1;
        *argmin = {x0, x1};
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("single variable lower bound") {
  LinearProgram lp;
  lp.add_variable(0, 10, 1);
  lp.add_row(row({{0, 1}}, RowSense::kGreaterEqual, 3));
  auto out = solve_lp(lp);
  REQUIRE(out.optimal());
  CHECK(out.values[0] == doctest::Approx(3));
  CHECK(out.objective == doctest::Approx(3));
}

TEST_CASE("contradictory rows are infeasible") {
  LinearProgram lp;
  lp.add_variable(0, 10, 1);
  lp.add_row(row({{0, 1}}, RowSense::kGreaterEqual, 1));
  lp.add_row(row({{0, 1}}, RowSense::kLessEqual, 0));
  CHECK(solve_lp(lp).status == LpStatus::kInfeasible);
}

TEST_CASE("two-variable vertex optimum") {
  const std::vector<std::array<double, 3>> rows{{1, 2, 2}, {2, 1, 2}};
  std::array<double, 2> arg{};
  const double oracle = vertex_minimum(rows, {1, 1}, &arg);
  CHECK(oracle == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(arg[0] == doctest::Approx(2.0 / 3.0));
  CHECK(arg[1] == doctest::Approx(2.0 / 3.0));

  LinearProgram lp;
  lp.add_variable(0, 1, 1);
  lp.add_variable(0, 1, 1);
  lp.add_row(row({{0, 1}, {1, 2}}, RowSense::kGreaterEqual, 2));
  lp.add_row(row({{0, 2}, {1, 1}}, RowSense::kGreaterEqual, 2));
  auto out = solve_lp(lp);
  REQUIRE(out.optimal());
  CHECK(out.objective == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(out.values[0] == doctest::Approx(2.0 / 3.0));
  CHECK(out.values[1] == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("add_row structural cases") {
  LinearProgram lp;
  lp.add_variable(0, 1, 1, "a");
  lp.add_variable(0, 1, 2, "b");
  CHECK(lp.add_row(row({{0, 1}}, RowSense::kGreaterEqual, 0.5)) == 0);
  CHECK(lp.add_row(row({{0, 1}}, RowSense::kGreaterEqual, 0.5)) == 1);
  CHECK(lp.add_row(row({{1, 1}}, RowSense::kGreaterEqual, 0.25)) == 2);
  CHECK(lp.num_rows() == 3);
  CHECK(lp.row(0).terms.size() == 1);
  CHECK_THROWS_AS(lp.add_row(row({{2, 1}}, RowSense::kGreaterEqual, 0)), InputError);
  auto out = solve_lp(lp);
  REQUIRE(out.optimal());
  CHECK(out.objective == doctest::Approx(1.0));
}

TEST_CASE("bad bounds are rejected") {
  LinearProgram lp;
  CHECK_THROWS_AS(lp.add_variable(1, 0, 0), InputError);
  CHECK_THROWS_AS(lp.add_variable(0, std::numeric_limits<double>::infinity(), 0), InputError);
}

TEST_CASE("text dump has one line per row") {
  LinearProgram lp;
  lp.add_variable(0, 1, 1, "x0");
  lp.add_row(LpRow{{{0, 1}}, RowSense::kGreaterEqual, 1, "kc[t=0]"});
  const std::string text = to_text(lp);
  CHECK(text.find("kc[t=0]") != std::string::npos);
  CHECK(text.find(">= 1") != std::string::npos);
}

TEST_CASE("random LPs: certificate, weak duality, determinism") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int solved = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int nv = 2 + static_cast<int>(rng() % 6);
    const int nr = 1 + static_cast<int>(rng() % 6);
    LinearProgram lp;
    for (int v = 0; v < nv; ++v) lp.add_variable(0, 1 + 3 * unit(rng), unit(rng) * 4 - 1);
    // rows built so a known random point is feasible
    std::vector<double> point(nv);
    for (int v = 0; v < nv; ++v) point[v] = unit(rng) * lp.upper(v);
    for (int r = 0; r < nr; ++r) {
      LpRow rw;
      for (int v = 0; v < nv; ++v) {
        if (rng() % 2) rw.terms.push_back({v, unit(rng) * 4 - 2});
      }
      rw.sense = rng() % 2 ? RowSense::kGreaterEqual : RowSense::kLessEqual;
      const double act = row_activity(rw, point);
      rw.rhs = rw.sense == RowSense::kGreaterEqual ? act - unit(rng) : act + unit(rng);
      lp.add_row(rw);
    }
    REQUIRE(max_violation(lp, point) <= 1e-12);
    auto out = solve_lp(lp);
    REQUIRE(out.optimal());
    ++solved;
    CHECK(max_violation(lp, out.values) <= kFeasibilityTol);
    CHECK(out.objective <= objective_value(lp, point) + kObjectiveTol);
    CHECK(out.objective == doctest::Approx(objective_value(lp, out.values)));
    auto again = solve_lp(lp);
    CHECK(again.values == out.values);
    CHECK(again.iterations == out.iterations);
  }
  CHECK(solved == 300);
}
