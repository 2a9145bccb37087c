#pragma once

#include <span>
#include <string>
#include <vector>

namespace pcover {

inline constexpr double kFeasibilityTol = 1e-7;
inline constexpr double kObjectiveTol = 1e-6;
inline constexpr double kPivotTol = 1e-9;

enum class RowSense { kGreaterEqual, kLessEqual };

struct LpTerm {
  int var = 0;
  double coef = 0.0;
};

struct LpRow {
  std::vector<LpTerm> terms;
  RowSense sense = RowSense::kGreaterEqual;
  double rhs = 0.0;
  std::string label;
};

// Minimize c.x subject to sparse rows and finite box bounds on every variable.
class LinearProgram {
 public:
  int add_variable(double lower, double upper, double cost,
                   std::string name = {});
  // Appends a row and returns its index. Existing rows are untouched;
  // duplicates are allowed. Throws InputError on a bad variable index.
  int add_row(LpRow row);
  void set_cost(int var, double cost);
  void set_rhs(int row, double rhs);

  int num_variables() const { return static_cast<int>(lower_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  double lower(int var) const { return lower_[var]; }
  double upper(int var) const { return upper_[var]; }
  double cost(int var) const { return cost_[var]; }
  const std::string& name(int var) const { return names_[var]; }
  const LpRow& row(int r) const { return rows_[r]; }
  const std::vector<LpRow>& rows() const { return rows_; }

 private:
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<std::string> names_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { kOptimal, kInfeasible };

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> values;
  double objective = 0.0;
  int iterations = 0;

  bool optimal() const { return status == LpStatus::kOptimal; }
};

struct SimplexOptions {
  double feasibility_tol = kFeasibilityTol;
  double optimality_tol = kPivotTol;
  double pivot_tol = kPivotTol;
  // Recompute the tableau from the original data every this many pivots.
  int refactor_interval = 64;
  // 0 selects a size-based default.
  int max_iterations = 0;
};

// Bounded-variable primal simplex (two phases, Bland's rule, dense tableau).
// Deterministic for identical input. Throws SolverError if the final basis
// fails re-substitution or the iteration budget runs out.
LpOutcome solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

double row_activity(const LpRow& row, std::span<const double> values);

// Largest bound or row violation of a point (0 if feasible).
double max_violation(const LinearProgram& lp, std::span<const double> values);

double objective_value(const LinearProgram& lp, std::span<const double> values);

// One line per row, e.g. "kc[t=0] : 1 x0 + 1 x1 >= 1".
std::string to_text(const LinearProgram& lp);

}  // namespace pcover
