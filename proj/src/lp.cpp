#include "pcover/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "pcover/error.hpp"

namespace pcover {

int LinearProgram::add_variable(double lower, double upper, double cost,
                                std::string name) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || lower > upper) {
    throw InputError("add_variable: bounds must be finite with lower <= upper");
  }
  const int index = num_variables();
  lower_.push_back(lower);
  upper_.push_back(upper);
  cost_.push_back(cost);
  names_.push_back(name.empty() ? "v" + std::to_string(index) : std::move(name));
  return index;
}

int LinearProgram::add_row(LpRow row) {
  for (const auto& term : row.terms) {
    if (term.var < 0 || term.var >= num_variables()) {
      throw InputError("add_row: variable index " + std::to_string(term.var) +
                       " out of range [0, " + std::to_string(num_variables()) +
                       ")");
    }
  }
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

void LinearProgram::set_cost(int var, double cost) { cost_.at(var) = cost; }

void LinearProgram::set_rhs(int row, double rhs) { rows_.at(row).rhs = rhs; }

double row_activity(const LpRow& row, std::span<const double> values) {
  double sum = 0.0;
  for (const auto& term : row.terms) sum += term.coef * values[term.var];
  return sum;
}

double max_violation(const LinearProgram& lp, std::span<const double> values) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_variables(); ++j) {
    worst = std::max(worst, lp.lower(j) - values[j]);
    worst = std::max(worst, values[j] - lp.upper(j));
  }
  for (const auto& row : lp.rows()) {
    const double activity = row_activity(row, values);
    worst = std::max(worst, row.sense == RowSense::kGreaterEqual
                                ? row.rhs - activity
                                : activity - row.rhs);
  }
  return worst;
}

double objective_value(const LinearProgram& lp, std::span<const double> values) {
  double sum = 0.0;
  for (int j = 0; j < lp.num_variables(); ++j) sum += lp.cost(j) * values[j];
  return sum;
}

std::string to_text(const LinearProgram& lp) {
  std::ostringstream out;
  out.precision(12);
  out << "minimize:";
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (lp.cost(j) != 0.0) out << ' ' << lp.cost(j) << ' ' << lp.name(j);
  }
  out << '\n';
  for (int r = 0; r < lp.num_rows(); ++r) {
    const auto& row = lp.row(r);
    out << (row.label.empty() ? "r" + std::to_string(r) : row.label) << " :";
    for (std::size_t k = 0; k < row.terms.size(); ++k) {
      out << (k == 0 ? " " : " + ") << row.terms[k].coef << ' '
          << lp.name(row.terms[k].var);
    }
    out << (row.sense == RowSense::kGreaterEqual ? " >= " : " <= ") << row.rhs
        << '\n';
  }
  for (int j = 0; j < lp.num_variables(); ++j) {
    out << "bound " << lp.lower(j) << " <= " << lp.name(j)
        << " <= " << lp.upper(j) << '\n';
  }
  return out.str();
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarState : unsigned char { kBasic, kAtLower, kAtUpper };

// Standard form: every row is a.x + s - art = b with s >= 0 and, where the
// starting point violates the row, an artificial art >= 0. Rows with sense
// >= are negated first.
class DenseSimplex {
 public:
  DenseSimplex(const LinearProgram& lp, const SimplexOptions& options)
      : lp_(lp), opt_(options) {
    rows_ = lp.num_rows();
    structural_ = lp.num_variables();

    std::vector<std::vector<double>> dense(rows_,
                                           std::vector<double>(structural_));
    b_.resize(rows_);
    for (int r = 0; r < rows_; ++r) {
      const auto& row = lp.row(r);
      const double sign = row.sense == RowSense::kGreaterEqual ? -1.0 : 1.0;
      for (const auto& term : row.terms) dense[r][term.var] += sign * term.coef;
      b_[r] = sign * row.rhs;
    }

    for (int j = 0; j < structural_; ++j) {
      lb_.push_back(lp.lower(j));
      ub_.push_back(lp.upper(j));
      cost_.push_back(lp.cost(j));
    }
    for (int r = 0; r < rows_; ++r) {
      lb_.push_back(0.0);
      ub_.push_back(kInf);
      cost_.push_back(0.0);
    }

    std::vector<int> artificial_row;
    std::vector<double> residual(rows_);
    for (int r = 0; r < rows_; ++r) {
      double activity = 0.0;
      for (int j = 0; j < structural_; ++j) activity += dense[r][j] * lb_[j];
      residual[r] = b_[r] - activity;
      if (residual[r] < 0.0) artificial_row.push_back(r);
    }
    first_artificial_ = structural_ + rows_;
    cols_ = first_artificial_ + static_cast<int>(artificial_row.size());
    for (std::size_t k = 0; k < artificial_row.size(); ++k) {
      lb_.push_back(0.0);
      ub_.push_back(kInf);
      cost_.push_back(0.0);
    }

    a_.assign(static_cast<std::size_t>(rows_) * cols_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      std::copy(dense[r].begin(), dense[r].end(), &a_[idx(r, 0)]);
      a_[idx(r, structural_ + r)] = 1.0;
    }

    state_.assign(cols_, VarState::kAtLower);
    val_ = lb_;
    basis_.assign(rows_, -1);
    for (int r = 0; r < rows_; ++r) basis_[r] = structural_ + r;
    for (std::size_t k = 0; k < artificial_row.size(); ++k) {
      const int r = artificial_row[k];
      const int col = first_artificial_ + static_cast<int>(k);
      a_[idx(r, col)] = -1.0;
      basis_[r] = col;
    }
    for (int r = 0; r < rows_; ++r) state_[basis_[r]] = VarState::kBasic;

    max_iterations_ = opt_.max_iterations > 0
                          ? opt_.max_iterations
                          : 200 * (rows_ + cols_) + 1000;
    refactor();
  }

  LpOutcome run() {
    LpOutcome outcome;
    if (cols_ > first_artificial_) {
      std::vector<double> phase1(cols_, 0.0);
      for (int j = first_artificial_; j < cols_; ++j) phase1[j] = 1.0;
      iterate(phase1);
      refactor();
      double infeasibility = 0.0;
      for (int j = first_artificial_; j < cols_; ++j) {
        infeasibility += std::max(0.0, val_[j]);
      }
      if (infeasibility > opt_.feasibility_tol) {
        outcome.status = LpStatus::kInfeasible;
        outcome.iterations = iterations_;
        return outcome;
      }
      for (int j = first_artificial_; j < cols_; ++j) ub_[j] = 0.0;
    }
    iterate(cost_);
    refactor();

    outcome.values.assign(val_.begin(), val_.begin() + structural_);
    for (int j = 0; j < structural_; ++j) {
      const double v = outcome.values[j];
      if (v < lb_[j] - opt_.feasibility_tol || v > ub_[j] + opt_.feasibility_tol) {
        throw SolverError("solve_lp: variable " + lp_.name(j) +
                          " ended outside its bounds (unstable basis)");
      }
      outcome.values[j] = std::clamp(v, lb_[j], ub_[j]);
    }
    const double violation = max_violation(lp_, outcome.values);
    if (violation > opt_.feasibility_tol) {
      std::ostringstream msg;
      msg << "solve_lp: final basis violates a row by " << violation
          << " (unstable basis)";
      throw SolverError(msg.str());
    }
    outcome.status = LpStatus::kOptimal;
    outcome.objective = objective_value(lp_, outcome.values);
    outcome.iterations = iterations_;
    return outcome;
  }

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * cols_ + c;
  }

  // Rebuild the tableau B^-1 A and the basic values from the original data.
  void refactor() {
    pivots_since_refactor_ = 0;
    const int width = cols_ + 1;
    std::vector<double> m(static_cast<std::size_t>(rows_) * (rows_ + width));
    const int stride = rows_ + width;
    for (int r = 0; r < rows_; ++r) {
      double rhs = b_[r];
      for (int j = 0; j < cols_; ++j) {
        const double a = a_[idx(r, j)];
        m[r * stride + rows_ + j] = a;
        if (state_[j] != VarState::kBasic) rhs -= a * val_[j];
      }
      for (int k = 0; k < rows_; ++k) m[r * stride + k] = a_[idx(r, basis_[k])];
      m[r * stride + rows_ + cols_] = rhs;
    }
    for (int c = 0; c < rows_; ++c) {
      int pivot = c;
      for (int r = c + 1; r < rows_; ++r) {
        if (std::abs(m[r * stride + c]) > std::abs(m[pivot * stride + c])) {
          pivot = r;
        }
      }
      if (std::abs(m[pivot * stride + c]) < 1e-12) {
        throw SolverError("solve_lp: singular basis during refactorization");
      }
      if (pivot != c) {
        std::swap_ranges(&m[pivot * stride], &m[pivot * stride] + stride,
                         &m[c * stride]);
      }
      const double inv = 1.0 / m[c * stride + c];
      for (int k = c; k < stride; ++k) m[c * stride + k] *= inv;
      for (int r = 0; r < rows_; ++r) {
        if (r == c) continue;
        const double f = m[r * stride + c];
        if (f == 0.0) continue;
        for (int k = c; k < stride; ++k) m[r * stride + k] -= f * m[c * stride + k];
      }
    }
    tableau_.resize(static_cast<std::size_t>(rows_) * cols_);
    for (int r = 0; r < rows_; ++r) {
      std::copy(&m[r * stride + rows_], &m[r * stride + rows_ + cols_],
                &tableau_[idx(r, 0)]);
      val_[basis_[r]] = m[r * stride + rows_ + cols_];
    }
  }

  void iterate(const std::vector<double>& cost) {
    std::vector<double> reduced(cols_);
    while (true) {
      if (++iterations_ > max_iterations_) {
        throw SolverError("solve_lp: iteration limit " +
                          std::to_string(max_iterations_) + " exceeded");
      }
      if (pivots_since_refactor_ >= opt_.refactor_interval) refactor();

      reduced = cost;
      for (int r = 0; r < rows_; ++r) {
        const double cb = cost[basis_[r]];
        if (cb == 0.0) continue;
        const double* row = &tableau_[idx(r, 0)];
        for (int j = 0; j < cols_; ++j) reduced[j] -= cb * row[j];
      }

      // Bland: lowest-index improving column.
      int entering = -1;
      for (int j = 0; j < cols_; ++j) {
        if (state_[j] == VarState::kBasic) continue;
        if (state_[j] == VarState::kAtLower) {
          if (ub_[j] - lb_[j] > opt_.pivot_tol &&
              reduced[j] < -opt_.optimality_tol) {
            entering = j;
            break;
          }
        } else if (reduced[j] > opt_.optimality_tol) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return;

      const double dir = state_[entering] == VarState::kAtLower ? 1.0 : -1.0;
      double theta = ub_[entering] - lb_[entering];
      int leaving_row = -1;
      bool leaves_at_upper = false;
      for (int r = 0; r < rows_; ++r) {
        const double alpha = tableau_[idx(r, entering)] * dir;
        const int var = basis_[r];
        double limit;
        bool to_upper;
        if (alpha > opt_.pivot_tol) {
          limit = std::max(0.0, val_[var] - lb_[var]) / alpha;
          to_upper = false;
        } else if (alpha < -opt_.pivot_tol && std::isfinite(ub_[var])) {
          limit = std::max(0.0, ub_[var] - val_[var]) / -alpha;
          to_upper = true;
        } else {
          continue;
        }
        bool take;
        if (leaving_row < 0) {
          take = limit <= theta;
        } else {
          take = limit < theta - 1e-12 ||
                 (limit <= theta + 1e-12 && var < basis_[leaving_row]);
        }
        if (take) {
          theta = limit;
          leaving_row = r;
          leaves_at_upper = to_upper;
        }
      }
      if (!std::isfinite(theta)) {
        throw SolverError("solve_lp: problem is unbounded");
      }

      val_[entering] += dir * theta;
      for (int r = 0; r < rows_; ++r) {
        val_[basis_[r]] -= tableau_[idx(r, entering)] * dir * theta;
      }
      if (leaving_row < 0) {
        state_[entering] = state_[entering] == VarState::kAtLower
                               ? VarState::kAtUpper
                               : VarState::kAtLower;
        val_[entering] = state_[entering] == VarState::kAtLower
                             ? lb_[entering]
                             : ub_[entering];
        continue;
      }
      const int leaving = basis_[leaving_row];
      state_[leaving] = leaves_at_upper ? VarState::kAtUpper : VarState::kAtLower;
      val_[leaving] = leaves_at_upper ? ub_[leaving] : lb_[leaving];
      basis_[leaving_row] = entering;
      state_[entering] = VarState::kBasic;
      pivot(leaving_row, entering);
    }
  }

  void pivot(int pr, int pc) {
    ++pivots_since_refactor_;
    double* prow = &tableau_[idx(pr, 0)];
    const double inv = 1.0 / prow[pc];
    for (int j = 0; j < cols_; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (r == pr) continue;
      double* row = &tableau_[idx(r, 0)];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (int j = 0; j < cols_; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
    }
  }

  const LinearProgram& lp_;
  SimplexOptions opt_;
  int rows_ = 0;
  int structural_ = 0;
  int first_artificial_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> lb_, ub_, cost_;
  std::vector<double> tableau_;
  std::vector<double> val_;
  std::vector<int> basis_;
  std::vector<VarState> state_;
  int iterations_ = 0;
  int max_iterations_ = 0;
  int pivots_since_refactor_ = 0;
};

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  DenseSimplex simplex(lp, options);
  return simplex.run();
}

}  // namespace pcover
