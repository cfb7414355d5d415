#pragma once

#include <vector>

#include "spillresp/milp.hpp"

namespace spillresp {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

struct LpOptions {
  double feas_tol = 1e-7;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-9;
  long iter_limit = 2'000'000;
};

struct LpResult {
  LpStatus status = LpStatus::Optimal;
  double objective = 0.0;       // in the problem's (maximize) sense
  std::vector<double> x;        // structural primal values
  std::vector<double> duals;    // row duals, maximize sense
  long iterations = 0;
};

/// Bounded-variable simplex on a dense tableau. Rows become equalities with
/// one slack each; variable bounds stay implicit, so the tableau has one row
/// per constraint. The tableau body depends only on the basis, not on bounds
/// or objective: branch-and-bound re-tightens bounds and re-optimizes dually,
/// and weight sweeps swap objectives and re-optimize primally, without a
/// refactorization.
class SimplexTableau {
 public:
  explicit SimplexTableau(const MilpProblem& problem, const LpOptions& options = {});

  int num_structural() const { return n_; }
  int num_rows() const { return m_; }

  void set_bounds(int col, double lb, double ub);
  void reset_bounds();  // restore construction-time bounds
  void set_objective(const std::vector<double>& obj_max);  // structural costs

  /// Cold solve: rebuilt slack basis, phase-1 if needed, then primal.
  LpStatus solve_from_scratch();
  /// Re-optimize after bound changes; valid whenever the objective is
  /// unchanged since the last optimum (reduced costs stay dual feasible).
  /// Falls back to a scratch solve if the dual loop stalls out.
  LpStatus reoptimize_dual();
  /// Re-optimize after an objective change from a primal-feasible basis.
  LpStatus reoptimize_primal();

  double objective_value() const;  // maximize sense
  double column_value(int col) const { return x_[col]; }
  std::vector<double> structural_values() const;
  std::vector<double> row_duals() const;  // maximize sense
  long iterations() const { return iterations_; }

  /// Largest bound violation of the current point.
  double max_bound_violation() const;
  /// Largest row-equation residual measured against the original coefficients.
  double max_row_residual() const;

 private:
  enum class Status : char { Basic, AtLower, AtUpper };

  double* row_ptr(int r) { return &body_[static_cast<std::size_t>(r) * width_]; }
  const double* row_ptr(int r) const { return &body_[static_cast<std::size_t>(r) * width_]; }

  void recompute_primal();
  void refresh_reduced_costs();
  void pivot(int row, int col);
  LpStatus primal_loop(bool phase_one);
  bool run_phase_one();
  double violation_of(int col) const;

  int m_ = 0;      // rows
  int n_ = 0;      // structural columns
  int width_ = 0;  // n + m, slacks appended
  LpOptions opt_;

  std::vector<double> body_;  // dense m x width tableau, B^-1 [A | I]
  std::vector<double> rhs_;   // original b
  std::vector<std::vector<std::pair<int, double>>> orig_rows_;  // original sparse rows
  std::vector<double> cost_;  // internal minimize costs per column
  std::vector<double> d_;     // reduced costs per column
  std::vector<double> x_;     // current value per column
  std::vector<double> lb_, ub_;
  std::vector<double> lb0_, ub0_;
  std::vector<int> basis_;  // basic column per row
  std::vector<Status> status_;
  std::vector<double> scratch_;
  long iterations_ = 0;
  bool bland_ = false;
};

/// Relaxes integrality and solves. Optimal results satisfy the row/bound
/// residual check at feas_tol (scaled by row magnitude).
LpResult solve_lp(const MilpProblem& problem, const LpOptions& options = {});

}  // namespace spillresp
