#include "spillresp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spillresp/error.hpp"

namespace spillresp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDropTol = 1e-12;
constexpr double kTieTol = 1e-10;
}  // namespace

SimplexTableau::SimplexTableau(const MilpProblem& p, const LpOptions& options) : opt_(options) {
  m_ = static_cast<int>(p.rows.size());
  n_ = static_cast<int>(p.columns.size());
  width_ = n_ + m_;

  body_.assign(static_cast<std::size_t>(m_) * width_, 0.0);
  rhs_.resize(m_);
  orig_rows_.resize(m_);
  cost_.assign(width_, 0.0);
  lb_.assign(width_, 0.0);
  ub_.assign(width_, 0.0);
  scratch_.assign(std::max(m_, width_), 0.0);

  const double sign = p.maximize ? -1.0 : 1.0;  // internal convention: minimize
  for (int j = 0; j < n_; ++j) {
    const auto& col = p.columns[j];
    require(std::isfinite(col.lb) && std::isfinite(col.ub), ErrorCode::InvalidArgument,
            "structural columns need finite bounds");
    cost_[j] = sign * col.obj;
    lb_[j] = col.lb;
    ub_[j] = col.ub;
  }
  for (int r = 0; r < m_; ++r) {
    const auto& row = p.rows[r];
    rhs_[r] = row.rhs;
    for (auto [c, v] : row.coeffs) {
      orig_rows_[r].emplace_back(c, v);
    }
    switch (row.sense) {
      case RowSense::LE: lb_[n_ + r] = 0.0; ub_[n_ + r] = kInf; break;
      case RowSense::GE: lb_[n_ + r] = -kInf; ub_[n_ + r] = 0.0; break;
      case RowSense::EQ: lb_[n_ + r] = 0.0; ub_[n_ + r] = 0.0; break;
    }
  }
  lb0_ = lb_;
  ub0_ = ub_;

  basis_.resize(m_);
  status_.assign(width_, Status::AtLower);
  x_.assign(width_, 0.0);
  d_.assign(width_, 0.0);
  for (int r = 0; r < m_; ++r) {
    basis_[r] = n_ + r;
    status_[n_ + r] = Status::Basic;
  }
  for (int j = 0; j < n_; ++j) x_[j] = lb_[j];
  for (int r = 0; r < m_; ++r) {
    double* row = row_ptr(r);
    for (auto [c, v] : orig_rows_[r]) row[c] += v;
    row[n_ + r] = 1.0;
  }
  recompute_primal();
  d_ = cost_;
}

void SimplexTableau::set_bounds(int col, double lb, double ub) {
  require(col >= 0 && col < n_, ErrorCode::InvalidArgument, "bound change on unknown column");
  require(lb <= ub, ErrorCode::InvalidArgument, "crossed bounds");
  lb_[col] = lb;
  ub_[col] = ub;
  if (status_[col] == Status::AtLower) x_[col] = lb;
  if (status_[col] == Status::AtUpper) x_[col] = ub;
}

void SimplexTableau::reset_bounds() {
  lb_ = lb0_;
  ub_ = ub0_;
  for (int c = 0; c < width_; ++c) {
    if (status_[c] == Status::AtLower) x_[c] = lb_[c];
    if (status_[c] == Status::AtUpper) x_[c] = ub_[c];
  }
}

void SimplexTableau::set_objective(const std::vector<double>& obj_max) {
  require(static_cast<int>(obj_max.size()) == n_, ErrorCode::DimensionMismatch,
          "objective vector length mismatch");
  for (int j = 0; j < n_; ++j) cost_[j] = -obj_max[j];
  refresh_reduced_costs();
}

double SimplexTableau::objective_value() const {
  double v = 0.0;
  for (int j = 0; j < n_; ++j) v += cost_[j] * x_[j];
  return -v;
}

std::vector<double> SimplexTableau::structural_values() const {
  return {x_.begin(), x_.begin() + n_};
}

std::vector<double> SimplexTableau::row_duals() const {
  std::vector<double> y(m_);
  for (int r = 0; r < m_; ++r) y[r] = d_[n_ + r];
  return y;
}

void SimplexTableau::recompute_primal() {
  // x_B = B^-1 b - B^-1 N x_N; both terms stream along tableau rows.
  std::vector<double>& w = scratch_;
  std::fill(w.begin(), w.begin() + width_, 0.0);
  for (int c = 0; c < width_; ++c)
    if (status_[c] != Status::Basic && x_[c] != 0.0) w[c] = x_[c];
  std::vector<double> xb(m_);
  for (int r = 0; r < m_; ++r) {
    const double* row = row_ptr(r);
    double acc = 0.0;
    for (int q = 0; q < m_; ++q) acc += row[n_ + q] * rhs_[q];
    double sub = 0.0;
    for (int c = 0; c < width_; ++c) sub += row[c] * w[c];
    xb[r] = acc - sub;
  }
  for (int r = 0; r < m_; ++r) x_[basis_[r]] = xb[r];
}

void SimplexTableau::refresh_reduced_costs() {
  d_ = cost_;
  for (int r = 0; r < m_; ++r) {
    const double cb = cost_[basis_[r]];
    if (cb == 0.0) continue;
    const double* row = row_ptr(r);
    for (int c = 0; c < width_; ++c) d_[c] -= cb * row[c];
  }
  for (int r = 0; r < m_; ++r) d_[basis_[r]] = 0.0;
}

void SimplexTableau::pivot(int row, int col) {
  double* prow = row_ptr(row);
  const double inv = 1.0 / prow[col];
  if (inv != 1.0)
    for (int c = 0; c < width_; ++c) prow[c] *= inv;
  prow[col] = 1.0;
  for (int i = 0; i < m_; ++i) {
    if (i == row) continue;
    double* irow = row_ptr(i);
    const double f = irow[col];
    if (std::abs(f) <= kDropTol) {
      irow[col] = 0.0;
      continue;
    }
    for (int c = 0; c < width_; ++c) irow[c] -= f * prow[c];
    irow[col] = 0.0;
  }
  const double dq = d_[col];
  if (dq != 0.0)
    for (int c = 0; c < width_; ++c) d_[c] -= dq * prow[c];
  d_[col] = 0.0;
  basis_[row] = col;
  status_[col] = Status::Basic;
  ++iterations_;
}

double SimplexTableau::violation_of(int col) const {
  if (x_[col] < lb_[col]) return lb_[col] - x_[col];
  if (x_[col] > ub_[col]) return x_[col] - ub_[col];
  return 0.0;
}

double SimplexTableau::max_bound_violation() const {
  double worst = 0.0;
  for (int c = 0; c < width_; ++c) worst = std::max(worst, violation_of(c));
  return worst;
}

double SimplexTableau::max_row_residual() const {
  double worst = 0.0;
  for (int r = 0; r < m_; ++r) {
    double act = x_[n_ + r];
    double scale = std::max(1.0, std::abs(rhs_[r]));
    for (auto [c, v] : orig_rows_[r]) {
      act += v * x_[c];
      scale = std::max(scale, std::abs(v * x_[c]));
    }
    worst = std::max(worst, std::abs(act - rhs_[r]) / scale);
  }
  return worst;
}

LpStatus SimplexTableau::primal_loop(bool phase_one) {
  std::vector<double> w(m_);
  long stall = 0;
  double last_obj = kInf;
  const long stall_cap = 5L * (m_ + width_);

  for (long it = 0; it < opt_.iter_limit; ++it) {
    // Pricing (Dantzig; Bland once stalled).
    int q = -1;
    double best = -opt_.opt_tol;
    for (int c = 0; c < width_; ++c) {
      if (status_[c] == Status::Basic || lb_[c] == ub_[c]) continue;
      double score;
      if (status_[c] == Status::AtLower && d_[c] < -opt_.opt_tol) score = d_[c];
      else if (status_[c] == Status::AtUpper && d_[c] > opt_.opt_tol) score = -d_[c];
      else continue;
      if (bland_) { q = c; break; }
      if (score < best) { best = score; q = c; }
    }
    if (q < 0) return LpStatus::Optimal;

    const double t = status_[q] == Status::AtLower ? 1.0 : -1.0;
    for (int r = 0; r < m_; ++r) w[r] = body_[static_cast<std::size_t>(r) * width_ + q];

    double delta = ub_[q] - lb_[q];  // bound-flip distance, possibly +inf
    int leave_row = -1;
    Status leave_side = Status::AtLower;
    double best_piv = 0.0;
    for (int r = 0; r < m_; ++r) {
      if (std::abs(w[r]) <= opt_.pivot_tol) continue;
      const int v = basis_[r];
      const double rate = t * w[r];
      double cand;
      Status side;
      if (rate > 0.0) {
        if (lb_[v] == -kInf) continue;
        cand = (x_[v] - lb_[v]) / rate;
        side = Status::AtLower;
      } else {
        if (ub_[v] == kInf) continue;
        cand = (x_[v] - ub_[v]) / rate;
        side = Status::AtUpper;
      }
      if (cand < 0.0) cand = 0.0;
      if (cand < delta - kTieTol) {
        delta = cand;
        leave_row = r;
        leave_side = side;
        best_piv = std::abs(w[r]);
      } else if (leave_row >= 0 && cand <= delta + kTieTol) {
        const bool prefer =
            bland_ ? basis_[r] < basis_[leave_row] : std::abs(w[r]) > best_piv;
        if (prefer) {
          leave_row = r;
          leave_side = side;
          best_piv = std::abs(w[r]);
        }
      }
    }

    if (delta == kInf) return phase_one ? LpStatus::Infeasible : LpStatus::Unbounded;

    if (leave_row < 0) {
      // Bound flip without basis change.
      for (int r = 0; r < m_; ++r)
        if (w[r] != 0.0) x_[basis_[r]] -= t * delta * w[r];
      x_[q] = status_[q] == Status::AtLower ? ub_[q] : lb_[q];
      status_[q] = status_[q] == Status::AtLower ? Status::AtUpper : Status::AtLower;
      ++iterations_;
    } else {
      for (int r = 0; r < m_; ++r)
        if (w[r] != 0.0 && r != leave_row) x_[basis_[r]] -= t * delta * w[r];
      const int v = basis_[leave_row];
      x_[q] = (status_[q] == Status::AtLower ? lb_[q] : ub_[q]) + t * delta;
      x_[v] = leave_side == Status::AtLower ? lb_[v] : ub_[v];
      pivot(leave_row, q);
      status_[v] = leave_side;
    }

    const double now = objective_value();
    if (now > last_obj + 1e-12 * (1.0 + std::abs(last_obj))) {
      last_obj = now;
      stall = 0;
    } else if (++stall > stall_cap) {
      bland_ = true;
      stall = 0;
    }
  }
  return LpStatus::IterLimit;
}

bool SimplexTableau::run_phase_one() {
  // Composite phase 1: zero the true costs, relax the bounds of violated
  // variables with a unit cost toward the violated bound, and de-relax each
  // variable when it comes home. Pure phase costs keep the feasibility search
  // unbiased by the real objective.
  const std::vector<double> saved_cost = cost_;
  const std::vector<double> true_lb = lb_;
  const std::vector<double> true_ub = ub_;
  std::fill(cost_.begin(), cost_.end(), 0.0);
  std::vector<int> dir(width_, 0);  // -1 pushed up, +1 pushed down
  bool feasible = false;
  LpStatus last = LpStatus::IterLimit;
  bool solved_once = false;

  for (int round = 0; round < 500; ++round) {
    bool new_relax = false;
    for (int c = 0; c < width_; ++c) {
      if (dir[c] != 0) continue;
      if (x_[c] < lb_[c] - opt_.feas_tol) {
        dir[c] = -1;
        cost_[c] = -1.0;
        lb_[c] = -kInf;
        new_relax = true;
      } else if (x_[c] > ub_[c] + opt_.feas_tol) {
        dir[c] = 1;
        cost_[c] = 1.0;
        ub_[c] = kInf;
        new_relax = true;
      }
    }
    bool derelaxed = false;
    for (int c = 0; c < width_; ++c) {
      if (dir[c] == 0) continue;
      if (x_[c] >= true_lb[c] - opt_.feas_tol && x_[c] <= true_ub[c] + opt_.feas_tol) {
        dir[c] = 0;
        cost_[c] = 0.0;
        lb_[c] = true_lb[c];
        ub_[c] = true_ub[c];
        derelaxed = true;
      }
    }
    double viol = 0.0;
    for (int c = 0; c < width_; ++c) {
      if (x_[c] < true_lb[c]) viol = std::max(viol, true_lb[c] - x_[c]);
      if (x_[c] > true_ub[c]) viol = std::max(viol, x_[c] - true_ub[c]);
    }
    if (viol <= opt_.feas_tol) {
      feasible = true;
      break;
    }
    if (solved_once && last == LpStatus::Optimal && !new_relax && !derelaxed) {
      feasible = false;  // phase optimum reached with violations left
      break;
    }
    refresh_reduced_costs();
    last = primal_loop(true);
    solved_once = true;
    if (last == LpStatus::IterLimit) {
      feasible = false;
      break;
    }
  }

  lb_ = true_lb;
  ub_ = true_ub;
  cost_ = saved_cost;
  for (int c = 0; c < width_; ++c) {
    if (status_[c] == Status::AtLower) x_[c] = lb_[c];
    if (status_[c] == Status::AtUpper) x_[c] = ub_[c];
  }
  recompute_primal();
  refresh_reduced_costs();
  return feasible && max_bound_violation() <= 100.0 * opt_.feas_tol;
}

LpStatus SimplexTableau::solve_from_scratch() {
  bland_ = false;
  std::fill(body_.begin(), body_.end(), 0.0);
  for (int r = 0; r < m_; ++r) {
    double* row = row_ptr(r);
    for (auto [c, v] : orig_rows_[r]) row[c] += v;
    row[n_ + r] = 1.0;
    basis_[r] = n_ + r;
  }
  for (int c = 0; c < width_; ++c) {
    if (c >= n_ && c - n_ < m_ && basis_[c - n_] == c) {
      status_[c] = Status::Basic;
      continue;
    }
    if (lb_[c] == -kInf) {
      status_[c] = Status::AtUpper;
      x_[c] = ub_[c];
    } else {
      status_[c] = Status::AtLower;
      x_[c] = lb_[c];
    }
  }
  for (int r = 0; r < m_; ++r) status_[n_ + r] = Status::Basic;
  recompute_primal();
  if (max_bound_violation() > opt_.feas_tol) {
    if (!run_phase_one()) return LpStatus::Infeasible;
  } else {
    refresh_reduced_costs();
  }
  return primal_loop(false);
}

LpStatus SimplexTableau::reoptimize_dual() {
  bland_ = false;
  refresh_reduced_costs();
  recompute_primal();
  std::vector<double> w(m_);
  long stall = 0;
  double last_viol = kInf;
  const long stall_cap = 5L * (m_ + width_);

  for (long it = 0; it < opt_.iter_limit; ++it) {
    int r = -1;
    double worst = opt_.feas_tol;
    for (int row = 0; row < m_; ++row) {
      const double v = violation_of(basis_[row]);
      if (v > worst + kTieTol) {
        worst = v;
        r = row;
      } else if (r >= 0 && v > worst - kTieTol && basis_[row] < basis_[r]) {
        r = row;
      }
    }
    if (r < 0) return LpStatus::Optimal;

    const int v = basis_[r];
    const bool below = x_[v] < lb_[v];
    const double* alpha = row_ptr(r);

    int q = -1;
    double best_ratio = kInf;
    double best_piv = 0.0;
    for (int c = 0; c < width_; ++c) {
      if (status_[c] == Status::Basic || lb_[c] == ub_[c]) continue;
      const double a = alpha[c];
      if (std::abs(a) <= opt_.pivot_tol) continue;
      bool ok;
      if (below)
        ok = (status_[c] == Status::AtLower && a < 0.0) ||
             (status_[c] == Status::AtUpper && a > 0.0);
      else
        ok = (status_[c] == Status::AtLower && a > 0.0) ||
             (status_[c] == Status::AtUpper && a < 0.0);
      if (!ok) continue;
      if (bland_) {
        if (q < 0) q = c;
        continue;
      }
      const double ratio = std::abs(d_[c]) / std::abs(a);
      if (ratio < best_ratio - kTieTol ||
          (ratio < best_ratio + kTieTol && std::abs(a) > best_piv)) {
        q = c;
        best_ratio = ratio;
        best_piv = std::abs(a);
      }
    }
    if (q < 0) return LpStatus::Infeasible;

    const double beta = below ? lb_[v] : ub_[v];
    const double dxq = (x_[v] - beta) / alpha[q];
    for (int row = 0; row < m_; ++row) w[row] = body_[static_cast<std::size_t>(row) * width_ + q];
    for (int row = 0; row < m_; ++row)
      if (row != r && w[row] != 0.0) x_[basis_[row]] -= w[row] * dxq;
    x_[q] = (status_[q] == Status::AtLower ? lb_[q] : ub_[q]) + dxq;
    x_[v] = beta;
    pivot(r, q);
    status_[v] = below ? Status::AtLower : Status::AtUpper;

    const double now = max_bound_violation();
    if (now < last_viol - 1e-12) {
      last_viol = now;
      stall = 0;
    } else if (++stall > stall_cap) {
      bland_ = true;
      stall = 0;
    }
  }
  return LpStatus::IterLimit;
}

LpStatus SimplexTableau::reoptimize_primal() {
  bland_ = false;
  recompute_primal();
  if (max_bound_violation() > opt_.feas_tol) {
    if (!run_phase_one()) return LpStatus::Infeasible;
  }
  return primal_loop(false);
}

LpResult solve_lp(const MilpProblem& problem, const LpOptions& options) {
  SimplexTableau tab(problem, options);
  LpStatus st = tab.solve_from_scratch();
  LpResult res;
  res.status = st;
  res.iterations = tab.iterations();
  if (st == LpStatus::Optimal) {
    res.objective = tab.objective_value();
    res.x = tab.structural_values();
    res.duals = tab.row_duals();
    require(tab.max_bound_violation() <= 100.0 * options.feas_tol &&
                tab.max_row_residual() <= 100.0 * options.feas_tol,
            ErrorCode::Internal, "optimal basis fails the feasibility residual check");
  }
  return res;
}

}  // namespace spillresp
