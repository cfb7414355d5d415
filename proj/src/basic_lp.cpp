#include "spillresp/basic_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spillresp/error.hpp"

namespace spillresp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = 1e-9;

struct Tableau {
  // rows x (vars + 1); last column is the rhs. Objective kept separately.
  std::vector<std::vector<double>> t;
  std::vector<double> obj;  // reduced-cost row, last entry = -objective value
  std::vector<int> basis;
  int nvars = 0;

  double& rhs(int r) { return t[r][nvars]; }

  void do_pivot(int pr, int pc) {
    auto& prow = t[pr];
    const double inv = 1.0 / prow[pc];
    for (auto& v : prow) v *= inv;
    prow[pc] = 1.0;
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (static_cast<int>(r) == pr) continue;
      const double f = t[r][pc];
      if (f == 0.0) continue;
      for (int c = 0; c <= nvars; ++c) t[r][c] -= f * prow[c];
      t[r][pc] = 0.0;
    }
    const double f = obj[pc];
    if (f != 0.0) {
      for (int c = 0; c <= nvars; ++c) obj[c] -= f * prow[c];
      obj[pc] = 0.0;
    }
    basis[pr] = pc;
  }

  // Bland's rule primal simplex on the current tableau; returns false when
  // unbounded.
  bool run() {
    for (long it = 0; it < 1'000'000; ++it) {
      int pc = -1;
      for (int c = 0; c < nvars; ++c)
        if (obj[c] < -kEps) {
          pc = c;
          break;
        }
      if (pc < 0) return true;
      int pr = -1;
      double best = kInf;
      for (std::size_t r = 0; r < t.size(); ++r) {
        if (t[r][pc] > kEps) {
          const double ratio = rhs(static_cast<int>(r)) / t[r][pc];
          if (ratio < best - 1e-12 ||
              (ratio < best + 1e-12 && pr >= 0 && basis[r] < basis[pr])) {
            best = ratio;
            pr = static_cast<int>(r);
          }
        }
      }
      if (pr < 0) return false;
      do_pivot(pr, pc);
    }
    fail(ErrorCode::Internal, "basic LP iteration cap reached");
  }
};

}  // namespace

BasicLpResult basic_lp_solve(const BasicLp& lp) {
  const int n = static_cast<int>(lp.c.size());
  // Expand finite upper bounds into explicit rows, then build the standard
  // equality form with slacks, surpluses, and artificials.
  std::vector<BasicLp::Row> rows = lp.rows;
  for (int j = 0; j < n; ++j) {
    if (lp.ub[j] < kInf) {
      BasicLp::Row r;
      r.a.assign(n, 0.0);
      r.a[j] = 1.0;
      r.sense = 'L';
      r.b = lp.ub[j];
      rows.push_back(std::move(r));
    }
  }
  const int m = static_cast<int>(rows.size());

  // Normalize to b >= 0.
  for (auto& r : rows) {
    if (r.b < 0.0) {
      for (auto& v : r.a) v = -v;
      r.b = -r.b;
      if (r.sense == 'L') r.sense = 'G';
      else if (r.sense == 'G') r.sense = 'L';
    }
  }

  int extra = 0;
  for (const auto& r : rows) extra += r.sense == 'L' || r.sense == 'G' ? 1 : 0;
  int nart = 0;
  for (const auto& r : rows) nart += r.sense == 'L' ? 0 : 1;

  const int total = n + extra + nart;
  Tableau tab;
  tab.nvars = total;
  tab.t.assign(m, std::vector<double>(total + 1, 0.0));
  tab.basis.assign(m, -1);

  int slack_at = n;
  int art_at = n + extra;
  std::vector<int> artificials;
  for (int r = 0; r < m; ++r) {
    for (int j = 0; j < n; ++j) tab.t[r][j] = rows[r].a[j];
    tab.t[r][total] = rows[r].b;
    if (rows[r].sense == 'L') {
      tab.t[r][slack_at] = 1.0;
      tab.basis[r] = slack_at++;
    } else if (rows[r].sense == 'G') {
      tab.t[r][slack_at] = -1.0;
      ++slack_at;
      tab.t[r][art_at] = 1.0;
      tab.basis[r] = art_at;
      artificials.push_back(art_at++);
    } else {
      tab.t[r][art_at] = 1.0;
      tab.basis[r] = art_at;
      artificials.push_back(art_at++);
    }
  }

  BasicLpResult res;
  if (!artificials.empty()) {
    // Phase 1: minimize the artificial sum.
    tab.obj.assign(total + 1, 0.0);
    for (int a : artificials) tab.obj[a] = 1.0;
    for (int r = 0; r < m; ++r) {
      if (std::find(artificials.begin(), artificials.end(), tab.basis[r]) ==
          artificials.end())
        continue;
      for (int c = 0; c <= total; ++c) tab.obj[c] -= tab.t[r][c];
    }
    if (!tab.run()) fail(ErrorCode::Internal, "phase 1 unbounded");
    if (-tab.obj[total] > 1e-7) {
      res.status = BasicLpResult::Status::Infeasible;
      return res;
    }
    // Pivot remaining artificials out where possible.
    for (int r = 0; r < m; ++r) {
      if (std::find(artificials.begin(), artificials.end(), tab.basis[r]) ==
          artificials.end())
        continue;
      for (int c = 0; c < n + extra; ++c) {
        if (std::abs(tab.t[r][c]) > kEps) {
          tab.do_pivot(r, c);
          break;
        }
      }
    }
  }

  // Phase 2.
  tab.obj.assign(total + 1, 0.0);
  for (int j = 0; j < n; ++j) tab.obj[j] = lp.c[j];
  for (int a : artificials) tab.obj[a] = kInf;  // keep artificials out
  for (int r = 0; r < m; ++r) {
    const double cb = tab.basis[r] < n ? lp.c[tab.basis[r]] : 0.0;
    if (cb == 0.0) continue;
    for (int c = 0; c <= total; ++c) tab.obj[c] -= cb * tab.t[r][c];
  }
  for (int a : artificials)
    if (std::isinf(tab.obj[a])) tab.obj[a] = 1e30;
  if (!tab.run()) {
    res.status = BasicLpResult::Status::Unbounded;
    return res;
  }

  res.status = BasicLpResult::Status::Optimal;
  res.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (tab.basis[r] < n) res.x[tab.basis[r]] = tab.rhs(r);
  res.objective = 0.0;
  for (int j = 0; j < n; ++j) res.objective += lp.c[j] * res.x[j];
  return res;
}

}  // namespace spillresp
