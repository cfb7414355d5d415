#include "spillresp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <set>
#include <vector>

#include "spillresp/error.hpp"

namespace spillresp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Node {
  long id = 0;
  int parent = -1;
  double bound = kInf;      // parent LP objective, maximize sense
  int branch_col = -1;      // bound change applied at this node
  double branch_lb = 0.0;
  double branch_ub = 0.0;
  double parent_frac = 0.0; // fractional part at the parent, for pseudo-costs
  bool branch_up = false;
};

struct PseudoCosts {
  std::vector<double> up_sum, down_sum;
  std::vector<long> up_cnt, down_cnt;

  void init(std::size_t n, const MilpProblem& p) {
    up_sum.assign(n, 0.0);
    down_sum.assign(n, 0.0);
    up_cnt.assign(n, 0);
    down_cnt.assign(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      up_sum[c] = down_sum[c] = std::abs(p.columns[c].obj) + 1.0;
    }
  }
  double up(int c) const { return up_cnt[c] ? up_sum[c] / up_cnt[c] : up_sum[c]; }
  double down(int c) const { return down_cnt[c] ? down_sum[c] / down_cnt[c] : down_sum[c]; }
  void record(int c, bool up_dir, double frac, double degradation) {
    const double denom = up_dir ? (1.0 - frac) : frac;
    if (denom < 1e-9) return;
    const double per_unit = std::max(0.0, degradation) / denom;
    if (up_dir) {
      up_sum[c] = up_cnt[c] ? up_sum[c] + per_unit : per_unit;
      ++up_cnt[c];
    } else {
      down_sum[c] = down_cnt[c] ? down_sum[c] + per_unit : per_unit;
      ++down_cnt[c];
    }
  }
};

}  // namespace

BranchAndBound::BranchAndBound(const MilpProblem& problem, const ProblemInstance& instance,
                               const LpOptions& lp_options)
    : problem_(problem), instance_(instance) {
  problem_.validate();
  tableau_ = std::make_unique<SimplexTableau>(problem_, lp_options);
}

void BranchAndBound::set_weights(const Weights& weights) {
  update_objective(problem_, instance_, weights);
  std::vector<double> obj(problem_.columns.size());
  for (std::size_t c = 0; c < obj.size(); ++c) obj[c] = problem_.columns[c].obj;
  tableau_->set_objective(obj);
}

MilpOutcome BranchAndBound::solve(const SolverOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  auto& tab = *tableau_;
  const long iter0 = tab.iterations();

  std::vector<int> int_cols;
  for (std::size_t c = 0; c < problem_.columns.size(); ++c)
    if (problem_.columns[c].is_integer) int_cols.push_back(static_cast<int>(c));

  tab.reset_bounds();
  LpStatus root_status = solved_once_ ? tab.reoptimize_primal() : tab.solve_from_scratch();
  if (root_status == LpStatus::IterLimit) root_status = tab.solve_from_scratch();
  solved_once_ = true;
  if (root_status == LpStatus::Infeasible)
    fail(ErrorCode::Infeasible, "root LP relaxation is infeasible");
  require(root_status == LpStatus::Optimal, ErrorCode::Internal, "root LP did not converge");

  std::vector<Node> nodes;
  nodes.push_back(Node{0, -1, tab.objective_value(), -1, 0.0, 0.0, 0.0, false});

  // Open set ordered by (bound desc, id asc); the node being plunged into is
  // held outside the set.
  const auto cmp = [](const std::pair<double, long>& a, const std::pair<double, long>& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  };
  std::set<std::pair<double, long>, decltype(cmp)> open(cmp);

  PseudoCosts pc;
  if (options.branch_rule == BranchRule::PseudoCost) pc.init(problem_.columns.size(), problem_);

  double incumbent = -kInf;
  std::vector<double> incumbent_values;
  long processed = 0;
  bool limit_hit = false;
  long next = 0;  // node index about to be processed, -1 when none

  const auto gap_threshold = [&](double inc) {
    return inc + std::max(1e-9, options.rel_gap_tol * std::max(1.0, std::abs(inc)));
  };
  const auto out_of_budget = [&] {
    if (processed >= options.node_limit) return true;
    if (options.time_limit_s > 0.0) {
      const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
      if (dt.count() >= options.time_limit_s) return true;
    }
    return false;
  };

  const auto apply_bounds = [&](int idx) {
    tab.reset_bounds();
    for (int a = idx; a >= 0; a = nodes[a].parent) {
      if (nodes[a].branch_col >= 0)
        tab.set_bounds(nodes[a].branch_col, nodes[a].branch_lb, nodes[a].branch_ub);
    }
  };

  while (next >= 0 || !open.empty()) {
    if (out_of_budget()) {
      limit_hit = true;
      break;
    }
    if (next < 0) {
      auto it = open.begin();
      next = static_cast<long>(it->second);
      open.erase(it);
    }
    const long cur = next;
    next = -1;
    if (incumbent > -kInf && nodes[cur].bound <= gap_threshold(incumbent)) continue;

    apply_bounds(static_cast<int>(cur));
    LpStatus st = cur == 0 ? LpStatus::Optimal : tab.reoptimize_dual();
    if (st == LpStatus::IterLimit) st = tab.solve_from_scratch();
    ++processed;

    double obj = -kInf;
    if (st == LpStatus::Optimal) {
      obj = tab.objective_value();
      // Child bounds can exceed the parent's only through roundoff.
      obj = std::min(obj, nodes[cur].bound);
    }

    if (options.branch_rule == BranchRule::PseudoCost && nodes[cur].branch_col >= 0) {
      const double degr = st == LpStatus::Optimal ? nodes[cur].bound - obj : nodes[cur].bound;
      pc.record(nodes[cur].branch_col, nodes[cur].branch_up, nodes[cur].parent_frac, degr);
    }

    if (options.node_trace) {
      (*options.node_trace) << "node " << nodes[cur].id << " bound "
                            << (st == LpStatus::Optimal ? fmt_double(obj) : "infeasible")
                            << " incumbent "
                            << (incumbent > -kInf ? fmt_double(incumbent) : "-") << "\n";
    }

    if (st != LpStatus::Optimal) continue;                                 // pruned: infeasible
    if (incumbent > -kInf && obj <= gap_threshold(incumbent)) continue;    // pruned: bound

    // Integrality check.
    int branch_col = -1;
    double branch_val = 0.0;
    if (options.branch_rule == BranchRule::MostFractional) {
      double best_score = options.int_tol;
      for (int c : int_cols) {
        const double v = tab.column_value(c);
        const double f = v - std::floor(v);
        const double score = std::min(f, 1.0 - f);
        if (score > best_score + 1e-12) {
          best_score = score;
          branch_col = c;
          branch_val = v;
        }
      }
    } else {
      double best_score = -1.0;
      for (int c : int_cols) {
        const double v = tab.column_value(c);
        const double f = v - std::floor(v);
        if (std::min(f, 1.0 - f) <= options.int_tol) continue;
        const double score =
            std::max(pc.down(c) * f, 1e-6) * std::max(pc.up(c) * (1.0 - f), 1e-6);
        if (score > best_score + 1e-12) {
          best_score = score;
          branch_col = c;
          branch_val = v;
        }
      }
    }

    if (branch_col < 0) {
      // Integral: candidate incumbent.
      if (obj > incumbent + 1e-12) {
        incumbent = obj;
        incumbent_values = tab.structural_values();
      }
      continue;
    }

    const double f = branch_val - std::floor(branch_val);
    const auto& col = problem_.columns[branch_col];
    Node down;
    down.parent = static_cast<int>(cur);
    down.bound = obj;
    down.branch_col = branch_col;
    down.branch_lb = col.lb;
    down.branch_ub = std::floor(branch_val);
    down.parent_frac = f;
    down.branch_up = false;
    Node up = down;
    up.branch_lb = std::ceil(branch_val);
    up.branch_ub = col.ub;
    up.branch_up = true;

    down.id = static_cast<long>(nodes.size());
    nodes.push_back(down);
    up.id = static_cast<long>(nodes.size());
    nodes.push_back(up);

    // Plunge toward the rounding direction; queue the sibling.
    const bool go_up = f > 0.5;
    next = go_up ? up.id : down.id;
    const long sibling = go_up ? down.id : up.id;
    open.insert({nodes[sibling].bound, sibling});
  }

  double best_bound = incumbent;
  if (next >= 0) best_bound = std::max(best_bound, nodes[next].bound);
  for (const auto& [b, id] : open) {
    (void)id;
    best_bound = std::max(best_bound, b);
  }

  require(incumbent > -kInf, ErrorCode::Internal,
          "no incumbent found; the solve hit its limits before any feasible point");

  MilpOutcome out;
  out.stats.nodes = processed;
  out.stats.lp_iterations = tab.iterations() - iter0;
  out.stats.best_bound = best_bound;
  out.stats.best_incumbent = incumbent;
  out.stats.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const SolveStatus status = limit_hit ? SolveStatus::GapLimit : SolveStatus::Optimal;
  out.solution = decode(problem_, incumbent_values, instance_, status);
  verify_solution(out.solution, instance_, problem_.weights);
  return out;
}

MilpOutcome solve_milp(const MilpProblem& problem, const ProblemInstance& instance,
                       const SolverOptions& options) {
  LpOptions lp;
  lp.feas_tol = options.feas_tol;
  BranchAndBound bb(problem, instance, lp);
  return bb.solve(options);
}

}  // namespace spillresp
