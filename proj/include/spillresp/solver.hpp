#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>

#include "spillresp/milp.hpp"
#include "spillresp/simplex.hpp"

namespace spillresp {

enum class BranchRule { MostFractional, PseudoCost };

struct SolverOptions {
  double rel_gap_tol = 1e-6;
  double int_tol = 1e-6;
  double feas_tol = 1e-7;
  long node_limit = 1'000'000;
  double time_limit_s = 0.0;  // 0 disables the limit, keeping runs deterministic
  BranchRule branch_rule = BranchRule::MostFractional;
  std::uint64_t seed = 0;  // recorded for reproducibility; tie-breaks are index-based
  std::ostream* node_trace = nullptr;
};

struct SolveStats {
  long nodes = 0;
  long lp_iterations = 0;
  double best_bound = 0.0;
  double best_incumbent = 0.0;
  double wall_time_s = 0.0;
};

struct MilpOutcome {
  Solution solution;
  SolveStats stats;
};

/// Best-first branch-and-bound with depth-first plunging on a single shared
/// simplex tableau; node LPs re-optimize dually from wherever the previous
/// node left the basis. The object is reusable across objective swaps, which
/// the weight sweep exploits.
class BranchAndBound {
 public:
  BranchAndBound(const MilpProblem& problem, const ProblemInstance& instance,
                 const LpOptions& lp_options = {});

  /// Re-prices the objective for new weights (constraints are untouched).
  void set_weights(const Weights& weights);

  MilpOutcome solve(const SolverOptions& options = {});

  const MilpProblem& problem() const { return problem_; }

 private:
  MilpProblem problem_;
  const ProblemInstance& instance_;
  std::unique_ptr<SimplexTableau> tableau_;
  bool solved_once_ = false;
};

/// One-shot convenience wrapper around BranchAndBound.
MilpOutcome solve_milp(const MilpProblem& problem, const ProblemInstance& instance,
                       const SolverOptions& options = {});

}  // namespace spillresp
