#pragma once

#include <functional>
#include <string>
#include <vector>

#include "spillresp/milp.hpp"
#include "spillresp/model.hpp"
#include "spillresp/solver.hpp"

namespace spillresp {

struct Residuals {
  double inventory_overdraft = 0.0;  // max over (i, k, r)
  double unmet_demand = 0.0;         // max over covered (o, k, r)
  double time_violation = 0.0;       // max over covered (o, k)

  bool clean(double tol = 1e-6) const {
    return inventory_overdraft <= tol && unmet_demand <= tol && time_violation <= tol;
  }
};

using ResidualEvaluator = std::function<Residuals(const ProblemInstance&, const Solution&)>;

/// Residuals recomputed straight off the decoded decisions.
Residuals evaluate_residuals(const ProblemInstance& instance, const Solution& solution);

struct RepairOutcome {
  Solution solution;
  SolveStats stats;
  int iterations = 0;       // solve calls performed
  int final_n = 0;          // station budget after adjustments
  bool exhausted = false;   // stopped because n reached the station count
  std::vector<std::string> log;
};

/// The solve-evaluate-repair loop: solve, evaluate residuals, and when the
/// evaluator reports violations, raise the station budget by one and re-solve,
/// stopping once clean or the budget covers every candidate. The formulation
/// keeps every solve feasible by construction, so with the default evaluator
/// the loop terminates after one iteration; tests inject faulty evaluators to
/// exercise the adjustment path.
RepairOutcome repair_loop(const ProblemInstance& instance, const Weights& weights,
                          const SolverOptions& options = {},
                          const ResidualEvaluator& evaluator = {});

}  // namespace spillresp
