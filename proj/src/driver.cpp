#include "spillresp/driver.hpp"

#include <algorithm>
#include <cmath>

#include "spillresp/error.hpp"

namespace spillresp {

Residuals evaluate_residuals(const ProblemInstance& inst, const Solution& sol) {
  Residuals res;
  const std::size_t ni = inst.num_stations();
  const std::size_t no = inst.num_spills();
  const std::size_t nk = inst.num_scenarios();
  const std::size_t nr = inst.num_resources();

  for (std::size_t k = 0; k < nk; ++k) {
    const auto& sc = inst.scenarios.scenarios[k];
    for (std::size_t r = 0; r < nr; ++r) {
      for (std::size_t i = 0; i < ni; ++i) {
        double deployed = 0.0, in_flow = 0.0, out_flow = 0.0;
        for (std::size_t o = 0; o < no; ++o) deployed += sol.deployed_at(k, r, i, o, inst);
        for (std::size_t j = 0; j < ni; ++j) {
          out_flow += sol.transferred_at(k, r, i, j, inst);
          in_flow += sol.transferred_at(k, r, j, i, inst);
        }
        const double overdraft =
            deployed + out_flow - in_flow - inst.stations[i].inventory[r];
        res.inventory_overdraft = std::max(res.inventory_overdraft, overdraft);
      }
    }
    for (std::size_t o = 0; o < no; ++o) {
      if (sol.assigned[k][o] < 0) continue;
      for (std::size_t r = 0; r < nr; ++r) {
        double got = 0.0;
        for (std::size_t i = 0; i < ni; ++i) got += sol.deployed_at(k, r, i, o, inst);
        res.unmet_demand = std::max(res.unmet_demand, sc.demand[o][r] - got);
      }
      res.time_violation = std::max(
          res.time_violation, sol.response_time_at(k, o, inst) - inst.config.tau_max_hours);
    }
  }
  return res;
}

RepairOutcome repair_loop(const ProblemInstance& instance, const Weights& weights,
                          const SolverOptions& options, const ResidualEvaluator& evaluator) {
  const ResidualEvaluator eval = evaluator ? evaluator : evaluate_residuals;
  ProblemInstance work = instance;
  const int max_n = static_cast<int>(instance.num_stations());

  RepairOutcome out;
  while (true) {
    const auto problem = formulate(work, weights);
    auto result = solve_milp(problem, work, options);
    ++out.iterations;
    out.final_n = work.config.n_max_stations;

    const Residuals res = eval(work, result.solution);
    if (res.clean()) {
      out.solution = std::move(result.solution);
      out.stats = result.stats;
      return out;
    }
    out.log.push_back("iteration " + std::to_string(out.iterations) +
                      ": residuals (inventory " + fmt_double(res.inventory_overdraft) +
                      ", demand " + fmt_double(res.unmet_demand) + ", time " +
                      fmt_double(res.time_violation) + ")");
    if (work.config.n_max_stations >= max_n) {
      out.exhausted = true;
      out.log.push_back("station budget already covers every candidate; stopping");
      out.solution = std::move(result.solution);
      out.stats = result.stats;
      return out;
    }
    ++work.config.n_max_stations;
    out.log.push_back("raising station budget to " +
                      std::to_string(work.config.n_max_stations));
  }
}

}  // namespace spillresp
