#include "spillresp/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <tuple>

#include "spillresp/error.hpp"
#include "spillresp/milp.hpp"

namespace spillresp {

std::vector<Weights> enumerate_grid(const WeightGrid& grid) {
  std::vector<double> k1s = grid.k1_values;
  if (k1s.empty())
    for (int i = 1; i <= 9; ++i) k1s.push_back(i / 10.0);

  const double step = grid.omega_step;
  require(step > 0.0 && step <= 1.0, ErrorCode::InvalidArgument, "omega step in (0, 1]");
  const double parts_d = 1.0 / step;
  const int parts = static_cast<int>(std::llround(parts_d));
  require(std::abs(parts_d - parts) <= 1e-9, ErrorCode::InvalidArgument,
          "omega step must divide 1 evenly");

  std::vector<Weights> out;
  const int lo = grid.allow_zero_omegas ? 0 : 1;
  for (double k1 : k1s) {
    require(k1 > 0.0 && k1 < 1.0, ErrorCode::InvalidArgument, "k1 must lie strictly in (0, 1)");
    for (int a = lo; a <= parts; ++a) {
      for (int b = lo; b <= parts - a; ++b) {
        const int c = parts - a - b;
        if (c < lo) continue;
        if (grid.allow_zero_omegas) {
          // At least two active criteria; pure single-criterion corners are
          // excluded from the joint analysis.
          const int zeros = (a == 0) + (b == 0) + (c == 0);
          if (zeros >= 2) continue;
        }
        Weights w;
        w.omega1 = a * step;
        w.omega2 = b * step;
        w.omega3 = c * step;
        w.k1 = k1;
        w.k2 = 1.0 - k1;
        out.push_back(w);
      }
    }
  }
  return out;
}

namespace {

SweepRun make_run(const ProblemInstance& inst, const Weights& w, BranchAndBound& solver,
                  const SolverOptions& options) {
  SweepRun run;
  run.weights = w;
  try {
    solver.set_weights(w);
    const auto outcome = solver.solve(options);
    const auto& sol = outcome.solution;
    run.ok = true;
    run.status = sol.status;
    run.objective = sol.objective;
    run.coverage_value = sol.coverage_term;
    run.cost_value = sol.cost_term;
    for (std::size_t i = 0; i < sol.station_open.size(); ++i)
      if (sol.station_open[i]) run.stations_mask |= 1u << i;
    run.coverage_rate = coverage_stats(sol, inst).coverage_rate;
  } catch (const Error& e) {
    run.ok = false;
    run.error = e.what();
  }
  return run;
}

}  // namespace

std::vector<SweepRun> run_sweep(const ProblemInstance& inst, const WeightGrid& grid,
                                const SolverOptions& options, int jobs) {
  const auto configs = enumerate_grid(grid);
  std::vector<SweepRun> runs(configs.size());
  if (configs.empty()) return runs;
  jobs = std::clamp<int>(jobs, 1, static_cast<int>(configs.size()));

  // Contiguous chunks; each worker reuses one solver so consecutive runs warm
  // start from the previous optimal basis (only the objective changes).
  const auto worker = [&](std::size_t begin, std::size_t end) {
    const auto problem = formulate(inst, configs[begin]);
    BranchAndBound solver(problem, inst);
    for (std::size_t idx = begin; idx < end; ++idx)
      runs[idx] = make_run(inst, configs[idx], solver, options);
  };

  if (jobs == 1) {
    worker(0, configs.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (configs.size() + jobs - 1) / jobs;
    for (int t = 0; t < jobs; ++t) {
      const std::size_t begin = static_cast<std::size_t>(t) * chunk;
      const std::size_t end = std::min(configs.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  // Min-max normalization over successful runs; a degenerate range maps to 1.
  double cov_lo = 0.0, cov_hi = 0.0, cost_lo = 0.0, cost_hi = 0.0;
  bool first = true;
  for (const auto& run : runs) {
    if (!run.ok) continue;
    if (first) {
      cov_lo = cov_hi = run.coverage_value;
      cost_lo = cost_hi = run.cost_value;
      first = false;
    } else {
      cov_lo = std::min(cov_lo, run.coverage_value);
      cov_hi = std::max(cov_hi, run.coverage_value);
      cost_lo = std::min(cost_lo, run.cost_value);
      cost_hi = std::max(cost_hi, run.cost_value);
    }
  }
  for (auto& run : runs) {
    if (!run.ok) continue;
    run.normalized_coverage =
        cov_hi > cov_lo ? (run.coverage_value - cov_lo) / (cov_hi - cov_lo) : 1.0;
    run.normalized_cost =
        cost_hi > cost_lo ? (run.cost_value - cost_lo) / (cost_hi - cost_lo) : 1.0;
  }
  return runs;
}

const SweepRun& best_configuration(const std::vector<SweepRun>& runs) {
  const SweepRun* best = nullptr;
  for (const auto& run : runs) {
    if (!run.ok) continue;
    if (!best) {
      best = &run;
      continue;
    }
    const auto key = [](const SweepRun& r) {
      return std::make_tuple(-r.objective, r.cost_value, r.weights.k1, r.weights.omega1,
                             r.weights.omega2, r.weights.omega3);
    };
    if (key(run) < key(*best)) best = &run;
  }
  require(best != nullptr, ErrorCode::AllRunsFailed, "no successful sweep run");
  return *best;
}

std::vector<ParetoPoint> pareto_frontier(const std::vector<SweepRun>& runs) {
  std::vector<std::size_t> ok;
  for (std::size_t i = 0; i < runs.size(); ++i)
    if (runs[i].ok) ok.push_back(i);
  require(!ok.empty(), ErrorCode::AllRunsFailed, "no successful sweep run");

  // Sort by cost ascending, coverage descending; sweep keeps strict coverage
  // improvements. Duplicate (cost, coverage) points collapse onto the first
  // run in grid order.
  std::stable_sort(ok.begin(), ok.end(), [&](std::size_t a, std::size_t b) {
    if (runs[a].cost_value != runs[b].cost_value) return runs[a].cost_value < runs[b].cost_value;
    if (runs[a].coverage_value != runs[b].coverage_value)
      return runs[a].coverage_value > runs[b].coverage_value;
    return a < b;
  });

  std::vector<ParetoPoint> frontier;
  double best_cov = -std::numeric_limits<double>::infinity();
  double last_cost = 0.0, last_cov = 0.0;
  for (std::size_t idx : ok) {
    const auto& run = runs[idx];
    if (!frontier.empty() && run.cost_value == last_cost && run.coverage_value == last_cov)
      continue;  // exact duplicate of a frontier point
    if (run.coverage_value > best_cov) {
      frontier.push_back({idx, false});
      best_cov = run.coverage_value;
      last_cost = run.cost_value;
      last_cov = run.coverage_value;
    }
  }
  return frontier;
}

}  // namespace spillresp
