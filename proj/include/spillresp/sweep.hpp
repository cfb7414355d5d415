#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spillresp/model.hpp"
#include "spillresp/solver.hpp"

namespace spillresp {

struct WeightGrid {
  std::vector<double> k1_values;  // defaults to 0.1..0.9 step 0.1 when empty
  double omega_step = 0.1;
  bool allow_zero_omegas = false;  // zeros permitted with at least two positive parts
};

/// All (k1, omega) combinations in deterministic lexicographic order
/// (k1 ascending, then omega1, omega2). Defaults produce 9 x 36 = 324 runs.
std::vector<Weights> enumerate_grid(const WeightGrid& grid);

struct SweepRun {
  Weights weights;
  bool ok = false;
  std::string error;
  SolveStatus status = SolveStatus::Optimal;
  double objective = 0.0;
  double coverage_value = 0.0;  // omega-weighted coverage term
  double cost_value = 0.0;      // deployment + transfer + opening block
  double normalized_coverage = 0.0;
  double normalized_cost = 0.0;
  std::uint32_t stations_mask = 0;
  double coverage_rate = 0.0;
};

/// One solve per configuration; failures are recorded per run and excluded
/// from the min-max normalization pass. jobs > 1 splits the grid into
/// contiguous chunks, each reusing its own warm-started solver.
std::vector<SweepRun> run_sweep(const ProblemInstance& instance, const WeightGrid& grid,
                                const SolverOptions& options = {}, int jobs = 1);

/// Highest objective; ties prefer lower cost, then lexicographic weights.
const SweepRun& best_configuration(const std::vector<SweepRun>& runs);

struct ParetoPoint {
  std::size_t run_index = 0;
  bool dominated = false;
};

/// Maximal runs under (coverage up, cost down), sorted by ascending cost.
std::vector<ParetoPoint> pareto_frontier(const std::vector<SweepRun>& runs);

}  // namespace spillresp
