#pragma once

#include <map>
#include <string>
#include <vector>

#include "spillresp/model.hpp"
#include "spillresp/solver.hpp"

namespace spillresp {

struct ScenarioBreakdown {
  int scenario_id = 0;
  double ws_value = 0.0;
  double evp_eval_value = 0.0;
  double probability = 0.0;
};

struct VoiReport {
  double rp = 0.0;
  double ews = 0.0;
  double evp = 0.0;
  double eev = 0.0;
  double vss = 0.0;
  double evpi = 0.0;
  std::map<std::string, double> relative;  // percent of RP; VSS relative to EEV
  std::vector<ScenarioBreakdown> per_scenario;
};

/// Single-scenario copy of the instance with probability 1. Derived matrices
/// and normalization stats carry over from the parent so per-scenario
/// objectives stay on the same scale as the full recourse problem.
ProblemInstance make_single_scenario_instance(const ProblemInstance& instance, std::size_t k);

/// Deterministic mean-value instance: probability-weighted volume, ESI, and
/// demand (kept fractional; deployments are continuous).
ProblemInstance make_mean_instance(const ProblemInstance& instance);

double probability_weighted_sum(const std::vector<double>& values,
                                const std::vector<double>& probabilities);

Solution solve_rp(const ProblemInstance& instance, const Weights& weights,
                  const SolverOptions& options = {});

struct WaitAndSeeResult {
  std::vector<double> ws;  // per-scenario perfect-information optima
  double ews = 0.0;
};

WaitAndSeeResult solve_wait_and_see(const ProblemInstance& instance, const Weights& weights,
                                    const SolverOptions& options = {});

struct EvpResult {
  Solution solution;
  ProblemInstance mean_instance;
};

EvpResult solve_expected_value_problem(const ProblemInstance& instance, const Weights& weights,
                                       const SolverOptions& options = {});

struct EevResult {
  double eev = 0.0;
  std::vector<double> per_scenario;
};

/// Re-solves every scenario with the first stage pinned to the EVP stations;
/// spills the fixed stations cannot serve in time stay uncovered.
EevResult evaluate_eev(const ProblemInstance& instance, const Solution& evp_solution,
                       const Weights& weights, const SolverOptions& options = {});

/// Assembles the report and checks the stochastic-programming ordering
/// (throws OrderingViolation when EWS < RP or RP < EEV beyond tolerance).
VoiReport compute_voi(double rp, double ews, double eev, double evp,
                      const std::vector<double>& ws, const std::vector<double>& evals,
                      const std::vector<double>& probabilities);

/// Full pipeline: RP, wait-and-see, EVP, EEV, report.
VoiReport evaluate_voi(const ProblemInstance& instance, const Weights& weights,
                       const SolverOptions& options = {});

}  // namespace spillresp
