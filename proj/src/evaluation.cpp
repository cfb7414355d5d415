#include "spillresp/evaluation.hpp"

#include <cmath>

#include "spillresp/error.hpp"

namespace spillresp {

namespace {

void recompute_prep_times(ProblemInstance& inst) {
  std::vector<double> setup_times(inst.resources.size());
  for (std::size_t r = 0; r < inst.resources.size(); ++r)
    setup_times[r] = inst.resources[r].setup_time_min;
  inst.derived.prep_time.clear();
  for (const auto& sc : inst.scenarios.scenarios) {
    Matrix pt(inst.num_stations(), inst.num_spills(), 0.0);
    for (std::size_t o = 0; o < inst.num_spills(); ++o) {
      const auto units = setup_units_for_demand(sc.demand[o], inst.resources);
      for (std::size_t i = 0; i < inst.num_stations(); ++i)
        pt.at(i, o) = compute_prep_time(inst.stations[i].base_delay_min, units, setup_times);
    }
    inst.derived.prep_time.push_back(std::move(pt));
  }
}

}  // namespace

ProblemInstance make_single_scenario_instance(const ProblemInstance& inst, std::size_t k) {
  require(k < inst.num_scenarios(), ErrorCode::InvalidArgument, "scenario index out of range");
  ProblemInstance one = inst;
  Scenario sc = inst.scenarios.scenarios[k];
  sc.probability = 1.0;
  one.scenarios.scenarios = {std::move(sc)};
  one.scenarios.provenance = {inst.scenarios.provenance.empty()
                                  ? ScenarioProvenance{true, 0}
                                  : inst.scenarios.provenance[k]};
  one.derived.prep_time = {inst.derived.prep_time[k]};
  // Normalization stats stay pooled over the parent population.
  return one;
}

ProblemInstance make_mean_instance(const ProblemInstance& inst) {
  ProblemInstance mean = inst;
  Scenario sc;
  sc.id = 0;
  sc.probability = 1.0;
  const std::size_t no = inst.num_spills();
  const std::size_t nr = inst.num_resources();
  sc.spill_volume.assign(no, 0.0);
  sc.spill_esi.assign(no, 0.0);
  sc.demand.assign(no, std::vector<double>(nr, 0.0));
  for (const auto& s : inst.scenarios.scenarios) {
    for (std::size_t o = 0; o < no; ++o) {
      sc.spill_volume[o] += s.probability * s.spill_volume[o];
      sc.spill_esi[o] += s.probability * s.spill_esi[o];
      for (std::size_t r = 0; r < nr; ++r) sc.demand[o][r] += s.probability * s.demand[o][r];
    }
  }
  mean.scenarios.scenarios = {std::move(sc)};
  mean.scenarios.provenance = {{true, 0}};
  recompute_prep_times(mean);
  return mean;
}

double probability_weighted_sum(const std::vector<double>& values,
                                const std::vector<double>& probabilities) {
  require(values.size() == probabilities.size(), ErrorCode::DimensionMismatch,
          "values and probabilities differ in length");
  double acc = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) acc += probabilities[k] * values[k];
  return acc;
}

Solution solve_rp(const ProblemInstance& inst, const Weights& weights,
                  const SolverOptions& options) {
  const auto problem = formulate(inst, weights);
  return solve_milp(problem, inst, options).solution;
}

WaitAndSeeResult solve_wait_and_see(const ProblemInstance& inst, const Weights& weights,
                                    const SolverOptions& options) {
  WaitAndSeeResult out;
  std::vector<double> probs;
  for (std::size_t k = 0; k < inst.num_scenarios(); ++k) {
    const auto one = make_single_scenario_instance(inst, k);
    const auto problem = formulate(one, weights);
    out.ws.push_back(solve_milp(problem, one, options).solution.objective);
    probs.push_back(inst.scenarios.scenarios[k].probability);
  }
  out.ews = probability_weighted_sum(out.ws, probs);
  return out;
}

EvpResult solve_expected_value_problem(const ProblemInstance& inst, const Weights& weights,
                                       const SolverOptions& options) {
  EvpResult out{Solution{}, make_mean_instance(inst)};
  const auto problem = formulate(out.mean_instance, weights);
  out.solution = solve_milp(problem, out.mean_instance, options).solution;
  return out;
}

EevResult evaluate_eev(const ProblemInstance& inst, const Solution& evp_solution,
                       const Weights& weights, const SolverOptions& options) {
  require(evp_solution.station_open.size() == inst.num_stations(), ErrorCode::DimensionMismatch,
          "EVP solution does not match the instance");
  EevResult out;
  std::vector<double> probs;
  for (std::size_t k = 0; k < inst.num_scenarios(); ++k) {
    const auto one = make_single_scenario_instance(inst, k);
    auto problem = formulate(one, weights);
    for (auto& col : problem.columns) {
      if (col.key.kind != VarKey::Kind::X) continue;
      const double fixed = evp_solution.station_open[col.key.i];
      col.lb = fixed;
      col.ub = fixed;
    }
    out.per_scenario.push_back(solve_milp(problem, one, options).solution.objective);
    probs.push_back(inst.scenarios.scenarios[k].probability);
  }
  out.eev = probability_weighted_sum(out.per_scenario, probs);
  return out;
}

VoiReport compute_voi(double rp, double ews, double eev, double evp,
                      const std::vector<double>& ws, const std::vector<double>& evals,
                      const std::vector<double>& probabilities) {
  for (double v : {rp, ews, eev, evp})
    require(std::isfinite(v), ErrorCode::InvalidArgument, "non-finite metric");
  const double tol = 1e-6 * std::max(1.0, std::abs(rp));
  if (ews < rp - tol)
    fail(ErrorCode::OrderingViolation,
         "EWS " + fmt_double(ews) + " below RP " + fmt_double(rp));
  if (rp < eev - tol)
    fail(ErrorCode::OrderingViolation,
         "RP " + fmt_double(rp) + " below EEV " + fmt_double(eev));

  VoiReport rep;
  rep.rp = rp;
  rep.ews = ews;
  rep.evp = evp;
  rep.eev = eev;
  rep.vss = rp - eev;
  rep.evpi = ews - rp;

  const auto pct = [](double value, double base) {
    return std::abs(base) < 1e-12 ? 0.0 : 100.0 * value / base;
  };
  rep.relative["RP"] = pct(rp, rp);
  rep.relative["EWS"] = pct(ews, rp);
  rep.relative["EVP"] = pct(evp, rp);
  rep.relative["EEV"] = pct(eev, rp);
  rep.relative["VSS"] = pct(rep.vss, eev);
  rep.relative["EVPI"] = pct(rep.evpi, rp);

  require(ws.size() == probabilities.size() && evals.size() == probabilities.size(),
          ErrorCode::DimensionMismatch, "per-scenario arrays differ in length");
  for (std::size_t k = 0; k < ws.size(); ++k)
    rep.per_scenario.push_back(
        {static_cast<int>(k) + 1, ws[k], evals[k], probabilities[k]});
  return rep;
}

VoiReport evaluate_voi(const ProblemInstance& inst, const Weights& weights,
                       const SolverOptions& options) {
  const auto rp = solve_rp(inst, weights, options);
  const auto wnsee = solve_wait_and_see(inst, weights, options);
  const auto evp = solve_expected_value_problem(inst, weights, options);
  const auto eev = evaluate_eev(inst, evp.solution, weights, options);
  std::vector<double> probs;
  for (const auto& sc : inst.scenarios.scenarios) probs.push_back(sc.probability);
  auto rep = compute_voi(rp.objective, wnsee.ews, eev.eev, evp.solution.objective, wnsee.ws,
                         eev.per_scenario, probs);
  for (std::size_t k = 0; k < rep.per_scenario.size(); ++k)
    rep.per_scenario[k].scenario_id = inst.scenarios.scenarios[k].id;
  return rep;
}

}  // namespace spillresp
