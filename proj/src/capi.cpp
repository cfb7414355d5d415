#include "spillresp.h"

#include <cstring>
#include <exception>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "spillresp/driver.hpp"
#include "spillresp/enumerate.hpp"
#include "spillresp/error.hpp"
#include "spillresp/evaluation.hpp"
#include "spillresp/io.hpp"
#include "spillresp/reports.hpp"
#include "spillresp/scenario.hpp"
#include "spillresp/version.hpp"

#include <fstream>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

thread_local std::string g_last_error;

int status_for(const spillresp::Error& e) {
  using spillresp::ErrorCode;
  switch (e.code()) {
    case ErrorCode::IoError:
    case ErrorCode::ParseError:
      return SR_ERR_IO;
    case ErrorCode::Infeasible:
    case ErrorCode::Unbounded:
    case ErrorCode::TooLarge:
    case ErrorCode::IntegralityError:
    case ErrorCode::ObjectiveMismatch:
    case ErrorCode::OrderingViolation:
    case ErrorCode::AllRunsFailed:
    case ErrorCode::InvariantViolation:
      return SR_ERR_SOLVER;
    case ErrorCode::InvalidArgument:
      return SR_ERR_ARGUMENT;
    case ErrorCode::Internal:
      return SR_ERR_INTERNAL;
    default:
      return SR_ERR_VALIDATION;
  }
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const spillresp::Error& e) {
    g_last_error = e.what();
    return status_for(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SR_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SR_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

spillresp::Weights weights_from(const sr_instance* inst, const double* weights4);

}  // namespace

struct sr_instance {
  spillresp::ProblemInstance instance;
  spillresp::ParsedConfig config;
  std::string bundle_dir;
};

struct sr_solution {
  spillresp::Solution solution;
  spillresp::SolveStats stats;
  const sr_instance* owner;  // outlives the solution by API contract
};

struct sr_voi {
  spillresp::VoiReport report;
};

struct sr_sweep {
  std::vector<spillresp::SweepRun> runs;
};

namespace {

spillresp::Weights weights_from(const sr_instance* inst, const double* weights4) {
  if (!weights4) return inst->instance.weights;
  spillresp::Weights w;
  w.k1 = weights4[0];
  w.k2 = 1.0 - w.k1;
  w.omega1 = weights4[1];
  w.omega2 = weights4[2];
  w.omega3 = weights4[3];
  spillresp::validate_weights(w);
  return w;
}

}  // namespace

extern "C" {

const char* sr_version(void) { return spillresp::kVersion; }

const char* sr_last_error(void) { return g_last_error.c_str(); }

void sr_string_free(char* s) { delete[] s; }

int sr_instance_load(const char* bundle_dir, sr_instance** out) {
  return guarded([&] {
    spillresp::require(bundle_dir && out, spillresp::ErrorCode::InvalidArgument,
                       "null argument");
    auto handle = std::make_unique<sr_instance>();
    const auto bundle = spillresp::InputBundle::locate(bundle_dir);
    handle->config = spillresp::parse_config(bundle.config);
    handle->instance = spillresp::parse_inputs(bundle);
    handle->bundle_dir = bundle_dir;
    *out = handle.release();
    return SR_OK;
  });
}

void sr_instance_free(sr_instance* inst) { delete inst; }

int sr_instance_counts(const sr_instance* inst, int* stations, int* spills, int* resources,
                       int* scenarios) {
  return guarded([&] {
    spillresp::require(inst != nullptr, spillresp::ErrorCode::InvalidArgument, "null instance");
    if (stations) *stations = static_cast<int>(inst->instance.num_stations());
    if (spills) *spills = static_cast<int>(inst->instance.num_spills());
    if (resources) *resources = static_cast<int>(inst->instance.num_resources());
    if (scenarios) *scenarios = static_cast<int>(inst->instance.num_scenarios());
    return SR_OK;
  });
}

int sr_instance_validate(const sr_instance* inst, char** diagnostics_json) {
  return guarded([&] {
    spillresp::require(inst != nullptr, spillresp::ErrorCode::InvalidArgument, "null instance");
    const auto diags = spillresp::data_check(inst->instance);
    json arr = json::array();
    bool any_error = false;
    for (const auto& d : diags) {
      const bool err = d.severity == spillresp::Diagnostic::Severity::Error;
      any_error = any_error || err;
      arr.push_back({{"severity", err ? "error" : "warning"}, {"message", d.message}});
    }
    if (diagnostics_json) *diagnostics_json = dup_string(arr.dump(2));
    if (any_error) {
      g_last_error = "DataCheck reported errors";
      return SR_ERR_VALIDATION;
    }
    return SR_OK;
  });
}

int sr_generate_scenarios(const char* bundle_dir, uint64_t seed, int n_stochastic,
                          const char* out_path, char** report_json) {
  return guarded([&] {
    spillresp::require(bundle_dir && out_path, spillresp::ErrorCode::InvalidArgument,
                       "null argument");
    const auto bundle = spillresp::InputBundle::locate(bundle_dir);
    auto cfg = spillresp::parse_config(bundle.config);

    // The bundle parses without scenarios so gen-scenarios can bootstrap them.
    spillresp::InputBundle no_scen = bundle;
    no_scen.scenarios.clear();
    const auto inst = spillresp::parse_inputs(no_scen);

    auto sampling = cfg.sampling;
    sampling.rng_seed = seed;
    if (n_stochastic > 0) sampling.n_stochastic = n_stochastic;
    std::vector<double> probs = cfg.scenario_probabilities;
    if (static_cast<int>(probs.size()) != 1 + sampling.n_stochastic) {
      // No usable probability vector in the config: split the stochastic mass
      // evenly and keep half on the deterministic scenario.
      probs.assign(1 + sampling.n_stochastic, 0.5 / sampling.n_stochastic);
      probs[0] = 0.5;
    }

    std::vector<double> volumes;
    for (const auto& sp : inst.spills) volumes.push_back(sp.base_volume);
    const auto fitted = spillresp::fit_exponential(volumes);
    const auto ks = spillresp::ks_test(volumes, fitted);
    const auto set = spillresp::generate_scenarios(inst.spills, fitted, sampling, probs,
                                                   inst.config, inst.resources);
    const auto validation = spillresp::validate_scenarios(set, inst.spills, inst.config,
                                                          inst.resources,
                                                          sampling.validation_tol);
    spillresp::write_scenarios_json(set, inst.spills, inst.resources, out_path);

    if (report_json) {
      json rep;
      rep["fit"] = {{"distribution", "exponential"},
                    {"rate", fitted.rate},
                    {"loc", fitted.loc},
                    {"sample_size", fitted.sample_size}};
      rep["ks"] = {{"statistic", ks.statistic}, {"p_value", ks.p_value}, {"n", ks.n}};
      rep["scenarios"] = static_cast<int>(set.scenarios.size());
      rep["scenario_instances"] =
          static_cast<int>(set.scenarios.size() * inst.spills.size());
      rep["validation"] = json::array();
      for (const auto& e : validation.entries)
        rep["validation"].push_back({{"parameter", e.parameter},
                                     {"historical_mean", e.historical_mean},
                                     {"stochastic_mean", e.stochastic_mean},
                                     {"mean_rel_dev", e.mean_rel_dev},
                                     {"historical_std", e.historical_std},
                                     {"stochastic_std", e.stochastic_std},
                                     {"std_rel_dev", e.std_rel_dev}});
      rep["validation_pass"] = validation.pass;
      *report_json = dup_string(rep.dump(2));
    }
    return SR_OK;
  });
}

int sr_solve(const sr_instance* inst, const double* weights4, sr_solution** out) {
  return guarded([&] {
    spillresp::require(inst && out, spillresp::ErrorCode::InvalidArgument, "null argument");
    const auto w = weights_from(inst, weights4);
    auto outcome = spillresp::repair_loop(inst->instance, w, inst->config.solver);
    auto handle = std::make_unique<sr_solution>();
    handle->solution = std::move(outcome.solution);
    handle->stats = outcome.stats;
    handle->owner = inst;
    *out = handle.release();
    return SR_OK;
  });
}

void sr_solution_free(sr_solution* sol) { delete sol; }

double sr_solution_objective(const sr_solution* sol) {
  return sol ? sol->solution.objective : 0.0;
}

int sr_solution_station_open(const sr_solution* sol, int station_index) {
  if (!sol || station_index < 0 ||
      station_index >= static_cast<int>(sol->solution.station_open.size()))
    return 0;
  return sol->solution.station_open[station_index];
}

int sr_solution_json(const sr_solution* sol, char** out_json) {
  return guarded([&] {
    spillresp::require(sol && out_json, spillresp::ErrorCode::InvalidArgument, "null argument");
    *out_json = dup_string(sol->solution.to_json(sol->owner->instance));
    return SR_OK;
  });
}

int sr_solution_emit_reports(const sr_instance* inst, const sr_solution* sol,
                             const char* outdir) {
  return guarded([&] {
    spillresp::require(inst && sol && outdir, spillresp::ErrorCode::InvalidArgument,
                       "null argument");
    spillresp::emit_solution_reports(inst->instance, sol->solution, sol->stats, outdir);
    return SR_OK;
  });
}

int sr_evaluate(const sr_instance* inst, const double* weights4, sr_voi** out) {
  return guarded([&] {
    spillresp::require(inst && out, spillresp::ErrorCode::InvalidArgument, "null argument");
    const auto w = weights_from(inst, weights4);
    auto handle = std::make_unique<sr_voi>();
    handle->report = spillresp::evaluate_voi(inst->instance, w, inst->config.solver);
    *out = handle.release();
    return SR_OK;
  });
}

void sr_voi_free(sr_voi* voi) { delete voi; }

int sr_voi_json(const sr_voi* voi, char** out_json) {
  return guarded([&] {
    spillresp::require(voi && out_json, spillresp::ErrorCode::InvalidArgument, "null argument");
    const auto& r = voi->report;
    json j;
    j["rp"] = r.rp;
    j["ews"] = r.ews;
    j["evp"] = r.evp;
    j["eev"] = r.eev;
    j["vss"] = r.vss;
    j["evpi"] = r.evpi;
    j["relative_percent"] = r.relative;
    *out_json = dup_string(j.dump(2));
    return SR_OK;
  });
}

int sr_voi_emit_reports(const sr_voi* voi, const char* outdir) {
  return guarded([&] {
    spillresp::require(voi && outdir, spillresp::ErrorCode::InvalidArgument, "null argument");
    spillresp::emit_voi_reports(voi->report, outdir);
    return SR_OK;
  });
}

int sr_sweep_run(const sr_instance* inst, double k1_step, double omega_step, int jobs,
                 sr_sweep** out) {
  return guarded([&] {
    spillresp::require(inst && out, spillresp::ErrorCode::InvalidArgument, "null argument");
    spillresp::WeightGrid grid;
    if (k1_step > 0.0) {
      grid.k1_values.clear();
      for (double k1 = k1_step; k1 < 1.0 - k1_step / 2.0; k1 += k1_step)
        grid.k1_values.push_back(k1);
    }
    if (omega_step > 0.0) grid.omega_step = omega_step;
    auto handle = std::make_unique<sr_sweep>();
    handle->runs =
        spillresp::run_sweep(inst->instance, grid, inst->config.solver, std::max(1, jobs));
    *out = handle.release();
    return SR_OK;
  });
}

void sr_sweep_free(sr_sweep* sweep) { delete sweep; }

int sr_sweep_size(const sr_sweep* sweep) {
  return sweep ? static_cast<int>(sweep->runs.size()) : 0;
}

int sr_sweep_emit_reports(const sr_sweep* sweep, const char* outdir) {
  return guarded([&] {
    spillresp::require(sweep && outdir, spillresp::ErrorCode::InvalidArgument, "null argument");
    spillresp::emit_sweep_reports(sweep->runs, outdir);
    return SR_OK;
  });
}

int sr_pareto_from_csv(const char* sweep_csv, const char* outdir) {
  return guarded([&] {
    spillresp::require(sweep_csv && outdir, spillresp::ErrorCode::InvalidArgument,
                       "null argument");
    const auto runs = spillresp::parse_sweep_csv(sweep_csv);
    const auto frontier = spillresp::pareto_frontier(runs);
    spillresp::emit_pareto_reports(runs, frontier, outdir);
    return SR_OK;
  });
}

int sr_export_mps(const sr_instance* inst, const double* weights4, const char* path) {
  return guarded([&] {
    spillresp::require(inst && path, spillresp::ErrorCode::InvalidArgument, "null argument");
    const auto w = weights_from(inst, weights4);
    const auto problem = spillresp::formulate(inst->instance, w);
    std::ofstream f(path);
    spillresp::require(f.good(), spillresp::ErrorCode::IoError,
                       std::string("cannot write ") + path);
    spillresp::write_mps(problem, f, "SPILLRESP");
    return SR_OK;
  });
}

int sr_emit_manifest(const char* command, const char* bundle_dir, uint64_t seed,
                     const char* outdir) {
  return guarded([&] {
    spillresp::require(command && bundle_dir && outdir, spillresp::ErrorCode::InvalidArgument,
                       "null argument");
    const auto bundle = spillresp::InputBundle::locate(bundle_dir);
    spillresp::write_manifest(spillresp::make_manifest(command, bundle, seed), outdir);
    return SR_OK;
  });
}

}  // extern "C"
