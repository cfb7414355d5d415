// Command-line front end. Talks to the core exclusively through the C API in
// spillresp.h, which is also what external callers link against.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spillresp.h"

namespace {

int report_failure(int status) {
  std::fprintf(stderr, "error: %s\n", sr_last_error());
  return status;
}

bool parse_weights(const std::string& spec, double out[4]) {
  if (spec.empty()) return false;
  double k1, w1, w2, w3;
  if (std::sscanf(spec.c_str(), "%lf,%lf,%lf,%lf", &k1, &w1, &w2, &w3) != 4) {
    std::fprintf(stderr, "error: --weights expects k1,w1,w2,w3\n");
    std::exit(SR_ERR_ARGUMENT);
  }
  out[0] = k1;
  out[1] = w1;
  out[2] = w2;
  out[3] = w3;
  return true;
}

struct InstanceHandle {
  sr_instance* ptr = nullptr;
  ~InstanceHandle() { sr_instance_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage stochastic spill response siting and allocation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(sr_version()));

  std::string bundle, outdir = "out", weights_spec, out_path, sweep_csv, trace_path;
  std::uint64_t seed = 42;
  int n_stochastic = 0;
  int jobs = 1;
  double k1_step = 0.0, omega_step = 0.0;

  auto* validate = app.add_subcommand("validate", "Parse a bundle and run DataCheck");
  validate->add_option("bundle", bundle, "input bundle directory")->required();

  auto* gen = app.add_subcommand("gen-scenarios", "Fit, sample, and write scenarios.json");
  gen->add_option("bundle", bundle, "input bundle directory")->required();
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--n", n_stochastic, "stochastic scenario count");
  gen->add_option("-o,--out", out_path, "output path (default <bundle>/scenarios.json)");

  auto* solve = app.add_subcommand("solve", "Solve the stochastic siting model");
  solve->add_option("bundle", bundle, "input bundle directory")->required();
  solve->add_option("--weights", weights_spec, "k1,w1,w2,w3 override");
  solve->add_option("-o,--outdir", outdir, "report directory");

  auto* evaluate = app.add_subcommand("evaluate", "Value-of-information metrics (VSS, EVPI)");
  evaluate->add_option("bundle", bundle, "input bundle directory")->required();
  evaluate->add_option("--weights", weights_spec, "k1,w1,w2,w3 override");
  evaluate->add_option("-o,--outdir", outdir, "report directory");

  auto* sweep = app.add_subcommand("sweep", "Weight-sensitivity sweep");
  sweep->add_option("bundle", bundle, "input bundle directory")->required();
  sweep->add_option("--k1-step", k1_step, "k1 grid step (default 0.1)");
  sweep->add_option("--omega-step", omega_step, "omega grid step (default 0.1)");
  sweep->add_option("--jobs", jobs, "parallel workers");
  sweep->add_option("-o,--outdir", outdir, "report directory");

  auto* pareto = app.add_subcommand("pareto", "Pareto frontier from a sweep.csv");
  pareto->add_option("sweep_csv", sweep_csv, "sweep.csv produced by the sweep command")
      ->required();
  pareto->add_option("-o,--outdir", outdir, "report directory");

  auto* mps = app.add_subcommand("export-mps", "Write the model in MPS format");
  mps->add_option("bundle", bundle, "input bundle directory")->required();
  mps->add_option("--weights", weights_spec, "k1,w1,w2,w3 override");
  mps->add_option("-o,--out", out_path, "output file (default model.mps)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : SR_ERR_ARGUMENT;
  }

  double weights[4];
  const double* wptr = parse_weights(weights_spec, weights) ? weights : nullptr;

  if (validate->parsed()) {
    InstanceHandle inst;
    int rc = sr_instance_load(bundle.c_str(), &inst.ptr);
    if (rc != SR_OK) return report_failure(rc);
    char* diags = nullptr;
    rc = sr_instance_validate(inst.ptr, &diags);
    if (diags) {
      std::printf("%s\n", diags);
      sr_string_free(diags);
    }
    if (rc != SR_OK) return report_failure(rc);
    int ns, no, nr, nk;
    sr_instance_counts(inst.ptr, &ns, &no, &nr, &nk);
    std::printf("bundle OK: %d stations, %d spills, %d resources, %d scenarios\n", ns, no, nr,
                nk);
    return SR_OK;
  }

  if (gen->parsed()) {
    if (out_path.empty()) out_path = bundle + "/scenarios.json";
    char* report = nullptr;
    int rc = sr_generate_scenarios(bundle.c_str(), seed, n_stochastic, out_path.c_str(),
                                   &report);
    if (rc != SR_OK) return report_failure(rc);
    if (report) {
      std::printf("%s\n", report);
      sr_string_free(report);
    }
    std::printf("wrote %s\n", out_path.c_str());
    return SR_OK;
  }

  if (solve->parsed()) {
    InstanceHandle inst;
    int rc = sr_instance_load(bundle.c_str(), &inst.ptr);
    if (rc != SR_OK) return report_failure(rc);
    sr_solution* sol = nullptr;
    rc = sr_solve(inst.ptr, wptr, &sol);
    if (rc != SR_OK) return report_failure(rc);
    rc = sr_solution_emit_reports(inst.ptr, sol, outdir.c_str());
    if (rc == SR_OK) rc = sr_emit_manifest("solve", bundle.c_str(), 0, outdir.c_str());
    char* js = nullptr;
    if (rc == SR_OK && sr_solution_json(sol, &js) == SR_OK) {
      std::printf("%s\n", js);
      sr_string_free(js);
    }
    sr_solution_free(sol);
    if (rc != SR_OK) return report_failure(rc);
    std::printf("reports written to %s\n", outdir.c_str());
    return SR_OK;
  }

  if (evaluate->parsed()) {
    InstanceHandle inst;
    int rc = sr_instance_load(bundle.c_str(), &inst.ptr);
    if (rc != SR_OK) return report_failure(rc);
    sr_voi* voi = nullptr;
    rc = sr_evaluate(inst.ptr, wptr, &voi);
    if (rc != SR_OK) return report_failure(rc);
    rc = sr_voi_emit_reports(voi, outdir.c_str());
    if (rc == SR_OK) rc = sr_emit_manifest("evaluate", bundle.c_str(), 0, outdir.c_str());
    char* js = nullptr;
    if (rc == SR_OK && sr_voi_json(voi, &js) == SR_OK) {
      std::printf("%s\n", js);
      sr_string_free(js);
    }
    sr_voi_free(voi);
    if (rc != SR_OK) return report_failure(rc);
    std::printf("reports written to %s\n", outdir.c_str());
    return SR_OK;
  }

  if (sweep->parsed()) {
    InstanceHandle inst;
    int rc = sr_instance_load(bundle.c_str(), &inst.ptr);
    if (rc != SR_OK) return report_failure(rc);
    sr_sweep* runs = nullptr;
    rc = sr_sweep_run(inst.ptr, k1_step, omega_step, jobs, &runs);
    if (rc != SR_OK) return report_failure(rc);
    rc = sr_sweep_emit_reports(runs, outdir.c_str());
    if (rc == SR_OK) rc = sr_emit_manifest("sweep", bundle.c_str(), 0, outdir.c_str());
    const int count = sr_sweep_size(runs);
    sr_sweep_free(runs);
    if (rc != SR_OK) return report_failure(rc);
    std::printf("%d runs written to %s\n", count, outdir.c_str());
    return SR_OK;
  }

  if (pareto->parsed()) {
    int rc = sr_pareto_from_csv(sweep_csv.c_str(), outdir.c_str());
    if (rc != SR_OK) return report_failure(rc);
    std::printf("frontier written to %s\n", outdir.c_str());
    return SR_OK;
  }

  if (mps->parsed()) {
    if (out_path.empty()) out_path = "model.mps";
    InstanceHandle inst;
    int rc = sr_instance_load(bundle.c_str(), &inst.ptr);
    if (rc != SR_OK) return report_failure(rc);
    rc = sr_export_mps(inst.ptr, wptr, out_path.c_str());
    if (rc != SR_OK) return report_failure(rc);
    std::printf("wrote %s\n", out_path.c_str());
    return SR_OK;
  }

  return SR_ERR_ARGUMENT;
}
