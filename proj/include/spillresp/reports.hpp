#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "spillresp/evaluation.hpp"
#include "spillresp/milp.hpp"
#include "spillresp/model.hpp"
#include "spillresp/solver.hpp"
#include "spillresp/sweep.hpp"

namespace spillresp {

/// Assignments, deployments, transfers, utilization CSVs, a JSON summary, and
/// one schematic assignment SVG per scenario.
void emit_solution_reports(const ProblemInstance& instance, const Solution& solution,
                           const SolveStats& stats, const std::filesystem::path& outdir);

std::string voi_text_table(const VoiReport& report);

void emit_voi_reports(const VoiReport& report, const std::filesystem::path& outdir);

/// sweep.csv plus the k1-vs-coverage band plot.
void emit_sweep_reports(const std::vector<SweepRun>& runs, const std::filesystem::path& outdir);

/// pareto.csv plus the coverage-cost scatter with the frontier polyline.
void emit_pareto_reports(const std::vector<SweepRun>& runs,
                         const std::vector<ParetoPoint>& frontier,
                         const std::filesystem::path& outdir);

std::string svg_assignment_scatter(const ProblemInstance& instance, const Solution& solution,
                                   std::size_t scenario);
std::string svg_k1_coverage(const std::vector<SweepRun>& runs);
std::string svg_pareto(const std::vector<SweepRun>& runs,
                       const std::vector<ParetoPoint>& frontier);

}  // namespace spillresp
