#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "spillresp/model.hpp"

namespace spillresp {

struct VarKey {
  enum class Kind : std::uint8_t { X, Y, Z, A, T };
  Kind kind = Kind::X;
  std::int16_t i = -1;  // station (sender for A)
  std::int16_t j = -1;  // receiving station (A only)
  std::int16_t o = -1;  // spill
  std::int16_t k = -1;  // scenario
  std::int16_t r = -1;  // resource

  std::string name() const;
};

enum class RowSense : std::uint8_t { LE, GE, EQ };

struct MilpColumn {
  VarKey key;
  double lb = 0.0;
  double ub = 0.0;
  bool is_integer = false;
  double obj = 0.0;
};

struct MilpRow {
  std::vector<std::pair<int, double>> coeffs;  // (column, value)
  RowSense sense = RowSense::LE;
  double rhs = 0.0;
  std::int8_t eq_tag = 0;  // source constraint family, for traces and tests
};

struct MilpProblem {
  std::vector<MilpColumn> columns;
  std::vector<MilpRow> rows;
  bool maximize = true;
  Weights weights;                  // weights the objective was built with
  std::vector<std::string> warnings;

  void validate() const;  // structural invariants; throws on violation
};

/// Builds the sparse two-stage model: assignment, budget, deployment caps,
/// transfer balance and gates, demand satisfaction, and response-time rows,
/// with normalized coverage coefficients in the objective.
MilpProblem formulate(const ProblemInstance& instance, const Weights& weights);

/// Rewrites only the objective coefficients for new weights; the constraint
/// system is weight-independent, which lets sweep runs share a formulation.
void update_objective(MilpProblem& problem, const ProblemInstance& instance,
                      const Weights& weights);

enum class SolveStatus { Optimal, Infeasible, GapLimit };

struct Solution {
  double objective = 0.0;
  double coverage_term = 0.0;  // omega-weighted coverage minus time penalty
  double cost_term = 0.0;      // deployment + transfer + opening costs
  std::vector<int> station_open;              // per station, 0/1
  std::vector<std::vector<int>> assigned;     // [scenario][spill] -> station or -1
  std::vector<double> deployed;               // dense (k, r, i, o)
  std::vector<double> transferred;            // dense (k, r, i, j)
  std::vector<double> response_time;          // dense (k, o), hours
  SolveStatus status = SolveStatus::Optimal;

  double deployed_at(std::size_t k, std::size_t r, std::size_t i, std::size_t o,
                     const ProblemInstance& inst) const;
  double transferred_at(std::size_t k, std::size_t r, std::size_t i, std::size_t j,
                        const ProblemInstance& inst) const;
  double response_time_at(std::size_t k, std::size_t o, const ProblemInstance& inst) const;
  std::string to_json(const ProblemInstance& inst) const;
};

/// Decodes raw column values into domain decisions; rounds binaries within
/// 1e-6 and cross-checks the recomputed objective against the column-space
/// objective at 1e-5 relative.
Solution decode(const MilpProblem& problem, const std::vector<double>& column_values,
                const ProblemInstance& instance, SolveStatus status = SolveStatus::Optimal);

/// Formulation invariants every decoded solve must satisfy (demand equality,
/// no phantom stations, inventory balance, budget, objective decomposition,
/// tight response times). Throws InvariantViolation.
void verify_solution(const Solution& sol, const ProblemInstance& instance,
                     const Weights& weights);

struct CoverageStats {
  std::vector<int> covered_per_scenario;
  int covered_pairs = 0;
  double coverage_rate = 0.0;
  Matrix utilization;  // station x resource
};

CoverageStats coverage_stats(const Solution& sol, const ProblemInstance& instance);

/// Fixed-width MPS export; the objective row is written in maximization
/// convention, noted in a leading comment record.
void write_mps(const MilpProblem& problem, std::ostream& os, const std::string& name);

}  // namespace spillresp
