#include "spillresp/milp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spillresp/error.hpp"

namespace spillresp {

namespace {
constexpr double kIntTol = 1e-6;
constexpr double kObjRelTol = 1e-5;

double rel_tol(double scale, double tol) { return tol * std::max(1.0, std::abs(scale)); }
}  // namespace

std::string VarKey::name() const {
  switch (kind) {
    case Kind::X: return "X" + std::to_string(i + 1);
    case Kind::Y:
      return "Y" + std::to_string(i + 1) + "." + std::to_string(o + 1) + "." +
             std::to_string(k + 1);
    case Kind::Z:
      return "Z" + std::to_string(i + 1) + "." + std::to_string(o + 1) + "." +
             std::to_string(k + 1) + "." + std::to_string(r + 1);
    case Kind::A:
      return "A" + std::to_string(i + 1) + "." + std::to_string(j + 1) + "." +
             std::to_string(k + 1) + "." + std::to_string(r + 1);
    case Kind::T: return "T" + std::to_string(o + 1) + "." + std::to_string(k + 1);
  }
  return "?";
}

void MilpProblem::validate() const {
  for (const auto& row : rows) {
    require(!row.coeffs.empty(), ErrorCode::InvariantViolation, "empty constraint row");
    for (auto [col, val] : row.coeffs) {
      require(col >= 0 && col < static_cast<int>(columns.size()), ErrorCode::InvariantViolation,
              "row references an unknown column");
      require(std::isfinite(val), ErrorCode::InvariantViolation, "non-finite coefficient");
    }
  }
  for (const auto& col : columns) {
    require(std::isfinite(col.lb) && std::isfinite(col.ub), ErrorCode::InvariantViolation,
            "all columns must carry finite bounds");
    require(col.lb <= col.ub, ErrorCode::InvariantViolation, "column bounds crossed");
    if (col.is_integer)
      require(col.lb >= 0.0 && col.ub <= 1.0, ErrorCode::InvariantViolation,
              "binaries must have bounds within [0, 1]");
  }
}

MilpProblem formulate(const ProblemInstance& inst, const Weights& weights) {
  validate_weights(weights);
  const int ni = static_cast<int>(inst.num_stations());
  const int no = static_cast<int>(inst.num_spills());
  const int nk = static_cast<int>(inst.num_scenarios());
  const int nr = static_cast<int>(inst.num_resources());
  const auto& pairs = inst.pairs;
  const int np = static_cast<int>(pairs.size());
  const double tau = inst.config.tau_max_hours;
  const auto norm = normalize_coverage_terms(inst);

  MilpProblem p;
  p.weights = weights;

  // Column layout: X | Y (pair, scenario) | Z (pair, scenario, resource) |
  // A (ordered station pair, scenario, resource) | T (spill, scenario).
  std::vector<int> x_col(ni);
  for (int i = 0; i < ni; ++i) {
    x_col[i] = static_cast<int>(p.columns.size());
    VarKey key{VarKey::Kind::X, static_cast<std::int16_t>(i), -1, -1, -1, -1};
    p.columns.push_back({key, 0.0, 1.0, true, -weights.k2 * inst.stations[i].opening_cost});
  }

  const auto rho = [&](int k) { return inst.scenarios.scenarios[k].probability; };

  std::vector<int> y_col(static_cast<std::size_t>(np) * nk, -1);
  const auto y_index = [&](int pi, int k) { return pi * nk + k; };
  for (int pi = 0; pi < np; ++pi) {
    const auto [o, i] = pairs[pi];
    for (int k = 0; k < nk; ++k) {
      y_col[y_index(pi, k)] = static_cast<int>(p.columns.size());
      VarKey key{VarKey::Kind::Y, static_cast<std::int16_t>(i), -1, static_cast<std::int16_t>(o),
                 static_cast<std::int16_t>(k), -1};
      const double gain =
          weights.k1 * rho(k) *
          (weights.omega1 * norm.v_hat.at(o, k) + weights.omega2 * norm.eta_hat.at(o, k));
      p.columns.push_back({key, 0.0, 1.0, true, gain});
    }
  }

  std::vector<int> z_col(static_cast<std::size_t>(np) * nk * nr, -1);
  const auto z_index = [&](int pi, int k, int r) { return (pi * nk + k) * nr + r; };
  for (int pi = 0; pi < np; ++pi) {
    const auto [o, i] = pairs[pi];
    for (int k = 0; k < nk; ++k) {
      for (int r = 0; r < nr; ++r) {
        z_col[z_index(pi, k, r)] = static_cast<int>(p.columns.size());
        VarKey key{VarKey::Kind::Z, static_cast<std::int16_t>(i), -1, static_cast<std::int16_t>(o),
                   static_cast<std::int16_t>(k), static_cast<std::int16_t>(r)};
        const double d = inst.scenarios.scenarios[k].demand[o][r];
        const double cap = inst.stations[i].inventory[r];
        p.columns.push_back({key, 0.0, std::max(d, cap), false,
                             -weights.k2 * rho(k) * inst.derived.deploy_cost.at(i, o)});
      }
    }
  }

  std::vector<int> a_col(static_cast<std::size_t>(ni) * ni * nk * nr, -1);
  const auto a_index = [&](int i, int j, int k, int r) { return ((i * ni + j) * nk + k) * nr + r; };
  for (int i = 0; i < ni; ++i) {
    for (int j = 0; j < ni; ++j) {
      if (i == j) continue;
      for (int k = 0; k < nk; ++k) {
        for (int r = 0; r < nr; ++r) {
          a_col[a_index(i, j, k, r)] = static_cast<int>(p.columns.size());
          VarKey key{VarKey::Kind::A, static_cast<std::int16_t>(i), static_cast<std::int16_t>(j),
                     -1, static_cast<std::int16_t>(k), static_cast<std::int16_t>(r)};
          p.columns.push_back({key, 0.0, inst.stations[i].inventory[r], false,
                               -weights.k2 * rho(k) * inst.derived.transfer_cost.at(i, j)});
        }
      }
    }
  }

  std::vector<int> t_col(static_cast<std::size_t>(no) * nk, -1);
  const auto t_index = [&](int o, int k) { return o * nk + k; };
  for (int o = 0; o < no; ++o) {
    for (int k = 0; k < nk; ++k) {
      t_col[t_index(o, k)] = static_cast<int>(p.columns.size());
      VarKey key{VarKey::Kind::T, -1, -1, static_cast<std::int16_t>(o),
                 static_cast<std::int16_t>(k), -1};
      p.columns.push_back({key, 0.0, tau, false, -weights.k1 * rho(k) * weights.omega3 / tau});
    }
  }

  // Assignment rows: Y <= X per eligible pair and scenario.
  for (int pi = 0; pi < np; ++pi) {
    const auto [o, i] = pairs[pi];
    (void)o;
    for (int k = 0; k < nk; ++k) {
      MilpRow row;
      row.coeffs = {{y_col[y_index(pi, k)], 1.0}, {x_col[i], -1.0}};
      row.sense = RowSense::LE;
      row.rhs = 0.0;
      row.eq_tag = 2;
      p.rows.push_back(std::move(row));
    }
  }

  // Station budget.
  {
    MilpRow row;
    for (int i = 0; i < ni; ++i) row.coeffs.emplace_back(x_col[i], 1.0);
    row.sense = RowSense::LE;
    row.rhs = inst.config.n_max_stations;
    row.eq_tag = 3;
    p.rows.push_back(std::move(row));
  }

  // At most one covering station per spill and scenario.
  std::vector<std::vector<int>> pairs_for_spill(no);
  for (int pi = 0; pi < np; ++pi) pairs_for_spill[pairs[pi].first].push_back(pi);
  for (int o = 0; o < no; ++o) {
    if (pairs_for_spill[o].empty()) continue;
    for (int k = 0; k < nk; ++k) {
      MilpRow row;
      for (int pi : pairs_for_spill[o]) row.coeffs.emplace_back(y_col[y_index(pi, k)], 1.0);
      row.sense = RowSense::LE;
      row.rhs = 1.0;
      row.eq_tag = 4;
      p.rows.push_back(std::move(row));
    }
  }

  // Deployment caps: demand-limited and inventory-limited.
  for (int pi = 0; pi < np; ++pi) {
    const auto [o, i] = pairs[pi];
    for (int k = 0; k < nk; ++k) {
      for (int r = 0; r < nr; ++r) {
        const double d = inst.scenarios.scenarios[k].demand[o][r];
        MilpRow demand_cap;
        demand_cap.coeffs = {{z_col[z_index(pi, k, r)], 1.0}, {y_col[y_index(pi, k)], -d}};
        demand_cap.sense = RowSense::LE;
        demand_cap.rhs = 0.0;
        demand_cap.eq_tag = 5;
        p.rows.push_back(std::move(demand_cap));

        MilpRow inv_cap;
        inv_cap.coeffs = {{z_col[z_index(pi, k, r)], 1.0},
                          {y_col[y_index(pi, k)], -inst.stations[i].inventory[r]}};
        inv_cap.sense = RowSense::LE;
        inv_cap.rhs = 0.0;
        inv_cap.eq_tag = 6;
        p.rows.push_back(std::move(inv_cap));
      }
    }
  }

  // Inventory balance with transfers: deployments <= stock + in - out.
  std::vector<std::vector<int>> pairs_for_station(ni);
  for (int pi = 0; pi < np; ++pi) pairs_for_station[pairs[pi].second].push_back(pi);
  for (int i = 0; i < ni; ++i) {
    for (int k = 0; k < nk; ++k) {
      for (int r = 0; r < nr; ++r) {
        MilpRow row;
        for (int pi : pairs_for_station[i])
          row.coeffs.emplace_back(z_col[z_index(pi, k, r)], 1.0);
        for (int j = 0; j < ni; ++j) {
          if (j == i) continue;
          row.coeffs.emplace_back(a_col[a_index(i, j, k, r)], 1.0);   // outgoing
          row.coeffs.emplace_back(a_col[a_index(j, i, k, r)], -1.0);  // incoming
        }
        row.sense = RowSense::LE;
        row.rhs = inst.stations[i].inventory[r];
        row.eq_tag = 7;
        p.rows.push_back(std::move(row));
      }
    }
  }

  // Transfer gates: closed stations neither send nor receive.
  for (int i = 0; i < ni; ++i) {
    for (int j = 0; j < ni; ++j) {
      if (i == j) continue;
      for (int k = 0; k < nk; ++k) {
        for (int r = 0; r < nr; ++r) {
          const double cap = inst.stations[i].inventory[r];
          MilpRow sender;
          sender.coeffs = {{a_col[a_index(i, j, k, r)], 1.0}, {x_col[i], -cap}};
          sender.sense = RowSense::LE;
          sender.rhs = 0.0;
          sender.eq_tag = 8;
          p.rows.push_back(std::move(sender));

          MilpRow receiver;
          receiver.coeffs = {{a_col[a_index(i, j, k, r)], 1.0}, {x_col[j], -cap}};
          receiver.sense = RowSense::LE;
          receiver.rhs = 0.0;
          receiver.eq_tag = 8;
          p.rows.push_back(std::move(receiver));
        }
      }
    }
  }

  // Full demand must be deployed to covered spills.
  for (int o = 0; o < no; ++o) {
    if (pairs_for_spill[o].empty()) continue;
    for (int k = 0; k < nk; ++k) {
      for (int r = 0; r < nr; ++r) {
        const double d = inst.scenarios.scenarios[k].demand[o][r];
        MilpRow row;
        for (int pi : pairs_for_spill[o]) {
          row.coeffs.emplace_back(z_col[z_index(pi, k, r)], 1.0);
          row.coeffs.emplace_back(y_col[y_index(pi, k)], -d);
        }
        row.sense = RowSense::GE;
        row.rhs = 0.0;
        row.eq_tag = 9;
        p.rows.push_back(std::move(row));
      }
    }
  }

  // Arrival-time tracking and response window.
  for (int pi = 0; pi < np; ++pi) {
    const auto [o, i] = pairs[pi];
    for (int k = 0; k < nk; ++k) {
      const double lead = inst.derived.travel_time.at(i, o) + inst.derived.prep_time[k].at(i, o);
      MilpRow row;
      row.coeffs = {{t_col[t_index(o, k)], 1.0}, {y_col[y_index(pi, k)], -lead}};
      row.sense = RowSense::GE;
      row.rhs = 0.0;
      row.eq_tag = 11;
      p.rows.push_back(std::move(row));
    }
  }
  for (int o = 0; o < no; ++o) {
    if (pairs_for_spill[o].empty()) continue;
    for (int k = 0; k < nk; ++k) {
      MilpRow row;
      row.coeffs.emplace_back(t_col[t_index(o, k)], 1.0);
      for (int pi : pairs_for_spill[o]) row.coeffs.emplace_back(y_col[y_index(pi, k)], -tau);
      row.sense = RowSense::LE;
      row.rhs = 0.0;
      row.eq_tag = 12;
      p.rows.push_back(std::move(row));
    }
  }

  // Spill-scenario pairs nobody can reach in time become uncoverable.
  for (int k = 0; k < nk; ++k) {
    for (int o = 0; o < no; ++o) {
      bool reachable = false;
      for (int pi : pairs_for_spill[o]) {
        const int i = pairs[pi].second;
        if (inst.derived.travel_time.at(i, o) + inst.derived.prep_time[k].at(i, o) <= tau + 1e-12)
          reachable = true;
      }
      if (!pairs_for_spill[o].empty() && !reachable)
        p.warnings.push_back("spill " + std::to_string(inst.spills[o].id) + " in scenario " +
                             std::to_string(inst.scenarios.scenarios[k].id) +
                             " cannot be reached within tau_max by any eligible station");
    }
  }

  p.validate();
  return p;
}

void update_objective(MilpProblem& p, const ProblemInstance& inst, const Weights& weights) {
  validate_weights(weights);
  const auto norm = normalize_coverage_terms(inst);
  const double tau = inst.config.tau_max_hours;
  for (auto& col : p.columns) {
    const auto& key = col.key;
    const double rho =
        key.k >= 0 ? inst.scenarios.scenarios[key.k].probability : 0.0;
    switch (key.kind) {
      case VarKey::Kind::X:
        col.obj = -weights.k2 * inst.stations[key.i].opening_cost;
        break;
      case VarKey::Kind::Y:
        col.obj = weights.k1 * rho *
                  (weights.omega1 * norm.v_hat.at(key.o, key.k) +
                   weights.omega2 * norm.eta_hat.at(key.o, key.k));
        break;
      case VarKey::Kind::Z:
        col.obj = -weights.k2 * rho * inst.derived.deploy_cost.at(key.i, key.o);
        break;
      case VarKey::Kind::A:
        col.obj = -weights.k2 * rho * inst.derived.transfer_cost.at(key.i, key.j);
        break;
      case VarKey::Kind::T:
        col.obj = -weights.k1 * rho * weights.omega3 / tau;
        break;
    }
  }
  p.weights = weights;
}

double Solution::deployed_at(std::size_t k, std::size_t r, std::size_t i, std::size_t o,
                             const ProblemInstance& inst) const {
  return deployed[((k * inst.num_resources() + r) * inst.num_stations() + i) * inst.num_spills() +
                  o];
}

double Solution::transferred_at(std::size_t k, std::size_t r, std::size_t i, std::size_t j,
                                const ProblemInstance& inst) const {
  return transferred[((k * inst.num_resources() + r) * inst.num_stations() + i) *
                         inst.num_stations() +
                     j];
}

double Solution::response_time_at(std::size_t k, std::size_t o,
                                  const ProblemInstance& inst) const {
  return response_time[k * inst.num_spills() + o];
}

Solution decode(const MilpProblem& p, const std::vector<double>& values,
                const ProblemInstance& inst, SolveStatus status) {
  require(values.size() == p.columns.size(), ErrorCode::DimensionMismatch,
          "column value vector length mismatch");
  const std::size_t ni = inst.num_stations();
  const std::size_t no = inst.num_spills();
  const std::size_t nk = inst.num_scenarios();
  const std::size_t nr = inst.num_resources();

  Solution sol;
  sol.status = status;
  sol.station_open.assign(ni, 0);
  sol.assigned.assign(nk, std::vector<int>(no, -1));
  sol.deployed.assign(nk * nr * ni * no, 0.0);
  sol.transferred.assign(nk * nr * ni * ni, 0.0);
  sol.response_time.assign(nk * no, 0.0);

  double column_objective = 0.0;
  for (std::size_t c = 0; c < p.columns.size(); ++c) {
    const auto& col = p.columns[c];
    const double v = values[c];
    column_objective += col.obj * v;
    if (col.is_integer) {
      const double nearest = std::round(v);
      if (std::abs(v - nearest) > kIntTol)
        fail(ErrorCode::IntegralityError,
             "column " + col.key.name() + " has fractional value " + fmt_double(v));
    }
    const auto& key = col.key;
    switch (key.kind) {
      case VarKey::Kind::X:
        sol.station_open[key.i] = static_cast<int>(std::round(v));
        break;
      case VarKey::Kind::Y:
        if (std::round(v) == 1.0) {
          auto& slot = sol.assigned[key.k][key.o];
          require(slot == -1, ErrorCode::InvariantViolation,
                  "spill assigned to more than one station");
          slot = key.i;
        }
        break;
      case VarKey::Kind::Z:
        sol.deployed[((static_cast<std::size_t>(key.k) * nr + key.r) * ni + key.i) * no + key.o] =
            v;
        break;
      case VarKey::Kind::A:
        sol.transferred[((static_cast<std::size_t>(key.k) * nr + key.r) * ni + key.i) * ni +
                        key.j] = v;
        break;
      case VarKey::Kind::T:
        sol.response_time[static_cast<std::size_t>(key.k) * no + key.o] = v;
        break;
    }
  }

  // Recompute the objective from decoded decisions and reconcile.
  const auto norm = normalize_coverage_terms(inst);
  const auto& w = p.weights;
  double coverage = 0.0;
  double cost = 0.0;
  for (std::size_t k = 0; k < nk; ++k) {
    const double rho = inst.scenarios.scenarios[k].probability;
    for (std::size_t o = 0; o < no; ++o) {
      if (sol.assigned[k][o] >= 0)
        coverage += rho * (w.omega1 * norm.v_hat.at(o, k) + w.omega2 * norm.eta_hat.at(o, k));
      coverage -= rho * w.omega3 * sol.response_time_at(k, o, inst) / inst.config.tau_max_hours;
    }
    for (std::size_t r = 0; r < nr; ++r) {
      for (std::size_t i = 0; i < ni; ++i) {
        for (std::size_t o = 0; o < no; ++o)
          cost += rho * inst.derived.deploy_cost.at(i, o) * sol.deployed_at(k, r, i, o, inst);
        for (std::size_t j = 0; j < ni; ++j)
          cost += rho * inst.derived.transfer_cost.at(i, j) * sol.transferred_at(k, r, i, j, inst);
      }
    }
  }
  for (std::size_t i = 0; i < ni; ++i)
    if (sol.station_open[i]) cost += inst.stations[i].opening_cost;

  sol.coverage_term = coverage;
  sol.cost_term = cost;
  sol.objective = w.k1 * coverage - w.k2 * cost;
  if (std::abs(sol.objective - column_objective) > rel_tol(column_objective, kObjRelTol))
    fail(ErrorCode::ObjectiveMismatch,
         "decoded objective " + fmt_double(sol.objective) + " vs column objective " +
             fmt_double(column_objective));
  return sol;
}

void verify_solution(const Solution& sol, const ProblemInstance& inst, const Weights& w) {
  const std::size_t ni = inst.num_stations();
  const std::size_t no = inst.num_spills();
  const std::size_t nk = inst.num_scenarios();
  const std::size_t nr = inst.num_resources();
  const double tau = inst.config.tau_max_hours;

  int open_count = 0;
  for (std::size_t i = 0; i < ni; ++i) open_count += sol.station_open[i];
  require(open_count <= inst.config.n_max_stations, ErrorCode::InvariantViolation,
          "station budget exceeded");

  for (std::size_t k = 0; k < nk; ++k) {
    const auto& sc = inst.scenarios.scenarios[k];
    for (std::size_t o = 0; o < no; ++o) {
      const int assigned = sol.assigned[k][o];
      if (assigned >= 0)
        require(sol.station_open[assigned] == 1, ErrorCode::InvariantViolation,
                "spill assigned to a closed station");

      for (std::size_t r = 0; r < nr; ++r) {
        double total = 0.0;
        for (std::size_t i = 0; i < ni; ++i) total += sol.deployed_at(k, r, i, o, inst);
        const double want = assigned >= 0 ? sc.demand[o][r] : 0.0;
        require(std::abs(total - want) <= rel_tol(want, 1e-6), ErrorCode::InvariantViolation,
                "deployed quantity does not equal demand for covered spill");
      }

      // Response-time linearization is tight at optimality whenever the time
      // term carries weight.
      if (w.k1 * w.omega3 > 0.0) {
        const double t = sol.response_time_at(k, o, inst);
        if (assigned >= 0) {
          const double lead = inst.derived.travel_time.at(assigned, o) +
                              inst.derived.prep_time[k].at(assigned, o);
          require(std::abs(t - lead) <= rel_tol(lead, 1e-6), ErrorCode::InvariantViolation,
                  "response time not tight against travel + prep");
          require(t <= tau + rel_tol(tau, 1e-6), ErrorCode::InvariantViolation,
                  "response time exceeds tau_max");
        } else {
          require(t <= rel_tol(tau, 1e-6), ErrorCode::InvariantViolation,
                  "nonzero response time for uncovered spill");
        }
      }
    }

    for (std::size_t r = 0; r < nr; ++r) {
      for (std::size_t i = 0; i < ni; ++i) {
        double out_flow = 0.0, in_flow = 0.0, deployed = 0.0;
        for (std::size_t j = 0; j < ni; ++j) {
          out_flow += sol.transferred_at(k, r, i, j, inst);
          in_flow += sol.transferred_at(k, r, j, i, inst);
          if (sol.transferred_at(k, r, i, j, inst) > 1e-9) {
            require(sol.station_open[i] == 1 && sol.station_open[j] == 1,
                    ErrorCode::InvariantViolation, "transfer touches a closed station");
          }
        }
        for (std::size_t o = 0; o < no; ++o) deployed += sol.deployed_at(k, r, i, o, inst);
        const double stock = inst.stations[i].inventory[r];
        require(deployed <= stock + in_flow - out_flow + rel_tol(stock, 1e-6),
                ErrorCode::InvariantViolation, "inventory balance violated");
      }
    }
  }

  const double recombined = w.k1 * sol.coverage_term - w.k2 * sol.cost_term;
  require(std::abs(sol.objective - recombined) <= rel_tol(sol.objective, 1e-6),
          ErrorCode::InvariantViolation, "objective decomposition mismatch");
}

CoverageStats coverage_stats(const Solution& sol, const ProblemInstance& inst) {
  require(sol.status == SolveStatus::Optimal, ErrorCode::InvalidArgument,
          "coverage stats require an optimal solution");
  const std::size_t ni = inst.num_stations();
  const std::size_t no = inst.num_spills();
  const std::size_t nk = inst.num_scenarios();
  const std::size_t nr = inst.num_resources();

  CoverageStats stats;
  stats.covered_per_scenario.assign(nk, 0);
  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t o = 0; o < no; ++o)
      if (sol.assigned[k][o] >= 0) {
        ++stats.covered_per_scenario[k];
        ++stats.covered_pairs;
      }
  stats.coverage_rate =
      no * nk == 0 ? 0.0 : static_cast<double>(stats.covered_pairs) / static_cast<double>(no * nk);

  stats.utilization = Matrix(ni, nr, 0.0);
  for (std::size_t i = 0; i < ni; ++i) {
    for (std::size_t r = 0; r < nr; ++r) {
      const double stock = inst.stations[i].inventory[r];
      if (stock <= 0.0) continue;
      double peak = 0.0;
      for (std::size_t k = 0; k < nk; ++k) {
        double used = 0.0;
        for (std::size_t o = 0; o < no; ++o) used += sol.deployed_at(k, r, i, o, inst);
        for (std::size_t j = 0; j < ni; ++j) used += sol.transferred_at(k, r, i, j, inst);
        peak = std::max(peak, used / stock);
      }
      stats.utilization.at(i, r) = peak;
    }
  }
  return stats;
}

}  // namespace spillresp
