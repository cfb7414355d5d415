#include "spillresp/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spillresp/basic_lp.hpp"
#include "spillresp/error.hpp"

namespace spillresp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTol = 1e-9;

struct ScenarioPick {
  double value = 0.0;                      // scenario objective contribution
  std::vector<int> assigned;               // per spill, station or -1
  std::vector<std::vector<double>> flows;  // per resource, dense i*ni+j transfer
};

struct TransferOutcome {
  bool feasible = false;
  double cost = 0.0;
  std::vector<std::vector<double>> flows;
};

/// Min-cost transfers so every open station's deployments fit its inventory.
/// One LP per resource; stations decouple across resources.
TransferOutcome min_transfer_cost(const ProblemInstance& inst, const std::vector<int>& open,
                                  const std::vector<std::vector<double>>& need) {
  const int ni = static_cast<int>(inst.num_stations());
  const int nr = static_cast<int>(inst.num_resources());
  TransferOutcome out;
  out.flows.assign(nr, std::vector<double>(static_cast<std::size_t>(ni) * ni, 0.0));
  out.cost = 0.0;

  for (int r = 0; r < nr; ++r) {
    bool deficit = false;
    double total_need = 0.0, total_stock = 0.0;
    for (int i : open) {
      deficit = deficit || need[r][i] > inst.stations[i].inventory[r] + 1e-9;
      total_need += need[r][i];
      total_stock += inst.stations[i].inventory[r];
    }
    if (total_need > total_stock + 1e-6) return out;  // infeasible even with transfers
    if (!deficit) continue;

    // Variables: A_{uv} over ordered open station pairs.
    std::vector<std::pair<int, int>> arcs;
    for (int u : open)
      for (int v : open)
        if (u != v) arcs.emplace_back(u, v);
    BasicLp lp;
    lp.c.resize(arcs.size());
    lp.ub.resize(arcs.size());
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      lp.c[a] = inst.derived.transfer_cost.at(arcs[a].first, arcs[a].second);
      lp.ub[a] = inst.stations[arcs[a].first].inventory[r];
    }
    for (int i : open) {
      BasicLp::Row row;
      row.a.assign(arcs.size(), 0.0);
      for (std::size_t a = 0; a < arcs.size(); ++a) {
        if (arcs[a].first == i) row.a[a] += 1.0;   // outgoing
        if (arcs[a].second == i) row.a[a] -= 1.0;  // incoming
      }
      row.sense = 'L';
      row.b = inst.stations[i].inventory[r] - need[r][i];
      lp.rows.push_back(std::move(row));
    }
    const auto res = basic_lp_solve(lp);
    if (res.status != BasicLpResult::Status::Optimal) return out;
    out.cost += res.objective;
    for (std::size_t a = 0; a < arcs.size(); ++a)
      out.flows[r][static_cast<std::size_t>(arcs[a].first) * ni + arcs[a].second] = res.x[a];
  }
  out.feasible = true;
  return out;
}

}  // namespace

EnumerateResult enumerate_oracle(const ProblemInstance& inst, const Weights& weights,
                                 long max_combinations) {
  validate_weights(weights);
  const int ni = static_cast<int>(inst.num_stations());
  const int no = static_cast<int>(inst.num_spills());
  const int nk = static_cast<int>(inst.num_scenarios());
  const int nr = static_cast<int>(inst.num_resources());
  const double tau = inst.config.tau_max_hours;
  const auto norm = normalize_coverage_terms(inst);

  // Eligible station options per (spill, scenario, station): pair in P,
  // reachable in time, and per-deployment inventory cap satisfied.
  std::vector<std::vector<char>> in_pairs(no, std::vector<char>(ni, 0));
  for (auto [o, i] : inst.pairs) in_pairs[o][i] = 1;
  const auto option_ok = [&](int o, int i, int k) {
    if (!in_pairs[o][i]) return false;
    const double lead = inst.derived.travel_time.at(i, o) + inst.derived.prep_time[k].at(i, o);
    if (lead > tau + 1e-12) return false;
    for (int r = 0; r < nr; ++r)
      if (inst.scenarios.scenarios[k].demand[o][r] > inst.stations[i].inventory[r] + 1e-9)
        return false;
    return true;
  };

  // Combination budget, counted as examined (X, Y^k) assignment vectors.
  long combos = 0;
  for (int mask = 0; mask < (1 << ni); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) > inst.config.n_max_stations) continue;
    for (int k = 0; k < nk; ++k) {
      double prod = 1.0;
      for (int o = 0; o < no; ++o) {
        int opts = 1;
        for (int i = 0; i < ni; ++i)
          if ((mask >> i & 1) && option_ok(o, i, k)) ++opts;
        prod *= opts;
        if (prod > static_cast<double>(max_combinations)) break;
      }
      combos += static_cast<long>(std::min(prod, static_cast<double>(max_combinations)));
      if (combos > max_combinations)
        fail(ErrorCode::TooLarge, "instance exceeds the enumeration budget");
    }
  }

  const auto scenario_best = [&](int mask, int k) {
    const auto& sc = inst.scenarios.scenarios[k];
    const double rho = sc.probability;
    std::vector<int> open;
    for (int i = 0; i < ni; ++i)
      if (mask >> i & 1) open.push_back(i);

    std::vector<std::vector<int>> options(no);
    for (int o = 0; o < no; ++o) {
      options[o].push_back(-1);
      for (int i : open)
        if (option_ok(o, i, k)) options[o].push_back(i);
    }

    ScenarioPick best;
    best.value = -kInf;
    std::vector<std::size_t> idx(no, 0);
    std::vector<std::vector<double>> need(nr, std::vector<double>(ni, 0.0));
    while (true) {
      double coverage = 0.0;
      double deploy_cost = 0.0;
      for (auto& rn : need) std::fill(rn.begin(), rn.end(), 0.0);
      for (int o = 0; o < no; ++o) {
        const int i = options[o][idx[o]];
        if (i < 0) continue;
        const double lead =
            inst.derived.travel_time.at(i, o) + inst.derived.prep_time[k].at(i, o);
        coverage += weights.omega1 * norm.v_hat.at(o, k) +
                    weights.omega2 * norm.eta_hat.at(o, k) - weights.omega3 * lead / tau;
        for (int r = 0; r < nr; ++r) {
          need[r][i] += sc.demand[o][r];
          deploy_cost += inst.derived.deploy_cost.at(i, o) * sc.demand[o][r];
        }
      }
      const auto transfer = min_transfer_cost(inst, open, need);
      if (transfer.feasible) {
        const double value = weights.k1 * rho * coverage -
                             weights.k2 * rho * (deploy_cost + transfer.cost);
        if (value > best.value + kTieTol) {
          best.value = value;
          best.assigned.resize(no);
          for (int o = 0; o < no; ++o) best.assigned[o] = options[o][idx[o]];
          best.flows = transfer.flows;
        }
      }
      // Odometer step.
      int o = 0;
      while (o < no && ++idx[o] == options[o].size()) idx[o++] = 0;
      if (o == no) break;
    }
    return best;
  };

  double best_total = -kInf;
  int best_mask = -1;
  int ties = 0;
  for (int mask = 0; mask < (1 << ni); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) > inst.config.n_max_stations) continue;
    double total = 0.0;
    for (int i = 0; i < ni; ++i)
      if (mask >> i & 1) total -= weights.k2 * inst.stations[i].opening_cost;
    for (int k = 0; k < nk; ++k) {
      const auto pick = scenario_best(mask, k);
      require(pick.value > -kInf, ErrorCode::Internal, "scenario enumeration found no option");
      total += pick.value;
    }
    if (total > best_total + kTieTol) {
      best_total = total;
      best_mask = mask;
      ties = 1;
    } else if (total > best_total - kTieTol) {
      ++ties;
    }
  }
  require(best_mask >= 0, ErrorCode::Internal, "no feasible station subset");

  // Rebuild the winning decisions.
  EnumerateResult result;
  result.combinations = combos;
  result.unique_station_set = ties == 1;

  Solution sol;
  sol.status = SolveStatus::Optimal;
  sol.station_open.assign(ni, 0);
  for (int i = 0; i < ni; ++i) sol.station_open[i] = best_mask >> i & 1;
  sol.assigned.assign(nk, std::vector<int>(no, -1));
  sol.deployed.assign(static_cast<std::size_t>(nk) * nr * ni * no, 0.0);
  sol.transferred.assign(static_cast<std::size_t>(nk) * nr * ni * ni, 0.0);
  sol.response_time.assign(static_cast<std::size_t>(nk) * no, 0.0);

  double coverage_term = 0.0;
  double cost_term = 0.0;
  for (int i = 0; i < ni; ++i)
    if (sol.station_open[i]) cost_term += inst.stations[i].opening_cost;

  for (int k = 0; k < nk; ++k) {
    const auto pick = scenario_best(best_mask, k);
    const auto& sc = inst.scenarios.scenarios[k];
    const double rho = sc.probability;
    sol.assigned[k] = pick.assigned;
    for (int o = 0; o < no; ++o) {
      const int i = pick.assigned[o];
      if (i < 0) continue;
      const double lead = inst.derived.travel_time.at(i, o) + inst.derived.prep_time[k].at(i, o);
      sol.response_time[static_cast<std::size_t>(k) * no + o] = lead;
      coverage_term += rho * (weights.omega1 * norm.v_hat.at(o, k) +
                              weights.omega2 * norm.eta_hat.at(o, k) -
                              weights.omega3 * lead / tau);
      for (int r = 0; r < nr; ++r) {
        const double d = sc.demand[o][r];
        sol.deployed[((static_cast<std::size_t>(k) * nr + r) * ni + i) * no + o] = d;
        cost_term += rho * inst.derived.deploy_cost.at(i, o) * d;
      }
    }
    for (int r = 0; r < nr; ++r) {
      for (int i = 0; i < ni; ++i) {
        for (int j = 0; j < ni; ++j) {
          const double f = pick.flows.empty() ? 0.0 : pick.flows[r][static_cast<std::size_t>(i) * ni + j];
          if (f <= 0.0) continue;
          sol.transferred[((static_cast<std::size_t>(k) * nr + r) * ni + i) * ni + j] = f;
          cost_term += rho * inst.derived.transfer_cost.at(i, j) * f;
        }
      }
    }
  }
  sol.coverage_term = coverage_term;
  sol.cost_term = cost_term;
  sol.objective = weights.k1 * coverage_term - weights.k2 * cost_term;
  require(std::abs(sol.objective - best_total) <= 1e-6 * std::max(1.0, std::abs(best_total)),
          ErrorCode::Internal, "oracle reconstruction mismatch");
  result.solution = std::move(sol);
  return result;
}

}  // namespace spillresp
