#pragma once

#include <cstdint>
#include <vector>

#include "spillresp/model.hpp"
#include "spillresp/scenario.hpp"
#include "spillresp/util.hpp"

namespace spillresp::testing {

/// Table-2 style station set used across tests (costs in M$).
inline std::vector<Station> arctic_stations() {
  return {
      {1, "Deadhorse", 70.1952, -148.4651, 41.25, {200000, 30, 7000}, 15.0},
      {2, "A4W1 Marine Base", 70.2508, -148.4696, 15.0, {100000, 20, 12000}, 15.0},
      {3, "Kuparuk Field Site", 70.3300, -149.6100, 11.25, {80000, 15, 5000}, 15.0},
      {4, "Alpine Field Site", 70.3420, -150.9470, 7.5, {40000, 8, 2000}, 15.0},
  };
}

inline std::vector<ResourceType> arctic_resources() {
  return {
      {1, "boom", 1.0, 2e-6, 1.0, 100.0},
      {2, "skimmer", 5.0, 0.05, 200.0, 1.0},
      {3, "dispersant", 0.5, 3e-5, 1.0, 1.0},
  };
}

struct RandomInstance {
  ProblemInstance instance;
  Weights weights;
};

/// Deterministic tiny instance for oracle cross-checks: |I| <= 3, |O| <= 4,
/// |K| <= 3, |R| <= 2, with cost scales that leave station opening genuinely
/// contested and demands that sometimes force transfers.
inline RandomInstance make_random_tiny_instance(std::uint64_t seed) {
  Rng rng(seed * 2654435761ULL + 17);
  const auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * rng.next_double(); };
  const auto uniform_int = [&](int lo, int hi) {
    return lo + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  const int ni = uniform_int(1, 3);
  const int no = uniform_int(1, 4);
  const int nk = uniform_int(1, 3);
  const int nr = uniform_int(1, 2);

  std::vector<ResourceType> resources;
  for (int r = 0; r < nr; ++r) {
    ResourceType rt;
    rt.id = r + 1;
    rt.name = r == 0 ? "skimmer" : "boom";
    rt.setup_time_min = uniform(0.0, 8.0);
    rt.unit_cost = uniform(0.0, 1.0);
    rt.capacity_per_unit = uniform(50.0, 400.0);
    rt.demand_per_setup_unit = r == 0 ? 1.0 : 10.0;
    resources.push_back(rt);
  }

  std::vector<Station> stations;
  for (int i = 0; i < ni; ++i) {
    Station s;
    s.id = i + 1;
    s.name = "S" + std::to_string(i + 1);
    s.lat = uniform(69.8, 70.6);
    s.lon = uniform(-151.0, -148.0);
    s.opening_cost = uniform(0.05, 1.5);
    s.base_delay_min = uniform(0.0, 30.0);
    for (int r = 0; r < nr; ++r) s.inventory.push_back(uniform(0.0, 12.0));
    stations.push_back(s);
  }

  std::vector<SpillEvent> spills;
  for (int o = 0; o < no; ++o) {
    SpillEvent sp;
    sp.id = o + 1;
    sp.lat = uniform(69.8, 70.6);
    sp.lon = uniform(-151.0, -148.0);
    sp.base_volume = uniform(10.0, 800.0);
    sp.base_esi = uniform(0.0, 10.0);
    spills.push_back(sp);
  }

  ScenarioSet set;
  std::vector<double> probs(nk);
  double mass = 0.0;
  for (int k = 0; k < nk; ++k) {
    probs[k] = uniform(0.1, 1.0);
    mass += probs[k];
  }
  for (int k = 0; k < nk; ++k) {
    Scenario sc;
    sc.id = k + 1;
    sc.probability = probs[k] / mass;
    for (int o = 0; o < no; ++o) {
      sc.spill_volume.push_back(uniform(10.0, 900.0));
      sc.spill_esi.push_back(uniform(0.0, 10.0));
      std::vector<double> d;
      for (int r = 0; r < nr; ++r) {
        // Quarter of the rows are zero; the rest occasionally exceed a single
        // station's stock so transfers come into play.
        const double roll = rng.next_double();
        d.push_back(roll < 0.25 ? 0.0 : std::floor(uniform(0.0, 14.0)));
      }
      sc.demand.push_back(std::move(d));
    }
    set.scenarios.push_back(std::move(sc));
    set.provenance.push_back({k == 0, seed});
  }
  // Re-normalize exactly.
  double total = 0.0;
  for (const auto& sc : set.scenarios) total += sc.probability;
  for (auto& sc : set.scenarios) sc.probability /= total;

  Weights w;
  const double a = uniform(0.05, 1.0), b = uniform(0.05, 1.0), c = uniform(0.05, 1.0);
  w.omega1 = a / (a + b + c);
  w.omega2 = b / (a + b + c);
  w.omega3 = 1.0 - w.omega1 - w.omega2;
  w.k1 = uniform(0.1, 0.9);
  w.k2 = 1.0 - w.k1;

  ModelConfig cfg;
  cfg.n_max_stations = uniform_int(1, ni);
  cfg.tau_max_hours = uniform(6.0, 40.0);
  cfg.boat_speed_kmh = 1.85;
  cfg.transfer_alpha = uniform(1e-4, 5e-3);
  cfg.deployment_rate = uniform(1e-4, 5e-3);

  RandomInstance out{build_instance(std::move(stations), std::move(spills),
                                    std::move(resources), std::move(set), w, std::move(cfg)),
                     w};
  return out;
}

}  // namespace spillresp::testing
