#include <cmath>

#include "doctest.h"
#include "spillresp/error.hpp"
#include "spillresp/model.hpp"
#include "support.hpp"

using namespace spillresp;
using namespace spillresp::testing;

TEST_CASE("haversine identity and known distances") {
  const LatLon deadhorse{70.1952, -148.4651};
  CHECK(haversine_km(deadhorse, deadhorse) == doctest::Approx(0.0).epsilon(1e-12));
  // One degree of longitude at the equator, R = 6371 km.
  CHECK(haversine_km({0, 0}, {0, 1}) == doctest::Approx(111.19492664).epsilon(1e-6));
  // Independently computed great-circle distance between Table-2 stations.
  const LatLon alpine{70.3420, -150.9470};
  CHECK(std::abs(haversine_km(deadhorse, alpine) - 94.58426237738009) < 0.1);
}

TEST_CASE("haversine symmetry and triangle inequality over random points") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const LatLon a{rng.next_double() * 180.0 - 90.0, rng.next_double() * 360.0 - 180.0};
    const LatLon b{rng.next_double() * 180.0 - 90.0, rng.next_double() * 360.0 - 180.0};
    const LatLon c{rng.next_double() * 180.0 - 90.0, rng.next_double() * 360.0 - 180.0};
    CHECK(std::abs(haversine_km(a, b) - haversine_km(b, a)) < 1e-9);
    CHECK(haversine_km(a, c) <= haversine_km(a, b) + haversine_km(b, c) + 1e-6);
    CHECK(haversine_km(a, b) >= 0.0);
  }
}

TEST_CASE("transfer cost matrix") {
  auto stations = arctic_stations();
  SUBCASE("alpha scales distance off the diagonal") {
    const auto tc = compute_transfer_costs(stations, 1.723);
    for (std::size_t i = 0; i < stations.size(); ++i) {
      CHECK(tc.at(i, i) == 0.0);
      for (std::size_t j = 0; j < stations.size(); ++j) {
        CHECK(tc.at(i, j) == doctest::Approx(tc.at(j, i)).epsilon(1e-12));
        if (i == j) continue;
        const double d = haversine_km({stations[i].lat, stations[i].lon},
                                      {stations[j].lat, stations[j].lon});
        CHECK(tc.at(i, j) / d == doctest::Approx(1.723).epsilon(1e-12));
      }
    }
  }
  SUBCASE("worked values") {
    // 100 km at 1.723/km and 1 km at the 2.57/km tanker rate.
    Station a{1, "a", 0.0, 0.0, 0, {}, 0};
    Station b{2, "b", 0.0, 100.0 / 111.19492664455873, 0, {}, 0};
    auto tc = compute_transfer_costs({a, b}, 1.723);
    CHECK(tc.at(0, 1) == doctest::Approx(172.3).epsilon(1e-4));
    b.lon = 1.0 / 111.19492664455873;
    tc = compute_transfer_costs({a, b}, 2.57);
    CHECK(tc.at(0, 1) == doctest::Approx(2.57).epsilon(1e-4));
  }
}

TEST_CASE("prep time arithmetic") {
  CHECK(compute_prep_time(15.0, {}, {}) == doctest::Approx(0.25));
  CHECK(compute_prep_time(15.0, {3.0}, {10.0}) == doctest::Approx(0.75));
  // Boom 5000 ft as 50 hundred-foot bundles, 3 skimmers, 10 gal dispersant.
  CHECK(compute_prep_time(15.0, {50.0, 3.0, 10.0}, {1.0, 5.0, 0.5}) ==
        doctest::Approx(85.0 / 60.0).epsilon(1e-12));

  SUBCASE("monotone in units") {
    Rng rng(11);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<double> units{rng.next_double() * 10, rng.next_double() * 10};
      const std::vector<double> st{rng.next_double() * 5, rng.next_double() * 5};
      const double base = compute_prep_time(15.0, units, st);
      units[trial % 2] += rng.next_double() * 3;
      CHECK(compute_prep_time(15.0, units, st) >= base - 1e-12);
    }
  }
}

TEST_CASE("setup units honor the bundle divisor") {
  const auto units = setup_units_for_demand({5000.0, 3.0, 10.0}, arctic_resources());
  CHECK(units[0] == doctest::Approx(50.0));
  CHECK(units[1] == doctest::Approx(3.0));
  CHECK(units[2] == doctest::Approx(10.0));
}

TEST_CASE("travel times") {
  std::vector<Station> st{{1, "s", 0.0, 0.0, 0, {1.0}, 0}};
  std::vector<SpillEvent> sp{{1, 0.0, 1.85 / 111.19492664455873, 100.0, 1.0},
                             {2, 0.0, 18.5 / 111.19492664455873, 100.0, 1.0},
                             {3, 0.0, 0.0, 100.0, 1.0}};
  const auto theta = compute_travel_times(st, sp, 1.85);
  CHECK(theta.at(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(theta.at(0, 1) == doctest::Approx(10.0).epsilon(1e-6));
  CHECK(theta.at(0, 2) == doctest::Approx(0.0));
}

namespace {

ScenarioSet five_scenarios_for(const std::vector<SpillEvent>& spills,
                               const std::vector<ResourceType>& resources,
                               const ModelConfig& cfg) {
  ScenarioSet set;
  const std::vector<double> probs{0.3751, 0.2178, 0.0696, 0.1980, 0.1395};
  for (int k = 0; k < 5; ++k) {
    Scenario sc;
    sc.id = k + 1;
    sc.probability = probs[k];
    for (const auto& sp : spills) {
      const double v = sp.base_volume * (1.0 + 0.1 * k);
      sc.spill_volume.push_back(v);
      sc.spill_esi.push_back(sp.base_esi);
      sc.demand.push_back(derive_demands(v, cfg, resources));
    }
    set.scenarios.push_back(std::move(sc));
    set.provenance.push_back({k == 0, 0});
  }
  return set;
}

}  // namespace

TEST_CASE("build_instance wiring") {
  auto stations = arctic_stations();
  auto resources = arctic_resources();
  std::vector<SpillEvent> spills;
  for (int o = 0; o < 17; ++o)
    spills.push_back({o + 1, 70.2 + 0.01 * o, -150.5 + 0.12 * o, 100.0 + 40.0 * o,
                      1.0 + 0.5 * (o % 10)});
  ModelConfig cfg;
  cfg.n_max_stations = 2;
  cfg.tau_max_hours = 48.0;

  SUBCASE("table-2 scale instance has 85 spill-scenario pairs") {
    const auto set = five_scenarios_for(spills, resources, cfg);
    const auto inst = build_instance(stations, spills, resources, set, Weights{}, cfg);
    CHECK(inst.num_stations() == 4);
    CHECK(inst.num_spills() == 17);
    CHECK(inst.num_scenarios() == 5);
    CHECK(inst.num_spills() * inst.num_scenarios() == 85);
    CHECK(inst.derived.prep_time.size() == 5);
    // Distance matrix structure.
    for (std::size_t i = 0; i < 4; ++i) {
      CHECK(inst.derived.distance.at(i, i) == 0.0);
      for (std::size_t j = 0; j < 4; ++j)
        CHECK(std::abs(inst.derived.distance.at(i, j) - inst.derived.distance.at(j, i)) < 1e-9);
    }
  }

  SUBCASE("single everything is valid") {
    ScenarioSet one;
    Scenario sc;
    sc.id = 1;
    sc.probability = 1.0;
    sc.spill_volume = {500.0};
    sc.spill_esi = {5.0};
    sc.demand = {derive_demands(500.0, cfg, resources)};
    one.scenarios.push_back(sc);
    one.provenance.push_back({true, 0});
    const auto inst = build_instance({stations[0]}, {spills[0]}, resources, one, Weights{}, cfg);
    CHECK(inst.num_stations() == 1);
  }

  SUBCASE("probability mass error") {
    auto set = five_scenarios_for(spills, resources, cfg);
    set.scenarios[0].probability = 0.2751;  // sums to 0.9
    CHECK_THROWS_WITH_AS(build_instance(stations, spills, resources, set, Weights{}, cfg),
                         doctest::Contains("probabilities sum"), Error);
  }

  SUBCASE("empty station set") {
    const auto set = five_scenarios_for(spills, resources, cfg);
    CHECK_THROWS_AS(build_instance({}, spills, resources, set, Weights{}, cfg), Error);
  }
}

TEST_CASE("normalization") {
  auto resources = arctic_resources();
  ModelConfig cfg;
  cfg.n_max_stations = 1;
  cfg.tau_max_hours = 24.0;

  const auto one_scenario_with = [&](std::vector<double> volumes) {
    std::vector<SpillEvent> spills;
    for (std::size_t o = 0; o < volumes.size(); ++o)
      spills.push_back({static_cast<int>(o) + 1, 70.2, -149.0 - 0.01 * o, volumes[o], 2.0});
    ScenarioSet set;
    Scenario sc;
    sc.id = 1;
    sc.probability = 1.0;
    for (double v : volumes) {
      sc.spill_volume.push_back(v);
      sc.spill_esi.push_back(2.0);
      sc.demand.push_back(derive_demands(v, cfg, resources));
    }
    set.scenarios.push_back(sc);
    set.provenance.push_back({true, 0});
    return build_instance(arctic_stations(), spills, resources, set, Weights{}, cfg);
  };

  SUBCASE("uniform volumes collapse to 1") {
    const auto inst = one_scenario_with({250.0, 250.0, 250.0});
    const auto t = normalize_coverage_terms(inst);
    for (std::size_t o = 0; o < 3; ++o) CHECK(t.v_hat.at(o, 0) == doctest::Approx(1.0));
  }
  SUBCASE("min-max endpoints") {
    const auto inst = one_scenario_with({100.0, 300.0, 500.0});
    const auto t = normalize_coverage_terms(inst);
    CHECK(t.v_hat.at(0, 0) == doctest::Approx(0.0));
    CHECK(t.v_hat.at(1, 0) == doctest::Approx(0.5));
    CHECK(t.v_hat.at(2, 0) == doctest::Approx(1.0));
  }
  SUBCASE("monotone and idempotent over random instances") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
      const auto ri = make_random_tiny_instance(seed);
      const auto t = normalize_coverage_terms(ri.instance);
      const auto& scs = ri.instance.scenarios.scenarios;
      for (std::size_t k = 0; k < scs.size(); ++k) {
        for (std::size_t a = 0; a < scs[k].spill_volume.size(); ++a) {
          CHECK(t.v_hat.at(a, k) >= -1e-12);
          CHECK(t.v_hat.at(a, k) <= 1.0 + 1e-12);
          for (std::size_t b = 0; b < scs[k].spill_volume.size(); ++b) {
            if (scs[k].spill_volume[a] > scs[k].spill_volume[b])
              CHECK(t.v_hat.at(a, k) >= t.v_hat.at(b, k) - 1e-12);
          }
        }
      }
      // Idempotence: normalizing already-normalized values maps onto itself.
      auto renorm = ri.instance;
      for (std::size_t k = 0; k < renorm.scenarios.scenarios.size(); ++k)
        for (std::size_t o = 0; o < renorm.spills.size(); ++o) {
          renorm.scenarios.scenarios[k].spill_volume[o] = t.v_hat.at(o, k);
          renorm.scenarios.scenarios[k].spill_esi[o] = t.eta_hat.at(o, k);
        }
      auto rebuilt = build_instance(renorm.stations, renorm.spills, renorm.resources,
                                    renorm.scenarios, renorm.weights, renorm.config);
      const auto t2 = normalize_coverage_terms(rebuilt);
      for (std::size_t k = 0; k < scs.size(); ++k)
        for (std::size_t o = 0; o < renorm.spills.size(); ++o) {
          CHECK(t2.v_hat.at(o, k) == doctest::Approx(t.v_hat.at(o, k)).epsilon(1e-9));
          CHECK(t2.eta_hat.at(o, k) == doctest::Approx(t.eta_hat.at(o, k)).epsilon(1e-9));
        }
    }
  }
}

TEST_CASE("data_check flags zero-demand spills") {
  auto resources = arctic_resources();
  ModelConfig cfg;
  cfg.n_max_stations = 1;
  cfg.tau_max_hours = 24.0;
  std::vector<SpillEvent> spills{{1, 70.2, -149.0, 100.0, 2.0}};
  ScenarioSet set;
  Scenario sc;
  sc.id = 1;
  sc.probability = 1.0;
  sc.spill_volume = {100.0};
  sc.spill_esi = {2.0};
  sc.demand = {{0.0, 0.0, 0.0}};
  set.scenarios.push_back(sc);
  set.provenance.push_back({true, 0});
  const auto inst = build_instance(arctic_stations(), spills, resources, set, Weights{}, cfg);
  const auto diags = data_check(inst);
  bool flagged = false;
  for (const auto& d : diags)
    flagged = flagged || d.message.find("zero demand") != std::string::npos;
  CHECK(flagged);
}
