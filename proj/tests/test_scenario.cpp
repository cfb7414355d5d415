#include <cmath>

#include "doctest.h"
#include "spillresp/error.hpp"
#include "spillresp/scenario.hpp"
#include "support.hpp"

using namespace spillresp;
using namespace spillresp::testing;

TEST_CASE("exponential MLE fit") {
  CHECK(fit_exponential({250.0, 250.0, 250.0}).rate == doctest::Approx(1.0 / 250.0));
  CHECK(fit_exponential({100.0, 300.0}).rate == doctest::Approx(1.0 / 200.0));
  CHECK_THROWS_AS(fit_exponential({100.0}), Error);
  CHECK_THROWS_AS(fit_exponential({100.0, -5.0}), Error);

  // 17 synthetic volumes; the MLE rate must equal 1 / sample mean computed here.
  std::vector<double> v;
  double sum = 0.0;
  for (int i = 0; i < 17; ++i) {
    v.push_back(40.0 + 13.7 * i * i);
    sum += v.back();
  }
  CHECK(fit_exponential(v).rate == doctest::Approx(17.0 / sum).epsilon(1e-12));
  CHECK(fit_exponential(v).sample_size == 17);
}

TEST_CASE("KS statistic geometry and p-value") {
  SUBCASE("quantile-matched sample gives D = 0.5/n") {
    FittedExponential f;
    f.rate = 1.0 / 200.0;
    const int n = 10;
    std::vector<double> sample;
    for (int i = 1; i <= n; ++i) sample.push_back(f.quantile((i - 0.5) / n));
    const auto ks = ks_test(sample, f);
    CHECK(ks.statistic == doctest::Approx(0.5 / n).epsilon(1e-9));
  }
  SUBCASE("p -> 1 as D -> 0") {
    CHECK(ks_p_value(0.0, 20) == doctest::Approx(1.0));
    CHECK(ks_p_value(1e-9, 50) == doctest::Approx(1.0));
  }
  SUBCASE("p monotone decreasing in D for fixed n") {
    for (int n : {5, 17, 50, 200}) {
      double prev = 1.0 + 1e-12;
      for (double d = 0.01; d <= 0.9; d += 0.01) {
        const double p = ks_p_value(d, n);
        CHECK(p <= prev + 1e-12);
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        prev = p;
      }
    }
  }
  SUBCASE("matches an offline statistics library run") {
    // 50 gamma-distributed draws, frozen; reference D and asymptotic p were
    // computed offline with scipy.stats.kstest(..., mode='asymp') against the
    // fitted exponential.
    const std::vector<double> sample{
        63.219884, 116.459456, 235.691822, 67.658983, 326.639302, 129.894263, 170.03902,
        435.985225, 378.916688, 603.434796, 468.780489, 220.600939, 69.638039, 754.809568,
        432.771401, 106.480368, 64.117199, 425.712662, 79.568178, 315.620637, 585.388516,
        237.407487, 277.262959, 262.028402, 343.730594, 367.382893, 389.878237, 312.717897,
        305.306177, 236.450886, 177.961849, 47.886793, 408.374929, 398.298246, 112.238339,
        251.386312, 95.194491, 713.987869, 122.959248, 209.145093, 38.572881, 154.922599,
        95.414927, 424.590728, 229.221334, 465.164304, 315.503132, 186.64844, 105.770432,
        205.569964};
    const auto fitted = fit_exponential(sample);
    const auto ks = ks_test(sample, fitted);
    CHECK(std::abs(ks.statistic - 0.16817473748018327) < 0.01);
    CHECK(std::abs(ks.p_value - 0.11820514425895981) < 0.01);
  }
}

TEST_CASE("demand derivation ratios") {
  ModelConfig cfg;
  const auto resources = arctic_resources();
  const auto d500 = derive_demands(500.0, cfg, resources);
  CHECK(d500[0] == doctest::Approx(5000.0));  // 10 ft of boom per gallon
  CHECK(d500[1] == doctest::Approx(3.0));     // ceil(500 / 200) skimmers
  CHECK(d500[2] == doctest::Approx(10.0));    // 1:50 dispersant
  const auto d0 = derive_demands(0.0, cfg, resources);
  for (double q : d0) CHECK(q == 0.0);

  SUBCASE("monotone in volume") {
    Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const double a = rng.next_double() * 2000.0;
      const double b = a + rng.next_double() * 500.0;
      const auto da = derive_demands(a, cfg, resources);
      const auto db = derive_demands(b, cfg, resources);
      for (std::size_t r = 0; r < da.size(); ++r) CHECK(db[r] >= da[r] - 1e-12);
    }
  }
}

namespace {

std::vector<SpillEvent> seventeen_spills() {
  std::vector<SpillEvent> spills;
  for (int o = 0; o < 17; ++o)
    spills.push_back({o + 1, 70.2 + 0.01 * o, -150.5 + 0.1 * o, 60.0 + 90.0 * o,
                      1.0 + (o % 9)});
  return spills;
}

SamplingConfig default_sampling(std::uint64_t seed) {
  SamplingConfig s;
  s.n_stochastic = 4;
  s.rng_seed = seed;
  return s;
}

const std::vector<double> kPaperProbs{0.3751, 0.2178, 0.0696, 0.1980, 0.1395};

}  // namespace

TEST_CASE("scenario generation") {
  const auto spills = seventeen_spills();
  const auto resources = arctic_resources();
  ModelConfig cfg;
  std::vector<double> volumes;
  for (const auto& sp : spills) volumes.push_back(sp.base_volume);
  const auto fitted = fit_exponential(volumes);

  SUBCASE("five scenarios, 85 spill-scenario instances") {
    const auto set =
        generate_scenarios(spills, fitted, default_sampling(42), kPaperProbs, cfg, resources);
    CHECK(set.scenarios.size() == 5);
    CHECK(set.scenarios.size() * spills.size() == 85);
    int det = 0;
    for (const auto& p : set.provenance) det += p.deterministic ? 1 : 0;
    CHECK(det == 1);
    // Scenario 1 copies the record bit-exactly.
    for (std::size_t o = 0; o < spills.size(); ++o) {
      CHECK(set.scenarios[0].spill_volume[o] == spills[o].base_volume);
      CHECK(set.scenarios[0].spill_esi[o] == spills[o].base_esi);
    }
    // Demands follow the ratios in every scenario.
    for (const auto& sc : set.scenarios)
      for (std::size_t o = 0; o < spills.size(); ++o) {
        const auto expect = derive_demands(sc.spill_volume[o], cfg, resources);
        for (std::size_t r = 0; r < resources.size(); ++r)
          CHECK(sc.demand[o][r] == doctest::Approx(expect[r]));
      }
  }

  SUBCASE("zero ESI perturbation keeps historical sensitivity") {
    auto sampling = default_sampling(42);
    sampling.esi_perturbation = 0.0;
    const auto set = generate_scenarios(spills, fitted, sampling, kPaperProbs, cfg, resources);
    for (const auto& sc : set.scenarios)
      for (std::size_t o = 0; o < spills.size(); ++o)
        CHECK(sc.spill_esi[o] == doctest::Approx(spills[o].base_esi));
  }

  SUBCASE("fixed seed reproduces the set exactly") {
    const auto a =
        generate_scenarios(spills, fitted, default_sampling(9001), kPaperProbs, cfg, resources);
    const auto b =
        generate_scenarios(spills, fitted, default_sampling(9001), kPaperProbs, cfg, resources);
    REQUIRE(a.scenarios.size() == b.scenarios.size());
    for (std::size_t k = 0; k < a.scenarios.size(); ++k) {
      for (std::size_t o = 0; o < spills.size(); ++o) {
        CHECK(a.scenarios[k].spill_volume[o] == b.scenarios[k].spill_volume[o]);
        CHECK(a.scenarios[k].spill_esi[o] == b.scenarios[k].spill_esi[o]);
        for (std::size_t r = 0; r < resources.size(); ++r)
          CHECK(a.scenarios[k].demand[o][r] == b.scenarios[k].demand[o][r]);
      }
    }
  }

  SUBCASE("probability mass must close") {
    CHECK_THROWS_AS(generate_scenarios(spills, fitted, default_sampling(1),
                                       {0.5, 0.1, 0.1, 0.1, 0.1}, cfg, resources),
                    Error);
  }

  SUBCASE("large-sample mean approaches 1/rate") {
    auto sampling = default_sampling(5);
    sampling.n_stochastic = 200;
    sampling.clamp_to_historical = false;
    std::vector<double> probs(201, 0.5 / 200.0);
    probs[0] = 0.5;
    const auto set = generate_scenarios(spills, fitted, sampling, probs, cfg, resources);
    double sum = 0.0;
    long count = 0;
    for (std::size_t k = 1; k < set.scenarios.size(); ++k)
      for (double v : set.scenarios[k].spill_volume) {
        sum += v;
        ++count;
      }
    const double mean = sum / count;
    CHECK(std::abs(mean - 1.0 / fitted.rate) / (1.0 / fitted.rate) < 0.10);
  }
}

TEST_CASE("scenario validation against the historical record") {
  const auto spills = seventeen_spills();
  const auto resources = arctic_resources();
  ModelConfig cfg;

  SUBCASE("stochastic copies of the record deviate by zero") {
    ScenarioSet set;
    for (int k = 0; k < 3; ++k) {
      Scenario sc;
      sc.id = k + 1;
      sc.probability = k == 0 ? 0.5 : 0.25;
      for (const auto& sp : spills) {
        sc.spill_volume.push_back(sp.base_volume);
        sc.spill_esi.push_back(sp.base_esi);
        sc.demand.push_back(derive_demands(sp.base_volume, cfg, resources));
      }
      set.scenarios.push_back(std::move(sc));
      set.provenance.push_back({k == 0, 0});
    }
    const auto val = validate_scenarios(set, spills, cfg, resources, 0.25);
    CHECK(val.pass);
    for (const auto& e : val.entries) {
      CHECK(e.mean_rel_dev == doctest::Approx(0.0));
      CHECK(e.std_rel_dev == doctest::Approx(0.0));
    }
  }

  SUBCASE("doubled volumes fail at tol 0.25") {
    ScenarioSet set;
    for (int k = 0; k < 3; ++k) {
      Scenario sc;
      sc.id = k + 1;
      sc.probability = k == 0 ? 0.5 : 0.25;
      for (const auto& sp : spills) {
        const double v = k == 0 ? sp.base_volume : 2.0 * sp.base_volume;
        sc.spill_volume.push_back(v);
        sc.spill_esi.push_back(sp.base_esi);
        sc.demand.push_back(derive_demands(v, cfg, resources));
      }
      set.scenarios.push_back(std::move(sc));
      set.provenance.push_back({k == 0, 0});
    }
    CHECK_FALSE(validate_scenarios(set, spills, cfg, resources, 0.25).pass);
  }
}
