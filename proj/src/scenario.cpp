#include "spillresp/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "spillresp/error.hpp"

namespace spillresp {

double FittedExponential::cdf(double x) const {
  if (x <= loc) return 0.0;
  return 1.0 - std::exp(-rate * (x - loc));
}

double FittedExponential::quantile(double p) const {
  require(p >= 0.0 && p < 1.0, ErrorCode::InvalidArgument, "quantile argument in [0,1)");
  return loc - std::log(1.0 - p) / rate;
}

FittedExponential fit_exponential(const std::vector<double>& volumes, double loc) {
  require(volumes.size() >= 2, ErrorCode::InsufficientData,
          "exponential fit needs at least two observations");
  double sum = 0.0;
  for (double v : volumes) {
    require(v > 0.0, ErrorCode::NonPositiveVolume, "volumes must be strictly positive");
    require(v > loc, ErrorCode::NonPositiveVolume, "volume must exceed the location offset");
    sum += v - loc;
  }
  FittedExponential f;
  f.loc = loc;
  f.rate = static_cast<double>(volumes.size()) / sum;
  f.sample_size = static_cast<int>(volumes.size());
  return f;
}

double ks_p_value(double statistic, int n) {
  // Asymptotic Kolmogorov tail: 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 n D^2).
  const double lambda2 = static_cast<double>(n) * statistic * statistic;
  if (lambda2 < 1e-6) return 1.0;  // series does not converge at D -> 0
  double p = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 200; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda2);
    p += sign * term;
    sign = -sign;
    if (term < 1e-12) break;
  }
  p *= 2.0;
  return std::clamp(p, 0.0, 1.0);
}

KsResult ks_test(const std::vector<double>& volumes, const FittedExponential& fitted) {
  require(volumes.size() >= 2, ErrorCode::InsufficientData, "KS test needs at least two values");
  require(fitted.rate > 0.0, ErrorCode::InvalidArgument, "fitted rate must be positive");
  std::vector<double> sorted = volumes;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = fitted.cdf(sorted[i]);
    const double lo = static_cast<double>(i) / n;        // empirical CDF left of x_i
    const double hi = static_cast<double>(i + 1) / n;    // and at x_i
    d = std::max(d, std::max(f - lo, hi - f));
  }
  KsResult r;
  r.statistic = d;
  r.n = static_cast<int>(sorted.size());
  r.p_value = ks_p_value(d, r.n);
  return r;
}

namespace {

enum class DemandKind { Boom, Skimmer, Dispersant, Other };

DemandKind classify_resource(const std::string& name) {
  std::string lower;
  lower.reserve(name.size());
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(c)));
  if (lower.find("boom") != std::string::npos) return DemandKind::Boom;
  if (lower.find("skim") != std::string::npos) return DemandKind::Skimmer;
  if (lower.find("dispers") != std::string::npos) return DemandKind::Dispersant;
  return DemandKind::Other;
}

}  // namespace

std::vector<double> derive_demands(double volume_gal, const ModelConfig& config,
                                   const std::vector<ResourceType>& resources) {
  require(volume_gal >= 0.0, ErrorCode::NegativeParameter, "volume must be nonnegative");
  std::vector<double> demand(resources.size(), 0.0);
  for (std::size_t r = 0; r < resources.size(); ++r) {
    switch (classify_resource(resources[r].name)) {
      case DemandKind::Boom:
        demand[r] = config.boom_ft_per_gal * volume_gal;
        break;
      case DemandKind::Dispersant:
        demand[r] = config.dispersant_ratio * volume_gal;
        break;
      case DemandKind::Skimmer: {
        const double cap = resources[r].capacity_per_unit > 0.0 ? resources[r].capacity_per_unit
                                                                : config.skimmer_shift_capacity;
        demand[r] = volume_gal > 0.0 ? std::ceil(volume_gal / cap) : 0.0;
        break;
      }
      case DemandKind::Other:
        demand[r] = 0.0;
        break;
    }
  }
  return demand;
}

ScenarioSet generate_scenarios(const std::vector<SpillEvent>& historical,
                               const FittedExponential& fitted, const SamplingConfig& sampling,
                               const std::vector<double>& probabilities,
                               const ModelConfig& config,
                               const std::vector<ResourceType>& resources) {
  require(!historical.empty(), ErrorCode::EmptySet, "no historical spills");
  require(sampling.n_stochastic >= 1, ErrorCode::InvalidArgument, "n_stochastic must be >= 1");
  require(probabilities.size() == static_cast<std::size_t>(1 + sampling.n_stochastic),
          ErrorCode::ProbabilityMass, "need one probability per scenario");
  double mass = 0.0;
  for (double p : probabilities) mass += p;
  require(std::abs(mass - 1.0) <= 1e-6, ErrorCode::ProbabilityMass,
          "scenario probabilities sum to " + fmt_double(mass) + ", expected 1");

  double v_lo = historical[0].base_volume, v_hi = historical[0].base_volume;
  for (const auto& sp : historical) {
    v_lo = std::min(v_lo, sp.base_volume);
    v_hi = std::max(v_hi, sp.base_volume);
  }
  const double clamp_lo = 0.5 * v_lo;
  const double clamp_hi = 2.0 * v_hi;

  ScenarioSet set;
  Rng rng(sampling.rng_seed);

  const std::size_t no = historical.size();
  for (int k = 0; k < 1 + sampling.n_stochastic; ++k) {
    Scenario sc;
    sc.id = k + 1;
    sc.probability = probabilities[k];
    sc.spill_volume.resize(no);
    sc.spill_esi.resize(no);
    sc.demand.resize(no);
    const bool deterministic = (k == 0);
    for (std::size_t o = 0; o < no; ++o) {
      if (deterministic) {
        sc.spill_volume[o] = historical[o].base_volume;
        sc.spill_esi[o] = historical[o].base_esi;
      } else {
        double v = fitted.quantile(rng.next_double());
        if (sampling.clamp_to_historical) {
          int retries = 0;
          while ((v < clamp_lo || v > clamp_hi) && retries < 64) {
            v = fitted.quantile(rng.next_double());
            ++retries;
          }
          v = std::clamp(v, clamp_lo, clamp_hi);
        }
        sc.spill_volume[o] = v;
        const double u = 2.0 * rng.next_double() - 1.0;
        sc.spill_esi[o] =
            std::max(0.0, historical[o].base_esi * (1.0 + sampling.esi_perturbation * u));
      }
      sc.demand[o] = derive_demands(sc.spill_volume[o], config, resources);
    }
    set.scenarios.push_back(std::move(sc));
    set.provenance.push_back({deterministic, deterministic ? 0 : sampling.rng_seed});
  }
  return set;
}

namespace {

ScenarioDeviation deviation_for(const std::string& name, const std::vector<double>& hist,
                                const std::vector<double>& stoch) {
  ScenarioDeviation d;
  d.parameter = name;
  d.historical_mean = mean_of(hist);
  d.stochastic_mean = mean_of(stoch);
  d.historical_std = stddev_of(hist);
  d.stochastic_std = stddev_of(stoch);
  const auto rel = [](double ref, double val) {
    if (std::abs(ref) < 1e-12) return std::abs(val) < 1e-12 ? 0.0 : 1.0;
    return std::abs(val - ref) / std::abs(ref);
  };
  d.mean_rel_dev = rel(d.historical_mean, d.stochastic_mean);
  d.std_rel_dev = rel(d.historical_std, d.stochastic_std);
  return d;
}

}  // namespace

ScenarioValidation validate_scenarios(const ScenarioSet& set,
                                      const std::vector<SpillEvent>& historical,
                                      const ModelConfig& config,
                                      const std::vector<ResourceType>& resources,
                                      double validation_tol) {
  require(validation_tol > 0.0 && validation_tol <= 1.0, ErrorCode::InvalidArgument,
          "validation tolerance in (0, 1]");
  std::size_t stochastic = 0;
  for (std::size_t k = 0; k < set.scenarios.size(); ++k)
    if (k >= set.provenance.size() || !set.provenance[k].deterministic) ++stochastic;
  require(stochastic >= 2, ErrorCode::InsufficientData,
          "scenario validation needs at least two stochastic scenarios");

  std::vector<double> hist_v, hist_eta;
  std::vector<std::vector<double>> hist_demand(resources.size());
  for (const auto& sp : historical) {
    hist_v.push_back(sp.base_volume);
    hist_eta.push_back(sp.base_esi);
    const auto d = derive_demands(sp.base_volume, config, resources);
    for (std::size_t r = 0; r < resources.size(); ++r) hist_demand[r].push_back(d[r]);
  }

  std::vector<double> st_v, st_eta;
  std::vector<std::vector<double>> st_demand(resources.size());
  for (std::size_t k = 0; k < set.scenarios.size(); ++k) {
    if (k < set.provenance.size() && set.provenance[k].deterministic) continue;
    const auto& sc = set.scenarios[k];
    for (std::size_t o = 0; o < sc.spill_volume.size(); ++o) {
      st_v.push_back(sc.spill_volume[o]);
      st_eta.push_back(sc.spill_esi[o]);
      for (std::size_t r = 0; r < resources.size(); ++r) st_demand[r].push_back(sc.demand[o][r]);
    }
  }

  ScenarioValidation out;
  out.entries.push_back(deviation_for("volume", hist_v, st_v));
  out.entries.push_back(deviation_for("esi", hist_eta, st_eta));
  for (std::size_t r = 0; r < resources.size(); ++r)
    out.entries.push_back(
        deviation_for("demand:" + resources[r].name, hist_demand[r], st_demand[r]));
  for (const auto& e : out.entries)
    out.pass = out.pass && e.mean_rel_dev <= validation_tol && e.std_rel_dev <= validation_tol;
  return out;
}

}  // namespace spillresp
