#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spillresp/model.hpp"

namespace spillresp {

struct FittedExponential {
  double rate = 0.0;  // 1 / mean(volume - loc)
  double loc = 0.0;
  int sample_size = 0;

  double cdf(double x) const;
  double quantile(double p) const;  // inverse CDF
};

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int n = 0;
};

struct SamplingConfig {
  int n_stochastic = 4;
  std::uint64_t rng_seed = 0;
  double esi_perturbation = 0.1;   // relative half-width for eta resampling
  double validation_tol = 0.25;    // relative deviation limit for mean/std
  bool clamp_to_historical = true; // resample draws outside [0.5 min, 2 max]
};

/// Maximum-likelihood exponential fit.
FittedExponential fit_exponential(const std::vector<double>& volumes, double loc = 0.0);

/// One-sample KS test against the fitted exponential; p-value from the
/// asymptotic Kolmogorov series, clamped to [0, 1].
KsResult ks_test(const std::vector<double>& volumes, const FittedExponential& fitted);

double ks_p_value(double statistic, int n);

/// boom ft = 10 v, dispersant = v / 50, skimmers = ceil(v / shift capacity);
/// resources are matched by name, anything unrecognized gets zero demand.
std::vector<double> derive_demands(double volume_gal, const ModelConfig& config,
                                   const std::vector<ResourceType>& resources);

/// One deterministic scenario copying the historical record plus n_stochastic
/// sampled scenarios. probabilities has length 1 + n_stochastic and sums to 1.
ScenarioSet generate_scenarios(const std::vector<SpillEvent>& historical,
                               const FittedExponential& fitted, const SamplingConfig& sampling,
                               const std::vector<double>& probabilities,
                               const ModelConfig& config,
                               const std::vector<ResourceType>& resources);

struct ScenarioDeviation {
  std::string parameter;
  double historical_mean = 0.0;
  double stochastic_mean = 0.0;
  double mean_rel_dev = 0.0;
  double historical_std = 0.0;
  double stochastic_std = 0.0;
  double std_rel_dev = 0.0;
};

struct ScenarioValidation {
  std::vector<ScenarioDeviation> entries;
  bool pass = true;
};

/// Pooled stochastic-scenario statistics vs the historical record for volume,
/// ESI, and each derived demand.
ScenarioValidation validate_scenarios(const ScenarioSet& set,
                                      const std::vector<SpillEvent>& historical,
                                      const ModelConfig& config,
                                      const std::vector<ResourceType>& resources,
                                      double validation_tol);

}  // namespace spillresp
