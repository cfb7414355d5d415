#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spillresp/util.hpp"

namespace spillresp {

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
};

/// Great-circle distance on a sphere of radius 6371 km.
double haversine_km(const LatLon& a, const LatLon& b);

/// Cheap flat-earth approximation, kept for sensitivity checks at high latitude.
double equirectangular_km(const LatLon& a, const LatLon& b);

enum class DistanceMethod { Haversine, Equirectangular };

double distance_km(const LatLon& a, const LatLon& b, DistanceMethod method);

struct ResourceType {
  int id = 0;
  std::string name;
  double setup_time_min = 0.0;        // minutes per setup unit
  double unit_cost = 0.0;             // currency per demand unit
  double capacity_per_unit = 1.0;     // gallons recoverable per unit per shift
  double demand_per_setup_unit = 1.0; // demand units bundled into one setup unit
};

struct Station {
  int id = 0;
  std::string name;
  double lat = 0.0;
  double lon = 0.0;
  double opening_cost = 0.0;
  std::vector<double> inventory;  // indexed by resource
  double base_delay_min = 15.0;
};

struct SpillEvent {
  int id = 0;
  double lat = 0.0;
  double lon = 0.0;
  double base_volume = 0.0;  // gallons
  double base_esi = 0.0;
};

struct Scenario {
  int id = 0;
  double probability = 0.0;
  std::vector<double> spill_volume;          // per spill
  std::vector<double> spill_esi;             // per spill
  std::vector<std::vector<double>> demand;   // [spill][resource]
};

struct ScenarioProvenance {
  bool deterministic = false;
  std::uint64_t seed = 0;
};

struct ScenarioSet {
  std::vector<Scenario> scenarios;
  std::vector<ScenarioProvenance> provenance;  // parallel to scenarios
};

struct Weights {
  double omega1 = 1.0 / 3.0;
  double omega2 = 1.0 / 3.0;
  double omega3 = 1.0 / 3.0;
  double k1 = 0.5;
  double k2 = 0.5;
};

void validate_weights(const Weights& w);

struct EligibilityRule {
  enum class Kind { TravelTime, Radius, ExplicitPairs };
  Kind kind = Kind::TravelTime;
  double radius_km = 0.0;
  std::vector<std::pair<int, int>> pairs;  // (spill o, station i)
};

struct ModelConfig {
  int n_max_stations = 1;
  double tau_max_hours = 24.0;
  double boat_speed_kmh = 1.85;
  double boom_ft_per_gal = 10.0;
  double dispersant_ratio = 1.0 / 50.0;
  double skimmer_shift_capacity = 200.0;  // gallons per shift
  double transfer_alpha = 1.723;          // currency per unit-km between stations
  double deployment_rate = 1.0;           // currency per unit-km station -> spill
  EligibilityRule eligibility;
  DistanceMethod distance_method = DistanceMethod::Haversine;
  bool clamp_samples_to_historical = true;
};

struct NormalizationStats {
  double v_min = 0.0;
  double v_max = 0.0;
  double eta_min = 0.0;
  double eta_max = 0.0;
  double t_scale = 1.0;  // tau_max
};

struct DerivedMatrices {
  Matrix distance;           // station x station, km
  Matrix distance_to_spill;  // station x spill, km
  Matrix travel_time;        // station x spill, hours
  std::vector<Matrix> prep_time;  // per scenario: station x spill, hours
  Matrix transfer_cost;      // station x station, currency per unit
  Matrix deploy_cost;        // station x spill, currency per unit
};

struct ProblemInstance {
  std::vector<Station> stations;
  std::vector<SpillEvent> spills;
  std::vector<ResourceType> resources;
  ScenarioSet scenarios;
  std::vector<std::pair<int, int>> pairs;  // eligibility set P, entries (o, i)
  Weights weights;
  ModelConfig config;
  DerivedMatrices derived;
  NormalizationStats normalization;

  std::size_t num_stations() const { return stations.size(); }
  std::size_t num_spills() const { return spills.size(); }
  std::size_t num_resources() const { return resources.size(); }
  std::size_t num_scenarios() const { return scenarios.scenarios.size(); }
  bool pair_eligible(int spill, int station) const;
};

/// tc[i][j] = alpha * d_ij off the diagonal, 0 on it.
Matrix compute_transfer_costs(const std::vector<Station>& stations, double alpha,
                              DistanceMethod method = DistanceMethod::Haversine);

/// theta[i][o] = d(station_i, spill_o) / boat_speed, in hours.
Matrix compute_travel_times(const std::vector<Station>& stations,
                            const std::vector<SpillEvent>& spills, double boat_speed_kmh,
                            DistanceMethod method = DistanceMethod::Haversine);

/// (base_delay + sum_r units_r * setup_time_r) / 60, in hours.
double compute_prep_time(double base_delay_min, const std::vector<double>& setup_units,
                         const std::vector<double>& setup_times_min);

/// Demand quantities -> setup units (boom feet are bundled per resource config).
std::vector<double> setup_units_for_demand(const std::vector<double>& demand,
                                           const std::vector<ResourceType>& resources);

/// Assembles and validates a complete instance: derived matrices, eligibility
/// pairs, and normalization stats over the pooled spill-scenario population.
ProblemInstance build_instance(std::vector<Station> stations, std::vector<SpillEvent> spills,
                               std::vector<ResourceType> resources, ScenarioSet scenarios,
                               Weights weights, ModelConfig config);

struct NormalizedTerms {
  Matrix v_hat;    // spill x scenario
  Matrix eta_hat;  // spill x scenario
};

/// Min-max normalization of v and eta over the pooled population; a degenerate
/// range maps to 1.0.
NormalizedTerms normalize_coverage_terms(const ProblemInstance& instance);

struct Diagnostic {
  enum class Severity { Warning, Error };
  Severity severity = Severity::Error;
  std::string message;
};

/// Itemized DataCheck over a built instance (degenerate spills, uncoverable
/// spills, prep-time consistency with the stated operational-delay bound).
std::vector<Diagnostic> data_check(const ProblemInstance& instance);

}  // namespace spillresp
