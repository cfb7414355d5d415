#include "spillresp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "spillresp/error.hpp"

namespace spillresp {

namespace {
constexpr double kEarthRadiusKm = 6371.0;

double deg2rad(double d) { return d * std::numbers::pi / 180.0; }

void check_coord(const LatLon& p) {
  require(p.lat >= -90.0 && p.lat <= 90.0 && p.lon >= -180.0 && p.lon <= 180.0,
          ErrorCode::InvalidArgument, "coordinate out of range");
}
}  // namespace

double haversine_km(const LatLon& a, const LatLon& b) {
  const double phi1 = deg2rad(a.lat);
  const double phi2 = deg2rad(b.lat);
  const double dphi = deg2rad(b.lat - a.lat);
  const double dlam = deg2rad(b.lon - a.lon);
  const double s = std::sin(dphi / 2.0);
  const double t = std::sin(dlam / 2.0);
  const double h = s * s + std::cos(phi1) * std::cos(phi2) * t * t;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

double equirectangular_km(const LatLon& a, const LatLon& b) {
  const double x = deg2rad(b.lon - a.lon) * std::cos(deg2rad((a.lat + b.lat) / 2.0));
  const double y = deg2rad(b.lat - a.lat);
  return kEarthRadiusKm * std::sqrt(x * x + y * y);
}

double distance_km(const LatLon& a, const LatLon& b, DistanceMethod method) {
  check_coord(a);
  check_coord(b);
  return method == DistanceMethod::Haversine ? haversine_km(a, b) : equirectangular_km(a, b);
}

bool ProblemInstance::pair_eligible(int spill, int station) const {
  return std::find(pairs.begin(), pairs.end(), std::make_pair(spill, station)) != pairs.end();
}

Matrix compute_transfer_costs(const std::vector<Station>& stations, double alpha,
                              DistanceMethod method) {
  require(alpha > 0.0, ErrorCode::NegativeParameter, "transfer alpha must be positive");
  const std::size_t n = stations.size();
  Matrix tc(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance_km({stations[i].lat, stations[i].lon},
                                   {stations[j].lat, stations[j].lon}, method);
      tc.at(i, j) = alpha * d;
      tc.at(j, i) = tc.at(i, j);
    }
  }
  return tc;
}

Matrix compute_travel_times(const std::vector<Station>& stations,
                            const std::vector<SpillEvent>& spills, double boat_speed_kmh,
                            DistanceMethod method) {
  require(boat_speed_kmh > 0.0, ErrorCode::NegativeParameter, "boat speed must be positive");
  Matrix theta(stations.size(), spills.size(), 0.0);
  for (std::size_t i = 0; i < stations.size(); ++i) {
    for (std::size_t o = 0; o < spills.size(); ++o) {
      const double d = distance_km({stations[i].lat, stations[i].lon},
                                   {spills[o].lat, spills[o].lon}, method);
      theta.at(i, o) = d / boat_speed_kmh;
    }
  }
  return theta;
}

double compute_prep_time(double base_delay_min, const std::vector<double>& setup_units,
                         const std::vector<double>& setup_times_min) {
  require(base_delay_min >= 0.0, ErrorCode::NegativeParameter, "base delay must be nonnegative");
  require(setup_units.size() == setup_times_min.size(), ErrorCode::DimensionMismatch,
          "setup unit and setup time vectors differ in length");
  double minutes = base_delay_min;
  for (std::size_t r = 0; r < setup_units.size(); ++r) {
    require(setup_units[r] >= 0.0 && setup_times_min[r] >= 0.0, ErrorCode::NegativeParameter,
            "setup inputs must be nonnegative");
    minutes += setup_units[r] * setup_times_min[r];
  }
  return minutes / 60.0;
}

std::vector<double> setup_units_for_demand(const std::vector<double>& demand,
                                           const std::vector<ResourceType>& resources) {
  require(demand.size() == resources.size(), ErrorCode::DimensionMismatch,
          "demand vector does not match resource list");
  std::vector<double> units(demand.size());
  for (std::size_t r = 0; r < demand.size(); ++r) {
    const double per = resources[r].demand_per_setup_unit;
    require(per > 0.0, ErrorCode::NegativeParameter, "demand_per_setup_unit must be positive");
    units[r] = demand[r] / per;
  }
  return units;
}

void validate_weights(const Weights& w) {
  const double eps = 1e-9;
  for (double v : {w.omega1, w.omega2, w.omega3, w.k1, w.k2}) {
    require(v >= -eps && v <= 1.0 + eps, ErrorCode::InvalidArgument,
            "weights must lie in [0, 1]");
  }
  require(std::abs(w.omega1 + w.omega2 + w.omega3 - 1.0) <= eps, ErrorCode::InvalidArgument,
          "omega weights must sum to 1");
  require(std::abs(w.k1 + w.k2 - 1.0) <= eps, ErrorCode::InvalidArgument,
          "importance factors must sum to 1");
}

namespace {

void validate_sets(const ProblemInstance& inst) {
  require(!inst.stations.empty(), ErrorCode::EmptySet, "no stations");
  require(!inst.resources.empty(), ErrorCode::EmptySet, "no resources");
  require(!inst.scenarios.scenarios.empty(), ErrorCode::EmptySet, "no scenarios");
  // An empty spill set is legal: the model degenerates to the station-budget
  // problem and the optimum opens nothing.

  double mass = 0.0;
  for (const auto& sc : inst.scenarios.scenarios) {
    require(sc.probability > 0.0 && sc.probability <= 1.0, ErrorCode::ProbabilityMass,
            "scenario probability must lie in (0, 1]");
    mass += sc.probability;
    require(sc.spill_volume.size() == inst.spills.size() &&
                sc.spill_esi.size() == inst.spills.size() &&
                sc.demand.size() == inst.spills.size(),
            ErrorCode::DimensionMismatch, "scenario arrays must cover every spill");
    for (const auto& d : sc.demand) {
      require(d.size() == inst.resources.size(), ErrorCode::DimensionMismatch,
              "scenario demand rows must cover every resource");
      for (double q : d)
        require(q >= 0.0, ErrorCode::NegativeParameter, "scenario demand must be nonnegative");
    }
    for (double v : sc.spill_volume)
      require(v >= 0.0, ErrorCode::NegativeParameter, "spill volume must be nonnegative");
    for (double e : sc.spill_esi)
      require(e >= 0.0, ErrorCode::NegativeParameter, "ESI must be nonnegative");
  }
  require(std::abs(mass - 1.0) <= 1e-6, ErrorCode::ProbabilityMass,
          "scenario probabilities sum to " + fmt_double(mass) + ", expected 1");

  for (const auto& s : inst.stations) {
    require(s.opening_cost >= 0.0, ErrorCode::NegativeParameter, "opening cost negative");
    require(s.base_delay_min >= 0.0, ErrorCode::NegativeParameter, "base delay negative");
    require(s.inventory.size() == inst.resources.size(), ErrorCode::DimensionMismatch,
            "station inventory must cover every resource");
    for (double q : s.inventory)
      require(q >= 0.0, ErrorCode::NegativeParameter, "inventory negative");
    check_coord({s.lat, s.lon});
  }
  for (const auto& sp : inst.spills) {
    require(sp.base_volume > 0.0, ErrorCode::NegativeParameter, "spill volume must be positive");
    require(sp.base_esi >= 0.0, ErrorCode::NegativeParameter, "spill ESI negative");
    check_coord({sp.lat, sp.lon});
  }

  const auto& cfg = inst.config;
  require(cfg.n_max_stations > 0, ErrorCode::NegativeParameter, "n_max_stations must be positive");
  require(cfg.tau_max_hours > 0.0, ErrorCode::NegativeParameter, "tau_max must be positive");
  require(cfg.boat_speed_kmh > 0.0, ErrorCode::NegativeParameter, "boat speed must be positive");
  require(cfg.transfer_alpha > 0.0, ErrorCode::NegativeParameter, "alpha must be positive");
  require(cfg.deployment_rate > 0.0, ErrorCode::NegativeParameter,
          "deployment rate must be positive");
  validate_weights(inst.weights);
}

std::vector<std::pair<int, int>> materialize_pairs(const ProblemInstance& inst) {
  const auto& rule = inst.config.eligibility;
  std::vector<std::pair<int, int>> pairs;
  if (rule.kind == EligibilityRule::Kind::ExplicitPairs) {
    for (auto [o, i] : rule.pairs) {
      require(o >= 0 && o < static_cast<int>(inst.spills.size()) && i >= 0 &&
                  i < static_cast<int>(inst.stations.size()),
              ErrorCode::CrossRefError, "eligibility pair references unknown spill or station");
      pairs.emplace_back(o, i);
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
  }
  for (int o = 0; o < static_cast<int>(inst.spills.size()); ++o) {
    for (int i = 0; i < static_cast<int>(inst.stations.size()); ++i) {
      if (rule.kind == EligibilityRule::Kind::Radius) {
        if (inst.derived.distance_to_spill.at(i, o) <= rule.radius_km) pairs.emplace_back(o, i);
      } else {
        if (inst.derived.travel_time.at(i, o) <= inst.config.tau_max_hours)
          pairs.emplace_back(o, i);
      }
    }
  }
  return pairs;
}

}  // namespace

ProblemInstance build_instance(std::vector<Station> stations, std::vector<SpillEvent> spills,
                               std::vector<ResourceType> resources, ScenarioSet scenarios,
                               Weights weights, ModelConfig config) {
  ProblemInstance inst;
  inst.stations = std::move(stations);
  inst.spills = std::move(spills);
  inst.resources = std::move(resources);
  inst.scenarios = std::move(scenarios);
  inst.weights = weights;
  inst.config = std::move(config);
  validate_sets(inst);

  const std::size_t ni = inst.stations.size();
  const std::size_t no = inst.spills.size();
  const auto method = inst.config.distance_method;

  inst.derived.distance = Matrix(ni, ni, 0.0);
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t j = i + 1; j < ni; ++j) {
      const double d = distance_km({inst.stations[i].lat, inst.stations[i].lon},
                                   {inst.stations[j].lat, inst.stations[j].lon}, method);
      inst.derived.distance.at(i, j) = d;
      inst.derived.distance.at(j, i) = d;
    }

  inst.derived.distance_to_spill = Matrix(ni, no, 0.0);
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t o = 0; o < no; ++o)
      inst.derived.distance_to_spill.at(i, o) =
          distance_km({inst.stations[i].lat, inst.stations[i].lon},
                      {inst.spills[o].lat, inst.spills[o].lon}, method);

  inst.derived.travel_time =
      compute_travel_times(inst.stations, inst.spills, inst.config.boat_speed_kmh, method);
  inst.derived.transfer_cost =
      compute_transfer_costs(inst.stations, inst.config.transfer_alpha, method);

  inst.derived.deploy_cost = Matrix(ni, no, 0.0);
  for (std::size_t i = 0; i < ni; ++i)
    for (std::size_t o = 0; o < no; ++o)
      inst.derived.deploy_cost.at(i, o) =
          inst.config.deployment_rate * inst.derived.distance_to_spill.at(i, o);

  std::vector<double> setup_times(inst.resources.size());
  for (std::size_t r = 0; r < inst.resources.size(); ++r)
    setup_times[r] = inst.resources[r].setup_time_min;

  inst.derived.prep_time.clear();
  for (const auto& sc : inst.scenarios.scenarios) {
    Matrix pt(ni, no, 0.0);
    for (std::size_t o = 0; o < no; ++o) {
      const auto units = setup_units_for_demand(sc.demand[o], inst.resources);
      for (std::size_t i = 0; i < ni; ++i)
        pt.at(i, o) = compute_prep_time(inst.stations[i].base_delay_min, units, setup_times);
    }
    inst.derived.prep_time.push_back(std::move(pt));
  }

  inst.pairs = materialize_pairs(inst);

  // Pooled min-max stats over every spill-scenario realization.
  NormalizationStats ns;
  bool first = true;
  for (const auto& sc : inst.scenarios.scenarios) {
    for (std::size_t o = 0; o < no; ++o) {
      const double v = sc.spill_volume[o];
      const double e = sc.spill_esi[o];
      if (first) {
        ns.v_min = ns.v_max = v;
        ns.eta_min = ns.eta_max = e;
        first = false;
      } else {
        ns.v_min = std::min(ns.v_min, v);
        ns.v_max = std::max(ns.v_max, v);
        ns.eta_min = std::min(ns.eta_min, e);
        ns.eta_max = std::max(ns.eta_max, e);
      }
    }
  }
  ns.t_scale = inst.config.tau_max_hours;
  inst.normalization = ns;
  return inst;
}

NormalizedTerms normalize_coverage_terms(const ProblemInstance& inst) {
  const auto& ns = inst.normalization;
  const std::size_t no = inst.spills.size();
  const std::size_t nk = inst.scenarios.scenarios.size();
  NormalizedTerms t{Matrix(no, nk, 0.0), Matrix(no, nk, 0.0)};
  const double v_range = ns.v_max - ns.v_min;
  const double e_range = ns.eta_max - ns.eta_min;
  for (std::size_t k = 0; k < nk; ++k) {
    const auto& sc = inst.scenarios.scenarios[k];
    for (std::size_t o = 0; o < no; ++o) {
      t.v_hat.at(o, k) = v_range > 0.0 ? (sc.spill_volume[o] - ns.v_min) / v_range : 1.0;
      t.eta_hat.at(o, k) = e_range > 0.0 ? (sc.spill_esi[o] - ns.eta_min) / e_range : 1.0;
    }
  }
  return t;
}

std::vector<Diagnostic> data_check(const ProblemInstance& inst) {
  std::vector<Diagnostic> out;
  const std::size_t no = inst.spills.size();
  const std::size_t nk = inst.scenarios.scenarios.size();

  // Spills with zero demand in every scenario are coverable for free.
  for (std::size_t o = 0; o < no; ++o) {
    bool any = false;
    for (const auto& sc : inst.scenarios.scenarios)
      for (double q : sc.demand[o]) any = any || q > 0.0;
    if (!any)
      out.push_back({Diagnostic::Severity::Warning,
                     "spill " + std::to_string(inst.spills[o].id) +
                         " has zero demand for all resources in all scenarios"});
  }

  // Operational-delay consistency: precomputed prep time never exceeds the
  // base delay plus raw-demand setup bound.
  std::vector<double> setup_times(inst.resources.size());
  for (std::size_t r = 0; r < inst.resources.size(); ++r)
    setup_times[r] = inst.resources[r].setup_time_min;
  for (std::size_t k = 0; k < nk; ++k) {
    const auto& sc = inst.scenarios.scenarios[k];
    for (std::size_t o = 0; o < no; ++o) {
      double raw_bound_min = 0.0;
      for (std::size_t r = 0; r < inst.resources.size(); ++r)
        raw_bound_min += sc.demand[o][r] * setup_times[r];
      for (std::size_t i = 0; i < inst.stations.size(); ++i) {
        const double bound_h = (inst.stations[i].base_delay_min + raw_bound_min) / 60.0;
        if (inst.derived.prep_time[k].at(i, o) > bound_h + 1e-9) {
          out.push_back({Diagnostic::Severity::Error,
                         "prep time exceeds operational delay bound for station " +
                             std::to_string(inst.stations[i].id) + ", spill " +
                             std::to_string(inst.spills[o].id)});
        }
      }
    }
  }

  // Spill-scenario pairs no eligible station can reach in time.
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t o = 0; o < no; ++o) {
      bool reachable = false;
      for (auto [po, pi] : inst.pairs) {
        if (static_cast<std::size_t>(po) != o) continue;
        const double total =
            inst.derived.travel_time.at(pi, o) + inst.derived.prep_time[k].at(pi, o);
        if (total <= inst.config.tau_max_hours + 1e-12) reachable = true;
      }
      if (!reachable && !inst.pairs.empty())
        out.push_back({Diagnostic::Severity::Warning,
                       "spill " + std::to_string(inst.spills[o].id) + " in scenario " +
                           std::to_string(inst.scenarios.scenarios[k].id) +
                           " is uncoverable within tau_max"});
    }
  }

  std::size_t det = 0;
  for (const auto& p : inst.scenarios.provenance)
    if (p.deterministic) ++det;
  if (!inst.scenarios.provenance.empty() && det != 1)
    out.push_back({Diagnostic::Severity::Warning,
                   "scenario set does not contain exactly one deterministic scenario"});
  return out;
}

}  // namespace spillresp
