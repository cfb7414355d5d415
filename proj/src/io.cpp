#include "spillresp/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "spillresp/error.hpp"
#include "spillresp/version.hpp"

namespace spillresp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CsvTable {
  fs::path path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // data rows, header stripped

  int column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    require(it != header.end(), ErrorCode::SchemaError,
            path.filename().string() + " is missing column '" + name + "'");
    return static_cast<int>(it - header.begin());
  }
  int column_optional(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  }
};

std::vector<std::string> split_csv_line(const std::string& line, const fs::path& path,
                                        std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  require(!quoted, ErrorCode::ParseError,
          path.filename().string() + ":" + std::to_string(lineno) + ": unterminated quote");
  out.push_back(cur);
  return out;
}

CsvTable read_csv(const fs::path& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::IoError, "cannot open " + path.string());
  CsvTable table;
  table.path = path;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line, path, lineno);
    if (table.header.empty()) {
      table.header = std::move(fields);
    } else {
      require(fields.size() == table.header.size(), ErrorCode::ParseError,
              path.filename().string() + ":" + std::to_string(lineno) +
                  ": expected " + std::to_string(table.header.size()) + " fields, got " +
                  std::to_string(fields.size()));
      table.rows.push_back(std::move(fields));
    }
  }
  require(!table.header.empty(), ErrorCode::SchemaError,
          path.filename().string() + " has no header row");
  return table;
}

double to_double(const CsvTable& t, std::size_t row, int col) {
  const std::string& s = t.rows[row][col];
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    require(pos == s.size(), ErrorCode::ParseError, "");
    return v;
  } catch (...) {
    fail(ErrorCode::ParseError, t.path.filename().string() + ":" + std::to_string(row + 2) +
                                    ": cannot parse number '" + s + "' in column " +
                                    t.header[col]);
  }
}

int to_int(const CsvTable& t, std::size_t row, int col) {
  const double v = to_double(t, row, col);
  require(v == std::floor(v), ErrorCode::ParseError,
          t.path.filename().string() + ":" + std::to_string(row + 2) + ": expected integer in " +
              t.header[col]);
  return static_cast<int>(v);
}

json parse_json_file(const fs::path& path) {
  const std::string text = slurp(path);
  json j = json::parse(text, nullptr, false);
  require(!j.is_discarded(), ErrorCode::ParseError, "malformed JSON in " + path.string());
  return j;
}

}  // namespace

InputBundle InputBundle::locate(const fs::path& dir) {
  require(fs::is_directory(dir), ErrorCode::IoError, dir.string() + " is not a directory");
  InputBundle b;
  b.stations = dir / "stations.csv";
  b.spills = dir / "spills.csv";
  b.resources = dir / "resources.csv";
  b.config = dir / "config.json";
  for (const auto* p : {&b.stations, &b.spills, &b.resources, &b.config})
    require(fs::exists(*p), ErrorCode::IoError, "missing input file " + p->string());
  if (fs::exists(dir / "scenarios.json")) b.scenarios = dir / "scenarios.json";
  return b;
}

ParsedConfig parse_config(const fs::path& path) {
  const json j = parse_json_file(path);
  ParsedConfig cfg;

  const json model = j.value("model", json::object());
  cfg.model.n_max_stations = model.value("n_max_stations", 1);
  cfg.model.tau_max_hours = model.value("tau_max_hours", 24.0);
  cfg.model.boat_speed_kmh = model.value("boat_speed_kmh", 1.85);
  cfg.model.boom_ft_per_gal = model.value("boom_ft_per_gal", 10.0);
  cfg.model.dispersant_ratio = model.value("dispersant_ratio", 1.0 / 50.0);
  cfg.model.skimmer_shift_capacity = model.value("skimmer_shift_capacity_gal", 200.0);
  cfg.model.transfer_alpha = model.value("transfer_alpha", 1.723);
  cfg.model.deployment_rate = model.value("deployment_rate", 1.0);
  cfg.model.clamp_samples_to_historical = model.value("clamp_samples_to_historical_range", true);
  const std::string dist = model.value("distance_method", std::string("haversine"));
  require(dist == "haversine" || dist == "equirectangular", ErrorCode::SchemaError,
          "distance_method must be haversine or equirectangular");
  cfg.model.distance_method =
      dist == "haversine" ? DistanceMethod::Haversine : DistanceMethod::Equirectangular;

  const json elig = model.value("eligibility", json::object());
  const std::string rule = elig.value("rule", std::string("tau_max"));
  if (rule == "tau_max") {
    cfg.model.eligibility.kind = EligibilityRule::Kind::TravelTime;
  } else if (rule == "radius") {
    cfg.model.eligibility.kind = EligibilityRule::Kind::Radius;
    cfg.model.eligibility.radius_km = elig.value("km", 0.0);
    require(cfg.model.eligibility.radius_km > 0.0, ErrorCode::SchemaError,
            "eligibility radius must be positive");
  } else if (rule == "pairs") {
    cfg.model.eligibility.kind = EligibilityRule::Kind::ExplicitPairs;
    require(elig.contains("pairs") && elig["pairs"].is_array(), ErrorCode::SchemaError,
            "eligibility rule 'pairs' needs a pairs array");
    for (const auto& p : elig["pairs"]) {
      require(p.is_array() && p.size() == 2, ErrorCode::SchemaError,
              "eligibility pairs must be [spill_id, station_id]");
      cfg.model.eligibility.pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
  } else {
    fail(ErrorCode::SchemaError, "unknown eligibility rule '" + rule + "'");
  }

  const json w = j.value("weights", json::object());
  cfg.weights.k1 = w.value("k1", 0.5);
  cfg.weights.k2 = w.value("k2", 1.0 - cfg.weights.k1);
  cfg.weights.omega1 = w.value("omega1", 1.0 / 3.0);
  cfg.weights.omega2 = w.value("omega2", 1.0 / 3.0);
  cfg.weights.omega3 = w.value("omega3", 1.0 - cfg.weights.omega1 - cfg.weights.omega2);

  const json s = j.value("solver", json::object());
  cfg.solver.rel_gap_tol = s.value("rel_gap_tol", 1e-6);
  cfg.solver.int_tol = s.value("int_tol", 1e-6);
  cfg.solver.feas_tol = s.value("feas_tol", 1e-7);
  cfg.solver.node_limit = s.value("node_limit", 1'000'000L);
  cfg.solver.time_limit_s = s.value("time_limit_s", 0.0);
  cfg.solver.seed = s.value("seed", 0ULL);
  const std::string rule_name = s.value("branch_rule", std::string("most-fractional"));
  require(rule_name == "most-fractional" || rule_name == "pseudo-cost", ErrorCode::SchemaError,
          "branch_rule must be most-fractional or pseudo-cost");
  cfg.solver.branch_rule =
      rule_name == "most-fractional" ? BranchRule::MostFractional : BranchRule::PseudoCost;

  const json samp = j.value("sampling", json::object());
  cfg.sampling.n_stochastic = samp.value("n_stochastic", 4);
  cfg.sampling.rng_seed = samp.value("rng_seed", 0ULL);
  cfg.sampling.esi_perturbation = samp.value("esi_perturbation", 0.1);
  cfg.sampling.validation_tol = samp.value("validation_tol", 0.25);
  cfg.sampling.clamp_to_historical = cfg.model.clamp_samples_to_historical;
  if (samp.contains("probabilities"))
    cfg.scenario_probabilities = samp["probabilities"].get<std::vector<double>>();
  return cfg;
}

ScenarioSet parse_scenarios_json(const fs::path& path, const std::vector<SpillEvent>& spills,
                                 const std::vector<ResourceType>& resources) {
  const json j = parse_json_file(path);
  require(j.contains("scenarios") && j["scenarios"].is_array(), ErrorCode::SchemaError,
          "scenarios.json needs a scenarios array");

  std::map<int, std::size_t> spill_index;
  for (std::size_t o = 0; o < spills.size(); ++o) spill_index[spills[o].id] = o;
  std::map<std::string, std::size_t> resource_index;
  for (std::size_t r = 0; r < resources.size(); ++r) resource_index[resources[r].name] = r;

  ScenarioSet set;
  for (const auto& js : j["scenarios"]) {
    Scenario sc;
    sc.id = js.value("id", static_cast<int>(set.scenarios.size()) + 1);
    require(js.contains("probability"), ErrorCode::SchemaError,
            "scenario " + std::to_string(sc.id) + " has no probability");
    sc.probability = js["probability"].get<double>();
    sc.spill_volume.assign(spills.size(), -1.0);
    sc.spill_esi.assign(spills.size(), 0.0);
    sc.demand.assign(spills.size(), std::vector<double>(resources.size(), 0.0));

    require(js.contains("spills") && js["spills"].is_array(), ErrorCode::SchemaError,
            "scenario " + std::to_string(sc.id) + " has no spills array");
    for (const auto& sp : js["spills"]) {
      const int sid = sp.value("spill_id", -1);
      const auto it = spill_index.find(sid);
      require(it != spill_index.end(), ErrorCode::CrossRefError,
              "scenario " + std::to_string(sc.id) + " references unknown spill id " +
                  std::to_string(sid));
      const std::size_t o = it->second;
      sc.spill_volume[o] = sp.value("volume_gal", -1.0);
      sc.spill_esi[o] = sp.value("esi", -1.0);
      require(sp.contains("demand") && sp["demand"].is_object(), ErrorCode::SchemaError,
              "spill entry lacks a demand object");
      for (const auto& [name, qty] : sp["demand"].items()) {
        const auto rit = resource_index.find(name);
        require(rit != resource_index.end(), ErrorCode::CrossRefError,
                "demand names unknown resource '" + name + "'");
        sc.demand[o][rit->second] = qty.get<double>();
      }
    }
    for (std::size_t o = 0; o < spills.size(); ++o)
      require(sc.spill_volume[o] >= 0.0, ErrorCode::SchemaError,
              "scenario " + std::to_string(sc.id) + " is missing spill id " +
                  std::to_string(spills[o].id));

    const std::string prov = js.value("provenance", std::string("deterministic"));
    set.provenance.push_back({prov == "deterministic", js.value("seed", 0ULL)});
    set.scenarios.push_back(std::move(sc));
  }
  return set;
}

void write_scenarios_json(const ScenarioSet& set, const std::vector<SpillEvent>& spills,
                          const std::vector<ResourceType>& resources, const fs::path& path) {
  json out;
  out["scenarios"] = json::array();
  for (std::size_t k = 0; k < set.scenarios.size(); ++k) {
    const auto& sc = set.scenarios[k];
    json js;
    js["id"] = sc.id;
    js["probability"] = sc.probability;
    const bool det = k < set.provenance.size() && set.provenance[k].deterministic;
    js["provenance"] = det ? "deterministic" : "sampled";
    if (!det && k < set.provenance.size()) js["seed"] = set.provenance[k].seed;
    js["spills"] = json::array();
    for (std::size_t o = 0; o < spills.size(); ++o) {
      json sp;
      sp["spill_id"] = spills[o].id;
      sp["volume_gal"] = sc.spill_volume[o];
      sp["esi"] = sc.spill_esi[o];
      json demand;
      for (std::size_t r = 0; r < resources.size(); ++r)
        demand[resources[r].name] = sc.demand[o][r];
      sp["demand"] = std::move(demand);
      js["spills"].push_back(std::move(sp));
    }
    out["scenarios"].push_back(std::move(js));
  }
  std::ofstream f(path);
  require(f.good(), ErrorCode::IoError, "cannot write " + path.string());
  f << out.dump(2) << "\n";
}

ProblemInstance parse_inputs(const InputBundle& bundle) {
  const ParsedConfig cfg = parse_config(bundle.config);

  const CsvTable rtab = read_csv(bundle.resources);
  std::vector<ResourceType> resources;
  {
    const int c_id = rtab.column("id");
    const int c_name = rtab.column("name");
    const int c_st = rtab.column("setup_time_min");
    const int c_uc = rtab.column("unit_cost");
    const int c_cap = rtab.column("capacity_per_unit");
    const int c_dps = rtab.column_optional("demand_per_setup_unit");
    for (std::size_t row = 0; row < rtab.rows.size(); ++row) {
      ResourceType r;
      r.id = to_int(rtab, row, c_id);
      r.name = rtab.rows[row][c_name];
      r.setup_time_min = to_double(rtab, row, c_st);
      r.unit_cost = to_double(rtab, row, c_uc);
      r.capacity_per_unit = to_double(rtab, row, c_cap);
      r.demand_per_setup_unit = c_dps >= 0 ? to_double(rtab, row, c_dps) : 1.0;
      resources.push_back(std::move(r));
    }
  }

  const CsvTable stab = read_csv(bundle.stations);
  std::vector<Station> stations;
  {
    const int c_id = stab.column("id");
    const int c_name = stab.column("name");
    const int c_lat = stab.column("lat");
    const int c_lon = stab.column("lon");
    const int c_cost = stab.column("opening_cost");
    const int c_delay = stab.column_optional("base_delay_min");
    std::vector<int> inv_cols;
    for (const auto& r : resources) inv_cols.push_back(stab.column(r.name));
    for (std::size_t row = 0; row < stab.rows.size(); ++row) {
      Station s;
      s.id = to_int(stab, row, c_id);
      s.name = stab.rows[row][c_name];
      s.lat = to_double(stab, row, c_lat);
      s.lon = to_double(stab, row, c_lon);
      s.opening_cost = to_double(stab, row, c_cost);
      s.base_delay_min = c_delay >= 0 ? to_double(stab, row, c_delay) : 15.0;
      for (int col : inv_cols) s.inventory.push_back(to_double(stab, row, col));
      stations.push_back(std::move(s));
    }
  }

  const CsvTable ptab = read_csv(bundle.spills);
  std::vector<SpillEvent> spills;
  {
    const int c_id = ptab.column("id");
    const int c_lat = ptab.column("lat");
    const int c_lon = ptab.column("lon");
    const int c_vol = ptab.column("volume_gal");
    const int c_esi = ptab.column("esi");
    for (std::size_t row = 0; row < ptab.rows.size(); ++row) {
      SpillEvent sp;
      sp.id = to_int(ptab, row, c_id);
      sp.lat = to_double(ptab, row, c_lat);
      sp.lon = to_double(ptab, row, c_lon);
      sp.base_volume = to_double(ptab, row, c_vol);
      sp.base_esi = to_double(ptab, row, c_esi);
      spills.push_back(std::move(sp));
    }
  }

  ScenarioSet scenarios;
  if (!bundle.scenarios.empty()) {
    scenarios = parse_scenarios_json(bundle.scenarios, spills, resources);
  } else {
    // No scenario file yet: run deterministically on the historical record.
    Scenario sc;
    sc.id = 1;
    sc.probability = 1.0;
    for (const auto& sp : spills) {
      sc.spill_volume.push_back(sp.base_volume);
      sc.spill_esi.push_back(sp.base_esi);
      sc.demand.push_back(derive_demands(sp.base_volume, cfg.model, resources));
    }
    scenarios.scenarios.push_back(std::move(sc));
    scenarios.provenance.push_back({true, 0});
  }

  // Explicit eligibility pairs arrive as file ids; translate to indices.
  ModelConfig model_cfg = cfg.model;
  if (model_cfg.eligibility.kind == EligibilityRule::Kind::ExplicitPairs) {
    std::map<int, int> spill_idx, station_idx;
    for (std::size_t o = 0; o < spills.size(); ++o) spill_idx[spills[o].id] = static_cast<int>(o);
    for (std::size_t i = 0; i < stations.size(); ++i)
      station_idx[stations[i].id] = static_cast<int>(i);
    for (auto& [o, i] : model_cfg.eligibility.pairs) {
      require(spill_idx.count(o), ErrorCode::CrossRefError,
              "eligibility pair references unknown spill id " + std::to_string(o));
      require(station_idx.count(i), ErrorCode::CrossRefError,
              "eligibility pair references unknown station id " + std::to_string(i));
      o = spill_idx[o];
      i = station_idx[i];
    }
  }

  return build_instance(std::move(stations), std::move(spills), std::move(resources),
                        std::move(scenarios), cfg.weights, std::move(model_cfg));
}

void write_bundle(const ProblemInstance& inst, const fs::path& dir) {
  fs::create_directories(dir);

  {
    std::ofstream f(dir / "resources.csv");
    require(f.good(), ErrorCode::IoError, "cannot write resources.csv");
    f << "id,name,setup_time_min,unit_cost,capacity_per_unit,demand_per_setup_unit\n";
    for (const auto& r : inst.resources)
      f << r.id << "," << r.name << "," << fmt_double(r.setup_time_min) << ","
        << fmt_double(r.unit_cost) << "," << fmt_double(r.capacity_per_unit) << ","
        << fmt_double(r.demand_per_setup_unit) << "\n";
  }
  {
    std::ofstream f(dir / "stations.csv");
    require(f.good(), ErrorCode::IoError, "cannot write stations.csv");
    f << "id,name,lat,lon,opening_cost,base_delay_min";
    for (const auto& r : inst.resources) f << "," << r.name;
    f << "\n";
    for (const auto& s : inst.stations) {
      f << s.id << "," << s.name << "," << fmt_double(s.lat) << "," << fmt_double(s.lon) << ","
        << fmt_double(s.opening_cost) << "," << fmt_double(s.base_delay_min);
      for (double q : s.inventory) f << "," << fmt_double(q);
      f << "\n";
    }
  }
  {
    std::ofstream f(dir / "spills.csv");
    require(f.good(), ErrorCode::IoError, "cannot write spills.csv");
    f << "id,lat,lon,volume_gal,esi\n";
    for (const auto& sp : inst.spills)
      f << sp.id << "," << fmt_double(sp.lat) << "," << fmt_double(sp.lon) << ","
        << fmt_double(sp.base_volume) << "," << fmt_double(sp.base_esi) << "\n";
  }
  write_scenarios_json(inst.scenarios, inst.spills, inst.resources, dir / "scenarios.json");

  json cfg;
  cfg["model"]["n_max_stations"] = inst.config.n_max_stations;
  cfg["model"]["tau_max_hours"] = inst.config.tau_max_hours;
  cfg["model"]["boat_speed_kmh"] = inst.config.boat_speed_kmh;
  cfg["model"]["boom_ft_per_gal"] = inst.config.boom_ft_per_gal;
  cfg["model"]["dispersant_ratio"] = inst.config.dispersant_ratio;
  cfg["model"]["skimmer_shift_capacity_gal"] = inst.config.skimmer_shift_capacity;
  cfg["model"]["transfer_alpha"] = inst.config.transfer_alpha;
  cfg["model"]["deployment_rate"] = inst.config.deployment_rate;
  cfg["model"]["clamp_samples_to_historical_range"] = inst.config.clamp_samples_to_historical;
  cfg["model"]["distance_method"] =
      inst.config.distance_method == DistanceMethod::Haversine ? "haversine" : "equirectangular";
  switch (inst.config.eligibility.kind) {
    case EligibilityRule::Kind::TravelTime:
      cfg["model"]["eligibility"]["rule"] = "tau_max";
      break;
    case EligibilityRule::Kind::Radius:
      cfg["model"]["eligibility"]["rule"] = "radius";
      cfg["model"]["eligibility"]["km"] = inst.config.eligibility.radius_km;
      break;
    case EligibilityRule::Kind::ExplicitPairs: {
      cfg["model"]["eligibility"]["rule"] = "pairs";
      json pairs = json::array();
      for (auto [o, i] : inst.config.eligibility.pairs)
        pairs.push_back({inst.spills[o].id, inst.stations[i].id});
      cfg["model"]["eligibility"]["pairs"] = std::move(pairs);
      break;
    }
  }
  cfg["weights"]["k1"] = inst.weights.k1;
  cfg["weights"]["k2"] = inst.weights.k2;
  cfg["weights"]["omega1"] = inst.weights.omega1;
  cfg["weights"]["omega2"] = inst.weights.omega2;
  cfg["weights"]["omega3"] = inst.weights.omega3;
  std::ofstream f(dir / "config.json");
  require(f.good(), ErrorCode::IoError, "cannot write config.json");
  f << cfg.dump(2) << "\n";
}

RunManifest make_manifest(const std::string& command, const InputBundle& bundle,
                          std::uint64_t seed) {
  RunManifest m;
  m.command = command;
  m.seed = seed;
  m.tool_version = kVersion;
  m.config_hash = fnv1a64_hex(slurp(bundle.config));
  m.input_hashes["config.json"] = m.config_hash;
  m.input_hashes["stations.csv"] = fnv1a64_hex(slurp(bundle.stations));
  m.input_hashes["spills.csv"] = fnv1a64_hex(slurp(bundle.spills));
  m.input_hashes["resources.csv"] = fnv1a64_hex(slurp(bundle.resources));
  if (!bundle.scenarios.empty())
    m.input_hashes["scenarios.json"] = fnv1a64_hex(slurp(bundle.scenarios));

  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  m.timestamp = buf;
  return m;
}

void write_manifest(const RunManifest& m, const fs::path& outdir) {
  fs::create_directories(outdir);
  json j;
  j["command"] = m.command;
  j["config_hash"] = m.config_hash;
  j["input_hashes"] = m.input_hashes;
  j["seed"] = m.seed;
  j["tool_version"] = m.tool_version;
  j["timestamp"] = m.timestamp;
  std::ofstream f(outdir / "manifest.json");
  require(f.good(), ErrorCode::IoError, "cannot write manifest.json");
  f << j.dump(2) << "\n";
}

std::vector<SweepRun> parse_sweep_csv(const fs::path& path) {
  const CsvTable t = read_csv(path);
  std::vector<SweepRun> runs;
  const int c_k1 = t.column("k1");
  const int c_k2 = t.column("k2");
  const int c_w1 = t.column("omega1");
  const int c_w2 = t.column("omega2");
  const int c_w3 = t.column("omega3");
  const int c_obj = t.column("objective");
  const int c_cov = t.column("coverage");
  const int c_cost = t.column("cost");
  const int c_ncov = t.column("norm_coverage");
  const int c_ncost = t.column("norm_cost");
  const int c_mask = t.column("stations");
  const int c_status = t.column("status");
  for (std::size_t row = 0; row < t.rows.size(); ++row) {
    SweepRun r;
    r.weights.k1 = to_double(t, row, c_k1);
    r.weights.k2 = to_double(t, row, c_k2);
    r.weights.omega1 = to_double(t, row, c_w1);
    r.weights.omega2 = to_double(t, row, c_w2);
    r.weights.omega3 = to_double(t, row, c_w3);
    const std::string status = t.rows[row][c_status];
    r.ok = status == "optimal" || status == "gap_limit";
    r.status = status == "gap_limit" ? SolveStatus::GapLimit : SolveStatus::Optimal;
    if (!r.ok) r.error = status;
    if (r.ok) {
      r.objective = to_double(t, row, c_obj);
      r.coverage_value = to_double(t, row, c_cov);
      r.cost_value = to_double(t, row, c_cost);
      r.normalized_coverage = to_double(t, row, c_ncov);
      r.normalized_cost = to_double(t, row, c_ncost);
      r.stations_mask = static_cast<std::uint32_t>(to_int(t, row, c_mask));
    }
    runs.push_back(std::move(r));
  }
  return runs;
}

}  // namespace spillresp
