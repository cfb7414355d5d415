#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "spillresp/model.hpp"
#include "spillresp/scenario.hpp"
#include "spillresp/solver.hpp"
#include "spillresp/sweep.hpp"

namespace spillresp {

struct InputBundle {
  std::filesystem::path stations;
  std::filesystem::path spills;
  std::filesystem::path resources;
  std::filesystem::path scenarios;  // optional; empty when absent
  std::filesystem::path config;

  /// dir with stations.csv / spills.csv / resources.csv / config.json and an
  /// optional scenarios.json.
  static InputBundle locate(const std::filesystem::path& dir);
};

struct ParsedConfig {
  ModelConfig model;
  Weights weights;
  SolverOptions solver;
  SamplingConfig sampling;
  std::vector<double> scenario_probabilities;
};

ParsedConfig parse_config(const std::filesystem::path& path);

/// Parses and cross-validates the whole bundle into a built instance. When
/// scenarios.json is absent, a single deterministic scenario is synthesized
/// from the historical spill records.
ProblemInstance parse_inputs(const InputBundle& bundle);

ScenarioSet parse_scenarios_json(const std::filesystem::path& path,
                                 const std::vector<SpillEvent>& spills,
                                 const std::vector<ResourceType>& resources);

void write_scenarios_json(const ScenarioSet& set, const std::vector<SpillEvent>& spills,
                          const std::vector<ResourceType>& resources,
                          const std::filesystem::path& path);

/// Writes the instance back out as a bundle (stations/spills/resources CSVs,
/// scenarios.json, config.json).
void write_bundle(const ProblemInstance& instance, const std::filesystem::path& dir);

struct RunManifest {
  std::string command;
  std::string config_hash;
  std::map<std::string, std::string> input_hashes;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;
};

RunManifest make_manifest(const std::string& command, const InputBundle& bundle,
                          std::uint64_t seed);
void write_manifest(const RunManifest& manifest, const std::filesystem::path& outdir);

/// Round-trips the sweep CSV written by emit_sweep_reports.
std::vector<SweepRun> parse_sweep_csv(const std::filesystem::path& path);

}  // namespace spillresp
