#include "spillresp/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "spillresp/error.hpp"

namespace spillresp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream f(path);
  require(f.good(), ErrorCode::IoError, "cannot write " + path.string());
  return f;
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::GapLimit: return "gap_limit";
  }
  return "?";
}

}  // namespace

std::string Solution::to_json(const ProblemInstance& inst) const {
  json j;
  j["status"] = status_name(status);
  j["objective"] = objective;
  j["coverage_term"] = coverage_term;
  j["cost_term"] = cost_term;
  j["stations"] = json::array();
  double fixed_cost = 0.0;
  for (std::size_t i = 0; i < inst.num_stations(); ++i) {
    if (!station_open[i]) continue;
    j["stations"].push_back(
        {{"id", inst.stations[i].id}, {"name", inst.stations[i].name}});
    fixed_cost += inst.stations[i].opening_cost;
  }
  j["fixed_cost"] = fixed_cost;
  j["assignments"] = json::array();
  for (std::size_t k = 0; k < inst.num_scenarios(); ++k)
    for (std::size_t o = 0; o < inst.num_spills(); ++o)
      if (assigned[k][o] >= 0)
        j["assignments"].push_back({{"scenario", inst.scenarios.scenarios[k].id},
                                    {"spill", inst.spills[o].id},
                                    {"station", inst.stations[assigned[k][o]].id},
                                    {"response_time_h", response_time_at(k, o, inst)}});
  return j.dump(2);
}

void emit_solution_reports(const ProblemInstance& inst, const Solution& sol,
                           const SolveStats& stats, const fs::path& outdir) {
  fs::create_directories(outdir);
  const auto cov = coverage_stats(sol, inst);

  {
    auto f = open_out(outdir / "assignments.csv");
    f << "scenario,spill,station,response_time_h,covered\n";
    for (std::size_t k = 0; k < inst.num_scenarios(); ++k)
      for (std::size_t o = 0; o < inst.num_spills(); ++o) {
        const int i = sol.assigned[k][o];
        f << inst.scenarios.scenarios[k].id << "," << inst.spills[o].id << ","
          << (i >= 0 ? std::to_string(inst.stations[i].id) : "") << ","
          << fmt_double(sol.response_time_at(k, o, inst)) << "," << (i >= 0 ? 1 : 0) << "\n";
      }
  }
  {
    auto f = open_out(outdir / "deployments.csv");
    f << "scenario,resource,station,spill,quantity\n";
    for (std::size_t k = 0; k < inst.num_scenarios(); ++k)
      for (std::size_t r = 0; r < inst.num_resources(); ++r)
        for (std::size_t i = 0; i < inst.num_stations(); ++i)
          for (std::size_t o = 0; o < inst.num_spills(); ++o) {
            const double q = sol.deployed_at(k, r, i, o, inst);
            if (q <= 1e-9) continue;
            f << inst.scenarios.scenarios[k].id << "," << inst.resources[r].name << ","
              << inst.stations[i].id << "," << inst.spills[o].id << "," << fmt_double(q) << "\n";
          }
  }
  {
    auto f = open_out(outdir / "transfers.csv");
    f << "scenario,resource,from_station,to_station,quantity\n";
    for (std::size_t k = 0; k < inst.num_scenarios(); ++k)
      for (std::size_t r = 0; r < inst.num_resources(); ++r)
        for (std::size_t i = 0; i < inst.num_stations(); ++i)
          for (std::size_t j = 0; j < inst.num_stations(); ++j) {
            const double q = sol.transferred_at(k, r, i, j, inst);
            if (q <= 1e-9) continue;
            f << inst.scenarios.scenarios[k].id << "," << inst.resources[r].name << ","
              << inst.stations[i].id << "," << inst.stations[j].id << "," << fmt_double(q)
              << "\n";
          }
  }
  {
    auto f = open_out(outdir / "utilization.csv");
    f << "station,resource,utilization\n";
    for (std::size_t i = 0; i < inst.num_stations(); ++i)
      for (std::size_t r = 0; r < inst.num_resources(); ++r)
        f << inst.stations[i].id << "," << inst.resources[r].name << ","
          << fmt_double(cov.utilization.at(i, r)) << "\n";
  }
  {
    auto f = open_out(outdir / "solution.json");
    json j = json::parse(sol.to_json(inst));
    j["coverage_rate"] = cov.coverage_rate;
    j["covered_pairs"] = cov.covered_pairs;
    j["stats"] = {{"nodes", stats.nodes},
                  {"lp_iterations", stats.lp_iterations},
                  {"best_bound", stats.best_bound},
                  {"wall_time_s", stats.wall_time_s}};
    f << j.dump(2) << "\n";
  }
  for (std::size_t k = 0; k < inst.num_scenarios(); ++k) {
    auto f = open_out(outdir / ("scenario_" + std::to_string(inst.scenarios.scenarios[k].id) +
                                ".svg"));
    f << svg_assignment_scatter(inst, sol, k);
  }
}

std::string voi_text_table(const VoiReport& r) {
  std::ostringstream os;
  os << "Metric                        Value      Relative (%)\n";
  os << "----------------------------------------------------\n";
  const auto line = [&](const char* label, double value, double rel) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%-27s%10.4f%14.2f\n", label, value, rel);
    os << buf;
  };
  line("RP (Stochastic)", r.rp, r.relative.at("RP"));
  line("EWS (Perfect Information)", r.ews, r.relative.at("EWS"));
  line("EVP (Deterministic)", r.evp, r.relative.at("EVP"));
  line("EEV (Expected Value)", r.eev, r.relative.at("EEV"));
  line("VSS", r.vss, r.relative.at("VSS"));
  line("EVPI", r.evpi, r.relative.at("EVPI"));
  return os.str();
}

void emit_voi_reports(const VoiReport& r, const fs::path& outdir) {
  fs::create_directories(outdir);
  {
    auto f = open_out(outdir / "voi.csv");
    f << "metric,value,relative_percent\n";
    f << "RP," << fmt_double(r.rp) << "," << fmt_double(r.relative.at("RP")) << "\n";
    f << "EWS," << fmt_double(r.ews) << "," << fmt_double(r.relative.at("EWS")) << "\n";
    f << "EVP," << fmt_double(r.evp) << "," << fmt_double(r.relative.at("EVP")) << "\n";
    f << "EEV," << fmt_double(r.eev) << "," << fmt_double(r.relative.at("EEV")) << "\n";
    f << "VSS," << fmt_double(r.vss) << "," << fmt_double(r.relative.at("VSS")) << "\n";
    f << "EVPI," << fmt_double(r.evpi) << "," << fmt_double(r.relative.at("EVPI")) << "\n";
  }
  {
    auto f = open_out(outdir / "scenario_comparison.csv");
    f << "scenario,ews_value,evp_evaluation,probability\n";
    for (const auto& row : r.per_scenario)
      f << row.scenario_id << "," << fmt_double(row.ws_value) << ","
        << fmt_double(row.evp_eval_value) << "," << fmt_double(row.probability) << "\n";
  }
  {
    auto f = open_out(outdir / "voi.json");
    json j;
    j["rp"] = r.rp;
    j["ews"] = r.ews;
    j["evp"] = r.evp;
    j["eev"] = r.eev;
    j["vss"] = r.vss;
    j["evpi"] = r.evpi;
    j["relative_percent"] = r.relative;
    j["per_scenario"] = json::array();
    for (const auto& row : r.per_scenario)
      j["per_scenario"].push_back({{"scenario", row.scenario_id},
                                   {"ws_value", row.ws_value},
                                   {"evp_evaluation", row.evp_eval_value},
                                   {"probability", row.probability}});
    f << j.dump(2) << "\n";
  }
  {
    auto f = open_out(outdir / "voi.txt");
    f << voi_text_table(r);
  }
}

void emit_sweep_reports(const std::vector<SweepRun>& runs, const fs::path& outdir) {
  fs::create_directories(outdir);
  {
    auto f = open_out(outdir / "sweep.csv");
    f << "k1,k2,omega1,omega2,omega3,objective,coverage,cost,norm_coverage,norm_cost,"
         "stations,status\n";
    for (const auto& r : runs) {
      f << fmt_double(r.weights.k1) << "," << fmt_double(r.weights.k2) << ","
        << fmt_double(r.weights.omega1) << "," << fmt_double(r.weights.omega2) << ","
        << fmt_double(r.weights.omega3) << ",";
      if (r.ok) {
        f << fmt_double(r.objective) << "," << fmt_double(r.coverage_value) << ","
          << fmt_double(r.cost_value) << "," << fmt_double(r.normalized_coverage) << ","
          << fmt_double(r.normalized_cost) << "," << r.stations_mask << ","
          << status_name(r.status) << "\n";
      } else {
        f << ",,,,,0,failed\n";
      }
    }
  }
  auto f = open_out(outdir / "k1_coverage.svg");
  f << svg_k1_coverage(runs);
}

void emit_pareto_reports(const std::vector<SweepRun>& runs,
                         const std::vector<ParetoPoint>& frontier, const fs::path& outdir) {
  fs::create_directories(outdir);
  {
    auto f = open_out(outdir / "pareto.csv");
    f << "k1,k2,omega1,omega2,omega3,objective,coverage,cost,norm_coverage,norm_cost\n";
    for (const auto& pt : frontier) {
      const auto& r = runs[pt.run_index];
      f << fmt_double(r.weights.k1) << "," << fmt_double(r.weights.k2) << ","
        << fmt_double(r.weights.omega1) << "," << fmt_double(r.weights.omega2) << ","
        << fmt_double(r.weights.omega3) << "," << fmt_double(r.objective) << ","
        << fmt_double(r.coverage_value) << "," << fmt_double(r.cost_value) << ","
        << fmt_double(r.normalized_coverage) << "," << fmt_double(r.normalized_cost) << "\n";
    }
  }
  auto f = open_out(outdir / "pareto.svg");
  f << svg_pareto(runs, frontier);
}

namespace {

constexpr int kW = 800;
constexpr int kH = 600;
constexpr int kMargin = 60;

struct Projection {
  double lon_lo, lon_hi, lat_lo, lat_hi;
  double px(double lon) const {
    const double t = lon_hi > lon_lo ? (lon - lon_lo) / (lon_hi - lon_lo) : 0.5;
    return kMargin + t * (kW - 2 * kMargin);
  }
  double py(double lat) const {
    const double t = lat_hi > lat_lo ? (lat - lat_lo) / (lat_hi - lat_lo) : 0.5;
    return kH - kMargin - t * (kH - 2 * kMargin);
  }
};

std::string svg_header(const std::string& title) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
  os << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
     << " font-size=\"16\">" << title << "</text>\n";
  return os.str();
}

}  // namespace

std::string svg_assignment_scatter(const ProblemInstance& inst, const Solution& sol,
                                   std::size_t k) {
  Projection proj{};
  bool first = true;
  const auto extend = [&](double lat, double lon) {
    if (first) {
      proj.lat_lo = proj.lat_hi = lat;
      proj.lon_lo = proj.lon_hi = lon;
      first = false;
    } else {
      proj.lat_lo = std::min(proj.lat_lo, lat);
      proj.lat_hi = std::max(proj.lat_hi, lat);
      proj.lon_lo = std::min(proj.lon_lo, lon);
      proj.lon_hi = std::max(proj.lon_hi, lon);
    }
  };
  for (const auto& s : inst.stations) extend(s.lat, s.lon);
  for (const auto& sp : inst.spills) extend(sp.lat, sp.lon);

  const auto norm = normalize_coverage_terms(inst);
  std::ostringstream os;
  os << svg_header("Scenario " + std::to_string(inst.scenarios.scenarios[k].id) +
                   " assignments");

  for (std::size_t o = 0; o < inst.num_spills(); ++o) {
    const int i = sol.assigned[k][o];
    if (i < 0) continue;
    os << "<line x1=\"" << f2(proj.px(inst.stations[i].lon)) << "\" y1=\""
       << f2(proj.py(inst.stations[i].lat)) << "\" x2=\"" << f2(proj.px(inst.spills[o].lon))
       << "\" y2=\"" << f2(proj.py(inst.spills[o].lat))
       << "\" stroke=\"#888888\" stroke-width=\"1\"/>\n";
  }
  for (std::size_t o = 0; o < inst.num_spills(); ++o) {
    const double r = 3.0 + 7.0 * norm.v_hat.at(o, k);
    const bool covered = sol.assigned[k][o] >= 0;
    os << "<circle cx=\"" << f2(proj.px(inst.spills[o].lon)) << "\" cy=\""
       << f2(proj.py(inst.spills[o].lat)) << "\" r=\"" << f2(r) << "\" fill=\""
       << (covered ? "#2b8cbe" : "#cccccc") << "\" stroke=\"#444444\"/>\n";
  }
  for (std::size_t i = 0; i < inst.num_stations(); ++i) {
    const double x = proj.px(inst.stations[i].lon);
    const double y = proj.py(inst.stations[i].lat);
    os << "<rect x=\"" << f2(x - 7) << "\" y=\"" << f2(y - 7)
       << "\" width=\"14\" height=\"14\" fill=\""
       << (sol.station_open[i] ? "#e34a33" : "#ffffff") << "\" stroke=\"#000000\"/>\n";
    os << "<text x=\"" << f2(x + 10) << "\" y=\"" << f2(y - 10)
       << "\" font-family=\"sans-serif\" font-size=\"11\">" << inst.stations[i].name
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_k1_coverage(const std::vector<SweepRun>& runs) {
  // Bin successful runs by k1 and plot mean coverage with a std band.
  std::map<double, std::vector<double>> bins;
  for (const auto& r : runs)
    if (r.ok) bins[r.weights.k1].push_back(r.coverage_value);

  std::ostringstream os;
  os << svg_header("Mean coverage value vs k1");
  if (bins.empty()) {
    os << "</svg>\n";
    return os.str();
  }

  double y_lo = 0.0, y_hi = 0.0;
  std::vector<std::tuple<double, double, double>> pts;  // k1, mean, std
  for (const auto& [k1, vals] : bins) {
    const double m = mean_of(vals);
    const double s = stddev_of(vals);
    pts.emplace_back(k1, m, s);
    y_lo = std::min(y_lo, m - s);
    y_hi = std::max(y_hi, m + s);
  }
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const double x_lo = std::get<0>(pts.front());
  const double x_hi = std::max(std::get<0>(pts.back()), x_lo + 1e-9);
  const auto px = [&](double x) {
    return kMargin + (x - x_lo) / (x_hi - x_lo) * (kW - 2 * kMargin);
  };
  const auto py = [&](double y) {
    return kH - kMargin - (y - y_lo) / (y_hi - y_lo) * (kH - 2 * kMargin);
  };

  os << "<polygon points=\"";
  for (const auto& [x, m, s] : pts) os << f2(px(x)) << "," << f2(py(m + s)) << " ";
  for (auto it = pts.rbegin(); it != pts.rend(); ++it)
    os << f2(px(std::get<0>(*it))) << "," << f2(py(std::get<1>(*it) - std::get<2>(*it))) << " ";
  os << "\" fill=\"#c6dbef\" stroke=\"none\"/>\n";

  os << "<polyline points=\"";
  for (const auto& [x, m, s] : pts) os << f2(px(x)) << "," << f2(py(m)) << " ";
  os << "\" fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\"/>\n";

  for (const auto& [x, m, s] : pts)
    os << "<circle cx=\"" << f2(px(x)) << "\" cy=\"" << f2(py(m))
       << "\" r=\"3\" fill=\"#08519c\"/>\n";

  // Axes.
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\"" << kW - kMargin
     << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
     << kH - kMargin << "\" stroke=\"black\"/>\n";
  for (const auto& [x, m, s] : pts) {
    (void)m;
    (void)s;
    os << "<text x=\"" << f2(px(x)) << "\" y=\"" << kH - kMargin + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << f2(x)
       << "</text>\n";
  }
  os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">k1</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string svg_pareto(const std::vector<SweepRun>& runs,
                       const std::vector<ParetoPoint>& frontier) {
  std::ostringstream os;
  os << svg_header("Pareto frontier: coverage vs cost (normalized)");
  const auto px = [&](double x) { return kMargin + x * (kW - 2 * kMargin); };
  const auto py = [&](double y) { return kH - kMargin - y * (kH - 2 * kMargin); };

  for (const auto& r : runs) {
    if (!r.ok) continue;
    os << "<circle cx=\"" << f2(px(r.normalized_cost)) << "\" cy=\""
       << f2(py(r.normalized_coverage)) << "\" r=\"3\" fill=\"#9ecae1\" stroke=\"#6baed6\"/>\n";
  }
  os << "<polyline points=\"";
  for (const auto& pt : frontier) {
    const auto& r = runs[pt.run_index];
    os << f2(px(r.normalized_cost)) << "," << f2(py(r.normalized_coverage)) << " ";
  }
  os << "\" fill=\"none\" stroke=\"#de2d26\" stroke-width=\"2\"/>\n";
  for (const auto& pt : frontier) {
    const auto& r = runs[pt.run_index];
    os << "<circle cx=\"" << f2(px(r.normalized_cost)) << "\" cy=\""
       << f2(py(r.normalized_coverage)) << "\" r=\"4\" fill=\"#de2d26\"/>\n";
  }
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kH - kMargin << "\" x2=\"" << kW - kMargin
     << "\" y2=\"" << kH - kMargin << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin << "\" y2=\""
     << kH - kMargin << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">normalized "
        "cost</text>\n";
  os << "<text x=\"18\" y=\"" << kH / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        "transform=\"rotate(-90 18 "
     << kH / 2 << ")\">normalized coverage</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace spillresp
