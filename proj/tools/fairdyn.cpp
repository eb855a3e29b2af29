// fairdyn: simulate and analyze the coupled classifier / population-response
// dynamical system defined by a scenario file.
//
//   fairdyn simulate   --config scenario.toml --out traj.csv
//   fairdyn equilibria --config scenario.toml
//   fairdyn sweep      --config scenario.toml --resolution 40 --out grid.csv
//   fairdyn compare    --config scenario.toml --out summary.csv
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fairdyn/config.hpp"
#include "fairdyn/errors.hpp"
#include "fairdyn/harness.hpp"

namespace {

using nlohmann::json;
using namespace fairdyn;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw ConfigError("cannot open output file: " + path);
  return file;
}

json record_to_json(const TrajectoryRecord& r) {
  json j{{"t", r.t},          {"s", r.s},
         {"phi", r.phi},      {"s_bar", r.s_bar},
         {"disparity_l1", r.disparity_l1},
         {"acceptance", r.acceptance},
         {"fpr", r.fpr},      {"fnr", r.fnr}};
  if (r.fitness_gap) j["fitness_gap"] = *r.fitness_gap;
  return j;
}

void write_trajectory_csv(std::ostream& out,
                          const std::vector<TrajectoryRecord>& records,
                          std::size_t n) {
  out << "t";
  for (std::size_t g = 1; g <= n; ++g) out << ",s_" << g;
  out << ",s_bar,disparity_l1";
  for (std::size_t g = 1; g <= n; ++g) out << ",phi_" << g;
  for (std::size_t g = 1; g <= n; ++g) out << ",acc_" << g;
  for (std::size_t g = 1; g <= n; ++g) out << ",fpr_" << g;
  for (std::size_t g = 1; g <= n; ++g) out << ",fnr_" << g;
  out << "\n";
  for (const auto& r : records) {
    out << r.t;
    for (double v : r.s) out << ',' << fmt(v);
    out << ',' << fmt(r.s_bar) << ',' << fmt(r.disparity_l1);
    for (double v : r.phi) out << ',' << fmt(v);
    for (double v : r.acceptance) out << ',' << fmt(v);
    for (double v : r.fpr) out << ',' << fmt(v);
    for (double v : r.fnr) out << ',' << fmt(v);
    out << "\n";
  }
}

const PopulationState& require_s0(const RunConfig& cfg) {
  if (!cfg.s0) throw ConfigError("missing key 's0'");
  return *cfg.s0;
}

void warn_feedback_sign(const RunConfig& cfg) {
  const InterventionSpec* spec = &cfg.scenario.intervention;
  while (spec->tag == InterventionSpec::Tag::capacity_capped && spec->inner) {
    spec = spec->inner.get();
  }
  if (spec->tag != InterventionSpec::Tag::feedback_control) return;
  const EquilibriumReport report =
      equilibrium_report(cfg.scenario.mu, cfg.scenario.d, cfg.scenario.U,
                         cfg.scenario.V);
  double slope = 0.0;
  if (report.plus) {
    slope = report.plus->slope;
  } else if (report.minus) {
    slope = report.minus->slope;
  }
  if (slope != 0.0 && spec->epsilon * slope <= 0.0) {
    std::cerr << "warning: feedback-control epsilon sign ("
              << spec->epsilon
              << ") opposes the fitness-gap slope at the reachable "
                 "equilibrium; disparity will grow instead of contract\n";
  }
}

int cmd_simulate(const RunConfig& cfg, const std::string& out_path,
                 const std::string& format) {
  const PopulationState& s0 = require_s0(cfg);
  warn_feedback_sign(cfg);
  const auto records =
      run_trajectory(cfg.scenario, s0, cfg.steps, cfg.stride);
  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : records) arr.push_back(record_to_json(r));
    out << arr.dump(2) << "\n";
  } else {
    write_trajectory_csv(out, records, cfg.scenario.groups());
  }
  return 0;
}

json hyperplane_to_json(const HyperplaneInfo& h) {
  return json{{"phi", h.phi},
              {"s_bar", h.s_bar},
              {"gap_slope", h.slope},
              {"lambda", h.lambda},
              {"stability", to_string(h.stability)}};
}

int cmd_equilibria(const RunConfig& cfg, const std::string& out_path,
                   const std::string& format) {
  const EquilibriumReport report =
      equilibrium_report(cfg.scenario.mu, cfg.scenario.d, cfg.scenario.U,
                         cfg.scenario.V);
  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  if (format == "csv") {
    out << "hyperplane,phi,s_bar,gap_slope,lambda,stability\n";
    if (report.plus) {
      const auto& h = *report.plus;
      out << "plus," << fmt(h.phi) << ',' << fmt(h.s_bar) << ','
          << fmt(h.slope) << ',' << fmt(h.lambda) << ','
          << to_string(h.stability) << "\n";
    }
    if (report.minus) {
      const auto& h = *report.minus;
      out << "minus," << fmt(h.phi) << ',' << fmt(h.s_bar) << ','
          << fmt(h.slope) << ',' << fmt(h.lambda) << ','
          << to_string(h.stability) << "\n";
    }
  } else {
    json j{{"phi_star", report.phi_star}};
    if (report.plus) j["plus"] = hyperplane_to_json(*report.plus);
    if (report.minus) j["minus"] = hyperplane_to_json(*report.minus);
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, const std::string& out_path,
              const std::string& format) {
  if (cfg.scenario.groups() != 2) {
    throw ConfigError("sweep requires exactly 2 groups");
  }
  const SweepResult result = sweep_grid(cfg.scenario, cfg.resolution);
  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  if (format == "json") {
    json cells = json::array();
    for (const auto& c : result.cells) {
      cells.push_back(json{{"s1", c.s1}, {"s2", c.s2}, {"ds1", c.ds1},
                           {"ds2", c.ds2}, {"acc1", c.acc1},
                           {"fpr1", c.fpr1}, {"fnr1", c.fnr1}});
    }
    out << cells.dump(2) << "\n";
  } else {
    out << "s1,s2,ds1,ds2,acc1,fpr1,fnr1\n";
    for (const auto& c : result.cells) {
      out << fmt(c.s1) << ',' << fmt(c.s2) << ',' << fmt(c.ds1) << ','
          << fmt(c.ds2) << ',' << fmt(c.acc1) << ',' << fmt(c.fpr1) << ','
          << fmt(c.fnr1) << "\n";
    }
  }
  return 0;
}

int cmd_compare(const RunConfig& cfg, const std::string& out_path,
                const std::string& format) {
  if (cfg.compare_interventions.size() < 2) {
    throw ConfigError("compare requires an 'interventions' array with at "
                      "least 2 entries");
  }
  const PopulationState& s0 = require_s0(cfg);

  struct Row {
    std::string name;
    double s_bar, disparity_l1;
    long steps_to_convergence;  // -1 when not converged
    bool eo, dp;
  };
  std::vector<Row> rows;
  for (const auto& spec : cfg.compare_interventions) {
    Scenario sc = cfg.scenario;
    sc.intervention = spec;
    const auto records = run_trajectory(sc, s0, cfg.steps, 1);

    constexpr double kTol = 1e-10;
    long converged_at = -1;
    for (std::size_t i = 1; i < records.size(); ++i) {
      double step = 0.0;
      for (std::size_t g = 0; g < records[i].s.size(); ++g) {
        step = std::max(step,
                        std::abs(records[i].s[g] - records[i - 1].s[g]));
      }
      if (step < kTol) {
        converged_at = records[i].t;
        break;
      }
    }
    bool eo = true, dp = true;
    for (const auto& r : records) {
      for (std::size_t g = 1; g < r.s.size(); ++g) {
        if (std::abs(r.fpr[g] - r.fpr[0]) > 1e-9 ||
            std::abs(r.fnr[g] - r.fnr[0]) > 1e-9) {
          eo = false;
        }
        if (std::abs(r.acceptance[g] - r.acceptance[0]) > 1e-9) dp = false;
      }
    }
    const auto& last = records.back();
    rows.push_back(Row{spec.name(), last.s_bar, last.disparity_l1,
                       converged_at, eo, dp});
  }

  std::ofstream file;
  std::ostream& out = open_output(out_path, file);
  if (format == "json") {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back(json{{"intervention", r.name},
                         {"terminal_s_bar", r.s_bar},
                         {"terminal_disparity_l1", r.disparity_l1},
                         {"steps_to_convergence", r.steps_to_convergence},
                         {"eo_satisfied", r.eo},
                         {"dp_satisfied", r.dp}});
    }
    out << arr.dump(2) << "\n";
  } else {
    out << "intervention,terminal_s_bar,terminal_disparity_l1,"
           "steps_to_convergence,eo_satisfied,dp_satisfied\n";
    for (const auto& r : rows) {
      out << r.name << ',' << fmt(r.s_bar) << ',' << fmt(r.disparity_l1)
          << ',' << r.steps_to_convergence << ','
          << (r.eo ? "true" : "false") << ',' << (r.dp ? "true" : "false")
          << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled classifier / population-response dynamics"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "csv";
  std::optional<long> steps_override, stride_override;
  std::optional<int> resolution_override;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "scenario file")->required();
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->add_option("--format", format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* simulate = app.add_subcommand("simulate", "run one trajectory");
  add_common(simulate);
  simulate->add_option("--steps", steps_override, "step count");
  simulate->add_option("--stride", stride_override, "record stride");

  CLI::App* equilibria =
      app.add_subcommand("equilibria", "equilibrium structure and stability");
  add_common(equilibria);

  CLI::App* sweep = app.add_subcommand("sweep", "2-group phase-portrait grid");
  add_common(sweep);
  sweep->add_option("--resolution", resolution_override, "cells per axis");

  CLI::App* compare =
      app.add_subcommand("compare", "run several interventions from one s0");
  add_common(compare);
  compare->add_option("--steps", steps_override, "step count");

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(config_path);
    if (steps_override) cfg.steps = *steps_override;
    if (stride_override) cfg.stride = *stride_override;
    if (resolution_override) cfg.resolution = *resolution_override;
    if (cfg.steps < 1 || cfg.stride < 1) {
      throw ConfigError("steps and stride must be >= 1");
    }

    if (simulate->parsed()) return cmd_simulate(cfg, out_path, format);
    if (equilibria->parsed()) return cmd_equilibria(cfg, out_path, format);
    if (sweep->parsed()) return cmd_sweep(cfg, out_path, format);
    if (compare->parsed()) return cmd_compare(cfg, out_path, format);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return 0;
}
