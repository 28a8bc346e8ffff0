// Copyright 2026 The risfas Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver for outage and delay-outage sweeps, figure presets,
// analytic-vs-simulation validation and SVG plotting.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "risfas/analytic.hpp"
#include "risfas/config_json.hpp"
#include "risfas/errors.hpp"
#include "risfas/experiments.hpp"

namespace {

using namespace risfas;

struct CommonFlags {
  std::string config;
  std::string out = "-";
  std::string scheme = "both";
  std::string method = "analytic";
  std::string snr_db = "0:60:1";
  std::string first_hop = "shared";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

void add_sweep_flags(CLI::App* cmd, CommonFlags& f, bool with_method) {
  cmd->add_option("--scheme", f.scheme, "max-max, max-sum or both")->capture_default_str();
  if (with_method) cmd->add_option("--method", f.method, "analytic, mc or asymptotic")->capture_default_str();
  cmd->add_option("--snr-db", f.snr_db, "average SNR grid start:stop:step in dB")->capture_default_str();
  cmd->add_option("--trials", f.trials, "Monte Carlo trials per point")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Monte Carlo seed")->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)")->capture_default_str();
  cmd->add_option("--first-hop", f.first_hop, "first-hop sampling across ports: shared or per-port")
      ->capture_default_str();
}

SweepSpec make_spec(const CommonFlags& f) {
  SweepSpec spec;
  parse_snr_range(f.snr_db, spec);
  if (f.scheme != "both") spec.scheme = parse_scheme(f.scheme);
  spec.method = parse_method(f.method);
  spec.trials = f.trials;
  spec.seed = f.seed;
  spec.mc.threads = f.threads;
  spec.mc.first_hop = parse_first_hop(f.first_hop);
  spec.validate();
  return spec;
}

// Writes to the named file, or stdout for "-".
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path == "-") {
    fn(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  fn(os);
  if (!os) throw std::runtime_error("write failed for " + path);
}

int report_error(std::string_view kind, const std::string& message, const std::string& key = {}) {
  nlohmann::json j = {{"error", kind}, {"message", message}};
  if (!key.empty()) j["key"] = key;
  std::cerr << j.dump() << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-RIS fluid-antenna outage analysis and simulation"};
  app.require_subcommand(1);

  CommonFlags op_f, dor_f, val_f, fig_f;
  std::string asym_config, asym_out = "-", asym_scheme = "both";
  std::string preset, fig_out = ".";
  std::vector<std::string> plot_inputs;
  std::string plot_out, plot_title;

  auto* op = app.add_subcommand("op", "outage probability sweep as CSV");
  op->add_option("--config", op_f.config, "scenario JSON")->required();
  op->add_option("--out", op_f.out, "output CSV path, - for stdout")->capture_default_str();
  add_sweep_flags(op, op_f, true);

  auto* dor = app.add_subcommand("dor", "delay outage rate sweep as CSV");
  dor->add_option("--config", dor_f.config, "scenario JSON")->required();
  dor->add_option("--out", dor_f.out, "output CSV path, - for stdout")->capture_default_str();
  add_sweep_flags(dor, dor_f, true);

  auto* asym = app.add_subcommand("asym", "diversity and coding gains at the outage threshold");
  asym->add_option("--config", asym_config, "scenario JSON")->required();
  asym->add_option("--out", asym_out, "output CSV path, - for stdout")->capture_default_str();
  asym->add_option("--scheme", asym_scheme, "max-max, max-sum or both")->capture_default_str();

  auto* fig = app.add_subcommand("figure", "reproduce a figure preset as CSV files and an SVG");
  fig->add_option("--preset", preset, "fig2, fig3, fig4, fig5, fig6, fig7a or fig7b")->required();
  fig->add_option("--out", fig_out, "output directory")->capture_default_str();
  add_sweep_flags(fig, fig_f, true);

  auto* val = app.add_subcommand("validate", "analytic vs Monte Carlo outage on one configuration");
  val->add_option("--config", val_f.config, "scenario JSON")->required();
  val->add_option("--out", val_f.out, "output path, - for stdout")->capture_default_str();
  add_sweep_flags(val, val_f, false);

  auto* plot = app.add_subcommand("plot", "render sweep CSV files as an SVG chart");
  plot->add_option("inputs", plot_inputs, "CSV files written by op, dor or figure")->required();
  plot->add_option("--out", plot_out, "output SVG path")->required();
  plot->add_option("--title", plot_title, "chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what());
  }

  try {
    if (*op || *dor) {
      const CommonFlags& f = *op ? op_f : dor_f;
      const SystemConfig cfg = load_config(f.config);
      const SweepSpec spec = make_spec(f);
      const auto curves = run_sweep(cfg, spec, *op ? Metric::Outage : Metric::DelayOutage);
      with_output(f.out, [&](std::ostream& os) { write_csv(os, curves); });
    } else if (*asym) {
      const SystemConfig cfg = load_config(asym_config);
      const AnalyticModel model(cfg);
      std::vector<Scheme> schemes = {Scheme::MaxMax, Scheme::MaxSum};
      if (asym_scheme != "both") schemes = {parse_scheme(asym_scheme)};
      with_output(asym_out, [&](std::ostream& os) {
        os << "scheme,diversity_gain,coding_gain,coding_gain_db\n";
        for (Scheme s : schemes) {
          const AsymptoticGains g = model.asymptotic_gains(s, cfg.gamma_th());
          char buf[160];
          std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g", g.diversity, g.coding, 10.0 * std::log10(g.coding));
          os << scheme_name(s) << ',' << buf << '\n';
        }
      });
    } else if (*fig) {
      const SweepSpec spec = make_spec(fig_f);
      const FigureResult r = run_figure(make_preset(preset), spec, fig_out);
      for (const auto& p : r.csv_files) std::cout << p.string() << '\n';
      std::cout << r.svg_file.string() << '\n';
    } else if (*val) {
      const SystemConfig cfg = load_config(val_f.config);
      SweepSpec spec = make_spec(val_f);
      spec.method = Method::MonteCarlo;
      const auto reports = validate_against_mc(cfg, spec);
      with_output(val_f.out, [&](std::ostream& os) { write_validation(os, reports); });
    } else if (*plot) {
      std::vector<PerformanceCurve> curves;
      for (const std::string& in : plot_inputs) {
        std::ifstream is(in, std::ios::binary);
        if (!is) throw std::runtime_error("cannot open " + in);
        for (PerformanceCurve& c : read_csv(is)) {
          if (plot_inputs.size() > 1) c.label = std::filesystem::path(in).stem().string() + " " + c.label;
          curves.push_back(std::move(c));
        }
      }
      emit_svg(curves, plot_out, plot_title);
    }
  } catch (const ConfigError& e) {
    return report_error("config", e.what(), e.key_path());
  } catch (const DomainError& e) {
    return report_error("domain", e.what());
  } catch (const DimensionError& e) {
    return report_error("dimension", e.what());
  } catch (const NonConvergence& e) {
    return report_error("nonconvergence", e.what());
  } catch (const std::exception& e) {
    return report_error("runtime", e.what());
  }
  return 0;
}
