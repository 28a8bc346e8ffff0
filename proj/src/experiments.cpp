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

#include "risfas/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "risfas/errors.hpp"

namespace risfas {

namespace {

std::string format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

std::string fmt_snr(double v) { return format("%.12g", v); }
std::string fmt_value(double v) { return format("%.17g", v); }

double parse_double(std::string_view s, std::string_view what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw DomainError("cannot parse " + std::string(what) + " from '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? s.npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

// Runs fn(i) for i in [0, count), striped over threads; output order is
// owned by the caller through the index.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double metric_threshold(const SystemConfig& cfg, Metric metric) {
  return metric == Metric::Outage ? cfg.gamma_th() : cfg.dor_threshold();
}

std::string curve_label(Scheme s, Method m) {
  return std::string(scheme_name(s)) + "/" + std::string(method_name(m));
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Analytic: return "analytic";
    case Method::MonteCarlo: return "mc";
    case Method::Asymptotic: return "asymptotic";
  }
  return "analytic";
}

Method parse_method(std::string_view name) {
  if (name == "analytic") return Method::Analytic;
  if (name == "mc") return Method::MonteCarlo;
  if (name == "asymptotic") return Method::Asymptotic;
  throw DomainError("unknown method '" + std::string(name) + "' (analytic, mc, asymptotic)");
}

void SweepSpec::validate() const {
  if (!std::isfinite(snr_db_start) || !std::isfinite(snr_db_stop) || !(snr_db_start < snr_db_stop)) {
    throw DomainError("SNR range requires finite start < stop");
  }
  if (!(snr_db_step > 0.0) || !std::isfinite(snr_db_step)) throw DomainError("SNR step must be > 0");
  if (method == Method::MonteCarlo && trials < 1) throw DomainError("trials must be >= 1");
}

std::vector<double> SweepSpec::grid() const {
  validate();
  std::vector<double> g;
  const double span = snr_db_stop - snr_db_start;
  const auto count = static_cast<std::size_t>(std::floor(span / snr_db_step + 1e-9)) + 1;
  g.reserve(count);
  for (std::size_t i = 0; i < count; ++i) g.push_back(snr_db_start + static_cast<double>(i) * snr_db_step);
  return g;
}

std::vector<Scheme> SweepSpec::schemes() const {
  if (scheme) return {*scheme};
  return {Scheme::MaxMax, Scheme::MaxSum};
}

void parse_snr_range(std::string_view text, SweepSpec& spec) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw DomainError("SNR range must be start:stop:step, got '" + std::string(text) + "'");
  SweepSpec tmp = spec;
  tmp.snr_db_start = parse_double(parts[0], "SNR start");
  tmp.snr_db_stop = parse_double(parts[1], "SNR stop");
  tmp.snr_db_step = parse_double(parts[2], "SNR step");
  tmp.validate();
  spec = tmp;
}

std::vector<SweepCurve> run_sweep(const SystemConfig& cfg, const SweepSpec& spec, Metric metric) {
  spec.validate();
  cfg.validate();
  const std::vector<double> grid = spec.grid();
  const std::vector<Scheme> schemes = spec.schemes();
  const double threshold = metric_threshold(cfg, metric);
  std::vector<SweepCurve> curves;

  if (spec.method == Method::MonteCarlo) {
    const McSweep sweep = estimate_sweep(cfg, grid, threshold, spec.trials, spec.seed, spec.mc);
    for (Scheme s : schemes) {
      SweepCurve c{s, spec.method, {curve_label(s, spec.method), grid, {}}, {}, spec.trials, spec.seed};
      for (const McEstimate& e : sweep.of(s)) {
        c.curve.value.push_back(e.mean);
        c.std_error.push_back(e.stderr);
      }
      curves.push_back(std::move(c));
    }
    return curves;
  }

  const AnalyticModel model(cfg);
  for (Scheme s : schemes) {
    SweepCurve c{s, spec.method, {curve_label(s, spec.method), grid, std::vector<double>(grid.size())},
                 {}, 0, 0};
    if (spec.method == Method::Asymptotic) {
      const AsymptoticGains g = model.asymptotic_gains(s, threshold);
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = std::exp(-g.diversity * std::log(g.coding * db_to_linear(grid[i])));
        c.curve.value[i] = std::min(v, 1.0);
      }
    } else {
      parallel_for(grid.size(), spec.mc.threads, [&](std::size_t i) {
        c.curve.value[i] = model.cdf(s, threshold, db_to_linear(grid[i]));
      });
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

void write_csv(std::ostream& os, const std::vector<SweepCurve>& curves) {
  os << kCsvHeader << '\n';
  for (const SweepCurve& c : curves) {
    const bool mc = c.method == Method::MonteCarlo;
    for (std::size_t i = 0; i < c.curve.size(); ++i) {
      os << fmt_snr(c.curve.gamma_bar_db[i]) << ',' << scheme_name(c.scheme) << ','
         << method_name(c.method) << ',' << fmt_value(c.curve.value[i]) << ',';
      if (mc) os << fmt_value(c.std_error[i]) << ',' << c.trials << ',' << c.seed;
      else os << ",,";
      os << '\n';
    }
  }
}

std::string to_csv(const std::vector<SweepCurve>& curves) {
  std::ostringstream os;
  write_csv(os, curves);
  return os.str();
}

std::vector<PerformanceCurve> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw DomainError("missing or unexpected CSV header");
  std::vector<PerformanceCurve> curves;
  std::map<std::string, std::size_t> index;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) throw DomainError("CSV line " + std::to_string(line_no) + ": expected 7 fields");
    const std::string label = std::string(f[1]) + "/" + std::string(f[2]);
    auto [it, inserted] = index.emplace(label, curves.size());
    if (inserted) curves.push_back({label, {}, {}});
    PerformanceCurve& c = curves[it->second];
    c.gamma_bar_db.push_back(parse_double(f[0], "snr_db"));
    c.value.push_back(parse_double(f[3], "value"));
  }
  return curves;
}

// ---- presets ---------------------------------------------------------------

SystemConfig baseline_config() {
  SystemConfig cfg = SystemConfig::uniform(4, 16, 1.0, 1.0, 20.0, PortGrid{2, 2, 1.0, 1.0, 1.0});
  cfg.gamma_bar_db = 0.0;
  cfg.gamma_th_db = 0.0;
  cfg.R_bits = 3000.0;
  cfg.B_hz = 1e6;
  cfg.T_th_s = 3e-3;
  return cfg;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7a", "fig7b"};
  return names;
}

FigurePreset make_preset(std::string_view name) {
  FigurePreset p;
  p.name = std::string(name);
  const SystemConfig base = baseline_config();
  auto add = [&](std::string tag, std::string label, SystemConfig cfg) {
    cfg.validate();
    p.variants.push_back({std::move(tag), std::move(label), std::move(cfg)});
  };
  auto fmt_int = [](double v) { return format("%.0f", v); };

  if (name == "fig2") {
    for (std::size_t n : {1, 2, 3, 4}) {
      SystemConfig c = base;
      c.N = n;
      c.broadcast_uniform(16, 1.0, 1.0, 20.0);
      add("N" + std::to_string(n), "N=" + std::to_string(n), c);
    }
  } else if (name == "fig3") {
    for (std::size_t side : {1, 2, 3, 4, 5}) {
      SystemConfig c = base;
      c.grid = PortGrid{side, side, 1.0, 1.0, 1.0};
      c.broadcast_uniform(16, 1.0, 1.0, 20.0);
      add("K" + std::to_string(side * side), "K=" + std::to_string(side * side), c);
    }
  } else if (name == "fig4") {
    const PortGrid grids[] = {{2, 2, 1, 1, 1}, {2, 3, 1, 2, 1}, {2, 4, 1, 2, 1}, {2, 5, 1, 3, 1}, {4, 4, 2, 2, 1}};
    for (const PortGrid& g : grids) {
      SystemConfig c = base;
      c.grid = g;
      c.broadcast_uniform(16, 1.0, 1.0, 20.0);
      const std::string shape = std::to_string(g.K1) + "x" + std::to_string(g.K2);
      const std::string area = fmt_int(g.d1) + "x" + fmt_int(g.d2);
      add("K" + shape + "_A" + area, "K=" + shape + " A=" + area, c);
    }
  } else if (name == "fig5") {
    for (std::size_t m : {8, 16, 32, 64}) {
      SystemConfig c = base;
      c.broadcast_uniform(m, 1.0, 1.0, 20.0);
      add("M" + std::to_string(m), "M=" + std::to_string(m), c);
    }
  } else if (name == "fig6") {
    for (double m : {1.0, 2.0, 3.0}) {
      SystemConfig c = base;
      c.broadcast_uniform(16, m, 1.0, 20.0);
      add("m" + fmt_int(m), "m=" + fmt_int(m), c);
    }
  } else if (name == "fig7a") {
    p.metric = Metric::DelayOutage;
    for (double r : {1500.0, 3000.0, 4500.0, 6000.0}) {
      SystemConfig c = base;
      c.R_bits = r;
      add("R" + fmt_int(r), "R=" + fmt_int(r) + " bits", c);
    }
  } else if (name == "fig7b") {
    p.metric = Metric::DelayOutage;
    for (double b : {0.5e6, 1e6, 2e6, 4e6}) {
      SystemConfig c = base;
      c.B_hz = b;
      const std::string mhz = format("%g", b / 1e6);
      add("B" + mhz + "MHz", "B=" + mhz + " MHz", c);
    }
  } else {
    throw DomainError("unknown preset '" + std::string(name) + "'");
  }
  return p;
}

FigureResult run_figure(const FigurePreset& preset, const SweepSpec& spec,
                        const std::filesystem::path& out_dir) {
  spec.validate();
  FigureResult result;
  std::filesystem::create_directories(out_dir);
  for (const FigureVariant& v : preset.variants) {
    const std::vector<SweepCurve> curves = run_sweep(v.cfg, spec, preset.metric);
    const std::filesystem::path file = out_dir / (preset.name + "_" + v.tag + ".csv");
    std::ofstream os(file, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + file.string());
    write_csv(os, curves);
    if (!os) throw std::runtime_error("write failed for " + file.string());
    result.csv_files.push_back(file);
    for (const SweepCurve& c : curves) {
      PerformanceCurve pc = c.curve;
      pc.label = v.label + " " + pc.label;
      result.curves.push_back(std::move(pc));
    }
  }
  result.svg_file = out_dir / (preset.name + ".svg");
  emit_svg(result.curves, result.svg_file, preset.name);
  return result;
}

// ---- curve analysis --------------------------------------------------------

double snr_at_level(const PerformanceCurve& curve, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("level must lie in (0, 1)");
  const double target = std::log10(level);
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double v0 = curve.value[i];
    const double v1 = curve.value[i + 1];
    if (v0 >= level && v1 <= level && v1 > 0.0) {
      if (v0 == v1) return curve.gamma_bar_db[i];
      const double l0 = std::log10(v0);
      const double l1 = std::log10(v1);
      const double t = (target - l0) / (l1 - l0);
      return curve.gamma_bar_db[i] + t * (curve.gamma_bar_db[i + 1] - curve.gamma_bar_db[i]);
    }
  }
  throw DomainError("curve '" + curve.label + "' does not cross level " + format("%g", level));
}

double gain_at_level(const PerformanceCurve& a, const PerformanceCurve& b, double level) {
  return snr_at_level(a, level) - snr_at_level(b, level);
}

// ---- validation ------------------------------------------------------------

std::vector<ValidationReport> validate_against_mc(const SystemConfig& cfg, const SweepSpec& spec) {
  SweepSpec mc_spec = spec;
  mc_spec.method = Method::MonteCarlo;
  mc_spec.validate();
  cfg.validate();
  const std::vector<double> grid = mc_spec.grid();
  const McSweep sweep = estimate_sweep(cfg, grid, cfg.gamma_th(), mc_spec.trials, mc_spec.seed, mc_spec.mc);
  const AnalyticModel model(cfg);
  std::vector<ValidationReport> reports;
  for (Scheme s : mc_spec.schemes()) {
    ValidationReport r;
    r.scheme = s;
    r.max_rel_gap = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      ValidationPoint p;
      p.snr_db = grid[i];
      p.analytic = model.outage_probability(s, db_to_linear(grid[i]));
      p.mc = sweep.of(s)[i];
      p.rel_gap = p.analytic > 0.0 ? std::abs(p.mc.mean - p.analytic) / p.analytic
                                   : std::numeric_limits<double>::infinity();
      p.in_band = p.analytic >= kBandLow && p.analytic <= kBandHigh;
      if (p.in_band) {
        ++r.band_points;
        if (std::isnan(r.max_rel_gap) || p.rel_gap > r.max_rel_gap) r.max_rel_gap = p.rel_gap;
      }
      r.points.push_back(p);
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

void write_validation(std::ostream& os, const std::vector<ValidationReport>& reports) {
  os << "snr_db,scheme,analytic,mc,mc_stderr,rel_gap,in_band\n";
  for (const ValidationReport& r : reports) {
    for (const ValidationPoint& p : r.points) {
      os << fmt_snr(p.snr_db) << ',' << scheme_name(r.scheme) << ',' << fmt_value(p.analytic) << ','
         << fmt_value(p.mc.mean) << ',' << fmt_value(p.mc.stderr) << ',' << fmt_value(p.rel_gap) << ','
         << (p.in_band ? 1 : 0) << '\n';
    }
  }
  os << "# scheme,max_rel_gap,band_points,band_low,band_high\n";
  for (const ValidationReport& r : reports) {
    os << "# " << scheme_name(r.scheme) << ',' << fmt_value(r.max_rel_gap) << ',' << r.band_points << ','
       << fmt_value(kBandLow) << ',' << fmt_value(kBandHigh) << '\n';
  }
}

}  // namespace risfas
