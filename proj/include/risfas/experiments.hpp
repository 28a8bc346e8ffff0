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

#ifndef RISFAS_EXPERIMENTS_HPP
#define RISFAS_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "risfas/analytic.hpp"
#include "risfas/montecarlo.hpp"
#include "risfas/system_model.hpp"

namespace risfas {

enum class Method { Analytic, MonteCarlo, Asymptotic };
std::string_view method_name(Method m);  // "analytic" / "mc" / "asymptotic"
Method parse_method(std::string_view name);

// Which threshold a sweep evaluates: gamma_th (outage) or 2^(R/(B T)) - 1.
enum class Metric { Outage, DelayOutage };

struct SweepSpec {
  double snr_db_start = 0.0;
  double snr_db_stop = 60.0;
  double snr_db_step = 1.0;
  std::optional<Scheme> scheme;  // empty = both
  Method method = Method::Analytic;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  McOptions mc;

  void validate() const;
  // start, start + step, ... up to stop inclusive (within step * 1e-9).
  std::vector<double> grid() const;
  std::vector<Scheme> schemes() const;
};

// Parses "start:stop:step" into the sweep's range fields.
void parse_snr_range(std::string_view text, SweepSpec& spec);

struct SweepCurve {
  Scheme scheme = Scheme::MaxMax;
  Method method = Method::Analytic;
  PerformanceCurve curve;
  std::vector<double> std_error;  // MC only, per point
  std::uint64_t trials = 0;       // MC only
  std::uint64_t seed = 0;         // MC only
};

/// One curve per requested scheme. Asymptotic values are clamped to 1.
std::vector<SweepCurve> run_sweep(const SystemConfig& cfg, const SweepSpec& spec,
                                  Metric metric = Metric::Outage);

inline constexpr std::string_view kCsvHeader = "snr_db,scheme,method,value,stderr,trials,seed";

void write_csv(std::ostream& os, const std::vector<SweepCurve>& curves);
std::string to_csv(const std::vector<SweepCurve>& curves);

// Inverse of write_csv; labels become "<scheme>/<method>". Throws DomainError
// on malformed input.
std::vector<PerformanceCurve> read_csv(std::istream& is);

// ---- figure presets --------------------------------------------------------

struct FigureVariant {
  std::string tag;    // file-name safe, e.g. "N4"
  std::string label;  // legend text, e.g. "N=4"
  SystemConfig cfg;
};

struct FigurePreset {
  std::string name;
  Metric metric = Metric::Outage;
  std::vector<FigureVariant> variants;
};

/// Baseline scenario: lambda = 1 m, gamma_th = 0 dB, T_th = 3 ms,
/// L1 = L2 = 20 m, Omega = 1, m = 1, M = 16, N = 4, K = 2x2, 1 x 1 lambda^2,
/// R = 3000 bits, B = 1 MHz.
SystemConfig baseline_config();

const std::vector<std::string>& preset_names();
FigurePreset make_preset(std::string_view name);  // throws DomainError on unknown names

struct FigureResult {
  std::vector<std::filesystem::path> csv_files;
  std::filesystem::path svg_file;
  std::vector<PerformanceCurve> curves;  // labelled "<variant> <scheme>/<method>"
};

/// Runs every variant of the preset and writes <name>_<tag>.csv per variant
/// plus <name>.svg into out_dir. The sweep's scheme selection is honoured.
FigureResult run_figure(const FigurePreset& preset, const SweepSpec& spec,
                        const std::filesystem::path& out_dir);

// ---- curve analysis --------------------------------------------------------

/// Average SNR (dB) at which a decreasing curve first reaches `level`,
/// interpolated linearly in (dB, log10 value). Throws DomainError when the
/// curve never brackets the level.
double snr_at_level(const PerformanceCurve& curve, double level);

/// snr_at_level(a) - snr_at_level(b): positive when b needs less SNR.
double gain_at_level(const PerformanceCurve& a, const PerformanceCurve& b, double level);

// ---- validation against Monte Carlo ----------------------------------------

struct ValidationPoint {
  double snr_db = 0.0;
  double analytic = 0.0;
  McEstimate mc;
  double rel_gap = 0.0;  // |mc - analytic| / analytic
  bool in_band = false;
};

struct ValidationReport {
  Scheme scheme = Scheme::MaxMax;
  std::vector<ValidationPoint> points;
  double max_rel_gap = 0.0;  // over in-band points; NaN when none
  std::size_t band_points = 0;
};

inline constexpr double kBandLow = 1e-3;
inline constexpr double kBandHigh = 1e-1;

/// Analytic vs Monte Carlo outage on the sweep's grid; the band is
/// analytic OP in [1e-3, 1e-1].
std::vector<ValidationReport> validate_against_mc(const SystemConfig& cfg, const SweepSpec& spec);

void write_validation(std::ostream& os, const std::vector<ValidationReport>& reports);

// ---- plotting --------------------------------------------------------------

/// Self-contained SVG line chart with a log-scaled y axis, one polyline per
/// curve and a legend. Throws DomainError on an empty set and
/// std::runtime_error when the file cannot be written.
void emit_svg(const std::vector<PerformanceCurve>& curves, const std::filesystem::path& path,
              std::string_view title = {});

std::string render_svg(const std::vector<PerformanceCurve>& curves, std::string_view title = {});

}  // namespace risfas

#endif  // RISFAS_EXPERIMENTS_HPP
