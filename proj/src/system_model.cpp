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

#include "risfas/system_model.hpp"

#include <cmath>
#include <string>

#include "risfas/errors.hpp"

namespace risfas {

void PortGrid::validate() const {
  if (K1 < 1) throw ConfigError("K1", "must be >= 1");
  if (K2 < 1) throw ConfigError("K2", "must be >= 1");
  if (!(d1 >= 0.0) || !std::isfinite(d1)) throw ConfigError("d1", "must be finite and >= 0");
  if (!(d2 >= 0.0) || !std::isfinite(d2)) throw ConfigError("d2", "must be finite and >= 0");
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw ConfigError("wavelength", "must be finite and > 0");
  }
}

std::size_t map_2d_to_1d(std::size_t u1, std::size_t u2, const PortGrid& grid) {
  if (u1 < 1 || u1 > grid.K1 || u2 < 1 || u2 > grid.K2) {
    throw DomainError("map_2d_to_1d: port (" + std::to_string(u1) + "," + std::to_string(u2) +
                      ") outside the grid");
  }
  return (u2 - 1) * grid.K1 + u1;
}

std::pair<std::size_t, std::size_t> map_1d_to_2d(std::size_t u, const PortGrid& grid) {
  if (u < 1 || u > grid.K()) {
    throw DomainError("map_1d_to_2d: port " + std::to_string(u) + " outside the grid");
  }
  return {(u - 1) % grid.K1 + 1, (u - 1) / grid.K1 + 1};
}

double sinc(double t) {
  if (t == 0.0) return 1.0;
  if (t == std::round(t)) return 0.0;
  const double x = M_PI * t;
  return std::sin(x) / x;
}

double spatial_correlation(std::size_t u, std::size_t v, const PortGrid& grid) {
  const auto [u1, u2] = map_1d_to_2d(u, grid);
  const auto [v1, v2] = map_1d_to_2d(v, grid);
  const auto offset = [](std::size_t a, std::size_t b, std::size_t ports, double length) {
    if (ports == 1) return 0.0;
    const double delta = a > b ? static_cast<double>(a - b) : static_cast<double>(b - a);
    return 2.0 * delta / static_cast<double>(ports - 1) * length;
  };
  return sinc(offset(u1, v1, grid.K1, grid.d1) + offset(u2, v2, grid.K2, grid.d2));
}

Eigen::MatrixXd sinc_correlation_entries(const PortGrid& grid) {
  grid.validate();
  const auto k = static_cast<Eigen::Index>(grid.K());
  Eigen::MatrixXd out(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    out(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = spatial_correlation(static_cast<std::size_t>(i) + 1,
                                           static_cast<std::size_t>(j) + 1, grid);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

CorrelationMatrix build_correlation_matrix(const PortGrid& grid) {
  return nearest_psd(CorrelationMatrix(sinc_correlation_entries(grid)));
}

GammaFit gamma_fit(const Nakagami& hop1, const Nakagami& hop2, std::size_t elements) {
  if (!(hop1.m >= 0.5) || !(hop2.m >= 0.5)) throw DomainError("gamma_fit: shapes must be >= 0.5");
  if (!(hop1.omega > 0.0) || !(hop2.omega > 0.0)) throw DomainError("gamma_fit: spreads must be > 0");
  if (elements < 1) throw DomainError("gamma_fit: element count must be >= 1");
  const double log_r = 2.0 * (std::lgamma(hop1.m + 0.5) - std::lgamma(hop1.m)) +
                       2.0 * (std::lgamma(hop2.m + 0.5) - std::lgamma(hop2.m)) -
                       std::log(hop1.m) - std::log(hop2.m);
  const double one_minus_r = -std::expm1(log_r);
  if (!(one_minus_r > 0.0)) throw DomainError("gamma_fit: non-positive variance term");
  const double r = std::exp(log_r);
  const double count = static_cast<double>(elements);
  return {count * r / one_minus_r,
          std::sqrt(hop1.omega * hop2.omega) * one_minus_r / std::sqrt(r)};
}

double nakagami_mean(const Nakagami& p) {
  return std::exp(std::lgamma(p.m + 0.5) - std::lgamma(p.m)) * std::sqrt(p.omega / p.m);
}

double SystemConfig::dor_threshold() const {
  return std::exp2(R_bits / (B_hz * T_th_s)) - 1.0;
}

bool SystemConfig::is_identical() const {
  const GammaFit ref = fit(0, 0);
  const double loss = path_loss(0);
  const auto close = [](double x, double y) { return std::fabs(x - y) <= 1e-12 * std::fabs(y); };
  for (std::size_t n = 0; n < N; ++n) {
    if (!close(path_loss(n), loss)) return false;
    for (std::size_t k = 0; k < K(); ++k) {
      const GammaFit f = fit(k, n);
      if (!close(f.a, ref.a) || !close(f.b, ref.b)) return false;
    }
  }
  return true;
}

void SystemConfig::validate() const {
  grid.validate();
  if (N < 1) throw ConfigError("N", "must be >= 1");
  const auto check_len = [&](const char* key, std::size_t have, std::size_t want) {
    if (have != want) {
      throw ConfigError(key, "expected " + std::to_string(want) + " values, got " +
                                 std::to_string(have));
    }
  };
  check_len("M", M.size(), N);
  check_len("m1", m1.size(), N);
  check_len("omega1", omega1.size(), N);
  check_len("L1", L1.size(), N);
  check_len("L2", L2.size(), N);
  check_len("m2", m2.size(), N * K());
  check_len("omega2", omega2.size(), N * K());
  const auto key = [](const char* name, std::size_t i) {
    return std::string(name) + "[" + std::to_string(i) + "]";
  };
  for (std::size_t n = 0; n < N; ++n) {
    if (M[n] < 1) throw ConfigError(key("M", n), "must be >= 1");
    if (!(m1[n] >= 0.5) || !std::isfinite(m1[n])) throw ConfigError(key("m1", n), "must be >= 0.5");
    if (!(omega1[n] > 0.0) || !std::isfinite(omega1[n])) throw ConfigError(key("omega1", n), "must be > 0");
    if (!(L1[n] > 0.0) || !std::isfinite(L1[n])) throw ConfigError(key("L1", n), "must be > 0");
    if (!(L2[n] > 0.0) || !std::isfinite(L2[n])) throw ConfigError(key("L2", n), "must be > 0");
  }
  for (std::size_t k = 0; k < K(); ++k) {
    for (std::size_t n = 0; n < N; ++n) {
      const std::string idx = "[" + std::to_string(k) + "][" + std::to_string(n) + "]";
      const double m = m2[k * N + n];
      const double w = omega2[k * N + n];
      if (!(m >= 0.5) || !std::isfinite(m)) throw ConfigError("m2" + idx, "must be >= 0.5");
      if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("omega2" + idx, "must be > 0");
    }
  }
  if (!std::isfinite(gamma_bar_db)) throw ConfigError("gamma_bar_db", "must be finite");
  if (std::isnan(gamma_th_db)) throw ConfigError("gamma_th_db", "must not be NaN");
  if (!(R_bits >= 0.0) || !std::isfinite(R_bits)) throw ConfigError("R_bits", "must be >= 0");
  if (!(B_hz > 0.0) || !std::isfinite(B_hz)) throw ConfigError("B_hz", "must be > 0");
  if (!(T_th_s > 0.0) || !std::isfinite(T_th_s)) throw ConfigError("T_th_s", "must be > 0");
}

void SystemConfig::broadcast_uniform(std::size_t elements, double m, double omega, double distance) {
  M.assign(N, elements);
  m1.assign(N, m);
  omega1.assign(N, omega);
  L1.assign(N, distance);
  L2.assign(N, distance);
  m2.assign(N * K(), m);
  omega2.assign(N * K(), omega);
}

SystemConfig SystemConfig::uniform(std::size_t n_ris, std::size_t elements, double m, double omega,
                                   double distance, const PortGrid& grid) {
  SystemConfig cfg;
  cfg.N = n_ris;
  cfg.grid = grid;
  cfg.broadcast_uniform(elements, m, omega, distance);
  return cfg;
}

}  // namespace risfas
