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

#ifndef RISFAS_SYSTEM_MODEL_HPP
#define RISFAS_SYSTEM_MODEL_HPP

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "risfas/correlation_matrix.hpp"

namespace risfas {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Rectangular K1 x K2 port layout over a d1 x d2 (wavelengths) aperture.
// Port labels are 1-based and column-major: u = (u2 - 1) K1 + u1.
struct PortGrid {
  std::size_t K1 = 1;
  std::size_t K2 = 1;
  double d1 = 0.0;
  double d2 = 0.0;
  double wavelength = 1.0;

  std::size_t K() const noexcept { return K1 * K2; }
  double area() const noexcept { return d1 * d2; }  // wavelengths^2
  void validate() const;
};

std::size_t map_2d_to_1d(std::size_t u1, std::size_t u2, const PortGrid& grid);
std::pair<std::size_t, std::size_t> map_1d_to_2d(std::size_t u, const PortGrid& grid);

// sin(pi t) / (pi t), exactly 0 at nonzero integers.
double sinc(double t);

/// Sinc coupling between 1-based ports u and v. A dimension with a single
/// port contributes no displacement.
double spatial_correlation(std::size_t u, std::size_t v, const PortGrid& grid);

/// Raw sinc matrix before PSD repair. May be indefinite.
Eigen::MatrixXd sinc_correlation_entries(const PortGrid& grid);

/// Sinc matrix projected onto the PSD cone with nearest_psd().
CorrelationMatrix build_correlation_matrix(const PortGrid& grid);

// Nakagami-m parameters of one hop: shape m >= 0.5, spread Omega = E[X^2] > 0.
struct Nakagami {
  double m = 1.0;
  double omega = 1.0;
};

// Gamma(a, b) moment match of sum_{i<=M} alpha_i beta_i (first Laguerre term).
struct GammaFit {
  double a = 0.0;  // shape
  double b = 0.0;  // scale
};

/// Shape and scale from the product-channel moments. With
/// r = Gamma(m1+1/2)^2 Gamma(m2+1/2)^2 / (m1 m2 Gamma(m1)^2 Gamma(m2)^2):
///   a = M r / (1 - r),   b = sqrt(Omega1 Omega2) (1 - r) / sqrt(r).
/// Evaluated in log space so large shapes do not overflow.
GammaFit gamma_fit(const Nakagami& hop1, const Nakagami& hop2, std::size_t elements);

inline GammaFit gamma_fit(double m1, double m2, std::size_t elements) {
  return gamma_fit(Nakagami{m1, 1.0}, Nakagami{m2, 1.0}, elements);
}

/// E[alpha] for alpha ~ Nakagami(m, Omega).
double nakagami_mean(const Nakagami& p);

// Full scenario parameterization. Per-RIS vectors have length N; second-hop
// parameters are stored per (port k, RIS n) at index k * N + n. Indices k, n
// in this API are 0-based.
struct SystemConfig {
  std::size_t N = 1;
  std::vector<std::size_t> M;
  std::vector<double> m1;
  std::vector<double> omega1;
  std::vector<double> m2;
  std::vector<double> omega2;
  std::vector<double> L1;
  std::vector<double> L2;
  PortGrid grid;
  double gamma_bar_db = 0.0;
  double gamma_th_db = 0.0;
  double R_bits = 3000.0;
  double B_hz = 1e6;
  double T_th_s = 3e-3;

  std::size_t K() const noexcept { return grid.K(); }

  Nakagami first_hop(std::size_t n) const { return {m1[n], omega1[n]}; }
  Nakagami second_hop(std::size_t k, std::size_t n) const {
    return {m2[k * N + n], omega2[k * N + n]};
  }
  GammaFit fit(std::size_t k, std::size_t n) const {
    return gamma_fit(first_hop(n), second_hop(k, n), M[n]);
  }
  // L1^2 L2^2 for RIS n.
  double path_loss(std::size_t n) const { return L1[n] * L1[n] * L2[n] * L2[n]; }

  double gamma_bar() const { return db_to_linear(gamma_bar_db); }
  double gamma_th() const { return db_to_linear(gamma_th_db); }
  // 2^(R / (B T_th)) - 1.
  double dor_threshold() const;

  // Same fitted (a, b) for every (k, n) and same path loss for every n.
  bool is_identical() const;

  // Throws ConfigError naming the first offending key.
  void validate() const;

  // Every per-index parameter set to the same value.
  static SystemConfig uniform(std::size_t n_ris, std::size_t elements, double m, double omega,
                              double distance, const PortGrid& grid);

  // Resizes and reassigns per-(k, n) vectors after N or the grid changed.
  void broadcast_uniform(std::size_t elements, double m, double omega, double distance);
};

}  // namespace risfas

#endif  // RISFAS_SYSTEM_MODEL_HPP
