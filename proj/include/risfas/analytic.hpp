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

#ifndef RISFAS_ANALYTIC_HPP
#define RISFAS_ANALYTIC_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "risfas/correlation_matrix.hpp"
#include "risfas/montecarlo.hpp"
#include "risfas/special_functions.hpp"
#include "risfas/system_model.hpp"

namespace risfas {

// Clamp applied to copula marginals before Phi^-1.
inline constexpr double kCopulaClamp = 1e-12;

// One curve of a sweep: metric value per average SNR in dB. The label is
// "<scheme>/<method>".
struct PerformanceCurve {
  std::string label;
  std::vector<double> gamma_bar_db;
  std::vector<double> value;

  std::size_t size() const noexcept { return value.size(); }
  // Throws DomainError unless abscissae strictly increase and values lie in [0, 1].
  void validate() const;
};

struct AsymptoticGains {
  double diversity = 0.0;  // G_d
  double coding = 0.0;     // G_c, linear SNR units
};

/// Closed-form CDFs of the received SNR for one configuration. Holds the
/// per-(k, n) Gamma fits and the repaired port correlation; evaluation at a
/// given average SNR is pure. gamma arguments are linear SNR thresholds.
class AnalyticModel {
 public:
  explicit AnalyticModel(SystemConfig cfg, Accuracy mvn_acc = Accuracy::mvn_default(),
                         std::uint64_t mvn_seed = 0);

  const SystemConfig& config() const noexcept { return cfg_; }
  const CorrelationMatrix& correlation() const noexcept { return corr_; }
  const GammaFit& fit(std::size_t k, std::size_t n) const { return fits_[k * cfg_.N + n]; }

  // ---- single link and best RIS per port -----------------------------------

  /// P(gamma_{k,n} <= gamma) under the Gamma fit:
  ///   P(a, sqrt(L1^2 L2^2 gamma / (b^2 gbar))).
  double cdf_link(double gamma, std::size_t k, std::size_t n, double gamma_bar) const;

  /// Max over RISs at port k; product over n of cdf_link.
  double cdf_best_ris(double gamma, std::size_t k, double gamma_bar) const;

  /// Same quantity through the alternating incomplete-gamma series.
  double cdf_best_ris_series(double gamma, std::size_t k, double gamma_bar,
                             const Accuracy& acc = Accuracy::scalar_default()) const;

  // ---- Max-Max ------------------------------------------------------------

  /// Gaussian copula over ports: Phi_Sigma(Phi^-1(u_1), ..., Phi^-1(u_K))
  /// with u_k = cdf_best_ris clamped to [1e-12, 1 - 1e-12]. K = 1 returns the
  /// marginal unclamped.
  double cdf_max_max(double gamma, double gamma_bar) const;

  /// Independent-port form: prod_k prod_n cdf_link.
  double cdf_max_max_independent(double gamma, double gamma_bar) const;

  // ---- Max-Sum ------------------------------------------------------------

  /// Gamma approximation of S_n = sum_k gamma_{k,n}:
  ///   P(sum_k a_{k,n}, sqrt(sum_k L1^2 L2^2 gamma / (b_{k,n}^2 gbar))).
  double cdf_sum_ports(double gamma, std::size_t n, double gamma_bar) const;

  double cdf_sum_ports_series(double gamma, std::size_t n, double gamma_bar,
                              const Accuracy& acc = Accuracy::scalar_default()) const;

  /// Product over RISs of cdf_sum_ports.
  double cdf_max_sum(double gamma, double gamma_bar) const;

  double cdf(Scheme scheme, double gamma, double gamma_bar) const;

  // ---- metrics at the configured thresholds --------------------------------

  double outage_probability(Scheme scheme, double gamma_bar) const;
  double delay_outage_rate(Scheme scheme, double gamma_bar) const;

  /// Table of diversity and coding gains; throws DomainError unless all
  /// links share (a, b) and every RIS has the same path loss.
  AsymptoticGains asymptotic_gains(Scheme scheme, double threshold) const;

  /// (G_c gbar)^(-G_d). Not clamped; exceeds 1 at low SNR.
  double op_asymptotic(Scheme scheme, double gamma_bar, double threshold) const;

 private:
  double link_argument_sq(double gamma, std::size_t k, std::size_t n, double gamma_bar) const;

  SystemConfig cfg_;
  CorrelationMatrix corr_;
  std::vector<GammaFit> fits_;
  Accuracy mvn_acc_;
  std::uint64_t mvn_seed_;
};

// Identical-parameter closed forms (all links share a, b and path loss).
namespace identical {

// (P(a, x))^N where x = sqrt(L1^2 L2^2 gamma / (b^2 gbar)); single port.
double cdf_best_ris(double gamma, double gamma_bar, double a, double b, double loss,
                    std::size_t n_ris);
// Series form: (sum_j (-1)^j x^(a+j) / (j! (a+j) Gamma(a)))^N.
double cdf_best_ris_series(double gamma, double gamma_bar, double a, double b, double loss,
                           std::size_t n_ris, const Accuracy& acc = Accuracy::scalar_default());
// Independent ports: (P(a, x))^(K N).
double cdf_max_max(double gamma, double gamma_bar, double a, double b, double loss,
                   std::size_t ports, std::size_t n_ris);
// (P(K a, sqrt(K) x))^N.
double cdf_max_sum(double gamma, double gamma_bar, double a, double b, double loss,
                   std::size_t ports, std::size_t n_ris);
double cdf_max_sum_series(double gamma, double gamma_bar, double a, double b, double loss,
                          std::size_t ports, std::size_t n_ris,
                          const Accuracy& acc = Accuracy::scalar_default());

}  // namespace identical

// Free-function entry points evaluated at cfg.gamma_bar_db.
double cdf_gamma_kn(double gamma, std::size_t k, std::size_t n, const SystemConfig& cfg);
double cdf_best_ris(double gamma, std::size_t k, const SystemConfig& cfg);
double cdf_max_max(double gamma, const SystemConfig& cfg,
                   const Accuracy& acc = Accuracy::mvn_default(), std::uint64_t seed = 0);
double cdf_sum_ports(double gamma, std::size_t n, const SystemConfig& cfg);
double cdf_max_sum(double gamma, const SystemConfig& cfg);
double outage_probability(Scheme scheme, const SystemConfig& cfg);
double delay_outage_rate(Scheme scheme, const SystemConfig& cfg);
AsymptoticGains asymptotic_gains(Scheme scheme, const SystemConfig& cfg);
double op_asymptotic(Scheme scheme, const SystemConfig& cfg);

}  // namespace risfas

#endif  // RISFAS_ANALYTIC_HPP
