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

#include "risfas/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "risfas/errors.hpp"
#include "risfas/mvn_cdf.hpp"

namespace risfas {

namespace {

void require_gamma(double gamma) {
  if (!(gamma >= 0.0)) throw DomainError("gamma must be >= 0");
}

void require_gamma_bar(double gamma_bar) {
  if (!(gamma_bar > 0.0)) throw DomainError("average SNR must be > 0");
}

// P(s, x) through the alternating series, normalized by Gamma(s).
double series_cdf(double s, double x, const Accuracy& acc) {
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  const double v = lower_gamma_series(s, x, acc) / std::exp(ln_gamma(s));
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

void PerformanceCurve::validate() const {
  if (gamma_bar_db.size() != value.size()) throw DimensionError("curve abscissa/value size mismatch");
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!(value[i] >= 0.0 && value[i] <= 1.0)) throw DomainError("curve value outside [0, 1]");
    if (i > 0 && !(gamma_bar_db[i] > gamma_bar_db[i - 1])) {
      throw DomainError("curve abscissae must strictly increase");
    }
  }
}

AnalyticModel::AnalyticModel(SystemConfig cfg, Accuracy mvn_acc, std::uint64_t mvn_seed)
    : cfg_(std::move(cfg)),
      corr_(CorrelationMatrix::identity(1)),
      mvn_acc_(mvn_acc),
      mvn_seed_(mvn_seed) {
  cfg_.validate();
  mvn_acc_.validate();
  corr_ = build_correlation_matrix(cfg_.grid);
  const std::size_t K = cfg_.K();
  fits_.reserve(K * cfg_.N);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t n = 0; n < cfg_.N; ++n) fits_.push_back(cfg_.fit(k, n));
  }
}

double AnalyticModel::link_argument_sq(double gamma, std::size_t k, std::size_t n,
                                       double gamma_bar) const {
  const GammaFit& f = fit(k, n);
  return cfg_.path_loss(n) * gamma / (f.b * f.b * gamma_bar);
}

double AnalyticModel::cdf_link(double gamma, std::size_t k, std::size_t n,
                               double gamma_bar) const {
  require_gamma(gamma);
  require_gamma_bar(gamma_bar);
  if (k >= cfg_.K() || n >= cfg_.N) throw DimensionError("port or RIS index out of range");
  return reg_lower_gamma(fit(k, n).a, std::sqrt(link_argument_sq(gamma, k, n, gamma_bar)));
}

double AnalyticModel::cdf_best_ris(double gamma, std::size_t k, double gamma_bar) const {
  double p = 1.0;
  for (std::size_t n = 0; n < cfg_.N; ++n) p *= cdf_link(gamma, k, n, gamma_bar);
  return p;
}

double AnalyticModel::cdf_best_ris_series(double gamma, std::size_t k, double gamma_bar,
                                          const Accuracy& acc) const {
  require_gamma(gamma);
  require_gamma_bar(gamma_bar);
  if (k >= cfg_.K()) throw DimensionError("port index out of range");
  double p = 1.0;
  for (std::size_t n = 0; n < cfg_.N; ++n) {
    p *= series_cdf(fit(k, n).a, std::sqrt(link_argument_sq(gamma, k, n, gamma_bar)), acc);
  }
  return p;
}

double AnalyticModel::cdf_max_max(double gamma, double gamma_bar) const {
  const std::size_t K = cfg_.K();
  if (K == 1) return cdf_best_ris(gamma, 0, gamma_bar);
  require_gamma(gamma);
  if (gamma == 0.0) return 0.0;
  std::vector<double> upper(K);
  for (std::size_t k = 0; k < K; ++k) {
    const double u = std::clamp(cdf_best_ris(gamma, k, gamma_bar), kCopulaClamp, 1.0 - kCopulaClamp);
    upper[k] = std_normal_inv_cdf(u);
  }
  return std::clamp(mvn_cdf(upper, corr_, mvn_acc_, mvn_seed_), 0.0, 1.0);
}

double AnalyticModel::cdf_max_max_independent(double gamma, double gamma_bar) const {
  double p = 1.0;
  for (std::size_t k = 0; k < cfg_.K(); ++k) p *= cdf_best_ris(gamma, k, gamma_bar);
  return p;
}

double AnalyticModel::cdf_sum_ports(double gamma, std::size_t n, double gamma_bar) const {
  require_gamma(gamma);
  require_gamma_bar(gamma_bar);
  if (n >= cfg_.N) throw DimensionError("RIS index out of range");
  double shape = 0.0;
  double arg_sq = 0.0;
  for (std::size_t k = 0; k < cfg_.K(); ++k) {
    shape += fit(k, n).a;
    arg_sq += link_argument_sq(gamma, k, n, gamma_bar);
  }
  return reg_lower_gamma(shape, std::sqrt(arg_sq));
}

double AnalyticModel::cdf_sum_ports_series(double gamma, std::size_t n, double gamma_bar,
                                           const Accuracy& acc) const {
  require_gamma(gamma);
  require_gamma_bar(gamma_bar);
  if (n >= cfg_.N) throw DimensionError("RIS index out of range");
  double shape = 0.0;
  double arg_sq = 0.0;
  for (std::size_t k = 0; k < cfg_.K(); ++k) {
    shape += fit(k, n).a;
    arg_sq += link_argument_sq(gamma, k, n, gamma_bar);
  }
  return series_cdf(shape, std::sqrt(arg_sq), acc);
}

double AnalyticModel::cdf_max_sum(double gamma, double gamma_bar) const {
  double p = 1.0;
  for (std::size_t n = 0; n < cfg_.N; ++n) p *= cdf_sum_ports(gamma, n, gamma_bar);
  return p;
}

double AnalyticModel::cdf(Scheme scheme, double gamma, double gamma_bar) const {
  return scheme == Scheme::MaxMax ? cdf_max_max(gamma, gamma_bar) : cdf_max_sum(gamma, gamma_bar);
}

double AnalyticModel::outage_probability(Scheme scheme, double gamma_bar) const {
  return cdf(scheme, cfg_.gamma_th(), gamma_bar);
}

double AnalyticModel::delay_outage_rate(Scheme scheme, double gamma_bar) const {
  return cdf(scheme, cfg_.dor_threshold(), gamma_bar);
}

AsymptoticGains AnalyticModel::asymptotic_gains(Scheme scheme, double threshold) const {
  if (!cfg_.is_identical()) throw DomainError("asymptotics require identical parameters");
  if (!(threshold > 0.0)) throw DomainError("asymptotic threshold must be > 0");
  const auto K = static_cast<double>(cfg_.K());
  const double N = static_cast<double>(cfg_.N);
  const GammaFit& f = fit(0, 0);
  const double loss = cfg_.path_loss(0);
  AsymptoticGains g;
  g.diversity = K * N * f.a / 2.0;
  // ln G_c = (2/s) (ln s + ln Gamma(s)) + ln(b^2 / (c L^4 gamma_th)), with
  // s = a, c = 1 for Max-Max and s = K a, c = K for Max-Sum.
  const double s = scheme == Scheme::MaxMax ? f.a : K * f.a;
  const double c = scheme == Scheme::MaxMax ? 1.0 : K;
  const double log_gc = (2.0 / s) * (std::log(s) + ln_gamma(s)) +
                        std::log(f.b * f.b / (c * loss * threshold));
  g.coding = std::exp(log_gc);
  return g;
}

double AnalyticModel::op_asymptotic(Scheme scheme, double gamma_bar, double threshold) const {
  require_gamma_bar(gamma_bar);
  const AsymptoticGains g = asymptotic_gains(scheme, threshold);
  return std::exp(-g.diversity * std::log(g.coding * gamma_bar));
}

namespace identical {

namespace {
double argument(double gamma, double gamma_bar, double b, double loss) {
  require_gamma(gamma);
  require_gamma_bar(gamma_bar);
  return std::sqrt(loss * gamma / (b * b * gamma_bar));
}
}  // namespace

double cdf_best_ris(double gamma, double gamma_bar, double a, double b, double loss,
                    std::size_t n_ris) {
  return std::pow(reg_lower_gamma(a, argument(gamma, gamma_bar, b, loss)),
                  static_cast<double>(n_ris));
}

double cdf_best_ris_series(double gamma, double gamma_bar, double a, double b, double loss,
                           std::size_t n_ris, const Accuracy& acc) {
  return std::pow(series_cdf(a, argument(gamma, gamma_bar, b, loss), acc),
                  static_cast<double>(n_ris));
}

double cdf_max_max(double gamma, double gamma_bar, double a, double b, double loss,
                   std::size_t ports, std::size_t n_ris) {
  return std::pow(reg_lower_gamma(a, argument(gamma, gamma_bar, b, loss)),
                  static_cast<double>(ports * n_ris));
}

double cdf_max_sum(double gamma, double gamma_bar, double a, double b, double loss,
                   std::size_t ports, std::size_t n_ris) {
  const auto K = static_cast<double>(ports);
  return std::pow(reg_lower_gamma(K * a, std::sqrt(K) * argument(gamma, gamma_bar, b, loss)),
                  static_cast<double>(n_ris));
}

double cdf_max_sum_series(double gamma, double gamma_bar, double a, double b, double loss,
                          std::size_t ports, std::size_t n_ris, const Accuracy& acc) {
  const auto K = static_cast<double>(ports);
  return std::pow(series_cdf(K * a, std::sqrt(K) * argument(gamma, gamma_bar, b, loss), acc),
                  static_cast<double>(n_ris));
}

}  // namespace identical

double cdf_gamma_kn(double gamma, std::size_t k, std::size_t n, const SystemConfig& cfg) {
  return AnalyticModel(cfg).cdf_link(gamma, k, n, cfg.gamma_bar());
}

double cdf_best_ris(double gamma, std::size_t k, const SystemConfig& cfg) {
  return AnalyticModel(cfg).cdf_best_ris(gamma, k, cfg.gamma_bar());
}

double cdf_max_max(double gamma, const SystemConfig& cfg, const Accuracy& acc, std::uint64_t seed) {
  return AnalyticModel(cfg, acc, seed).cdf_max_max(gamma, cfg.gamma_bar());
}

double cdf_sum_ports(double gamma, std::size_t n, const SystemConfig& cfg) {
  return AnalyticModel(cfg).cdf_sum_ports(gamma, n, cfg.gamma_bar());
}

double cdf_max_sum(double gamma, const SystemConfig& cfg) {
  return AnalyticModel(cfg).cdf_max_sum(gamma, cfg.gamma_bar());
}

double outage_probability(Scheme scheme, const SystemConfig& cfg) {
  return AnalyticModel(cfg).outage_probability(scheme, cfg.gamma_bar());
}

double delay_outage_rate(Scheme scheme, const SystemConfig& cfg) {
  return AnalyticModel(cfg).delay_outage_rate(scheme, cfg.gamma_bar());
}

AsymptoticGains asymptotic_gains(Scheme scheme, const SystemConfig& cfg) {
  return AnalyticModel(cfg).asymptotic_gains(scheme, cfg.gamma_th());
}

double op_asymptotic(Scheme scheme, const SystemConfig& cfg) {
  return AnalyticModel(cfg).op_asymptotic(scheme, cfg.gamma_bar(), cfg.gamma_th());
}

}  // namespace risfas
