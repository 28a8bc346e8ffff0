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

#include "risfas/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "risfas/errors.hpp"
#include "risfas/kernels.hpp"
#include "risfas/rng.hpp"
#include "risfas/special_functions.hpp"

namespace risfas {

namespace {

struct Workspace {
  std::vector<double> w, z, beta, alpha, acc, column;

  explicit Workspace(std::size_t k, std::size_t max_elements)
      : w(k), z(k), beta(k), alpha(std::max(k, max_elements)), acc(k), column(k) {}
};

// Unit-SNR selection helpers on the raw K x N layout.
double max_max_value(std::span<const double> v) {
  return *std::max_element(v.begin(), v.end());
}

double max_sum_value(std::span<const double> v, std::size_t k, std::size_t n) {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += v[i * n + j];
    best = std::max(best, s);
  }
  return best;
}

double nakagami_from_uniform(double m, double step, double u) {
  return std::sqrt(step * inv_reg_lower_gamma(m, u));
}

}  // namespace

std::string_view scheme_name(Scheme s) { return s == Scheme::MaxMax ? "max-max" : "max-sum"; }

Scheme parse_scheme(std::string_view name) {
  if (name == "max-max" || name == "maxmax" || name == "MaxMax") return Scheme::MaxMax;
  if (name == "max-sum" || name == "maxsum" || name == "MaxSum") return Scheme::MaxSum;
  throw DomainError("unknown scheme '" + std::string(name) + "'");
}

std::string_view first_hop_name(FirstHop f) { return f == FirstHop::Shared ? "shared" : "per-port"; }

FirstHop parse_first_hop(std::string_view name) {
  if (name == "shared") return FirstHop::Shared;
  if (name == "per-port") return FirstHop::PerPort;
  throw DomainError("unknown first-hop mode '" + std::string(name) + "'");
}

SnrMatrix::SnrMatrix(std::size_t k, std::size_t n, std::vector<double> v)
    : K(k), N(n), values(std::move(v)) {
  if (K < 1 || N < 1 || values.size() != K * N) throw DimensionError("SnrMatrix: shape mismatch");
  for (double x : values) {
    if (!(x >= 0.0)) throw DomainError("SnrMatrix: entries must be >= 0");
  }
}

MaxMaxChoice select_max_max(const SnrMatrix& s) {
  MaxMaxChoice best{0, 0, s(0, 0)};
  for (std::size_t k = 0; k < s.K; ++k) {
    for (std::size_t n = 0; n < s.N; ++n) {
      if (s(k, n) > best.snr) best = {k, n, s(k, n)};
    }
  }
  return best;
}

MaxSumChoice select_max_sum(const SnrMatrix& s) {
  MaxSumChoice best{0, -std::numeric_limits<double>::infinity()};
  for (std::size_t n = 0; n < s.N; ++n) {
    double sum = 0.0;
    for (std::size_t k = 0; k < s.K; ++k) sum += s(k, n);
    if (sum > best.snr) best = {n, sum};
  }
  return best;
}

double nakagami_from_normal_score(double m, double omega, double z) {
  const double step = omega / m;
  if (z <= 0.0) return std::sqrt(step * inv_reg_lower_gamma(m, std_normal_cdf(z)));
  const double q = std::max(std_normal_cdf(-z), std::numeric_limits<double>::min());
  return std::sqrt(step * inv_reg_upper_gamma(m, q));
}

ChannelSampler::ChannelSampler(const SystemConfig& cfg, const CorrelationMatrix& corr,
                               FirstHop first_hop)
    : k_(cfg.K()), n_(cfg.N), first_hop_(first_hop), identity_(corr.is_identity()) {
  cfg.validate();
  if (corr.size() != k_) throw DimensionError("ChannelSampler: correlation size does not match K");
  factor_ = semidefinite_cholesky(corr).colmajor;
  for (std::size_t n = 0; n < n_; ++n) {
    Ris r;
    r.elements = cfg.M[n];
    r.m1 = cfg.m1[n];
    r.step1 = cfg.omega1[n] / cfg.m1[n];
    for (std::size_t k = 0; k < k_; ++k) {
      const Nakagami hop = cfg.second_hop(k, n);
      r.m2.push_back(hop.m);
      r.step2.push_back(hop.omega / hop.m);
    }
    r.inv_loss = 1.0 / cfg.path_loss(n);
    ris_.push_back(std::move(r));
  }
}

void ChannelSampler::sample_unit(std::uint64_t seed, std::uint64_t trial,
                                 std::span<double> out) const {
  if (out.size() != k_ * n_) throw DimensionError("sample_unit: output size must be K * N");
  std::size_t max_elements = 0;
  for (const Ris& r : ris_) max_elements = std::max(max_elements, r.elements);
  Workspace ws(k_, max_elements);
  CounterStream stream(seed, trial);

  for (std::size_t n = 0; n < n_; ++n) {
    const Ris& r = ris_[n];
    if (first_hop_ == FirstHop::Shared) {
      for (std::size_t i = 0; i < r.elements; ++i) {
        ws.alpha[i] = nakagami_from_uniform(r.m1, r.step1, stream.next_uniform());
      }
    }
    std::fill(ws.acc.begin(), ws.acc.end(), 0.0);
    for (std::size_t i = 0; i < r.elements; ++i) {
      for (double& v : ws.w) v = stream.next_normal();
      if (identity_) {
        ws.z = ws.w;
      } else {
        kernels::lower_tri_matvec(factor_, ws.w, ws.z);
      }
      for (std::size_t k = 0; k < k_; ++k) {
        const double score = ws.z[k];
        const double m = r.m2[k];
        const double x = score <= 0.0
                             ? inv_reg_lower_gamma(m, std_normal_cdf(score))
                             : inv_reg_upper_gamma(m, std::max(std_normal_cdf(-score),
                                                               std::numeric_limits<double>::min()));
        ws.beta[k] = std::sqrt(r.step2[k] * x);
      }
      if (first_hop_ == FirstHop::Shared) {
        kernels::axpy(ws.alpha[i], ws.beta, ws.acc);
      } else {
        for (std::size_t k = 0; k < k_; ++k) {
          ws.alpha[k] = nakagami_from_uniform(r.m1, r.step1, stream.next_uniform());
        }
        kernels::mul_accumulate(std::span<const double>(ws.alpha.data(), k_), ws.beta, ws.acc);
      }
    }
    kernels::square_scale(ws.acc, r.inv_loss, ws.column);
    for (std::size_t k = 0; k < k_; ++k) out[k * n_ + n] = ws.column[k];
  }
}

SnrMatrix ChannelSampler::sample(std::uint64_t seed, std::uint64_t trial, double gamma_bar) const {
  std::vector<double> v(k_ * n_);
  sample_unit(seed, trial, v);
  for (double& x : v) x *= gamma_bar;
  return SnrMatrix(k_, n_, std::move(v));
}

SnrMatrix sample_snr_matrix(const SystemConfig& cfg, const CorrelationMatrix& corr,
                            std::uint64_t trial, std::uint64_t seed, FirstHop first_hop) {
  return ChannelSampler(cfg, corr, first_hop).sample(seed, trial, cfg.gamma_bar());
}

McEstimate McEstimate::from_counts(std::uint64_t outages, std::uint64_t trials, std::uint64_t seed) {
  McEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.outages = outages;
  e.mean = trials ? static_cast<double>(outages) / static_cast<double>(trials) : 0.0;
  e.stderr = trials ? std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials)) : 0.0;
  return e;
}

McSweep estimate_sweep(const SystemConfig& cfg, std::span<const double> gamma_bar_db,
                       double threshold, std::uint64_t trials, std::uint64_t seed,
                       const McOptions& opts) {
  if (trials < 1) throw DomainError("estimate_sweep: trials must be >= 1");
  if (std::isnan(threshold) || threshold < 0.0) throw DomainError("estimate_sweep: threshold must be >= 0");
  const CorrelationMatrix corr = build_correlation_matrix(cfg.grid);
  const ChannelSampler sampler(cfg, corr, opts.first_hop);
  const std::size_t points = gamma_bar_db.size();
  std::vector<double> gains;
  for (double db : gamma_bar_db) gains.push_back(db_to_linear(db));

  unsigned workers = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, trials));

  struct Partial {
    std::vector<std::uint64_t> mm, ms;
  };
  std::vector<Partial> partials(workers, Partial{std::vector<std::uint64_t>(points, 0),
                                                 std::vector<std::uint64_t>(points, 0)});
  const auto work = [&](unsigned w) {
    const std::uint64_t begin = trials * w / workers;
    const std::uint64_t end = trials * (w + 1) / workers;
    std::vector<double> unit(sampler.K() * sampler.N());
    Partial& part = partials[w];
    for (std::uint64_t t = begin; t < end; ++t) {
      sampler.sample_unit(seed, t, unit);
      kernels::count_below(gains, max_max_value(unit), threshold, part.mm);
      kernels::count_below(gains, max_sum_value(unit, sampler.K(), sampler.N()), threshold, part.ms);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  McSweep out;
  out.gamma_bar_db.assign(gamma_bar_db.begin(), gamma_bar_db.end());
  for (std::size_t p = 0; p < points; ++p) {
    std::uint64_t mm = 0, ms = 0;
    for (const Partial& part : partials) {
      mm += part.mm[p];
      ms += part.ms[p];
    }
    out.max_max.push_back(McEstimate::from_counts(mm, trials, seed));
    out.max_sum.push_back(McEstimate::from_counts(ms, trials, seed));
  }
  return out;
}

McEstimate estimate_op(const SystemConfig& cfg, Scheme scheme, std::uint64_t trials,
                       std::uint64_t seed, const McOptions& opts) {
  const double point[] = {cfg.gamma_bar_db};
  return estimate_sweep(cfg, point, cfg.gamma_th(), trials, seed, opts).of(scheme).front();
}

McEstimate estimate_dor(const SystemConfig& cfg, Scheme scheme, std::uint64_t trials,
                        std::uint64_t seed, const McOptions& opts) {
  if (!(cfg.R_bits >= 0.0 && cfg.B_hz > 0.0 && cfg.T_th_s > 0.0)) {
    throw DomainError("estimate_dor: R >= 0, B > 0 and T_th > 0 required");
  }
  const double point[] = {cfg.gamma_bar_db};
  return estimate_sweep(cfg, point, cfg.dor_threshold(), trials, seed, opts).of(scheme).front();
}

}  // namespace risfas
