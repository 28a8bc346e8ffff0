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

#ifndef RISFAS_MONTECARLO_HPP
#define RISFAS_MONTECARLO_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "risfas/correlation_matrix.hpp"
#include "risfas/system_model.hpp"

namespace risfas {

enum class Scheme { MaxMax, MaxSum };

std::string_view scheme_name(Scheme s);  // "max-max" / "max-sum"
Scheme parse_scheme(std::string_view name);

// K x N received SNRs of one realization, index (k, n) -> values[k * N + n].
struct SnrMatrix {
  std::size_t K = 0;
  std::size_t N = 0;
  std::vector<double> values;

  SnrMatrix() = default;
  SnrMatrix(std::size_t k, std::size_t n, std::vector<double> v);

  double operator()(std::size_t k, std::size_t n) const { return values[k * N + n]; }
};

struct MaxMaxChoice {
  std::size_t k = 0;  // 0-based port
  std::size_t n = 0;  // 0-based RIS
  double snr = 0.0;
};

struct MaxSumChoice {
  std::size_t n = 0;
  double snr = 0.0;
};

/// Best single (port, RIS) pair. Ties go to the smallest k, then smallest n.
MaxMaxChoice select_max_max(const SnrMatrix& s);

/// RIS with the largest sum over all ports. Ties go to the smallest n.
MaxSumChoice select_max_sum(const SnrMatrix& s);

// How the first-hop amplitudes relate across ports. Shared follows the
// physical model (h_n does not depend on the port); PerPort redraws them for
// every port, which makes the (k, n) links independent as the closed-form
// analysis assumes.
enum class FirstHop { Shared, PerPort };

std::string_view first_hop_name(FirstHop f);
FirstHop parse_first_hop(std::string_view name);

struct McOptions {
  FirstHop first_hop = FirstHop::Shared;
  unsigned threads = 1;  // 0 = hardware concurrency
};

/// Draws correlated-Nakagami channel realizations for one configuration.
///
/// Per RIS n: alpha_i ~ Nakagami(m1, Omega1) i.i.d. over elements; for each
/// element a K-vector of standard normals is correlated by the Cholesky
/// factor of the port correlation, mapped through Phi and the Nakagami
/// quantile to beta_{i,k}; gamma_{k,n} = gbar / (L1^2 L2^2) (sum_i alpha_i
/// beta_{i,k})^2. Realization `trial` under `seed` uses its own counter-based
/// stream, so any subset of trials can be regenerated independently.
class ChannelSampler {
 public:
  ChannelSampler(const SystemConfig& cfg, const CorrelationMatrix& corr,
                 FirstHop first_hop = FirstHop::Shared);

  std::size_t K() const noexcept { return k_; }
  std::size_t N() const noexcept { return n_; }

  // Writes gamma_{k,n} / gbar (the SNR at unit average SNR) into `out`
  // (size K * N, layout of SnrMatrix).
  void sample_unit(std::uint64_t seed, std::uint64_t trial, std::span<double> out) const;

  SnrMatrix sample(std::uint64_t seed, std::uint64_t trial, double gamma_bar) const;

 private:
  struct Ris {
    std::size_t elements;
    double m1, step1;             // shape, Omega/m of the first hop
    std::vector<double> m2;       // per port
    std::vector<double> step2;    // per port, Omega/m
    double inv_loss;              // 1 / (L1^2 L2^2)
  };

  std::size_t k_;
  std::size_t n_;
  FirstHop first_hop_;
  std::vector<double> factor_;  // K x K column-major lower Cholesky factor
  bool identity_;
  std::vector<Ris> ris_;
};

SnrMatrix sample_snr_matrix(const SystemConfig& cfg, const CorrelationMatrix& corr,
                            std::uint64_t trial, std::uint64_t seed,
                            FirstHop first_hop = FirstHop::Shared);

/// Nakagami(m, Omega) amplitude whose Gaussian copula score is z.
double nakagami_from_normal_score(double m, double omega, double z);

struct McEstimate {
  double mean = 0.0;
  double stderr = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::uint64_t outages = 0;

  static McEstimate from_counts(std::uint64_t outages, std::uint64_t trials, std::uint64_t seed);
};

// Both schemes over a list of average SNRs, sharing realizations.
struct McSweep {
  std::vector<double> gamma_bar_db;
  std::vector<McEstimate> max_max;
  std::vector<McEstimate> max_sum;

  const std::vector<McEstimate>& of(Scheme s) const { return s == Scheme::MaxMax ? max_max : max_sum; }
};

/// One pass over `trials` realizations; at each average SNR the outage
/// indicator is gbar * (selected unit SNR) < threshold (linear). Every point
/// reuses the same realizations. Workers own contiguous trial ranges and
/// their counts merge by addition, so the result does not depend on
/// opts.threads.
McSweep estimate_sweep(const SystemConfig& cfg, std::span<const double> gamma_bar_db,
                       double threshold, std::uint64_t trials, std::uint64_t seed,
                       const McOptions& opts = {});

/// P(selected SNR < gamma_th) at cfg.gamma_bar_db.
McEstimate estimate_op(const SystemConfig& cfg, Scheme scheme, std::uint64_t trials,
                       std::uint64_t seed, const McOptions& opts = {});

/// Delay outage: estimate_op with threshold 2^(R / (B T_th)) - 1.
McEstimate estimate_dor(const SystemConfig& cfg, Scheme scheme, std::uint64_t trials,
                        std::uint64_t seed, const McOptions& opts = {});

}  // namespace risfas

#endif  // RISFAS_MONTECARLO_HPP
