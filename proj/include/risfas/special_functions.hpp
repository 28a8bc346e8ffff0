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

#ifndef RISFAS_SPECIAL_FUNCTIONS_HPP
#define RISFAS_SPECIAL_FUNCTIONS_HPP

#include <cstddef>

namespace risfas {

// Truncation control shared by the series and sampling based routines.
struct Accuracy {
  double abs_tol = 1e-10;
  std::size_t max_terms_or_samples = 10000;

  // 1e-10 / 10,000 terms.
  static Accuracy scalar_default() { return {1e-10, 10000}; }
  // 1e-4 standard error / 2^16 lattice points per random shift.
  static Accuracy mvn_default() { return {1e-4, std::size_t{1} << 16}; }

  // Throws DomainError unless abs_tol in (0, 1) and max_terms_or_samples >= 1.
  void validate() const;
};

/// log Gamma(x) for x > 0.
double ln_gamma(double x);

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
///
/// Power series for x < s + 1, Lentz continued fraction for the complement
/// otherwise. Absolute error is at the 1e-15 level over the domain used here.
double reg_lower_gamma(double s, double x);

/// Regularized upper incomplete gamma Q(s, x) = 1 - P(s, x), computed without
/// cancellation in the upper tail.
double reg_upper_gamma(double s, double x);

/// Non-regularized lower incomplete gamma via the alternating series
///   sum_j (-1)^j x^(s+j) / (j! (s+j)).
///
/// Truncates once the next term falls below acc.abs_tol * |partial sum|.
/// Throws NonConvergence if that does not happen within
/// acc.max_terms_or_samples terms. Intended for x < s + 1; the sum is carried
/// in extended precision because the alternating terms cancel heavily.
double lower_gamma_series(double s, double x, const Accuracy& acc = Accuracy::scalar_default());

/// x >= 0 with P(s, x) = p, for p in [0, 1).
double inv_reg_lower_gamma(double s, double p);

/// x >= 0 with Q(s, x) = q, for q in (0, 1]. Accurate for tiny q.
double inv_reg_upper_gamma(double s, double q);

double std_normal_cdf(double x);

/// Inverse of the standard normal CDF, p strictly inside (0, 1).
double std_normal_inv_cdf(double p);

}  // namespace risfas

#endif  // RISFAS_SPECIAL_FUNCTIONS_HPP
