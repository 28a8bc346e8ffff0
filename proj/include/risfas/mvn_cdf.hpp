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

#ifndef RISFAS_MVN_CDF_HPP
#define RISFAS_MVN_CDF_HPP

#include <cstdint>
#include <span>

#include "risfas/correlation_matrix.hpp"
#include "risfas/special_functions.hpp"

namespace risfas {

struct MvnEstimate {
  double value = 0.0;
  double stderr = 0.0;
  std::size_t samples_per_shift = 0;
};

/// P(Z <= upper componentwise) for Z ~ N(0, corr).
///
/// Genz separation of variables on the Cholesky factor with a randomized
/// Richtmyer lattice (8 independent shifts, tent-periodized, antithetic).
/// The per-shift sample count doubles from 1024 until the standard error over
/// shifts is <= acc.abs_tol or acc.max_terms_or_samples is reached. Blocks of
/// the correlation graph that are mutually uncorrelated are integrated
/// separately, so diagonal matrices give the exact product of Phi values.
/// The result is a pure function of its arguments.
MvnEstimate mvn_cdf_estimate(std::span<const double> upper, const CorrelationMatrix& corr,
                             const Accuracy& acc, std::uint64_t seed);

inline double mvn_cdf(std::span<const double> upper, const CorrelationMatrix& corr,
                      const Accuracy& acc, std::uint64_t seed) {
  return mvn_cdf_estimate(upper, corr, acc, seed).value;
}

}  // namespace risfas

#endif  // RISFAS_MVN_CDF_HPP
