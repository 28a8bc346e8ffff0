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

#ifndef RISFAS_CORRELATION_MATRIX_HPP
#define RISFAS_CORRELATION_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace risfas {

// Symmetric, unit-diagonal K x K matrix with entries in [-1, 1]. Positive
// semidefiniteness is not enforced here; see nearest_psd().
class CorrelationMatrix {
 public:
  // Validates shape, symmetry (1e-12) and unit diagonal.
  explicit CorrelationMatrix(Eigen::MatrixXd entries);

  static CorrelationMatrix identity(std::size_t k);

  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Eigen::MatrixXd& entries() const noexcept { return entries_; }

  bool is_identity() const;
  double min_eigenvalue() const;

 private:
  Eigen::MatrixXd entries_;
};

/// Eigenvalue clip at 1e-10 followed by a rescale back to unit diagonal.
/// Inputs whose smallest eigenvalue already clears the clip are returned
/// unchanged.
CorrelationMatrix nearest_psd(const CorrelationMatrix& corr);

// Lower-triangular factor L with L L^T = corr, stored column-major in a dense
// K x K buffer (upper part zero). Pivots below 1e-12 are treated as exact
// zeros, so semidefinite inputs factor without failing.
struct LowerFactor {
  std::size_t k = 0;
  std::vector<double> colmajor;

  double operator()(std::size_t i, std::size_t j) const { return colmajor[i + j * k]; }
};

// Throws NonConvergence if a pivot is significantly negative.
LowerFactor semidefinite_cholesky(const CorrelationMatrix& corr);

}  // namespace risfas

#endif  // RISFAS_CORRELATION_MATRIX_HPP
