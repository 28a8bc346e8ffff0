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

#include "risfas/correlation_matrix.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "risfas/errors.hpp"

namespace risfas {

namespace {
constexpr double kEigenFloor = 1e-10;
constexpr double kPivotFloor = 1e-12;
}  // namespace

CorrelationMatrix::CorrelationMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  const Eigen::Index k = entries_.rows();
  if (k < 1 || entries_.cols() != k) throw DimensionError("CorrelationMatrix: must be square, K >= 1");
  for (Eigen::Index i = 0; i < k; ++i) {
    if (std::fabs(entries_(i, i) - 1.0) > 1e-12) {
      throw DomainError("CorrelationMatrix: diagonal entry " + std::to_string(i) + " is not 1");
    }
    entries_(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = entries_(i, j);
      if (!std::isfinite(v) || std::fabs(v - entries_(j, i)) > 1e-12) {
        throw DomainError("CorrelationMatrix: not symmetric at (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
      }
      entries_(j, i) = v;
    }
  }
}

CorrelationMatrix CorrelationMatrix::identity(std::size_t k) {
  return CorrelationMatrix(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(k),
                                                     static_cast<Eigen::Index>(k)));
}

bool CorrelationMatrix::is_identity() const {
  return entries_.isIdentity(0.0);
}

double CorrelationMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

CorrelationMatrix nearest_psd(const CorrelationMatrix& corr) {
  if (corr.size() == 1 || corr.is_identity()) return corr;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(corr.entries());
  if (solver.info() != Eigen::Success) throw NonConvergence("nearest_psd: eigensolver failed");
  const Eigen::VectorXd& values = solver.eigenvalues();
  if (values.minCoeff() >= kEigenFloor) return corr;

  const Eigen::VectorXd clipped = values.cwiseMax(kEigenFloor);
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  Eigen::MatrixXd repaired = vectors * clipped.asDiagonal() * vectors.transpose();
  const Eigen::VectorXd scale = repaired.diagonal().cwiseSqrt().cwiseInverse();
  repaired = scale.asDiagonal() * repaired * scale.asDiagonal();
  // Re-symmetrize and pin the diagonal so validation sees exact structure.
  repaired = 0.5 * (repaired + repaired.transpose());
  repaired.diagonal().setOnes();
  return CorrelationMatrix(repaired.cwiseMax(-1.0).cwiseMin(1.0));
}

LowerFactor semidefinite_cholesky(const CorrelationMatrix& corr) {
  const std::size_t k = corr.size();
  LowerFactor factor{k, std::vector<double>(k * k, 0.0)};
  auto at = [&](std::size_t i, std::size_t j) -> double& { return factor.colmajor[i + j * k]; };
  for (std::size_t j = 0; j < k; ++j) {
    double pivot = corr(j, j);
    for (std::size_t p = 0; p < j; ++p) pivot -= at(j, p) * at(j, p);
    if (pivot < -1e-8) {
      throw NonConvergence("semidefinite_cholesky: matrix is not positive semidefinite");
    }
    if (pivot <= kPivotFloor) continue;  // degenerate direction: zero column
    const double diag = std::sqrt(pivot);
    at(j, j) = diag;
    for (std::size_t i = j + 1; i < k; ++i) {
      double v = corr(i, j);
      for (std::size_t p = 0; p < j; ++p) v -= at(i, p) * at(j, p);
      at(i, j) = v / diag;
    }
  }
  return factor;
}

}  // namespace risfas
