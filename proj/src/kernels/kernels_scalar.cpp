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

#include "kernels_impl.hpp"

namespace risfas::kernels::scalar {

namespace {

void lower_tri_matvec(const double* lower, const double* w, double* out, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) out[i] = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double wj = w[j];
    const double* col = lower + j * k;
    for (std::size_t i = j; i < k; ++i) {
      const double prod = col[i] * wj;
      out[i] = out[i] + prod;
    }
  }
}

void axpy(double alpha, const double* x, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double prod = alpha * x[i];
    acc[i] = acc[i] + prod;
  }
}

void mul_accumulate(const double* x, const double* y, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double prod = x[i] * y[i];
    acc[i] = acc[i] + prod;
  }
}

void square_scale(const double* x, double scale, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double sq = x[i] * x[i];
    out[i] = scale * sq;
  }
}

void count_below(const double* gains, double value, double threshold, std::uint64_t* counts,
                 std::size_t n) {
  for (std::size_t p = 0; p < n; ++p) {
    const double v = gains[p] * value;
    counts[p] += v < threshold ? 1u : 0u;
  }
}

}  // namespace

const Table kTable = {lower_tri_matvec, axpy, mul_accumulate, square_scale, count_below};

}  // namespace risfas::kernels::scalar
