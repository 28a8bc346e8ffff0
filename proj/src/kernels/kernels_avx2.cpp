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

#if defined(RISFAS_HAVE_AVX2_TU) && defined(__AVX2__)
#include <immintrin.h>

namespace risfas::kernels::avx2 {

namespace {

void lower_tri_matvec(const double* lower, const double* w, double* out, std::size_t k) {
  for (std::size_t i = 0; i < k; ++i) out[i] = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    const double* col = lower + j * k;
    const __m256d wj = _mm256_set1_pd(w[j]);
    std::size_t i = j;
    for (; i + 4 <= k; i += 4) {
      const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(col + i), wj);
      _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), prod));
    }
    for (; i < k; ++i) out[i] = out[i] + col[i] * w[j];
  }
}

void axpy(double alpha, const double* x, double* acc, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(a, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), prod));
  }
  for (; i < n; ++i) acc[i] = acc[i] + alpha * x[i];
}

void mul_accumulate(const double* x, const double* y, double* acc, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), prod));
  }
  for (; i < n; ++i) acc[i] = acc[i] + x[i] * y[i];
}

void square_scale(const double* x, double scale, double* out, std::size_t n) {
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(s, _mm256_mul_pd(v, v)));
  }
  for (; i < n; ++i) out[i] = scale * (x[i] * x[i]);
}

void count_below(const double* gains, double value, double threshold, std::uint64_t* counts,
                 std::size_t n) {
  const __m256d v = _mm256_set1_pd(value);
  const __m256d th = _mm256_set1_pd(threshold);
  std::size_t p = 0;
  for (; p + 4 <= n; p += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(gains + p), v);
    // All-ones lanes are -1 as integers; subtracting adds one.
    const __m256i mask = _mm256_castpd_si256(_mm256_cmp_pd(prod, th, _CMP_LT_OQ));
    __m256i* dst = reinterpret_cast<__m256i*>(counts + p);
    _mm256_storeu_si256(dst, _mm256_sub_epi64(_mm256_loadu_si256(dst), mask));
  }
  for (; p < n; ++p) counts[p] += gains[p] * value < threshold ? 1u : 0u;
}

}  // namespace

const Table kTable = {lower_tri_matvec, axpy, mul_accumulate, square_scale, count_below};
bool compiled() { return true; }

}  // namespace risfas::kernels::avx2

#else

namespace risfas::kernels::avx2 {
const Table kTable = {nullptr, nullptr, nullptr, nullptr, nullptr};
bool compiled() { return false; }
}  // namespace risfas::kernels::avx2

#endif
