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

#ifndef RISFAS_KERNELS_HPP
#define RISFAS_KERNELS_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

// Data-parallel inner loops of the Monte Carlo engine. Every kernel has a
// scalar reference and an AVX2 variant; the active one is chosen at runtime
// from CPUID. Both perform the same IEEE operations in the same order per
// output element (no FMA contraction), so results are bitwise identical.
namespace risfas::kernels {

enum class Backend { Scalar, Avx2 };

std::string_view backend_name(Backend b);
bool avx2_available();
Backend active_backend();
// Overrides the CPUID choice; throws std::runtime_error if unsupported.
void force_backend(Backend b);
void reset_backend();

// out = L w for a K x K lower-triangular L stored column-major.
// Accumulation runs column by column: out[i] += L(i, j) * w[j], j ascending.
void lower_tri_matvec(std::span<const double> lower_colmajor, std::span<const double> w,
                      std::span<double> out);

// acc[i] += alpha * x[i]
void axpy(double alpha, std::span<const double> x, std::span<double> acc);

// acc[i] += x[i] * y[i]
void mul_accumulate(std::span<const double> x, std::span<const double> y, std::span<double> acc);

// out[i] = scale * (x[i] * x[i])
void square_scale(std::span<const double> x, double scale, std::span<double> out);

// counts[p] += (gains[p] * value < threshold)
void count_below(std::span<const double> gains, double value, double threshold,
                 std::span<std::uint64_t> counts);

// Direct access to one backend, for equivalence testing.
struct Table {
  void (*lower_tri_matvec)(const double*, const double*, double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*mul_accumulate)(const double*, const double*, double*, std::size_t);
  void (*square_scale)(const double*, double, double*, std::size_t);
  void (*count_below)(const double*, double, double, std::uint64_t*, std::size_t);
};

const Table& table(Backend b);

}  // namespace risfas::kernels

#endif  // RISFAS_KERNELS_HPP
