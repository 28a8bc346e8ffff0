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

#include <atomic>
#include <stdexcept>

#include "kernels_impl.hpp"
#include "risfas/errors.hpp"

namespace risfas::kernels {

namespace {

Backend detect() {
  return avx2_available() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> ptr{&table(detect())};
  return ptr;
}

void check_same(std::size_t a, std::size_t b, const char* who) {
  if (a != b) throw DimensionError(std::string(who) + ": span length mismatch");
}

}  // namespace

std::string_view backend_name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return avx2::compiled() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Table& table(Backend b) {
  if (b == Backend::Avx2) {
    if (!avx2::compiled()) throw std::runtime_error("AVX2 kernels were not built");
    return avx2::kTable;
  }
  return scalar::kTable;
}

Backend active_backend() {
  return current().load() == &avx2::kTable ? Backend::Avx2 : Backend::Scalar;
}

void force_backend(Backend b) {
  if (b == Backend::Avx2 && !avx2_available()) {
    throw std::runtime_error("AVX2 is not available on this CPU");
  }
  current().store(&table(b));
}

void reset_backend() { current().store(&table(detect())); }

void lower_tri_matvec(std::span<const double> lower, std::span<const double> w,
                      std::span<double> out) {
  check_same(w.size(), out.size(), "lower_tri_matvec");
  check_same(lower.size(), w.size() * w.size(), "lower_tri_matvec");
  current().load()->lower_tri_matvec(lower.data(), w.data(), out.data(), w.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> acc) {
  check_same(x.size(), acc.size(), "axpy");
  current().load()->axpy(alpha, x.data(), acc.data(), x.size());
}

void mul_accumulate(std::span<const double> x, std::span<const double> y, std::span<double> acc) {
  check_same(x.size(), acc.size(), "mul_accumulate");
  check_same(y.size(), acc.size(), "mul_accumulate");
  current().load()->mul_accumulate(x.data(), y.data(), acc.data(), x.size());
}

void square_scale(std::span<const double> x, double scale, std::span<double> out) {
  check_same(x.size(), out.size(), "square_scale");
  current().load()->square_scale(x.data(), scale, out.data(), x.size());
}

void count_below(std::span<const double> gains, double value, double threshold,
                 std::span<std::uint64_t> counts) {
  check_same(gains.size(), counts.size(), "count_below");
  current().load()->count_below(gains.data(), value, threshold, counts.data(), gains.size());
}

}  // namespace risfas::kernels
