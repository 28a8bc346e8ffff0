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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "risfas/kernels.hpp"
#include "risfas/montecarlo.hpp"
#include "risfas/rng.hpp"

using namespace risfas;
namespace kn = risfas::kernels;

namespace {

bool avx2_usable() { return kn::avx2_available() && kn::table(kn::Backend::Avx2).axpy != nullptr; }

std::vector<double> random_vec(std::mt19937_64& g, std::size_t n, double lo = -3.0, double hi = 3.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(g);
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Restores automatic backend selection when a test case ends.
struct BackendGuard {
  ~BackendGuard() { kn::reset_backend(); }
};

}  // namespace

TEST_CASE("philox4x32-10 known answers") {
  using A4 = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u}) == A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
}

TEST_CASE("counter streams are reproducible and well spread") {
  CounterStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    differs_c |= x != c.next_u64();
    differs_d |= x != d.next_u64();
  }
  CHECK(differs_c);
  CHECK(differs_d);

  CounterStream s(1, 0);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0, usum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_uniform();
    CHECK_UNARY(u > 0.0 && u < 1.0);
    usum += u;
    const double z = s.next_normal();
    sum += z;
    sum2 += z * z;
  }
  CHECK(std::abs(usum / n - 0.5) < 5 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(sum / n) < 5 / std::sqrt(double(n)));
  CHECK(std::abs(sum2 / n - 1.0) < 5 * std::sqrt(2.0 / n));
}

TEST_CASE("backend selection") {
  BackendGuard guard;
  kn::force_backend(kn::Backend::Scalar);
  CHECK(kn::active_backend() == kn::Backend::Scalar);
  CHECK(kn::backend_name(kn::Backend::Scalar) == "scalar");
  if (avx2_usable()) {
    kn::force_backend(kn::Backend::Avx2);
    CHECK(kn::active_backend() == kn::Backend::Avx2);
  } else {
    CHECK_THROWS(kn::force_backend(kn::Backend::Avx2));
  }
}

TEST_CASE("AVX2 kernels are bitwise identical to the scalar reference") {
  if (!avx2_usable()) {
    MESSAGE("AVX2 unavailable; equivalence not exercised");
    return;
  }
  const kn::Table& s = kn::table(kn::Backend::Scalar);
  const kn::Table& v = kn::table(kn::Backend::Avx2);
  std::mt19937_64 g(2024);
  for (std::size_t n = 0; n <= 37; ++n) {
    CAPTURE(n);
    const auto x = random_vec(g, n);
    const auto y = random_vec(g, n);
    const auto acc0 = random_vec(g, n);
    const double alpha = random_vec(g, 1)[0];

    auto a1 = acc0, a2 = acc0;
    s.axpy(alpha, x.data(), a1.data(), n);
    v.axpy(alpha, x.data(), a2.data(), n);
    CHECK(same_bits(a1, a2));

    a1 = acc0, a2 = acc0;
    s.mul_accumulate(x.data(), y.data(), a1.data(), n);
    v.mul_accumulate(x.data(), y.data(), a2.data(), n);
    CHECK(same_bits(a1, a2));

    std::vector<double> o1(n), o2(n);
    s.square_scale(x.data(), 1.0 / 160000.0, o1.data(), n);
    v.square_scale(x.data(), 1.0 / 160000.0, o2.data(), n);
    CHECK(same_bits(o1, o2));

    const auto lower = random_vec(g, n * n);
    std::vector<double> m1(n), m2(n);
    s.lower_tri_matvec(lower.data(), x.data(), m1.data(), n);
    v.lower_tri_matvec(lower.data(), x.data(), m2.data(), n);
    CHECK(same_bits(m1, m2));

    const auto gains = random_vec(g, n, 0.0, 2.0);
    std::vector<std::uint64_t> c1(n, 3), c2(n, 3);
    for (double value : {0.0, 0.5, 1.0, 7.0}) {
      s.count_below(gains.data(), value, 1.0, c1.data(), n);
      v.count_below(gains.data(), value, 1.0, c2.data(), n);
    }
    CHECK(c1 == c2);
  }
}

TEST_CASE("kernel semantics") {
  BackendGuard guard;
  for (kn::Backend b : {kn::Backend::Scalar, kn::Backend::Avx2}) {
    if (b == kn::Backend::Avx2 && !avx2_usable()) continue;
    kn::force_backend(b);
    std::vector<double> acc = {1, 2, 3, 4, 5};
    const std::vector<double> x = {1, 1, 1, 1, 1};
    kn::axpy(2.0, x, acc);
    CHECK(acc == std::vector<double>{3, 4, 5, 6, 7});
    kn::mul_accumulate(x, acc, acc);
    CHECK(acc == std::vector<double>{6, 8, 10, 12, 14});
    std::vector<double> out(5);
    kn::square_scale(acc, 0.5, out);
    CHECK(out == std::vector<double>{18, 32, 50, 72, 98});
    // [[1,0],[2,3]] * (1, 1)
    const std::vector<double> lower = {1, 2, 0, 3};
    std::vector<double> w = {1, 1}, r(2);
    kn::lower_tri_matvec(lower, w, r);
    CHECK(r == std::vector<double>{1, 5});
    std::vector<std::uint64_t> counts(5, 0);
    kn::count_below(out, 0.02, 1.0, counts);  // 18 * 0.02 = 0.36 ... 98 * 0.02 = 1.96
    CHECK(counts == std::vector<std::uint64_t>{1, 1, 0, 0, 0});
  }
}

TEST_CASE("Monte Carlo results do not depend on the backend") {
  if (!avx2_usable()) return;
  BackendGuard guard;
  SystemConfig cfg = SystemConfig::uniform(3, 13, 1.3, 1.0, 20.0, PortGrid{3, 2, 1.0, 0.7, 1.0});
  const std::vector<double> db = {25, 30, 35, 40};
  kn::force_backend(kn::Backend::Scalar);
  const CorrelationMatrix corr = build_correlation_matrix(cfg.grid);
  const ChannelSampler sampler(cfg, corr);
  const SnrMatrix a = sampler.sample(5, 123, 1000.0);
  const McSweep sa = estimate_sweep(cfg, db, 1.0, 4000, 9);
  kn::force_backend(kn::Backend::Avx2);
  const SnrMatrix b = sampler.sample(5, 123, 1000.0);
  const McSweep sb = estimate_sweep(cfg, db, 1.0, 4000, 9);
  CHECK(same_bits(a.values, b.values));
  for (std::size_t i = 0; i < db.size(); ++i) {
    CHECK(sa.max_max[i].outages == sb.max_max[i].outages);
    CHECK(sa.max_sum[i].outages == sb.max_sum[i].outages);
  }
}
