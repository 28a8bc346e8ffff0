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
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "risfas/analytic.hpp"
#include "risfas/errors.hpp"
#include "risfas/montecarlo.hpp"

using namespace risfas;

namespace {

SystemConfig uniform_cfg(std::size_t n_ris, std::size_t elements, double m, const PortGrid& grid) {
  return SystemConfig::uniform(n_ris, elements, m, 1.0, 20.0, grid);
}

const PortGrid kGrid22{2, 2, 1.0, 1.0, 1.0};
const PortGrid kGrid11{1, 1, 1.0, 1.0, 1.0};

// Average SNR that puts the per-link CDF argument at x for fit (a, b).
double gamma_bar_for_argument(double x, const GammaFit& f, double loss, double gamma) {
  return loss * gamma / (f.b * f.b * x * x);
}

// Log of an upper bound on the rounding error of the alternating series for
// P(s, x): quad epsilon times the largest term, which is below e^x.
double series_rounding_log(double s, double x) {
  return std::log(1.93e-34) + x + s * std::log(x) - std::lgamma(s);
}

// The series is accurate when the bound is tiny and must refuse when even a
// generous discount of it exceeds the working tolerance.
bool series_is_stable(double s, double x) { return series_rounding_log(s, x) < std::log(1e-12); }
bool series_is_hopeless(double s, double x) { return series_rounding_log(s, x) > std::log(1e-4); }

}  // namespace

TEST_CASE("per-link CDF") {
  const SystemConfig cfg = uniform_cfg(1, 16, 1.0, kGrid11);
  const AnalyticModel model(cfg);
  const GammaFit f = model.fit(0, 0);
  CHECK(model.cdf_link(0.0, 0, 0, 1000.0) == 0.0);
  const double huge = 1e6 * 1000.0 * f.b * f.b / cfg.path_loss(0);
  CHECK(model.cdf_link(huge, 0, 0, 1000.0) >= 1.0 - 1e-9);
  const double gb = gamma_bar_for_argument(f.a, f, cfg.path_loss(0), 1.0);
  CHECK(model.cdf_link(1.0, 0, 0, gb) == doctest::Approx(0.52620654724798448012).epsilon(1e-6));
  CHECK_THROWS_AS(model.cdf_link(-1.0, 0, 0, 1.0), DomainError);
  CHECK_THROWS_AS(model.cdf_link(1.0, 1, 0, 1.0), DimensionError);

  SystemConfig at = cfg;
  at.gamma_bar_db = 10.0 * std::log10(gb);
  CHECK(cdf_gamma_kn(1.0, 0, 0, at) == doctest::Approx(model.cdf_link(1.0, 0, 0, gb)).epsilon(1e-15));
}

TEST_CASE("per-link CDF against simulated channels") {
  // The Gamma fit of (sum alpha beta) is an approximation; at M = 16 it
  // tracks the simulated distribution to within a percent near the median.
  const SystemConfig cfg = uniform_cfg(1, 16, 1.0, kGrid11);
  const AnalyticModel model(cfg);
  const GammaFit f = model.fit(0, 0);
  const double gb = gamma_bar_for_argument(f.a, f, cfg.path_loss(0), 1.0);
  const ChannelSampler sampler(cfg, model.correlation());
  const std::uint64_t trials = 400000;
  std::vector<double> buf(1);
  std::uint64_t below = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    sampler.sample_unit(77, t, buf);
    below += buf[0] * gb < 1.0;
  }
  const double mc = static_cast<double>(below) / trials;
  CHECK(mc == doctest::Approx(model.cdf_link(1.0, 0, 0, gb)).epsilon(0.01));
}

TEST_CASE("best-RIS CDF") {
  const SystemConfig one = uniform_cfg(1, 8, 1.0, kGrid22);
  const AnalyticModel m1(one);
  const SystemConfig two = uniform_cfg(2, 8, 1.0, kGrid22);
  const AnalyticModel m2(two);
  const double gb = 3000.0;
  for (double g : {0.1, 0.5, 1.0, 3.0}) {
    CHECK(m1.cdf_best_ris(g, 1, gb) == m1.cdf_link(g, 1, 0, gb));
    const double single = m1.cdf_link(g, 0, 0, gb);
    CHECK(m2.cdf_best_ris(g, 0, gb) == doctest::Approx(single * single).epsilon(1e-15));
  }

  // Single-port identical case through the alternating series.
  const SystemConfig k1 = uniform_cfg(3, 4, 1.0, kGrid11);
  const AnalyticModel mk(k1);
  const GammaFit f = mk.fit(0, 0);
  int stable_points = 0;
  for (double gb2 : {300.0, 1000.0, 3000.0, 10000.0}) {
    const double x = std::sqrt(k1.path_loss(0) / (f.b * f.b * gb2));
    if (series_is_stable(f.a, x)) {
      ++stable_points;
      const double closed =
          identical::cdf_best_ris_series(1.0, gb2, f.a, f.b, k1.path_loss(0), k1.N);
      CHECK(std::abs(closed - mk.cdf_best_ris(1.0, 0, gb2)) <= 1e-9);
    } else if (series_is_hopeless(f.a, x)) {
      CHECK_THROWS_AS(identical::cdf_best_ris_series(1.0, gb2, f.a, f.b, k1.path_loss(0), k1.N),
                      NonConvergence);
    }
    CHECK(std::abs(identical::cdf_best_ris(1.0, gb2, f.a, f.b, k1.path_loss(0), k1.N) -
                   mk.cdf_best_ris(1.0, 0, gb2)) <= 1e-15);
  }
  CHECK(stable_points >= 2);
}

TEST_CASE("series and product forms agree on the stable regime") {
  SystemConfig cfg = uniform_cfg(2, 8, 1.0, kGrid22);
  cfg.M = {4, 9};
  cfg.m2[1] = 2.0;
  const AnalyticModel model(cfg);
  for (double gb = 100.0; gb < 1e6; gb *= 1.7) {
    bool stable = true;
    for (std::size_t k = 0; k < cfg.K(); ++k) {
      for (std::size_t n = 0; n < cfg.N; ++n) {
        const GammaFit& f = model.fit(k, n);
        stable &= std::sqrt(cfg.path_loss(n) / (f.b * f.b * gb)) < f.a + 1.0;
      }
    }
    if (!stable) continue;
    for (std::size_t k = 0; k < cfg.K(); ++k) {
      CHECK(std::abs(model.cdf_best_ris_series(1.0, k, gb) - model.cdf_best_ris(1.0, k, gb)) <= 1e-9);
    }
  }
}

TEST_CASE("Max-Max copula") {
  const double gb = db_to_linear(35.0);
  const SystemConfig single = uniform_cfg(2, 8, 1.0, kGrid11);
  const AnalyticModel ms(single);
  CHECK(ms.cdf_max_max(1.0, gb) == ms.cdf_best_ris(1.0, 0, gb));

  const SystemConfig desk = uniform_cfg(2, 8, 1.0, kGrid22);
  const AnalyticModel md(desk);
  CHECK(md.correlation().is_identity());
  const double acc = Accuracy::mvn_default().abs_tol;
  for (double g : {0.3, 1.0, 2.0}) {
    CHECK(std::abs(md.cdf_max_max(g, gb) - md.cdf_max_max_independent(g, gb)) <= 3 * acc);
    const double iid = identical::cdf_max_max(g, gb, md.fit(0, 0).a, md.fit(0, 0).b, desk.path_loss(0), 4, 2);
    CHECK(md.cdf_max_max_independent(g, gb) == doctest::Approx(iid).epsilon(1e-13));
  }
  CHECK(md.cdf_max_max(0.0, gb) == 0.0);
}

TEST_CASE("Max-Max copula under correlation matches a simulated Gaussian copula") {
  const SystemConfig cfg = uniform_cfg(2, 8, 1.0, PortGrid{3, 1, 0.5, 0.0, 1.0});
  const AnalyticModel model(cfg);
  REQUIRE_FALSE(model.correlation().is_identity());
  const double gb = db_to_linear(34.0);
  // Oracle: draw Z ~ N(0, Sigma) and count Phi(Z_k) <= u_k for all k.
  const Eigen::MatrixXd l = model.correlation().entries().llt().matrixL();
  std::vector<double> u(3);
  for (std::size_t k = 0; k < 3; ++k) u[k] = model.cdf_best_ris(1.0, k, gb);
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd;
  const int n = 400000;
  int hits = 0;
  for (int t = 0; t < n; ++t) {
    Eigen::Vector3d w(nd(gen), nd(gen), nd(gen));
    const Eigen::Vector3d z = l * w;
    bool all = true;
    for (int k = 0; k < 3; ++k) all &= std_normal_cdf(z[k]) <= u[static_cast<std::size_t>(k)];
    hits += all;
  }
  const double p = static_cast<double>(hits) / n;
  const double se = std::sqrt(p * (1 - p) / n);
  CHECK(std::abs(model.cdf_max_max(1.0, gb) - p) < 4 * se + 1e-4);
  // Positive correlation makes the joint CDF exceed the independent product.
  CHECK(model.cdf_max_max(1.0, gb) > model.cdf_max_max_independent(1.0, gb));
}

TEST_CASE("Max-Sum forms") {
  const double gb = db_to_linear(30.0);
  const SystemConfig k1 = uniform_cfg(2, 8, 1.0, kGrid11);
  const AnalyticModel m1(k1);
  CHECK(m1.cdf_sum_ports(1.0, 1, gb) == m1.cdf_link(1.0, 0, 1, gb));
  CHECK(m1.cdf_sum_ports(0.0, 0, gb) == 0.0);

  const SystemConfig n1 = uniform_cfg(1, 8, 1.0, kGrid22);
  const AnalyticModel mn1(n1);
  CHECK(mn1.cdf_max_sum(1.0, gb) == mn1.cdf_sum_ports(1.0, 0, gb));

  const SystemConfig n3 = uniform_cfg(3, 8, 1.0, kGrid22);
  const AnalyticModel m3(n3);
  const GammaFit f = m3.fit(0, 0);
  for (double g : {0.5, 1.0, 4.0}) {
    const double inner = m3.cdf_sum_ports(g, 0, gb);
    CHECK(m3.cdf_max_sum(g, gb) == doctest::Approx(inner * inner * inner).epsilon(1e-14));
    const double cor4 = reg_lower_gamma(4 * f.a, std::sqrt(4 * n3.path_loss(0) * g / (f.b * f.b * gb)));
    CHECK(std::abs(inner - cor4) <= 1e-12);
    CHECK(std::abs(m3.cdf_max_sum(g, gb) - identical::cdf_max_sum(g, gb, f.a, f.b, n3.path_loss(0), 4, 3)) <= 1e-12);
    const double x = std::sqrt(4 * n3.path_loss(0) * g / (f.b * f.b * gb));
    if (series_is_stable(4 * f.a, x)) {
      CHECK(std::abs(m3.cdf_sum_ports_series(g, 0, gb) - inner) <= 1e-9);
    } else if (series_is_hopeless(4 * f.a, x)) {
      CHECK_THROWS_AS(m3.cdf_sum_ports_series(g, 0, gb), NonConvergence);
    }
  }
}

TEST_CASE("CDFs are proper on log-spaced grids") {
  SystemConfig het = uniform_cfg(2, 8, 1.0, PortGrid{2, 3, 1.0, 0.5, 1.0});
  het.M = {6, 11};
  het.m2[3] = 2.5;
  het.L2[1] = 35.0;
  for (const SystemConfig& cfg : {uniform_cfg(3, 16, 2.0, kGrid22), het}) {
    const AnalyticModel model(cfg);
    const double gb = db_to_linear(38.0);
    for (Scheme s : {Scheme::MaxMax, Scheme::MaxSum}) {
      CHECK(model.cdf(s, 0.0, gb) == 0.0);
      double prev = 0.0;
      for (double g = 1e-4; g < 1e5; g *= 1.6) {
        const double v = model.cdf(s, g, gb);
        CHECK(v >= prev - 2e-4);  // copula estimate carries a 1e-4 standard error
        CHECK(v <= 1.0);
        prev = std::max(prev, v);
      }
    }
    for (std::size_t k = 0; k < cfg.K(); ++k) {
      double prev = 0.0;
      for (double g = 1e-4; g < 1e5; g *= 1.6) {
        const double v = model.cdf_best_ris(g, k, gb);
        CHECK(v >= prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("scheme ordering on identical configurations") {
  for (const PortGrid& g : {kGrid22, PortGrid{3, 3, 1.0, 1.0, 1.0}, PortGrid{1, 4, 0.0, 1.0, 1.0}}) {
    const SystemConfig cfg = uniform_cfg(2, 8, 1.5, g);
    const AnalyticModel model(cfg);
    for (double db = 20.0; db <= 50.0; db += 2.5) {
      const double gb = db_to_linear(db);
      for (double th : {0.5, 1.0, 2.0}) {
        // The copula marginal clamp bounds the Max-Max error by K * 1e-12.
        CHECK(model.cdf_max_sum(th, gb) <= model.cdf_max_max(th, gb) + 1e-10);
      }
    }
  }
  const SystemConfig k1 = uniform_cfg(3, 8, 1.0, kGrid11);
  const AnalyticModel m1(k1);
  for (double db = 20.0; db <= 50.0; db += 2.5) {
    CHECK(std::abs(m1.cdf_max_sum(1.0, db_to_linear(db)) - m1.cdf_max_max(1.0, db_to_linear(db))) <= 1e-12);
  }
}

TEST_CASE("outage and delay outage") {
  SystemConfig cfg = uniform_cfg(2, 8, 1.0, kGrid22);
  const AnalyticModel model(cfg);
  for (Scheme s : {Scheme::MaxMax, Scheme::MaxSum}) {
    CHECK(model.outage_probability(s, 1e30) < 1e-12);
    double prev = 1.0;
    for (double db = 0.0; db <= 60.0; db += 1.0) {
      const double v = model.outage_probability(s, db_to_linear(db));
      CHECK(v <= prev + 2e-4);
      prev = std::min(prev, v);
      CHECK(model.delay_outage_rate(s, db_to_linear(db)) == v);
    }
  }
  SystemConfig zero = cfg;
  zero.gamma_th_db = -INFINITY;
  CHECK(outage_probability(Scheme::MaxMax, zero) == 0.0);
  CHECK(outage_probability(Scheme::MaxSum, zero) == 0.0);

  SystemConfig tiny = cfg;
  tiny.R_bits = 1e-12;
  CHECK(delay_outage_rate(Scheme::MaxSum, tiny) < 1e-12);

  cfg.gamma_bar_db = 34.0;
  double prev = 1.0;
  for (double b : {0.5e6, 1e6, 2e6, 4e6}) {
    SystemConfig c = cfg;
    c.B_hz = b;
    const double v = delay_outage_rate(Scheme::MaxMax, c);
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("asymptotic gains") {
  const SystemConfig k1 = uniform_cfg(2, 8, 1.0, kGrid11);
  const AnalyticModel m1(k1);
  const AsymptoticGains a = m1.asymptotic_gains(Scheme::MaxMax, 1.0);
  const AsymptoticGains b = m1.asymptotic_gains(Scheme::MaxSum, 1.0);
  CHECK(a.diversity == b.diversity);
  CHECK(a.coding == doctest::Approx(b.coding).epsilon(1e-14));

  const SystemConfig tiny = uniform_cfg(1, 1, 1.0, kGrid11);
  CHECK(asymptotic_gains(Scheme::MaxMax, tiny).diversity == doctest::Approx(0.80497287995926126).epsilon(1e-12));

  const SystemConfig desk = uniform_cfg(2, 8, 1.0, kGrid22);
  const AnalyticModel md(desk);
  const GammaFit f = md.fit(0, 0);
  const double K = 4.0;
  const AsymptoticGains mm = md.asymptotic_gains(Scheme::MaxMax, 1.0);
  const AsymptoticGains ms = md.asymptotic_gains(Scheme::MaxSum, 1.0);
  CHECK(mm.diversity == doctest::Approx(K * 2 * f.a / 2).epsilon(1e-14));
  CHECK(ms.diversity == mm.diversity);
  CHECK(mm.coding == doctest::Approx(std::pow(f.a * std::tgamma(f.a), 2 / f.a) * f.b * f.b / desk.path_loss(0)).epsilon(1e-12));
  CHECK(ms.coding == doctest::Approx(std::pow(K * f.a * std::tgamma(K * f.a), 2 / (K * f.a)) * f.b * f.b /
                                     (K * desk.path_loss(0)))
                         .epsilon(1e-12));
  CHECK(md.op_asymptotic(Scheme::MaxMax, 1e5, 1.0) == doctest::Approx(std::pow(mm.coding * 1e5, -mm.diversity)).epsilon(1e-12));

  // Large shapes stay finite where Gamma(Ka) overflows.
  const SystemConfig big = uniform_cfg(2, 64, 3.0, PortGrid{4, 4, 2.0, 2.0, 1.0});
  const AsymptoticGains g = asymptotic_gains(Scheme::MaxSum, big);
  CHECK(std::isfinite(g.coding));
  CHECK(g.coding > 0.0);

  SystemConfig het = desk;
  het.m2[2] = 2.0;
  try {
    asymptotic_gains(Scheme::MaxMax, het);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()) == "asymptotics require identical parameters");
  }
}

TEST_CASE("exact outage approaches the asymptote") {
  // Small-shape configuration; compare at the SNR where the exact OP is 1e-6.
  const SystemConfig cfg = uniform_cfg(1, 1, 1.0, kGrid11);
  const AnalyticModel model(cfg);
  double lo = 0.0, hi = 200.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (model.outage_probability(Scheme::MaxMax, db_to_linear(mid)) > 1e-6 ? lo : hi) = mid;
  }
  const double gb = db_to_linear(0.5 * (lo + hi));
  const double ratio = model.outage_probability(Scheme::MaxMax, gb) / model.op_asymptotic(Scheme::MaxMax, gb, 1.0);
  CHECK(ratio >= 0.8);
  CHECK(ratio <= 1.25);
}

TEST_CASE("PerformanceCurve validation") {
  PerformanceCurve ok{"x", {0, 1, 2}, {0.5, 0.1, 0.0}};
  CHECK_NOTHROW(ok.validate());
  PerformanceCurve bad_order{"x", {0, 0, 2}, {0.5, 0.1, 0.0}};
  CHECK_THROWS_AS(bad_order.validate(), DomainError);
  PerformanceCurve bad_value{"x", {0, 1}, {1.5, 0.1}};
  CHECK_THROWS_AS(bad_value.validate(), DomainError);
}
