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

#include "risfas/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "risfas/errors.hpp"

namespace risfas {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

#if defined(__SIZEOF_FLOAT128__)
using Wide = __float128;
constexpr double kWideEps = 1.9259299443872359e-34;  // 2^-112
#else
using Wide = long double;
constexpr double kWideEps = std::numeric_limits<long double>::epsilon();
#endif

// Large shapes need O(sqrt(s)) terms near the transition point.
std::size_t iteration_cap(double s) {
  return 10000 + static_cast<std::size_t>(64.0 * std::sqrt(s));
}

// log1p(t) - t without cancellation near t = 0. With r = t / (2 + t),
// log1p(t) - t = -2 r sum_{j>=1} d_j r^j, d_j = 1 (j odd), j / (j + 1) (j even).
double log1pmx(double t) {
  if (std::fabs(t) > 0.5) return std::log1p(t) - t;
  const double r = t / (2.0 + t);
  double rj = r;
  double sum = 0.0;
  for (int j = 1; j < 80; ++j) {
    const double d = j % 2 ? 1.0 : static_cast<double>(j) / (j + 1.0);
    const double term = d * rj;
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    rj *= r;
  }
  return -2.0 * r * sum;
}

// lgamma(s + 1) - (s log s - s + log(2 pi s) / 2), Stirling series for large s.
double stirling_error(double s) {
  const double s2 = s * s;
  return (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * s2)) / s2) / s2) / s;
}

// log(x^s e^-x / Gamma(s)), the common prefactor of both expansions. For
// large s the direct form loses about s log(x) * eps; the Stirling split
// keeps the result accurate to a few ulps of its own magnitude.
double log_prefactor(double s, double x) {
  if (s < 30.0 || x <= 0.0) return s * std::log(x) - x - std::lgamma(s);
  const double t = (x - s) / s;
  return s * log1pmx(t) - 0.5 * std::log(2.0 * M_PI * s) + std::log(s) - stirling_error(s);
}

// P(s, x) by the power series; valid (and used) for x < s + 1.
double lower_series(double s, double x) {
  double ap = s;
  double term = 1.0 / s;
  double sum = term;
  const std::size_t cap = iteration_cap(s);
  for (std::size_t n = 0; n < cap; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) {
      const double lp = log_prefactor(s, x);
      return lp < -745.0 ? 0.0 : sum * std::exp(lp);
    }
  }
  throw NonConvergence("reg_lower_gamma: series did not converge for s=" + std::to_string(s));
}

// Q(s, x) by the modified Lentz continued fraction; used for x >= s + 1.
double upper_fraction(double s, double x) {
  double b = x + 1.0 - s;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  const std::size_t cap = iteration_cap(s);
  for (std::size_t i = 1; i <= cap; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) {
      const double lp = log_prefactor(s, x);
      return lp < -745.0 ? 0.0 : std::exp(lp) * h;
    }
  }
  throw NonConvergence("reg_upper_gamma: continued fraction did not converge for s=" +
                       std::to_string(s));
}

void check_gamma_args(double s, double x, const char* who) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError(std::string(who) + ": shape must be finite and > 0");
  }
  if (!(x >= 0.0)) throw DomainError(std::string(who) + ": argument must be >= 0");
}

double gamma_log_density(double s, double x) { return log_prefactor(s, x) - std::log(x); }

// Initial quantile guess (Numerical Recipes invgammp), for the lower tail
// probability p.
double quantile_guess(double s, double p) {
  if (s > 1.0) {
    const double pp = p < 0.5 ? p : 1.0 - p;
    const double t = std::sqrt(-2.0 * std::log(pp));
    double z = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
    if (p < 0.5) z = -z;
    return std::max(1e-3, s * std::pow(1.0 - 1.0 / (9.0 * s) - z / (3.0 * std::sqrt(s)), 3.0));
  }
  const double t = 1.0 - s * (0.253 + s * 0.12);
  if (p < t) return std::pow(p / t, 1.0 / s);
  return 1.0 - std::log(1.0 - (p - t) / (1.0 - t));
}

// Solves P(s, x) = target (upper == false) or Q(s, x) = target (upper == true)
// with Halley steps inside a maintained bracket.
double solve_quantile(double s, double target, bool upper) {
  const double p_equiv = upper ? 1.0 - target : target;
  double x = quantile_guess(s, std::clamp(p_equiv, 1e-300, 1.0 - 1e-16));
  if (upper && target < 1e-8) {
    // Deep upper tail: the generic guess is poor; start from the
    // exponential-tail asymptote Q ~ x^(s-1) e^-x / Gamma(s).
    double y = -std::log(target) - std::lgamma(s);
    for (int i = 0; i < 4; ++i) y = -std::log(target) - std::lgamma(s) + (s - 1.0) * std::log(std::max(y, 1e-3));
    x = std::max(x, y);
  }
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  const auto residual = [&](double v) {
    return upper ? target - reg_upper_gamma(s, v) : reg_lower_gamma(s, v) - target;
  };
  for (int iter = 0; iter < 200; ++iter) {
    const double f = residual(x);  // increasing in x for both tails
    if (f == 0.0) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double g = std::exp(gamma_log_density(s, x));
    double next = x;
    if (g > 0.0 && std::isfinite(g)) {
      const double u = f / g;
      const double curv = (s - 1.0) / x - 1.0;
      const double denom = 1.0 - 0.5 * std::min(1.0, u * curv);
      next = x - u / (denom > 0.1 ? denom : 1.0);
      // A converged Newton step may land on the bracket edge it just set.
      if (std::fabs(next - x) <= 4.0 * kEps * x) {
        x = next;
        break;
      }
    }
    if (!(next > lo && next < hi) || !std::isfinite(next)) {
      next = std::isfinite(hi) ? 0.5 * (lo + hi) : std::max(2.0 * x, x + 1.0);
    }
    if (std::fabs(next - x) <= 4.0 * kEps * std::max(x, 1e-300)) {
      x = next;
      break;
    }
    x = next;
  }
  const double check = std::fabs(residual(x));
  if (!(check <= 1e-10)) {
    throw NonConvergence("gamma quantile: residual " + std::to_string(check) + " for s=" +
                         std::to_string(s));
  }
  return x;
}

// Horner evaluation with coefficients in increasing degree.
template <std::size_t N>
double poly(const double (&c)[N], double x) {
  double r = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) r = r * x + c[i];
  return r;
}

}  // namespace

void Accuracy::validate() const {
  if (!(abs_tol > 0.0 && abs_tol < 1.0)) throw DomainError("Accuracy: abs_tol must be in (0,1)");
  if (max_terms_or_samples < 1) throw DomainError("Accuracy: max_terms_or_samples must be >= 1");
}

double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: x must be > 0");
  return std::lgamma(x);
}

double reg_lower_gamma(double s, double x) {
  check_gamma_args(s, x, "reg_lower_gamma");
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < s + 1.0) return lower_series(s, x);
  return 1.0 - upper_fraction(s, x);
}

double reg_upper_gamma(double s, double x) {
  check_gamma_args(s, x, "reg_upper_gamma");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < s + 1.0) return 1.0 - lower_series(s, x);
  return upper_fraction(s, x);
}

double lower_gamma_series(double s, double x, const Accuracy& acc) {
  check_gamma_args(s, x, "lower_gamma_series");
  acc.validate();
  if (x == 0.0) return 0.0;
  // gamma(s, x) = x^s * sum_j c_j / (s + j), c_j = (-x)^j / j!
  Wide c = 1;
  Wide sum = Wide(1) / Wide(s);
  const Wide wx = x;
  double peak = 1.0 / s;
  for (std::size_t j = 1; j < acc.max_terms_or_samples; ++j) {
    c *= -wx / Wide(static_cast<double>(j));
    const Wide term = c / (Wide(s) + Wide(static_cast<double>(j)));
    sum += term;
    const double mag = static_cast<double>(term < 0 ? -term : term);
    const double total = static_cast<double>(sum < 0 ? -sum : sum);
    peak = std::max(peak, mag);
    if (static_cast<double>(j) > x && mag < acc.abs_tol * total) {
      // Rounding in the largest term bounds the attainable accuracy of P.
      if (std::log(kWideEps * peak) + s * std::log(x) - std::lgamma(s) > std::log(acc.abs_tol)) {
        throw NonConvergence("lower_gamma_series: cancellation exceeds tolerance for s=" +
                             std::to_string(s) + ", x=" + std::to_string(x));
      }
      return std::pow(x, s) * static_cast<double>(sum);
    }
  }
  throw NonConvergence("lower_gamma_series: no convergence within " +
                       std::to_string(acc.max_terms_or_samples) + " terms");
}

double inv_reg_lower_gamma(double s, double p) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("inv_reg_lower_gamma: shape must be > 0");
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("inv_reg_lower_gamma: p must be in [0,1)");
  if (p == 0.0) return 0.0;
  if (s == 1.0) return -std::log1p(-p);
  if (p > 0.5) return solve_quantile(s, 1.0 - p, true);
  return solve_quantile(s, p, false);
}

double inv_reg_upper_gamma(double s, double q) {
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("inv_reg_upper_gamma: shape must be > 0");
  if (!(q > 0.0 && q <= 1.0)) throw DomainError("inv_reg_upper_gamma: q must be in (0,1]");
  if (q == 1.0) return 0.0;
  if (s == 1.0) return -std::log(q);
  if (q > 0.5) return solve_quantile(s, 1.0 - q, false);
  return solve_quantile(s, q, true);
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

// Wichura, AS241 (PPND16), followed by one Newton step against erfc.
double std_normal_inv_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("std_normal_inv_cdf: p must be in (0,1)");
  static constexpr double a[] = {3.3871328727963666080e0, 1.3314166789178437745e+2,
                                 1.9715909503065514427e+3, 1.3731693765509461125e+4,
                                 4.5921953931549871457e+4, 6.7265770927008700853e+4,
                                 3.3430575583588128105e+4, 2.5090809287301226727e+3};
  static constexpr double b[] = {1.0,
                                 4.2313330701600911252e+1, 6.8718700749205790830e+2,
                                 5.3941960214247511077e+3, 2.1213794301586595867e+4,
                                 3.9307895800092710610e+4, 2.8729085735721942674e+4,
                                 5.2264952788528545610e+3};
  static constexpr double c[] = {1.42343711074968357734e0, 4.63033784615654529590e0,
                                 5.76949722146069140550e0, 3.64784832476320460504e0,
                                 1.27045825245236838258e0, 2.41780725177450611770e-1,
                                 2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static constexpr double d[] = {1.0,
                                 2.05319162663775882187e0, 1.67638483018380384940e0,
                                 6.89767334985100004550e-1, 1.48103976427480074590e-1,
                                 1.51986665636164571966e-2, 5.47593808499534494600e-4,
                                 1.05075007164441684324e-9};
  static constexpr double e[] = {6.65790464350110377720e0, 5.46378491116411436990e0,
                                 1.78482653991729133580e0, 2.96560571828504891230e-1,
                                 2.65321895265761230930e-2, 1.24266094738807843860e-3,
                                 2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static constexpr double f[] = {1.0,
                                 5.99832206555887937690e-1, 1.36929880922735805310e-1,
                                 1.48753612908506148525e-2, 7.86869131145613259100e-4,
                                 1.84631831751005468180e-5, 1.42151175831644588870e-7,
                                 2.04426310338993978564e-15};
  const double q = p - 0.5;
  double x;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    x = q * poly(a, r) / poly(b, r);
  } else {
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    if (r <= 5.0) {
      r -= 1.6;
      x = poly(c, r) / poly(d, r);
    } else {
      r -= 5.0;
      x = poly(e, r) / poly(f, r);
    }
    if (q < 0.0) x = -x;
  }
  // Polish in whichever tail keeps the residual free of cancellation.
  const double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
  if (density > 0.0) {
    const double err = p < 0.5 ? std_normal_cdf(x) - p : (1.0 - p) - std_normal_cdf(-x);
    x -= err / density;
  }
  return x;
}

}  // namespace risfas
