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

#include "risfas/mvn_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "risfas/errors.hpp"
#include "risfas/rng.hpp"

namespace risfas {

namespace {

constexpr int kShifts = 8;
constexpr std::size_t kInitialSamples = 1024;
constexpr double kZeroCorrelation = 1e-14;

std::vector<double> richtmyer_generator(std::size_t dims) {
  std::vector<double> out;
  out.reserve(dims);
  for (unsigned candidate = 2; out.size() < dims; ++candidate) {
    bool prime = true;
    for (unsigned f = 2; f * f <= candidate; ++f) {
      if (candidate % f == 0) {
        prime = false;
        break;
      }
    }
    if (prime) {
      const double r = std::sqrt(static_cast<double>(candidate));
      out.push_back(r - std::floor(r));
    }
  }
  return out;
}

// One block of mutually correlated coordinates, ordered by ascending limit.
struct Block {
  std::vector<double> upper;
  LowerFactor factor;
};

class SovIntegrand {
 public:
  explicit SovIntegrand(const Block& block)
      : block_(block), y_(block.upper.size(), 0.0) {}

  double operator()(const double* w) {
    const std::size_t d = block_.upper.size();
    const LowerFactor& c = block_.factor;
    double e = conditional(0, 0.0);
    double f = e;
    for (std::size_t i = 1; i < d && f > 0.0; ++i) {
      const double prev = c(i - 1, i - 1) > 0.0
                              ? std_normal_inv_cdf(std::clamp(w[i - 1] * e, 1e-300, 1.0 - 1e-16))
                              : 0.0;
      y_[i - 1] = prev;
      double s = 0.0;
      for (std::size_t j = 0; j < i; ++j) s += c(i, j) * y_[j];
      e = conditional(i, s);
      f *= e;
    }
    return f;
  }

 private:
  double conditional(std::size_t i, double shift) const {
    const double diag = block_.factor(i, i);
    const double room = block_.upper[i] - shift;
    if (diag > 0.0) return std_normal_cdf(room / diag);
    return room >= 0.0 ? 1.0 : 0.0;
  }

  const Block& block_;
  std::vector<double> y_;
};

MvnEstimate integrate_block(const Block& block, const Accuracy& acc, std::uint64_t seed,
                            std::uint64_t block_id) {
  const std::size_t dims = block.upper.size() - 1;
  const std::vector<double> gen = richtmyer_generator(dims);
  std::vector<std::vector<double>> shifts(kShifts, std::vector<double>(dims));
  for (int r = 0; r < kShifts; ++r) {
    CounterStream stream(seed, block_id * kShifts + static_cast<std::uint64_t>(r));
    for (double& v : shifts[r]) v = stream.next_uniform();
  }

  SovIntegrand integrand(block);
  std::vector<double> sums(kShifts, 0.0);
  std::vector<double> w(dims), wa(dims);
  std::size_t done = 0;
  std::size_t target = std::min(kInitialSamples, acc.max_terms_or_samples);
  MvnEstimate est;
  while (true) {
    for (int r = 0; r < kShifts; ++r) {
      for (std::size_t p = done + 1; p <= target; ++p) {
        for (std::size_t j = 0; j < dims; ++j) {
          double x = static_cast<double>(p) * gen[j] + shifts[r][j];
          x -= std::floor(x);
          w[j] = std::fabs(2.0 * x - 1.0);
          wa[j] = 1.0 - w[j];
        }
        sums[r] += 0.5 * (integrand(w.data()) + integrand(wa.data()));
      }
    }
    done = target;
    double mean = 0.0;
    for (double s : sums) mean += s / static_cast<double>(done);
    mean /= kShifts;
    double var = 0.0;
    for (double s : sums) {
      const double dev = s / static_cast<double>(done) - mean;
      var += dev * dev;
    }
    var /= static_cast<double>(kShifts * (kShifts - 1));
    est = {mean, std::sqrt(var), done};
    if (est.stderr <= acc.abs_tol || done >= acc.max_terms_or_samples) break;
    target = std::min(2 * done, acc.max_terms_or_samples);
  }
  est.value = std::clamp(est.value, 0.0, 1.0);
  return est;
}

LowerFactor factor_with_repair(const CorrelationMatrix& sub) {
  try {
    return semidefinite_cholesky(sub);
  } catch (const NonConvergence&) {
    return semidefinite_cholesky(nearest_psd(sub));
  }
}

}  // namespace

MvnEstimate mvn_cdf_estimate(std::span<const double> upper, const CorrelationMatrix& corr,
                             const Accuracy& acc, std::uint64_t seed) {
  acc.validate();
  const std::size_t k = corr.size();
  if (upper.size() != k) throw DimensionError("mvn_cdf: upper limit length does not match K");

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < k; ++i) {
    if (std::isnan(upper[i])) throw DomainError("mvn_cdf: NaN upper limit");
    if (upper[i] == -std::numeric_limits<double>::infinity()) return {0.0, 0.0, 0};
    if (upper[i] != std::numeric_limits<double>::infinity()) active.push_back(i);
  }

  // Connected components of the nonzero-correlation graph.
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t a = 0; a < active.size(); ++a) {
    for (std::size_t b = 0; b < a; ++b) {
      if (std::fabs(corr(active[a], active[b])) > kZeroCorrelation) {
        parent[find(active[a])] = find(active[b]);
      }
    }
  }
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> group_of(k, k);
  for (std::size_t i : active) {
    const std::size_t root = find(i);
    if (group_of[root] == k) {
      group_of[root] = groups.size();
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(i);
  }

  MvnEstimate total{1.0, 0.0, 0};
  double rel_var = 0.0;
  std::uint64_t block_id = 0;
  for (auto& members : groups) {
    MvnEstimate part;
    if (members.size() == 1) {
      part = {std_normal_cdf(upper[members[0]]), 0.0, 0};
    } else {
      std::stable_sort(members.begin(), members.end(),
                       [&](std::size_t x, std::size_t y) { return upper[x] < upper[y]; });
      const auto d = static_cast<Eigen::Index>(members.size());
      Eigen::MatrixXd sub(d, d);
      for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) sub(i, j) = corr(members[i], members[j]);
      }
      Block block;
      block.factor = factor_with_repair(CorrelationMatrix(sub));
      for (std::size_t m : members) block.upper.push_back(upper[m]);
      part = integrate_block(block, acc, seed, block_id++);
      total.samples_per_shift = std::max(total.samples_per_shift, part.samples_per_shift);
    }
    if (part.value > 0.0) rel_var += (part.stderr / part.value) * (part.stderr / part.value);
    total.value *= part.value;
  }
  total.stderr = total.value * std::sqrt(rel_var);
  return total;
}

}  // namespace risfas
