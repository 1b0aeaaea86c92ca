// Copyright 2026 The ffm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file moments.hpp
 * @brief Shifted moments of |L(1/2 + i t_j, chi_D)| over H_{2g+1,q} and the
 *        upper-bound shape they are compared against.
 *
 * Shifts are angles theta_j = t_j ln q. The bound is
 *
 *   X (ln X)^{sum a_j^2 / 4}
 *     prod_{j<l} F(theta_j - theta_l)^{a_j a_l / 2} F(theta_j + theta_l)^{a_j a_l / 2}
 *     prod_j     F(2 theta_j)^{a_j^2 / 4 + a_j / 2}
 *
 * with F(alpha) = |zeta_A(1 + i alpha / ln q + 1 / ln X)| or
 * F(alpha) = min(ln X, 1 / bar_theta(alpha)).
 */

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ffm/errors.hpp"
#include "ffm/lfunction.hpp"
#include "ffm/sweep.hpp"

namespace ffm {

/// Distance from theta to the nearest multiple of 2pi, in [0, pi].
inline double bar_theta(double theta) {
  const double two_pi = 2 * std::numbers::pi;
  return std::fabs(theta - two_pi * std::nearbyint(theta / two_pi));
}

struct MomentSpec {
  std::uint32_t q = 3;
  int g = 1;
  std::vector<double> a{1.0};
  std::vector<double> theta{0.0};

  /// Checks the invariants and reduces every angle to [0, 2pi).
  void validate() {
    if (g < 0) throw DomainError("genus must be nonnegative");
    if (a.empty()) throw ConfigError("at least one exponent a_j is required");
    if (a.size() != theta.size()) throw ConfigError("exponent and angle lists differ in length");
    for (double x : a) {
      if (!(x > 0) || !std::isfinite(x)) throw ConfigError("exponents a_j must be positive and finite");
    }
    for (double& t : theta) {
      if (!std::isfinite(t)) throw ConfigError("angles must be finite");
      t = SpectralPoint::reduce(t);
    }
  }

  double log_X() const { return (2 * g + 1) * std::log(static_cast<double>(q)); }
  double X() const { return std::pow(static_cast<double>(q), 2 * g + 1); }
};

enum class BoundVariant { zeta, min };

/// The bound factor at angle alpha.
inline double bound_factor(double alpha, const MomentSpec& s, BoundVariant v) {
  const double lnX = s.log_X();
  if (v == BoundVariant::zeta) {
    const double lnq = std::log(static_cast<double>(s.q));
    return std::abs(zeta_a(Complex(1.0 + 1.0 / lnX, alpha / lnq), s.q));
  }
  const double b = bar_theta(alpha);
  return b == 0 ? lnX : std::min(lnX, 1.0 / b);
}

inline double theorem1_bound(MomentSpec spec, BoundVariant variant) {
  spec.validate();
  const double lnX = spec.log_X();
  const std::size_t k = spec.a.size();
  double sum_sq = 0;
  for (double x : spec.a) sum_sq += x * x;
  double log_bound = std::log(spec.X()) + sum_sq / 4 * std::log(lnX);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = j + 1; l < k; ++l) {
      const double e = spec.a[j] * spec.a[l] / 2;
      log_bound += e * std::log(bound_factor(spec.theta[j] - spec.theta[l], spec, variant));
      log_bound += e * std::log(bound_factor(spec.theta[j] + spec.theta[l], spec, variant));
    }
    const double aj = spec.a[j];
    log_bound += (aj * aj / 4 + aj / 2) * std::log(bound_factor(2 * spec.theta[j], spec, variant));
  }
  return std::exp(log_bound);
}

/// Values of |L| below this are treated as zeros of L.
inline constexpr double kZeroThreshold = 1e-14;

struct MomentSum {
  double value = 0;
  std::int64_t zeros_detected = 0;
};

/// prod_j |L(u_j)|^{a_j} for one coefficient vector; zero if some |L| vanishes.
inline double moment_term(std::span<const std::int64_t> c, const MomentSpec& spec, bool& is_zero) {
  double prod = 1;
  is_zero = false;
  for (std::size_t j = 0; j < spec.a.size(); ++j) {
    const double v = std::abs(lpoly_eval_u(c, SpectralPoint(spec.theta[j]).u(spec.q)));
    if (v < kZeroThreshold) {
      is_zero = true;
      return 0.0;
    }
    prod *= std::pow(v, spec.a[j]);
  }
  return prod;
}

/// Family sum of prod_j |L(1/2 + i t_j, chi_D)|^{a_j}, sharded over workers.
inline MomentSum shifted_moment(const LFamily& fam, MomentSpec spec, const SweepOptions& opt) {
  spec.validate();
  if (fam.q() != spec.q || fam.g() != spec.g) throw ConfigError("L-family does not match the moment spec");
  if (fam.size() == 0) throw DomainError("empty family");
  auto r = sweep(fam.size(), opt, [&](IndexRange range) {
    ShardResult s(1, 1);
    for (std::size_t i = range.begin; i < range.end; ++i) {
      bool zero = false;
      s.sums[0].add(moment_term(fam.coeffs(i), spec, zero));
      s.ints[0] += zero;
    }
    return s;
  });
  if (!r) throw ConfigError("moment sweep was interrupted; resume from the checkpoint");
  return {r->sums[0].value(), r->ints[0]};
}

inline MomentSum shifted_moment(MomentSpec spec, const ComputeOptions& opt) {
  spec.validate();
  auto fam = lfamily_for(spec.q, spec.g, opt);
  SweepOptions so;
  so.workers = opt.workers;
  return shifted_moment(*fam, spec, so);
}

struct MomentReport {
  MomentSpec spec;
  double empirical = 0;
  double bound_zeta = 0;
  double bound_min = 0;
  double ratio_zeta = 0;
  double ratio_min = 0;
  std::size_t family_size = 0;
  std::int64_t zeros_detected = 0;
};

inline MomentReport moment_report(MomentSpec spec, const ComputeOptions& opt) {
  spec.validate();
  auto fam = lfamily_for(spec.q, spec.g, opt);
  SweepOptions so;
  so.workers = opt.workers;
  auto m = shifted_moment(*fam, spec, so);
  MomentReport r;
  r.spec = spec;
  r.empirical = m.value;
  r.zeros_detected = m.zeros_detected;
  r.family_size = fam->size();
  r.bound_zeta = theorem1_bound(spec, BoundVariant::zeta);
  r.bound_min = theorem1_bound(spec, BoundVariant::min);
  r.ratio_zeta = r.empirical / r.bound_zeta;
  r.ratio_min = r.empirical / r.bound_min;
  return r;
}

/// One report per genus; every family is checked against the budget before
/// any computation starts.
inline std::vector<MomentReport> moment_ratio_sweep(std::uint32_t q, int g_lo, int g_hi, const MomentSpec& tmpl,
                                                    const ComputeOptions& opt) {
  if (g_lo > g_hi) throw ConfigError("empty genus range");
  for (int g = g_lo; g <= g_hi; ++g) check_budget(q, g, opt.budget);
  std::vector<MomentReport> out;
  for (int g = g_lo; g <= g_hi; ++g) {
    MomentSpec s = tmpl;
    s.q = q;
    s.g = g;
    out.push_back(moment_report(s, opt));
  }
  return out;
}

/// Largest factor by which a ratio grows from one genus to the next; the
/// boundedness heuristic flags growth beyond 2 per unit genus.
inline double max_ratio_growth(const std::vector<double>& ratios) {
  double worst = 0;
  for (std::size_t i = 1; i < ratios.size(); ++i) worst = std::max(worst, ratios[i] / ratios[i - 1]);
  return worst;
}

}  // namespace ffm
