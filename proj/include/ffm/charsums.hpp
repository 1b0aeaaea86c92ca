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
 * @file charsums.hpp
 * @brief Moments of quadratic character sums and of circle integrals of |L|.
 *
 * The character sum over |f| <= q^N is the prefix sum c_0 + ... + c_N of
 * L-coefficients (c_n = 0 beyond 2g), the discrete form of the contour
 * integral of L(u) / ((1 - u) u^{N+1}).
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "ffm/errors.hpp"
#include "ffm/lfunction.hpp"
#include "ffm/quadrature.hpp"
#include "ffm/sweep.hpp"

namespace ffm {

/// sum_{deg f <= N} chi_D(f) from the L-coefficients.
inline std::int64_t char_prefix_sum(std::span<const std::int64_t> c, int N) {
  if (N < 0) throw DomainError("degree cutoff must be nonnegative");
  std::int64_t s = 0;
  for (std::size_t n = 0; n < c.size() && static_cast<int>(n) <= N; ++n) s += c[n];
  return s;
}

inline std::int64_t char_prefix_sum(const LPolynomial& L, int N) { return char_prefix_sum(L.coeffs, N); }

/// The same sum by enumerating every monic f of degree <= N.
inline std::int64_t char_prefix_sum_direct(const Poly& D, int N) {
  std::int64_t s = 0;
  for (int n = 0; n <= N; ++n) s += degree_character_sum(D, n);
  return s;
}

/// (1 / 2 pi i) times the contour integral of L(u) du / ((1 - u) u^{N+1})
/// over |u| = q^{-1/2}, by the trapezoid rule in the angle.
inline Complex prefix_sum_contour(std::span<const std::int64_t> c, std::uint32_t q, int N, int points = 512) {
  const double r = 1.0 / std::sqrt(static_cast<double>(q));
  Complex acc = 0;
  for (int k = 0; k < points; ++k) {
    const Complex u = std::polar(r, 2 * std::numbers::pi * k / points);
    acc += lpoly_eval_u(c, u) / ((1.0 - u) * std::pow(u, N));
  }
  return acc / static_cast<double>(points);
}

struct CharSumSpec {
  std::uint32_t q = 3;
  int g = 1;
  double m = 1.5;
  int N = 0;
  /// Permits m < 3/2 for exploration; the report then carries a warning.
  bool allow_small_m = false;

  void validate() const {
    if (g < 0) throw DomainError("genus must be nonnegative");
    if (N < 0) throw ConfigError("log_q Y must be a nonnegative integer");
    if (!std::isfinite(m) || m < 0) throw ConfigError("m must be a nonnegative real");
    if (m < 1.5 && !allow_small_m) throw ConfigError("m must be at least 3/2 (override to explore smaller m)");
  }
  double X() const { return std::pow(static_cast<double>(q), 2 * g + 1); }
  double log_X() const { return (2 * g + 1) * std::log(static_cast<double>(q)); }
  double Y() const { return std::pow(static_cast<double>(q), N); }
};

/// X Y^m (ln X)^{2m^2 - m + 1}.
inline double theorem2_bound(const CharSumSpec& s) {
  return s.X() * std::pow(s.Y(), s.m) * std::pow(s.log_X(), 2 * s.m * s.m - s.m + 1);
}

struct CharSumReport {
  CharSumSpec spec;
  double value = 0;
  /// Exact value when 2m is an even integer and the sum fits in 64 bits.
  std::optional<std::int64_t> exact;
  double bound = 0;
  double ratio = 0;
  std::size_t family_size = 0;
  /// |prefix sum| -> number of discriminants.
  std::map<std::int64_t, std::int64_t> histogram;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::optional<std::int64_t> checked_ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (__builtin_mul_overflow(r, b, &r)) return std::nullopt;
  }
  return r;
}

}  // namespace detail

inline CharSumReport s_m_moment(const LFamily& fam, const CharSumSpec& spec, const SweepOptions& opt) {
  spec.validate();
  if (fam.q() != spec.q || fam.g() != spec.g) throw ConfigError("L-family does not match the character-sum spec");
  const double two_m = 2 * spec.m;
  const bool integral = two_m == std::floor(two_m) && static_cast<std::int64_t>(two_m) % 2 == 0 && two_m <= 62;
  const int int_exp = static_cast<int>(two_m);
  // ints: [exact sum, overflow flag]
  auto r = sweep(fam.size(), opt, [&](IndexRange range) {
    ShardResult s(1, 2);
    for (std::size_t i = range.begin; i < range.end; ++i) {
      const std::int64_t p = std::llabs(char_prefix_sum(fam.coeffs(i), spec.N));
      s.sums[0].add(std::pow(static_cast<double>(p), two_m));
      if (integral && !s.ints[1]) {
        auto v = detail::checked_ipow(p, int_exp);
        if (!v || __builtin_add_overflow(s.ints[0], *v, &s.ints[0])) s.ints[1] = 1;
      }
    }
    return s;
  });
  if (!r) throw ConfigError("character-sum sweep was interrupted; resume from the checkpoint");
  CharSumReport rep;
  rep.spec = spec;
  rep.family_size = fam.size();
  rep.value = r->sums[0].value();
  if (integral && r->ints[1] == 0) {
    rep.exact = r->ints[0];
    rep.value = static_cast<double>(r->ints[0]);
  }
  for (std::size_t i = 0; i < fam.size(); ++i) ++rep.histogram[std::llabs(char_prefix_sum(fam.coeffs(i), spec.N))];
  rep.bound = theorem2_bound(spec);
  rep.ratio = rep.value / rep.bound;
  if (spec.m < 1.5) rep.warnings.push_back("m < 3/2 lies outside the range of the bound");
  return rep;
}

inline CharSumReport s_m_moment(const CharSumSpec& spec, const ComputeOptions& opt) {
  spec.validate();
  auto fam = lfamily_for(spec.q, spec.g, opt);
  SweepOptions so;
  so.workers = opt.workers;
  return s_m_moment(*fam, spec, so);
}

enum class CircleRule { gauss, trapezoid };

/// integral over t in [0, 2pi] of |L(e^{it} / sqrt q)|. The Gauss rule splits
/// the circle at the root angles, where |L| has kinks.
inline double circle_integral(std::span<const std::int64_t> c, std::uint32_t q, int points,
                              CircleRule rule = CircleRule::gauss) {
  if (points < 64) throw ConfigError("circle quadrature needs at least 64 points");
  const double r = 1.0 / std::sqrt(static_cast<double>(q));
  auto f = [&](double t) { return std::abs(lpoly_eval_u(c, std::polar(r, t))); };
  if (rule == CircleRule::trapezoid) return trapezoid_periodic(f, points);
  return gauss_piecewise_circle(f, root_angles(c, q), points);
}

struct CircleReport {
  std::uint32_t q = 0;
  int g = 0;
  double m = 0;
  int points = 0;
  CircleRule rule = CircleRule::gauss;
  double value = 0;
  double bound = 0;
  double ratio = 0;
  std::size_t family_size = 0;
};

/// sum_D (integral of |L|)^{2m}, against X (ln X)^{2m^2 - m + 1}.
inline CircleReport circle_integral_moment(const LFamily& fam, double m, int points, CircleRule rule,
                                           const SweepOptions& opt) {
  if (points < 64) throw ConfigError("circle quadrature needs at least 64 points");
  auto r = sweep(fam.size(), opt, [&](IndexRange range) {
    ShardResult s(1, 0);
    for (std::size_t i = range.begin; i < range.end; ++i) {
      s.sums[0].add(std::pow(circle_integral(fam.coeffs(i), fam.q(), points, rule), 2 * m));
    }
    return s;
  });
  if (!r) throw ConfigError("circle-integral sweep was interrupted; resume from the checkpoint");
  CircleReport rep;
  rep.q = fam.q();
  rep.g = fam.g();
  rep.m = m;
  rep.points = points;
  rep.rule = rule;
  rep.value = r->sums[0].value();
  rep.family_size = fam.size();
  const double lnX = (2 * fam.g() + 1) * std::log(static_cast<double>(fam.q()));
  rep.bound = std::pow(static_cast<double>(fam.q()), 2 * fam.g() + 1) * std::pow(lnX, 2 * m * m - m + 1);
  rep.ratio = rep.value / rep.bound;
  return rep;
}

}  // namespace ffm
