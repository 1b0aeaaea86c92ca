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
 * @file quadrature.hpp
 * @brief Gauss-Legendre and periodic trapezoid rules.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <utility>
#include <vector>

#include "ffm/errors.hpp"
#include "ffm/summation.hpp"

namespace ffm {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n in long double.
inline const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const long double pi = std::numbers::pi_v<long double>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double dp = 0;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    long double p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      long double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1);
    long double w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = static_cast<double>(x);
    rule.nodes[static_cast<std::size_t>(i)] = static_cast<double>(-x);
    rule.weights[static_cast<std::size_t>(i)] = rule.weights[static_cast<std::size_t>(n - 1 - i)] =
        static_cast<double>(w);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

/// Trapezoid rule for a 2pi-periodic integrand on [0, 2pi).
template <class F>
double trapezoid_periodic(F&& f, int points) {
  if (points < 1) throw DomainError("trapezoid rule needs at least one point");
  KahanSum s;
  const double h = 2 * std::numbers::pi / points;
  for (int i = 0; i < points; ++i) s.add(f(h * i));
  return s.value() * h;
}

/// Integral over [0, 2pi] split at the given breakpoints, with Gauss-Legendre
/// on each piece. The total node budget is shared out in proportion to piece
/// length, with at least min_per_piece nodes on every piece.
template <class F>
double gauss_piecewise_circle(F&& f, std::vector<double> breaks, int points, int min_per_piece = 8) {
  const double two_pi = 2 * std::numbers::pi;
  for (double& b : breaks) {
    b = std::fmod(b, two_pi);
    if (b < 0) b += two_pi;
  }
  breaks.push_back(0.0);
  breaks.push_back(two_pi);
  std::sort(breaks.begin(), breaks.end());
  KahanSum s;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i], b = breaks[i + 1];
    if (b - a <= 0) continue;
    int n = std::max(min_per_piece, static_cast<int>(std::ceil(points * (b - a) / two_pi)));
    const GaussRule& rule = gauss_legendre(n);
    const double mid = (a + b) / 2, half = (b - a) / 2;
    KahanSum piece;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) piece.add(rule.weights[k] * f(mid + half * rule.nodes[k]));
    s.add(piece.value() * half);
  }
  return s.value();
}

}  // namespace ffm
