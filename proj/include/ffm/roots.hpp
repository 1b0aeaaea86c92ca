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
 * @file roots.hpp
 * @brief Simultaneous root finding for real polynomials of small degree.
 *
 * Aberth-Ehrlich iteration in extended precision, started on a circle of a
 * caller-supplied radius, with a companion-matrix eigenvalue fallback.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "ffm/errors.hpp"

namespace ffm {

using RootScalar = long double;
using RootComplex = std::complex<RootScalar>;

struct RootResult {
  std::vector<RootComplex> roots;
  int iterations = 0;
  bool converged = false;
  bool used_companion = false;
};

namespace detail {

inline void horner_with_derivative(std::span<const RootScalar> c, RootComplex z, RootComplex& p, RootComplex& dp) {
  p = c.back();
  dp = 0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
}

inline std::vector<RootComplex> companion_roots(std::span<const RootScalar> c) {
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  const double lead = static_cast<double>(c.back());
  for (int i = 1; i < n; ++i) M(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) M(i, n - 1) = -static_cast<double>(c[static_cast<std::size_t>(i)]) / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
  if (es.info() != Eigen::Success) throw NumericalError("companion eigenvalue solver failed");
  std::vector<RootComplex> out;
  for (int i = 0; i < n; ++i) {
    auto ev = es.eigenvalues()[i];
    out.emplace_back(ev.real(), ev.imag());
  }
  return out;
}

// Newton polish of each root on the full polynomial.
inline void polish(std::span<const RootScalar> c, std::vector<RootComplex>& roots) {
  for (auto& z : roots) {
    for (int it = 0; it < 8; ++it) {
      RootComplex p, dp;
      horner_with_derivative(c, z, p, dp);
      if (std::abs(dp) == 0) break;
      RootComplex step = p / dp;
      z -= step;
      if (std::abs(step) <= 1e-19L * std::max<RootScalar>(1, std::abs(z))) break;
    }
  }
}

}  // namespace detail

/// Roots of sum_i coeffs[i] z^i (constant first, nonzero leading term).
inline RootResult find_roots(std::span<const double> coeffs, double start_radius, int max_iterations = 500) {
  std::vector<RootScalar> c(coeffs.begin(), coeffs.end());
  while (!c.empty() && c.back() == 0) c.pop_back();
  if (c.size() < 2) return {{}, 0, true, false};
  const std::size_t n = c.size() - 1;

  RootResult res;
  res.roots.resize(n);
  // rotated start avoids symmetric configurations that stall on real polynomials
  for (std::size_t k = 0; k < n; ++k) {
    RootScalar ang = 2 * std::numbers::pi_v<RootScalar> * (static_cast<RootScalar>(k) + 0.25L) / static_cast<RootScalar>(n) + 0.4L;
    res.roots[k] = std::polar<RootScalar>(start_radius, ang);
  }
  const RootScalar tol = 1e-18L;
  for (int it = 1; it <= max_iterations; ++it) {
    RootScalar max_step = 0;
    for (std::size_t k = 0; k < n; ++k) {
      RootComplex p, dp;
      detail::horner_with_derivative(c, res.roots[k], p, dp);
      if (p == RootComplex(0)) continue;
      RootComplex ratio = p / dp;
      RootComplex sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k) sum += RootScalar(1) / (res.roots[k] - res.roots[j]);
      }
      RootComplex step = ratio / (RootScalar(1) - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) continue;
      res.roots[k] -= step;
      max_step = std::max(max_step, std::abs(step) / std::max<RootScalar>(1e-30L, std::abs(res.roots[k])));
    }
    res.iterations = it;
    if (max_step < tol) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged) {
    // Multiple roots slow Aberth to linear convergence; accept a stalled run
    // whose residuals are already at rounding level, else use the companion matrix.
    RootScalar worst = 0, scale = 0;
    for (auto v : c) scale += std::abs(v);
    for (const auto& z : res.roots) {
      RootComplex p, dp;
      detail::horner_with_derivative(c, z, p, dp);
      worst = std::max(worst, std::abs(p) / (scale * std::max<RootScalar>(1, std::pow(std::abs(z), static_cast<RootScalar>(n)))));
    }
    if (worst < 1e-15L) {
      res.converged = true;
    } else {
      res.roots = detail::companion_roots(c);
      detail::polish(c, res.roots);
      res.used_companion = true;
      res.converged = true;
    }
  }
  for (const auto& z : res.roots) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericalError("root finder produced a non-finite root after " + std::to_string(res.iterations) +
                           " iterations");
    }
  }
  return res;
}

/// Replaces clusters of roots closer than `radius` by their centroid. The
/// centroid of the computed copies of a multiple root is accurate to rounding
/// level even when the individual copies are not.
inline std::vector<RootComplex> merge_clusters(std::vector<RootComplex> roots, RootScalar radius) {
  const std::size_t n = roots.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    std::vector<std::size_t> stack{i};
    while (!stack.empty()) {
      auto a = stack.back();
      stack.pop_back();
      for (std::size_t b = 0; b < n; ++b) {
        if (label[b] < 0 && std::abs(roots[a] - roots[b]) < radius) {
          label[b] = next;
          stack.push_back(b);
        }
      }
    }
    ++next;
  }
  std::vector<RootComplex> centroid(static_cast<std::size_t>(next), 0);
  std::vector<int> size(static_cast<std::size_t>(next), 0);
  for (std::size_t i = 0; i < n; ++i) {
    centroid[static_cast<std::size_t>(label[i])] += roots[i];
    ++size[static_cast<std::size_t>(label[i])];
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto l = static_cast<std::size_t>(label[i]);
    roots[i] = centroid[l] / static_cast<RootScalar>(size[l]);
  }
  return roots;
}

}  // namespace ffm
