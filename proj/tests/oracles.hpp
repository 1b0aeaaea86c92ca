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

// Brute-force reference computations used only by the tests. Nothing here
// calls into the reciprocity kernel, the sieve or the Euler product.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "ffm/field.hpp"
#include "ffm/poly.hpp"

namespace ffm::oracle {

inline Poly random_poly(const FieldPtr& F, int max_deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<std::uint32_t> coef(0, F->q() - 1);
  std::vector<Elem> v(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& c : v) c = static_cast<Elem>(coef(rng));
  return Poly(F, std::move(v));
}

inline Poly random_monic(const FieldPtr& F, int deg, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> coef(0, F->q() - 1);
  std::vector<Elem> v(static_cast<std::size_t>(deg) + 1);
  for (auto& c : v) c = static_cast<Elem>(coef(rng));
  v.back() = 1;
  return Poly(F, std::move(v));
}

/// Irreducible iff no monic divisor of degree 1..deg/2.
inline bool irreducible_by_trial(const Poly& f) {
  Poly m = f.monic();
  for (int d = 1; 2 * d <= m.degree(); ++d) {
    for (auto g : enumerate_monic(m.field(), d)) {
      if ((m % g).is_zero()) return false;
    }
  }
  return m.degree() >= 1;
}

/// Monic prime factors with multiplicity, by trial division over all monic polynomials.
inline std::vector<std::pair<Poly, int>> factor_by_trial(Poly f) {
  std::vector<std::pair<Poly, int>> out;
  f = f.monic();
  for (int d = 1; 2 * d <= f.degree(); ++d) {
    for (auto g : enumerate_monic(f.field(), d)) {
      int e = 0;
      while (f.degree() >= d && (f % g).is_zero()) {
        f = f / g;
        ++e;
      }
      if (e) out.emplace_back(g, e);
    }
  }
  if (f.degree() >= 1) out.emplace_back(f, 1);
  return out;
}

/// (f/P) by searching for a square root of f mod P.
inline int legendre_by_search(const Poly& f, const Poly& P) {
  Poly r = f % P;
  if (r.is_zero()) return 0;
  const std::uint64_t n = ipow(P.q(), static_cast<unsigned>(P.degree()));
  for (std::uint64_t i = 0; i < n; ++i) {
    // every residue mod P of degree < deg P: index digits as coefficients
    std::vector<Elem> v(static_cast<std::size_t>(P.degree()), 0);
    std::uint64_t x = i;
    for (auto& c : v) {
      c = static_cast<Elem>(x % P.q());
      x /= P.q();
    }
    Poly h(P.field(), std::move(v));
    if (((h * h) % P) == r) return 1;
  }
  return -1;
}

/// (C/D) as the product of (C/P)^e over a trial-division factorization of D.
inline int symbol_by_factoring(const Poly& C, const Poly& D) {
  int v = 1;
  for (const auto& [P, e] : factor_by_trial(D)) {
    int s = legendre_by_search(C, P);
    for (int i = 0; i < e; ++i) v *= s;
  }
  return v;
}

}  // namespace ffm::oracle
