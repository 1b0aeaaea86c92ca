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
 * @file quadratic_character.hpp
 * @brief Quadratic residue symbols over F_q[T] and the character chi_D = (D/.).
 *
 * Two independent routes are provided. legendre_prime uses Euler's
 * criterion at a prime; jacobi never factors and instead runs a Euclid-style
 * recursion driven by reciprocity,
 *
 *     (C/D) = (D/C) (-1)^{deg C deg D (q-1)/2},   (a/C) = a^{deg C (q-1)/2},
 *
 * the second rule stripping leading units off non-monic remainders.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ffm/errors.hpp"
#include "ffm/field.hpp"
#include "ffm/poly.hpp"
#include "ffm/primes.hpp"

namespace ffm {

namespace detail {

inline constexpr int kMaxKernelDegree = 96;

/// (num/den) for den monic. Both buffers are clobbered. Degrees are exact
/// (num may be the zero polynomial with deg -1).
inline int jacobi_kernel(const Field& F, Elem* num, int dn, Elem* den, int dd) {
  const bool flip_on_odd_degrees = F.q() % 4 == 3;
  int sign = 1;
  for (;;) {
    if (dd == 0) return sign;
    for (int i = dn; i >= dd; --i) {
      const Elem c = num[i];
      if (c == 0) continue;
      Elem* base = num + (i - dd);
      for (int j = 0; j < dd; ++j) base[j] = F.sub(base[j], F.mul(c, den[j]));
      num[i] = 0;
    }
    dn = std::min(dn, dd - 1);
    while (dn >= 0 && num[dn] == 0) --dn;
    if (dn < 0) return 0;
    const Elem lc = num[dn];
    if (lc != 1) {
      if ((dd & 1) && F.quadratic_character(lc) < 0) sign = -sign;
      const Elem inv = F.inv(lc);
      for (int i = 0; i <= dn; ++i) num[i] = F.mul(num[i], inv);
    }
    if (flip_on_odd_degrees && (dn & 1) && (dd & 1)) sign = -sign;
    std::swap(num, den);
    std::swap(dn, dd);
  }
}

/// (num/den) on coefficient spans; den must be monic.
inline int jacobi_span(const Field& F, std::span<const Elem> num, std::span<const Elem> den) {
  const int dn = static_cast<int>(num.size()) - 1;
  const int dd = static_cast<int>(den.size()) - 1;
  if (dn > kMaxKernelDegree || dd > kMaxKernelDegree) {
    throw ConfigError("jacobi kernel supports degrees up to " + std::to_string(kMaxKernelDegree));
  }
  std::array<Elem, kMaxKernelDegree + 1> a{}, b{};
  std::copy(num.begin(), num.end(), a.begin());
  std::copy(den.begin(), den.end(), b.begin());
  return jacobi_kernel(F, a.data(), dn, b.data(), dd);
}

}  // namespace detail

/// (f/P) by Euler's criterion: (f mod P)^{(|P|-1)/2} is the constant +-1.
/// The exponent is applied as prod_{i<d} (r^{(q-1)/2})^{q^i}.
inline int legendre_prime(const Poly& f, const Poly& P) {
  Poly::check_same_field(f, P);
  if (!P.is_monic() || P.degree() < 1 || !is_irreducible(P)) {
    throw DomainError("legendre_prime needs a monic irreducible modulus, got " + to_string(P));
  }
  Poly r = f % P;
  if (r.is_zero()) return 0;
  const std::uint32_t q = P.q();
  Poly x = powmod(r, (q - 1) / 2, P);
  Poly acc = Poly::constant(P.field(), 1);
  for (int i = 0; i < P.degree(); ++i) {
    acc = (acc * x) % P;
    x = powmod(x, q, P);
  }
  if (acc.is_one()) return 1;
  if (acc == Poly::constant(P.field(), P.F().minus_one())) return -1;
  throw NumericalError("Euler criterion produced a non-constant residue for " + to_string(P));
}

/// Jacobi-type symbol (C/D) for monic nonzero C and D, without factoring.
inline int jacobi(const Poly& C, const Poly& D) {
  Poly::check_same_field(C, D);
  if (!C.is_monic() || !D.is_monic()) {
    throw DomainError("jacobi expects monic arguments; normalize the leading unit first");
  }
  return detail::jacobi_span(C.F(), C.coeffs(), D.coeffs());
}

struct JacobiTrace {
  int value = 0;
  std::vector<std::string> steps;
};

/// The reciprocity recursion with a human-readable log of each step.
inline JacobiTrace jacobi_trace(const Poly& C, const Poly& D) {
  Poly::check_same_field(C, D);
  if (!C.is_monic() || !D.is_monic()) throw DomainError("jacobi expects monic arguments");
  const Field& F = C.F();
  JacobiTrace tr;
  int sign = 1;
  Poly num = C, den = D;
  auto sym = [](const Poly& a, const Poly& b) { return "(" + to_pretty(a) + " / " + to_pretty(b) + ")"; };
  for (;;) {
    if (den.degree() == 0) {
      tr.steps.push_back("denominator is 1: result " + std::to_string(sign));
      tr.value = sign;
      return tr;
    }
    Poly r = num % den;
    tr.steps.push_back(sym(num, den) + " = " + sym(r, den) + " after reduction");
    if (r.is_zero()) {
      tr.steps.push_back("common factor: result 0");
      tr.value = 0;
      return tr;
    }
    const Elem lc = r.lead();
    if (lc != 1) {
      int unit = F.quadratic_character(lc);
      int contrib = (den.degree() % 2 == 1) ? unit : 1;
      tr.steps.push_back("unit " + std::to_string(lc) + ": (" + std::to_string(lc) + " / " + to_pretty(den) +
                         ") = " + std::to_string(unit) + "^" + std::to_string(den.degree()) + " = " +
                         std::to_string(contrib));
      sign *= contrib;
      r = r.monic();
    }
    int rec = (F.q() % 4 == 3 && (r.degree() % 2 == 1) && (den.degree() % 2 == 1)) ? -1 : 1;
    tr.steps.push_back("reciprocity: " + sym(r, den) + " = " + sym(den, r) + " * " + std::to_string(rec));
    sign *= rec;
    num = std::move(den);
    den = std::move(r);
  }
}

/// chi_D with its values at every prime of a table precomputed at
/// construction, so concurrent reads need no synchronization.
class QuadraticCharacter {
 public:
  QuadraticCharacter(Poly D, PrimeTablePtr table) : D_(std::move(D)), table_(std::move(table)) {
    if (!D_.is_monic()) throw DomainError("character modulus must be monic");
    if (table_->q() != D_.q()) throw ConfigError("prime table field does not match modulus");
    const Field& F = D_.F();
    values_.resize(static_cast<std::size_t>(table_->max_degree()) + 1);
    for (int d = 1; d <= table_->max_degree(); ++d) {
      auto& out = values_[static_cast<std::size_t>(d)];
      out.reserve(table_->count(d));
      for (auto code : table_->codes(d)) {
        Poly P = monic_from_index(D_.field(), d, code);
        out.push_back(static_cast<std::int8_t>(detail::jacobi_span(F, D_.coeffs(), P.coeffs())));
      }
    }
  }

  const Poly& modulus() const noexcept { return D_; }
  const PrimeTable& table() const noexcept { return *table_; }

  /// chi_D(P) for the i-th prime of degree d in the table.
  int at_prime(int d, std::size_t i) const { return values_.at(static_cast<std::size_t>(d)).at(i); }

  /// chi_D(f) = (D/f).
  int operator()(const Poly& f) const {
    if (f.is_zero()) throw DomainError("chi_D(0) is undefined");
    return jacobi(D_, f);
  }

  /// chi_D(f) as a product of cached prime values over f's factorization.
  int eval_multiplicative(const Poly& f) const {
    if (f.is_zero()) throw DomainError("chi_D(0) is undefined");
    if (!f.is_monic()) throw DomainError("chi_D is evaluated at monic polynomials");
    int v = 1;
    for (const auto& [P, e] : factorize(f, *table_).factors) {
      if (P.degree() > table_->max_degree()) {
        throw ConfigError("prime factor beyond the character's table");
      }
      const auto& codes = table_->codes(P.degree());
      auto it = std::lower_bound(codes.begin(), codes.end(), monic_index(P));
      int c = at_prime(P.degree(), static_cast<std::size_t>(it - codes.begin()));
      for (int i = 0; i < e; ++i) v *= c;
    }
    return v;
  }

 private:
  Poly D_;
  PrimeTablePtr table_;
  std::vector<std::vector<std::int8_t>> values_;
};

inline int chi_eval(const QuadraticCharacter& chi, const Poly& f) { return chi(f); }

}  // namespace ffm
