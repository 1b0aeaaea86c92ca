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
 * @file poly.hpp
 * @brief Polynomials over F_q, constant term first.
 *
 * The canonical text form is "q<q>:<c0>,<c1>,...,<cn>" with the leading
 * coefficient last and nonzero; the zero polynomial is "q<q>:0".
 */

#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffm/errors.hpp"
#include "ffm/field.hpp"

namespace ffm {

class Poly {
 public:
  explicit Poly(FieldPtr field) : field_(std::move(field)) {}

  Poly(FieldPtr field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (Elem c : coeffs_) {
      if (c >= field_->q()) throw DomainError("coefficient outside F_q");
    }
    trim();
  }

  static Poly constant(FieldPtr field, Elem c) { return Poly(std::move(field), std::vector<Elem>{c}); }

  /// c * T^n
  static Poly monomial(FieldPtr field, int n, Elem c = 1) {
    std::vector<Elem> v(static_cast<std::size_t>(n) + 1, 0);
    v.back() = c;
    return Poly(std::move(field), std::move(v));
  }

  const FieldPtr& field() const noexcept { return field_; }
  const Field& F() const noexcept { return *field_; }
  std::uint32_t q() const noexcept { return field_->q(); }

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == 1; }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
  Elem lead() const noexcept { return coeffs_.empty() ? Elem{0} : coeffs_.back(); }

  Elem operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Elem{0}; }
  std::span<const Elem> coeffs() const noexcept { return coeffs_; }

  /// |f| = q^deg f, and |0| = 0.
  double norm() const noexcept {
    return is_zero() ? 0.0 : std::pow(static_cast<double>(q()), degree());
  }

  Poly scaled(Elem c) const {
    std::vector<Elem> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = F().mul(coeffs_[i], c);
    return Poly(field_, std::move(v));
  }

  /// Divides by the leading coefficient.
  Poly monic() const {
    if (is_zero()) throw DomainError("zero polynomial has no monic associate");
    return scaled(F().inv(lead()));
  }

  friend bool operator==(const Poly& a, const Poly& b) noexcept {
    return a.q() == b.q() && a.coeffs_ == b.coeffs_;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    const Field& F = a.F();
    std::vector<Elem> v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.add(a[i], b[i]);
    return Poly(a.field_, std::move(v));
  }

  friend Poly operator-(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    const Field& F = a.F();
    std::vector<Elem> v(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = F.sub(a[i], b[i]);
    return Poly(a.field_, std::move(v));
  }

  Poly operator-() const {
    std::vector<Elem> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = F().neg(coeffs_[i]);
    return Poly(field_, std::move(v));
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same_field(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.field_);
    const Field& F = a.F();
    std::vector<Elem> v(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        v[i + j] = F.add(v[i + j], F.mul(a.coeffs_[i], b.coeffs_[j]));
      }
    }
    return Poly(a.field_, std::move(v));
  }

  static void check_same_field(const Poly& a, const Poly& b) {
    if (a.q() != b.q()) {
      throw ConfigError("mixed field specs: q=" + std::to_string(a.q()) + " and q=" + std::to_string(b.q()));
    }
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  FieldPtr field_;
  std::vector<Elem> coeffs_;
};

/// Euclidean division a = quot * b + rem with deg rem < deg b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  Poly::check_same_field(a, b);
  if (b.is_zero()) throw DivisionByZero();
  const Field& F = a.F();
  if (a.degree() < b.degree()) return {Poly(a.field()), a};
  std::vector<Elem> rem(a.coeffs().begin(), a.coeffs().end());
  std::vector<Elem> quot(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
  const Elem lead_inv = F.inv(b.lead());
  const int db = b.degree();
  auto bc = b.coeffs();
  for (int i = a.degree(); i >= db; --i) {
    Elem c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Elem t = F.mul(c, lead_inv);
    quot[static_cast<std::size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(i - db + j);
      rem[idx] = F.sub(rem[idx], F.mul(t, bc[static_cast<std::size_t>(j)]));
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly(a.field(), std::move(quot)), Poly(a.field(), std::move(rem))};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }

/// Monic greatest common divisor.
inline Poly gcd(Poly a, Poly b) {
  Poly::check_same_field(a, b);
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Formal derivative; the integer multiplier i is read in the prime subfield.
inline Poly derivative(const Poly& f) {
  if (f.degree() < 1) return Poly(f.field());
  const Field& F = f.F();
  std::vector<Elem> v(static_cast<std::size_t>(f.degree()), 0);
  for (int i = 1; i <= f.degree(); ++i) {
    v[static_cast<std::size_t>(i - 1)] = F.mul(F.from_int(i), f[static_cast<std::size_t>(i)]);
  }
  return Poly(f.field(), std::move(v));
}

/// base^e mod m.
inline Poly powmod(Poly base, std::uint64_t e, const Poly& m) {
  Poly r = Poly::constant(base.field(), 1) % m;
  base = base % m;
  while (e) {
    if (e & 1) r = (r * base) % m;
    e >>= 1;
    if (e) base = (base * base) % m;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text encoding

inline std::string to_string(const Poly& f) {
  std::string s = "q" + std::to_string(f.q()) + ":";
  if (f.is_zero()) return s + "0";
  for (int i = 0; i <= f.degree(); ++i) {
    if (i) s += ',';
    s += std::to_string(f[static_cast<std::size_t>(i)]);
  }
  return s;
}

/// Human-readable form such as "T^2 + 2".
inline std::string to_pretty(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (int i = f.degree(); i >= 0; --i) {
    Elem c = f[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!s.empty()) s += " + ";
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i >= 1) s += "T";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

inline Poly parse_poly(std::string_view text) {
  auto fail = [&](const std::string& why) -> Poly {
    throw ConfigError("bad polynomial encoding '" + std::string(text) + "': " + why);
  };
  if (text.size() < 3 || text[0] != 'q') return fail("expected q<q>:<coeffs>");
  auto colon = text.find(':');
  if (colon == std::string_view::npos) return fail("missing ':'");
  std::uint32_t q = 0;
  auto [p, ec] = std::from_chars(text.data() + 1, text.data() + colon, q);
  if (ec != std::errc() || p != text.data() + colon) return fail("bad field order");
  FieldPtr field = field_for(q);
  std::vector<Elem> coeffs;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view tok = rest.substr(0, comma);
    std::uint32_t c = 0;
    auto [pp, ec2] = std::from_chars(tok.data(), tok.data() + tok.size(), c);
    if (ec2 != std::errc() || pp != tok.data() + tok.size()) return fail("bad coefficient");
    if (c >= q) return fail("coefficient outside F_q");
    coeffs.push_back(static_cast<Elem>(c));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (coeffs.empty()) return fail("no coefficients");
  if (coeffs.size() > 1 && coeffs.back() == 0) return fail("leading coefficient must be nonzero");
  return Poly(field, std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Monic enumeration

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) {
    if (r > UINT64_MAX / base) throw ConfigError("integer power overflow");
    r *= base;
  }
  return r;
}

/// Monic polynomial of degree n whose non-leading coefficients are the
/// base-q digits of `index`, least significant digit = constant term.
inline Poly monic_from_index(const FieldPtr& field, int n, std::uint64_t index) {
  std::vector<Elem> v(static_cast<std::size_t>(n) + 1, 0);
  const std::uint32_t q = field->q();
  for (int i = 0; i < n; ++i) {
    v[static_cast<std::size_t>(i)] = static_cast<Elem>(index % q);
    index /= q;
  }
  v.back() = 1;
  return Poly(field, std::move(v));
}

/// Inverse of monic_from_index.
inline std::uint64_t monic_index(const Poly& f) {
  if (!f.is_monic()) throw DomainError("monic_index requires a monic polynomial");
  std::uint64_t idx = 0;
  for (int i = f.degree() - 1; i >= 0; --i) idx = idx * f.q() + f[static_cast<std::size_t>(i)];
  return idx;
}

/// The q^n monic polynomials of degree n in base-q index order. Random
/// access makes it cheap to shard: worker i can start at any index.
class MonicEnumerator {
 public:
  MonicEnumerator(FieldPtr field, int n) : field_(std::move(field)), n_(n) {
    if (n < 0) throw DomainError("degree must be nonnegative");
    size_ = ipow(field_->q(), static_cast<unsigned>(n));
  }

  std::uint64_t size() const noexcept { return size_; }
  int degree() const noexcept { return n_; }
  Poly operator[](std::uint64_t i) const { return monic_from_index(field_, n_, i); }

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = Poly;
    using difference_type = std::ptrdiff_t;
    iterator() = default;
    iterator(const MonicEnumerator* e, std::uint64_t i) : e_(e), i_(i) {}
    Poly operator*() const { return (*e_)[i_]; }
    iterator& operator++() {
      ++i_;
      return *this;
    }
    iterator operator++(int) {
      auto t = *this;
      ++i_;
      return t;
    }
    bool operator==(const iterator& o) const { return i_ == o.i_; }

   private:
    const MonicEnumerator* e_ = nullptr;
    std::uint64_t i_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size_}; }

 private:
  FieldPtr field_;
  int n_;
  std::uint64_t size_;
};

inline MonicEnumerator enumerate_monic(FieldPtr field, int n) { return MonicEnumerator(std::move(field), n); }

}  // namespace ffm
