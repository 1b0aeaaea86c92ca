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
 * @file field.hpp
 * @brief Arithmetic in a finite field F_q of odd cardinality.
 *
 * Elements are integer codes in [0, q). For a prime field the code is the
 * residue. For q = p^k with k > 1 the code is the base-p integer whose digits
 * are the coefficients (constant first) of the element written as a
 * polynomial in a primitive root x of a fixed primitive modulus over F_p.
 * Codes 0..p-1 are therefore the prime subfield, 0 is zero and 1 is one.
 */

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ffm/errors.hpp"

namespace ffm {

using Elem = std::uint16_t;

class Field {
 public:
  static constexpr std::uint32_t kMaxExtensionOrder = 4096;
  static constexpr std::uint32_t kMaxPrimeOrder = 65521;

  explicit Field(std::uint32_t q) : q_(q) {
    if (q < 3 || q % 2 == 0) {
      throw ConfigError("field order must be odd and at least 3, got " + std::to_string(q));
    }
    std::uint32_t p = 3;
    while (q % p != 0) p += 2;
    std::uint32_t k = 0;
    for (std::uint32_t r = q; r > 1; r /= p) {
      if (r % p != 0) {
        throw ConfigError("field order must be a prime power, got " + std::to_string(q));
      }
      ++k;
    }
    p_ = p;
    k_ = k;
    if (k == 1 && q > kMaxPrimeOrder) {
      throw ConfigError("prime field order " + std::to_string(q) + " exceeds supported range");
    }
    if (k > 1 && q > kMaxExtensionOrder) {
      throw ConfigError("extension field order " + std::to_string(q) + " exceeds 4096");
    }
    if (k > 1) build_extension_tables();
    build_common_tables();
  }

  std::uint32_t q() const noexcept { return q_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t extension_degree() const noexcept { return k_; }
  bool is_prime_field() const noexcept { return k_ == 1; }

  Elem add(Elem a, Elem b) const noexcept {
    if (k_ == 1) {
      std::uint32_t s = std::uint32_t{a} + b;
      return static_cast<Elem>(s >= q_ ? s - q_ : s);
    }
    if (!add_table_.empty()) return add_table_[std::size_t{a} * q_ + b];
    return add_digits(a, b);
  }

  Elem neg(Elem a) const noexcept { return neg_table_[a]; }

  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg_table_[b]); }

  Elem mul(Elem a, Elem b) const noexcept {
    if (!mul_table_.empty()) return mul_table_[std::size_t{a} * q_ + b];
    if (k_ == 1) return static_cast<Elem>(std::uint64_t{a} * b % q_);
    if (a == 0 || b == 0) return 0;
    std::uint32_t e = log_[a] + log_[b];
    if (e >= q_ - 1) e -= q_ - 1;
    return exp_[e];
  }

  /// Multiplicative inverse; inv(0) is reported as 0 and must be guarded by callers.
  Elem inv(Elem a) const noexcept { return inv_table_[a]; }

  Elem pow(Elem a, std::uint64_t e) const noexcept {
    Elem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Quadratic character on F_q: 0 at 0, +1 on nonzero squares, -1 otherwise.
  int quadratic_character(Elem a) const noexcept { return square_class_[a]; }

  Elem minus_one() const noexcept { return static_cast<Elem>(p_ - 1); }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t n) const noexcept {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
  }

  /// Defining modulus over F_p (constant first), empty for prime fields.
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

 private:
  Elem add_digits(Elem a, Elem b) const noexcept {
    std::uint32_t r = 0, scale = 1;
    std::uint32_t x = a, y = b;
    for (std::uint32_t i = 0; i < k_; ++i) {
      std::uint32_t d = x % p_ + y % p_;
      if (d >= p_) d -= p_;
      r += d * scale;
      scale *= p_;
      x /= p_;
      y /= p_;
    }
    return static_cast<Elem>(r);
  }

  // Searches monic degree-k polynomials over F_p for one whose root x has
  // order q - 1; powers of x then give the exp/log tables.
  void build_extension_tables() {
    const std::uint32_t order = q_ - 1;
    std::vector<std::uint32_t> digits(k_);
    for (std::uint32_t code = 1; code < q_; ++code) {
      std::vector<std::uint32_t> m(k_ + 1, 0);
      for (std::uint32_t i = 0, c = code; i < k_; ++i, c /= p_) m[i] = c % p_;
      m[k_] = 1;
      if (m[0] == 0) continue;

      std::vector<Elem> exp_table(order);
      std::vector<std::uint32_t> cur(k_, 0);
      cur[0] = 1;
      bool primitive = true;
      for (std::uint32_t i = 0; i < order; ++i) {
        std::uint32_t enc = 0;
        for (std::uint32_t j = k_; j-- > 0;) enc = enc * p_ + cur[j];
        if (i > 0 && enc == 1) {
          primitive = false;
          break;
        }
        exp_table[i] = static_cast<Elem>(enc);
        // cur *= x (mod m)
        std::uint32_t top = cur[k_ - 1];
        for (std::uint32_t j = k_ - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        for (std::uint32_t j = 0; j < k_; ++j) {
          cur[j] = (cur[j] + (p_ - m[j]) * top) % p_;
        }
      }
      if (!primitive) continue;
      std::uint32_t back = 0;
      for (std::uint32_t j = k_; j-- > 0;) back = back * p_ + cur[j];
      if (back != 1) continue;

      modulus_ = m;
      exp_ = std::move(exp_table);
      log_.assign(q_, 0);
      for (std::uint32_t i = 0; i < order; ++i) log_[exp_[i]] = i;
      if (q_ <= 729) {
        add_table_.resize(std::size_t{q_} * q_);
        for (std::uint32_t a = 0; a < q_; ++a)
          for (std::uint32_t b = 0; b < q_; ++b)
            add_table_[std::size_t{a} * q_ + b] = add_digits(static_cast<Elem>(a), static_cast<Elem>(b));
      }
      return;
    }
    throw ConfigError("no primitive modulus found for q=" + std::to_string(q_));
  }

  void build_common_tables() {
    neg_table_.resize(q_);
    for (std::uint32_t a = 0; a < q_; ++a) {
      if (k_ == 1) {
        neg_table_[a] = static_cast<Elem>(a == 0 ? 0 : q_ - a);
      } else {
        std::uint32_t r = 0, scale = 1;
        for (std::uint32_t i = 0, x = a; i < k_; ++i, x /= p_, scale *= p_) {
          std::uint32_t d = x % p_;
          r += (d == 0 ? 0 : p_ - d) * scale;
        }
        neg_table_[a] = static_cast<Elem>(r);
      }
    }
    if (q_ <= 256) {
      std::vector<Elem> table(std::size_t{q_} * q_);
      for (std::uint32_t a = 0; a < q_; ++a)
        for (std::uint32_t b = 0; b < q_; ++b)
          table[std::size_t{a} * q_ + b] = mul(static_cast<Elem>(a), static_cast<Elem>(b));
      mul_table_ = std::move(table);
    }
    inv_table_.assign(q_, 0);
    square_class_.assign(q_, -1);
    square_class_[0] = 0;
    for (std::uint32_t a = 1; a < q_; ++a) {
      Elem x = static_cast<Elem>(a);
      inv_table_[a] = pow(x, q_ - 2);
      square_class_[mul(x, x)] = 1;
    }
  }

  std::uint32_t q_ = 0, p_ = 0, k_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  std::vector<Elem> add_table_;
  std::vector<Elem> mul_table_;
  std::vector<Elem> neg_table_;
  std::vector<Elem> inv_table_;
  std::vector<int> square_class_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Shared, lazily constructed field instance for a given order.
inline FieldPtr field_for(std::uint32_t q) {
  static std::mutex mutex;
  static std::map<std::uint32_t, FieldPtr> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const Field>(q);
  cache.emplace(q, f);
  return f;
}

}  // namespace ffm
