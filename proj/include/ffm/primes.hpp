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
 * @file primes.hpp
 * @brief Monic irreducibles of F_q[T], factorization and the arithmetic
 *        functions built on it, and the discriminant family H_{2g+1,q}.
 */

#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "ffm/errors.hpp"
#include "ffm/field.hpp"
#include "ffm/poly.hpp"

namespace ffm {

namespace detail {

inline std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline int mobius_int(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  return n > 1 ? -mu : mu;
}

// Odometer over the non-leading coefficients of a monic polynomial.
// Returns false after the last one.
inline bool next_digits(std::vector<Elem>& digits, std::uint32_t q, std::size_t& changed_from) {
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (++digits[i] < q) {
      changed_from = i;
      return true;
    }
    digits[i] = 0;
  }
  return false;
}

}  // namespace detail

/// Rabin's test: f of degree n is irreducible iff T^{q^n} = T mod f and
/// gcd(T^{q^{n/r}} - T, f) = 1 for every prime r dividing n.
inline bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) throw DomainError("irreducibility is defined for degree >= 1, got " + to_string(f));
  const int n = f.degree();
  if (n == 1) return true;
  const Poly m = f.monic();
  const Poly t = Poly::monomial(m.field(), 1);
  const std::uint64_t q = m.q();

  // frob[j] = T^{q^j} mod m
  std::vector<Poly> frob;
  frob.reserve(static_cast<std::size_t>(n) + 1);
  frob.push_back(t % m);
  for (int j = 1; j <= n; ++j) frob.push_back(powmod(frob.back(), q, m));

  if (!(frob[static_cast<std::size_t>(n)] == t % m)) return false;
  for (int r : detail::prime_divisors(n)) {
    Poly diff = frob[static_cast<std::size_t>(n / r)] - t;
    if (diff.is_zero() || !gcd(diff, m).is_one()) return false;
  }
  return true;
}

/// Number of monic irreducibles of degree d, from the necklace formula
/// (1/d) sum_{e|d} mu(d/e) q^e. Exact when q^d fits in 64 bits.
inline std::uint64_t necklace_count(std::uint64_t q, int d) {
  std::int64_t acc = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    int mu = detail::mobius_int(d / e);
    if (mu) acc += mu * static_cast<std::int64_t>(ipow(q, static_cast<unsigned>(e)));
  }
  return static_cast<std::uint64_t>(acc / d);
}

/// Same count in floating point, usable far beyond 64-bit range.
inline double necklace_count_real(double q, int d) {
  double acc = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e) continue;
    int mu = detail::mobius_int(d / e);
    if (mu) acc += mu * std::pow(q, e);
  }
  return acc / d;
}

/// All monic irreducibles up to a degree bound, stored compactly as monic
/// indices (see monic_index) grouped by degree and sorted ascending.
class PrimeTable {
 public:
  /// Sieve of products: a monic reducible polynomial of degree n has a prime
  /// factor of degree at most n/2, so marking P*g for those P leaves exactly
  /// the irreducibles unmarked.
  static PrimeTable build(FieldPtr field, int max_deg) {
    if (max_deg < 1) throw DomainError("prime table needs max_deg >= 1");
    PrimeTable t;
    t.field_ = field;
    t.max_deg_ = max_deg;
    t.codes_.assign(static_cast<std::size_t>(max_deg) + 1, {});
    const Field& F = *field;
    const std::uint32_t q = F.q();

    for (int n = 1; n <= max_deg; ++n) {
      const std::uint64_t total = ipow(q, static_cast<unsigned>(n));
      std::vector<std::uint8_t> composite(total, 0);

      for (int d = 1; 2 * d <= n; ++d) {
        const int e = n - d;
        for (std::uint64_t pc : t.codes_[static_cast<std::size_t>(d)]) {
          Poly P = monic_from_index(field, d, pc);
          auto pcoef = P.coeffs();
          // product = P * g, with g monic of degree e; start at g = T^e.
          std::vector<Elem> prod(static_cast<std::size_t>(n) + 1, 0);
          for (int i = 0; i <= d; ++i) prod[static_cast<std::size_t>(i + e)] = pcoef[static_cast<std::size_t>(i)];
          std::vector<Elem> g(static_cast<std::size_t>(e), 0);
          for (;;) {
            std::uint64_t idx = 0;
            for (int i = n - 1; i >= 0; --i) idx = idx * q + prod[static_cast<std::size_t>(i)];
            composite[idx] = 1;
            std::size_t from = 0;
            if (!detail::next_digits(g, q, from)) break;
            // digits below `from` wrapped q-1 -> 0, digit `from` went up by one code
            for (std::size_t i = 0; i <= from; ++i) {
              Elem before = i < from ? static_cast<Elem>(q - 1) : static_cast<Elem>(g[i] - 1);
              Elem delta = F.sub(g[i], before);
              if (delta == 0) continue;
              for (int j = 0; j <= d; ++j) {
                auto k = i + static_cast<std::size_t>(j);
                prod[k] = F.add(prod[k], F.mul(delta, pcoef[static_cast<std::size_t>(j)]));
              }
            }
          }
        }
      }
      auto& out = t.codes_[static_cast<std::size_t>(n)];
      for (std::uint64_t i = 0; i < total; ++i) {
        if (!composite[i]) out.push_back(i);
      }
    }
    return t;
  }

  const FieldPtr& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_->q(); }
  int max_degree() const noexcept { return max_deg_; }

  std::uint64_t count(int d) const {
    check_degree(d);
    return codes_[static_cast<std::size_t>(d)].size();
  }

  const std::vector<std::uint64_t>& codes(int d) const {
    check_degree(d);
    return codes_[static_cast<std::size_t>(d)];
  }

  Poly prime(int d, std::size_t i) const { return monic_from_index(field_, d, codes(d).at(i)); }

  std::vector<Poly> primes(int d) const {
    std::vector<Poly> out;
    for (auto c : codes(d)) out.push_back(monic_from_index(field_, d, c));
    return out;
  }

  bool contains(const Poly& f) const {
    if (!f.is_monic() || f.degree() < 1 || f.degree() > max_deg_) return false;
    const auto& v = codes_[static_cast<std::size_t>(f.degree())];
    return std::binary_search(v.begin(), v.end(), monic_index(f));
  }

  /// Header "q=<q> maxdeg=<d>" then one canonical encoding per line, sorted
  /// by (degree, monic index).
  void write(std::ostream& out) const {
    out << "q=" << q() << " maxdeg=" << max_deg_ << "\n";
    for (int d = 1; d <= max_deg_; ++d) {
      for (auto c : codes_[static_cast<std::size_t>(d)]) out << to_string(monic_from_index(field_, d, c)) << "\n";
    }
  }

  void save(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write prime table cache " + path.string());
    write(out);
  }

  static PrimeTable load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read prime table cache " + path.string());
    std::string header;
    std::getline(in, header);
    unsigned q = 0;
    int maxdeg = 0;
    if (std::sscanf(header.c_str(), "q=%u maxdeg=%d", &q, &maxdeg) != 2 || maxdeg < 1) {
      throw ConfigError("malformed prime table header in " + path.string());
    }
    PrimeTable t;
    t.field_ = field_for(q);
    t.max_deg_ = maxdeg;
    t.codes_.assign(static_cast<std::size_t>(maxdeg) + 1, {});
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      Poly P = parse_poly(line);
      if (P.q() != q || !P.is_monic() || P.degree() < 1 || P.degree() > maxdeg) {
        throw ConfigError("prime table cache entry out of range: " + line);
      }
      t.codes_[static_cast<std::size_t>(P.degree())].push_back(monic_index(P));
    }
    for (auto& v : t.codes_) {
      if (!std::is_sorted(v.begin(), v.end())) throw ConfigError("prime table cache is not sorted");
    }
    return t;
  }

 private:
  void check_degree(int d) const {
    if (d < 1 || d > max_deg_) {
      throw ConfigError("prime table for q=" + std::to_string(q()) + " covers degrees 1.." +
                        std::to_string(max_deg_) + ", degree " + std::to_string(d) + " requested");
    }
  }

  FieldPtr field_;
  int max_deg_ = 0;
  std::vector<std::vector<std::uint64_t>> codes_;
};

using PrimeTablePtr = std::shared_ptr<const PrimeTable>;

/// Process-wide table cache; with a cache directory, tables are also
/// persisted as primes_q<q>_d<maxdeg>.txt. May return a table with a larger
/// degree bound than requested.
inline PrimeTablePtr prime_table_for(const FieldPtr& field, int max_deg,
                                     const std::optional<std::filesystem::path>& cache_dir = std::nullopt) {
  static std::mutex mutex;
  static std::map<std::uint32_t, PrimeTablePtr> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(field->q());
  if (it != cache.end() && it->second->max_degree() >= max_deg) return it->second;

  std::optional<PrimeTable> table;
  if (cache_dir) {
    auto path = *cache_dir / ("primes_q" + std::to_string(field->q()) + "_d" + std::to_string(max_deg) + ".txt");
    if (std::filesystem::exists(path)) {
      table = PrimeTable::load(path);
    } else {
      table = PrimeTable::build(field, max_deg);
      std::filesystem::create_directories(*cache_dir);
      table->save(path);
    }
  } else {
    table = PrimeTable::build(field, max_deg);
  }
  auto ptr = std::make_shared<const PrimeTable>(std::move(*table));
  cache[field->q()] = ptr;
  return ptr;
}

// ---------------------------------------------------------------------------
// Factorization

struct Factorization {
  Poly input;
  Elem unit = 1;
  std::vector<std::pair<Poly, int>> factors;

  Poly product() const {
    Poly r = Poly::constant(input.field(), unit);
    for (const auto& [P, e] : factors) {
      for (int i = 0; i < e; ++i) r = r * P;
    }
    return r;
  }
};

/// Trial division by the table's primes in (degree, index) order. The table
/// must reach deg(f)/2; a cofactor left after that point is prime.
inline Factorization factorize(const Poly& f, const PrimeTable& table) {
  if (f.is_zero()) throw DomainError("cannot factor the zero polynomial");
  if (table.q() != f.q()) throw ConfigError("prime table field does not match polynomial");
  Factorization out{f, f.lead(), {}};
  Poly rem = f.monic();
  if (rem.degree() / 2 > table.max_degree()) {
    throw ConfigError("prime table degree " + std::to_string(table.max_degree()) + " too small to factor degree " +
                      std::to_string(rem.degree()));
  }
  for (int d = 1; 2 * d <= rem.degree(); ++d) {
    for (auto code : table.codes(d)) {
      if (2 * d > rem.degree()) break;
      Poly P = monic_from_index(f.field(), d, code);
      int e = 0;
      for (;;) {
        auto [quot, r] = divmod(rem, P);
        if (!r.is_zero()) break;
        rem = std::move(quot);
        ++e;
      }
      if (e) out.factors.emplace_back(std::move(P), e);
    }
  }
  if (rem.degree() >= 1) out.factors.emplace_back(std::move(rem), 1);
  return out;
}

inline Factorization factorize(const Poly& f) {
  return factorize(f, *prime_table_for(f.field(), std::max(1, f.degree() / 2)));
}

inline int mobius(const Factorization& fz) {
  int mu = 1;
  for (const auto& [P, e] : fz.factors) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

/// Omega: number of prime factors counted with multiplicity.
inline int omega(const Factorization& fz) {
  int n = 0;
  for (const auto& pe : fz.factors) n += pe.second;
  return n;
}

inline std::uint64_t divisor_count(const Factorization& fz) {
  std::uint64_t d = 1;
  for (const auto& pe : fz.factors) d *= static_cast<std::uint64_t>(pe.second + 1);
  return d;
}

namespace detail {
inline const Poly& require_monic(const Poly& f, const char* what) {
  if (!f.is_monic()) throw DomainError(std::string(what) + " requires a monic nonzero polynomial");
  return f;
}
}  // namespace detail

inline int mobius(const Poly& f) { return mobius(factorize(detail::require_monic(f, "mobius"))); }
inline int omega(const Poly& f) { return omega(factorize(detail::require_monic(f, "omega"))); }
inline std::uint64_t divisor_count(const Poly& f) {
  return divisor_count(factorize(detail::require_monic(f, "divisor_count")));
}

/// gcd(f, f') = 1 decides squarefreeness whenever f' != 0. If f' = 0 and
/// deg f >= 1 then f = h(T^p) is a p-th power (F_q is perfect), so not squarefree.
inline bool is_squarefree(const Poly& f) {
  if (f.is_zero()) throw DomainError("squarefree test of the zero polynomial");
  if (f.degree() == 0) return true;
  Poly df = derivative(f);
  if (df.is_zero()) return false;
  return gcd(f, df).is_one();
}

/// Monic f is a square in A iff every prime exponent is even.
inline bool is_square(const Poly& f) {
  Factorization fz = factorize(detail::require_monic(f, "is_square"));
  return std::all_of(fz.factors.begin(), fz.factors.end(), [](const auto& pe) { return pe.second % 2 == 0; });
}

// ---------------------------------------------------------------------------
// Discriminant family

/// H_{2g+1,q}: monic squarefree polynomials of degree 2g+1, in monic-index order.
class DiscriminantFamily {
 public:
  DiscriminantFamily(FieldPtr field, int g, std::vector<std::uint64_t> indices)
      : field_(std::move(field)), g_(g), indices_(std::move(indices)) {}

  const FieldPtr& field() const noexcept { return field_; }
  std::uint32_t q() const noexcept { return field_->q(); }
  int genus() const noexcept { return g_; }
  int degree() const noexcept { return 2 * g_ + 1; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::uint64_t index(std::size_t i) const { return indices_.at(i); }
  const std::vector<std::uint64_t>& indices() const noexcept { return indices_; }
  Poly operator[](std::size_t i) const { return monic_from_index(field_, degree(), indices_.at(i)); }

 private:
  FieldPtr field_;
  int g_;
  std::vector<std::uint64_t> indices_;
};

/// |H_{2g+1,q}| in closed form: q^{2g+1} - q^{2g} for g >= 1, q for g = 0.
inline std::uint64_t family_size(std::uint64_t q, int g) {
  if (g == 0) return q;
  return ipow(q, static_cast<unsigned>(2 * g + 1)) - ipow(q, static_cast<unsigned>(2 * g));
}

/// Builds H_{2g+1,q} by striking out every multiple P^2 h of a prime square.
/// The gcd-based is_squarefree is the independent check used in tests.
inline DiscriminantFamily enumerate_H(const FieldPtr& field, int g) {
  if (g < 0) throw DomainError("genus must be nonnegative");
  const int n = 2 * g + 1;
  const Field& F = *field;
  const std::uint32_t q = F.q();
  const std::uint64_t total = ipow(q, static_cast<unsigned>(n));
  std::vector<std::uint8_t> struck(total, 0);
  if (n >= 2) {
    auto table = prime_table_for(field, n / 2);
    for (int d = 1; 2 * d <= n; ++d) {
      const int e = n - 2 * d;
      for (auto code : table->codes(d)) {
        Poly P = monic_from_index(field, d, code);
        Poly P2 = P * P;
        for (std::uint64_t hi = 0, hn = ipow(q, static_cast<unsigned>(e)); hi < hn; ++hi) {
          struck[monic_index(P2 * monic_from_index(field, e, hi))] = 1;
        }
      }
    }
  }
  std::vector<std::uint64_t> idx;
  idx.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i) {
    if (!struck[i]) idx.push_back(i);
  }
  return DiscriminantFamily(field, g, std::move(idx));
}

}  // namespace ffm
