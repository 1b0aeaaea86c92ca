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
 * @file lfunction.hpp
 * @brief L-polynomials of quadratic characters and the zeta function of F_q[T].
 *
 * For D in H_{2g+1,q} the series sum_f chi_D(f) u^{deg f} over monic f is a
 * polynomial of degree 2g, with integer coefficients c_n equal to the sum of
 * chi_D over monic f of degree n. Two independent constructions are given:
 * direct summation over all monic f, and the Euler product over primes.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "ffm/errors.hpp"
#include "ffm/field.hpp"
#include "ffm/poly.hpp"
#include "ffm/primes.hpp"
#include "ffm/quadratic_character.hpp"
#include "ffm/roots.hpp"
#include "ffm/sweep.hpp"

namespace ffm {

using Complex = std::complex<double>;

/// zeta_A(s) = 1 / (1 - q^{1-s}).
inline Complex zeta_a(Complex s, double q) {
  const Complex w = std::exp((1.0 - s) * std::log(q));
  const Complex den = 1.0 - w;
  if (std::abs(den) < 1e-300 || (std::abs(den) < 1e-14 * std::abs(w))) {
    throw PoleError("zeta_A has a pole at s = " + std::to_string(s.real()) + " + " + std::to_string(s.imag()) +
                    "i (q^{1-s} = 1)");
  }
  return 1.0 / den;
}

/// Z(u) = 1 / (1 - qu), the zeta function in the variable u = q^{-s}.
inline Complex zeta_u(Complex u, double q) {
  const Complex den = 1.0 - q * u;
  if (std::abs(den) < 1e-14) throw PoleError("Z(u) has a pole at u = 1/q");
  return 1.0 / den;
}

/// Angle theta = t ln q on the critical line, reduced to [0, 2pi). The
/// matching points are u = q^{-1/2} e^{i theta} and s = 1/2 - i theta / ln q.
class SpectralPoint {
 public:
  explicit SpectralPoint(double theta) : theta_(reduce(theta)) {}

  static SpectralPoint from_t(double t, double q) { return SpectralPoint(t * std::log(q)); }

  static double reduce(double theta) {
    const double two_pi = 2 * std::numbers::pi;
    double r = std::fmod(theta, two_pi);
    if (r < 0) r += two_pi;
    if (r >= two_pi) r = 0;
    return r;
  }

  double theta() const noexcept { return theta_; }
  Complex u(double q) const { return std::polar(1.0 / std::sqrt(q), theta_); }
  Complex s(double q) const { return {0.5, -theta_ / std::log(q)}; }

 private:
  double theta_;
};

/// Validates D in H_{2g+1,q} and returns g.
inline int discriminant_genus(const Poly& D) {
  if (!D.is_monic()) throw DomainError("discriminant must be monic: " + to_string(D));
  if (D.degree() % 2 != 1) throw DomainError("discriminant must have odd degree: " + to_string(D));
  if (!is_squarefree(D)) throw DomainError("discriminant must be squarefree: " + to_string(D));
  return (D.degree() - 1) / 2;
}

struct LPolynomial {
  std::uint32_t q = 0;
  int g = 0;
  Poly D;
  std::vector<std::int64_t> coeffs;
  std::optional<std::vector<Complex>> roots;

  int degree() const noexcept {
    int d = static_cast<int>(coeffs.size()) - 1;
    while (d > 0 && coeffs[static_cast<std::size_t>(d)] == 0) --d;
    return d;
  }
};

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw NumericalError("L-coefficient overflow");
  return r;
}

}  // namespace detail

/// sum of chi_D(f) over monic f of degree n, by direct enumeration.
inline std::int64_t degree_character_sum(const Poly& D, int n) {
  std::int64_t s = 0;
  const Field& F = D.F();
  for (auto f : enumerate_monic(D.field(), n)) s += detail::jacobi_span(F, D.coeffs(), f.coeffs());
  return s;
}

/// Reference construction: c_n by summing chi_D over every monic f of degree n <= 2g.
inline LPolynomial lpoly_direct(const Poly& D) {
  const int g = discriminant_genus(D);
  LPolynomial L{D.q(), g, D, std::vector<std::int64_t>(static_cast<std::size_t>(2 * g) + 1, 0), std::nullopt};
  for (int n = 0; n <= 2 * g; ++n) L.coeffs[static_cast<std::size_t>(n)] = degree_character_sum(D, n);
  return L;
}

/// The primes of a table through a degree bound, decoded once into a flat
/// coefficient buffer so that many discriminants can share them.
class EulerKernel {
 public:
  EulerKernel(PrimeTablePtr table, int max_deg) : table_(std::move(table)), max_deg_(max_deg) {
    if (max_deg_ > table_->max_degree()) {
      throw ConfigError("prime table covers degree " + std::to_string(table_->max_degree()) + ", need " +
                        std::to_string(max_deg_));
    }
    offsets_.assign(static_cast<std::size_t>(max_deg_) + 2, 0);
    for (int d = 1; d <= max_deg_; ++d) {
      offsets_[static_cast<std::size_t>(d)] = flat_.size();
      for (auto code : table_->codes(d)) {
        Poly P = monic_from_index(table_->field(), d, code);
        flat_.insert(flat_.end(), P.coeffs().begin(), P.coeffs().end());
      }
    }
    offsets_[static_cast<std::size_t>(max_deg_) + 1] = flat_.size();
  }

  const PrimeTable& table() const noexcept { return *table_; }
  int max_degree() const noexcept { return max_deg_; }

  /// chi_D(P) for every prime of degree d, in table order.
  void prime_values(std::span<const Elem> D, int d, std::vector<std::int8_t>& out) const {
    const Field& F = *table_->field();
    const std::size_t stride = static_cast<std::size_t>(d) + 1;
    const std::size_t begin = offsets_[static_cast<std::size_t>(d)];
    const std::size_t count = (offsets_[static_cast<std::size_t>(d) + 1] - begin) / stride;
    out.resize(count);
    const int dD = static_cast<int>(D.size()) - 1;
    std::array<Elem, detail::kMaxKernelDegree + 1> a{}, b{};
    for (std::size_t i = 0; i < count; ++i) {
      std::copy(D.begin(), D.end(), a.begin());
      std::copy_n(flat_.begin() + static_cast<std::ptrdiff_t>(begin + i * stride), stride, b.begin());
      out[i] = static_cast<std::int8_t>(detail::jacobi_kernel(F, a.data(), dD, b.data(), d));
    }
  }

  /// c_0..c_n of prod_{deg P <= n} (1 - chi_D(P) u^{deg P})^{-1} truncated at u^n.
  void coefficients(std::span<const Elem> D, int n, std::int64_t* out) const {
    if (n > max_deg_) throw ConfigError("Euler product needs primes through degree " + std::to_string(n));
    std::fill(out, out + n + 1, 0);
    out[0] = 1;
    std::vector<std::int8_t> chi;
    for (int d = 1; d <= n; ++d) {
      prime_values(D, d, chi);
      for (auto c : chi) {
        if (c == 0) continue;
        // ascending in-place update multiplies by the geometric series in c u^d
        for (int k = d; k <= n; ++k) out[k] = detail::checked_add(out[k], c * out[k - d]);
      }
    }
  }

 private:
  PrimeTablePtr table_;
  int max_deg_;
  std::vector<Elem> flat_;
  std::vector<std::size_t> offsets_;
};

/// Production construction through the truncated Euler product.
inline LPolynomial lpoly_euler(const Poly& D, const PrimeTablePtr& table) {
  const int g = discriminant_genus(D);
  if (table->q() != D.q()) throw ConfigError("prime table field does not match discriminant");
  LPolynomial L{D.q(), g, D, std::vector<std::int64_t>(static_cast<std::size_t>(2 * g) + 1, 0), std::nullopt};
  if (g == 0) {
    L.coeffs[0] = 1;
    return L;
  }
  if (table->max_degree() < 2 * g) {
    throw ConfigError("prime table covers degree " + std::to_string(table->max_degree()) + ", Euler product needs " +
                      std::to_string(2 * g));
  }
  EulerKernel kernel(table, 2 * g);
  kernel.coefficients(D.coeffs(), 2 * g, L.coeffs.data());
  return L;
}

/// sum_n c_n u^n by Horner's rule.
inline Complex lpoly_eval_u(std::span<const std::int64_t> c, Complex u) {
  Complex v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * u + static_cast<double>(c[i]);
  return v;
}

inline Complex lpoly_eval(const LPolynomial& L, const SpectralPoint& pt) {
  return lpoly_eval_u(L.coeffs, pt.u(static_cast<double>(L.q)));
}

/// Roots of L, with clusters of a multiple root replaced by their centroid.
inline std::vector<Complex> lpoly_roots(std::span<const std::int64_t> c, std::uint32_t q) {
  std::size_t n = c.size();
  while (n > 1 && c[n - 1] == 0) --n;
  if (n <= 1) return {};
  std::vector<double> dc(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(n));
  const double r = 1.0 / std::sqrt(static_cast<double>(q));
  auto res = find_roots(dc, r);
  auto merged = merge_clusters(res.roots, static_cast<RootScalar>(1e-6 * r));
  std::vector<Complex> out;
  out.reserve(merged.size());
  for (const auto& z : merged) out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  return out;
}

struct RhReport {
  double max_deviation = 0;
  int degree = 0;
  bool passed = true;
};

/// max over roots u of | |u| sqrt(q) - 1 |, compared against tol.
inline RhReport rh_check(LPolynomial& L, double tol = 1e-8) {
  RhReport r;
  r.degree = L.degree();
  if (r.degree == 0) return r;
  if (!L.roots) L.roots = lpoly_roots(L.coeffs, L.q);
  const double sq = std::sqrt(static_cast<double>(L.q));
  for (const auto& u : *L.roots) r.max_deviation = std::max(r.max_deviation, std::fabs(std::abs(u) * sq - 1.0));
  r.passed = r.max_deviation < tol;
  return r;
}

/// Angles of the roots on |u| = q^{-1/2}, ascending in [0, 2pi).
inline std::vector<double> root_angles(std::span<const std::int64_t> c, std::uint32_t q) {
  std::vector<double> out;
  for (const auto& u : lpoly_roots(c, q)) out.push_back(SpectralPoint::reduce(std::arg(u)));
  std::sort(out.begin(), out.end());
  return out;
}

/// All L-polynomials of H_{2g+1,q}, in family order, with coefficients
/// stored row-major (2g+1 per discriminant).
class LFamily {
 public:
  LFamily(DiscriminantFamily family, std::vector<std::int64_t> coeffs)
      : family_(std::move(family)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != family_.size() * width()) throw NumericalError("L-family coefficient table has wrong size");
  }

  const DiscriminantFamily& family() const noexcept { return family_; }
  std::uint32_t q() const noexcept { return family_.q(); }
  int g() const noexcept { return family_.genus(); }
  std::size_t size() const noexcept { return family_.size(); }
  std::size_t width() const noexcept { return static_cast<std::size_t>(2 * family_.genus()) + 1; }

  std::span<const std::int64_t> coeffs(std::size_t i) const {
    return std::span<const std::int64_t>(coeffs_).subspan(i * width(), width());
  }
  const std::vector<std::int64_t>& all_coeffs() const noexcept { return coeffs_; }

  LPolynomial at(std::size_t i) const {
    auto c = coeffs(i);
    return LPolynomial{q(), g(), family_[i], std::vector<std::int64_t>(c.begin(), c.end()), std::nullopt};
  }

  /// CSV with header D,c_0,...,c_{2g}; D in canonical encoding.
  void save_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write L-coefficient cache " + path.string());
    write_csv(out);
  }

  void write_csv(std::ostream& out) const {
    out << "D";
    for (std::size_t n = 0; n < width(); ++n) out << ",c_" << n;
    out << "\n";
    for (std::size_t i = 0; i < size(); ++i) {
      out << '"' << to_string(family_[i]) << '"';
      for (auto c : coeffs(i)) out << ',' << c;
      out << "\n";
    }
  }

  static LFamily load_csv(const std::filesystem::path& path, const FieldPtr& field, int g) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read L-coefficient cache " + path.string());
    std::string line;
    std::getline(in, line);
    const std::size_t width = static_cast<std::size_t>(2 * g) + 1;
    std::vector<std::uint64_t> idx;
    std::vector<std::int64_t> coeffs;
    // D is quoted since its encoding contains commas; split from the right
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::int64_t> row(width);
      std::size_t end = line.size();
      for (std::size_t k = width; k-- > 0;) {
        auto comma = line.rfind(',', end - 1);
        if (comma == std::string::npos) throw ConfigError("malformed L-coefficient row: " + line);
        row[k] = std::stoll(line.substr(comma + 1, end - comma - 1));
        end = comma;
      }
      std::string text = line.substr(0, end);
      if (text.size() >= 2 && text.front() == '"' && text.back() == '"') text = text.substr(1, text.size() - 2);
      Poly D = parse_poly(text);
      if (D.q() != field->q() || D.degree() != 2 * g + 1) throw ConfigError("L-coefficient cache row out of family");
      idx.push_back(monic_index(D));
      coeffs.insert(coeffs.end(), row.begin(), row.end());
    }
    return LFamily(DiscriminantFamily(field, g, std::move(idx)), std::move(coeffs));
  }

 private:
  DiscriminantFamily family_;
  std::vector<std::int64_t> coeffs_;
};

/// Euler-product L-polynomials for every D in H_{2g+1,q}, sharded over workers.
inline LFamily compute_lfamily(const FieldPtr& field, int g, std::size_t workers = 1,
                               const std::optional<std::filesystem::path>& cache_dir = std::nullopt) {
  auto family = enumerate_H(field, g);
  const std::size_t width = static_cast<std::size_t>(2 * g) + 1;
  std::vector<std::int64_t> coeffs(family.size() * width, 0);
  if (g == 0) {
    std::fill(coeffs.begin(), coeffs.end(), 1);
    return LFamily(std::move(family), std::move(coeffs));
  }
  auto table = prime_table_for(field, 2 * g, cache_dir);
  EulerKernel kernel(table, 2 * g);
  run_shards<int>(shard_plan(family.size(), workers), [&](IndexRange r, std::size_t) {
    for (std::size_t i = r.begin; i < r.end; ++i) {
      Poly D = family[i];
      kernel.coefficients(D.coeffs(), 2 * g, coeffs.data() + i * width);
    }
    return 0;
  });
  return LFamily(std::move(family), std::move(coeffs));
}

struct RhFamilyReport {
  double max_deviation = 0;
  std::int64_t failures = 0;
  std::size_t family_size = 0;
  std::string worst;  // D attaining max_deviation
};

/// rh_check over every member of a family.
inline RhFamilyReport rh_family(const LFamily& fam, double tol, std::size_t workers) {
  auto parts = run_shards<RhFamilyReport>(shard_plan(fam.size(), workers), [&](IndexRange r, std::size_t) {
    RhFamilyReport out;
    for (std::size_t i = r.begin; i < r.end; ++i) {
      auto L = fam.at(i);
      auto rep = rh_check(L, tol);
      out.failures += !rep.passed;
      if (out.worst.empty() || rep.max_deviation > out.max_deviation) {
        out.max_deviation = rep.max_deviation;
        out.worst = to_string(L.D);
      }
    }
    return out;
  });
  RhFamilyReport total;
  total.family_size = fam.size();
  for (const auto& p : parts) {
    total.failures += p.failures;
    if (total.worst.empty() || p.max_deviation > total.max_deviation) {
      total.max_deviation = p.max_deviation;
      total.worst = p.worst;
    }
  }
  return total;
}

/// compute_lfamily backed by the CSV cache lfun_q<q>_g<g>.csv in cache_dir.
inline LFamily load_or_compute_lfamily(const FieldPtr& field, int g, std::size_t workers,
                                       const std::optional<std::filesystem::path>& cache_dir) {
  if (!cache_dir) return compute_lfamily(field, g, workers);
  auto path = *cache_dir / ("lfun_q" + std::to_string(field->q()) + "_g" + std::to_string(g) + ".csv");
  if (std::filesystem::exists(path)) {
    auto fam = LFamily::load_csv(path, field, g);
    if (fam.family().indices() == enumerate_H(field, g).indices()) return fam;
  }
  auto fam = compute_lfamily(field, g, workers, cache_dir);
  std::filesystem::create_directories(*cache_dir);
  fam.save_csv(path);
  return fam;
}

/// Refusal of a sweep whose family exceeds the discriminant budget.
class BudgetError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Shared knobs of every family computation.
struct ComputeOptions {
  std::size_t workers = 1;
  std::optional<std::filesystem::path> cache_dir;
  double budget = 1e7;
};

/// Throws BudgetError, with a cost estimate, if |H_{2g+1,q}| exceeds the budget.
inline void check_budget(std::uint32_t q, int g, double budget) {
  if (g < 0) throw DomainError("genus must be nonnegative");
  const double X = std::pow(static_cast<double>(q), 2 * g + 1);
  const double size = g == 0 ? q : X - X / q;
  if (size <= budget) return;
  double symbols = 0;
  for (int d = 1; d <= 2 * g; ++d) symbols += necklace_count_real(q, d);
  char buf[320];
  std::snprintf(buf, sizeof buf,
                "family H_{%d,%u} has %.4g discriminants (X = %u^%d = %.4g), about %.3g character evaluations; "
                "budget is %.4g discriminants",
                2 * g + 1, q, size, q, 2 * g + 1, X, size * symbols, budget);
  throw BudgetError(buf);
}

/// Process-wide cache of L-families keyed by (q, g).
inline std::shared_ptr<const LFamily> lfamily_for(std::uint32_t q, int g, const ComputeOptions& opt) {
  check_budget(q, g, opt.budget);
  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, int>, std::shared_ptr<const LFamily>> cache;
  std::lock_guard lock(mutex);
  auto key = std::pair{q, g};
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto fam = std::make_shared<const LFamily>(load_or_compute_lfamily(field_for(q), g, opt.workers, opt.cache_dir));
  cache[key] = fam;
  return fam;
}

}  // namespace ffm
