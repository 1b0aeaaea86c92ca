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
 * @file verify.hpp
 * @brief Prime sums, family character averages, and the pointwise upper
 *        bounds for log |L| by short sums over primes.
 *
 * Every prime sum here depends on a prime only through its degree and the
 * value chi_D(P), so the per-discriminant work reduces to a DegreeProfile:
 * A_d = sum of chi_D(P) and B_d = number of P not dividing D, over deg P = d.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ffm/charsums.hpp"
#include "ffm/errors.hpp"
#include "ffm/lfunction.hpp"
#include "ffm/moments.hpp"
#include "ffm/primes.hpp"
#include "ffm/quadratic_character.hpp"
#include "ffm/sweep.hpp"

namespace ffm {

// ---------------------------------------------------------------------------
// Weights

/// H(f) = 1/2 Re sum_m a_m |f|^{-i t_m}, which depends on f only through
/// deg f: H = 1/2 sum_m a_m cos(theta_m deg f).
class WeightFunctions {
 public:
  WeightFunctions(std::vector<double> a, std::vector<double> theta) : a_(std::move(a)), theta_(std::move(theta)) {
    if (a_.size() != theta_.size() || a_.empty()) throw ConfigError("weights need matching nonempty a and theta");
    for (double x : a_) {
      if (x < 0) throw ConfigError("weights need a_j >= 0");
      total_ += x;
    }
  }

  double a() const noexcept { return total_; }

  double H(int deg) const {
    double s = 0;
    for (std::size_t m = 0; m < a_.size(); ++m) s += a_[m] * std::cos(theta_[m] * deg);
    return s / 2;
  }
  double H(const Poly& f) const { return H(f.degree()); }

  /// H(P, x) = 2 H(P) / (a |P|^{1 / ln x}) with x = q^n.
  double H_P_x(int d, int n) const { return 2 * H(d) / (total_ * std::exp(static_cast<double>(d) / n)); }
  /// H1(P, x) = 4 H(P^2) / (a^2 |P|^{2 / ln x}).
  double H1_P_x(int d, int n) const {
    return 4 * H(2 * d) / (total_ * total_ * std::exp(2.0 * d / n));
  }
  /// s(P, x) = ln(x / |P|) / ln x.
  static double s_P_x(int d, int n) { return static_cast<double>(n - d) / n; }

  /// I(f) = prod_{P | f} (1 - 1 / (2|P|)).
  static double I(const Poly& f) {
    double v = 1;
    for (const auto& [P, e] : factorize(f).factors) v *= 1 - 0.5 / P.norm();
    return v;
  }

 private:
  std::vector<double> a_, theta_;
  double total_ = 0;
};

// ---------------------------------------------------------------------------
// Prime sums

struct MertensReport {
  std::uint32_t q = 0;
  int n = 0;          // x = q^n
  double sum = 0;
  double main = 0;
  double residual = 0;
  double b_estimate = 0;
};

/// sum_{|P| <= x} ln|P| / |P| against ln x, with the estimate of b from
/// sum_{|P| <= x} 1/|P| - ln ln x.
inline MertensReport mertens_log(std::uint32_t q, int n, const std::optional<std::filesystem::path>& cache = {}) {
  if (n < 1) throw DomainError("cutoff exponent must be at least 1");
  auto table = prime_table_for(field_for(q), n, cache);
  const double lnq = std::log(static_cast<double>(q));
  KahanSum s, inv;
  for (int d = 1; d <= n; ++d) {
    const double pd = static_cast<double>(table->count(d)), norm = std::pow(static_cast<double>(q), d);
    s.add(pd * d * lnq / norm);
    inv.add(pd / norm);
  }
  MertensReport r;
  r.q = q;
  r.n = n;
  r.sum = s.value();
  r.main = n * lnq;
  r.residual = r.sum - r.main;
  r.b_estimate = inv.value() - std::log(r.main);
  return r;
}

struct MertensCosReport {
  std::uint32_t q = 0;
  int n = 0;
  double alpha = 0;
  double sum = 0;
  double zeta_term = 0;
  double min_term = 0;
  double residual_zeta = 0;
  double residual_min = 0;
};

/// sum_{|P| <= x} cos(alpha ln|P|) / |P| against ln|zeta_A(1 + 1/ln x + i alpha)|
/// and ln min(ln x, 1 / bar_theta(alpha ln q)).
inline MertensCosReport mertens_cos(std::uint32_t q, int n, double alpha,
                                    const std::optional<std::filesystem::path>& cache = {}) {
  if (n < 1) throw DomainError("cutoff exponent must be at least 1");
  if (alpha < 0) throw DomainError("alpha must be nonnegative");
  auto table = prime_table_for(field_for(q), n, cache);
  const double lnq = std::log(static_cast<double>(q)), lnx = n * lnq;
  KahanSum s;
  for (int d = 1; d <= n; ++d) {
    s.add(static_cast<double>(table->count(d)) * std::cos(alpha * d * lnq) / std::pow(static_cast<double>(q), d));
  }
  MertensCosReport r;
  r.q = q;
  r.n = n;
  r.alpha = alpha;
  r.sum = s.value();
  r.zeta_term = std::log(std::abs(zeta_a(Complex(1 + 1 / lnx, alpha), q)));
  const double b = bar_theta(alpha * lnq);
  r.min_term = std::log(b == 0 ? lnx : std::min(lnx, 1 / b));
  r.residual_zeta = r.sum - r.zeta_term;
  r.residual_min = r.sum - r.min_term;
  return r;
}

/// The grid {0, 0.1, ...} up to one period 2pi / ln q.
inline std::vector<double> mertens_alpha_grid(std::uint32_t q) {
  std::vector<double> out;
  const double period = 2 * std::numbers::pi / std::log(static_cast<double>(q));
  for (int i = 0; 0.1 * i <= period + 1e-12; ++i) out.push_back(0.1 * i);
  return out;
}

// ---------------------------------------------------------------------------
// Family character averages

struct CharAvgReport {
  std::uint32_t q = 0;
  int g = 0;
  std::string f;  // canonical text form
  double lhs = 0;
  double main = 0;
  double residual = 0;
  double normalized = 0;     // |residual| / (X^{1/2} |f|^{1/4})
  double truncation = 0;     // weighted variant: envelope of the product truncation
};

/// sum over D in H_{2g+1,q} of (D/f), against delta_{f square} (X / zeta_A(2)) prod_{P|f} |P| / (|P| + 1).
inline CharAvgReport charavg_plain(const DiscriminantFamily& H, const Poly& f) {
  if (f.is_zero() || !f.is_monic()) throw DomainError("charavg needs monic nonzero f");
  if (f.q() != H.q()) throw ConfigError("f and the family live over different fields");
  std::int64_t lhs = 0;
  const Field& F = *H.field();
  for (std::size_t i = 0; i < H.size(); ++i) lhs += detail::jacobi_span(F, H[i].coeffs(), f.coeffs());
  const double q = H.q(), X = std::pow(q, H.degree());
  CharAvgReport r;
  r.q = H.q();
  r.g = H.genus();
  r.f = to_string(f);
  r.lhs = static_cast<double>(lhs);
  if (is_square(f)) {
    double main = X / std::real(zeta_a(2.0, q));
    for (const auto& [P, e] : factorize(f).factors) main *= P.norm() / (P.norm() + 1);
    r.main = main;
  }
  r.residual = r.lhs - r.main;
  r.normalized = std::fabs(r.residual) / (std::sqrt(X) * std::pow(f.norm(), 0.25));
  return r;
}

struct CharAvgSweep {
  double max_normalized = 0;
  std::string argmax;
  std::size_t count = 0;
};

/// charavg_plain over every monic f with deg f <= max_deg.
inline CharAvgSweep charavg_sweep(std::uint32_t q, int g, int max_deg) {
  auto H = enumerate_H(field_for(q), g);
  CharAvgSweep s;
  for (int n = 0; n <= max_deg; ++n) {
    for (auto f : enumerate_monic(field_for(q), n)) {
      auto r = charavg_plain(H, f);
      ++s.count;
      if (s.count == 1 || r.normalized > s.max_normalized) {
        s.max_normalized = r.normalized;
        s.argmax = to_string(f);
      }
    }
  }
  return s;
}

/// sum over D of I(D)^{-k} (D/f), against
/// delta X prod_P (1 - |P|^{-1})(1 + I(P)^{-k} |P|^{-1}) prod_{P|f} (1 + I(P)^{-k} |P|^{-1})^{-1},
/// the infinite product truncated at degree `cutoff`.
inline CharAvgReport charavg_weighted(const DiscriminantFamily& H, const Poly& f, double k, int cutoff = 40) {
  if (f.is_zero() || !f.is_monic()) throw DomainError("charavg needs monic nonzero f");
  if (cutoff < 1) throw ConfigError("product cutoff must be positive");
  auto table = prime_table_for(H.field(), std::max(1, H.degree() / 2));
  const Field& F = *H.field();
  KahanSum lhs;
  for (std::size_t i = 0; i < H.size(); ++i) {
    Poly D = H[i];
    int chi = detail::jacobi_span(F, D.coeffs(), f.coeffs());
    if (chi == 0) continue;
    double I = 1;
    for (const auto& [P, e] : factorize(D, *table).factors) I *= 1 - 0.5 / P.norm();
    lhs.add(chi * std::pow(I, -k));
  }
  const double q = H.q(), X = std::pow(q, H.degree());
  auto log_factor = [&](int d) {
    const double x = std::pow(q, -d);
    const double Id = 1 - 0.5 * x;
    return std::log1p(-x) + std::log1p(std::pow(Id, -k) * x);
  };
  CharAvgReport r;
  r.q = H.q();
  r.g = H.genus();
  r.f = to_string(f);
  r.lhs = lhs.value();
  if (is_square(f)) {
    KahanSum lp;
    for (int d = 1; d <= cutoff; ++d) lp.add(necklace_count_real(q, d) * log_factor(d));
    double tail = 0;
    for (int d = cutoff + 1; d <= cutoff + 200; ++d) tail += necklace_count_real(q, d) * std::fabs(log_factor(d));
    double main = X * std::exp(lp.value());
    for (const auto& [P, e] : factorize(f).factors) {
      const double Ip = 1 - 0.5 / P.norm();
      main /= 1 + std::pow(Ip, -k) / P.norm();
    }
    r.main = main;
    r.truncation = std::fabs(main) * std::expm1(tail);
  }
  r.residual = r.lhs - r.main;
  r.normalized = std::fabs(r.residual) / (std::sqrt(X) * std::pow(f.norm(), 0.25));
  return r;
}

// ---------------------------------------------------------------------------
// Pointwise bounds

/// Per-degree aggregates of chi_D over primes, for 1 <= d <= max_degree().
struct DegreeProfile {
  std::vector<std::int64_t> A;   // sum of chi_D(P)
  std::vector<std::int64_t> B;   // primes not dividing D
  std::vector<std::int64_t> pi;  // all primes
  int max_degree() const noexcept { return static_cast<int>(A.size()) - 1; }

  /// I(D) for squarefree D of degree deg_D, provided max_degree() >= deg_D / 2:
  /// any part of D left after removing prime divisors of degree <= max_degree()
  /// is then a single prime.
  double I(std::uint32_t q, int deg_D) const {
    double v = 1;
    int covered = 0;
    for (int d = 1; d <= max_degree(); ++d) {
      const auto divisors = pi[static_cast<std::size_t>(d)] - B[static_cast<std::size_t>(d)];
      v *= std::pow(1 - 0.5 / std::pow(static_cast<double>(q), d), static_cast<double>(divisors));
      covered += static_cast<int>(divisors) * d;
    }
    if (covered < deg_D) v *= 1 - 0.5 / std::pow(static_cast<double>(q), deg_D - covered);
    return v;
  }
};

inline DegreeProfile degree_profile(const EulerKernel& kernel, std::span<const Elem> D, int max_deg) {
  DegreeProfile p;
  p.A.assign(static_cast<std::size_t>(max_deg) + 1, 0);
  p.B.assign(static_cast<std::size_t>(max_deg) + 1, 0);
  p.pi.assign(static_cast<std::size_t>(max_deg) + 1, 0);
  std::vector<std::int8_t> chi;
  for (int d = 1; d <= max_deg; ++d) {
    kernel.prime_values(D, d, chi);
    for (auto c : chi) {
      p.A[static_cast<std::size_t>(d)] += c;
      p.B[static_cast<std::size_t>(d)] += c != 0;
    }
    p.pi[static_cast<std::size_t>(d)] = static_cast<std::int64_t>(chi.size());
  }
  return p;
}

struct Prop31Result {
  double lhs = 0;
  double rhs = 0;
  double slack = 0;
  bool zero = false;  // L vanishes at the point: lhs = -inf
};

/// ln|L(1/2 + it)| against
/// m/h + (1/h) Re sum_{j >= 1, j deg P <= h} chi_D(P^j) ln q^{h - j deg P} / (|P|^{j(1/2 + it + 1/(h ln q))} ln q^j).
/// With theta = t ln q the j, P term is chi_D(P)^j (h - jd) cos(jd theta) / (j q^{jd/2} e^{jd/h}).
inline Prop31Result prop31_eval(std::span<const std::int64_t> c, const DegreeProfile& prof, std::uint32_t q, int g,
                                int h, double theta) {
  const int m = 2 * g + 1;
  if (h < 1 || h > m) throw ConfigError("truncation length needs 1 <= h <= 2g+1");
  if (prof.max_degree() < h - 1) throw ConfigError("degree profile too short for this h");
  const double sq = std::sqrt(static_cast<double>(q));
  KahanSum s;
  for (int d = 1; d < h; ++d) {
    for (int j = 1; j * d < h; ++j) {
      const auto S = (j % 2) ? prof.A[static_cast<std::size_t>(d)] : prof.B[static_cast<std::size_t>(d)];
      if (S == 0) continue;
      const int jd = j * d;
      s.add(static_cast<double>(S) * (h - jd) * std::cos(jd * theta) / (j * std::pow(sq, jd) * std::exp(static_cast<double>(jd) / h)));
    }
  }
  Prop31Result r;
  r.rhs = static_cast<double>(m) / h + s.value() / h;
  const double v = std::abs(lpoly_eval_u(c, SpectralPoint(theta).u(q)));
  if (v < kZeroThreshold) {
    r.zero = true;
    r.lhs = -std::numeric_limits<double>::infinity();
    r.slack = std::numeric_limits<double>::infinity();
  } else {
    r.lhs = std::log(v);
    r.slack = r.rhs - r.lhs;
  }
  return r;
}

/// Single-discriminant entry point.
inline Prop31Result prop31_check(const Poly& D, int h, double theta) {
  const int g = discriminant_genus(D);
  const int maxd = std::max(1, 2 * g);
  auto table = prime_table_for(D.field(), maxd);
  auto L = lpoly_euler(D, table);
  EulerKernel kernel(table, maxd);
  return prop31_eval(L.coeffs, degree_profile(kernel, D.coeffs(), 2 * g), D.q(), g, h, theta);
}

inline constexpr double kSlackTolerance = -1e-9;

struct Prop31Grid {
  std::int64_t checked = 0;
  std::int64_t violations = 0;
  std::int64_t zeros = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::string argmin;  // "D h theta"
};

/// Every D in the family at every (h, theta) of the grid.
inline Prop31Grid prop31_grid(const LFamily& fam, const std::vector<int>& hs, const std::vector<double>& thetas,
                              std::size_t workers) {
  const int g = fam.g();
  const int maxd = std::max(1, 2 * g);
  auto table = prime_table_for(fam.family().field(), maxd);
  EulerKernel kernel(table, maxd);
  auto parts = run_shards<Prop31Grid>(shard_plan(fam.size(), workers), [&](IndexRange r, std::size_t) {
    Prop31Grid out;
    for (std::size_t i = r.begin; i < r.end; ++i) {
      Poly D = fam.family()[i];
      auto prof = degree_profile(kernel, D.coeffs(), 2 * g);
      for (int h : hs) {
        for (double th : thetas) {
          auto res = prop31_eval(fam.coeffs(i), prof, fam.q(), g, h, th);
          ++out.checked;
          out.zeros += res.zero;
          out.violations += res.slack < kSlackTolerance;
          if (res.slack < out.min_slack) {
            out.min_slack = res.slack;
            out.argmin = to_string(D) + " h=" + std::to_string(h) + " theta=" + std::to_string(th);
          }
        }
      }
    }
    return out;
  });
  Prop31Grid total;
  for (const auto& p : parts) {
    total.checked += p.checked;
    total.violations += p.violations;
    total.zeros += p.zeros;
    if (p.min_slack < total.min_slack) {
      total.min_slack = p.min_slack;
      total.argmin = p.argmin;
    }
  }
  return total;
}

/// theta in {k pi / 4 : 0 <= k < 8}.
inline std::vector<double> eighth_turns() {
  std::vector<double> out;
  for (int k = 0; k < 8; ++k) out.push_back(k * std::numbers::pi / 4);
  return out;
}

struct Prop32Report {
  std::uint32_t q = 0;
  int g = 0;
  int n = 0;           // x = q^n
  double sigma = 0.5;
  double max_delta = -std::numeric_limits<double>::infinity();
  double mean_delta = 0;
  std::string argmax;
  std::int64_t zeros = 0;
  std::size_t family_size = 0;
};

/// Delta(D) = sum_j a_j ln|I(D) L(sigma + i t_j)| minus the explicit right side
///   2 sum_{|P| <= x} H(P) chi_D(P) / |P|^{sigma + 1/ln x} ln(x/|P|)/ln x
///   + sum_{|P| <= x^{1/2}} H(P^2) / |P|^{2 sigma} + a ln X / ln x,
/// maximized over the family. Report only: the bound holds up to an unspecified O(1).
inline Prop32Report prop32_residual(const LFamily& fam, int n, const std::vector<double>& a,
                                    const std::vector<double>& theta, double sigma, std::size_t workers) {
  const int g = fam.g();
  if (sigma < 0.5) throw ConfigError("sigma must be at least 1/2");
  if (n < 1 || n > 2 * g + 1) throw ConfigError("x = q^n needs 1 <= n <= 2g+1");
  WeightFunctions w(a, theta);
  const double q = fam.q();
  const int maxd = std::max(1, 2 * g);
  auto table = prime_table_for(fam.family().field(), maxd);
  EulerKernel kernel(table, maxd);
  // D-independent part
  double fixed = w.a() * (2 * g + 1) / static_cast<double>(n);
  for (int d = 1; 2 * d <= n; ++d) {
    fixed += w.H(2 * d) * static_cast<double>(table->count(d)) / std::pow(q, 2 * d * sigma);
  }
  struct Part {
    double max_delta = -std::numeric_limits<double>::infinity();
    std::string argmax;
    KahanSum sum;
    std::int64_t zeros = 0;
    std::int64_t finite = 0;
  };
  auto parts = run_shards<Part>(shard_plan(fam.size(), workers), [&](IndexRange r, std::size_t) {
    Part out;
    for (std::size_t i = r.begin; i < r.end; ++i) {
      Poly D = fam.family()[i];
      auto prof = degree_profile(kernel, D.coeffs(), 2 * g);
      double lhs = w.a() * std::log(prof.I(fam.q(), D.degree()));
      bool zero = false;
      for (std::size_t j = 0; j < a.size(); ++j) {
        const Complex u = std::polar(std::pow(q, -sigma), theta[j]);
        const double v = std::abs(lpoly_eval_u(fam.coeffs(i), u));
        if (v < kZeroThreshold) {
          zero = true;
          break;
        }
        lhs += a[j] * std::log(v);
      }
      if (zero) {
        ++out.zeros;
        continue;
      }
      double rhs = fixed;
      for (int d = 1; d < n; ++d) {
        rhs += 2 * w.H(d) * static_cast<double>(prof.A[static_cast<std::size_t>(d)]) /
               (std::pow(q, d * sigma) * std::exp(static_cast<double>(d) / n)) * (n - d) / n;
      }
      const double delta = lhs - rhs;
      out.sum.add(delta);
      ++out.finite;
      if (delta > out.max_delta) {
        out.max_delta = delta;
        out.argmax = to_string(D);
      }
    }
    return out;
  });
  Prop32Report rep;
  rep.q = fam.q();
  rep.g = g;
  rep.n = n;
  rep.sigma = sigma;
  rep.family_size = fam.size();
  KahanSum total;
  std::int64_t finite = 0;
  for (const auto& p : parts) {
    total.merge(p.sum);
    finite += p.finite;
    rep.zeros += p.zeros;
    if (p.max_delta > rep.max_delta) {
      rep.max_delta = p.max_delta;
      rep.argmax = p.argmax;
    }
  }
  rep.mean_delta = finite ? total.value() / static_cast<double>(finite) : 0;
  return rep;
}

// ---------------------------------------------------------------------------
// Tail vanishing and the prefix-sum identity

struct TailReport {
  std::int64_t tail_checks = 0;
  std::int64_t tail_nonzero = 0;
  std::int64_t prefix_checks = 0;
  std::int64_t prefix_mismatches = 0;
};

/// For every D in H_{2g+1,q}: the degree-n character sums vanish for
/// 2g < n <= 2g+3, and prefix sums from L-coefficients equal direct
/// enumeration for every N <= 2g+2.
inline TailReport tail_check(const LFamily& fam, std::size_t workers) {
  const int g = fam.g();
  auto parts = run_shards<TailReport>(shard_plan(fam.size(), workers), [&](IndexRange r, std::size_t) {
    TailReport t;
    for (std::size_t i = r.begin; i < r.end; ++i) {
      Poly D = fam.family()[i];
      std::vector<std::int64_t> deg_sums;
      for (int n = 0; n <= 2 * g + 3; ++n) deg_sums.push_back(degree_character_sum(D, n));
      for (int n = 2 * g + 1; n <= 2 * g + 3; ++n) {
        ++t.tail_checks;
        t.tail_nonzero += deg_sums[static_cast<std::size_t>(n)] != 0;
      }
      std::int64_t direct = 0;
      for (int N = 0; N <= 2 * g + 2; ++N) {
        direct += deg_sums[static_cast<std::size_t>(N)];
        ++t.prefix_checks;
        t.prefix_mismatches += char_prefix_sum(fam.coeffs(i), N) != direct;
      }
    }
    return t;
  });
  TailReport total;
  for (const auto& p : parts) {
    total.tail_checks += p.tail_checks;
    total.tail_nonzero += p.tail_nonzero;
    total.prefix_checks += p.prefix_checks;
    total.prefix_mismatches += p.prefix_mismatches;
  }
  return total;
}

}  // namespace ffm
