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

#include <gtest/gtest.h>

#include <numbers>

#include "ffm/verify.hpp"
#include "oracles.hpp"

namespace ffm {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Poly> primes_by_trial(const FieldPtr& F, int d) {
  std::vector<Poly> out;
  for (auto f : enumerate_monic(F, d)) {
    if (oracle::irreducible_by_trial(f)) out.push_back(f);
  }
  return out;
}

double brute_abs_L(const Poly& D, Complex u) {
  const int g = (D.degree() - 1) / 2;
  Complex acc = 0;
  for (int n = 0; n <= 2 * g; ++n) {
    std::int64_t c = 0;
    for (auto f : enumerate_monic(D.field(), n)) c += oracle::symbol_by_factoring(D, f);
    acc += static_cast<double>(c) * std::pow(u, n);
  }
  return std::abs(acc);
}

double I_by_trial(const Poly& f) {
  double v = 1;
  for (const auto& [P, e] : oracle::factor_by_trial(f)) v *= 1 - 0.5 / P.norm();
  return v;
}

TEST(Weights, DegreeOnly) {
  WeightFunctions w({1.0, 2.0}, {0.3, 1.1});
  EXPECT_DOUBLE_EQ(w.a(), 3.0);
  EXPECT_NEAR(w.H(0), 1.5, 1e-15);
  EXPECT_NEAR(w.H(2), 0.5 * (std::cos(0.6) + 2 * std::cos(2.2)), 1e-15);
  EXPECT_NEAR(w.H_P_x(2, 4), 2 * w.H(2) / (3 * std::exp(0.5)), 1e-15);
  EXPECT_NEAR(w.H1_P_x(1, 4), 4 * w.H(2) / (9 * std::exp(0.5)), 1e-15);
  EXPECT_DOUBLE_EQ(WeightFunctions::s_P_x(1, 4), 0.75);
  EXPECT_NEAR(WeightFunctions::I(parse_poly("q3:0,2,0,1")), I_by_trial(parse_poly("q3:0,2,0,1")), 1e-15);
  EXPECT_THROW(WeightFunctions({1.0}, {}), ConfigError);
}

TEST(Mertens, SmallCasesByHand) {
  auto r = mertens_log(3, 1);
  EXPECT_NEAR(r.sum, std::log(3.0), 1e-15);
  EXPECT_NEAR(r.residual, 0.0, 1e-15);
  EXPECT_NEAR(r.b_estimate, 1 - std::log(std::log(3.0)), 1e-15);
  // pi(2) = 3 over F_3
  auto s = mertens_log(3, 2);
  EXPECT_NEAR(s.sum, std::log(3.0) + 3 * 2 * std::log(3.0) / 9, 1e-15);
  auto c = mertens_cos(3, 2, 0.0);
  EXPECT_NEAR(c.sum, 1 + 3.0 / 9, 1e-15);
  EXPECT_NEAR(c.zeta_term, -std::log(1 - std::exp(-0.5)), 1e-13);
  EXPECT_NEAR(c.min_term, std::log(2 * std::log(3.0)), 1e-15);
  EXPECT_THROW(mertens_log(3, 0), DomainError);
}

TEST(Mertens, ResidualsStayBounded) {
  for (std::uint32_t q : {3u, 5u}) {
    for (int n = 1; n <= 7; ++n) {
      EXPECT_LT(std::fabs(mertens_log(q, n).residual), 1.0);
      for (double al : mertens_alpha_grid(q)) {
        auto c = mertens_cos(q, n, al);
        EXPECT_LT(std::fabs(c.residual_zeta), 1.0) << q << " " << n << " " << al;
        EXPECT_LT(std::fabs(c.residual_min), 2.0) << q << " " << n << " " << al;
      }
    }
  }
  auto grid = mertens_alpha_grid(3);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_LE(grid.back(), 2 * kPi / std::log(3.0) + 1e-12);
}

TEST(CharAvg, SquareExample) {
  auto H = enumerate_H(field_for(3), 1);
  Poly f = parse_poly("q3:0,0,1");
  auto r = charavg_plain(H, f);
  std::int64_t brute = 0;
  for (std::size_t i = 0; i < H.size(); ++i) brute += oracle::symbol_by_factoring(H[i], f);
  EXPECT_EQ(r.lhs, static_cast<double>(brute));
  EXPECT_EQ(r.lhs, 14.0);
  EXPECT_NEAR(r.main, 13.5, 1e-12);
  EXPECT_NEAR(r.normalized, 0.5 / (std::sqrt(27.0) * std::sqrt(3.0)), 1e-12);
  EXPECT_NEAR(r.normalized, 0.0556, 1e-4);
}

TEST(CharAvg, NonSquaresHaveNoMainTerm) {
  auto H = enumerate_H(field_for(3), 2);
  for (auto f : enumerate_monic(field_for(3), 3)) {
    auto r = charavg_plain(H, f);
    EXPECT_EQ(r.main, 0.0);
    std::int64_t brute = 0;
    for (std::size_t i = 0; i < H.size(); ++i) brute += oracle::symbol_by_factoring(H[i], f);
    EXPECT_EQ(r.lhs, static_cast<double>(brute));
  }
  EXPECT_THROW(charavg_plain(H, parse_poly("q3:1,2")), DomainError);
}

TEST(CharAvg, SweepIsBounded) {
  auto s = charavg_sweep(3, 2, 4);
  EXPECT_EQ(s.count, 1u + 3 + 9 + 27 + 81);
  EXPECT_LT(s.max_normalized, 2.0);
}

TEST(CharAvg, WeightedMatchesBruteForce) {
  auto H = enumerate_H(field_for(3), 1);
  for (const char* text : {"q3:1", "q3:0,0,1", "q3:2,1", "q3:1,0,1"}) {
    Poly f = parse_poly(text);
    for (double k : {0.5, 2.0}) {
      auto r = charavg_weighted(H, f, k);
      double brute = 0;
      for (std::size_t i = 0; i < H.size(); ++i) {
        brute += oracle::symbol_by_factoring(H[i], f) * std::pow(I_by_trial(H[i]), -k);
      }
      EXPECT_NEAR(r.lhs, brute, 1e-12 * std::fabs(brute) + 1e-12) << text << " " << k;
      EXPECT_LT(r.truncation, 1e-9);
    }
  }
}

TEST(CharAvg, WeightedAtZeroIsPlain) {
  auto H = enumerate_H(field_for(5), 1);
  for (const char* text : {"q5:1", "q5:0,0,1", "q5:4,0,1", "q5:3,1"}) {
    Poly f = parse_poly(text);
    auto w = charavg_weighted(H, f, 0.0);
    auto p = charavg_plain(H, f);
    EXPECT_NEAR(w.main, p.main, 1e-10 * (1 + p.main)) << text;
    EXPECT_DOUBLE_EQ(w.lhs, p.lhs);
  }
}

TEST(DegreeProfile, MatchesPrimeEnumeration) {
  auto F = field_for(3);
  auto H = enumerate_H(F, 2);
  auto table = prime_table_for(F, 4);
  EulerKernel kernel(table, 4);
  std::vector<std::vector<Poly>> primes(5);
  for (int d = 1; d <= 4; ++d) primes[static_cast<std::size_t>(d)] = primes_by_trial(F, d);
  for (std::size_t i = 0; i < H.size(); i += 3) {
    Poly D = H[i];
    auto prof = degree_profile(kernel, D.coeffs(), 4);
    for (int d = 1; d <= 4; ++d) {
      std::int64_t A = 0, B = 0;
      for (const auto& P : primes[static_cast<std::size_t>(d)]) {
        const int c = oracle::symbol_by_factoring(D, P);
        A += c;
        B += c != 0;
      }
      ASSERT_EQ(prof.A[static_cast<std::size_t>(d)], A);
      ASSERT_EQ(prof.B[static_cast<std::size_t>(d)], B);
    }
    ASSERT_NEAR(prof.I(3, D.degree()), I_by_trial(D), 1e-15) << to_string(D);
  }
}

TEST(DegreeProfile, LeftoverPrimeFactor) {
  // T (T^4 + ...) with a degree-4 prime cofactor is not seen by a degree-2 profile
  auto F = field_for(3);
  auto table = prime_table_for(F, 4);
  EulerKernel kernel(table, 4);
  for (auto P : primes_by_trial(F, 4)) {
    Poly D = parse_poly("q3:0,1") * P;
    auto prof = degree_profile(kernel, D.coeffs(), 2);
    EXPECT_NEAR(prof.I(3, 5), I_by_trial(D), 1e-15);
    break;
  }
}

// The right side summed prime by prime and power by power.
double prop31_rhs_brute(const Poly& D, int h, double theta) {
  const int g = (D.degree() - 1) / 2;
  const double q = D.q();
  double s = 0;
  for (int d = 1; d <= h; ++d) {
    for (const auto& P : primes_by_trial(D.field(), d)) {
      const int chi = oracle::symbol_by_factoring(D, P);
      for (int j = 1; j * d <= h; ++j) {
        const double c = std::pow(chi, j);
        const double mag = std::pow(q, -j * d * (0.5 + 1 / (h * std::log(q))));
        s += c * (h - j * d) * mag * std::cos(j * d * theta) / j;
      }
    }
  }
  return (2.0 * g + 1) / h + s / h;
}

TEST(Prop31, MatchesPrimeByPrimeSum) {
  auto F = field_for(3);
  auto H = enumerate_H(F, 2);
  for (std::size_t i = 0; i < H.size(); i += 11) {
    Poly D = H[i];
    for (int h : {1, 2, 3, 5}) {
      for (double th : {0.0, 0.9, 2.5}) {
        auto r = prop31_check(D, h, th);
        EXPECT_NEAR(r.rhs, prop31_rhs_brute(D, h, th), 1e-12);
        EXPECT_NEAR(r.lhs, std::log(brute_abs_L(D, SpectralPoint(th).u(3))), 1e-12);
        EXPECT_GE(r.slack, kSlackTolerance);
      }
    }
  }
  EXPECT_THROW(prop31_check(H[0], 6, 0.0), ConfigError);
  EXPECT_THROW(prop31_check(H[0], 0, 0.0), ConfigError);
}

TEST(Prop31, GridHasNoViolations) {
  for (auto [q, g] : {std::pair{3u, 1}, std::pair{3u, 2}, std::pair{5u, 1}}) {
    auto fam = compute_lfamily(field_for(q), g);
    std::vector<int> hs;
    for (int h = 1; h <= 2 * g + 1; ++h) hs.push_back(h);
    auto r = prop31_grid(fam, hs, eighth_turns(), 3);
    EXPECT_EQ(r.violations, 0) << r.argmin;
    EXPECT_EQ(r.checked, static_cast<std::int64_t>(fam.size() * hs.size() * 8));
    EXPECT_GE(r.min_slack, kSlackTolerance);
  }
}

TEST(Prop32, MatchesPrimeByPrimeSum) {
  auto F = field_for(3);
  auto fam = compute_lfamily(F, 1);
  const std::vector<double> a{1.0, 2.0}, th{0.4, 1.3};
  WeightFunctions w(a, th);
  const int n = 3;
  for (double sigma : {0.5, 0.8}) {
    double best = -1e300;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      Poly D = fam.family()[i];
      double lhs = w.a() * std::log(I_by_trial(D));
      for (std::size_t j = 0; j < a.size(); ++j) {
        lhs += a[j] * std::log(brute_abs_L(D, std::polar(std::pow(3.0, -sigma), th[j])));
      }
      double rhs = w.a() * 3.0 / n;
      for (int d = 1; d <= n; ++d) {
        for (const auto& P : primes_by_trial(F, d)) {
          rhs += 2 * w.H(d) * oracle::symbol_by_factoring(D, P) / std::pow(P.norm(), sigma + 1 / (n * std::log(3.0))) *
                 (n - d) / n;
          if (2 * d <= n) rhs += w.H(2 * d) / std::pow(P.norm(), 2 * sigma);
        }
      }
      best = std::max(best, lhs - rhs);
    }
    auto r = prop32_residual(fam, n, a, th, sigma, 2);
    EXPECT_NEAR(r.max_delta, best, 1e-12);
    EXPECT_EQ(r.zeros, 0);
  }
  EXPECT_THROW(prop32_residual(fam, 4, a, th, 0.5, 1), ConfigError);
  EXPECT_THROW(prop32_residual(fam, 2, a, th, 0.4, 1), ConfigError);
}

TEST(Tail, VanishingAndPrefixIdentity) {
  auto fam = compute_lfamily(field_for(3), 2);
  auto t = tail_check(fam, 2);
  EXPECT_EQ(t.tail_checks, static_cast<std::int64_t>(3 * fam.size()));
  EXPECT_EQ(t.tail_nonzero, 0);
  EXPECT_EQ(t.prefix_mismatches, 0);
}

}  // namespace
}  // namespace ffm
