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

#include <filesystem>
#include <numbers>
#include <random>

#include "ffm/lfunction.hpp"
#include "ffm/quadrature.hpp"
#include "oracles.hpp"

namespace ffm {
namespace {

Poly P(const char* s) { return parse_poly(s); }
constexpr double kPi = std::numbers::pi;

TEST(Zeta, ClosedForm) {
  EXPECT_NEAR(zeta_a(2.0, 3).real(), 1.5, 1e-15);
  EXPECT_NEAR(zeta_a(2.0, 3).imag(), 0.0, 1e-15);
  Complex z = zeta_a(1.0 + 1.0 / std::log(243.0), 3);
  EXPECT_NEAR(z.real(), 1.0 / (1.0 - std::exp(-0.2)), 1e-12);
  EXPECT_NEAR(z.real(), 5.5167, 1e-4);
  EXPECT_THROW(zeta_a(1.0, 3), PoleError);
  // poles repeat along Re s = 1 with period 2pi / ln q
  EXPECT_THROW(zeta_a(Complex(1.0, 2 * kPi / std::log(5.0)), 5), PoleError);
  // Z(u) at u = q^{-s}
  Complex s(2.0, 0.3);
  EXPECT_NEAR(std::abs(zeta_u(std::exp(-s * std::log(7.0)), 7) - zeta_a(s, 7)), 0.0, 1e-14);
  EXPECT_THROW(zeta_u(1.0 / 3.0, 3), PoleError);
}

TEST(SpectralPoint, ReductionAndChangeOfVariables) {
  EXPECT_DOUBLE_EQ(SpectralPoint(2 * kPi).theta(), 0.0);
  EXPECT_NEAR(SpectralPoint(-0.5).theta(), 2 * kPi - 0.5, 1e-15);
  SpectralPoint pt(1.1);
  const double q = 5;
  Complex u_from_s = std::exp(-pt.s(q) * std::log(q));
  EXPECT_NEAR(std::abs(u_from_s - pt.u(q)), 0.0, 1e-15);
  EXPECT_NEAR(pt.s(q).real(), 0.5, 0.0);
}

TEST(LPolynomial, GenusZeroIsOne) {
  auto table = prime_table_for(field_for(3), 4);
  auto H = enumerate_H(field_for(3), 0);
  for (auto D : H.indices()) {
    Poly d = monic_from_index(field_for(3), 1, D);
    auto L = lpoly_direct(d);
    ASSERT_EQ(L.coeffs, std::vector<std::int64_t>{1});
    EXPECT_EQ(lpoly_euler(d, table).coeffs, L.coeffs);
    EXPECT_EQ(lpoly_eval(L, SpectralPoint(0.7)), Complex(1.0));
    EXPECT_EQ(rh_check(L).max_deviation, 0.0);
  }
}

TEST(LPolynomial, RejectsNonDiscriminants) {
  auto table = prime_table_for(field_for(3), 4);
  EXPECT_THROW(lpoly_direct(P("q3:0,0,1")), DomainError);     // even degree
  EXPECT_THROW(lpoly_direct(P("q3:0,0,1,1")), DomainError);   // T^2 (T+1)
  EXPECT_THROW(lpoly_direct(P("q3:1,0,0,2")), DomainError);   // not monic
  EXPECT_THROW(lpoly_euler(P("q3:1,0,0,1"), table), DomainError);
  auto small = std::make_shared<const PrimeTable>(PrimeTable::build(field_for(3), 1));
  EXPECT_THROW(lpoly_euler(P("q3:1,2,0,1"), small), ConfigError);
}

TEST(LPolynomial, LinearCoefficientIsTheSumOverLinearPrimes) {
  auto F = field_for(3);
  auto H = enumerate_H(F, 1);
  for (auto D : H.indices()) {
    Poly d = monic_from_index(F, 3, D);
    auto L = lpoly_direct(d);
    std::int64_t s = 0;
    for (auto f : enumerate_monic(F, 1)) s += oracle::symbol_by_factoring(d, f);
    EXPECT_EQ(L.coeffs[1], s);
    EXPECT_LE(std::abs(L.coeffs[1]), 3);
  }
}

TEST(LPolynomial, EulerMatchesDirectOnSmallFamilies) {
  for (auto [q, g] : {std::pair{3u, 1}, std::pair{3u, 2}, std::pair{5u, 1}, std::pair{5u, 2}}) {
    auto F = field_for(q);
    auto table = prime_table_for(F, 2 * g);
    auto H = enumerate_H(F, g);
    for (std::size_t i = 0; i < H.size(); ++i) {
      ASSERT_EQ(lpoly_euler(H[i], table).coeffs, lpoly_direct(H[i]).coeffs) << to_string(H[i]);
    }
  }
}

TEST(LPolynomial, EulerMatchesDirectOnRandomGenusTwoOverF5) {
  auto F = field_for(5);
  auto table = prime_table_for(F, 4);
  auto H = enumerate_H(F, 2);
  std::mt19937_64 rng(55);
  for (int k = 0; k < 100; ++k) {
    Poly D = H[rng() % H.size()];
    ASSERT_EQ(lpoly_euler(D, table).coeffs, lpoly_direct(D).coeffs);
  }
}

TEST(LPolynomial, TailVanishesAndDegreeIsExactly2g) {
  auto F = field_for(3);
  for (int g = 1; g <= 2; ++g) {
    auto H = enumerate_H(F, g);
    for (std::size_t i = 0; i < H.size(); ++i) {
      for (int n = 2 * g + 1; n <= 2 * g + 3; ++n) ASSERT_EQ(degree_character_sum(H[i], n), 0);
      auto L = lpoly_direct(H[i]);
      ASSERT_EQ(L.coeffs[0], 1);
      ASSERT_EQ(L.degree(), 2 * g);
      for (int n = 0; n <= 2 * g; ++n) ASSERT_LE(std::abs(L.coeffs[static_cast<std::size_t>(n)]), ipow(3, n));
    }
  }
}

TEST(LPolynomial, ConjugateSymmetryPeriodicityAndValueAtZero) {
  auto F = field_for(3);
  auto H = enumerate_H(F, 1);
  for (std::size_t i = 0; i < H.size(); ++i) {
    auto L = lpoly_direct(H[i]);
    for (double th : {0.3, 1.7, 4.0}) {
      Complex a = lpoly_eval(L, SpectralPoint(th)), b = lpoly_eval(L, SpectralPoint(-th));
      EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-14);
      Complex c = lpoly_eval(L, SpectralPoint(th + 2 * kPi));
      EXPECT_NEAR(std::abs(a - c), 0.0, 1e-13);
    }
    // theta = 0: the plain sum of c_n q^{-n/2}
    double direct = 0;
    for (int n = 0; n <= 2; ++n) direct += static_cast<double>(L.coeffs[static_cast<std::size_t>(n)]) * std::pow(3.0, -n / 2.0);
    Complex v = lpoly_eval(L, SpectralPoint(0));
    EXPECT_NEAR(v.real(), direct, 1e-14);
    EXPECT_GT(v.real(), 0.0);
  }
}

TEST(RiemannHypothesis, SmallFamilies) {
  for (auto [q, g] : {std::pair{3u, 1}, std::pair{3u, 2}, std::pair{5u, 2}}) {
    auto fam = compute_lfamily(field_for(q), g);
    for (std::size_t i = 0; i < fam.size(); ++i) {
      auto L = fam.at(i);
      auto r = rh_check(L);
      ASSERT_LT(r.max_deviation, 1e-8) << to_string(L.D);
      ASSERT_TRUE(r.passed);
      ASSERT_EQ(L.roots->size(), static_cast<std::size_t>(2 * g));
      // the roots reproduce the polynomial: prod (1 - u/u_j)
      Complex z(0.31, -0.17), prod = 1;
      for (const auto& u : *L.roots) prod *= 1.0 - z / u;
      ASSERT_NEAR(std::abs(prod - lpoly_eval_u(L.coeffs, z)), 0.0, 1e-9);
    }
  }
}

TEST(RiemannHypothesis, RepeatedRootsAreResolved) {
  // (1 + 3u^2)^2 has double roots at +-i/sqrt(3)
  std::vector<std::int64_t> c{1, 0, 6, 0, 9};
  auto roots = lpoly_roots(c, 3);
  ASSERT_EQ(roots.size(), 4u);
  for (const auto& u : roots) EXPECT_NEAR(std::abs(u) * std::sqrt(3.0), 1.0, 1e-12);
  // (1 - sqrt3 u)^2 (1 + sqrt3 u)^2 = (1 - 3u^2)^2, real double roots
  std::vector<std::int64_t> d{1, 0, -6, 0, 9};
  for (const auto& u : lpoly_roots(d, 3)) EXPECT_NEAR(std::abs(u) * std::sqrt(3.0), 1.0, 1e-12);
}

TEST(LFamily, CsvRoundTripAndCachedLoad) {
  auto F = field_for(3);
  auto fam = compute_lfamily(F, 2, 3);
  auto dir = std::filesystem::temp_directory_path() / "ffm_test_lfamily";
  std::filesystem::remove_all(dir);
  auto a = load_or_compute_lfamily(F, 2, 1, dir);
  auto b = load_or_compute_lfamily(F, 2, 1, dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "lfun_q3_g2.csv"));
  EXPECT_EQ(a.all_coeffs(), fam.all_coeffs());
  EXPECT_EQ(b.all_coeffs(), fam.all_coeffs());
  EXPECT_EQ(b.family().indices(), fam.family().indices());
  std::filesystem::remove_all(dir);
}

TEST(LFamily, ShardCountDoesNotChangeCoefficients) {
  auto F = field_for(5);
  auto one = compute_lfamily(F, 2, 1);
  auto four = compute_lfamily(F, 2, 4);
  EXPECT_EQ(one.all_coeffs(), four.all_coeffs());
}

TEST(Quadrature, GaussLegendreIntegratesPolynomialsExactly) {
  for (int n : {1, 2, 5, 16, 40}) {
    const auto& r = gauss_legendre(n);
    double wsum = 0;
    for (double w : r.weights) wsum += w;
    EXPECT_NEAR(wsum, 2.0, 1e-14);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double s = 0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
      double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(s, exact, 1e-13) << n << " " << k;
    }
  }
}

TEST(Quadrature, PiecewiseRuleHandlesKinks) {
  // |sin t| has kinks at 0, pi; exact integral 4
  auto f = [](double t) { return std::fabs(std::sin(t)); };
  EXPECT_NEAR(gauss_piecewise_circle(f, {kPi}, 64), 4.0, 1e-14);
  EXPECT_GT(std::fabs(trapezoid_periodic([](double t) { return std::fabs(std::sin(t - 0.3)); }, 128) - 4.0), 1e-6);
}

}  // namespace
}  // namespace ffm
