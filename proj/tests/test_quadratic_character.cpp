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

#include <map>
#include <random>

#include "ffm/quadratic_character.hpp"
#include "oracles.hpp"
#include "symbol_oracle.hpp"

namespace ffm {
namespace {

Poly P(const char* s) { return parse_poly(s); }

TEST(Legendre, Examples) {
  EXPECT_EQ(legendre_prime(P("q3:1,1"), P("q3:0,1")), 1);
  EXPECT_EQ(legendre_prime(P("q3:0,1"), P("q3:0,1")), 0);
  EXPECT_EQ(legendre_prime(P("q3:0,1"), P("q3:1,1")), -1);
  EXPECT_THROW(legendre_prime(P("q3:0,1"), P("q3:2,0,1")), DomainError);
  EXPECT_THROW(legendre_prime(P("q3:0,1"), P("q3:2,2")), DomainError);  // not monic
}

TEST(Legendre, EulerCriterionAgreesWithSquareRootSearch) {
  for (std::uint32_t q : {3u, 5u, 9u}) {
    auto F = field_for(q);
    auto t = PrimeTable::build(F, q == 3 ? 3 : 2);
    for (int d = 1; d <= t.max_degree(); ++d) {
      for (const auto& Pr : t.primes(d)) {
        for (int n = 0; n <= 3; ++n)
          for (auto f : enumerate_monic(F, n)) ASSERT_EQ(legendre_prime(f, Pr), oracle::legendre_by_search(f, Pr));
      }
    }
  }
}

TEST(Jacobi, Examples) {
  EXPECT_EQ(jacobi(P("q3:0,1"), P("q3:1,1")), -1);
  // reciprocity route: (T+1 / T) * (-1)^{1*1*1}
  EXPECT_EQ(jacobi(P("q3:1,1"), P("q3:0,1")), 1);
  EXPECT_EQ(jacobi(P("q3:0,1,1"), P("q3:0,0,1")), 0);
  Poly f = P("q5:2,3,1");
  Poly D = P("q5:1,0,4,1");
  ASSERT_TRUE(gcd(f, D).is_one());
  EXPECT_EQ(jacobi(f * f, D), 1);
  EXPECT_EQ(jacobi(P("q3:1"), P("q3:1,1")), 1);
  EXPECT_EQ(jacobi(P("q3:1,1"), P("q3:1")), 1);
  EXPECT_THROW(jacobi(P("q3:0,2"), P("q3:1,1")), DomainError);
}

TEST(Jacobi, TraceMatchesKernel) {
  auto F = field_for(5);
  for (auto C : enumerate_monic(F, 3))
    for (auto D : enumerate_monic(F, 2)) ASSERT_EQ(jacobi_trace(C, D).value, jacobi(C, D));
  auto tr = jacobi_trace(P("q3:0,1"), P("q3:1,1"));
  EXPECT_EQ(tr.value, -1);
  EXPECT_FALSE(tr.steps.empty());
}

TEST(Jacobi, AgreesWithFactorizationOracleExhaustivelyOverF3) {
  auto F = field_for(3);
  testing::SymbolOracle ref(F, 4);
  auto polys = ref.polys();
  for (const auto& C : polys)
    for (const auto& D : polys) ASSERT_EQ(jacobi(C, D), ref.symbol(C, D)) << to_string(C) << " / " << to_string(D);
}

TEST(Reciprocity, ExhaustiveCoprimePairs) {
  for (std::uint32_t q : {3u, 5u}) {
    auto F = field_for(q);
    testing::SymbolOracle ref(F, 4);
    auto polys = ref.polys();
    std::size_t checked = 0;
    for (const auto& C : polys) {
      for (const auto& D : polys) {
        if (!gcd(C, D).is_one()) continue;
        int sign = (C.degree() * D.degree() * ((q - 1) / 2)) % 2 ? -1 : 1;
        ASSERT_EQ(ref.symbol(C, D), ref.symbol(D, C) * sign) << to_string(C) << " " << to_string(D);
        ++checked;
      }
    }
    EXPECT_GT(checked, 0u);
  }
}

TEST(Reciprocity, RandomPairsOverF9) {
  auto F = field_for(9);
  testing::SymbolOracle ref(F, 4);
  std::mt19937_64 rng(9);
  int checked = 0;
  while (checked < 10000) {
    Poly C = oracle::random_monic(F, static_cast<int>(rng() % 5), rng);
    Poly D = oracle::random_monic(F, static_cast<int>(rng() % 5), rng);
    if (!gcd(C, D).is_one()) continue;
    // (q-1)/2 = 4 is even, so the law is plain symmetry over F_9
    ASSERT_EQ(ref.symbol(C, D), ref.symbol(D, C));
    ASSERT_EQ(jacobi(C, D), ref.symbol(C, D));
    ++checked;
  }
}

TEST(Character, Examples) {
  auto table = prime_table_for(field_for(3), 4);
  QuadraticCharacter chi(P("q3:0,1"), table);
  EXPECT_EQ(chi(P("q3:1")), 1);
  EXPECT_EQ(chi_eval(chi, P("q3:2,1")), 1);  // T = 1 mod T+2
  EXPECT_THROW(chi(P("q3:0")), DomainError);

  QuadraticCharacter chi3(P("q3:1,2,0,1"), table);
  Poly f = P("q3:1,1");
  EXPECT_EQ(chi3(f * f), gcd(f, chi3.modulus()).is_one() ? 1 : 0);
}

TEST(Character, PrimeValuesVanishExactlyAtDivisors) {
  auto table = prime_table_for(field_for(5), 3);
  auto H = enumerate_H(field_for(5), 1);
  for (std::size_t i = 0; i < H.size(); i += 7) {
    QuadraticCharacter chi(H[i], table);
    for (int d = 1; d <= 3; ++d) {
      for (std::size_t j = 0; j < table->count(d); ++j) {
        Poly Pr = table->prime(d, j);
        bool divides = (H[i] % Pr).is_zero();
        ASSERT_EQ(chi.at_prime(d, j) == 0, divides);
        ASSERT_EQ(chi(Pr * Pr), divides ? 0 : 1);
      }
    }
  }
}

TEST(CharacterProperties, CompletelyMultiplicative) {
  auto F = field_for(5);
  auto table = prime_table_for(F, 8);
  std::mt19937_64 rng(5);
  auto H = enumerate_H(F, 2);
  for (int k = 0; k < 20; ++k) {
    QuadraticCharacter chi(H[rng() % H.size()], table);
    for (int i = 0; i < 500; ++i) {
      Poly f = oracle::random_monic(F, static_cast<int>(rng() % 5), rng);
      Poly g = oracle::random_monic(F, static_cast<int>(rng() % 5), rng);
      ASSERT_EQ(chi(f * g), chi(f) * chi(g));
      if (i % 10 == 0) ASSERT_EQ(chi.eval_multiplicative(f * g), chi(f * g));
    }
  }
}

}  // namespace
}  // namespace ffm
