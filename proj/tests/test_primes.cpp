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
#include <random>

#include "ffm/primes.hpp"
#include "oracles.hpp"

namespace ffm {
namespace {

Poly P(const char* s) { return parse_poly(s); }

TEST(Irreducible, Examples) {
  EXPECT_TRUE(is_irreducible(P("q3:1,1")));
  EXPECT_FALSE(is_irreducible(P("q3:0,0,1")));
  EXPECT_TRUE(is_irreducible(P("q3:1,0,1")));
  EXPECT_FALSE(is_irreducible(P("q3:2,0,1")));  // T^2+2 = (T+1)(T+2)
  EXPECT_THROW(is_irreducible(P("q3:2")), DomainError);
}

TEST(Irreducible, RabinAgreesWithTrialDivision) {
  for (std::uint32_t q : {3u, 5u, 9u}) {
    auto F = field_for(q);
    for (int n = 1; n <= (q == 3 ? 6 : 4); ++n) {
      for (auto f : enumerate_monic(F, n)) {
        ASSERT_EQ(is_irreducible(f), oracle::irreducible_by_trial(f)) << to_string(f);
      }
    }
  }
}

TEST(PrimeTable, Counts) {
  auto t1 = PrimeTable::build(field_for(3), 1);
  EXPECT_EQ(t1.count(1), 3u);
  auto t3 = PrimeTable::build(field_for(3), 3);
  EXPECT_EQ(t3.count(2), 3u);
  EXPECT_EQ(t3.count(3), 8u);
  // cross-check with (q^2-q)/2 and (q^3-q)/3
  EXPECT_EQ(t3.count(2), (9u - 3u) / 2);
  EXPECT_EQ(t3.count(3), (27u - 3u) / 3);
  auto t5 = PrimeTable::build(field_for(5), 4);
  EXPECT_EQ(t5.count(4), 150u);
  EXPECT_THROW(t5.count(5), ConfigError);
  EXPECT_THROW(PrimeTable::build(field_for(3), 0), DomainError);
}

TEST(PrimeTable, MatchesBruteForce) {
  for (std::uint32_t q : {3u, 5u, 9u}) {
    auto F = field_for(q);
    const int maxd = q == 3 ? 6 : 3;
    auto t = PrimeTable::build(F, maxd);
    for (int d = 1; d <= maxd; ++d) {
      std::vector<std::uint64_t> expect;
      for (auto f : enumerate_monic(F, d)) {
        if (oracle::irreducible_by_trial(f)) expect.push_back(monic_index(f));
      }
      ASSERT_EQ(t.codes(d), expect) << "q=" << q << " d=" << d;
    }
  }
}

TEST(PrimeTable, NecklaceIdentity) {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    auto t = PrimeTable::build(field_for(q), q == 7 ? 7 : 8);
    for (int n = 1; n <= t.max_degree(); ++n) {
      std::uint64_t s = 0;
      for (int d = 1; d <= n; ++d)
        if (n % d == 0) s += static_cast<std::uint64_t>(d) * t.count(d);
      ASSERT_EQ(s, ipow(q, static_cast<unsigned>(n))) << "q=" << q << " n=" << n;
      ASSERT_EQ(t.count(n), necklace_count(q, n));
    }
  }
}

TEST(PrimeTable, CacheFileRoundTrip) {
  auto t = PrimeTable::build(field_for(5), 3);
  auto path = std::filesystem::temp_directory_path() / "ffm_test_primes_q5_d3.txt";
  t.save(path);
  std::ifstream in(path);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  EXPECT_EQ(header, "q=5 maxdeg=3");
  EXPECT_EQ(first, "q5:0,1");
  auto u = PrimeTable::load(path);
  for (int d = 1; d <= 3; ++d) EXPECT_EQ(u.codes(d), t.codes(d));
  std::filesystem::remove(path);
}

TEST(Squarefree, Examples) {
  EXPECT_TRUE(is_squarefree(P("q3:0,1,1")));
  EXPECT_FALSE(is_squarefree(P("q3:1,2,1")));
  EXPECT_TRUE(is_squarefree(P("q3:0,2,0,1")));   // T^3+2T = T(T+1)(T+2)
  EXPECT_FALSE(is_squarefree(P("q3:1,0,0,1")));  // T^3+1 = (T+1)^3, derivative 0
  EXPECT_TRUE(is_squarefree(P("q3:2")));
}

TEST(Factorize, Examples) {
  auto fz = factorize(P("q3:1,2,1"));
  ASSERT_EQ(fz.factors.size(), 1u);
  EXPECT_EQ(fz.factors[0].first, P("q3:1,1"));
  EXPECT_EQ(fz.factors[0].second, 2);

  Poly prime = P("q3:1,0,1");
  auto fp = factorize(prime);
  ASSERT_EQ(fp.factors.size(), 1u);
  EXPECT_EQ(fp.factors[0].first, prime);

  auto f4 = factorize(P("q3:0,0,1,0,1"));  // T^4+T^2 = T^2 (T^2+1)
  ASSERT_EQ(f4.factors.size(), 2u);
  EXPECT_EQ(f4.factors[0].first, P("q3:0,1"));
  EXPECT_EQ(f4.factors[0].second, 2);
  EXPECT_EQ(f4.factors[1].first, P("q3:1,0,1"));
  EXPECT_EQ(f4.factors[1].second, 1);

  auto fu = factorize(P("q3:0,2"));  // 2T
  EXPECT_EQ(fu.unit, 2);
  EXPECT_EQ(fu.product(), P("q3:0,2"));

  auto small = PrimeTable::build(field_for(3), 1);
  EXPECT_THROW(factorize(P("q3:1,0,0,0,0,1"), small), ConfigError);
}

TEST(ArithmeticFunctions, Examples) {
  Poly one = P("q3:1");
  EXPECT_EQ(mobius(one), 1);
  EXPECT_EQ(omega(one), 0);
  EXPECT_EQ(divisor_count(one), 1u);
  Poly t_t1 = P("q3:0,1,1");
  EXPECT_EQ(mobius(t_t1), 1);
  EXPECT_EQ(divisor_count(t_t1), 4u);
  Poly f = P("q3:0,0,1,0,1");
  EXPECT_EQ(mobius(f), 0);
  EXPECT_EQ(omega(f), 3);
  EXPECT_EQ(divisor_count(f), 6u);
  EXPECT_THROW(mobius(P("q3:0,2")), DomainError);
}

TEST(FactorizeProperties, RoundTripOnRandomProducts) {
  for (std::uint32_t q : {3u, 5u, 9u}) {
    auto F = field_for(q);
    std::mt19937_64 rng(77 + q);
    std::uniform_int_distribution<Elem> unit(1, static_cast<Elem>(q - 1));
    auto table = prime_table_for(F, 6);
    for (int i = 0; i < 1000 / 3 + 1; ++i) {
      Poly a = oracle::random_monic(F, 1 + static_cast<int>(rng() % 4), rng);
      Poly b = oracle::random_monic(F, 1 + static_cast<int>(rng() % 4), rng);
      Poly f = (a * b).scaled(unit(rng));
      auto fz = factorize(f, *table);
      ASSERT_EQ(fz.product(), f);
      for (std::size_t k = 0; k < fz.factors.size(); ++k) {
        ASSERT_TRUE(is_irreducible(fz.factors[k].first));
        if (k) {
          const auto& prev = fz.factors[k - 1].first;
          const auto& cur = fz.factors[k].first;
          ASSERT_TRUE(prev.degree() < cur.degree() ||
                      (prev.degree() == cur.degree() && monic_index(prev) < monic_index(cur)));
        }
      }
    }
  }
}

TEST(SquarefreeProperties, AgreesWithMobiusExhaustively) {
  auto F = field_for(3);
  for (int n = 0; n <= 5; ++n) {
    for (auto f : enumerate_monic(F, n)) ASSERT_EQ(is_squarefree(f), mobius(f) != 0) << to_string(f);
  }
}

TEST(Family, CountsAndOrder) {
  auto h30 = enumerate_H(field_for(3), 0);
  ASSERT_EQ(h30.size(), 3u);
  EXPECT_EQ(h30[0], P("q3:0,1"));
  EXPECT_EQ(h30[2], P("q3:2,1"));
  EXPECT_EQ(enumerate_H(field_for(3), 1).size(), 18u);
  EXPECT_EQ(enumerate_H(field_for(5), 1).size(), 100u);
  for (std::uint32_t q : {3u, 5u}) {
    for (int g = 1; g <= 2; ++g) {
      auto H = enumerate_H(field_for(q), g);
      EXPECT_EQ(H.size(), family_size(q, g));
      // sieve agrees with the gcd criterion on every monic of degree 2g+1
      std::vector<std::uint64_t> expect;
      for (auto f : enumerate_monic(field_for(q), 2 * g + 1))
        if (is_squarefree(f)) expect.push_back(monic_index(f));
      EXPECT_EQ(H.indices(), expect);
    }
  }
}

}  // namespace
}  // namespace ffm
