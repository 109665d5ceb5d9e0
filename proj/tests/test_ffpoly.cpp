/*
   Copyright 2026 The ffmds Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ffmds/ffpoly.hpp"
#include "ffmds/table.hpp"

using namespace ffmds;

namespace {

Poly P(std::initializer_list<Fq> c) { return Poly(std::vector<Fq>(c)); }

// Number of monic irreducibles of degree k: (1/k) sum_{d | k} mu(d) q^{k/d}.
long long necklace_count(long long q, int k) {
  auto mu = [](int d) {
    int r = 1;
    for (int p = 2; p * p <= d; ++p) {
      if (d % p) continue;
      d /= p;
      if (d % p == 0) return 0;
      r = -r;
    }
    return d > 1 ? -r : r;
  };
  long long s = 0;
  for (int d = 1; d <= k; ++d) {
    if (k % d) continue;
    long long pw = 1;
    for (int i = 0; i < k / d; ++i) pw *= q;
    s += mu(d) * pw;
  }
  return s / k;
}

}  // namespace

TEST(FieldCtx, RejectsBadParameters) {
  EXPECT_THROW(FieldCtx(6, 2), std::invalid_argument);
  EXPECT_THROW(FieldCtx(7, 2), std::invalid_argument);
  EXPECT_THROW(FieldCtx(5, 1), std::invalid_argument);
  EXPECT_THROW(FieldCtx(5, 2, 4), std::invalid_argument);
  EXPECT_NO_THROW(FieldCtx(13, 3, 2));
}

TEST(FieldCtx, DefaultGeneratorHasFullOrder) {
  for (auto [q, n] : {std::pair{5u, 2u}, {7u, 3u}, {13u, 2u}, {13u, 3u}}) {
    FieldCtx f(q, n);
    std::set<Fq> seen;
    Fq g = 1;
    for (std::uint32_t i = 0; i + 1 < q; ++i) {
      seen.insert(g);
      g = f.mul(g, f.generator());
    }
    EXPECT_EQ(seen.size(), q - 1);
  }
}

TEST(PolyRing, WorkedProducts) {
  FieldCtx f(5, 2);
  EXPECT_EQ(mul(f, P({2, 1}), P({3, 1})), P({1, 0, 1}));
  EXPECT_EQ(gcd(f, P({1, 0, 1}), P({2, 1})), P({2, 1}));
  const Poly a = P({3, 0, 4, 1});
  EXPECT_EQ(mul(f, a, Poly::one()), a);
}

TEST(PolyRing, DivisionIdentityRandom) {
  FieldCtx f(7, 3);
  std::mt19937 rng(20260101);
  std::uniform_int_distribution<Fq> coef(0, 6);
  for (int it = 0; it < 500; ++it) {
    std::vector<Fq> ca(rng() % 8), cb(1 + rng() % 5);
    for (auto& v : ca) v = coef(rng);
    for (auto& v : cb) v = coef(rng);
    cb.back() = 1 + rng() % 6;
    const Poly a(ca), b(cb);
    const auto r = poly_ring(f, a, b);
    EXPECT_EQ(add(f, mul(f, r.quotient, b), r.remainder), a);
    EXPECT_LT(r.remainder.degree(), b.degree());
    EXPECT_EQ(r.sum, add(f, b, a));
    if (!r.gcd.is_zero()) {
      EXPECT_TRUE(r.gcd.is_monic());
      EXPECT_TRUE(mod(f, a, r.gcd).is_zero());
      EXPECT_TRUE(mod(f, b, r.gcd).is_zero());
    }
  }
  EXPECT_THROW(divmod(f, P({1, 1}), Poly{}), std::domain_error);
}

TEST(Enumerate, CountsAndOrder) {
  FieldCtx f5(5, 2), f7(7, 3);
  EXPECT_EQ(enumerate_monic(f5, 0), std::vector<Poly>{Poly::one()});
  const auto lin = enumerate_monic(f5, 1);
  ASSERT_EQ(lin.size(), 5u);
  for (Fq c = 0; c < 5; ++c) EXPECT_EQ(lin[c], P({c, 1}));
  const auto cubics = enumerate_monic(f7, 3);
  EXPECT_EQ(cubics.size(), 343u);
  EXPECT_EQ(std::set<Poly>(cubics.begin(), cubics.end()).size(), 343u);
  for (std::size_t i = 0; i < cubics.size(); ++i) EXPECT_EQ(monic_code(f7, cubics[i]), i);
}

TEST(Factorize, WorkedExamples) {
  FieldCtx f5(5, 2), f7(7, 3);
  auto fa = factorize(f5, P({1, 0, 1}));
  ASSERT_EQ(fa.factors.size(), 2u);
  EXPECT_EQ(fa.factors[0], (std::pair<Poly, int>{P({2, 1}), 1}));
  EXPECT_EQ(fa.factors[1], (std::pair<Poly, int>{P({3, 1}), 1}));
  auto fb = factorize(f5, P({0, 0, 1}));
  ASSERT_EQ(fb.factors.size(), 1u);
  EXPECT_EQ(fb.factors[0], (std::pair<Poly, int>{P({0, 1}), 2}));
  EXPECT_TRUE(is_irreducible(f7, P({1, 0, 1})));
  EXPECT_THROW(factorize(f5, Poly{}), std::domain_error);
  auto fc = factorize(f5, P({3, 0, 2}));
  EXPECT_EQ(fc.unit, 2u);
  EXPECT_EQ(fc.expand(f5), P({3, 0, 2}));
}

TEST(Factorize, ExhaustiveReconstructionAndIrreducibleCounts) {
  for (auto [q, n, top] : {std::tuple{5u, 2u, 5}, {7u, 3u, 4}}) {
    FieldCtx f(q, n);
    for (int k = 0; k <= top; ++k) {
      long long irreducible = 0;
      for (const Poly& m : enumerate_monic(f, k)) {
        const auto fac = factorize(f, m);
        ASSERT_EQ(fac.expand(f), m);
        std::set<Poly> distinct;
        for (const auto& [p, e] : fac.factors) {
          EXPECT_TRUE(p.is_monic());
          EXPECT_GE(e, 1);
          distinct.insert(p);
        }
        EXPECT_EQ(distinct.size(), fac.factors.size());
        if (fac.factors.size() == 1 && fac.factors[0].second == 1) ++irreducible;
      }
      if (k >= 1) {
        EXPECT_EQ(irreducible, necklace_count(q, k)) << "q=" << q << " k=" << k;
      }
    }
  }
}

TEST(Parts, WorkedExamples) {
  FieldCtx f2(5, 2), f3(7, 3);
  const Poly m = mul(f2, P({0, 0, 0, 0, 1}), P({1, 1}));
  const auto pr = parts(f2, m);
  EXPECT_EQ(pr.m0, P({1, 1}));
  EXPECT_EQ(pr.m_tilde, P({1, 1}));
  const auto pr3 = parts(f3, P({0, 0, 0, 1}));
  EXPECT_TRUE(pr3.m0.is_one());
  EXPECT_TRUE(pr3.m_tilde.is_one());
  EXPECT_EQ(coprime_part(f2, mul(f2, P({0, 0, 1}), P({1, 1})), P({0, 1})), P({1, 1}));
}

TEST(Parts, InvariantsExhaustive) {
  for (auto [q, n, top] : {std::tuple{5u, 2u, 4}, {7u, 3u, 4}}) {
    FieldCtx f(q, n);
    for (int k = 0; k <= top; ++k) {
      for (const Poly& m : enumerate_monic(f, k)) {
        const auto fac = factorize(f, m);
        const auto pr = parts(f, fac);
        ASSERT_TRUE(mod(f, m, pr.m0).is_zero());
        ASSERT_TRUE(mod(f, pr.m0, pr.m_tilde).is_zero());
        const auto ft = factorize(f, pr.m_tilde);
        for (const auto& [p, e] : ft.factors) EXPECT_EQ(e, 1);
        EXPECT_TRUE(is_perfect_nth_power(f, factorize(f, divmod(f, m, pr.m0).quotient)));
      }
    }
  }
}

TEST(Parts, CoprimePartProperty) {
  FieldCtx f(5, 2);
  std::mt19937 rng(7);
  const auto cubics = enumerate_monic(f, 3);
  const auto quads = enumerate_monic(f, 2);
  for (int it = 0; it < 300; ++it) {
    const Poly d = cubics[rng() % cubics.size()];
    const Poly m0 = quads[rng() % quads.size()];
    const Poly dh = coprime_part(f, d, m0);
    EXPECT_TRUE(gcd(f, dh, m0).is_one());
    const Poly rest = divmod(f, d, dh).quotient;
    ASSERT_TRUE(mod(f, d, dh).is_zero());
    for (const auto& [p, e] : factorize(f, rest).factors) EXPECT_TRUE(mod(f, m0, p).is_zero());
  }
}

TEST(Literal, ParseAndPrint) {
  FieldCtx f(5, 2);
  EXPECT_EQ(parse_poly(f, "t^3+2t+1"), P({1, 2, 0, 1}));
  EXPECT_EQ(parse_poly(f, "1,2,0,1"), P({1, 2, 0, 1}));
  EXPECT_EQ(parse_poly(f, "t^2 - 1"), P({4, 0, 1}));
  EXPECT_EQ(parse_poly(f, "7"), P({2}));
  EXPECT_EQ(to_string(P({1, 2, 0, 1})), "t^3+2t+1");
  EXPECT_THROW(parse_poly(f, "t^"), std::invalid_argument);
  EXPECT_THROW(parse_poly(f, "x+1"), std::invalid_argument);
  for (const Poly& m : enumerate_monic(f, 3)) EXPECT_EQ(parse_poly(f, to_string(m)), m);
}

TEST(MonicTable, MatchesTrialDivision) {
  for (auto [q, n, top] : {std::tuple{5u, 2u, 5}, {7u, 3u, 4}}) {
    FieldCtx f(q, n);
    MonicTable t(f, top);
    EXPECT_EQ(t.size(), [&] {
      std::size_t s = 0;
      for (int k = 0; k <= top; ++k) s += f.norm(k);
      return s;
    }());
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Poly m = t.poly(i);
      ASSERT_EQ(t.index(m), i);
      const auto a = t.factorization(i);
      auto b = factorize(f, m);
      auto sorted = a.factors;
      std::sort(sorted.begin(), sorted.end(), [&](const auto& x, const auto& y) {
        if (x.first.degree() != y.first.degree()) return x.first.degree() < y.first.degree();
        return monic_code(f, x.first) < monic_code(f, y.first);
      });
      ASSERT_EQ(sorted, b.factors) << to_string(m);
    }
  }
}
