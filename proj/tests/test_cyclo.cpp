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

#include "ffmds/cyclo.hpp"
#include "ffmds/formal.hpp"

using namespace ffmds;

namespace {

CycNum random_cyc(const CycCtxPtr& ctx, std::mt19937& rng, int range = 4) {
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, 3);
  std::vector<mpq_class> c(static_cast<std::size_t>(ctx->phi()));
  for (auto& v : c) {
    v = mpq_class(num(rng), den(rng));
    v.canonicalize();
  }
  return CycNum(ctx, std::move(c));
}

std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
  std::vector<long long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace

TEST(CycCtx, KnownCyclotomicPolynomials) {
  EXPECT_EQ(CycCtx::cyclotomic_polynomial(20), (std::vector<long long>{1, 0, -1, 0, 1, 0, -1, 0, 1}));
  EXPECT_EQ(CycCtx::cyclotomic_polynomial(5), (std::vector<long long>{1, 1, 1, 1, 1}));
  EXPECT_EQ(CycCtx(84).phi(), 24);
  EXPECT_EQ(CycCtx(20).phi(), 8);
}

TEST(CycCtx, ProductOverDivisorsIsXNMinusOne) {
  for (int N : {12, 20, 36, 84}) {
    std::vector<long long> prod{1};
    for (int d = 1; d <= N; ++d)
      if (N % d == 0) prod = poly_mul(prod, CycCtx::cyclotomic_polynomial(d));
    std::vector<long long> expect(static_cast<std::size_t>(N) + 1, 0);
    expect[0] = -1;
    expect.back() = 1;
    EXPECT_EQ(prod, expect) << N;
  }
}

TEST(CycNum, RootOfUnityOrder) {
  for (int N : {20, 84}) {
    auto ctx = make_cyc_ctx(N);
    const CycNum z = CycNum::zeta(ctx, 1);
    EXPECT_EQ(z.pow(N), CycNum(1));
    for (int p : {2, 3, 5, 7}) {
      if (N % p == 0) {
        EXPECT_FALSE(z.pow(N / p) == CycNum(1));
      }
    }
    EXPECT_EQ(z * CycNum::zeta(ctx, N - 1), CycNum(1));
    for (int k = 0; k < N; ++k) EXPECT_EQ(CycNum::zeta(ctx, k).conj(), CycNum::zeta(ctx, N - k));
  }
}

TEST(CycNum, FifthRootsSumToZero) {
  auto ctx = make_cyc_ctx(20);
  CycNum s(0);
  for (int k = 0; k < 5; ++k) s += CycNum::zeta(ctx, 4 * k);
  EXPECT_TRUE(s.is_zero());
}

TEST(CycNum, RandomFieldAxioms) {
  std::mt19937 rng(424242);
  for (auto [N, samples] : {std::pair{20, 1000}, {84, 150}}) {
    auto ctx = make_cyc_ctx(N);
    for (int it = 0; it < samples; ++it) {
      const CycNum a = random_cyc(ctx, rng), b = random_cyc(ctx, rng), c = random_cyc(ctx, rng);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
      EXPECT_EQ(a.conj().conj(), a);
      if (!a.is_zero()) {
        EXPECT_EQ(a * a.inverse(), CycNum(1));
      }
    }
  }
  EXPECT_THROW(CycNum(0).promoted(make_cyc_ctx(20)).inverse(), std::domain_error);
}

TEST(SqrtQ, SquaresToQWithPositiveEmbedding) {
  for (auto [N, q] : {std::pair{20, 5u}, {84, 7u}, {12, 3u}, {52, 13u}}) {
    auto ctx = make_cyc_ctx(N);
    const CycNum s = sqrt_q(ctx, q);
    EXPECT_EQ(s * s, CycNum(static_cast<long long>(q)));
    const auto z = s.to_complex();
    EXPECT_GT(z.real(), 0.0);
    EXPECT_NEAR(z.imag(), 0.0, 1e-9);
  }
}

TEST(SqrtQ, QuinticGaussSumForm) {
  auto ctx = make_cyc_ctx(20);
  const auto z5 = [&](int k) { return CycNum::zeta(ctx, 4 * k); };
  EXPECT_EQ(sqrt_q(ctx, 5), z5(1) - z5(2) - z5(3) + z5(4));
}

TEST(SqrtQ, HalfPowers) {
  auto ctx = make_cyc_ctx(84);
  const CycNum s = sqrt_q(ctx, 7);
  for (long long h = -5; h <= 5; ++h) {
    EXPECT_EQ(q_half_power(ctx, 7, h) * q_half_power(ctx, 7, -h), CycNum(1)) << h;
    EXPECT_EQ(q_half_power(ctx, 7, h + 1), q_half_power(ctx, 7, h) * s) << h;
  }
  EXPECT_EQ(q_half_power(ctx, 7, 4), CycNum(49));
}

TEST(AbsSquare, RootsAndZero) {
  auto ctx = make_cyc_ctx(84);
  for (int k = 0; k < 84; k += 5) EXPECT_EQ(abs_square(CycNum::zeta(ctx, k)), CycNum(1));
  EXPECT_TRUE(abs_square(CycNum(0).promoted(ctx)).is_zero());
}

TEST(CycJson, RoundTripAndShape) {
  auto ctx = make_cyc_ctx(84);
  std::mt19937 rng(5);
  for (int it = 0; it < 20; ++it) {
    const CycNum a = random_cyc(ctx, rng, 50);
    const auto j = to_json(a, ctx);
    EXPECT_EQ(j.at("N").get<int>(), 84);
    EXPECT_EQ(j.at("coeffs").size(), 24u);
    EXPECT_EQ(cyc_from_json(j, ctx), a);
  }
  EXPECT_EQ(to_json(CycNum(3), make_cyc_ctx(20)).at("coeffs")[0].get<std::string>(), "3/1");
}

TEST(CycText, Printing) {
  auto ctx = make_cyc_ctx(20);
  EXPECT_EQ(to_string(CycNum(mpq_class(-3, 4))), "-3/4");
  EXPECT_EQ(to_string(CycNum::zeta(ctx, 1) * CycNum(2) - CycNum::zeta(ctx, 3)), "2*z - z^3");
}

TEST(FormalScalar, EvaluationIsAHomomorphism) {
  auto ctx = make_cyc_ctx(20);
  std::mt19937 rng(99);
  auto random_formal = [&] {
    FormalScalar r;
    for (int t = 0; t < 4; ++t) {
      FormalScalar term = FormalScalar::v_pow(static_cast<int>(rng() % 7) - 3, random_cyc(ctx, rng, 3));
      for (int i = 1; i <= 2; ++i)
        for (unsigned e = rng() % 3; e > 0; --e) term *= FormalScalar::G(i);
      r += term;
    }
    return r;
  };
  for (int it = 0; it < 200; ++it) {
    const FormalScalar a = random_formal(), b = random_formal();
    CycNum v = random_cyc(ctx, rng);
    if (v.is_zero()) v = CycNum(2).promoted(ctx);
    const std::vector<CycNum> g{random_cyc(ctx, rng), random_cyc(ctx, rng)};
    EXPECT_EQ((a * b).eval(v, g), a.eval(v, g) * b.eval(v, g));
    EXPECT_EQ((a + b).eval(v, g), a.eval(v, g) + b.eval(v, g));
    EXPECT_EQ((a - a), FormalScalar());
  }
}

TEST(FormalScalar, UnitsAreMonomialsWithoutG) {
  const FormalScalar u = FormalScalar::v_pow(3, CycNum(5));
  ASSERT_TRUE(try_inverse(u).has_value());
  EXPECT_EQ(u * *try_inverse(u), FormalScalar(1));
  EXPECT_FALSE(try_inverse(FormalScalar::G(1)).has_value());
  EXPECT_FALSE(try_inverse(FormalScalar(1) + FormalScalar::v_pow(1)).has_value());
}
