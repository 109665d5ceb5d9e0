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

#pragma once

/**
 * @file cyclo.hpp
 * @brief Exact arithmetic in the cyclotomic field Q(zeta_N).
 *
 * An element is a vector of phi(N) rationals, the coefficients of
 * 1, z, ..., z^{phi(N)-1} where z = zeta_N, reduced modulo the N-th cyclotomic
 * polynomial. That basis makes the representation canonical, so equality is
 * coefficientwise.
 *
 * A CycNum with no context is a plain rational number. It is promoted to the
 * field of whatever it is combined with, which lets generic code write S(0),
 * S(1) and S(k) without knowing N.
 */

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace ffmds {

/// The N-th cyclotomic polynomial and reduction tables for powers of zeta_N.
class CycCtx {
 public:
  explicit CycCtx(int N) : N_(N) {
    if (N < 1) throw std::invalid_argument("cyclotomic conductor must be positive");
    modulus_ = cyclotomic_polynomial(N);
    phi_ = static_cast<int>(modulus_.size()) - 1;
    // power_[k] = z^k reduced, for 0 <= k < max(N, 2 phi - 1)
    const int rows = std::max(N_, 2 * phi_ - 1);
    power_.assign(static_cast<std::size_t>(rows), std::vector<long long>(static_cast<std::size_t>(phi_), 0));
    for (int k = 0; k < rows; ++k) {
      auto& row = power_[static_cast<std::size_t>(k)];
      if (k < phi_) {
        row[static_cast<std::size_t>(k)] = 1;
        continue;
      }
      const auto& prev = power_[static_cast<std::size_t>(k - 1)];
      const long long top = prev[static_cast<std::size_t>(phi_ - 1)];
      for (int i = phi_ - 1; i >= 1; --i) row[static_cast<std::size_t>(i)] = prev[static_cast<std::size_t>(i - 1)];
      row[0] = 0;
      for (int i = 0; i < phi_; ++i) row[static_cast<std::size_t>(i)] -= top * modulus_[static_cast<std::size_t>(i)];
    }
  }

  int N() const { return N_; }
  int phi() const { return phi_; }
  /// Integer coefficients of Phi_N, low degree first.
  const std::vector<long long>& modulus() const { return modulus_; }
  /// z^k reduced modulo Phi_N, for any integer k.
  const std::vector<long long>& power(long long k) const {
    long long r = k % N_;
    if (r < 0) r += N_;
    return power_[static_cast<std::size_t>(r)];
  }
  /// Reduction of x^k for 0 <= k <= 2 phi - 2 (used by multiplication).
  const std::vector<long long>& raw_power(int k) const { return power_[static_cast<std::size_t>(k)]; }

  /// Phi_N as prod_{d | N} (x^{N/d} - 1)^{mu(d)}, by exact integer division.
  static std::vector<long long> cyclotomic_polynomial(int N) {
    std::vector<long long> num{1};
    std::vector<long long> den{1};
    auto times_binomial = [](std::vector<long long>& p, int e) {  // p *= (x^e - 1)
      std::vector<long long> r(p.size() + static_cast<std::size_t>(e), 0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        r[i + static_cast<std::size_t>(e)] += p[i];
        r[i] -= p[i];
      }
      p = std::move(r);
    };
    for (int d = 1; d <= N; ++d) {
      if (N % d != 0) continue;
      const int mu = moebius(d);
      if (mu == 1) times_binomial(num, N / d);
      if (mu == -1) times_binomial(den, N / d);
    }
    // num / den, den monic
    std::vector<long long> quo(num.size() - den.size() + 1, 0);
    for (int i = static_cast<int>(num.size()) - 1; i >= static_cast<int>(den.size()) - 1; --i) {
      const long long c = num[static_cast<std::size_t>(i)];
      const int shift = i - static_cast<int>(den.size()) + 1;
      quo[static_cast<std::size_t>(shift)] = c;
      for (std::size_t j = 0; j < den.size(); ++j) num[static_cast<std::size_t>(shift) + j] -= c * den[j];
    }
    for (long long v : num)
      if (v != 0) throw std::logic_error("cyclotomic division left a remainder");
    return quo;
  }

  static int moebius(int d) {
    int mu = 1;
    for (int p = 2; p * p <= d; ++p) {
      if (d % p) continue;
      d /= p;
      if (d % p == 0) return 0;
      mu = -mu;
    }
    return d > 1 ? -mu : mu;
  }

 private:
  int N_;
  int phi_ = 0;
  std::vector<long long> modulus_;
  std::vector<std::vector<long long>> power_;
};

using CycCtxPtr = std::shared_ptr<const CycCtx>;

inline CycCtxPtr make_cyc_ctx(int N) { return std::make_shared<const CycCtx>(N); }

/// Element of Q(zeta_N).
class CycNum {
 public:
  CycNum() : c_(1) {}
  CycNum(long long v) : c_{mpq_class(static_cast<long>(v))} {}  // NOLINT(google-explicit-constructor)
  CycNum(const mpq_class& v) : c_{v} {}      // NOLINT(google-explicit-constructor)
  CycNum(CycCtxPtr ctx, std::vector<mpq_class> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    if (!ctx_) throw std::invalid_argument("CycNum needs a context for a coefficient vector");
    if (static_cast<int>(c_.size()) != ctx_->phi()) throw std::invalid_argument("CycNum coefficient count != phi(N)");
  }

  /// zeta_N^k.
  static CycNum zeta(const CycCtxPtr& ctx, long long k) {
    const auto& row = ctx->power(k);
    std::vector<mpq_class> c(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) c[i] = static_cast<long>(row[i]);
    return CycNum(ctx, std::move(c));
  }

  /// Element from integer weights w[k] on zeta_N^k, 0 <= k < w.size().
  template <class Int>
  static CycNum from_power_weights(const CycCtxPtr& ctx, std::span<const Int> w) {
    std::vector<mpz_class> acc(static_cast<std::size_t>(ctx->phi()), 0);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] == 0) continue;
      const auto& row = ctx->power(static_cast<long long>(k));
      const mpz_class wk(static_cast<long>(w[k]));
      for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] != 0) acc[i] += wk * static_cast<long>(row[i]);
    }
    std::vector<mpq_class> c(acc.begin(), acc.end());
    return CycNum(ctx, std::move(c));
  }

  const CycCtxPtr& ctx() const { return ctx_; }
  /// Coefficients; size phi(N), or size 1 for a context-free rational.
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  /// Rational value; throws unless is_rational().
  mpq_class rational() const {
    if (!is_rational()) throw std::domain_error("CycNum is not rational");
    return c_[0];
  }

  CycNum promoted(const CycCtxPtr& ctx) const {
    if (ctx_ || !ctx) return *this;
    std::vector<mpq_class> c(static_cast<std::size_t>(ctx->phi()), 0);
    c[0] = c_[0];
    return CycNum(ctx, std::move(c));
  }

  CycNum operator-() const {
    CycNum r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  CycNum& operator+=(const CycNum& o) { return combine(o, +1); }
  CycNum& operator-=(const CycNum& o) { return combine(o, -1); }
  CycNum& operator*=(const CycNum& o) { return *this = *this * o; }

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }

  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    if (!a.ctx_ || !b.ctx_) {
      const CycNum& scalar = a.ctx_ ? b : a;
      CycNum r = a.ctx_ ? a : b;
      const mpq_class s = scalar.c_[0];
      if (s == 0) return CycNum(0).promoted(r.ctx_);
      for (auto& v : r.c_) v *= s;
      return r;
    }
    check_same(a, b);
    const auto& ctx = *a.ctx_;
    const int phi = ctx.phi();
    std::vector<mpq_class> prod(static_cast<std::size_t>(2 * phi - 1), 0);
    mpq_class t;
    for (int i = 0; i < phi; ++i) {
      const auto& ai = a.c_[static_cast<std::size_t>(i)];
      if (ai == 0) continue;
      for (int j = 0; j < phi; ++j) {
        const auto& bj = b.c_[static_cast<std::size_t>(j)];
        if (bj == 0) continue;
        mpq_mul(t.get_mpq_t(), ai.get_mpq_t(), bj.get_mpq_t());
        prod[static_cast<std::size_t>(i + j)] += t;
      }
    }
    std::vector<mpq_class> out(prod.begin(), prod.begin() + phi);
    for (int k = phi; k < 2 * phi - 1; ++k) {
      const auto& pk = prod[static_cast<std::size_t>(k)];
      if (pk == 0) continue;
      const auto& row = ctx.raw_power(k);
      for (int i = 0; i < phi; ++i)
        if (row[static_cast<std::size_t>(i)] != 0) out[static_cast<std::size_t>(i)] += pk * static_cast<long>(row[static_cast<std::size_t>(i)]);
    }
    return CycNum(a.ctx_, std::move(out));
  }

  friend bool operator==(const CycNum& a, const CycNum& b) {
    if (a.ctx_ && b.ctx_) check_same(a, b);
    const std::size_t len = std::max(a.c_.size(), b.c_.size());
    for (std::size_t i = 0; i < len; ++i) {
      const mpq_class av = i < a.c_.size() ? a.c_[i] : mpq_class(0);
      const mpq_class bv = i < b.c_.size() ? b.c_[i] : mpq_class(0);
      if (av != bv) return false;
    }
    return true;
  }

  /// Complex conjugation, the automorphism zeta_N -> zeta_N^{-1}.
  CycNum conj() const {
    if (!ctx_) return *this;
    std::vector<mpq_class> out(c_.size(), 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      const auto& row = ctx_->power(-static_cast<long long>(i));
      for (std::size_t j = 0; j < row.size(); ++j)
        if (row[j] != 0) out[j] += c_[i] * static_cast<long>(row[j]);
    }
    return CycNum(ctx_, std::move(out));
  }

  /// Multiplicative inverse by solving the linear system of multiplication by *this.
  CycNum inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero in Q(zeta_N)");
    if (!ctx_) return CycNum(mpq_class(1) / c_[0]);
    const int phi = ctx_->phi();
    // column j of the matrix is (*this) * z^j
    std::vector<std::vector<mpq_class>> m(static_cast<std::size_t>(phi), std::vector<mpq_class>(static_cast<std::size_t>(phi) + 1));
    for (int j = 0; j < phi; ++j) {
      CycNum col = *this * zeta(ctx_, j);
      for (int i = 0; i < phi; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col.c_[static_cast<std::size_t>(i)];
    }
    m[0][static_cast<std::size_t>(phi)] = 1;
    for (int col = 0; col < phi; ++col) {
      int piv = col;
      while (piv < phi && m[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)] == 0) ++piv;
      if (piv == phi) throw std::logic_error("singular multiplication matrix in Q(zeta_N)");
      std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(col)]);
      auto& prow = m[static_cast<std::size_t>(col)];
      const mpq_class inv = mpq_class(1) / prow[static_cast<std::size_t>(col)];
      for (auto& v : prow) v *= inv;
      for (int r = 0; r < phi; ++r) {
        if (r == col) continue;
        auto& row = m[static_cast<std::size_t>(r)];
        const mpq_class f = row[static_cast<std::size_t>(col)];
        if (f == 0) continue;
        for (int k = col; k <= phi; ++k) row[static_cast<std::size_t>(k)] -= f * prow[static_cast<std::size_t>(k)];
      }
    }
    std::vector<mpq_class> out(static_cast<std::size_t>(phi));
    for (int i = 0; i < phi; ++i) out[static_cast<std::size_t>(i)] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(phi)];
    return CycNum(ctx_, std::move(out));
  }

  CycNum pow(long long e) const {
    CycNum base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    CycNum r = CycNum(1).promoted(ctx_);
    while (k) {
      if (k & 1) r *= base;
      k >>= 1;
      if (k) base *= base;
    }
    return r;
  }

  /// Value under zeta_N -> exp(2 pi i / N); for display only.
  std::complex<double> to_complex() const {
    if (!ctx_) return {c_[0].get_d(), 0.0};
    std::complex<double> r = 0;
    const double two_pi = 2.0 * std::acos(-1.0);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      const double ang = two_pi * static_cast<double>(k) / ctx_->N();
      r += c_[k].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return r;
  }

 private:
  static void check_same(const CycNum& a, const CycNum& b) {
    if (a.ctx_ != b.ctx_ && a.ctx_->N() != b.ctx_->N()) throw std::invalid_argument("CycNum values from different fields");
  }

  CycNum& combine(const CycNum& o, int sign) {
    if (ctx_ && o.ctx_) check_same(*this, o);
    if (!ctx_ && o.ctx_) *this = promoted(o.ctx_);
    const CycNum rhs = o.ctx_ || !ctx_ ? o : o.promoted(ctx_);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sign > 0)
        c_[i] += rhs.c_[i];
      else
        c_[i] -= rhs.c_[i];
    }
    return *this;
  }

  CycCtxPtr ctx_;
  std::vector<mpq_class> c_;
};

inline bool is_zero(const CycNum& a) { return a.is_zero(); }

inline std::optional<CycNum> try_inverse(const CycNum& a) {
  if (a.is_zero()) return std::nullopt;
  return a.inverse();
}

inline CycNum conj(const CycNum& a) { return a.conj(); }

/// a * conj(a).
inline CycNum abs_square(const CycNum& a) { return a * a.conj(); }

/**
 * The positive square root of q in Q(zeta_N), for an odd prime q dividing N
 * (and 4 | N when q = 3 mod 4).
 *
 * Built from the quadratic Gauss sum sum_j (j|q) zeta_q^j, which is sqrt(q)
 * for q = 1 mod 4 and i sqrt(q) for q = 3 mod 4; in the latter case it is
 * multiplied by -zeta_4.
 */
inline CycNum sqrt_q(const CycCtxPtr& ctx, std::uint32_t q) {
  const int N = ctx->N();
  if (q < 3 || N % static_cast<int>(q) != 0) throw std::invalid_argument("sqrt_q needs an odd prime q dividing N");
  const int step = N / static_cast<int>(q);
  std::vector<long long> w(static_cast<std::size_t>(N), 0);
  for (std::uint32_t j = 1; j < q; ++j) {
    std::uint64_t leg = 1, b = j, e = (q - 1) / 2;
    while (e) {
      if (e & 1) leg = leg * b % q;
      b = b * b % q;
      e >>= 1;
    }
    w[static_cast<std::size_t>(step) * j] += leg == 1 ? 1 : -1;
  }
  CycNum g = CycNum::from_power_weights<long long>(ctx, w);
  if (q % 4 == 3) {
    if (N % 4 != 0) throw std::invalid_argument("sqrt_q for q = 3 mod 4 needs 4 | N");
    g = -(g * CycNum::zeta(ctx, N / 4));
  }
  return g;
}

/// q^{h/2} for an integer h, realized with sqrt_q when h is odd.
inline CycNum q_half_power(const CycCtxPtr& ctx, std::uint32_t q, long long h) {
  const long long whole = h >= 0 ? h / 2 : -((-h + 1) / 2);  // floor(h / 2)
  mpz_class qp;
  mpz_ui_pow_ui(qp.get_mpz_t(), q, static_cast<unsigned long>(whole >= 0 ? whole : -whole));
  CycNum r = whole >= 0 ? CycNum(mpq_class(qp)) : CycNum(mpq_class(1) / mpq_class(qp));
  if (h - 2 * whole == 1) r = r * sqrt_q(ctx, q);
  return r.promoted(ctx);
}

inline std::string rational_string(const mpq_class& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

inline mpq_class parse_rational(const std::string& s) {
  mpq_class v;
  if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  v.canonicalize();
  return v;
}

/// {"N": N, "coeffs": ["a/b", ...]} with exactly phi(N) reduced fractions.
inline nlohmann::json to_json(const CycNum& a, const CycCtxPtr& ctx) {
  const CycNum v = a.promoted(ctx);
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : v.coeffs()) coeffs.push_back(rational_string(c));
  return {{"N", ctx->N()}, {"coeffs", coeffs}};
}

inline CycNum cyc_from_json(const nlohmann::json& j, const CycCtxPtr& ctx) {
  if (j.at("N").get<int>() != ctx->N()) throw std::invalid_argument("CycNum JSON has a different conductor");
  const auto& arr = j.at("coeffs");
  if (static_cast<int>(arr.size()) != ctx->phi()) throw std::invalid_argument("CycNum JSON needs phi(N) coefficients");
  std::vector<mpq_class> c;
  for (const auto& e : arr) c.push_back(parse_rational(e.get<std::string>()));
  return CycNum(ctx, std::move(c));
}

/// Human-readable form: a rational, or a polynomial in z = zeta_N.
inline std::string to_string(const CycNum& a) {
  if (a.is_rational()) {
    const mpq_class v = a.coeffs()[0];
    return v.get_str();
  }
  std::string s;
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
    const mpq_class& c = a.coeffs()[k];
    if (c == 0) continue;
    const bool neg = c < 0;
    const mpq_class mag = neg ? mpq_class(-c) : c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (k == 0 || mag != 1) s += mag.get_str();
    if (k >= 1) {
      if (mag != 1) s += "*";
      s += "z";
      if (k >= 2) s += "^" + std::to_string(k);
    }
  }
  return s;
}

}  // namespace ffmds
