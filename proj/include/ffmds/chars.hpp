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
 * @file chars.hpp
 * @brief Power residue symbols, additive characters and Gauss sums over F_q[t].
 *
 * Symbol values live in mu_n, the n-th roots of unity of F_q. They are handled
 * as exponents e with respect to omega = generator^{(q-1)/n} (CharValue), and
 * embedded into Q(zeta_N) by omega^e -> zeta_N^{(N/n) e}. The additive
 * character e_0(j) is zeta_N^{(N/q) j}.
 *
 * Symbol convention: (d/m) is 0 when d shares a prime with the squarefree
 * part of the n-th powerfree part of m. Otherwise it is the product over
 * p^e || m of sigma(d, p)^e, where a prime whose exponent is divisible by n
 * contributes 1. In particular (d/m) depends only on the n-th powerfree part
 * of m, and (0/p^n) = 1, which is what makes g(1, eps, chi_{p^n}) = 1.
 */

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cyclo.hpp"
#include "ffpoly.hpp"

namespace ffmds {

/// A symbol value: zeta^e for 0 <= e < n, or zero.
struct CharValue {
  int e = 0;

  static constexpr CharValue zero() { return {-1}; }
  constexpr bool is_zero() const { return e < 0; }
  auto operator<=>(const CharValue&) const = default;
};

/// Fields, embeddings and cached constants shared by every character computation.
class CharCtx {
 public:
  explicit CharCtx(FieldCtx field)
      : field_(std::move(field)),
        cyc_(make_cyc_ctx(static_cast<int>(std::lcm(4u, field_.n()) * field_.q()))),
        omega_(field_.pow(field_.generator(), (field_.q() - 1) / field_.n())) {
    log_.assign(field_.q(), -1);
    Fq w = 1;
    for (std::uint32_t e = 0; e < field_.n(); ++e) {
      log_[w] = static_cast<int>(e);
      w = field_.mul(w, omega_);
    }
    sqrt_q_ = ffmds::sqrt_q(cyc_, field_.q());
  }

  const FieldCtx& field() const { return field_; }
  const CycCtxPtr& cyc() const { return cyc_; }
  std::uint32_t q() const { return field_.q(); }
  std::uint32_t n() const { return field_.n(); }
  int N() const { return cyc_->N(); }
  Fq omega() const { return omega_; }

  /// Exponent of a in mu_n with respect to omega, or -1 if a is not in mu_n.
  int mu_log(Fq a) const { return log_[a]; }

  CharValue mul(CharValue a, CharValue b) const {
    if (a.is_zero() || b.is_zero()) return CharValue::zero();
    return {(a.e + b.e) % static_cast<int>(n())};
  }
  CharValue pow(CharValue a, long long k) const {
    if (k == 0) return {0};
    if (a.is_zero()) return CharValue::zero();
    const long long nn = n();
    return {static_cast<int>(((a.e * k) % nn + nn) % nn)};
  }
  CharValue conj(CharValue a) const { return a.is_zero() ? a : CharValue{(static_cast<int>(n()) - a.e) % static_cast<int>(n())}; }

  /// Power of zeta_N representing eps^i(omega^e).
  long long eps_slot(int e, int i = 1) const { return static_cast<long long>(N() / static_cast<int>(n())) * e * i; }
  /// Power of zeta_N representing e_0(j).
  long long e0_slot(Fq j) const { return static_cast<long long>(N() / static_cast<int>(q())) * j; }

  /// eps^i applied to a symbol value (eps(0) = 0).
  CycNum eps(CharValue v, int i = 1) const {
    if (v.is_zero()) return CycNum(0).promoted(cyc_);
    return CycNum::zeta(cyc_, eps_slot(v.e, i));
  }
  CycNum e0(Fq j) const { return CycNum::zeta(cyc_, e0_slot(j)); }
  const CycNum& sqrt_q() const { return sqrt_q_; }

 private:
  FieldCtx field_;
  CycCtxPtr cyc_;
  Fq omega_;
  std::vector<int> log_;
  CycNum sqrt_q_;
};

/// The character a -> a^{(q-1)/n} on F_q (0 for a = 0).
inline Fq chi_const(const FieldCtx& f, Fq a) { return a == 0 ? 0 : f.pow(a, (f.q() - 1) / f.n()); }

/// sigma(d, p) = d^{(|p|-1)/n} mod p for a monic irreducible p; a constant in mu_n or zero.
inline CharValue prime_symbol(const CharCtx& ctx, const Poly& d, const Poly& p) {
  const auto& f = ctx.field();
  Poly r = mod(f, d, p);
  if (r.is_zero()) return CharValue::zero();
  const std::uint64_t e = (f.norm(p.degree()) - 1) / f.n();
  Poly s = powmod(f, r, e, p);
  if (s.degree() != 0 || ctx.mu_log(s[0]) < 0) throw std::logic_error("power residue is not an n-th root of unity");
  return {ctx.mu_log(s[0])};
}

/**
 * Lookup tables (r mod p) -> (r/p) for monic irreducible p, indexed by the
 * residue code of r. A table is filled by walking the powers of a generator of
 * (F_q[t]/p)^x, so one table costs |p| multiplications instead of |p|
 * exponentiations. Not thread-safe while tables are being added; call
 * prepare() before sharing.
 */
class ResidueTables {
 public:
  explicit ResidueTables(const CharCtx& ctx) : ctx_(&ctx) {}

  const std::vector<std::int8_t>& table(const Poly& p) {
    auto it = tables_.find(p);
    if (it != tables_.end()) return it->second;
    return tables_.emplace(p, build(p)).first->second;
  }
  const std::vector<std::int8_t>& table(const Poly& p) const {
    auto it = tables_.find(p);
    if (it == tables_.end()) throw std::logic_error("residue table not prepared for " + to_string(p));
    return it->second;
  }
  void prepare(const Poly& p) { (void)table(p); }

  /// (d/p) for a prepared prime p.
  CharValue symbol(const Poly& d, const Poly& p) const {
    const Poly r = mod(ctx_->field(), d, p);
    return {table(p)[residue_code(ctx_->field(), r)]};
  }

 private:
  std::vector<std::int8_t> build(const Poly& p) const {
    const auto& f = ctx_->field();
    const int k = p.degree();
    const std::uint64_t size = f.norm(k);
    const std::uint64_t order = size - 1;
    const auto ells = prime_divisors(order);
    std::optional<Poly> gen;
    for (std::uint64_t code = 1; code < size && !gen; ++code) {
      Poly g = residue_from_code(f, k, code);
      bool ok = true;
      for (auto ell : ells) {
        if (powmod(f, g, order / ell, p).is_one()) {
          ok = false;
          break;
        }
      }
      if (ok) gen = g;
    }
    if (!gen) throw std::logic_error("no generator found modulo " + to_string(p));
    const CharValue s = prime_symbol(*ctx_, *gen, p);
    std::vector<std::int8_t> tab(size, -1);
    Poly cur = Poly::one();
    const int n = static_cast<int>(f.n());
    for (std::uint64_t j = 0; j < order; ++j) {
      tab[residue_code(f, cur)] = static_cast<std::int8_t>((static_cast<long long>(s.e) * static_cast<long long>(j % n)) % n);
      cur = mod(f, mul(f, cur, *gen), p);
    }
    return tab;
  }

  const CharCtx* ctx_;
  std::map<Poly, std::vector<std::int8_t>> tables_;
};

/**
 * chi_m as a function of d: factors m once and evaluates per prime of the
 * squarefree part of m0, by modular exponentiation or, when residue tables
 * are supplied, by table lookup.
 */
class PowerResidueCharacter {
 public:
  PowerResidueCharacter(const CharCtx& ctx, const Poly& m, ResidueTables* tables = nullptr) : ctx_(&ctx), tables_(tables) {
    if (!m.is_monic()) throw std::invalid_argument("residue symbol modulus must be monic");
    fac_ = factorize(ctx.field(), m);
    parts_ = ffmds::parts(ctx.field(), fac_);
    for (const auto& [p, e] : fac_.factors) {
      if (e % static_cast<int>(ctx.n()) == 0) continue;
      active_.emplace_back(p, e);
      if (tables_) tables_->prepare(p);
    }
  }

  CharValue operator()(const Poly& d) const {
    CharValue v{0};
    for (const auto& [p, e] : active_) {
      const CharValue s = tables_ ? tables_->symbol(d, p) : prime_symbol(*ctx_, d, p);
      if (s.is_zero()) return CharValue::zero();
      v = ctx_->mul(v, ctx_->pow(s, e));
    }
    return v;
  }

  const Factorization& factorization() const { return fac_; }
  const Parts& parts() const { return parts_; }
  /// Primes of the squarefree part with their exponents in m.
  const std::vector<std::pair<Poly, int>>& active_primes() const { return active_; }

 private:
  const CharCtx* ctx_;
  ResidueTables* tables_;
  Factorization fac_;
  Parts parts_;
  std::vector<std::pair<Poly, int>> active_;
};

inline CharValue residue_symbol_value(const CharCtx& ctx, const Poly& d, const Poly& m) {
  return PowerResidueCharacter(ctx, m)(d);
}

/// The n-th power residue symbol (d/m) embedded in Q(zeta_N).
inline CycNum residue_symbol(const CharCtx& ctx, const Poly& d, const Poly& m) {
  return ctx.eps(residue_symbol_value(ctx, d, m));
}

/**
 * Laurent expansion of num/den at infinity: coefficients of t^k for
 * k = deg num - deg den down to `lowest`, highest first.
 */
inline std::vector<Fq> laurent_at_infinity(const FieldCtx& f, const Poly& num, const Poly& den, int lowest) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  const int top = num.is_zero() ? lowest - 1 : num.degree() - den.degree();
  std::vector<Fq> out;
  if (top < lowest) return out;
  // rem[i] is the coefficient of t^{i + base}
  const int base = lowest + den.degree();
  std::vector<Fq> rem(static_cast<std::size_t>(num.degree() - base + 1), 0);
  for (int i = std::max(0, base); i <= num.degree(); ++i) rem[static_cast<std::size_t>(i - base)] = num[i];
  const Fq lead_inv = f.inv(den.lead());
  for (int k = top; k >= lowest; --k) {
    const Fq c = f.mul(rem[static_cast<std::size_t>(k + den.degree() - base)], lead_inv);
    out.push_back(c);
    if (c == 0) continue;
    for (int j = 0; j <= den.degree(); ++j) {
      const int idx = k + j - base;
      if (idx < 0) continue;
      auto& slot = rem[static_cast<std::size_t>(idx)];
      slot = f.sub(slot, f.mul(c, den[j]));
    }
  }
  return out;
}

/// Coefficient of t^{-1} of num/den at infinity.
inline Fq residue_at_infinity(const FieldCtx& f, const Poly& num, const Poly& den) {
  auto c = laurent_at_infinity(f, num, den, -1);
  return c.empty() ? 0 : c.back();
}

/// e(num/den) = e_0(coefficient of t^{-1} in the expansion at infinity).
inline CycNum additive_e(const CharCtx& ctx, const Poly& num, const Poly& den) {
  return ctx.e0(residue_at_infinity(ctx.field(), num, den));
}

/**
 * g(r, eps^i, chi_c) = sum over y mod c~ of eps^i((y/c)) e(r y / c~), by direct
 * summation with the reference symbol and additive character.
 */
inline CycNum gauss_g(const CharCtx& ctx, const Poly& r, int i, const Poly& c, ResidueTables* tables = nullptr) {
  const auto& f = ctx.field();
  PowerResidueCharacter chi(ctx, c, tables);
  const Poly& ct = chi.parts().m_tilde;
  std::vector<long long> w(static_cast<std::size_t>(ctx.N()), 0);
  for (const Poly& y : enumerate_residues(f, ct.degree())) {
    const CharValue s = chi(y);
    if (s.is_zero()) continue;
    const Fq res = residue_at_infinity(f, mul(f, r, y), ct);
    const long long slot = (ctx.eps_slot(s.e, i) + ctx.e0_slot(res)) % ctx.N();
    w[static_cast<std::size_t>(slot)] += 1;
  }
  return CycNum::from_power_weights<long long>(ctx.cyc(), w);
}

/// Finite field Gauss sum tau(eps^i) = sum_{j != 0} eps^i(chi(j)) e_0(j).
inline CycNum tau(const CharCtx& ctx, int i) {
  const auto& f = ctx.field();
  std::vector<long long> w(static_cast<std::size_t>(ctx.N()), 0);
  for (Fq j = 1; j < f.q(); ++j) {
    const int e = ctx.mu_log(chi_const(f, j));
    w[static_cast<std::size_t>((ctx.eps_slot(e, i) + ctx.e0_slot(j)) % ctx.N())] += 1;
  }
  return CycNum::from_power_weights<long long>(ctx.cyc(), w);
}

/// g*(1, eps, chi_m): g when deg m = 0 mod n, conj(tau(eps^i)) g when deg m = i != 0.
inline CycNum gauss_star(const CharCtx& ctx, const Poly& m, ResidueTables* tables = nullptr) {
  if (!m.is_monic()) throw std::invalid_argument("gauss_star needs a monic modulus");
  if (!is_nth_power_free(ctx.field(), factorize(ctx.field(), m)))
    throw std::invalid_argument("gauss_star needs an n-th power free modulus");
  const int i = m.degree() % static_cast<int>(ctx.n());
  CycNum g = gauss_g(ctx, Poly::one(), 1, m, tables);
  return i == 0 ? g : tau(ctx, i).conj() * g;
}

}  // namespace ffmds
