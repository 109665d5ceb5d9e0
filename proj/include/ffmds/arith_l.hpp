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
 * @file arith_l.hpp
 * @brief Weights a(d, m) and b(d, m), L-functions of power residue characters,
 * the correction products P(s; m) and Q(s; m), and functional equation checks.
 *
 * Everything is a function of x = q^{-s}. A half-integral power of q is
 * carried as a QWeight (coef * q^{half/2}) until it has to become a CycNum.
 */

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chars.hpp"
#include "cyclo.hpp"
#include "ffpoly.hpp"
#include "table.hpp"

namespace ffmds {

/// coef * q^{half / 2}.
struct QWeight {
  long long coef = 1;
  long long half = 0;

  bool is_zero() const { return coef == 0; }
  QWeight operator*(const QWeight& o) const {
    if (coef == 0 || o.coef == 0) return {0, 0};
    return {coef * o.coef, half + o.half};
  }
  bool operator==(const QWeight&) const = default;
};

inline CycNum to_cyc(const CharCtx& ctx, const QWeight& w) {
  if (w.coef == 0) return CycNum(0).promoted(ctx.cyc());
  return q_half_power(ctx.cyc(), ctx.q(), w.half) * CycNum(w.coef);
}

/// a(p^j, p^k) for a prime of degree deg_p.
inline QWeight a_local(int j, int k, int n, int deg_p) {
  const int d = std::min(j, k);
  if (d % n != 0) return {0, 0};
  return {1, 2LL * deg_p * (n - 1) * (d / n)};
}

/// b(p^j, p^k) for a prime of degree deg_p.
inline QWeight b_local(int j, int k, int n, int deg_p, std::uint32_t q) {
  if (k == 0) return {1, 0};
  const long long norm = static_cast<long long>(ipow(q, static_cast<unsigned>(deg_p)));
  if (k % n == 0) {
    if (j >= k) return {norm - 1, static_cast<long long>(deg_p) * (k - 2)};
    if (j == k - 1) return {-1, static_cast<long long>(deg_p) * (k - 2)};
    return {0, 0};
  }
  if (j == k - 1) return {1, static_cast<long long>(deg_p) * (k - 1)};
  return {0, 0};
}

/// Product over primes of m of the local weight; primes of d alone contribute 1 in both tables.
template <class Local>
QWeight multiplicative_weight(const Factorization& d, const Factorization& m, Local local) {
  QWeight w{1, 0};
  for (const auto& [p, k] : m.factors) {
    w = w * local(d.exponent_of(p), k, p.degree());
    if (w.is_zero()) break;
  }
  return w;
}

inline QWeight weight_a(const FieldCtx& f, const Factorization& d, const Factorization& m) {
  const int n = static_cast<int>(f.n());
  return multiplicative_weight(d, m, [n](int j, int k, int dp) { return a_local(j, k, n, dp); });
}

inline QWeight weight_b(const FieldCtx& f, const Factorization& d, const Factorization& m) {
  const int n = static_cast<int>(f.n());
  const auto q = f.q();
  return multiplicative_weight(d, m, [n, q](int j, int k, int dp) { return b_local(j, k, n, dp, q); });
}

inline CycNum weight_a(const CharCtx& ctx, const Poly& d, const Poly& m) {
  const auto& f = ctx.field();
  return to_cyc(ctx, weight_a(f, factorize(f, d), factorize(f, m)));
}

inline CycNum weight_b(const CharCtx& ctx, const Poly& d, const Poly& m) {
  const auto& f = ctx.field();
  return to_cyc(ctx, weight_b(f, factorize(f, d), factorize(f, m)));
}

/// Finite Laurent polynomial in x with Q(zeta_N) coefficients.
class UniPoly {
 public:
  UniPoly() = default;
  UniPoly(const CycNum& c) { add(0, c); }  // NOLINT(google-explicit-constructor)
  UniPoly(long long c) : UniPoly(CycNum(c)) {}  // NOLINT(google-explicit-constructor)

  static UniPoly monomial(const CycNum& c, int e) {
    UniPoly r;
    r.add(e, c);
    return r;
  }
  static UniPoly from_coeffs(const std::vector<CycNum>& c) {
    UniPoly r;
    for (std::size_t k = 0; k < c.size(); ++k) r.add(static_cast<int>(k), c[k]);
    return r;
  }

  const std::map<int, CycNum>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  CycNum coeff(int e) const {
    auto it = t_.find(e);
    return it == t_.end() ? CycNum(0) : it->second;
  }
  /// Highest exponent; -1 for zero (polynomial convention).
  int degree() const { return t_.empty() ? -1 : t_.rbegin()->first; }
  int low() const { return t_.empty() ? 0 : t_.begin()->first; }

  void add(int e, const CycNum& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  friend UniPoly operator+(UniPoly a, const UniPoly& b) {
    for (const auto& [e, c] : b.t_) a.add(e, c);
    return a;
  }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) {
    for (const auto& [e, c] : b.t_) a.add(e, -c);
    return a;
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) r.add(ea + eb, ca * cb);
    return r;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    auto ib = b.t_.begin();
    for (const auto& [e, c] : a.t_) {
      if (e != ib->first || !(c == ib->second)) return false;
      ++ib;
    }
    return true;
  }

  UniPoly conj() const {
    UniPoly r;
    for (const auto& [e, c] : t_) r.add(e, c.conj());
    return r;
  }
  /// f(c x^k).
  UniPoly substitute(const CycNum& c, int k) const {
    UniPoly r;
    for (const auto& [e, v] : t_) r.add(k * e, v * c.pow(e));
    return r;
  }

 private:
  std::map<int, CycNum> t_;
};

inline std::string to_string(const UniPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : p.terms()) {
    std::string cs = to_string(c);
    const bool simple = c.is_rational();
    const bool neg = simple && c.rational() < 0;
    if (!s.empty()) s += neg ? " - " : " + ";
    else if (neg) s += "-";
    if (neg) cs = to_string(-c);
    if (!simple) cs = "(" + cs + ")";
    if (e == 0) {
      s += cs;
      continue;
    }
    if (cs != "1") s += cs + "*";
    s += "x";
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

/// num / den with den(0) invertible.
struct UniRat {
  UniPoly num;
  UniPoly den = UniPoly(1);

  /// Power series coefficients of x^0 .. x^K.
  std::vector<CycNum> series(int K) const {
    if (den.low() < 0 || num.low() < 0) throw std::domain_error("UniRat::series needs nonnegative exponents");
    const CycNum d0 = den.coeff(0);
    if (d0.is_zero()) throw std::domain_error("UniRat::series: denominator vanishes at 0");
    const CycNum inv = d0.inverse();
    std::vector<CycNum> out(static_cast<std::size_t>(K) + 1, CycNum(0));
    for (int k = 0; k <= K; ++k) {
      CycNum acc = num.coeff(k);
      for (const auto& [e, c] : den.terms()) {
        if (e == 0 || e > k) continue;
        acc -= c * out[static_cast<std::size_t>(k - e)];
      }
      out[static_cast<std::size_t>(k)] = acc * inv;
    }
    return out;
  }

  friend bool operator==(const UniRat& a, const UniRat& b) { return a.num * b.den == b.num * a.den; }
};

/// 1 / (1 - q x).
inline UniRat zeta_O(const CharCtx& ctx) {
  return {UniPoly(1), UniPoly(1) - UniPoly::monomial(CycNum(static_cast<long long>(ctx.q())), 1)};
}

/// sum_{deg d = k} chi_m(d) for k = 0..max_deg, by enumeration with the reference symbol.
inline std::vector<CycNum> lfun_coefficients(const CharCtx& ctx, const Poly& m, int max_deg,
                                             ResidueTables* tables = nullptr) {
  PowerResidueCharacter chi(ctx, m, tables);
  std::vector<CycNum> out;
  for (int k = 0; k <= max_deg; ++k) {
    std::vector<long long> w(static_cast<std::size_t>(ctx.N()), 0);
    for (const Poly& d : enumerate_monic(ctx.field(), k)) {
      const CharValue v = chi(d);
      if (!v.is_zero()) w[static_cast<std::size_t>(ctx.eps_slot(v.e) % ctx.N())] += 1;
    }
    out.push_back(CycNum::from_power_weights<long long>(ctx.cyc(), w));
  }
  return out;
}

/// L(s, chi_m): zeta_O when m0 = 1, otherwise the polynomial of degree < deg m~.
inline UniRat lfun(const CharCtx& ctx, const Poly& m, ResidueTables* tables = nullptr) {
  const Parts pr = parts(ctx.field(), m);
  if (pr.m0.is_one()) return zeta_O(ctx);
  const auto c = lfun_coefficients(ctx, m, pr.m_tilde.degree() - 1, tables);
  return {UniPoly::from_coeffs(c), UniPoly(1)};
}

/// Outcome of an exact identity check: both sides in a common form.
template <class T>
struct Identity {
  bool pass = false;
  T lhs;
  T rhs;
};

/**
 * Functional equation relating L(s, chi_m) and L(1-s, conj chi_m) with the
 * Gauss sum normalization, cleared of denominators:
 *   deg m = 0 (n):  L(x) (1 - q^{-1} x^{-1}) = q^{-1} x^{D-2} g (1 - x) Lbar(q^{-1} x^{-1})
 *   deg m = i:      L(x) = q^{-1} x^{D-1} conj(tau(eps^i)) g Lbar(q^{-1} x^{-1})
 * with D = deg m~ and g = g(1, eps, chi_m). The pass flag also requires
 * deg L = D - 1.
 */
inline Identity<UniPoly> lfun_check_fe(const CharCtx& ctx, const Poly& m, ResidueTables* tables = nullptr) {
  const auto& f = ctx.field();
  const auto fac = factorize(f, m);
  if (!is_nth_power_free(f, fac)) throw std::invalid_argument("lfun_check_fe needs an n-th power free modulus");
  if (m.is_one()) throw std::invalid_argument("lfun_check_fe needs m != 1");
  const Parts pr = parts(f, fac);
  const int D = pr.m_tilde.degree();
  const UniPoly L = lfun(ctx, m, tables).num;
  const CycNum q_inv = CycNum(mpq_class(1, ctx.q())).promoted(ctx.cyc());
  const UniPoly L_bar_dual = L.conj().substitute(q_inv, -1);
  const CycNum g = gauss_g(ctx, Poly::one(), 1, m, tables);
  const int i = m.degree() % static_cast<int>(ctx.n());
  Identity<UniPoly> out;
  if (i == 0) {
    out.lhs = L * (UniPoly(1) - UniPoly::monomial(q_inv, -1));
    out.rhs = UniPoly::monomial(q_inv * g, D - 2) * (UniPoly(1) - UniPoly::monomial(CycNum(1), 1)) * L_bar_dual;
  } else {
    out.lhs = L;
    out.rhs = UniPoly::monomial(q_inv * tau(ctx, i).conj() * g, D - 1) * L_bar_dual;
  }
  out.pass = out.lhs == out.rhs && L.degree() == D - 1;
  return out;
}

/**
 * Completed functional equation with the conductor and g*:
 *   L*(x) = q^{-1} x^{c-2} g* L*bar(q^{-1} x^{-1}),  c = deg cond chi_m,
 * where L* = L / (1 - x) when deg m = 0 (n) and L* = L otherwise. Both sides
 * are compared as rational functions.
 */
inline Identity<UniRat> lfun_check_fe_complete(const CharCtx& ctx, const Poly& m, ResidueTables* tables = nullptr) {
  const auto& f = ctx.field();
  if (m.is_one()) throw std::invalid_argument("lfun_check_fe_complete needs m != 1");
  const Parts pr = parts(f, m);
  const int i = m.degree() % static_cast<int>(ctx.n());
  const int cond_deg = pr.m_tilde.degree() + (i == 0 ? 0 : 1);
  const UniPoly L = lfun(ctx, m, tables).num;
  const CycNum q_inv = CycNum(mpq_class(1, ctx.q())).promoted(ctx.cyc());
  const UniPoly one_minus_x = UniPoly(1) - UniPoly::monomial(CycNum(1), 1);
  UniRat lhs{L, i == 0 ? one_minus_x : UniPoly(1)};
  UniRat dual{L.conj().substitute(q_inv, -1), i == 0 ? one_minus_x.substitute(q_inv, -1) : UniPoly(1)};
  UniRat rhs{UniPoly::monomial(q_inv * gauss_star(ctx, m, tables), cond_deg - 2) * dual.num, dual.den};
  Identity<UniRat> out{lhs == rhs, lhs, rhs};
  return out;
}

/**
 * P(s; m) as a polynomial in x: the product over p^{n alpha + i} || m of
 *   i = 0:  sum_{k < n alpha} chi_{m0}(p)^k a(p^{n alpha}, p^k) x_p^k (1 - chi_{m0}(p) x_p)
 *           + x_p^{n alpha} |p|^{(n-1) alpha}
 *   i != 0: sum_{k <= n alpha} a(p^{n alpha + i}, p^k) x_p^k
 * with x_p = x^{deg p}.
 */
inline UniPoly euler_P(const CharCtx& ctx, const Poly& m) {
  const auto& f = ctx.field();
  const int n = static_cast<int>(ctx.n());
  const auto fac = factorize(f, m);
  const Parts pr = parts(f, fac);
  UniPoly P(1);
  for (const auto& [p, e] : fac.factors) {
    const int alpha = e / n;
    const int i = e % n;
    const int dp = p.degree();
    UniPoly local;
    if (i == 0) {
      const CycNum c = residue_symbol(ctx, p, pr.m0);
      const UniPoly factor = UniPoly(1) - UniPoly::monomial(c, dp);
      UniPoly sum;
      for (int k = 0; k < n * alpha; ++k)
        sum.add(k * dp, c.pow(k) * to_cyc(ctx, a_local(n * alpha, k, n, dp)));
      local = sum * factor;
      local.add(n * alpha * dp, to_cyc(ctx, {1, 2LL * dp * (n - 1) * alpha}));
    } else {
      for (int k = 0; k <= n * alpha; ++k) local.add(k * dp, to_cyc(ctx, a_local(n * alpha + i, k, n, dp)));
    }
    P = P * local;
  }
  return P;
}

/// Q(s; m) = P(1 - s; m) |m / m~|^{1/2 - s} = q^{D/2} x^D P(q^{-1} x^{-1}), D = deg(m / m~).
inline UniPoly euler_Q(const CharCtx& ctx, const Poly& m) {
  const Parts pr = parts(ctx.field(), m);
  const int D = m.degree() - pr.m_tilde.degree();
  const CycNum q_inv = CycNum(mpq_class(1, ctx.q())).promoted(ctx.cyc());
  return UniPoly::monomial(q_half_power(ctx.cyc(), ctx.q(), D), D) * euler_P(ctx, m).substitute(q_inv, -1);
}

/// Both computations of L(s, chi^_m) with their power series to a common depth.
struct LhatCheck {
  UniRat product;                 // L(s, chi_{m0}) P(s; m)
  std::vector<CycNum> brute;      // sum_{deg d = k} chi_{m0}(d^) a(d, m)
  std::vector<CycNum> expansion;  // series of product
  bool pass = false;
};

/**
 * Brute-force coefficients of L(s, chi^_m) up to degree depth using a monic
 * table that covers depth and the primes of m. Symbols come from `sym`.
 */
inline std::vector<CycNum> lfun_hat_brute(const CharCtx& ctx, PrimeSymbols& sym, const Poly& m, int depth) {
  const MonicTable& t = sym.table();
  const int n = static_cast<int>(ctx.n());
  const std::size_t mi = t.index(m);
  const auto m_fac = t.factors(mi);
  const auto m0 = powerfree_primes(t, mi, n);
  for (const auto& pp : m0) sym.prepare(pp.prime);
  std::vector<CycNum> out;
  for (int k = 0; k <= depth; ++k) {
    std::vector<long long> w(static_cast<std::size_t>(ctx.N()), 0);
    for (std::size_t di = t.begin(k); di < t.end(k); ++di) {
      const auto d_fac = t.factors(di);
      QWeight a{1, 0};
      for (const auto& mp : m_fac) {
        a = a * a_local(exponent_in(d_fac, mp.prime), mp.exp, n, t.primes()[mp.prime].degree());
        if (a.is_zero()) break;
      }
      if (a.is_zero()) continue;
      const int e = chi_hat_exponent(sym, d_fac, m0, n);
      // a is an integral power of q
      w[static_cast<std::size_t>(ctx.eps_slot(e) % ctx.N())] += static_cast<long long>(ipow(ctx.q(), static_cast<unsigned>(a.half / 2)));
    }
    out.push_back(CycNum::from_power_weights<long long>(ctx.cyc(), w));
  }
  return out;
}

/// L(s, chi^_m) = L(s, chi_{m0}) P(s; m), reconciled against brute force to the given depth.
inline LhatCheck lfun_hat_check(const CharCtx& ctx, PrimeSymbols& sym, const Poly& m, int depth) {
  const Parts pr = parts(ctx.field(), m);
  LhatCheck out;
  const UniRat L0 = lfun(ctx, pr.m0, &sym.residue_tables());
  out.product = {L0.num * euler_P(ctx, m), L0.den};
  out.brute = lfun_hat_brute(ctx, sym, m, depth);
  out.expansion = out.product.series(depth);
  out.pass = true;
  for (int k = 0; k <= depth; ++k)
    out.pass = out.pass && out.brute[static_cast<std::size_t>(k)] == out.expansion[static_cast<std::size_t>(k)];
  return out;
}

/// L(s, chi^_m) in product form; throws if brute force to degree deg m + n disagrees.
inline UniRat lfun_hat(const CharCtx& ctx, const Poly& m) {
  const int depth = m.degree() + static_cast<int>(ctx.n());
  MonicTable t(ctx.field(), depth);
  PrimeSymbols sym(ctx, t);
  auto chk = lfun_hat_check(ctx, sym, m, depth);
  if (!chk.pass) throw std::logic_error("L(s, chi^_m) brute force disagrees with L(s, chi_m0) P(s; m) for m = " + to_string(m));
  return chk.product;
}

}  // namespace ffmds
