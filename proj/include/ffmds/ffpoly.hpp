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
 * @file ffpoly.hpp
 * @brief The prime field F_q and the polynomial ring F_q[t].
 *
 * Polynomials are dense coefficient vectors, constant term first. All ring
 * operations take the FieldCtx explicitly; a Poly carries no context of its own.
 * Monic polynomials of a fixed degree are enumerated in lexicographic order of
 * their coefficient vectors with the constant term varying fastest, which is
 * also the order of their integer codes (see monic_code()).
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ffmds {

using Fq = std::uint32_t;

constexpr bool is_prime(std::uint64_t v) {
  if (v < 2) return false;
  for (std::uint64_t f = 2; f * f <= v; ++f)
    if (v % f == 0) return false;
  return true;
}

/// Distinct prime divisors of v, increasing.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= v; ++f) {
    if (v % f == 0) {
      out.push_back(f);
      while (v % f == 0) v /= f;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

/**
 * Prime field F_q together with the character order n.
 *
 * Requires q prime, n >= 2 and q = 1 (mod 2n). The generator is a primitive
 * root of F_q^x; by default the smallest one.
 */
class FieldCtx {
 public:
  FieldCtx(std::uint32_t q, std::uint32_t n, std::optional<Fq> generator = std::nullopt) : q_(q), n_(n) {
    if (!is_prime(q)) throw std::invalid_argument("q = " + std::to_string(q) + " is not prime");
    if (n < 2) throw std::invalid_argument("n must be at least 2");
    if (q % (2 * n) != 1)
      throw std::invalid_argument("q = " + std::to_string(q) + " is not 1 mod 2n = " + std::to_string(2 * n));
    if (generator) {
      if (*generator == 0 || *generator >= q || !is_primitive_root(*generator))
        throw std::invalid_argument("generator " + std::to_string(*generator) + " is not a primitive root mod " +
                                    std::to_string(q));
      gen_ = *generator;
    } else {
      gen_ = 1;
      while (!is_primitive_root(gen_)) ++gen_;
    }
  }

  std::uint32_t q() const { return q_; }
  std::uint32_t n() const { return n_; }
  Fq generator() const { return gen_; }

  Fq reduce(long long v) const {
    long long r = v % static_cast<long long>(q_);
    return static_cast<Fq>(r < 0 ? r + q_ : r);
  }
  Fq add(Fq a, Fq b) const {
    Fq s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Fq sub(Fq a, Fq b) const { return a >= b ? a - b : a + q_ - b; }
  Fq neg(Fq a) const { return a == 0 ? 0 : q_ - a; }
  Fq mul(Fq a, Fq b) const { return static_cast<Fq>(static_cast<std::uint64_t>(a) * b % q_); }
  Fq pow(Fq a, std::uint64_t e) const {
    Fq r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Fq inv(Fq a) const {
    if (a == 0) throw std::domain_error("inverse of zero in F_q");
    return pow(a, q_ - 2);
  }

  /// |d| = q^deg for a polynomial of the given degree.
  std::uint64_t norm(int deg) const { return ipow(q_, static_cast<unsigned>(deg)); }

  bool operator==(const FieldCtx& o) const { return q_ == o.q_ && n_ == o.n_ && gen_ == o.gen_; }

 private:
  bool is_primitive_root(Fq g) const {
    for (auto ell : prime_divisors(q_ - 1))
      if (pow(g, (q_ - 1) / ell) == 1) return false;
    return true;
  }

  std::uint32_t q_;
  std::uint32_t n_;
  Fq gen_ = 1;
};

/// Element of F_q[t]; the zero polynomial has degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Fq> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(Fq c) { return Poly(std::vector<Fq>{c}); }
  static Poly one() { return constant(1); }
  static Poly monomial(Fq c, int deg) {
    std::vector<Fq> v(static_cast<std::size_t>(deg) + 1, 0);
    v.back() = c;
    return Poly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Fq lead() const { return c_.empty() ? 0 : c_.back(); }
  Fq operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[static_cast<std::size_t>(i)] : 0; }
  std::span<const Fq> coeffs() const { return c_; }

  auto operator<=>(const Poly&) const = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Fq> c_;
};

inline Poly add(const FieldCtx& f, const Poly& a, const Poly& b) {
  std::vector<Fq> r(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1));
  for (int i = 0; i < static_cast<int>(r.size()); ++i) r[static_cast<std::size_t>(i)] = f.add(a[i], b[i]);
  return Poly(std::move(r));
}

inline Poly sub(const FieldCtx& f, const Poly& a, const Poly& b) {
  std::vector<Fq> r(static_cast<std::size_t>(std::max(a.degree(), b.degree()) + 1));
  for (int i = 0; i < static_cast<int>(r.size()); ++i) r[static_cast<std::size_t>(i)] = f.sub(a[i], b[i]);
  return Poly(std::move(r));
}

inline Poly scale(const FieldCtx& f, const Poly& a, Fq c) {
  std::vector<Fq> r(a.coeffs().begin(), a.coeffs().end());
  for (auto& v : r) v = f.mul(v, c);
  return Poly(std::move(r));
}

inline Poly mul(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::uint64_t> acc(static_cast<std::size_t>(a.degree() + b.degree() + 1), 0);
  auto ac = a.coeffs();
  auto bc = b.coeffs();
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i] == 0) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t{ac[i]} * bc[j]) % f.q();
  }
  std::vector<Fq> r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<Fq>(acc[i]);
  return Poly(std::move(r));
}

struct DivMod {
  Poly quotient;
  Poly remainder;
};

inline DivMod divmod(const FieldCtx& f, const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Fq> rem(a.coeffs().begin(), a.coeffs().end());
  std::vector<Fq> quo(static_cast<std::size_t>(a.degree() - b.degree() + 1), 0);
  const Fq lead_inv = f.inv(b.lead());
  const int db = b.degree();
  for (int i = a.degree(); i >= db; --i) {
    Fq c = rem[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    c = f.mul(c, lead_inv);
    quo[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& slot = rem[static_cast<std::size_t>(i - db + j)];
      slot = f.sub(slot, f.mul(c, b[j]));
    }
  }
  return {Poly(std::move(quo)), Poly(std::move(rem))};
}

inline Poly mod(const FieldCtx& f, const Poly& a, const Poly& b) { return divmod(f, a, b).remainder; }

inline Poly make_monic(const FieldCtx& f, const Poly& a) {
  if (a.is_zero()) return a;
  return scale(f, a, f.inv(a.lead()));
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(const FieldCtx& f, Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(f, a);
}

inline Poly powmod(const FieldCtx& f, Poly base, std::uint64_t e, const Poly& modulus) {
  Poly r = mod(f, Poly::one(), modulus);
  base = mod(f, base, modulus);
  while (e) {
    if (e & 1) r = mod(f, mul(f, r, base), modulus);
    e >>= 1;
    if (e) base = mod(f, mul(f, base, base), modulus);
  }
  return r;
}

inline Poly pow(const FieldCtx& f, const Poly& base, unsigned e) {
  Poly r = Poly::one();
  for (unsigned i = 0; i < e; ++i) r = mul(f, r, base);
  return r;
}

struct RingResults {
  Poly sum, product, quotient, remainder, gcd;
};

/// All of the basic ring operations on a pair at once.
inline RingResults poly_ring(const FieldCtx& f, const Poly& a, const Poly& b) {
  auto qr = divmod(f, a, b);
  return {add(f, a, b), mul(f, a, b), std::move(qr.quotient), std::move(qr.remainder), gcd(f, a, b)};
}

// Monic enumeration. A monic polynomial of degree k is coded as
// sum_{i<k} c_i q^i, so code order is lexicographic with c_0 fastest.

inline std::uint64_t monic_code(const FieldCtx& f, const Poly& p) {
  std::uint64_t code = 0;
  for (int i = p.degree() - 1; i >= 0; --i) code = code * f.q() + p[i];
  return code;
}

/// Code of an arbitrary polynomial of degree < k as a residue: sum_{i<k} c_i q^i.
inline std::uint64_t residue_code(const FieldCtx& f, const Poly& p) {
  std::uint64_t code = 0;
  for (int i = p.degree(); i >= 0; --i) code = code * f.q() + p[i];
  return code;
}

inline Poly monic_from_code(const FieldCtx& f, int deg, std::uint64_t code) {
  std::vector<Fq> c(static_cast<std::size_t>(deg) + 1, 0);
  for (int i = 0; i < deg; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<Fq>(code % f.q());
    code /= f.q();
  }
  c.back() = 1;
  return Poly(std::move(c));
}

inline Poly residue_from_code(const FieldCtx& f, int len, std::uint64_t code) {
  std::vector<Fq> c(static_cast<std::size_t>(len), 0);
  for (int i = 0; i < len; ++i) {
    c[static_cast<std::size_t>(i)] = static_cast<Fq>(code % f.q());
    code /= f.q();
  }
  return Poly(std::move(c));
}

/// All q^deg monic polynomials of the given degree, in code order.
inline std::vector<Poly> enumerate_monic(const FieldCtx& f, int deg) {
  if (deg < 0) throw std::invalid_argument("negative degree");
  const std::uint64_t count = f.norm(deg);
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) out.push_back(monic_from_code(f, deg, code));
  return out;
}

/// All polynomials of degree < len (residues modulo a degree-len modulus), in code order.
inline std::vector<Poly> enumerate_residues(const FieldCtx& f, int len) {
  const std::uint64_t count = f.norm(len);
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t code = 0; code < count; ++code) out.push_back(residue_from_code(f, len, code));
  return out;
}

struct Factorization {
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible, exponent >= 1
  Fq unit = 1;

  Poly expand(const FieldCtx& f) const {
    Poly r = Poly::constant(unit);
    for (const auto& [p, e] : factors) r = mul(f, r, pow(f, p, static_cast<unsigned>(e)));
    return r;
  }
  int exponent_of(const Poly& p) const {
    for (const auto& [fac, e] : factors)
      if (fac == p) return e;
    return 0;
  }
};

/**
 * Complete factorization by trial division with monic candidates of
 * increasing degree up to deg/2. Any candidate that divides the running
 * cofactor is irreducible because all smaller factors are already removed.
 */
inline Factorization factorize(const FieldCtx& f, const Poly& m) {
  if (m.is_zero()) throw std::domain_error("cannot factor the zero polynomial");
  Factorization out;
  out.unit = m.lead();
  Poly rest = make_monic(f, m);
  for (int k = 1; 2 * k <= rest.degree(); ++k) {
    const std::uint64_t count = f.norm(k);
    for (std::uint64_t code = 0; code < count && 2 * k <= rest.degree(); ++code) {
      Poly cand = monic_from_code(f, k, code);
      int e = 0;
      for (;;) {
        auto qr = divmod(f, rest, cand);
        if (!qr.remainder.is_zero()) break;
        rest = std::move(qr.quotient);
        ++e;
      }
      if (e > 0) out.factors.emplace_back(std::move(cand), e);
    }
  }
  if (rest.degree() > 0) out.factors.emplace_back(std::move(rest), 1);
  std::sort(out.factors.begin(), out.factors.end(), [&](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return monic_code(f, a.first) < monic_code(f, b.first);
  });
  return out;
}

inline bool is_irreducible(const FieldCtx& f, const Poly& p) {
  if (p.degree() < 1) return false;
  auto fac = factorize(f, p);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

struct Parts {
  Poly m0;       // n-th powerfree part
  Poly m_tilde;  // squarefree part of m0
};

inline Parts parts(const FieldCtx& f, const Factorization& fac) {
  Parts r{Poly::one(), Poly::one()};
  for (const auto& [p, e] : fac.factors) {
    const int r_e = e % static_cast<int>(f.n());
    if (r_e == 0) continue;
    r.m0 = mul(f, r.m0, pow(f, p, static_cast<unsigned>(r_e)));
    r.m_tilde = mul(f, r.m_tilde, p);
  }
  return r;
}

inline Parts parts(const FieldCtx& f, const Poly& m) {
  if (!m.is_monic()) throw std::invalid_argument("parts() needs a monic polynomial");
  return parts(f, factorize(f, m));
}

/// d with every prime factor of m0 removed.
inline Poly coprime_part(const FieldCtx& f, Poly d, const Poly& m0) {
  if (d.is_zero()) throw std::invalid_argument("coprime_part of zero");
  for (;;) {
    Poly g = gcd(f, d, m0);
    if (g.degree() <= 0) return make_monic(f, d);
    d = divmod(f, d, g).quotient;
  }
}

inline bool is_nth_power_free(const FieldCtx& f, const Factorization& fac) {
  return std::all_of(fac.factors.begin(), fac.factors.end(),
                     [&](const auto& pe) { return pe.second < static_cast<int>(f.n()); });
}

inline bool is_perfect_nth_power(const FieldCtx& f, const Factorization& fac) {
  return std::all_of(fac.factors.begin(), fac.factors.end(),
                     [&](const auto& pe) { return pe.second % static_cast<int>(f.n()) == 0; });
}

// Literal format: "t^3+2t+1" or a comma list of coefficients low to high "1,2,0,1".

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  for (int i = p.degree(); i >= 0; --i) {
    const Fq c = p[i];
    if (c == 0) continue;
    if (!s.empty()) s += '+';
    if (i == 0 || c != 1) s += std::to_string(c);
    if (i >= 1) s += 't';
    if (i >= 2) s += '^' + std::to_string(i);
  }
  return s;
}

inline Poly parse_poly(const FieldCtx& f, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ' && ch != '\t') s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial literal");

  auto parse_int = [](std::string_view v) -> long long {
    if (v.empty()) throw std::invalid_argument("missing integer in polynomial literal");
    long long r = 0;
    for (char ch : v) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("bad character in polynomial literal: " + std::string(v));
      r = r * 10 + (ch - '0');
      if (r > 1'000'000'000'000LL) throw std::invalid_argument("integer too large in polynomial literal");
    }
    return r;
  };

  if (s.find('t') == std::string::npos && s.find(',') != std::string::npos) {
    std::vector<Fq> c;
    std::size_t start = 0;
    while (start <= s.size()) {
      auto end = s.find(',', start);
      if (end == std::string::npos) end = s.size();
      std::string_view tok(s.data() + start, end - start);
      bool negative = !tok.empty() && tok[0] == '-';
      if (negative) tok.remove_prefix(1);
      long long v = parse_int(tok);
      c.push_back(f.reduce(negative ? -v : v));
      start = end + 1;
    }
    return Poly(std::move(c));
  }

  std::vector<Fq> c;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string_view term(s.data() + pos, end - pos);
    if (term.empty()) throw std::invalid_argument("empty term in polynomial literal");
    long long coeff = 1;
    int deg = 0;
    auto tpos = term.find('t');
    if (tpos == std::string_view::npos) {
      coeff = parse_int(term);
    } else {
      auto head = term.substr(0, tpos);
      if (!head.empty() && head.back() == '*') head.remove_suffix(1);
      if (!head.empty()) coeff = parse_int(head);
      auto tail = term.substr(tpos + 1);
      if (tail.empty()) {
        deg = 1;
      } else {
        if (tail[0] != '^') throw std::invalid_argument("expected '^' after t in polynomial literal");
        deg = static_cast<int>(parse_int(tail.substr(1)));
        if (deg > 64) throw std::invalid_argument("degree too large in polynomial literal");
      }
    }
    if (static_cast<int>(c.size()) <= deg) c.resize(static_cast<std::size_t>(deg) + 1, 0);
    c[static_cast<std::size_t>(deg)] = f.add(c[static_cast<std::size_t>(deg)], f.reduce(sign * coeff));
    pos = end;
  }
  return Poly(std::move(c));
}

}  // namespace ffmds
