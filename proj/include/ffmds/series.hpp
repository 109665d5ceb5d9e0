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
 * @file series.hpp
 * @brief Bivariate Laurent polynomials, rational functions and truncated
 * power series over an exact scalar ring.
 *
 * The scalar type S must be constructible from long long and provide
 * +, -, *, ==, is_zero(S), try_inverse(S) and to_string(S). CycNum and
 * FormalScalar both qualify.
 */

#include <algorithm>
#include <climits>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cyclo.hpp"

namespace ffmds {

/// Finitely supported sum of c x^i y^j; exponents may be negative.
template <class S>
class BiPoly {
 public:
  using Key = std::pair<int, int>;

  BiPoly() = default;
  BiPoly(const S& c) { add(0, 0, c); }                      // NOLINT(google-explicit-constructor)
  BiPoly(long long c) : BiPoly(S(c)) {}                     // NOLINT(google-explicit-constructor)

  static BiPoly monomial(const S& c, int i, int j) {
    BiPoly r;
    r.add(i, j, c);
    return r;
  }
  static BiPoly x(int i = 1) { return monomial(S(1), i, 0); }
  static BiPoly y(int j = 1) { return monomial(S(1), 0, j); }

  const std::map<Key, S>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  S coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? S(0) : it->second;
  }

  void add(int i, int j, const S& c) {
    using ffmds::is_zero;
    if (is_zero(c)) return;
    auto it = t_.find({i, j});
    if (it == t_.end()) {
      t_.emplace(Key{i, j}, c);
      return;
    }
    it->second = it->second + c;
    if (is_zero(it->second)) t_.erase(it);
  }

  int min_x() const { return reduce_exp(true, true); }
  int min_y() const { return reduce_exp(false, true); }
  int max_x() const { return reduce_exp(true, false); }
  int max_y() const { return reduce_exp(false, false); }

  /// x^di y^dj * this.
  BiPoly shifted(int di, int dj) const {
    BiPoly r;
    for (const auto& [k, c] : t_) r.t_.emplace(Key{k.first + di, k.second + dj}, c);
    return r;
  }
  /// Swap the roles of x and y.
  BiPoly swapped() const {
    BiPoly r;
    for (const auto& [k, c] : t_) r.t_.emplace(Key{k.second, k.first}, c);
    return r;
  }

  BiPoly operator-() const {
    BiPoly r;
    for (const auto& [k, c] : t_) r.t_.emplace(k, S(0) - c);
    return r;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) {
    for (const auto& [k, c] : b.t_) a.add(k.first, k.second, c);
    return a;
  }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) {
    for (const auto& [k, c] : b.t_) a.add(k.first, k.second, S(0) - c);
    return a;
  }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) r.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return r;
  }
  BiPoly pow(unsigned e) const {
    BiPoly r(1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    auto ib = b.t_.begin();
    for (const auto& [k, c] : a.t_) {
      if (k != ib->first || !(c == ib->second)) return false;
      ++ib;
    }
    return true;
  }

 private:
  int reduce_exp(bool xs, bool lowest) const {
    if (t_.empty()) return 0;
    int v = lowest ? INT_MAX : INT_MIN;
    for (const auto& [k, c] : t_) {
      const int e = xs ? k.first : k.second;
      v = lowest ? std::min(v, e) : std::max(v, e);
    }
    return v;
  }

  std::map<Key, S> t_;
};

/// num / den; equality is by cross-multiplication.
template <class S>
struct BiRat {
  BiPoly<S> num;
  BiPoly<S> den = BiPoly<S>(1);

  BiRat() = default;
  BiRat(BiPoly<S> nu, BiPoly<S> de = BiPoly<S>(1)) : num(std::move(nu)), den(std::move(de)) {  // NOLINT
    if (den.is_zero()) throw std::domain_error("BiRat with zero denominator");
  }

  /// Multiply numerator and denominator by the monomial that clears every negative exponent.
  BiRat normalized() const {
    const int sx = std::min(num.is_zero() ? 0 : num.min_x(), den.min_x());
    const int sy = std::min(num.is_zero() ? 0 : num.min_y(), den.min_y());
    return {num.shifted(-sx, -sy), den.shifted(-sx, -sy)};
  }
  BiRat swapped() const { return {num.swapped(), den.swapped()}; }

  friend BiRat operator+(const BiRat& a, const BiRat& b) {
    if (a.den == b.den) return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend BiRat operator-(const BiRat& a, const BiRat& b) {
    if (a.den == b.den) return {a.num - b.num, a.den};
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend BiRat operator*(const BiRat& a, const BiRat& b) { return {a.num * b.num, a.den * b.den}; }
  friend bool operator==(const BiRat& a, const BiRat& b) { return a.num * b.den == b.num * a.den; }
};

/// Coefficients of x^i y^j for 0 <= i <= J, 0 <= j <= K.
template <class S>
class SeriesGrid {
 public:
  SeriesGrid() = default;
  SeriesGrid(int J, int K) : J_(J), K_(K), g_(static_cast<std::size_t>((J + 1) * (K + 1)), S(0)) {
    if (J < 0 || K < 0) throw std::invalid_argument("negative truncation");
  }

  int J() const { return J_; }
  int K() const { return K_; }
  S& at(int i, int j) { return g_[index(i, j)]; }
  const S& at(int i, int j) const { return g_[index(i, j)]; }

  /// The sub-grid up to (J, K).
  SeriesGrid truncated(int J, int K) const {
    if (J > J_ || K > K_) throw std::out_of_range("truncation beyond grid");
    SeriesGrid r(J, K);
    for (int i = 0; i <= J; ++i)
      for (int j = 0; j <= K; ++j) r.at(i, j) = at(i, j);
    return r;
  }
  SeriesGrid transposed() const {
    SeriesGrid r(K_, J_);
    for (int i = 0; i <= J_; ++i)
      for (int j = 0; j <= K_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  friend SeriesGrid operator+(SeriesGrid a, const SeriesGrid& b) {
    check_shape(a, b);
    for (std::size_t k = 0; k < a.g_.size(); ++k) a.g_[k] = a.g_[k] + b.g_[k];
    return a;
  }
  friend SeriesGrid operator-(SeriesGrid a, const SeriesGrid& b) {
    check_shape(a, b);
    for (std::size_t k = 0; k < a.g_.size(); ++k) a.g_[k] = a.g_[k] - b.g_[k];
    return a;
  }
  friend bool operator==(const SeriesGrid& a, const SeriesGrid& b) {
    if (a.J_ != b.J_ || a.K_ != b.K_) return false;
    for (std::size_t k = 0; k < a.g_.size(); ++k)
      if (!(a.g_[k] == b.g_[k])) return false;
    return true;
  }

  /// Truncated Cauchy product.
  friend SeriesGrid operator*(const SeriesGrid& a, const SeriesGrid& b) {
    check_shape(a, b);
    SeriesGrid r(a.J_, a.K_);
    for (int i = 0; i <= a.J_; ++i)
      for (int j = 0; j <= a.K_; ++j) {
        S acc(0);
        for (int u = 0; u <= i; ++u)
          for (int v = 0; v <= j; ++v) acc = acc + a.at(u, v) * b.at(i - u, j - v);
        r.at(i, j) = acc;
      }
    return r;
  }

 private:
  std::size_t index(int i, int j) const {
    if (i < 0 || j < 0 || i > J_ || j > K_) throw std::out_of_range("grid index");
    return static_cast<std::size_t>(i * (K_ + 1) + j);
  }
  static void check_shape(const SeriesGrid& a, const SeriesGrid& b) {
    if (a.J_ != b.J_ || a.K_ != b.K_) throw std::invalid_argument("grid shapes differ");
  }

  int J_ = 0;
  int K_ = 0;
  std::vector<S> g_;
};

/// The polynomial padded (or cut) to a grid; negative exponents are rejected.
template <class S>
SeriesGrid<S> expand(const BiPoly<S>& p, int J, int K) {
  SeriesGrid<S> g(J, K);
  for (const auto& [k, c] : p.terms()) {
    if (k.first < 0 || k.second < 0) throw std::domain_error("expand: negative exponent");
    if (k.first <= J && k.second <= K) g.at(k.first, k.second) = c;
  }
  return g;
}

/**
 * Power series of r at the origin to (J, K). After normalization the
 * denominator must have an invertible constant term.
 */
template <class S>
SeriesGrid<S> expand(const BiRat<S>& r, int J, int K) {
  using ffmds::try_inverse;
  const BiRat<S> n = r.normalized();
  if (n.num.min_x() < 0 || n.num.min_y() < 0) throw std::domain_error("expand: not a power series");
  const auto inv = try_inverse(n.den.coeff(0, 0));
  if (!inv) throw std::domain_error("expand: denominator constant term is not invertible");
  SeriesGrid<S> g(J, K);
  for (int i = 0; i <= J; ++i)
    for (int j = 0; j <= K; ++j) {
      S acc = n.num.coeff(i, j);
      for (const auto& [k, c] : n.den.terms()) {
        if (k.first == 0 && k.second == 0) continue;
        if (k.first > i || k.second > j) continue;
        acc = acc - c * g.at(i - k.first, j - k.second);
      }
      g.at(i, j) = acc * *inv;
    }
  return g;
}

/// (A * B)(x, y) = sum a(j,k) b(j,k) x^j y^k.
template <class S>
SeriesGrid<S> hadamard_star(const SeriesGrid<S>& a, const SeriesGrid<S>& b) {
  if (a.J() != b.J() || a.K() != b.K()) throw std::invalid_argument("hadamard_star: grid shapes differ");
  SeriesGrid<S> r(a.J(), a.K());
  for (int i = 0; i <= a.J(); ++i)
    for (int j = 0; j <= a.K(); ++j) r.at(i, j) = a.at(i, j) * b.at(i, j);
  return r;
}

template <class S>
SeriesGrid<S> hadamard_star(const BiRat<S>& a, const BiRat<S>& b, int J, int K) {
  return hadamard_star(expand(a, J, K), expand(b, J, K));
}

/// c x^a y^b.
template <class T>
struct LaurentMonomial {
  T c;
  int a = 0;
  int b = 0;
};

namespace detail {

template <class T>
T int_power(const T& base, int e, const std::optional<T>& inverse) {
  T r(1);
  if (e < 0) {
    if (!inverse) throw std::domain_error("substitute: non-invertible multiplier");
    for (int i = 0; i < -e; ++i) r = r * *inverse;
    return r;
  }
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

}  // namespace detail

/**
 * f(mx, my) with scalars mapped by phi (a ring homomorphism S -> T). The
 * result may carry negative exponents; see BiRat::normalized.
 */
template <class S, class T, class Phi>
BiPoly<T> substitute(const BiPoly<S>& p, const LaurentMonomial<T>& mx, const LaurentMonomial<T>& my, Phi phi) {
  using ffmds::try_inverse;
  const auto ix = try_inverse(mx.c);
  const auto iy = try_inverse(my.c);
  if (!ix || !iy) throw std::domain_error("substitute: non-invertible multiplier");
  BiPoly<T> r;
  for (const auto& [k, c] : p.terms()) {
    const auto [i, j] = k;
    T v = phi(c) * detail::int_power(mx.c, i, ix) * detail::int_power(my.c, j, iy);
    r.add(mx.a * i + my.a * j, mx.b * i + my.b * j, v);
  }
  return r;
}

template <class S, class T, class Phi>
BiRat<T> substitute(const BiRat<S>& r, const LaurentMonomial<T>& mx, const LaurentMonomial<T>& my, Phi phi) {
  return BiRat<T>{substitute(r.num, mx, my, phi), substitute(r.den, mx, my, phi)}.normalized();
}

template <class S>
BiRat<S> substitute(const BiRat<S>& r, const LaurentMonomial<S>& mx, const LaurentMonomial<S>& my) {
  return substitute(r, mx, my, [](const S& s) { return s; });
}

template <class S>
std::string to_string(const BiPoly<S>& p) {
  using ffmds::to_string;
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    const std::string cs = to_string(c);
    const bool unit = cs == "1";
    if (!unit || (k.first == 0 && k.second == 0)) out += (cs.find_first_of(" +") != std::string::npos ? "(" + cs + ")" : cs);
    auto var = [&](const char* name, int e) {
      if (e == 0) return;
      if (!out.empty() && out.back() != ' ') out += "*";
      out += name;
      if (e != 1) out += "^" + std::to_string(e);
    };
    var("x", k.first);
    var("y", k.second);
  }
  return out;
}

template <class S>
std::string to_string(const BiRat<S>& r) {
  return "(" + to_string(r.num) + ") / (" + to_string(r.den) + ")";
}

}  // namespace ffmds
