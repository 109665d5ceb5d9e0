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

// Laurent polynomials in a symbol v (standing for |p|^{1/2}) and ordinary
// polynomials in symbols G_1, G_2, ... (opaque Gauss sums), with Q(zeta_N)
// coefficients. Used to state prime-local identities before choosing a prime.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclo.hpp"

namespace ffmds {

struct FormalMonomial {
  int v = 0;
  std::vector<int> g;  // g[i] = exponent of G_{i+1}; no trailing zeros

  auto operator<=>(const FormalMonomial&) const = default;

  FormalMonomial operator*(const FormalMonomial& o) const {
    FormalMonomial r{v + o.v, g};
    if (o.g.size() > r.g.size()) r.g.resize(o.g.size(), 0);
    for (std::size_t i = 0; i < o.g.size(); ++i) r.g[i] += o.g[i];
    return r;
  }
};

class FormalScalar {
 public:
  FormalScalar() = default;
  FormalScalar(long long c) : FormalScalar(CycNum(c)) {}  // NOLINT(google-explicit-constructor)
  FormalScalar(const CycNum& c) {                          // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) terms_.emplace(FormalMonomial{}, c);
  }

  /// c * v^k.
  static FormalScalar v_pow(int k, const CycNum& c = CycNum(1)) {
    FormalScalar r;
    if (!c.is_zero()) r.terms_.emplace(FormalMonomial{k, {}}, c);
    return r;
  }
  /// The symbol G_i, i >= 1.
  static FormalScalar G(int i) {
    FormalMonomial m;
    m.g.assign(static_cast<std::size_t>(i), 0);
    m.g.back() = 1;
    FormalScalar r;
    r.terms_.emplace(std::move(m), CycNum(1));
    return r;
  }

  const std::map<FormalMonomial, CycNum>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  FormalScalar operator-() const {
    FormalScalar r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  FormalScalar& operator+=(const FormalScalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  FormalScalar& operator-=(const FormalScalar& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend FormalScalar operator+(FormalScalar a, const FormalScalar& b) { return a += b; }
  friend FormalScalar operator-(FormalScalar a, const FormalScalar& b) { return a -= b; }
  friend FormalScalar operator*(const FormalScalar& a, const FormalScalar& b) {
    FormalScalar r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  FormalScalar& operator*=(const FormalScalar& o) { return *this = *this * o; }
  friend bool operator==(const FormalScalar& a, const FormalScalar& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ib = b.terms_.begin();
    for (const auto& [m, c] : a.terms_) {
      if (!(m == ib->first) || !(c == ib->second)) return false;
      ++ib;
    }
    return true;
  }

  /// Image under v -> v_value, G_i -> g_values[i-1].
  CycNum eval(const CycNum& v_value, std::span<const CycNum> g_values) const {
    CycNum acc(0);
    const CycNum v_inv = terms_.empty() || v_value.is_zero() ? CycNum(0) : v_value.inverse();
    for (const auto& [m, c] : terms_) {
      CycNum t = c;
      if (m.v > 0) t *= v_value.pow(m.v);
      if (m.v < 0) t *= v_inv.pow(-m.v);
      for (std::size_t i = 0; i < m.g.size(); ++i) {
        if (m.g[i] == 0) continue;
        if (i >= g_values.size()) throw std::invalid_argument("FormalScalar::eval: missing value for G_" + std::to_string(i + 1));
        t *= g_values[i].pow(m.g[i]);
      }
      acc += t;
    }
    return acc;
  }

 private:
  void add_term(FormalMonomial m, const CycNum& c) {
    while (!m.g.empty() && m.g.back() == 0) m.g.pop_back();
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(std::move(m), c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::map<FormalMonomial, CycNum> terms_;
};

inline bool is_zero(const FormalScalar& a) { return a.is_zero(); }

/// Units of the ring are the monomials c v^k with c != 0 and no G factor.
inline std::optional<FormalScalar> try_inverse(const FormalScalar& a) {
  if (a.terms().size() != 1) return std::nullopt;
  const auto& [m, c] = *a.terms().begin();
  if (!m.g.empty()) return std::nullopt;
  return FormalScalar::v_pow(-m.v, c.inverse());
}

inline std::string to_string(const FormalScalar& a) {
  if (a.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : a.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")";
    if (m.v != 0) s += "*v^" + std::to_string(m.v);
    for (std::size_t i = 0; i < m.g.size(); ++i)
      if (m.g[i] != 0) s += "*G" + std::to_string(i + 1) + (m.g[i] > 1 ? "^" + std::to_string(m.g[i]) : "");
  }
  return s;
}

}  // namespace ffmds
