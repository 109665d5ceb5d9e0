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
 * @file mds.hpp
 * @brief The double Dirichlet series Z1, Z2 over F_q[t], their prime parts
 * H1, H2, brute-force coefficient grids, closed forms and functional equations.
 *
 * x = q^{-s}, y = q^{-w} globally; X = |p|^{-s}, Y = |p|^{-w} locally. In a
 * grid, the first index is the x (or X) degree, i.e. deg d, and the second
 * is the y (or Y) degree, i.e. deg m.
 */

#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "arith_l.hpp"
#include "chars.hpp"
#include "cyclo.hpp"
#include "formal.hpp"
#include "parallel.hpp"
#include "series.hpp"
#include "table.hpp"

namespace ffmds {

using Grid = SeriesGrid<CycNum>;
using Rat = BiRat<CycNum>;
using RatPoly = BiPoly<CycNum>;
using FormalRat = BiRat<FormalScalar>;
using FormalPoly = BiPoly<FormalScalar>;

/**
 * Everything needed to sum over monic d, m of degree <= max_deg: the monic
 * table with factorizations, prime symbols for every prime in range, n-th
 * powerfree parts and Gauss sums g(1, eps, chi_{m0}).
 */
class MdsInstance {
 public:
  MdsInstance(const FieldCtx& field, int max_deg, unsigned threads = default_threads())
      : ctx_(field), table_(ctx_.field(), max_deg), sym_(ctx_, table_), threads_(std::max(1u, threads)) {
    sym_.prepare_up_to(max_deg);
    const int n = static_cast<int>(field.n());
    for (const Poly& p : table_.primes()) prime_deg_.push_back(p.degree());
    m0_index_.resize(table_.size());
    mt_deg_.resize(table_.size());
    for (std::size_t m = 0; m < table_.size(); ++m) {
      Poly m0 = Poly::one();
      int dt = 0;
      for (const auto& pp : powerfree_primes(table_, m, n)) {
        m0 = mul(ctx_.field(), m0, pow(ctx_.field(), table_.primes()[pp.prime], static_cast<unsigned>(pp.exp)));
        dt += prime_deg_[pp.prime];
      }
      m0_index_[m] = table_.index(m0);
      mt_deg_[m] = dt;
    }
  }
  MdsInstance(const MdsInstance&) = delete;
  MdsInstance& operator=(const MdsInstance&) = delete;

  const CharCtx& ctx() const { return ctx_; }
  const FieldCtx& field() const { return ctx_.field(); }
  const MonicTable& table() const { return table_; }
  const PrimeSymbols& symbols() const { return sym_; }
  unsigned threads() const { return threads_; }
  int max_degree() const { return table_.max_degree(); }
  std::uint32_t q() const { return ctx_.q(); }
  int n() const { return static_cast<int>(ctx_.n()); }
  int prime_degree(std::uint32_t pid) const { return prime_deg_[pid]; }
  std::size_t m0_index(std::size_t m) const { return m0_index_[m]; }
  /// deg m~, the squarefree part of m0.
  int m_tilde_degree(std::size_t m) const { return mt_deg_[m]; }

  /// q^{h/2}.
  CycNum qh(long long h) const { return q_half_power(ctx_.cyc(), q(), h); }

  /// g(1, eps, chi_{m0}) for every n-th power free m0 of degree <= deg; computed once.
  void prepare_gauss(int deg) {
    if (deg > max_degree()) throw std::out_of_range("Gauss sums beyond the table");
    if (gauss_.size() < table_.end(deg)) {
      gauss_.resize(table_.end(deg));
      have_gauss_.resize(table_.end(deg), 0);
    }
    std::vector<std::size_t> todo;
    for (std::size_t m = 0; m < table_.end(deg); ++m)
      if (m0_index_[m] == m && !have_gauss_[m]) todo.push_back(m);
    auto& tables = sym_.residue_tables();
    parallel_for(todo.size(), threads_, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t t = lo; t < hi; ++t) gauss_[todo[t]] = gauss_g(ctx_, Poly::one(), 1, table_.poly(todo[t]), &tables);
    });
    for (std::size_t m : todo) have_gauss_[m] = 1;
  }
  const CycNum& gauss_m0(std::size_t m0) const {
    if (m0 >= have_gauss_.size() || !have_gauss_[m0]) throw std::logic_error("Gauss sum not prepared");
    return gauss_[m0];
  }

  /// L(s, chi_{m0}) for a tabulated m0, cached.
  const UniRat& lfun_m0(std::size_t m0) {
    auto it = lcache_.find(m0);
    if (it != lcache_.end()) return it->second;
    return lcache_.emplace(m0, lfun(ctx_, table_.poly(m0), &sym_.residue_tables())).first->second;
  }

 private:
  CharCtx ctx_;
  MonicTable table_;
  PrimeSymbols sym_;
  unsigned threads_;
  std::vector<int> prime_deg_;
  std::vector<std::size_t> m0_index_;
  std::vector<int> mt_deg_;
  std::vector<CycNum> gauss_;
  std::vector<char> have_gauss_;
  std::map<std::size_t, UniRat> lcache_;
};

namespace detail {

/// Integer weights on powers of zeta_N for every cell of a (J+1) x (K+1) grid.
struct SlotGrid {
  int J = 0, K = 0, N = 0;
  std::vector<long long> w;
  SlotGrid(int J_, int K_, int N_) : J(J_), K(K_), N(N_), w(static_cast<std::size_t>((J_ + 1) * (K_ + 1) * N_), 0) {}
  long long& at(int j, int k, long long slot) {
    return w[static_cast<std::size_t>((j * (K + 1) + k) * N + ((slot % N) + N) % N)];
  }
  void merge(const SlotGrid& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += o.w[i];
  }
  Grid to_grid(const CycCtxPtr& cyc) const {
    Grid g(J, K);
    for (int j = 0; j <= J; ++j)
      for (int k = 0; k <= K; ++k)
        g.at(j, k) = CycNum::from_power_weights<long long>(
            cyc, std::span<const long long>(w.data() + static_cast<std::size_t>((j * (K + 1) + k) * N), static_cast<std::size_t>(N)));
    return g;
  }
};

inline void check_range(const MdsInstance& inst, int J, int K) {
  if (J < 0 || K < 0 || J > inst.max_degree() || K > inst.max_degree())
    throw std::out_of_range("truncation exceeds the instance degree bound");
}

/// 1 / (1 - c y^e) as a series grid.
inline Grid y_geometric(const CycNum& c, int e, int J, int K) { return expand(Rat{RatPoly(1), RatPoly(1) - RatPoly::monomial(c, 0, e)}, J, K); }

}  // namespace detail

/// a(d, m) as a QWeight from tabulated factorizations.
inline QWeight table_weight_a(const MdsInstance& inst, std::span<const PrimePower> d_fac, std::span<const PrimePower> m_fac) {
  QWeight a{1, 0};
  for (const auto& mp : m_fac) {
    a = a * a_local(exponent_in(d_fac, mp.prime), mp.exp, inst.n(), inst.prime_degree(mp.prime));
    if (a.is_zero()) break;
  }
  return a;
}

/// b(d, m) as a QWeight from tabulated factorizations.
inline QWeight table_weight_b(const MdsInstance& inst, std::span<const PrimePower> d_fac, std::span<const PrimePower> m_fac) {
  QWeight b{1, 0};
  for (const auto& mp : m_fac) {
    b = b * b_local(exponent_in(d_fac, mp.prime), mp.exp, inst.n(), inst.prime_degree(mp.prime), inst.q());
    if (b.is_zero()) break;
  }
  return b;
}

/// grid[j][k] = sum_{deg d = j, deg m = k} chi_{m0}(d^) a(d, m), by enumeration.
inline Grid z1_grid(const MdsInstance& inst, int J, int K) {
  detail::check_range(inst, J, K);
  const auto& t = inst.table();
  const auto& ctx = inst.ctx();
  const int n = inst.n();
  auto acc = parallel_reduce<detail::SlotGrid>(
      t.end(K), inst.threads(), [&] { return detail::SlotGrid(J, K, ctx.N()); },
      [&](std::size_t lo, std::size_t hi, detail::SlotGrid& g) {
        for (std::size_t m = lo; m < hi; ++m) {
          const int k = t.degree(m);
          const auto m_fac = t.factors(m);
          const auto m0 = powerfree_primes(t, m, n);
          for (std::size_t d = 0; d < t.end(J); ++d) {
            const auto d_fac = t.factors(d);
            const QWeight a = table_weight_a(inst, d_fac, m_fac);
            if (a.is_zero()) continue;
            const int e = chi_hat_exponent(inst.symbols(), d_fac, m0, n);
            g.at(t.degree(d), k, ctx.eps_slot(e)) += static_cast<long long>(ipow(inst.q(), static_cast<unsigned>(a.half / 2)));
          }
        }
      },
      [](detail::SlotGrid& a, const detail::SlotGrid& b) { a.merge(b); });
  return acc.to_grid(ctx.cyc());
}

/// Same grid through sum_m L(s, chi_{m0}) P(s; m) y^{deg m}.
inline Grid z1_grid_via_L(MdsInstance& inst, int J, int K) {
  detail::check_range(inst, J, K);
  const auto& t = inst.table();
  Grid g(J, K);
  for (std::size_t m = 0; m < t.end(K); ++m) {
    const UniRat& L = inst.lfun_m0(inst.m0_index(m));
    const UniRat LP{L.num * euler_P(inst.ctx(), t.poly(m)), L.den};
    const auto s = LP.series(J);
    const int k = t.degree(m);
    for (int j = 0; j <= J; ++j) g.at(j, k) += s[static_cast<std::size_t>(j)];
  }
  return g;
}

/**
 * grid[j][k] = sum_{deg d = j, deg m = k} g(1, eps, chi_{m0}) / sqrt|m~| conj chi_{m0}(d^) b(d, m),
 * times 1 / (1 - q^{n/2} y^n) when with_zeta is set.
 */
inline Grid z2_grid(MdsInstance& inst, int J, int K, bool with_zeta = true) {
  detail::check_range(inst, J, K);
  inst.prepare_gauss(K);
  const auto& t = inst.table();
  const auto& ctx = inst.ctx();
  const int n = inst.n();
  // b(d, m) = coef(d) * q^{half(m)/2}: the half exponent depends on m only
  Grid raw = parallel_reduce<Grid>(
      t.end(K), inst.threads(), [&] { return Grid(J, K); },
      [&](std::size_t lo, std::size_t hi, Grid& g) {
        std::vector<long long> w(static_cast<std::size_t>(ctx.N()));
        for (std::size_t m = lo; m < hi; ++m) {
          const int k = t.degree(m);
          const auto m_fac = t.factors(m);
          const auto m0 = powerfree_primes(t, m, n);
          long long half = 0;
          for (const auto& mp : m_fac) half += static_cast<long long>(inst.prime_degree(mp.prime)) * (mp.exp % n == 0 ? mp.exp - 2 : mp.exp - 1);
          const CycNum scale = inst.gauss_m0(inst.m0_index(m)) * inst.qh(half - inst.m_tilde_degree(m));
          for (int j = 0; j <= J; ++j) {
            std::fill(w.begin(), w.end(), 0);
            bool any = false;
            for (std::size_t d = t.begin(j); d < t.end(j); ++d) {
              const auto d_fac = t.factors(d);
              const QWeight b = table_weight_b(inst, d_fac, m_fac);
              if (b.is_zero()) continue;
              const int e = chi_hat_exponent(inst.symbols(), d_fac, m0, n);
              w[static_cast<std::size_t>((ctx.N() - ctx.eps_slot(e) % ctx.N()) % ctx.N())] += b.coef;
              any = true;
            }
            if (any) g.at(j, k) += scale * CycNum::from_power_weights<long long>(ctx.cyc(), w);
          }
        }
      },
      [](Grid& a, const Grid& b) { a = a + b; });
  if (!with_zeta) return raw;
  return raw * detail::y_geometric(inst.qh(n), n, J, K);
}

/// sum_m g(1, eps, chi_{m0}) / sqrt|m~| L(s, conj chi_{m0}) Q(s; m) y^{deg m}, optionally times 1 / (1 - q^{n/2} y^n).
inline Grid z2_prime_grid(MdsInstance& inst, int J, int K, bool with_zeta) {
  detail::check_range(inst, J, K);
  inst.prepare_gauss(K);
  const auto& t = inst.table();
  Grid g(J, K);
  for (std::size_t m = 0; m < t.end(K); ++m) {
    const std::size_t m0 = inst.m0_index(m);
    const UniRat& L = inst.lfun_m0(m0);
    const UniRat LQ{L.num.conj() * euler_Q(inst.ctx(), t.poly(m)), L.den.conj()};
    const auto s = LQ.series(J);
    const CycNum scale = inst.gauss_m0(m0) * inst.qh(-inst.m_tilde_degree(m));
    const int k = t.degree(m);
    for (int j = 0; j <= J; ++j) g.at(j, k) += scale * s[static_cast<std::size_t>(j)];
  }
  if (!with_zeta) return g;
  return g * detail::y_geometric(inst.qh(inst.n()), inst.n(), J, K);
}

/// Columns with y-degree = i (mod n); the rest set to zero.
template <class S>
SeriesGrid<S> delta_part(const SeriesGrid<S>& g, int i, int n) {
  SeriesGrid<S> r(g.J(), g.K());
  for (int j = 0; j <= g.J(); ++j)
    for (int k = 0; k <= g.K(); ++k)
      if (k % n == i) r.at(j, k) = g.at(j, k);
  return r;
}

// ---------------------------------------------------------------------------
// Closed forms in x, y with exact scalars.

class ClosedForms {
 public:
  explicit ClosedForms(const CharCtx& ctx) : ctx_(&ctx), n_(static_cast<int>(ctx.n())) {
    for (int i = 1; i < n_; ++i) tau_.push_back(tau(ctx, i));
  }

  CycNum qh(long long h) const { return q_half_power(ctx_->cyc(), ctx_->q(), h); }
  RatPoly m(long long half, int i, int j) const { return RatPoly::monomial(qh(half), i, j); }
  RatPoly one_minus(long long half, int i, int j) const { return RatPoly(1) - m(half, i, j); }
  const CycNum& tau_i(int i) const { return tau_.at(static_cast<std::size_t>(i - 1)); }

  /// (1 - q^2 xy) / ((1 - qx)(1 - qy)(1 - q^{n+1} x^n y^n))
  Rat z1() const { return {one_minus(4, 1, 1), one_minus(2, 1, 0) * one_minus(2, 0, 1) * one_minus(2 * (n_ + 1), n_, n_)}; }

  RatPoly z1_delta_den() const { return one_minus(2, 1, 0) * one_minus(2 * n_, 0, n_) * one_minus(2 * (n_ + 1), n_, n_); }
  /// (1 - q^{n+1} x y^n) / den and (q^i - q^{i+1} x) y^i / den.
  Rat z1_delta(int i) const {
    if (i == 0) return {one_minus(2 * (n_ + 1), 1, n_), z1_delta_den()};
    return {m(2 * i, 0, i) - m(2 * (i + 1), 1, i), z1_delta_den()};
  }

  RatPoly z2_den() const { return one_minus(2, 1, 0) * one_minus(n_ + 2, 0, n_) * one_minus(3 * n_, n_, n_); }
  /// Numerator terms of the Z2 closed form with y-degree = i (mod n).
  RatPoly z2_num_part(int i) const {
    if (i == 0) return RatPoly(1) - m(3 * n_, n_ - 1, n_);
    return RatPoly::monomial(tau_i(i) * qh(3 * i - 2), i - 1, i) - RatPoly::monomial(tau_i(i) * qh(3 * i), i, i);
  }
  Rat z2() const {
    RatPoly num;
    for (int i = 0; i < n_; ++i) num = num + z2_num_part(i);
    return {num, z2_den()};
  }
  Rat z2_delta(int i) const { return {z2_num_part(i), z2_den()}; }

  /// Zeta prefactor 1 / (1 - q^{n/2} y^n).
  Rat zeta_y() const { return {RatPoly(1), one_minus(n_, 0, n_)}; }

  /// T~_a = (1 - q x y^n) / ((1 - qx)(1 - q y^n)(1 - q^n x^n y^n)).
  Rat t_a() const { return {one_minus(2, 1, n_), one_minus(2, 1, 0) * one_minus(2, 0, n_) * one_minus(2 * n_, n_, n_)}; }
  /// K~_a = 1 / ((1 - x)(1 - xy)), K~_b = 1 / (1 - xy).
  static Rat k_a() { return {RatPoly(1), (RatPoly(1) - RatPoly::x()) * (RatPoly(1) - RatPoly::monomial(CycNum(1), 1, 1))}; }
  static Rat k_b() { return {RatPoly(1), RatPoly(1) - RatPoly::monomial(CycNum(1), 1, 1)}; }
  /// Z_a = 1 / ((1 - q^{n+1} x^n y^n)(1 - qx)).
  Rat z_a() const { return {RatPoly(1), one_minus(2 * (n_ + 1), n_, n_) * one_minus(2, 1, 0)}; }
  /// Z_b = 1 / (1 - q^{n+1} x^n y^n).
  Rat z_b() const { return {RatPoly(1), one_minus(2 * (n_ + 1), n_, n_)}; }

  /// (x, y) -> (q^{-1} x^{-1}, q^{1/2} x y), i.e. (s, w) -> (1 - s, w + s - 1/2).
  LaurentMonomial<CycNum> dual_x() const { return {qh(-2), -1, 0}; }
  LaurentMonomial<CycNum> dual_y() const { return {qh(1), 1, 1}; }
  Rat dual(const Rat& r) const { return substitute(r, dual_x(), dual_y()); }

  /**
   * Prefactor relating Z1(.; delta_i) to Z2 at the dual point:
   * i = 0: q^{-1} x^{-2} (1 - x) / (1 - q^{-1} x^{-1});  i != 0: q^{-1} x^{-1} c,
   * with c = conj tau(eps^i) (conj_tau) or tau(eps^i).
   */
  Rat fe_factor(int i, bool conj_tau) const {
    if (i == 0) return Rat{m(-2, -2, 0) * (RatPoly(1) - RatPoly::x()), one_minus(-2, -1, 0)}.normalized();
    const CycNum c = conj_tau ? tau_i(i).conj() : tau_i(i);
    return Rat{RatPoly::monomial(qh(-2) * c, -1, 0), RatPoly(1)}.normalized();
  }

  const CharCtx& ctx() const { return *ctx_; }
  int n() const { return n_; }

 private:
  const CharCtx* ctx_;
  int n_;
  std::vector<CycNum> tau_;
};

// ---------------------------------------------------------------------------
// Prime parts: formal closed forms in X, Y over v = |p|^{1/2} and G_i.

class FormalPrimeParts {
 public:
  explicit FormalPrimeParts(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("n must be at least 2");
  }

  FormalPoly m(const FormalScalar& c, int i, int j) const { return FormalPoly::monomial(c, i, j); }
  FormalPoly v_term(int vexp, int i, int j) const { return m(FormalScalar::v_pow(vexp), i, j); }
  FormalPoly one_minus_v(int vexp, int i, int j) const { return FormalPoly(1) - v_term(vexp, i, j); }

  /// (1 - XY) / ((1 - X)(1 - Y)(1 - v^{2(n-1)} X^n Y^n))
  FormalRat h1() const {
    return {one_minus_v(0, 1, 1), one_minus_v(0, 1, 0) * one_minus_v(0, 0, 1) * one_minus_v(2 * (n_ - 1), n_, n_)};
  }
  FormalPoly h1_delta_den() const { return one_minus_v(0, 1, 0) * one_minus_v(0, 0, n_) * one_minus_v(2 * (n_ - 1), n_, n_); }
  FormalRat h1_delta(int i) const {
    if (i == 0) return {one_minus_v(0, 1, n_), h1_delta_den()};
    return {one_minus_v(0, 1, 0) * v_term(0, 0, i), h1_delta_den()};
  }

  FormalPoly h2_den() const { return one_minus_v(0, 1, 0) * one_minus_v(n_ - 2, 0, n_) * one_minus_v(n_, n_, n_); }
  /// Numerator terms of the H2 closed form with Y-degree = i (mod n).
  FormalPoly h2_num_part(int i) const {
    if (i == 0) return one_minus_v(n_ - 2, n_ - 1, n_);
    // G_i / v * v^{i-1} X^{i-1} Y^i (1 - X)
    return m(FormalScalar::G(i) * FormalScalar::v_pow(i - 2), i - 1, i) * one_minus_v(0, 1, 0);
  }
  FormalRat h2() const {
    FormalPoly num;
    for (int i = 0; i < n_; ++i) num = num + h2_num_part(i);
    return {num, h2_den()};
  }
  FormalRat h2_delta(int i) const { return {h2_num_part(i), h2_den()}; }

  /// (X, Y) -> (v^{-2} X^{-1}, v X Y), i.e. (s, w) -> (1 - s, w + s - 1/2) locally.
  LaurentMonomial<FormalScalar> dual_x() const { return {FormalScalar::v_pow(-2), -1, 0}; }
  LaurentMonomial<FormalScalar> dual_y() const { return {FormalScalar::v_pow(1), 1, 1}; }
  FormalRat dual(const FormalRat& r) const {
    return substitute(r, dual_x(), dual_y(), [](const FormalScalar& s) { return s; });
  }

  int n() const { return n_; }

 private:
  int n_;
};

/// Concrete values for a prime p: v = |p|^{1/2} = q^{deg p / 2}, G_i = g(1, eps^i, chi_p).
struct PrimeValues {
  Poly p;
  CycNum v;
  std::vector<CycNum> G;  // G[i-1]
};

inline PrimeValues prime_values(const CharCtx& ctx, const Poly& p, ResidueTables* tables = nullptr) {
  if (!p.is_monic() || !is_irreducible(ctx.field(), p)) throw std::invalid_argument("prime parts need a monic irreducible polynomial");
  PrimeValues pv{p, q_half_power(ctx.cyc(), ctx.q(), p.degree()), {}};
  for (int i = 1; i < static_cast<int>(ctx.n()); ++i) pv.G.push_back(gauss_g(ctx, Poly::one(), i, p, tables));
  return pv;
}

/// Evaluates a formal rational function at v and G_i.
inline Rat evaluate(const FormalRat& r, const CycNum& v, const std::vector<CycNum>& G) {
  const auto phi = [&](const FormalScalar& s) { return s.eval(v, G); };
  const LaurentMonomial<CycNum> idx{CycNum(1), 1, 0}, idy{CycNum(1), 0, 1};
  return substitute(r, idx, idy, phi);
}

/// Direct-sum grids of H1 and H2 for one prime, plus the check that the conj chi factor is 1.
struct PrimePartGrids {
  Grid h1;
  Grid h2;
  bool chi_factor_trivial = true;
};

inline PrimePartGrids h_grids(const CharCtx& ctx, const Poly& p, int J, int K, ResidueTables* tables = nullptr) {
  const auto& f = ctx.field();
  if (!p.is_monic() || !is_irreducible(f, p)) throw std::invalid_argument("h_grids needs a monic irreducible polynomial");
  const int n = static_cast<int>(ctx.n());
  const int dp = p.degree();
  PrimePartGrids out{Grid(J, K), Grid(J, K), true};
  std::vector<CycNum> gk;  // g(1, eps, chi_{p^k}) / sqrt|(p^k)~|
  for (int k = 0; k <= K; ++k) {
    const Poly pk = pow(f, p, static_cast<unsigned>(k));
    const int dt = k % n == 0 ? 0 : dp;
    gk.push_back(gauss_g(ctx, Poly::one(), 1, pk, tables) * q_half_power(ctx.cyc(), ctx.q(), -dt));
  }
  for (int j = 0; j <= J; ++j)
    for (int k = 0; k <= K; ++k) {
      out.h1.at(j, k) = to_cyc(ctx, a_local(j, k, n, dp));
      const QWeight b = b_local(j, k, n, dp, ctx.q());
      const Poly pk = pow(f, p, static_cast<unsigned>(k));
      const Poly m0 = pow(f, p, static_cast<unsigned>(k % n));
      const Poly dhat = coprime_part(f, pow(f, p, static_cast<unsigned>(j)), m0);
      const CycNum chi = residue_symbol(ctx, dhat, pk).conj();
      out.chi_factor_trivial = out.chi_factor_trivial && chi == CycNum(1);
      if (!b.is_zero()) out.h2.at(j, k) = to_cyc(ctx, b) * gk[static_cast<std::size_t>(k)] * chi;
    }
  // (1 - |p|^{n/2 - 1} Y^n)^{-1}
  out.h2 = out.h2 * detail::y_geometric(q_half_power(ctx.cyc(), ctx.q(), static_cast<long long>(dp) * (n - 2)), n, J, K);
  return out;
}

/**
 * H2' for one prime from Q(s; p^e):
 *   delta_0: (1 - X)^{-1} sum_k Q(s; p^{nk}) Y^{nk}
 *   delta_i: G_i / sqrt|p| sum_k Q(s; p^{nk+i}) Y^{nk+i}
 * Q is a polynomial in x^{deg p} = X.
 */
inline Grid h2_prime_grid(const CharCtx& ctx, const PrimeValues& pv, int J, int K) {
  const auto& f = ctx.field();
  const int n = static_cast<int>(ctx.n());
  const int dp = pv.p.degree();
  Grid raw0(J, K), rest(J, K);
  for (int e = 0; e <= K; ++e) {
    const UniPoly Q = euler_Q(ctx, pow(f, pv.p, static_cast<unsigned>(e)));
    const int i = e % n;
    const CycNum scale = i == 0 ? CycNum(1) : pv.G[static_cast<std::size_t>(i - 1)] * pv.v.inverse();
    for (const auto& [xe, c] : Q.terms()) {
      if (xe < 0 || xe % dp != 0) throw std::logic_error("Q(s; p^e) is not a polynomial in |p|^{-s}");
      const int X = xe / dp;
      if (X > J) continue;
      (i == 0 ? raw0 : rest).at(X, e) += scale * c;
    }
  }
  const Grid geo_x = expand(Rat{RatPoly(1), RatPoly(1) - RatPoly::x()}, J, K);
  return raw0 * geo_x + rest;
}

// ---------------------------------------------------------------------------
// Section-6 style pieces from enumeration.

/// grid[j][k] = sum over m with m0 = 1, deg m = k and deg d = j of a(d, m).
inline Grid t_a_grid(const MdsInstance& inst, int J, int K) {
  detail::check_range(inst, J, K);
  const auto& t = inst.table();
  Grid g(J, K);
  std::vector<std::vector<long long>> acc(static_cast<std::size_t>(J + 1), std::vector<long long>(static_cast<std::size_t>(K + 1), 0));
  for (std::size_t m = 0; m < t.end(K); ++m) {
    if (inst.m0_index(m) != 0) continue;
    for (std::size_t d = 0; d < t.end(J); ++d) {
      const QWeight a = table_weight_a(inst, t.factors(d), t.factors(m));
      if (!a.is_zero()) acc[static_cast<std::size_t>(t.degree(d))][static_cast<std::size_t>(t.degree(m))] += static_cast<long long>(ipow(inst.q(), static_cast<unsigned>(a.half / 2)));
    }
  }
  for (int j = 0; j <= J; ++j)
    for (int k = 0; k <= K; ++k) g.at(j, k) = CycNum(acc[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
  return g;
}

/// Keeps the cells selected by keep(x_degree, y_degree).
template <class Keep>
Grid mask(const Grid& g, Keep keep) {
  Grid r(g.J(), g.K());
  for (int j = 0; j <= g.J(); ++j)
    for (int k = 0; k <= g.K(); ++k)
      if (keep(j, k)) r.at(j, k) = g.at(j, k);
  return r;
}

/**
 * Counts pairs (d, m) with deg d = deg m <= max_deg where
 * chi_{m0}(d^) a(d, m) != chi_{d0}(m^) a(m, d). Returns the number checked.
 */
inline std::pair<long long, long long> swap_symmetry(const MdsInstance& inst, int max_deg) {
  const auto& t = inst.table();
  const int n = inst.n();
  long long checked = 0, bad = 0;
  for (int k = 0; k <= max_deg; ++k)
    for (std::size_t m = t.begin(k); m < t.end(k); ++m) {
      const auto m0 = powerfree_primes(t, m, n);
      for (std::size_t d = t.begin(k); d < t.end(k); ++d) {
        const auto d0 = powerfree_primes(t, d, n);
        const QWeight a = table_weight_a(inst, t.factors(d), t.factors(m));
        const QWeight a2 = table_weight_a(inst, t.factors(m), t.factors(d));
        const int e1 = a.is_zero() ? -1 : chi_hat_exponent(inst.symbols(), t.factors(d), m0, n);
        const int e2 = a2.is_zero() ? -1 : chi_hat_exponent(inst.symbols(), t.factors(m), d0, n);
        ++checked;
        if (!(a == a2) || e1 != e2) ++bad;
      }
    }
  return {checked, bad};
}

}  // namespace ffmds
