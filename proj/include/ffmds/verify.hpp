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
 * @file verify.hpp
 * @brief Named verification suites producing CheckResult records.
 */

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "arith_l.hpp"
#include "chars.hpp"
#include "mds.hpp"
#include "report.hpp"
#include "table.hpp"

namespace ffmds {

struct VerifyConfig {
  std::uint32_t q = 5;
  std::uint32_t n = 2;
  int J = 4;
  int K = 4;
  std::optional<Fq> generator;
  unsigned threads = default_threads();
  /// Degree bound for the exhaustive sweeps over moduli.
  int sweep_degree = 4;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"reciprocity", "vanishing", "lfe",    "prop21",  "z1",          "z2",
                                              "thm11",       "pparts",    "thm32", "correspondence", "prop41", "section6"};
  return names;
}

/**
 * Degree to which L(s, chi^_m) is brute-forced in the sweep: deg m + n, except
 * that moduli whose enumeration would exceed `budget` monic d stop at deg m + 1.
 */
inline int lhat_sweep_depth(std::uint32_t q, int n, int deg_m, double budget = 2.0e5) {
  const int full = deg_m + n;
  double count = 0, pw = 1;
  for (int k = 0; k <= full; ++k, pw *= q) count += pw;
  return count <= budget ? full : deg_m + 1;
}

class Verifier {
 public:
  explicit Verifier(VerifyConfig cfg) : cfg_(std::move(cfg)), field_(cfg_.q, cfg_.n, cfg_.generator), ctx_(field_), forms_(ctx_), formal_(static_cast<int>(cfg_.n)) {
    if (cfg_.J < 0 || cfg_.K < 0) throw std::invalid_argument("negative truncation");
  }

  const VerifyConfig& config() const { return cfg_; }
  const CharCtx& ctx() const { return ctx_; }
  const ClosedForms& forms() const { return forms_; }
  const FormalPrimeParts& formal() const { return formal_; }

  MdsInstance& instance() {
    if (!inst_) inst_ = std::make_unique<MdsInstance>(field_, std::max({cfg_.J, cfg_.K, 1}), cfg_.threads);
    return *inst_;
  }

  std::vector<CheckResult> run(const std::string& suite) {
    if (suite == "all") {
      std::vector<CheckResult> out;
      for (const auto& s : suite_names()) {
        auto part = run(s);
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
    if (suite == "reciprocity") return {reciprocity()};
    if (suite == "vanishing") return {vanishing()};
    if (suite == "lfe") return lfe();
    if (suite == "prop21") return {prop21()};
    if (suite == "z1") return z1();
    if (suite == "z2") return z2();
    if (suite == "thm11") return thm11();
    if (suite == "pparts") return pparts();
    if (suite == "thm32") return thm32();
    if (suite == "correspondence") return correspondence();
    if (suite == "prop41") return prop41();
    if (suite == "section6") return section6();
    throw std::invalid_argument("unknown suite: " + suite);
  }

  // ---- structural -------------------------------------------------------

  /// (a/b) = (b/a) for coprime monic a, b of degree <= sweep_degree.
  CheckResult reciprocity() {
    const int D = cfg_.sweep_degree;
    const int n = static_cast<int>(cfg_.n);
    MonicTable t(field_, D);
    PrimeSymbols sym(ctx_, t);
    sym.prepare_up_to(D);
    long long checked = 0;
    json bad = json::array();
    for (std::size_t a = 0; a < t.size(); ++a)
      for (std::size_t b = a + 1; b < t.size(); ++b) {
        bool coprime = true;
        for (const auto& pa : t.factors(a)) coprime = coprime && exponent_in(t.factors(b), pa.prime) == 0;
        if (!coprime) continue;
        ++checked;
        if (residue_symbol_exponent(sym, t.factors(a), t.factors(b), n) != residue_symbol_exponent(sym, t.factors(b), t.factors(a), n) &&
            bad.size() < 5)
          bad.push_back({to_string(t.poly(a)), to_string(t.poly(b))});
      }
    return record("reciprocity", "(a/b) = (b/a) for coprime monic a, b", D, D, bad.empty(), {{"coprime_pairs", checked}},
                  {{"mismatches", bad}});
  }

  /// sum_{deg d = k} (d/m) = 0 for k >= deg m when m is not an n-th power.
  CheckResult vanishing() {
    const int D = cfg_.sweep_degree;
    const int top = D + 1;
    const int n = static_cast<int>(cfg_.n);
    MonicTable t(field_, top);
    PrimeSymbols sym(ctx_, t);
    sym.prepare_up_to(D);
    long long checked = 0;
    json bad = json::array();
    for (std::size_t m = 0; m < t.end(D); ++m) {
      if (is_perfect_nth_power(field_, t.factorization(m))) continue;
      for (int k = t.degree(m); k <= top; ++k) {
        std::vector<long long> w(static_cast<std::size_t>(ctx_.N()), 0);
        for (std::size_t d = t.begin(k); d < t.end(k); ++d) {
          const int e = residue_symbol_exponent(sym, t.factors(d), t.factors(m), n);
          if (e >= 0) ++w[static_cast<std::size_t>(ctx_.eps_slot(e))];
        }
        ++checked;
        if (!CycNum::from_power_weights<long long>(ctx_.cyc(), w).is_zero() && bad.size() < 5)
          bad.push_back({{"m", to_string(t.poly(m))}, {"k", k}});
      }
    }
    return record("vanishing", "sum over deg d = k of (d/m) is 0 for k >= deg m, m not an n-th power", top, D, bad.empty(),
                  {{"sums_checked", checked}}, {{"nonzero", bad}});
  }

  // ---- L-functions ------------------------------------------------------

  std::vector<CheckResult> lfe() {
    const int D = cfg_.sweep_degree;
    ResidueTables tables(ctx_);
    long long checked = 0;
    json bad_inc = json::array(), bad_comp = json::array(), bad_deg = json::array();
    for (int k = 1; k <= D; ++k)
      for (const Poly& m : enumerate_monic(field_, k)) {
        if (!is_nth_power_free(field_, factorize(field_, m))) continue;
        ++checked;
        const auto inc = lfun_check_fe(ctx_, m, &tables);
        const int Dt = parts(field_, m).m_tilde.degree();
        if (!(inc.lhs == inc.rhs) && bad_inc.size() < 5)
          bad_inc.push_back({{"m", to_string(m)}, {"lhs", to_string(inc.lhs)}, {"rhs", to_string(inc.rhs)}});
        if (lfun(ctx_, m, &tables).num.degree() != Dt - 1 && bad_deg.size() < 5) bad_deg.push_back(to_string(m));
        if (!lfun_check_fe_complete(ctx_, m, &tables).pass && bad_comp.size() < 5) bad_comp.push_back(to_string(m));
      }
    std::vector<CheckResult> out;
    out.push_back(record("lfun_fe_incomplete",
                         "L(s,chi_m) = q^{2s-1}|m~|^{1/2-s} g/|m~|^{1/2} (1-q^{-s})/(1-q^{s-1}) L(1-s, conj chi_m), and the deg m != 0 mod n form",
                         D, D, bad_inc.empty(), {{"moduli", checked}}, {{"failures", bad_inc}}));
    out.push_back(record("lfun_fe_complete", "L*(s,chi_m) = |cond|^{1/2-s} q^{2s-1} g*/sqrt|cond| L*(1-s, conj chi_m)", D, D,
                         bad_comp.empty(), {{"moduli", checked}}, {{"failures", bad_comp}}));
    out.push_back(record("lfun_degree_bound", "deg_x L(s,chi_m) = deg m~ - 1 for n-th power free m != 1", D, D, bad_deg.empty(),
                         {{"moduli", checked}}, {{"failures", bad_deg}}));
    json taus = json::array();
    bool tau_ok = true;
    for (int i = 1; i < static_cast<int>(cfg_.n); ++i) {
      const CycNum a = abs_square(forms_.tau_i(i));
      tau_ok = tau_ok && a == CycNum(static_cast<long long>(cfg_.q));
      taus.push_back(to_json(a, ctx_.cyc()));
    }
    out.push_back(record("tau_abs_square", "|tau(eps^i)|^2 = q", 0, 0, tau_ok, taus, static_cast<long long>(cfg_.q)));
    return out;
  }

  /// L(s, chi^_m) by enumeration equals L(s, chi_{m0}) P(s; m) for every monic m of degree <= sweep_degree.
  CheckResult prop21() {
    const int D = cfg_.sweep_degree;
    const int n = static_cast<int>(cfg_.n);
    int top = 0;
    for (int k = 0; k <= D; ++k) top = std::max(top, k + n);
    MonicTable t(field_, top);
    PrimeSymbols sym(ctx_, t);
    long long checked = 0;
    json depths = json::object();
    json bad = json::array();
    for (int k = 0; k <= D; ++k) {
      const int depth = lhat_sweep_depth(cfg_.q, n, k);
      depths[std::to_string(k)] = depth < k + n ? json{depth, "every 120th at " + std::to_string(k + n)} : json(depth);
      const int full = k + n;
      std::size_t idx = 0;
      for (const Poly& m : enumerate_monic(field_, k)) {
        ++checked;
        // moduli swept at reduced depth still get every 120th one at full depth
        const bool deep = depth < full && idx++ % 120 == 0;
        const auto chk = lfun_hat_check(ctx_, sym, m, deep ? full : depth);
        if (!chk.pass && bad.size() < 5) bad.push_back(to_string(m));
      }
    }
    return record("lhat_product", "L(s, chi^_m) = sum chi_{m0}(d^) a(d,m) |d|^{-s} = L(s, chi_{m0}) P(s; m)", top, D, bad.empty(),
                  {{"moduli", checked}, {"depth_by_deg_m", depths}}, {{"failures", bad}});
  }

  // ---- global series ----------------------------------------------------

  std::vector<CheckResult> z1() {
    auto& inst = instance();
    const int J = cfg_.J, K = cfg_.K, n = static_cast<int>(cfg_.n);
    const Grid g = z1_grid(inst, J, K);
    std::vector<CheckResult> out;
    out.push_back(grid_record("z1_closed_form", "Z1 = (1 - q^2 xy) / ((1 - qx)(1 - qy)(1 - q^{n+1} x^n y^n))", g, expand(forms_.z1(), J, K)));
    out.push_back(grid_record("z1_via_lfunctions", "sum chi_{m0}(d^) a(d,m) = sum_m L(s, chi_{m0}) P(s; m) |m|^{-w}", g, z1_grid_via_L(inst, J, K)));
    Rat sum{RatPoly(), RatPoly(1)};
    for (int i = 0; i < n; ++i) {
      out.push_back(grid_record("z1_delta_" + std::to_string(i), i == 0 ? "Z1(delta_0) = (1 - q^{n+1} x y^n) / ((1 - qx)(1 - q^n y^n)(1 - q^{n+1} x^n y^n))"
                                                                       : "Z1(delta_i) = (q^i - q^{i+1} x) y^i / ((1 - qx)(1 - q^n y^n)(1 - q^{n+1} x^n y^n))",
                                delta_part(g, i, n), expand(forms_.z1_delta(i), J, K)));
      sum = sum + forms_.z1_delta(i);
    }
    out.push_back(rat_record("z1_delta_sum", "sum_i Z1(delta_i) = Z1", sum, forms_.z1()));
    return out;
  }

  std::vector<CheckResult> z2() {
    auto& inst = instance();
    const int J = cfg_.J, K = cfg_.K, n = static_cast<int>(cfg_.n);
    const Grid g = z2_grid(inst, J, K);
    std::vector<CheckResult> out;
    out.push_back(grid_record("z2_closed_form",
                              "Z2 = (1 - q^{3n/2} x^{n-1} y^n + sum_i tau(eps^i)(q^{i-1+i/2} x^{i-1} y^i - q^{3i/2} x^i y^i)) / "
                              "((1 - qx)(1 - q^{n/2+1} y^n)(1 - q^{3n/2} x^n y^n))",
                              g, expand(forms_.z2(), J, K)));
    for (int i = 0; i < n; ++i)
      out.push_back(grid_record("z2_delta_" + std::to_string(i), "Z2(delta_i) = numerator terms with y-degree i mod n over the Z2 denominator",
                                delta_part(g, i, n), expand(forms_.z2_delta(i), J, K)));
    return out;
  }

  /// Z1(s,w; delta_i) against Z2(1-s, w+s-1/2; delta_i) with the printed prefactors.
  std::vector<CheckResult> thm11() {
    std::vector<CheckResult> out;
    for (int i = 0; i < static_cast<int>(cfg_.n); ++i) {
      const Rat rhs = forms_.fe_factor(i, true) * forms_.dual(forms_.z2_delta(i));
      out.push_back(rat_record("z_functional_equation_" + std::to_string(i),
                               i == 0 ? "Z1(s,w;delta_0) = q^{2s-1} (1-q^{-s})/(1-q^{s-1}) Z2(1-s, w+s-1/2; delta_0)"
                                      : "Z1(s,w;delta_i) = q^{2s-1} q^{1/2-s} conj tau(eps^i)/sqrt q Z2(1-s, w+s-1/2; delta_i)",
                               forms_.z1_delta(i), rhs));
    }
    return out;
  }

  // ---- prime parts ------------------------------------------------------

  std::vector<Poly> small_primes() const {
    std::vector<Poly> ps;
    for (int k = 1; k <= 2; ++k)
      for (const Poly& p : enumerate_monic(field_, k))
        if (is_irreducible(field_, p)) ps.push_back(p);
    return ps;
  }

  std::vector<CheckResult> pparts() {
    const int n = static_cast<int>(cfg_.n);
    const int T = 2 * n;
    ResidueTables tables(ctx_);
    std::vector<CheckResult> out;
    for (int deg = 1; deg <= 2; ++deg) {
      bool h1_ok = true, h2_ok = true, delta_ok = true, chi_ok = true, abs_ok = true, collapse_ok = true;
      json bad = json::array();
      long long primes = 0;
      for (const Poly& p : small_primes()) {
        if (p.degree() != deg) continue;
        ++primes;
        const PrimeValues pv = prime_values(ctx_, p, &tables);
        const PrimePartGrids hg = h_grids(ctx_, p, T, T, &tables);
        const bool a = hg.h1 == expand(evaluate(formal_.h1(), pv.v, pv.G), T, T);
        const bool b = hg.h2 == expand(evaluate(formal_.h2(), pv.v, pv.G), T, T);
        bool c = true;
        for (int i = 0; i < n; ++i) {
          c = c && delta_part(hg.h1, i, n) == expand(evaluate(formal_.h1_delta(i), pv.v, pv.G), T, T);
          c = c && delta_part(hg.h2, i, n) == expand(evaluate(formal_.h2_delta(i), pv.v, pv.G), T, T);
        }
        const CycNum norm(static_cast<long long>(ipow(cfg_.q, static_cast<unsigned>(deg))));
        bool ab = abs_square(pv.G[0]) == norm;
        bool col = true;
        for (int e = 1; e <= T; ++e) {
          if (e % n == 0) continue;
          const CycNum lhs = gauss_g(ctx_, Poly::one(), 1, pow(field_, p, static_cast<unsigned>(e)), &tables);
          col = col && lhs == pv.G[static_cast<std::size_t>(e % n - 1)];
        }
        h1_ok = h1_ok && a;
        h2_ok = h2_ok && b;
        delta_ok = delta_ok && c;
        chi_ok = chi_ok && hg.chi_factor_trivial;
        abs_ok = abs_ok && ab;
        collapse_ok = collapse_ok && col;
        if (!(a && b && c && hg.chi_factor_trivial && ab && col) && bad.size() < 5) bad.push_back(to_string(p));
      }
      const std::string suffix = "_deg" + std::to_string(deg);
      const json lhs = {{"primes", primes}};
      const json rhs = {{"failing_primes", bad}};
      out.push_back(record("h1_closed_form" + suffix, "H1 = (1 - XY) / ((1 - X)(1 - Y)(1 - |p|^{n-1} X^n Y^n))", T, T, h1_ok, lhs, rhs));
      out.push_back(record("h2_closed_form" + suffix,
                           "H2 = (1 - |p|^{n/2-1} X^{n-1} Y^n + sum_i g(1,eps^i,chi_p)/sqrt|p| |p|^{(i-1)/2} X^{i-1} Y^i (1 - X)) / "
                           "((1 - X)(1 - |p|^{n/2-1} Y^n)(1 - |p|^{n/2} X^n Y^n))",
                           T, T, h2_ok, lhs, rhs));
      out.push_back(record("h_delta_closed_forms" + suffix, "H1(delta_i), H2(delta_i) closed forms by Y-degree mod n", T, T, delta_ok, lhs, rhs));
      out.push_back(record("h2_character_factor" + suffix, "conj chi_{p^k}(p^j hat) = 1 for j, k <= 2n", T, T, chi_ok, lhs, rhs));
      out.push_back(record("gauss_abs_square" + suffix, "|g(1, eps, chi_p)|^2 = |p|", 0, 0, abs_ok, lhs, rhs));
      out.push_back(record("gauss_prime_power_collapse" + suffix, "g(1, eps, chi_{p^i}) = g(1, eps^i, chi_p)", 0, T, collapse_ok, lhs, rhs));
    }
    return out;
  }

  /// H1(delta_i) against H2(delta_i) at (v^{-2} X^{-1}, v X Y), as formal identities.
  std::vector<CheckResult> thm32() {
    std::vector<CheckResult> out;
    for (int i = 0; i < static_cast<int>(cfg_.n); ++i) {
      FormalRat lhs, rhs;
      if (i == 0) {
        // (1 - |p|^{-(1-s)}) / (1 - |p|^{-s}) = (1 - v^{-2} X^{-1}) / (1 - X)
        const FormalRat pre{formal_.one_minus_v(-2, -1, 0), formal_.one_minus_v(0, 1, 0)};
        lhs = formal_.h1_delta(0);
        rhs = pre * formal_.dual(formal_.h2_delta(0));
      } else {
        // sqrt|p| / G_i |p|^{s-1/2} = X^{-1} / G_i, cross-multiplied by G_i
        lhs = FormalRat{formal_.m(FormalScalar::G(i), 0, 0), FormalPoly(1)} * formal_.h1_delta(i);
        rhs = FormalRat{formal_.v_term(0, -1, 0), FormalPoly(1)} * formal_.dual(formal_.h2_delta(i));
      }
      out.push_back(formal_record("h_functional_equation_" + std::to_string(i),
                                  i == 0 ? "H1(delta_0) = (1 - |p|^{-(1-s)})/(1 - |p|^{-s}) H2(|p|^{-(1-s)}, |p|^{-(w+s-1/2)}; delta_0)"
                                         : "G_i H1(delta_i) = |p|^{1/2} |p|^{s-1/2} H2(|p|^{-(1-s)}, |p|^{-(w+s-1/2)}; delta_i)",
                                  lhs, rhs));
    }
    return out;
  }

  /**
   * X -> qx, Y -> qy, v -> q^{-1/2}, and the normalized Gauss sum
   * G_i / sqrt|p| -> tau(eps^i) / sqrt q, i.e. G_i -> tau(eps^i) / q.
   */
  Rat to_global(const FormalRat& r) const {
    std::vector<CycNum> G;
    for (int i = 1; i < static_cast<int>(cfg_.n); ++i) G.push_back(forms_.tau_i(i) * forms_.qh(-2));
    const CycNum v = forms_.qh(-1);
    const auto phi = [&](const FormalScalar& s) { return s.eval(v, G); };
    const CycNum q(static_cast<long long>(cfg_.q));
    return substitute(r, LaurentMonomial<CycNum>{q, 1, 0}, LaurentMonomial<CycNum>{q, 0, 1}, phi);
  }

  std::vector<CheckResult> correspondence() {
    std::vector<CheckResult> out;
    const std::string map = " under X -> qx, Y -> qy, |p| -> 1/q, g(1,eps^i,chi_p)/sqrt|p| -> tau(eps^i)/sqrt q";
    out.push_back(rat_record("h1_to_z1", "H1 -> Z1" + map, to_global(formal_.h1()), forms_.z1()));
    out.push_back(rat_record("h2_to_z2", "H2 -> Z2" + map, to_global(formal_.h2()), forms_.z2()));
    for (int i = 0; i < static_cast<int>(cfg_.n); ++i) {
      out.push_back(rat_record("h1_delta_to_z1_delta_" + std::to_string(i), "H1(delta_i) -> Z1(delta_i)" + map, to_global(formal_.h1_delta(i)),
                               forms_.z1_delta(i)));
      out.push_back(rat_record("h2_delta_to_z2_delta_" + std::to_string(i), "H2(delta_i) -> Z2(delta_i)" + map, to_global(formal_.h2_delta(i)),
                               forms_.z2_delta(i)));
    }
    return out;
  }

  std::vector<CheckResult> prop41() {
    const int n = static_cast<int>(cfg_.n);
    const int T = 2 * n;
    ResidueTables tables(ctx_);
    std::vector<CheckResult> out;
    for (int deg = 1; deg <= 2; ++deg) {
      bool ok = true;
      long long primes = 0;
      json bad = json::array();
      for (const Poly& p : small_primes()) {
        if (p.degree() != deg) continue;
        ++primes;
        const PrimeValues pv = prime_values(ctx_, p, &tables);
        const bool good = h2_prime_grid(ctx_, pv, T, T) == h_grids(ctx_, p, T, T, &tables).h2;
        ok = ok && good;
        if (!good && bad.size() < 5) bad.push_back(to_string(p));
      }
      out.push_back(record("h2_from_q_deg" + std::to_string(deg),
                           "H2' = (1-X)^{-1} sum Q(s;p^{nk}) Y^{nk} + sum_i G_i/sqrt|p| sum Q(s;p^{nk+i}) Y^{nk+i} equals H2", T, T, ok,
                           {{"primes", primes}}, {{"failing_primes", bad}}));
    }
    auto& inst = instance();
    const int J = std::min(cfg_.J, 3), K = std::min(cfg_.K, 3);
    out.push_back(grid_record("z2_from_q",
                              "sum over all monic m of g(1,eps,chi_{m0})/sqrt|m~| L(s, conj chi_{m0}) Q(s;m) |m|^{-w} equals Z2",
                              z2_prime_grid(inst, J, K, false), z2_grid(inst, J, K)));
    return out;
  }

  // ---- convolution assembly ---------------------------------------------

  std::vector<CheckResult> section6() {
    auto& inst = instance();
    const int T = std::min(cfg_.J, cfg_.K);
    const int n = static_cast<int>(cfg_.n);
    std::vector<CheckResult> out;
    const Grid ta = expand(forms_.t_a(), T, T);
    out.push_back(grid_record("t_a_closed_form", "sum_{m0=1} sum_d a(d,m) |m|^{-w} |d|^{-s} = (1 - qxy^n)/((1 - qx)(1 - qy^n)(1 - q^n x^n y^n))",
                              t_a_grid(inst, T, T), ta));
    const Grid za = hadamard_star(ta, expand(ClosedForms::k_a(), T, T));
    const Grid zb = hadamard_star(ta, expand(ClosedForms::k_b(), T, T));
    out.push_back(grid_record("z_a_convolution", "T~_a * 1/((1-x)(1-xy)) = 1/((1 - q^{n+1} x^n y^n)(1 - qx))", za, expand(forms_.z_a(), T, T)));
    out.push_back(grid_record("z_b_convolution", "T~_a * 1/(1-xy) = 1/(1 - q^{n+1} x^n y^n)", zb, expand(forms_.z_b(), T, T)));
    const Grid z1g = z1_grid(inst, T, T);
    out.push_back(grid_record("z_a_from_enumeration", "sum over deg d >= deg m of chi_{m0}(d^) a(d,m) equals Z_a",
                              mask(z1g, [](int j, int k) { return j >= k; }), za));
    out.push_back(grid_record("z_b_from_enumeration", "sum over deg d = deg m of chi_{m0}(d^) a(d,m) equals Z_b",
                              mask(z1g, [](int j, int k) { return j == k; }), zb));
    out.push_back(grid_record("z1_assembly", "Z1(s,w) = Z_a(s,w) + Z_a(w,s) - Z_b(s,w)", za + za.transposed() - zb, z1g));
    const int sym_deg = T;
    const auto [checked, bad] = swap_symmetry(inst, sym_deg);
    out.push_back(record("z_swap_symmetry", "chi_{m0}(d^) a(d,m) = chi_{d0}(m^) a(m,d) for deg m = deg d", sym_deg, sym_deg, bad == 0,
                         {{"pairs", checked}}, {{"mismatches", bad}}));
    Rat sum{RatPoly(), RatPoly(1)};
    for (int i = 0; i < n; ++i) sum = sum + forms_.z1_delta(i);
    out.push_back(rat_record("z1_delta_forms_sum", "sum_i Z1(delta_i) closed forms = Z1", sum, forms_.z1()));
    // the inverse direction: Z2(delta_i) from Z1 at the dual point with tau instead of conj tau
    Rat z2sum{RatPoly(), RatPoly(1)};
    for (int i = 0; i < n; ++i) z2sum = z2sum + forms_.fe_factor(i, false) * forms_.dual(forms_.z1_delta(i));
    out.push_back(rat_record("z2_from_z1", "sum_i prefactor_i Z1(1-s, w+s-1/2; delta_i) with tau(eps^i) = Z2", z2sum, forms_.z2()));
    return out;
  }

 private:
  CheckResult record(std::string name, std::string ref, int J, int K, bool pass, json lhs, json rhs) const {
    return {std::move(name), std::move(ref), cfg_.q, cfg_.n, J, K, pass, std::move(lhs), std::move(rhs)};
  }
  CheckResult grid_record(std::string name, std::string ref, const Grid& a, const Grid& b) const {
    return record(std::move(name), std::move(ref), a.J(), a.K(), a == b, to_json(a, ctx_.cyc()), to_json(b, ctx_.cyc()));
  }
  CheckResult rat_record(std::string name, std::string ref, const Rat& a, const Rat& b) const {
    return record(std::move(name), std::move(ref), 0, 0, a == b, to_json(a.normalized(), ctx_.cyc()), to_json(b.normalized(), ctx_.cyc()));
  }
  CheckResult formal_record(std::string name, std::string ref, const FormalRat& a, const FormalRat& b) const {
    return record(std::move(name), std::move(ref), 0, 0, a == b, to_json(a.normalized(), ctx_.cyc()), to_json(b.normalized(), ctx_.cyc()));
  }

  VerifyConfig cfg_;
  FieldCtx field_;
  CharCtx ctx_;
  ClosedForms forms_;
  FormalPrimeParts formal_;
  std::unique_ptr<MdsInstance> inst_;
};

}  // namespace ffmds
