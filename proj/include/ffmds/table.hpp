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

// Precomputed data for bulk enumeration: every monic up to a degree bound with
// its factorization into numbered primes, and (prime/prime) symbols.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "chars.hpp"
#include "ffpoly.hpp"

namespace ffmds {

struct PrimePower {
  std::uint32_t prime;  // index into MonicTable::primes()
  int exp;
};

/**
 * All monic polynomials of degree <= max_deg, indexed by degree then code.
 * Factorizations are built by a sieve: when a prime p is found, every known
 * monic a whose primes all precede p produces a p^e for each admissible e.
 */
class MonicTable {
 public:
  MonicTable(const FieldCtx& f, int max_deg) : f_(f), max_deg_(max_deg) {
    if (max_deg < 0) throw std::invalid_argument("negative table degree");
    offset_.push_back(0);
    for (int k = 0; k <= max_deg; ++k) offset_.push_back(offset_.back() + f.norm(k));
    const std::size_t total = offset_.back();
    std::vector<std::vector<PrimePower>> facs(total);
    std::vector<char> known(total, 0);
    known[0] = 1;  // the monic 1
    // known monics bucketed by degree, so a new prime of degree k only visits degrees <= max_deg - k
    std::vector<std::vector<std::size_t>> by_deg(static_cast<std::size_t>(max_deg) + 1);
    by_deg[0].push_back(0);
    for (int k = 1; k <= max_deg; ++k) {
      for (std::size_t idx = offset_[static_cast<std::size_t>(k)]; idx < offset_[static_cast<std::size_t>(k) + 1]; ++idx) {
        if (known[idx]) continue;
        const auto pid = static_cast<std::uint32_t>(primes_.size());
        const Poly p = poly(idx);
        primes_.push_back(p);
        prime_index_.push_back(idx);
        std::vector<std::size_t> before(static_cast<std::size_t>(max_deg - k) + 1);
        for (std::size_t da = 0; da < before.size(); ++da) before[da] = by_deg[da].size();
        for (std::size_t da = 0; da < before.size(); ++da) {
          for (std::size_t t = 0; t < before[da]; ++t) {
            const std::size_t a = by_deg[da][t];
            Poly c = poly(a);
            int deg = static_cast<int>(da);
            for (int e = 1; deg + k <= max_deg; ++e) {
              c = mul(f_, c, p);
              deg += k;
              const std::size_t ci = index(c);
              if (known[ci]) throw std::logic_error("monic sieve produced a product twice");
              known[ci] = 1;
              facs[ci] = facs[a];
              facs[ci].push_back({pid, e});
              by_deg[static_cast<std::size_t>(deg)].push_back(ci);
            }
          }
        }
      }
    }
    fac_off_.reserve(total + 1);
    fac_off_.push_back(0);
    for (auto& v : facs) {
      flat_.insert(flat_.end(), v.begin(), v.end());
      fac_off_.push_back(flat_.size());
    }
  }

  const FieldCtx& field() const { return f_; }
  int max_degree() const { return max_deg_; }
  std::size_t size() const { return offset_.back(); }
  std::size_t begin(int deg) const { return offset_[static_cast<std::size_t>(deg)]; }
  std::size_t end(int deg) const { return offset_[static_cast<std::size_t>(deg) + 1]; }
  std::size_t index(const Poly& m) const {
    if (!m.is_monic() || m.degree() > max_deg_) throw std::out_of_range("polynomial outside the monic table");
    return offset_[static_cast<std::size_t>(m.degree())] + monic_code(f_, m);
  }
  int degree(std::size_t idx) const {
    int k = 0;
    while (offset_[static_cast<std::size_t>(k) + 1] <= idx) ++k;
    return k;
  }
  Poly poly(std::size_t idx) const {
    const int k = degree(idx);
    return monic_from_code(f_, k, idx - offset_[static_cast<std::size_t>(k)]);
  }
  std::span<const PrimePower> factors(std::size_t idx) const {
    return {flat_.data() + fac_off_[idx], fac_off_[idx + 1] - fac_off_[idx]};
  }
  const std::vector<Poly>& primes() const { return primes_; }
  std::size_t prime_table_index(std::uint32_t pid) const { return prime_index_[pid]; }

  /// Factorization in the ffpoly representation.
  Factorization factorization(std::size_t idx) const {
    Factorization out;
    for (const auto& pp : factors(idx)) out.factors.emplace_back(primes_[pp.prime], pp.exp);
    return out;
  }

 private:
  FieldCtx f_;
  int max_deg_;
  std::vector<std::size_t> offset_;
  std::vector<PrimePower> flat_;
  std::vector<std::size_t> fac_off_;
  std::vector<Poly> primes_;
  std::vector<std::size_t> prime_index_;
};

/**
 * (p / pi) for primes of a MonicTable, filled one column (fixed pi) at a
 * time from the residue tables. Columns must be prepared before concurrent
 * reads.
 */
class PrimeSymbols {
 public:
  PrimeSymbols(const CharCtx& ctx, const MonicTable& table) : ctx_(&ctx), table_(&table), tables_(ctx) {}

  void prepare(std::uint32_t pi) {
    if (pi >= cols_.size()) cols_.resize(table_->primes().size());
    auto& col = cols_[pi];
    if (!col.empty()) return;
    const Poly& modulus = table_->primes()[pi];
    const auto& tab = tables_.table(modulus);
    const auto& f = ctx_->field();
    col.resize(table_->primes().size());
    for (std::size_t p = 0; p < col.size(); ++p) {
      const Poly r = mod(f, table_->primes()[p], modulus);
      col[p] = tab[residue_code(f, r)];
    }
  }
  /// Prepare every column for primes of degree <= deg.
  void prepare_up_to(int deg) {
    for (std::uint32_t pi = 0; pi < table_->primes().size(); ++pi)
      if (table_->primes()[pi].degree() <= deg) prepare(pi);
  }

  /// Exponent of (p / pi) with respect to omega, or -1 when p = pi.
  int operator()(std::uint32_t p, std::uint32_t pi) const {
    if (pi >= cols_.size() || cols_[pi].empty()) throw std::logic_error("prime symbol column not prepared");
    return cols_[pi][p];
  }

  ResidueTables& residue_tables() { return tables_; }
  const ResidueTables& residue_tables() const { return tables_; }
  const MonicTable& table() const { return *table_; }
  const CharCtx& ctx() const { return *ctx_; }

 private:
  const CharCtx* ctx_;
  const MonicTable* table_;
  ResidueTables tables_;
  std::vector<std::vector<std::int8_t>> cols_;
};

/// The n-th powerfree part of a tabulated m as (prime, exponent mod n) pairs.
inline std::vector<PrimePower> powerfree_primes(const MonicTable& t, std::size_t m, int n) {
  std::vector<PrimePower> out;
  for (const auto& pp : t.factors(m))
    if (pp.exp % n != 0) out.push_back({pp.prime, pp.exp % n});
  return out;
}

/**
 * chi_{m0}(d^) as an exponent of omega, where m0 is given by its primes with
 * exponents mod n. d^ is coprime to m0 by construction, so the value is never
 * zero.
 */
inline int chi_hat_exponent(const PrimeSymbols& sym, std::span<const PrimePower> d_factors,
                            std::span<const PrimePower> m0, int n) {
  long long v = 0;
  for (const auto& dp : d_factors) {
    bool inside = false;
    for (const auto& mp : m0) inside = inside || mp.prime == dp.prime;
    if (inside) continue;
    for (const auto& mp : m0) v += static_cast<long long>(sym(dp.prime, mp.prime)) * dp.exp * mp.exp;
  }
  return static_cast<int>(v % n);
}

/**
 * (d/m) as an exponent of omega, or -1 for zero, from the prime factors of d
 * and m. Columns for the primes of m must be prepared.
 */
inline int residue_symbol_exponent(const PrimeSymbols& sym, std::span<const PrimePower> d_factors,
                                   std::span<const PrimePower> m_factors, int n) {
  long long v = 0;
  for (const auto& mp : m_factors) {
    const int r = mp.exp % n;
    if (r == 0) continue;
    for (const auto& dp : d_factors) {
      if (dp.prime == mp.prime) return -1;
      v += static_cast<long long>(sym(dp.prime, mp.prime)) * dp.exp * r;
    }
  }
  return static_cast<int>(v % n);
}

/// Exponent of a prime in a factor list.
inline int exponent_in(std::span<const PrimePower> f, std::uint32_t prime) {
  for (const auto& pp : f)
    if (pp.prime == prime) return pp.exp;
  return 0;
}

}  // namespace ffmds
