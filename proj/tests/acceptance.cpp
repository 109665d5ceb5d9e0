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

// Acceptance run: one PASS/FAIL line per criterion, over (q, n) = (5, 2) and
// (7, 3), with exact equality everywhere. Exits nonzero if any line fails.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "ffmds/verify.hpp"

using namespace ffmds;

namespace {

struct Criterion {
  std::string id;
  std::string what;
  std::vector<CheckResult> results;
  double seconds = 0;
};

VerifyConfig config(std::uint32_t q, std::uint32_t n, int T) {
  VerifyConfig c;
  c.q = q;
  c.n = n;
  c.J = c.K = T;
  return c;
}

template <class F>
void add(Criterion& c, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  auto rs = f();
  c.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.results.insert(c.results.end(), rs.begin(), rs.end());
}

std::vector<CheckResult> only(std::vector<CheckResult> rs, const std::vector<std::string>& prefixes) {
  std::vector<CheckResult> out;
  for (auto& r : rs)
    for (const auto& p : prefixes)
      if (r.check.rfind(p, 0) == 0) {
        out.push_back(std::move(r));
        break;
      }
  return out;
}

}  // namespace

int main() {
  std::vector<Criterion> cs{
      {"AC1", "Z1 enumeration equals its closed form at (4,4)", {}},
      {"AC2", "Z2 enumeration with exact Gauss sums equals its closed form at (3,3)", {}},
      {"AC3", "global functional equations for every delta_i", {}},
      {"AC4", "prime-part grids equal closed forms for deg p <= 2; formal prime-part functional equations", {}},
      {"AC5", "prime-part closed forms map onto the global closed forms", {}},
      {"AC6", "L(s, chi^_m) = L(s, chi_{m0}) P(s;m) for deg m <= 4; H2' = H2; Z2' = Z2 at (3,3)", {}},
      {"AC7", "L-function functional equations and degree bound for n-th power free m, deg m <= 4", {}},
      {"AC8", "reciprocity, vanishing sums, |tau|^2 = q, |g|^2 = |p|", {}},
      {"AC9", "restricted-sum pipeline at (4,4) and delta_i forms summing to Z1", {}},
  };

  const std::pair<std::uint32_t, std::uint32_t> configs[] = {{5, 2}, {7, 3}};
  for (const auto& [q, n] : configs) {
    Verifier big(config(q, n, 4));
    Verifier small(config(q, n, 3));
    add(cs[0], [&] { return only(big.z1(), {"z1_closed_form"}); });
    add(cs[1], [&] { return small.z2(); });
    add(cs[2], [&] { return big.thm11(); });
    add(cs[3], [&] {
      auto rs = only(big.pparts(), {"h1_closed_form", "h2_closed_form", "h_delta_closed_forms", "h2_character_factor"});
      auto fe = big.thm32();
      rs.insert(rs.end(), fe.begin(), fe.end());
      return rs;
    });
    add(cs[4], [&] { return big.correspondence(); });
    add(cs[5], [&] {
      std::vector<CheckResult> rs{big.prop21()};
      auto p = small.prop41();
      rs.insert(rs.end(), p.begin(), p.end());
      return rs;
    });
    add(cs[6], [&] { return only(big.lfe(), {"lfun_fe_incomplete", "lfun_fe_complete", "lfun_degree_bound"}); });
    add(cs[7], [&] {
      std::vector<CheckResult> rs{big.reciprocity(), big.vanishing()};
      auto t = only(big.lfe(), {"tau_abs_square"});
      auto g = only(big.pparts(), {"gauss_abs_square"});
      rs.insert(rs.end(), t.begin(), t.end());
      rs.insert(rs.end(), g.begin(), g.end());
      return rs;
    });
    add(cs[8], [&] { return big.section6(); });
  }

  bool ok = true;
  for (const auto& c : cs) {
    const bool pass = all_pass(c.results);
    ok = ok && pass;
    std::cout << c.id << ' ' << (pass ? "PASS" : "FAIL") << "  " << c.what << "  [" << c.results.size() << " checks, q=5 n=2 and q=7 n=3, "
              << static_cast<int>(c.seconds + 0.5) << "s]";
    for (const auto& r : c.results)
      if (!r.pass) std::cout << "  failed: " << r.check << " q=" << r.q << " n=" << r.n;
    std::cout << '\n';
  }
  return ok ? 0 : 1;
}
