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

// Library tour over F_5[t] with quadratic characters: an L-function, a Gauss
// sum, the first series by enumeration against its closed form, and one
// functional equation checked as an identity of rational functions.

#include <iostream>

#include "ffmds/verify.hpp"

int main() {
  using namespace ffmds;
  const CharCtx ctx(FieldCtx(5, 2));
  const Poly m = parse_poly(ctx.field(), "t^2+t");
  std::cout << "L(s, chi_m) for m = " << to_string(m) << ": " << to_string(lfun(ctx, m).num) << "\n";
  std::cout << "g(1, eps, chi_t) = " << to_string(gauss_g(ctx, Poly::one(), 1, parse_poly(ctx.field(), "t"))) << "\n\n";

  MdsInstance inst(ctx.field(), 3);
  ClosedForms forms(inst.ctx());
  const Grid brute = z1_grid(inst, 3, 3);
  std::cout << "Z1 by enumeration, x-degree down, y-degree across:\n" << to_pretty(brute);
  std::cout << "equals the closed form: " << (brute == expand(forms.z1(), 3, 3) ? "yes" : "no") << "\n";

  const Rat rhs = forms.fe_factor(1, true) * forms.dual(forms.z2_delta(1));
  std::cout << "Z1(delta_1) vs prefactor * Z2(delta_1) at the dual point: " << (forms.z1_delta(1) == rhs ? "equal" : "different") << "\n";
  return 0;
}
