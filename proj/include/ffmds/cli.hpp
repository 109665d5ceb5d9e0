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
 * @file cli.hpp
 * @brief The `ffmds` command line: `verify` runs suites, `tables` prints objects.
 *
 * Exit codes: 0 all checks pass, 1 some check failed, 2 usage error.
 */

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "verify.hpp"

namespace ffmds {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Largest jmax/kmax accepted without --unsafe.
inline constexpr int kMaxTruncation = 6;
/// Largest number of (d, m) pairs a run may enumerate without --unsafe.
inline constexpr double kPairBudget = 2.0e8;

struct RunConfig {
  std::uint32_t q = 5;
  std::uint32_t n = 2;
  int jmax = 4;
  int kmax = 4;
  std::string suite = "all";
  Format format = Format::json;
  std::optional<Fq> generator;
  unsigned threads = default_threads();
  std::string out;
  bool unsafe = false;
};

/// Number of monic polynomials of degree <= d.
inline double monic_count(std::uint32_t q, int d) {
  double s = 0, pw = 1;
  for (int k = 0; k <= d; ++k, pw *= q) s += pw;
  return s;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Throws UsageError when the run would exceed the caps.
inline void check_caps(const RunConfig& c, bool sweeps) {
  if (c.jmax < 0 || c.kmax < 0) throw UsageError("jmax and kmax must be nonnegative");
  if (c.unsafe) return;
  if (c.jmax > kMaxTruncation || c.kmax > kMaxTruncation)
    throw UsageError("jmax and kmax are capped at " + std::to_string(kMaxTruncation) + " (pass --unsafe to override)");
  double pairs = monic_count(c.q, c.jmax) * monic_count(c.q, c.kmax);
  if (sweeps) pairs += monic_count(c.q, 4) * monic_count(c.q, 4);
  if (pairs > kPairBudget) {
    std::ostringstream os;
    os << "about " << pairs << " (d, m) pairs exceeds the budget of " << kPairBudget << " (pass --unsafe to override)";
    throw UsageError(os.str());
  }
}

inline FieldCtx make_field(const RunConfig& c) {
  try {
    return FieldCtx(c.q, c.n, c.generator);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline Poly parse_arg_poly(const FieldCtx& f, const std::string& text, const char* flag) {
  if (text.empty()) throw UsageError(std::string("this table needs ") + flag);
  Poly p;
  try {
    p = parse_poly(f, text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("cannot parse ") + flag + " '" + text + "': " + e.what());
  }
  if (!p.is_monic()) throw UsageError(std::string(flag) + " must be monic");
  return p;
}

inline json run_header(const RunConfig& c, const FieldCtx& f, const std::string& command) {
  return {{"command", command}, {"q", c.q}, {"n", c.n}, {"generator", f.generator()}, {"jmax", c.jmax}, {"kmax", c.kmax}, {"suite", c.suite}};
}

/// Opens the destination: --out, else $FFMDS_OUT/<default_name>, else `fallback`.
class Sink {
 public:
  Sink(const std::string& out, const std::string& default_name, std::ostream& fallback) : os_(&fallback) {
    std::string path = out;
    if (path.empty())
      if (const char* dir = std::getenv("FFMDS_OUT"); dir && *dir) path = (std::filesystem::path(dir) / default_name).string();
    if (path.empty()) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw UsageError("cannot open output file " + path);
    os_ = &file_;
    path_ = path;
  }
  std::ostream& stream() { return *os_; }
  const std::string& path() const { return path_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
  std::string path_;
};

template <class S>
void write_grid(std::ostream& os, const SeriesGrid<S>& g, const CycCtxPtr& cyc, Format fmt) {
  switch (fmt) {
    case Format::json:
      os << to_json(g, cyc).dump() << '\n';
      break;
    case Format::csv:
      os << to_csv(g);
      break;
    case Format::pretty:
      os << to_pretty(g);
      break;
  }
}

template <class S>
void write_rat(std::ostream& os, const BiRat<S>& r, const CycCtxPtr& cyc, Format fmt) {
  const BiRat<S> nr = r.normalized();
  switch (fmt) {
    case Format::json:
      os << to_json(nr, cyc).dump() << '\n';
      break;
    case Format::csv:
      os << "numerator,denominator\n" << csv_field(to_string(nr.num)) << ',' << csv_field(to_string(nr.den)) << '\n';
      break;
    case Format::pretty:
      os << "(" << to_string(nr.num) << ") / (" << to_string(nr.den) << ")\n";
      break;
  }
}

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
  const bool known = c.suite == "all" || std::find(suite_names().begin(), suite_names().end(), c.suite) != suite_names().end();
  if (!known) throw UsageError("unknown suite '" + c.suite + "'");
  const FieldCtx f = make_field(c);
  check_caps(c, true);
  VerifyConfig vc;
  vc.q = c.q;
  vc.n = c.n;
  vc.J = c.jmax;
  vc.K = c.kmax;
  vc.generator = f.generator();
  vc.threads = c.threads;
  Verifier v(vc);
  const auto results = v.run(c.suite);
  const char* ext = c.format == Format::json ? "json" : c.format == Format::csv ? "csv" : "txt";
  Sink sink(c.out, "verify-q" + std::to_string(c.q) + "-n" + std::to_string(c.n) + "-" + c.suite + "." + ext, out);
  write_report(sink.stream(), results, run_header(c, f, "verify"), c.format);
  if (!sink.path().empty()) out << (all_pass(results) ? "pass" : "fail") << ": report written to " << sink.path() << '\n';
  return all_pass(results) ? kExitPass : kExitFail;
}

inline int cmd_tables(const RunConfig& c, const std::string& what, const std::string& m_text, const std::string& p_text, bool closed,
                      std::ostream& out) {
  const FieldCtx f = make_field(c);
  check_caps(c, false);
  const CharCtx ctx(f);
  const char* ext = c.format == Format::json ? "json" : c.format == Format::csv ? "csv" : "txt";
  Sink sink(c.out, "tables-" + what + "-q" + std::to_string(c.q) + "-n" + std::to_string(c.n) + "." + ext, out);
  std::ostream& os = sink.stream();

  if (what == "lfun") {
    const Poly m = parse_arg_poly(f, m_text, "--m");
    const UniRat L = lfun(ctx, m);
    const bool poly = L.den == UniPoly(1);
    switch (c.format) {
      case Format::json: {
        json coeffs = json::array();
        for (int k = 0; k <= L.num.degree(); ++k) coeffs.push_back(to_json(L.num.coeff(k), ctx.cyc()));
        json den = json::array();
        for (int k = 0; k <= L.den.degree(); ++k) den.push_back(to_json(L.den.coeff(k), ctx.cyc()));
        os << json{{"m", to_string(m)}, {"numerator", coeffs}, {"denominator", den}}.dump() << '\n';
        break;
      }
      case Format::csv:
        os << "numerator,denominator\n" << csv_field(to_string(L.num)) << ',' << csv_field(to_string(L.den)) << '\n';
        break;
      case Format::pretty:
        os << (poly ? to_string(L.num) : "(" + to_string(L.num) + ") / (" + to_string(L.den) + ")") << '\n';
        break;
    }
  } else if (what == "gauss") {
    const Poly m = parse_arg_poly(f, m_text, "--m");
    const CycNum g = gauss_g(ctx, Poly::one(), 1, m);
    if (c.format == Format::csv)
      os << "m,value\n" << csv_field(to_string(m)) << ',' << csv_field(to_string(g)) << '\n';
    else if (c.format == Format::pretty)
      os << to_string(g) << '\n';
    else
      os << to_json(g, ctx.cyc()).dump() << '\n';
  } else if (what == "z1" || what == "z2") {
    if (closed) {
      ClosedForms forms(ctx);
      write_rat(os, what == "z1" ? forms.z1() : forms.z2(), ctx.cyc(), c.format);
    } else {
      MdsInstance inst(f, std::max({c.jmax, c.kmax, 1}), c.threads);
      write_grid(os, what == "z1" ? z1_grid(inst, c.jmax, c.kmax) : z2_grid(inst, c.jmax, c.kmax), ctx.cyc(), c.format);
    }
  } else if (what == "h1" || what == "h2") {
    FormalPrimeParts fp(static_cast<int>(c.n));
    const FormalRat form = what == "h1" ? fp.h1() : fp.h2();
    if (p_text.empty()) {
      if (!closed) throw UsageError("the direct-sum grid needs --p");
      write_rat(os, form, ctx.cyc(), c.format);
    } else {
      const Poly p = parse_arg_poly(f, p_text, "--p");
      if (!is_irreducible(f, p)) throw UsageError("--p must be irreducible");
      if (closed) {
        const PrimeValues pv = prime_values(ctx, p);
        write_rat(os, evaluate(form, pv.v, pv.G), ctx.cyc(), c.format);
      } else {
        const PrimePartGrids g = h_grids(ctx, p, c.jmax, c.kmax);
        write_grid(os, what == "h1" ? g.h1 : g.h2, ctx.cyc(), c.format);
      }
    }
  } else {
    throw UsageError("unknown table '" + what + "'");
  }
  if (!sink.path().empty()) out << "written to " << sink.path() << '\n';
  return kExitPass;
}

/// Parses argv and runs the chosen command. Everything goes to `out` and `err`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of double Dirichlet series identities over F_q[t]", "ffmds"};
  app.require_subcommand(1);
  RunConfig c;
  std::string format = "json", m_text, p_text, what;
  bool closed = false;
  long long generator = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--q", c.q, "field size, a prime with q = 1 mod 2n")->capture_default_str();
    sub->add_option("--n", c.n, "character order, at least 2")->capture_default_str();
    sub->add_option("--jmax", c.jmax, "largest x-degree")->capture_default_str();
    sub->add_option("--kmax", c.kmax, "largest y-degree")->capture_default_str();
    sub->add_option("--format", format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}))->capture_default_str();
    sub->add_option("--generator", generator, "primitive root of F_q used to fix the character");
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--out", c.out, "output file (default: $FFMDS_OUT/<name> or stdout)");
    sub->add_flag("--unsafe", c.unsafe, "lift the truncation and enumeration caps");
  };

  CLI::App* verify = app.add_subcommand("verify", "run verification suites and write a report");
  common(verify);
  verify->add_option("--suite", c.suite, "one of: all, reciprocity, vanishing, lfe, prop21, z1, z2, thm11, pparts, thm32, correspondence, prop41, section6")
      ->capture_default_str();

  CLI::App* tables = app.add_subcommand("tables", "print an L-function, Gauss sum, series grid or closed form");
  common(tables);
  tables->add_option("what", what, "lfun, gauss, z1, z2, h1 or h2")->required()->check(CLI::IsMember({"lfun", "gauss", "z1", "z2", "h1", "h2"}));
  tables->add_option("--m", m_text, "monic modulus, e.g. \"t^2+t\"");
  tables->add_option("--p", p_text, "monic irreducible for h1/h2");
  tables->add_flag("--closed", closed, "print the closed form instead of the enumerated grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitPass : kExitUsage;
  }

  c.format = format == "csv" ? Format::csv : format == "pretty" ? Format::pretty : Format::json;
  if (generator != 0 || verify->count("--generator") || tables->count("--generator")) {
    if (generator <= 0 || generator >= static_cast<long long>(c.q)) {
      err << "error: --generator must lie in [1, q)\n";
      return kExitUsage;
    }
    c.generator = static_cast<Fq>(generator);
  }
  try {
    if (verify->parsed()) return cmd_verify(c, out);
    return cmd_tables(c, what, m_text, p_text, closed, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
}

}  // namespace ffmds
