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
 * @file report.hpp
 * @brief Verification records and their JSON, CSV and plain-text renderings.
 */

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclo.hpp"
#include "formal.hpp"
#include "series.hpp"

namespace ffmds {

using json = nlohmann::json;

/// One identity check. lhs and rhs hold both sides in exact serialized form.
struct CheckResult {
  std::string check;
  std::string ref;  // the formula being checked, written out
  unsigned q = 0;
  unsigned n = 0;
  int J = 0;
  int K = 0;
  bool pass = false;
  json lhs;
  json rhs;
};

inline json to_json(const CheckResult& r) {
  return json{{"check", r.check}, {"paper_ref", r.ref}, {"q", r.q},          {"n", r.n},    {"J", r.J},
              {"K", r.K},         {"status", r.pass ? "pass" : "fail"}, {"lhs", r.lhs}, {"rhs", r.rhs}};
}

inline bool all_pass(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

// Exact serializations of scalars, polynomials, rational functions and grids.

inline json scalar_json(const CycNum& c, const CycCtxPtr& ctx) { return to_json(c, ctx); }
inline json scalar_json(const FormalScalar& c, const CycCtxPtr&) { return to_string(c); }

template <class S>
json to_json(const BiPoly<S>& p, const CycCtxPtr& ctx) {
  json terms = json::array();
  for (const auto& [k, c] : p.terms()) terms.push_back({{"x", k.first}, {"y", k.second}, {"c", scalar_json(c, ctx)}});
  return terms;
}

template <class S>
json to_json(const BiRat<S>& r, const CycCtxPtr& ctx) {
  return {{"num", to_json(r.num, ctx)}, {"den", to_json(r.den, ctx)}};
}

template <class S>
json to_json(const SeriesGrid<S>& g, const CycCtxPtr& ctx) {
  json rows = json::array();
  for (int i = 0; i <= g.J(); ++i) {
    json row = json::array();
    for (int j = 0; j <= g.K(); ++j) row.push_back(scalar_json(g.at(i, j), ctx));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Grid as CSV: header "j,k,value" then one row per coefficient, row-major.
template <class S>
std::string to_csv(const SeriesGrid<S>& g) {
  std::ostringstream os;
  os << "j,k,value\n";
  for (int i = 0; i <= g.J(); ++i)
    for (int j = 0; j <= g.K(); ++j) os << i << ',' << j << ",\"" << to_string(g.at(i, j)) << "\"\n";
  return os.str();
}

/// Grid as aligned text, x-degree down and y-degree across.
template <class S>
std::string to_pretty(const SeriesGrid<S>& g) {
  std::vector<std::vector<std::string>> cells;
  std::size_t width = 1;
  for (int i = 0; i <= g.J(); ++i) {
    cells.emplace_back();
    for (int j = 0; j <= g.K(); ++j) {
      cells.back().push_back(to_string(g.at(i, j)));
      width = std::max(width, cells.back().back().size());
    }
  }
  std::ostringstream os;
  os << "j\\k";
  for (int j = 0; j <= g.K(); ++j) os << "  " << std::string(width - std::to_string(j).size(), ' ') << j;
  os << '\n';
  for (int i = 0; i <= g.J(); ++i) {
    os << std::string(3 - std::min<std::size_t>(3, std::to_string(i).size()), ' ') << i;
    for (const auto& c : cells[static_cast<std::size_t>(i)]) os << "  " << std::string(width - c.size(), ' ') << c;
    os << '\n';
  }
  return os.str();
}

enum class Format { json, csv, pretty };

inline json report_json(const std::vector<CheckResult>& rs, const json& header) {
  json checks = json::array();
  for (const auto& r : rs) checks.push_back(to_json(r));
  return {{"run", header}, {"status", all_pass(rs) ? "pass" : "fail"}, {"checks", checks}};
}

inline std::string csv_field(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Writes the report; lhs and rhs are only spelled out in JSON.
inline void write_report(std::ostream& os, const std::vector<CheckResult>& rs, const json& header, Format fmt) {
  switch (fmt) {
    case Format::json:
      os << report_json(rs, header).dump(2) << '\n';
      break;
    case Format::csv:
      os << "check,paper_ref,q,n,J,K,status\n";
      for (const auto& r : rs)
        os << csv_field(r.check) << ',' << csv_field(r.ref) << ',' << r.q << ',' << r.n << ',' << r.J << ',' << r.K << ','
           << (r.pass ? "pass" : "fail") << '\n';
      break;
    case Format::pretty: {
      std::size_t w = 5;
      for (const auto& r : rs) w = std::max(w, r.check.size());
      for (const auto& r : rs)
        os << (r.pass ? "PASS  " : "FAIL  ") << r.check << std::string(w - r.check.size(), ' ') << "  q=" << r.q << " n=" << r.n
           << " (" << r.J << "," << r.K << ")  " << r.ref << '\n';
      std::size_t failed = 0;
      for (const auto& r : rs) failed += r.pass ? 0 : 1;
      os << rs.size() - failed << "/" << rs.size() << " checks passed\n";
      break;
    }
  }
}

}  // namespace ffmds
