// Copyright 2026 The weakcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Text formats shared by the CLI and the tests: sweep CSV, count CSV and
// JSON for complex matrices.

#pragma once

#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "weakcz/errors.hpp"
#include "weakcz/imperfection_model.hpp"
#include "weakcz/qmath.hpp"
#include "weakcz/tomography.hpp"

namespace weakcz::io {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kSweepHeader = "phi_X_deg,phi_Y_deg,phi_A_deg,F_H,F_chi,P_S,feasible";
inline constexpr const char* kCountsHeader = "input_idx,basis_idx,outcome_idx,count";

/// 12 significant digits, '.' decimal separator regardless of locale.
inline std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  for (auto& c : s) {
    if (c == ',') c = '.';
  }
  return s;
}

inline double parse_number(const std::string& field) {
  double v = 0.0;
  const auto* first = field.data();
  const auto* last = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw DomainError("not a number: '" + field + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(line);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

inline std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

// Infeasible rows leave every field except phi_X empty.
inline void write_sweep_csv(std::ostream& os, const std::vector<model::SweepRecord>& rows) {
  os << kSweepHeader << '\n';
  for (const auto& r : rows) {
    os << format_number(r.phi_x_deg) << ',';
    if (r.point) {
      const auto& p = *r.point;
      os << format_number(p.phi_y_deg) << ',' << format_number(p.phi_a_deg) << ',' << format_number(p.f_h) << ','
         << format_number(p.f_chi) << ',' << format_number(p.p_s) << ",true\n";
    } else {
      os << ",,,,,false\n";
    }
  }
}

inline std::vector<model::SweepRecord> read_sweep_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || strip_cr(line) != kSweepHeader) throw DomainError("sweep CSV: unexpected header");
  std::vector<model::SweepRecord> rows;
  while (std::getline(is, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 7) throw DomainError("sweep CSV: expected 7 fields in '" + line + "'");
    model::SweepRecord r{parse_number(f[0]), std::nullopt};
    if (f[6] == "true") {
      r.point = model::SweepPoint{parse_number(f[1]), parse_number(f[2]), parse_number(f[3]), parse_number(f[4]),
                                  parse_number(f[5])};
    } else if (f[6] != "false") {
      throw DomainError("sweep CSV: feasible must be true or false");
    }
    rows.push_back(r);
  }
  return rows;
}

inline void write_counts_csv(std::ostream& os, const std::vector<tomography::CountRecord>& counts) {
  os << kCountsHeader << '\n';
  for (const auto& c : counts) os << c.input_idx << ',' << c.basis_idx << ',' << c.outcome_idx << ',' << c.count << '\n';
}

inline std::vector<tomography::CountRecord> read_counts_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || strip_cr(line) != kCountsHeader) throw DomainError("counts CSV: unexpected header");
  std::vector<tomography::CountRecord> out;
  while (std::getline(is, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != 4) throw DomainError("counts CSV: expected 4 fields in '" + line + "'");
    const auto as_index = [](const std::string& s) {
      std::uint64_t v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) throw DomainError("counts CSV: bad integer '" + s + "'");
      return v;
    };
    tomography::CountRecord rec{as_index(f[0]), as_index(f[1]), as_index(f[2]), as_index(f[3])};
    if (rec.input_idx >= tomography::kInputs || rec.basis_idx >= tomography::kBases ||
        rec.outcome_idx >= tomography::kOutcomes) {
      throw DomainError("counts CSV: index out of range in '" + line + "'");
    }
    out.push_back(rec);
  }
  return out;
}

/// {"re": [[...]], "im": [[...]]}, row-major.
inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ri = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"re", std::move(re)}, {"im", std::move(im)}};
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (!re.is_array() || re.empty() || re.size() != im.size()) throw DomainError("matrix JSON: re/im shape mismatch");
  const std::size_t rows = re.size();
  const std::size_t cols = re.at(0).size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (re.at(i).size() != cols || im.at(i).size() != cols) throw DomainError("matrix JSON: ragged rows");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = Complex(re[i][k].get<double>(), im[i][k].get<double>());
  }
  return m;
}

inline nlohmann::json setup_to_json(const model::SetupParams& p) {
  return {{"R", p.R},
          {"R_H", p.R_H},
          {"visibility", p.visibility},
          {"phi_X_deg", p.phi_x_deg},
          {"phi_Y_deg", p.phi_y_deg},
          {"phi_A_deg", p.phi_a_deg}};
}

inline nlohmann::json sweep_to_json(const std::vector<model::SweepRecord>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j{{"phi_X_deg", r.phi_x_deg}, {"feasible", r.feasible()}};
    if (r.point) {
      j["phi_Y_deg"] = r.point->phi_y_deg;
      j["phi_A_deg"] = r.point->phi_a_deg;
      j["F_H"] = r.point->f_h;
      j["F_chi"] = r.point->f_chi;
      j["P_S"] = r.point->p_s;
    }
    out.push_back(std::move(j));
  }
  return out;
}

/// Top-level {config, results, version} document.
inline nlohmann::json document(nlohmann::json config, nlohmann::json results) {
  return {{"config", std::move(config)}, {"results", std::move(results)}, {"version", kVersion}};
}

}  // namespace weakcz::io
