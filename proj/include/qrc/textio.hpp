// Copyright 2026 The qrc Authors
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

// Text forms of operators and states, and the line-delimited record format
// for protocol outcomes (see docs/outcome-schema.md).
//
// Operator grammar:
//   id | sx | sy | sz | h          unimodular named forms: 1, iX, iY, iZ, iH
//   rz:<phi>                       diag(e^{i phi}, e^{-i phi})
//   rot:<nx>,<ny>,<nz>,<theta>     exp(-i theta n.sigma / 2), n normalized
//   mat:<a_re>,<a_im>,<b_re>,<b_im>  [[a, b], [-b*, a*]]
//
// State grammar:
//   0 | 1 | + | -
//   amp:<re0>,<im0>,<re1>,<im1>    normalized on entry

#pragma once

#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "qrc/opsets.hpp"
#include "qrc/protocols.hpp"
#include "qrc/qcore.hpp"

namespace qrc {

namespace detail {

// Comma-separated real numbers starting at `offset` in `spec`.
inline std::vector<double> parse_numbers(std::string_view spec, std::size_t offset, std::size_t count) {
  std::vector<double> out;
  std::size_t pos = offset;
  while (true) {
    const std::size_t end = std::min(spec.find(',', pos), spec.size());
    const std::string_view tok = spec.substr(pos, end - pos);
    double v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
      throw ParseError("expected a number, got '" + std::string(tok) + "'", pos + 1);
    }
    if (!std::isfinite(v)) throw ParseError("number is not finite", pos + 1);
    out.push_back(v);
    if (end == spec.size()) break;
    pos = end + 1;
  }
  if (out.size() != count) {
    throw ParseError("expected " + std::to_string(count) + " numbers, got " + std::to_string(out.size()),
                     offset + 1);
  }
  return out;
}

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline Unimodular parse_operator(std::string_view spec) {
  const double r = 1.0 / std::numbers::sqrt2;
  if (spec == "id") return Unimodular::identity();
  if (spec == "sx") return {0.0, Complex(0, 1)};
  if (spec == "sy") return {0.0, 1.0};
  if (spec == "sz") return {Complex(0, 1), 0.0};
  if (spec == "h") return {Complex(0, r), Complex(0, r)};

  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("unknown operator '" + std::string(spec) + "'", 1);
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::size_t body = colon + 1;
  if (kind == "rz") {
    return rz(detail::parse_numbers(spec, body, 1)[0]);
  }
  if (kind == "rot") {
    const auto v = detail::parse_numbers(spec, body, 4);
    const Vec3 n{v[0], v[1], v[2]};
    const double l = length(n);
    if (l < 1e-12) throw ParseError("rotation axis is zero", body + 1);
    return from_axis_angle(scaled(n, 1.0 / l), v[3]);
  }
  if (kind == "mat") {
    const auto v = detail::parse_numbers(spec, body, 4);
    const Complex a(v[0], v[1]);
    const Complex b(v[2], v[3]);
    const double residual = std::norm(a) + std::norm(b) - 1.0;
    if (std::abs(residual) > tol::kUnitarity) {
      throw ParseError("matrix is not unimodular: |a|^2 + |b|^2 - 1 = " + detail::format_double(residual),
                       body + 1);
    }
    return {a, b};
  }
  throw ParseError("unknown operator kind '" + std::string(kind) + "'", 1);
}

/// Lossless `mat:` form.
inline std::string render_operator(const Unimodular& u) {
  using detail::format_double;
  return "mat:" + format_double(u.a().real()) + "," + format_double(u.a().imag()) + "," +
         format_double(u.b().real()) + "," + format_double(u.b().imag());
}

inline StateVector parse_state(std::string_view spec) {
  const double r = 1.0 / std::numbers::sqrt2;
  if (spec == "0") return qubit_state(1.0, 0.0);
  if (spec == "1") return qubit_state(0.0, 1.0);
  if (spec == "+") return qubit_state(r, r);
  if (spec == "-") return qubit_state(r, -r);
  if (spec.starts_with("amp:")) {
    const auto v = detail::parse_numbers(spec, 4, 4);
    const Complex a(v[0], v[1]);
    const Complex b(v[2], v[3]);
    if (std::norm(a) + std::norm(b) < 1e-300) throw ParseError("zero vector has no normalization", 5);
    return qubit_state(a, b);
  }
  throw ParseError("unknown state '" + std::string(spec) + "'", 1);
}

/// One operator per line; blank lines and '#' comments are skipped.
inline std::vector<Unimodular> parse_operator_set(std::istream& in) {
  std::vector<Unimodular> set;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    try {
      set.push_back(parse_operator(std::string_view(line).substr(first, last - first + 1)));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what(), e.column() + first);
    }
  }
  return set;
}

// ---------------------------------------------------------------------------
// Outcome records

inline constexpr int kSchemaVersion = 1;

inline nlohmann::ordered_json outcome_record(Protocol p, std::size_t branch_id, const ProtocolOutcome& o) {
  nlohmann::ordered_json rec;
  rec["protocol"] = to_string(p);
  rec["branch_id"] = branch_id;
  auto& mr = rec["measurement_record"] = nlohmann::ordered_json::array();
  for (const auto& m : o.measurement_record) {
    mr.push_back({{"party", to_string(m.party)}, {"basis", to_string(m.basis)}, {"outcome", m.outcome}});
  }
  rec["probability"] = o.probability;
  rec["fidelity"] = o.target_fidelity;
  rec["succeeded"] = o.succeeded;
  rec["ledger"] = {{"ebits", o.ledger.ebits_consumed},
                   {"cbits_ab", o.ledger.cbits_a_to_b},
                   {"cbits_ba", o.ledger.cbits_b_to_a}};
  rec["bob_final"] = {{o.bob_final[0].real(), o.bob_final[0].imag()},
                      {o.bob_final[1].real(), o.bob_final[1].imag()}};
  return rec;
}

inline nlohmann::ordered_json outcome_header(Protocol p, const std::vector<ProtocolOutcome>& outcomes) {
  nlohmann::ordered_json h;
  h["schema"] = kSchemaVersion;
  h["protocol"] = to_string(p);
  h["branches"] = outcomes.size();
  h["success_probability"] = success_probability(outcomes);
  return h;
}

/// Header line followed by one record per branch.
inline void write_structured(std::ostream& os, Protocol p, const std::vector<ProtocolOutcome>& outcomes) {
  os << outcome_header(p, outcomes).dump() << '\n';
  for (std::size_t i = 0; i < outcomes.size(); ++i) os << outcome_record(p, i, outcomes[i]).dump() << '\n';
}

}  // namespace qrc
