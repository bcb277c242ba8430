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

// Command-line front end. Kept in a header so tests can drive it in-process.
//
// Exit codes: 0 success, 1 bad input (parse, precondition, promise), 2
// internal invariant violation or failed `verify`.

#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qrc/bloch.hpp"
#include "qrc/opsets.hpp"
#include "qrc/protocols.hpp"
#include "qrc/textio.hpp"
#include "qrc/verify.hpp"

namespace qrc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInternal = 2;

enum class Format { Human, Structured, Csv };

/// Everything one invocation needs, filled in by the parser.
struct RunRequest {
  std::string subcommand;
  std::string protocol;
  std::string op_spec;
  std::string state_spec = "0";
  std::string promise;
  std::string mode = "exact";
  std::optional<std::uint64_t> seed;
  std::string format = "structured";
  std::string axis_spec = "0,0,1";
  std::string set_path;
  std::string demo;
  int steps = 0;
  std::string out_path;
};

namespace detail {

inline Format parse_format(const std::string& f) {
  if (f == "human") return Format::Human;
  if (f == "structured") return Format::Structured;
  if (f == "csv") return Format::Csv;
  throw PreconditionError("unknown format '" + f + "'");
}

inline Protocol parse_protocol(const std::string& p) {
  if (p == "bqst") return Protocol::Bqst;
  if (p == "universal221") return Protocol::Universal221;
  if (p == "restricted221") return Protocol::Restricted221;
  if (p == "one11") return Protocol::OneOneOne;
  throw PreconditionError("unknown protocol '" + p + "'");
}

inline RunMode parse_mode(const RunRequest& req) {
  if (req.mode == "exact") return Exhaustive{};
  if (req.mode == "sampled") {
    if (!req.seed) throw PreconditionError("sampled mode requires --seed");
    return Sampled{*req.seed};
  }
  throw PreconditionError("unknown mode '" + req.mode + "'");
}

inline Vec3 parse_axis(const std::string& spec) {
  const auto v = qrc::detail::parse_numbers(spec, 0, 3);
  const Vec3 n{v[0], v[1], v[2]};
  const double l = length(n);
  if (l < 1e-12) throw PreconditionError("axis is zero");
  return scaled(n, 1.0 / l);
}

inline std::string num(double v) { return qrc::detail::format_double(v); }

inline std::string vec(const Vec3& v) { return num(v[0]) + "," + num(v[1]) + "," + num(v[2]); }

inline std::string amp(const StateVector& s) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed;
  os << "(" << s[0].real() << (s[0].imag() < 0 ? "-" : "+") << std::abs(s[0].imag()) << "i, " << s[1].real()
     << (s[1].imag() < 0 ? "-" : "+") << std::abs(s[1].imag()) << "i)";
  return os.str();
}

inline int cmd_run(const RunRequest& req, std::ostream& out) {
  const Protocol p = parse_protocol(req.protocol);
  ProtocolConfig cfg{parse_operator(req.op_spec), parse_state(req.state_spec), std::nullopt, parse_mode(req)};
  if (req.promise == "commuting") {
    cfg.promise = OperatorClass::Tag::CommutesWithAxis;
  } else if (req.promise == "anticommuting") {
    cfg.promise = OperatorClass::Tag::AnticommutesWithAxis;
  } else if (!req.promise.empty()) {
    throw PreconditionError("unknown promise '" + req.promise + "'");
  }
  const auto outcomes = run_protocol(p, cfg);
  switch (parse_format(req.format)) {
    case Format::Structured:
      write_structured(out, p, outcomes);
      break;
    case Format::Csv:
      out << "branch_id,measurement_record,probability,fidelity,succeeded,ebits,cbits_ab,cbits_ba\n";
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        std::string rec;
        for (const auto& m : o.measurement_record) {
          if (!rec.empty()) rec += ' ';
          rec += std::string(to_string(m.party)) + ":" + std::string(to_string(m.basis)) + ":" + m.outcome;
        }
        out << i << "," << rec << "," << num(o.probability) << "," << num(o.target_fidelity) << ","
            << (o.succeeded ? 1 : 0) << "," << o.ledger.ebits_consumed << "," << o.ledger.cbits_a_to_b << ","
            << o.ledger.cbits_b_to_a << "\n";
      }
      break;
    case Format::Human: {
      out << "protocol " << to_string(p) << ", " << outcomes.size() << " branch(es)\n";
      for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        out << "  #" << i << " ";
        for (const auto& m : o.measurement_record) {
          out << to_string(m.party) << "/" << to_string(m.basis) << "=" << m.outcome << " ";
        }
        out << "p=" << o.probability << " fidelity=" << o.target_fidelity << (o.succeeded ? " ok" : " FAILED")
            << " bob=" << amp(o.bob_final) << "\n";
      }
      const auto& l = outcomes.front().ledger;
      out << "success probability " << success_probability(outcomes) << "\n";
      out << "ledger: " << l.ebits_consumed << " e-bits, " << l.cbits_a_to_b << " c-bits A->B, " << l.cbits_b_to_a
          << " c-bits B->A\n";
      break;
    }
  }
  return kExitOk;
}

inline int cmd_classify(const RunRequest& req, std::ostream& out) {
  const auto u = parse_operator(req.op_spec);
  const Vec3 axis = parse_axis(req.axis_spec);
  const auto cls = classify_operator(u, axis);
  const auto norms = commutation_norms(u, axis);
  if (parse_format(req.format) == Format::Human) {
    out << to_string(cls.tag) << " (axis " << vec(axis) << ", ||[U,n.s]|| = " << norms.commutator
        << ", ||{U,n.s}|| = " << norms.anticommutator << ")\n";
  } else {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["operator"] = render_operator(u);
    j["class"] = to_string(cls.tag);
    j["axis"] = {axis[0], axis[1], axis[2]};
    j["commutator_norm"] = norms.commutator;
    j["anticommutator_norm"] = norms.anticommutator;
    out << j.dump() << '\n';
  }
  return kExitOk;
}

inline int cmd_axis(const RunRequest& req, std::ostream& out) {
  std::ifstream in(req.set_path);
  if (!in) throw PreconditionError("cannot open operator set '" + req.set_path + "'");
  const auto set = parse_operator_set(in);
  if (set.empty()) throw PreconditionError("operator set '" + req.set_path + "' is empty");
  const auto axis = find_common_axis(set);
  if (parse_format(req.format) == Format::Human) {
    out << (axis ? "common axis " + vec(*axis) : std::string("no common axis")) << "\n";
  } else {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["operators"] = set.size();
    j["axis"] = axis ? nlohmann::ordered_json{(*axis)[0], (*axis)[1], (*axis)[2]} : nlohmann::ordered_json(nullptr);
    out << j.dump() << '\n';
  }
  return kExitOk;
}

inline int cmd_demo(const RunRequest& req, std::ostream& out) {
  const bool human = parse_format(req.format) == Format::Human;
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["demo"] = req.demo;
  if (req.demo == "cp-entanglement") {
    const auto d = demo_cp_entanglement();
    j["entropy_before"] = d.input_entropy;
    j["entropy"] = d.entropy;
    if (human) out << "entanglement across Alice|Bob: " << d.input_entropy << " -> " << d.entropy << " e-bits\n";
  } else if (req.demo == "cp-capacity") {
    auto& rows = j["messages"] = nlohmann::ordered_json::array();
    for (unsigned m = 0; m < 4; ++m) {
      const unsigned decoded = demo_cp_capacity(m);
      rows.push_back({{"sent", bits_of(m, 2)}, {"decoded", bits_of(decoded, 2)}});
      if (human) out << "sent " << bits_of(m, 2) << " decoded " << bits_of(decoded, 2) << "\n";
    }
  } else if (req.demo == "cnot-reverse") {
    const RunMode mode = parse_mode(req);
    auto& rows = j["bits"] = nlohmann::ordered_json::array();
    for (unsigned b = 0; b < 2; ++b) {
      const unsigned read = demo_cnot_reverse(b, mode);
      rows.push_back({{"bob_bit", b}, {"alice_reads", read}});
      if (human) out << "Bob sends " << b << ", Alice reads " << read << "\n";
    }
  } else {
    throw PreconditionError("unknown demo '" + req.demo + "'");
  }
  if (!human) out << j.dump() << '\n';
  return kExitOk;
}

inline void write_ramsey(std::ostream& os, const std::vector<RamseyPoint>& pts) {
  os << "theta,p_plus\n";
  for (const auto& p : pts) os << num(p.theta) << "," << num(p.p_plus) << "\n";
}

inline int cmd_ramsey(const RunRequest& req, std::ostream& out) {
  if (req.steps < 1) throw PreconditionError("--steps must be at least 1");
  std::vector<double> thetas;
  for (int k = 0; k <= req.steps; ++k) thetas.push_back(k * std::numbers::pi / req.steps);
  const auto pts = ramsey_curve(thetas);
  if (req.out_path.empty()) {
    write_ramsey(out, pts);
  } else {
    std::ofstream f(req.out_path);
    if (!f) throw PreconditionError("cannot write '" + req.out_path + "'");
    write_ramsey(f, pts);
  }
  return kExitOk;
}

inline int cmd_verify(const RunRequest& req, std::ostream& out) {
  const auto results = verify::run_all(req.seed.value_or(20260101));
  int passed = 0;
  for (const auto& r : results) {
    out << (r.passed ? "PASS " : "FAIL ") << r.module << ": " << r.name;
    if (!r.passed) out << " -- " << r.detail;
    out << "\n";
    passed += r.passed;
  }
  const int failed = static_cast<int>(results.size()) - passed;
  out << passed << " passed, " << failed << " failed\n";
  return failed == 0 ? kExitOk : kExitInternal;
}

}  // namespace detail

/// Parses `args` (without the program name) and dispatches.
inline int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunRequest req;
  CLI::App app{"Remote implementation of qubit operations under LOCC"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a protocol on Bob's qubit");
  run->add_option("--protocol", req.protocol, "bqst|universal221|restricted221|one11")->required();
  run->add_option("--u", req.op_spec, "Alice's operator")->required();
  run->add_option("--psi", req.state_spec, "Bob's input state (default 0)");
  run->add_option("--promise", req.promise, "commuting|anticommuting");
  run->add_option("--mode", req.mode, "exact|sampled (default exact)");
  run->add_option("--seed", req.seed, "seed for sampled mode");
  run->add_option("--format", req.format, "human|structured|csv (default structured)");
  run->add_option("--out", req.out_path, "write output to a file");

  auto* classify = app.add_subcommand("classify", "Classify an operator against an axis");
  classify->add_option("--u", req.op_spec, "operator")->required();
  classify->add_option("--axis", req.axis_spec, "x,y,z (default 0,0,1)");
  classify->add_option("--format", req.format, "human|structured");
  classify->add_option("--out", req.out_path, "write output to a file");

  auto* axis = app.add_subcommand("axis", "Find a common axis for an operator set");
  axis->add_option("--set", req.set_path, "file with one operator per line")->required();
  axis->add_option("--format", req.format, "human|structured");
  axis->add_option("--out", req.out_path, "write output to a file");

  auto* demo = app.add_subcommand("demo", "Resource lower-bound demonstrations");
  demo->add_option("name", req.demo, "cp-entanglement|cp-capacity|cnot-reverse")->required();
  demo->add_option("--mode", req.mode, "exact|sampled (cnot-reverse)");
  demo->add_option("--seed", req.seed, "seed for sampled mode");
  demo->add_option("--format", req.format, "human|structured");
  demo->add_option("--out", req.out_path, "write output to a file");

  auto* ramsey = app.add_subcommand("ramsey", "Ramsey fringe sweep through the 1-1-1 protocol");
  ramsey->add_option("--steps", req.steps, "grid theta_k = k pi / steps, k = 0..steps")->required();
  ramsey->add_option("--out", req.out_path, "write CSV to a file");

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  verify->add_option("--seed", req.seed, "base seed");

  if (!args.empty() && !args.front().starts_with("-") && app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "error: unknown subcommand '" << args.front() << "'\n";
    return kExitInput;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    std::ostringstream buffer;
    int code = kExitOk;
    const bool to_file = !req.out_path.empty() && !ramsey->parsed();
    std::ostream& sink = to_file ? static_cast<std::ostream&>(buffer) : out;
    if (run->parsed()) {
      code = detail::cmd_run(req, sink);
    } else if (classify->parsed()) {
      code = detail::cmd_classify(req, sink);
    } else if (axis->parsed()) {
      code = detail::cmd_axis(req, sink);
    } else if (demo->parsed()) {
      code = detail::cmd_demo(req, sink);
    } else if (ramsey->parsed()) {
      code = detail::cmd_ramsey(req, out);
    } else if (verify->parsed()) {
      code = detail::cmd_verify(req, out);
    }
    if (to_file) {
      std::ofstream f(req.out_path);
      if (!f) throw PreconditionError("cannot write '" + req.out_path + "'");
      f << buffer.str();
    }
    return code;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return main(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace qrc::cli
