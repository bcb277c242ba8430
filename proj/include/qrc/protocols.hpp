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

// Two-party LOCC protocols for implementing Alice's black-box unitary on
// Bob's qubit, with exact resource accounting.
//
// Every protocol is written against Session, which only allows local gates
// and local measurements (all targets owned by the acting party) and counts
// resources as they are used:
//  * an e-bit is consumed the first time either half of a shared Phi+ pair
//    takes part in an operation;
//  * every transmitted measurement bit costs one c-bit in its direction
//    (a Bell outcome is two bits).
//
// In exhaustive mode each measurement forks the run into all of its
// branches; in sampled mode one branch is drawn and its probability
// multiplies into the path probability.

#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qrc/opsets.hpp"
#include "qrc/qcore.hpp"

namespace qrc {

struct ResourceLedger {
  int ebits_consumed = 0;
  int cbits_a_to_b = 0;
  int cbits_b_to_a = 0;

  friend bool operator==(const ResourceLedger&, const ResourceLedger&) = default;
};

struct MeasurementRecord {
  Party party = Party::Alice;
  Basis basis = Basis::Computational;
  std::string outcome;

  friend bool operator==(const MeasurementRecord&, const MeasurementRecord&) = default;
};

struct ProtocolOutcome {
  std::vector<MeasurementRecord> measurement_record;
  double probability = 0;
  StateVector bob_final;
  double target_fidelity = 0;
  bool succeeded = false;
  ResourceLedger ledger;
};

/// Exhaustive enumeration, or one sampled path from a fixed seed.
struct Exhaustive {};
struct Sampled {
  std::uint64_t seed = 0;
};
using RunMode = std::variant<Exhaustive, Sampled>;

struct ProtocolConfig {
  Unimodular u = Unimodular::identity();
  StateVector psi = qubit_state(1.0, 0.0);
  std::optional<OperatorClass::Tag> promise;
  RunMode mode = Exhaustive{};
};

enum class Protocol { Bqst, Universal221, Restricted221, OneOneOne };

inline std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::Bqst:
      return "bqst";
    case Protocol::Universal221:
      return "universal221";
    case Protocol::Restricted221:
      return "restricted221";
    case Protocol::OneOneOne:
      return "one11";
  }
  return "?";
}

/// Pauli correction that undoes a Bell outcome on the receiving half:
/// Phi+ -> 1, Phi- -> Z, Psi+ -> X, Psi- -> X Z.
inline Mat2 bell_correction(std::size_t bell_index) {
  switch (bell_index) {
    case 0:
      return pauli::identity();
    case 1:
      return pauli::z();
    case 2:
      return pauli::x();
    case 3:
      return pauli::x() * pauli::z();
    default:
      throw PreconditionError("Bell index out of range");
  }
}

/// One path through a protocol: the joint state plus everything spent so far.
class Session {
 public:
  Session(StateVector state, std::vector<std::pair<QubitId, QubitId>> shared_pairs)
      : state_(std::move(state)), pairs_(std::move(shared_pairs)), used_(pairs_.size(), false) {}

  const StateVector& state() const { return state_; }
  const ResourceLedger& ledger() const { return ledger_; }
  double probability() const { return probability_; }
  const std::vector<MeasurementRecord>& record() const { return record_; }

  /// Outcome of the most recent measurement.
  std::size_t last_outcome() const {
    if (record_.empty()) throw InvariantViolation("no measurement performed yet");
    return std::stoul(record_.back().outcome, nullptr, 2);
  }

  void local(Party party, const Gate& g, std::initializer_list<QubitId> targets) {
    check_local(party, targets);
    touch(targets);
    state_ = apply_gate(state_, g, targets);
  }

  void local(Party party, const Mat2& m, QubitId target, std::string name = "U") {
    local(party, gates::from(m, std::move(name)), {target});
  }

  /// Forks on a local measurement. The record receives the outcome; whether
  /// it is transmitted is a separate `send`.
  std::vector<Session> measure(Party party, std::initializer_list<QubitId> targets, Basis basis) const {
    check_local(party, targets);
    Session base = *this;
    base.touch(targets);
    std::vector<Session> out;
    for (auto& br : qrc::measure(state_, targets, basis)) {
      Session s = base;
      s.state_ = std::move(br.post_state);
      s.probability_ *= br.probability;
      s.record_.push_back({party, basis, br.outcome});
      out.push_back(std::move(s));
    }
    return out;
  }

  void send(Party from, int bits) {
    if (from == Party::Alice) {
      ledger_.cbits_a_to_b += bits;
    } else if (from == Party::Bob) {
      ledger_.cbits_b_to_a += bits;
    } else {
      throw PreconditionError("only Alice and Bob communicate");
    }
  }

 private:
  void check_local(Party party, std::initializer_list<QubitId> targets) const {
    for (const auto& q : targets) {
      const auto& owner = state_.qubits()[state_.require_position(q)].owner;
      if (owner != party) {
        throw InvariantViolation(std::string(to_string(party)) + " acted on qubit " +
                                 std::to_string(q.index) + " owned by " + std::string(to_string(owner)));
      }
    }
  }

  void touch(std::initializer_list<QubitId> targets) {
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      if (used_[i]) continue;
      for (const auto& q : targets) {
        if (q == pairs_[i].first || q == pairs_[i].second) {
          used_[i] = true;
          ++ledger_.ebits_consumed;
          break;
        }
      }
    }
  }

  StateVector state_;
  std::vector<std::pair<QubitId, QubitId>> pairs_;
  std::vector<bool> used_;
  ResourceLedger ledger_;
  double probability_ = 1.0;
  std::vector<MeasurementRecord> record_;
};

namespace detail {

/// Runs `step` on every session; in sampled mode measurements keep one branch.
class Paths {
 public:
  Paths(Session start, const RunMode& mode) : sessions_{std::move(start)} {
    if (const auto* s = std::get_if<Sampled>(&mode)) rng_.emplace(s->seed);
  }

  template <class F>
  void each(F&& f) {
    for (auto& s : sessions_) f(s);
  }

  void measure(Party party, std::initializer_list<QubitId> targets, Basis basis) {
    std::vector<Session> next;
    for (const auto& s : sessions_) {
      auto branches = s.measure(party, targets, basis);
      if (rng_) {
        next.push_back(pick(std::move(branches)));
      } else {
        for (auto& b : branches) next.push_back(std::move(b));
      }
    }
    sessions_ = std::move(next);
  }

  const std::vector<Session>& sessions() const { return sessions_; }

 private:
  Session pick(std::vector<Session> branches) {
    // Conditional probabilities relative to the parent path.
    std::vector<double> w;
    double total = 0;
    for (const auto& b : branches) total += b.probability();
    for (const auto& b : branches) w.push_back(b.probability() / total);
    std::vector<MeasurementBranch> view;
    for (std::size_t i = 0; i < branches.size(); ++i) {
      view.push_back({std::to_string(i), w[i], branches[i].state()});
    }
    const auto& chosen = sample_branch(view, *rng_);
    return std::move(branches[std::stoul(chosen.outcome)]);
  }

  std::vector<Session> sessions_;
  std::optional<std::mt19937_64> rng_;
};

inline ProtocolOutcome finish(const Session& s, const QubitId& bob_qubit, const StateVector& target) {
  auto [bob, rest] = factor_out(s.state(), bob_qubit);
  const double f = fidelity_up_to_phase(bob, target);
  return {s.record(), s.probability(), bob, f, f >= 1.0 - tol::kDerived, s.ledger()};
}

inline std::vector<ProtocolOutcome> finish_all(const Paths& paths, const QubitId& bob_qubit,
                                               const StateVector& target) {
  std::vector<ProtocolOutcome> out;
  for (const auto& s : paths.sessions()) out.push_back(finish(s, bob_qubit, target));
  return out;
}

inline StateVector phi_plus(QubitId a, QubitId b) {
  return StateVector({1.0, 0.0, 0.0, 1.0}, {a, b});
}

inline StateVector as_qubit(const StateVector& psi, QubitId q) {
  if (psi.num_qubits() != 1) throw PreconditionError("psi must be a single-qubit state");
  return StateVector({psi[0], psi[1]}, {q});
}

inline void check_promise(const ProtocolConfig& cfg) {
  if (!cfg.promise) return;
  const auto actual = classify_operator(cfg.u, kAxisZ).tag;
  if (actual != *cfg.promise) {
    throw PreconditionError("promise violated: U is " + std::string(to_string(actual)) +
                            " with respect to Z, promised " + std::string(to_string(*cfg.promise)));
  }
}

// Qubit layout shared by the protocols.
inline constexpr QubitId kA1{0, Party::Alice};
inline constexpr QubitId kB1{1, Party::Bob};
inline constexpr QubitId kA2{2, Party::Alice};
inline constexpr QubitId kB2{3, Party::Bob};
inline constexpr QubitId kBobInput{4, Party::Bob};

// Bob CNOTs his half of the first e-bit onto his input qubit, measures the
// input, tells Alice, and on outcome 1 both flip their halves. Leaves
// alpha|00> + beta|11> on (A1, B1).
inline void expose_amplitudes(Paths& paths) {
  paths.each([](Session& s) { s.local(Party::Bob, gates::cnot(), {kB1, kBobInput}); });
  paths.measure(Party::Bob, {kBobInput}, Basis::Computational);
  paths.each([](Session& s) {
    s.send(Party::Bob, 1);
    if (s.last_outcome() == 1) {
      s.local(Party::Alice, gates::x(), {kA1});
      s.local(Party::Bob, gates::x(), {kB1});
    }
  });
}

// Standard teleportation of `source` over the pair (sender_half, receiver_half).
inline void teleport(Paths& paths, Party sender, QubitId source, QubitId sender_half, QubitId receiver_half) {
  const Party receiver = sender == Party::Alice ? Party::Bob : Party::Alice;
  paths.measure(sender, {source, sender_half}, Basis::Bell);
  paths.each([&](Session& s) {
    s.send(sender, 2);
    s.local(receiver, bell_correction(s.last_outcome()), receiver_half, "Pauli");
  });
}

// Shared first half of both 2-2-1 protocols; leaves Bob's final
// computational measurement outcome as the last record entry.
inline Paths run_221_core(const ProtocolConfig& cfg) {
  StateVector init = tensor(tensor(phi_plus(kA1, kB1), phi_plus(kA2, kB2)), as_qubit(cfg.psi, kBobInput));
  Paths paths(Session(std::move(init), {{kA1, kB1}, {kA2, kB2}}), cfg.mode);
  expose_amplitudes(paths);
  paths.each([&](Session& s) { s.local(Party::Alice, cfg.u.gate(), {kA1}); });
  teleport(paths, Party::Alice, kA1, kA2, kB2);
  paths.each([](Session& s) { s.local(Party::Bob, gates::h(), {kB1}); });
  paths.measure(Party::Bob, {kB1}, Basis::Computational);
  return paths;
}

}  // namespace detail

/// Bidirectional state teleportation: Bob teleports psi to Alice, she applies
/// U, and teleports the result back. Costs (2, 2, 2).
inline std::vector<ProtocolOutcome> run_bqst(const ProtocolConfig& cfg) {
  using namespace detail;
  StateVector init = tensor(tensor(phi_plus(kA1, kB1), phi_plus(kA2, kB2)), as_qubit(cfg.psi, kBobInput));
  Paths paths(Session(std::move(init), {{kA1, kB1}, {kA2, kB2}}), cfg.mode);
  teleport(paths, Party::Bob, kBobInput, kB1, kA1);
  paths.each([&](Session& s) { s.local(Party::Alice, cfg.u.gate(), {kA1}); });
  teleport(paths, Party::Alice, kA1, kA2, kB2);
  return finish_all(paths, kB2, cfg.u.apply(cfg.psi));
}

/// Works for any U with probability exactly 1/2. On final outcome 1 Bob holds
/// U Z psi and the branch is reported as failed.
inline std::vector<ProtocolOutcome> run_universal_221(const ProtocolConfig& cfg) {
  if (cfg.promise) throw PreconditionError("universal 2-2-1 protocol takes no promise");
  auto paths = detail::run_221_core(cfg);
  return detail::finish_all(paths, detail::kB2, cfg.u.apply(cfg.psi));
}

/// 2-2-1 protocol plus the fixed correction Z on Bob's failure outcome.
/// Succeeds in every branch for U commuting or anticommuting with Z.
inline std::vector<ProtocolOutcome> run_restricted_221(const ProtocolConfig& cfg) {
  const auto norms = commutation_norms(cfg.u, kAxisZ);
  if (classify_operator(cfg.u, kAxisZ).tag == OperatorClass::Tag::General) {
    throw PreconditionError("restricted 2-2-1 needs U to commute or anticommute with Z (||[U,Z]|| = " +
                            std::to_string(norms.commutator) + ", ||{U,Z}|| = " +
                            std::to_string(norms.anticommutator) + ")");
  }
  detail::check_promise(cfg);
  auto paths = detail::run_221_core(cfg);
  paths.each([](Session& s) {
    if (s.last_outcome() == 1) s.local(Party::Bob, pauli::z(), detail::kB2, "Z");
  });
  return detail::finish_all(paths, detail::kB2, cfg.u.apply(cfg.psi));
}

/// Promise protocol using one e-bit and one c-bit each way. Alice applies U
/// and a Hadamard to her half and measures; Bob corrects with
/// commuting: 0 -> 1, 1 -> Z; anticommuting: 0 -> X, 1 -> Z X.
inline std::vector<ProtocolOutcome> run_111(const ProtocolConfig& cfg) {
  using namespace detail;
  if (!cfg.promise || *cfg.promise == OperatorClass::Tag::General) {
    throw PreconditionError("1-1-1 protocol needs a commuting or anticommuting promise");
  }
  check_promise(cfg);
  StateVector init = tensor(phi_plus(kA1, kB1), as_qubit(cfg.psi, kBobInput));
  Paths paths(Session(std::move(init), {{kA1, kB1}}), cfg.mode);
  expose_amplitudes(paths);
  paths.each([&](Session& s) {
    s.local(Party::Alice, cfg.u.gate(), {kA1});
    s.local(Party::Alice, gates::h(), {kA1});
  });
  paths.measure(Party::Alice, {kA1}, Basis::Computational);
  const bool anti = *cfg.promise == OperatorClass::Tag::AnticommutesWithAxis;
  paths.each([&](Session& s) {
    s.send(Party::Alice, 1);
    const bool one = s.last_outcome() == 1;
    if (anti) {
      s.local(Party::Bob, one ? Mat2(pauli::z() * pauli::x()) : pauli::x(), kB1, one ? "ZX" : "X");
    } else if (one) {
      s.local(Party::Bob, pauli::z(), kB1, "Z");
    }
  });
  return finish_all(paths, kB1, cfg.u.apply(cfg.psi));
}

inline std::vector<ProtocolOutcome> run_protocol(Protocol p, const ProtocolConfig& cfg) {
  switch (p) {
    case Protocol::Bqst:
      return run_bqst(cfg);
    case Protocol::Universal221:
      return run_universal_221(cfg);
    case Protocol::Restricted221:
      return run_restricted_221(cfg);
    case Protocol::OneOneOne:
      return run_111(cfg);
  }
  throw PreconditionError("unknown protocol");
}

/// Sum of branch probabilities over succeeded outcomes.
inline double success_probability(const std::vector<ProtocolOutcome>& outcomes) {
  double p = 0;
  for (const auto& o : outcomes) {
    if (o.succeeded) p += o.probability;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Lower-bound demonstrations. These apply the hypothetical remote CP gate
// directly as a nonlocal unitary.

struct CpEntanglementDemo {
  StateVector state;
  double entropy = 0;
  double input_entropy = 0;
};

namespace demo_qubits {
inline constexpr QubitId kC{0, Party::Alice};
inline constexpr QubitId kCPrime{1, Party::Alice};
inline constexpr QubitId kB1{2, Party::Bob};
inline constexpr QubitId kB2{3, Party::Bob};
}  // namespace demo_qubits

/// Alice's |++> controls, Bob's Phi+ pair, CP onto Bob's first qubit; the
/// output holds two e-bits across Alice|Bob.
inline CpEntanglementDemo demo_cp_entanglement() {
  using namespace demo_qubits;
  const StateVector alice({0.5, 0.5, 0.5, 0.5}, {kC, kCPrime});
  const StateVector input = tensor(alice, detail::phi_plus(kB1, kB2));
  const double before = entanglement_entropy(input, {kC, kCPrime});
  StateVector out = apply_gate(input, gates::controlled_pauli(), {kC, kCPrime, kB1});
  const double after = entanglement_entropy(out, {kC, kCPrime});
  return {std::move(out), after, before};
}

/// Message m in {0..3} as |m> on Alice's controls; Bob decodes it from a Bell
/// measurement of his pair.
inline unsigned demo_cp_capacity(unsigned message) {
  using namespace demo_qubits;
  if (message > 3) throw PreconditionError("message must be a 2-bit value");
  const StateVector input = tensor(StateVector::basis({kC, kCPrime}, message), detail::phi_plus(kB1, kB2));
  const StateVector out = apply_gate(input, gates::controlled_pauli(), {kC, kCPrime, kB1});
  const auto branches = measure(out, {kB1, kB2}, Basis::Bell);
  if (branches.size() != 1) throw InvariantViolation("Bob's pair is not in a single Bell state");
  // 1 -> Phi+, X -> Psi+, Y -> Psi-, Z -> Phi-.
  static constexpr unsigned kDecode[4] = {0b00, 0b11, 0b01, 0b10};
  return kDecode[branches.front().index()];
}

/// Alice |+> controls a CNOT onto Bob's |+> (bit 0) or |-> (bit 1); the
/// phase kicks back and Alice reads Bob's bit in the +- basis.
inline unsigned demo_cnot_reverse(unsigned bob_bit, const RunMode& mode = Exhaustive{}) {
  if (bob_bit > 1) throw PreconditionError("Bob's bit must be 0 or 1");
  constexpr QubitId c{0, Party::Alice};
  constexpr QubitId b{1, Party::Bob};
  const double r = 1.0 / std::numbers::sqrt2;
  const StateVector input = tensor(qubit_state(r, r, c), qubit_state(r, bob_bit ? -r : r, b));
  StateVector out = apply_gate(input, gates::cnot(), {c, b});
  out = apply_gate(out, gates::h(), {c});
  const auto branches = measure(out, {c});
  if (const auto* s = std::get_if<Sampled>(&mode)) {
    std::mt19937_64 rng(s->seed);
    return static_cast<unsigned>(sample_branch(branches, rng).index());
  }
  if (branches.size() != 1) throw InvariantViolation("Alice's readout is not deterministic");
  return static_cast<unsigned>(branches.front().index());
}

struct RamseyPoint {
  double theta = 0;
  double p_plus = 0;
};

/// Runs the 1-1-1 protocol with U = rz(theta / 2) on Bob's |+> and projects
/// his output onto |+>. Expected: (1 + cos theta) / 2.
inline std::vector<RamseyPoint> ramsey_curve(std::span<const double> thetas) {
  const double r = 1.0 / std::numbers::sqrt2;
  const StateVector plus = qubit_state(r, r);
  std::vector<RamseyPoint> out;
  out.reserve(thetas.size());
  for (double theta : thetas) {
    ProtocolConfig cfg{rz(theta / 2), plus, OperatorClass::Tag::CommutesWithAxis, Exhaustive{}};
    double p = 0;
    for (const auto& o : run_111(cfg)) {
      p += o.probability * fidelity_up_to_phase(qubit_state(r, r, o.bob_final.qubits()[0]), o.bob_final);
    }
    out.push_back({theta, p});
  }
  return out;
}

inline std::vector<RamseyPoint> ramsey_curve(const std::vector<double>& thetas) {
  return ramsey_curve(std::span<const double>(thetas));
}

}  // namespace qrc
