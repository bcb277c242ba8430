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

#include "qrc/protocols.hpp"

#include <numbers>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qrc/random.hpp"

using namespace qrc;
using std::numbers::pi;

namespace {

using Tag = OperatorClass::Tag;
constexpr double kR = 1.0 / std::numbers::sqrt2;

double total_probability(const std::vector<ProtocolOutcome>& outs) {
  double p = 0;
  for (const auto& o : outs) p += o.probability;
  return p;
}

void expect_all_succeed(const std::vector<ProtocolOutcome>& outs, const ResourceLedger& ledger) {
  ASSERT_FALSE(outs.empty());
  EXPECT_NEAR(total_probability(outs), 1.0, 1e-10);
  for (const auto& o : outs) {
    EXPECT_GE(o.target_fidelity, 1 - 1e-9);
    EXPECT_TRUE(o.succeeded);
    EXPECT_EQ(o.ledger, ledger);
    EXPECT_GT(o.probability, 0.0);
  }
}

// Oracle for "Bob holds U psi": apply U as a dense matrix to psi's amplitudes.
double oracle_fidelity(const Unimodular& u, const StateVector& psi, const StateVector& got) {
  oracle::Vec v(2);
  v << psi[0], psi[1];
  const oracle::Vec want = oracle::Mat(u.matrix()) * v;
  return std::norm(want(0) * std::conj(got[0]) + want(1) * std::conj(got[1]));
}

}  // namespace

TEST(Bqst, identity_returns_input) {
  random::Engine rng(1);
  const auto psi = random::state(rng);
  const auto outs = run_bqst({Unimodular::identity(), psi});
  EXPECT_EQ(outs.size(), 16u);
  expect_all_succeed(outs, {2, 2, 2});
  for (const auto& o : outs) EXPECT_NEAR(oracle_fidelity(Unimodular::identity(), psi, o.bob_final), 1.0, 1e-9);
}

TEST(Bqst, random_operators) {
  random::Engine rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto u = random::unimodular(rng);
    const auto psi = random::state(rng);
    const auto outs = run_bqst({u, psi});
    expect_all_succeed(outs, {2, 2, 2});
    for (const auto& o : outs) EXPECT_NEAR(oracle_fidelity(u, psi, o.bob_final), 1.0, 1e-9);
  }
}

TEST(Universal221, half_success_for_random_inputs) {
  random::Engine rng(3);
  for (int t = 0; t < 100; ++t) {
    const auto u = random::unimodular(rng);
    const auto psi = random::state(rng);
    const auto outs = run_universal_221({u, psi});
    EXPECT_NEAR(total_probability(outs), 1.0, 1e-10);
    EXPECT_NEAR(success_probability(outs), 0.5, 1e-9);
    for (const auto& o : outs) EXPECT_EQ(o.ledger, (ResourceLedger{2, 2, 1}));
  }
}

TEST(Universal221, identity_failure_holds_z_psi) {
  const auto psi = qubit_state(Complex(0.6, 0.0), Complex(0.0, 0.8));
  for (const auto& o : run_universal_221({Unimodular::identity(), psi})) {
    if (o.succeeded) continue;
    EXPECT_EQ(o.measurement_record.back().outcome, "1");
    EXPECT_NEAR(oracle_fidelity(Unimodular::identity(), qubit_state(psi[0], -psi[1]), o.bob_final), 1.0, 1e-9);
  }
}

TEST(Universal221, failure_branch_is_u_z_psi) {
  random::Engine rng(4);
  for (int t = 0; t < 100; ++t) {
    const auto u = random::general(rng);
    const auto psi = random::state(rng);
    int failures = 0;
    for (const auto& o : run_universal_221({u, psi})) {
      if (o.succeeded) continue;
      ++failures;
      const auto z_psi = qubit_state(psi[0], -psi[1]);
      EXPECT_NEAR(oracle_fidelity(u, z_psi, o.bob_final), 1.0, 1e-9);
    }
    EXPECT_GT(failures, 0);
  }
}

TEST(Universal221, rejects_promise) {
  EXPECT_THROW(run_universal_221({rz(0.1), qubit_state(1, 0), Tag::CommutesWithAxis}), PreconditionError);
}

TEST(Restricted221, spin_flip_on_equatorial_state) {
  for (double zeta : {0.0, 0.7, 2.1, -1.3}) {
    const auto psi = qubit_state(kR, kR * std::polar(1.0, zeta));
    const Unimodular u(0.0, 1.0);
    const auto outs = run_restricted_221({u, psi});
    expect_all_succeed(outs, {2, 2, 1});
    for (const auto& o : outs) EXPECT_NEAR(oracle_fidelity(u, psi, o.bob_final), 1.0, 1e-9);
  }
}

TEST(Restricted221, random_z_rotations) {
  random::Engine rng(5);
  for (int t = 0; t < 100; ++t) {
    const auto u = random::set_a(rng);
    const auto psi = random::state(rng);
    const auto outs = run_restricted_221({u, psi});
    expect_all_succeed(outs, {2, 2, 1});
  }
}

TEST(Restricted221, general_operator_is_rejected_with_norms) {
  try {
    run_restricted_221({Unimodular(kR, kR), qubit_state(1, 0)});
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("||[U,Z]||"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("||{U,Z}||"), std::string::npos);
  }
}

TEST(Restricted221, succeeds_iff_classification_allows) {
  random::Engine rng(6);
  for (int t = 0; t < 300; ++t) {
    Unimodular u = Unimodular::identity();
    switch (t % 3) {
      case 0: u = random::set_a(rng); break;
      case 1: u = random::set_b(rng); break;
      default: u = random::general(rng); break;
    }
    const bool in_set = classify_operator(u).tag != Tag::General;
    const bool common = check_common_correction(std::vector<Unimodular>{Unimodular::identity(), u}).has_value();
    EXPECT_EQ(in_set, common);
    if (in_set) {
      expect_all_succeed(run_restricted_221({u, random::state(rng)}), {2, 2, 1});
    } else {
      EXPECT_THROW(run_restricted_221({u, random::state(rng)}), PreconditionError);
    }
  }
}

TEST(OneOneOne, commuting_promise) {
  random::Engine rng(7);
  for (int t = 0; t < 100; ++t) {
    const auto u = random::set_a(rng);
    const auto psi = random::state(rng);
    const auto outs = run_111({u, psi, Tag::CommutesWithAxis});
    EXPECT_EQ(outs.size(), 4u);
    expect_all_succeed(outs, {1, 1, 1});
    for (const auto& o : outs) EXPECT_NEAR(oracle_fidelity(u, psi, o.bob_final), 1.0, 1e-9);
  }
}

TEST(OneOneOne, anticommuting_promise) {
  random::Engine rng(8);
  for (int t = 0; t < 100; ++t) {
    const auto u = random::set_b(rng);
    const auto psi = random::state(rng);
    const auto outs = run_111({u, psi, Tag::AnticommutesWithAxis});
    expect_all_succeed(outs, {1, 1, 1});
    for (const auto& o : outs) EXPECT_NEAR(oracle_fidelity(u, psi, o.bob_final), 1.0, 1e-9);
  }
}

TEST(OneOneOne, identity_returns_input) {
  const auto psi = qubit_state(Complex(0.3, 0.4), Complex(0.5, -0.7));
  for (const auto& o : run_111({Unimodular::identity(), psi, Tag::CommutesWithAxis})) {
    EXPECT_NEAR(oracle_fidelity(Unimodular::identity(), psi, o.bob_final), 1.0, 1e-9);
  }
}

TEST(OneOneOne, promise_errors) {
  EXPECT_THROW(run_111({rz(0.3), qubit_state(1, 0)}), PreconditionError);
  EXPECT_THROW(run_111({rz(0.3), qubit_state(1, 0), Tag::AnticommutesWithAxis}), PreconditionError);
  EXPECT_THROW(run_111({Unimodular(kR, kR), qubit_state(1, 0), Tag::CommutesWithAxis}), PreconditionError);
  EXPECT_THROW(run_111({rz(0.3), qubit_state(1, 0), Tag::General}), PreconditionError);
}

TEST(Sampled, follows_one_branch_deterministically) {
  random::Engine rng(9);
  const auto u = random::unimodular(rng);
  const auto psi = random::state(rng);
  for (auto p : {Protocol::Bqst, Protocol::Universal221}) {
    const auto a = run_protocol(p, {u, psi, std::nullopt, Sampled{77}});
    const auto b = run_protocol(p, {u, psi, std::nullopt, Sampled{77}});
    ASSERT_EQ(a.size(), 1u);
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(a[0].measurement_record, b[0].measurement_record);
    EXPECT_EQ(a[0].probability, b[0].probability);
  }
}

TEST(Session, rejects_nonlocal_operations) {
  const QubitId a{0, Party::Alice}, b{1, Party::Bob};
  Session s(tensor(StateVector::basis({a}, 0), StateVector::basis({b}, 0)), {});
  EXPECT_THROW(s.local(Party::Alice, gates::x(), {b}), InvariantViolation);
  EXPECT_THROW(s.local(Party::Alice, gates::cnot(), {a, b}), InvariantViolation);
  EXPECT_THROW(s.measure(Party::Bob, {a}, Basis::Computational), InvariantViolation);
}

TEST(Session, counts_each_pair_once) {
  const QubitId a{0, Party::Alice}, b{1, Party::Bob};
  Session s(StateVector({1.0, 0.0, 0.0, 1.0}, {a, b}), {{a, b}});
  EXPECT_EQ(s.ledger().ebits_consumed, 0);
  s.local(Party::Alice, gates::x(), {a});
  s.local(Party::Bob, gates::x(), {b});
  EXPECT_EQ(s.ledger().ebits_consumed, 1);
  s.send(Party::Alice, 2);
  s.send(Party::Bob, 1);
  EXPECT_EQ(s.ledger(), (ResourceLedger{1, 2, 1}));
}

TEST(CpDemo, entropy_two_bits_from_product_input) {
  const auto demo = demo_cp_entanglement();
  EXPECT_NEAR(demo.entropy, 2.0, 1e-9);
  EXPECT_NEAR(demo.input_entropy, 0.0, 1e-9);
}

TEST(CpDemo, bob_components_are_bell_states) {
  using namespace demo_qubits;
  const auto demo = demo_cp_entanglement();
  // Conditioned on Alice's |cc'> = |m>, Bob's pair is a Bell state.
  for (const auto& branch : measure(demo.state, {kC, kCPrime})) {
    EXPECT_NEAR(branch.probability, 0.25, 1e-12);
    const auto bell = measure(branch.post_state, {kB1, kB2}, Basis::Bell);
    ASSERT_EQ(bell.size(), 1u);
  }
  // |11>_{cc'} pairs with Phi-.
  const auto branches = measure(demo.state, {kC, kCPrime});
  const auto& b11 = branches.back();
  ASSERT_EQ(b11.outcome, "11");
  EXPECT_EQ(measure(b11.post_state, {kB1, kB2}, Basis::Bell).front().index(), 1u);
}

TEST(CpDemo, capacity_decodes_every_message) {
  for (unsigned m = 0; m < 4; ++m) EXPECT_EQ(demo_cp_capacity(m), m);
  EXPECT_THROW(demo_cp_capacity(4), PreconditionError);
}

TEST(CpDemo, cnot_reverse_carries_bobs_bit) {
  EXPECT_EQ(demo_cnot_reverse(0), 0u);
  EXPECT_EQ(demo_cnot_reverse(1), 1u);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_EQ(demo_cnot_reverse(1, Sampled{seed}), 1u);
    EXPECT_EQ(demo_cnot_reverse(0, Sampled{seed}), demo_cnot_reverse(0, Sampled{seed}));
  }
}

TEST(Ramsey, fringe_values) {
  const auto pts = ramsey_curve(std::vector<double>{0.0, pi / 2, pi});
  EXPECT_NEAR(pts[0].p_plus, 1.0, 1e-12);
  EXPECT_NEAR(pts[1].p_plus, 0.5, 1e-12);
  EXPECT_NEAR(pts[2].p_plus, 0.0, 1e-12);
}
