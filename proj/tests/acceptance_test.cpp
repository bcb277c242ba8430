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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails. Expected values come from the
// dense-matrix oracles in oracles.hpp, not from the library under test.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qrc/qrc.hpp"
#include "qrc/random.hpp"

using namespace qrc;
using std::numbers::pi;

namespace {

using Tag = OperatorClass::Tag;

struct Criterion {
  const char* id;
  const char* title;
  std::function<std::string()> check;  // empty string on success
};

std::string fmt(const char* f, double a, double b = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

oracle::Mat dense(const Unimodular& u) { return oracle::Mat(u.matrix()); }

// |<U psi | got>|^2 with U psi formed by a dense matrix-vector product.
double oracle_fidelity(const oracle::Mat& u, const StateVector& psi, const StateVector& got) {
  oracle::Vec v(2);
  v << psi[0], psi[1];
  const oracle::Vec want = u * v;
  return std::norm(want(0) * std::conj(got[0]) + want(1) * std::conj(got[1]));
}

// Smallest oracle fidelity and a ledger check over every branch.
std::string all_branches_perfect(const std::vector<ProtocolOutcome>& outs, const Unimodular& u,
                                 const StateVector& psi, const ResourceLedger& ledger) {
  double total = 0;
  for (const auto& o : outs) {
    total += o.probability;
    const double f = oracle_fidelity(dense(u), psi, o.bob_final);
    if (f < 1 - 1e-9) return fmt("branch fidelity %.12f", f);
    if (!(o.ledger == ledger)) {
      return "ledger (" + std::to_string(o.ledger.ebits_consumed) + "," + std::to_string(o.ledger.cbits_a_to_b) +
             "," + std::to_string(o.ledger.cbits_b_to_a) + ")";
    }
  }
  if (std::abs(total - 1) > 1e-10) return fmt("branch probabilities sum to %.15f", total);
  return {};
}

std::string universal_half() {
  random::Engine rng(101);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const auto u = random::unimodular(rng);
    const auto psi = random::state(rng);
    double p = 0;
    for (const auto& o : run_universal_221({u, psi})) {
      if (oracle_fidelity(dense(u), psi, o.bob_final) >= 1 - 1e-9) p += o.probability;
    }
    worst = std::max(worst, std::abs(p - 0.5));
  }
  return worst <= 1e-9 ? std::string{} : fmt("max |p - 0.5| = %.3e", worst);
}

std::string restricted_perfect() {
  random::Engine rng(102);
  for (int t = 0; t < 1000; ++t) {
    const auto u = t < 500 ? random::set_a(rng) : random::set_b(rng);
    const auto psi = random::state(rng);
    if (auto e = all_branches_perfect(run_restricted_221({u, psi}), u, psi, {2, 2, 1}); !e.empty()) return e;
  }
  return {};
}

std::string one_one_one_perfect() {
  random::Engine rng(103);
  for (int t = 0; t < 1000; ++t) {
    const bool a = t < 500;
    const auto u = a ? random::set_a(rng) : random::set_b(rng);
    const auto psi = random::state(rng);
    const auto outs = run_111({u, psi, a ? Tag::CommutesWithAxis : Tag::AnticommutesWithAxis});
    if (auto e = all_branches_perfect(outs, u, psi, {1, 1, 1}); !e.empty()) return e;
  }
  return {};
}

std::string cp_entropy() {
  const auto demo = demo_cp_entanglement();
  const double oracle_h = oracle::entropy_bits(oracle::trace_out_tail(demo.state.to_eigen(), 2, 4));
  if (std::abs(demo.entropy - 2.0) > 1e-9) return fmt("entropy %.12f", demo.entropy);
  if (std::abs(oracle_h - 2.0) > 1e-9) return fmt("oracle entropy %.12f", oracle_h);
  return {};
}

std::string cp_capacity() {
  for (unsigned m = 0; m < 4; ++m) {
    if (demo_cp_capacity(m) != m) return "message " + std::to_string(m) + " decoded wrongly";
  }
  for (unsigned b = 0; b < 2; ++b) {
    if (demo_cnot_reverse(b) != b) return "reverse CNOT lost bit " + std::to_string(b);
  }
  return {};
}

std::string failure_branch() {
  random::Engine rng(106);
  double worst = 1;
  int failures = 0;
  for (int t = 0; t < 100; ++t) {
    const auto u = random::unimodular(rng);
    const auto psi = random::state(rng);
    const oracle::Mat uz = dense(u) * oracle::sz();
    for (const auto& o : run_universal_221({u, psi})) {
      if (o.succeeded) continue;
      ++failures;
      worst = std::min(worst, oracle_fidelity(uz, psi, o.bob_final));
    }
  }
  if (failures == 0) return "no failure branches observed";
  return worst >= 1 - 1e-9 ? std::string{} : fmt("min fidelity with U Z psi %.12f", worst);
}

std::string appendix_overlap() {
  random::Engine rng(107);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto u1 = random::unimodular(rng);
    const auto u2 = random::unimodular(rng);
    const auto phases = oracle::eigenphases(dense(u2).adjoint() * dense(u1));
    const auto pair = find_orthogonal_pair(u1, u2);
    worst = std::max(worst, std::abs(std::abs(inner_product(pair.phi_prime, pair.phi)) - std::abs(std::sin(phases[0]))));
  }
  return worst <= 1e-9 ? std::string{} : fmt("max deviation %.3e", worst);
}

std::string characterization() {
  random::Engine rng(108);
  for (int t = 0; t < 500; ++t) {
    const auto g = random::general(rng);
    const oracle::Mat m = dense(g);
    if ((m * oracle::sz() - oracle::sz() * m).norm() <= 1e-9 || (m * oracle::sz() + oracle::sz() * m).norm() <= 1e-9) {
      return "sampler produced a non-general operator";
    }
    bool fails = false;
    for (int k = 0; k < 10; ++k) fails |= !verify_restoration(g, random::state(rng));
    if (!fails) return "restoration held for a general operator on 10 states";
    std::vector<Unimodular> set{random::set_a(rng), g};
    for (int k = 0; k < 4; ++k) set.push_back(random::set_a(rng));
    if (check_common_correction(set)) return "common correction found for a set with a general operator";
  }
  return {};
}

std::string axis_recovery() {
  random::Engine rng(109);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    const Vec3 n = random::axis(rng);
    const auto w = random::unimodular(rng);
    std::vector<Unimodular> set;
    for (int k = 0; k < 10; ++k) {
      const auto op = k % 2 ? random::anticommuting(rng, n) : random::commuting(rng, n);
      set.push_back(w * op * w.adjoint());
    }
    std::shuffle(set.begin(), set.end(), rng);
    const auto found = find_common_axis(set);
    if (!found) return "no axis found in trial " + std::to_string(t);
    // m with W (n.sigma) W^dagger = m.sigma, from traces of dense matrices.
    const oracle::Mat ns = n[0] * oracle::sx() + n[1] * oracle::sy() + n[2] * oracle::sz();
    const oracle::Mat c = dense(w) * ns * dense(w).adjoint();
    const Vec3 m{0.5 * (c * oracle::sx()).trace().real(), 0.5 * (c * oracle::sy()).trace().real(),
                 0.5 * (c * oracle::sz()).trace().real()};
    const double d = std::clamp(std::abs(dot(*found, m)) / length(m), 0.0, 1.0);
    worst = std::max(worst, std::acos(d));
  }
  return worst <= 1e-6 ? std::string{} : fmt("max angular error %.3e", worst);
}

std::string ramsey() {
  std::vector<double> thetas;
  for (int k = 0; k < 64; ++k) thetas.push_back(2 * pi * k / 63);
  double worst = 0;
  for (const auto& p : ramsey_curve(thetas)) worst = std::max(worst, std::abs(p.p_plus - (1 + std::cos(p.theta)) / 2));
  return worst <= 1e-12 ? std::string{} : fmt("max deviation %.3e", worst);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "universal 2-2-1 succeeds with probability 1/2", universal_half},
      {"AC2", "restricted 2-2-1 is perfect on both operator sets, ledger (2,2,1)", restricted_perfect},
      {"AC3", "1-1-1 protocol is perfect under the promise, ledger (1,1,1)", one_one_one_perfect},
      {"AC4", "remote CP gate creates 2 e-bits", cp_entropy},
      {"AC5", "remote CP gate carries 2 bits; reverse CNOT carries 1", cp_capacity},
      {"AC6", "universal 2-2-1 failure branches hold U Z psi", failure_branch},
      {"AC7", "orthogonal-pair overlap equals |sin lambda|", appendix_overlap},
      {"AC8", "general operators defeat restoration and common correction", characterization},
      {"AC9", "common axis recovered after a basis change", axis_recovery},
      {"AC10", "Ramsey fringe through the 1-1-1 protocol", ramsey},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    std::string detail;
    try {
      detail = c.check();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (detail.empty()) {
      std::printf("PASS %-4s %s\n", c.id, c.title);
    } else {
      std::printf("FAIL %-4s %s: %s\n", c.id, c.title, detail.c_str());
      ++failed;
    }
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
