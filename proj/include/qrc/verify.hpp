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

// Seeded property suite over every module's invariants. Backs the `verify`
// subcommand; each property runs on its own engine so the suite can fan out.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qrc/bloch.hpp"
#include "qrc/opsets.hpp"
#include "qrc/protocols.hpp"
#include "qrc/qcore.hpp"
#include "qrc/random.hpp"
#include "qrc/textio.hpp"

namespace qrc::verify {

struct PropertyResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Property {
  std::string module;
  std::string name;
  // Returns an empty string on success, otherwise the first counterexample.
  std::function<std::string(random::Engine&)> check;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

inline StateVector random_register(random::Engine& rng, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<Complex> amps(std::size_t{1} << n);
  for (auto& a : amps) a = Complex(g(rng), g(rng));
  std::vector<QubitId> reg;
  for (std::size_t i = 0; i < n; ++i) reg.push_back({i, i % 2 ? Party::Bob : Party::Alice});
  return StateVector(std::move(amps), std::move(reg));
}

inline Unimodular random_in_set(random::Engine& rng, int i) {
  return i % 2 ? random::set_b(rng) : random::set_a(rng);
}

}  // namespace detail

inline std::vector<Property> properties() {
  using detail::fmt;
  std::vector<Property> ps;

  // qcore -------------------------------------------------------------------
  ps.push_back({"qcore", "norm preservation", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 200; ++t) {
                    const auto s = detail::random_register(rng, 4);
                    const auto& q = s.qubits();
                    const Gate g1 = random::unimodular(rng).gate();
                    auto out = apply_gate(s, g1, {q[t % 4]});
                    out = apply_gate(out, gates::cnot(), {q[(t + 1) % 4], q[(t + 2) % 4]});
                    if (std::abs(out.norm() - 1.0) > tol::kNorm) return "norm " + fmt(out.norm());
                  }
                  return {};
                }});
  ps.push_back({"qcore", "branch completeness", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 200; ++t) {
                    const auto s = detail::random_register(rng, 4);
                    const auto& q = s.qubits();
                    for (auto basis : {Basis::Computational, Basis::Bell}) {
                      double total = 0;
                      for (const auto& b : measure(s, {q[t % 4], q[(t + 3) % 4]}, basis)) total += b.probability;
                      if (std::abs(total - 1.0) > tol::kNorm) return "sum " + fmt(total);
                    }
                  }
                  return {};
                }});
  ps.push_back({"qcore", "measurement idempotence", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 100; ++t) {
                    const auto s = detail::random_register(rng, 3);
                    const auto& q = s.qubits();
                    for (auto basis : {Basis::Computational, Basis::Bell}) {
                      for (const auto& b : measure(s, {q[0], q[2]}, basis)) {
                        const auto again = measure(b.post_state, {q[0], q[2]}, basis);
                        if (again.size() != 1 || again[0].outcome != b.outcome ||
                            std::abs(again[0].probability - 1.0) > tol::kNorm) {
                          return "re-measurement of " + b.outcome + " not deterministic";
                        }
                      }
                    }
                  }
                  return {};
                }});
  ps.push_back({"qcore", "purity of product states", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 100; ++t) {
                    const auto a = random::state(rng, {0, Party::Alice});
                    const auto b = tensor(random::state(rng, {1, Party::Bob}), random::state(rng, {2, Party::Bob}));
                    const double h = entanglement_entropy(tensor(a, b), {QubitId{0}});
                    if (std::abs(h) > tol::kDerived) return "entropy " + fmt(h);
                  }
                  return {};
                }});
  ps.push_back({"qcore", "entropy bound", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 100; ++t) {
                    const auto s = detail::random_register(rng, 5);
                    const auto& q = s.qubits();
                    const std::size_t k = 1 + t % 4;
                    std::vector<QubitId> cut(q.begin(), q.begin() + static_cast<long>(k));
                    const double h = entanglement_entropy(s, cut);
                    if (h < 0 || h > static_cast<double>(std::min(k, 5 - k)) + tol::kDerived) {
                      return "entropy " + fmt(h) + " for cut of " + std::to_string(k);
                    }
                  }
                  return {};
                }});

  // opsets ------------------------------------------------------------------
  ps.push_back({"opsets", "unimodularity closure", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 1000; ++t) {
                    const auto u = random::unimodular(rng) * random::unimodular(rng).adjoint() *
                                   q_operator(random::angle(rng), random::state(rng));
                    const double n = std::norm(u.a()) + std::norm(u.b());
                    if (std::abs(n - 1.0) > tol::kUnitarity) return "|a|^2+|b|^2 = " + fmt(n);
                  }
                  return {};
                }});
  ps.push_back({"opsets", "classification trichotomy", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 1000; ++t) {
                    const Vec3 n = random::axis(rng);
                    const Unimodular u = t % 3 == 0   ? random::commuting(rng, n)
                                         : t % 3 == 1 ? random::anticommuting(rng, n)
                                                      : random::unimodular(rng);
                    const auto c = commutation_norms(u, n);
                    const int hits = (c.commutator <= tol::kDerived) + (c.anticommutator <= tol::kDerived);
                    if (hits > 1) return "operator both commutes and anticommutes";
                    const auto tag = classify_operator(u, n).tag;
                    if ((hits == 0) != (tag == OperatorClass::Tag::General)) return "tag disagrees with norms";
                  }
                  return {};
                }});
  ps.push_back({"opsets", "Q symmetry", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 1000; ++t) {
                    const double alpha = random::angle(rng);
                    const auto psi = random::state(rng);
                    const Mat2 lhs = q_operator(alpha, psi).matrix();
                    const Mat2 rhs = q_operator(-alpha, orthogonal_state(psi)).matrix();
                    const double d = (lhs - rhs).cwiseAbs().maxCoeff();
                    if (d > tol::kUnitarity) return "entry difference " + fmt(d);
                  }
                  return {};
                }});
  ps.push_back({"opsets", "correction identity", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 1000; ++t) {
                    const auto u = random::unimodular(rng);
                    const auto sol = solve_correction(u);
                    const double r = correction_residual(sol.v, sol.delta, u);
                    if (r > tol::kDerived) return "residual " + fmt(r);
                  }
                  return {};
                }});
  ps.push_back({"opsets", "Set A/B closure under Z conjugation", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 1000; ++t) {
                    const auto u = detail::random_in_set(rng, t);
                    const auto tag = classify_operator(u).tag;
                    const double sign = tag == OperatorClass::Tag::CommutesWithAxis ? 1.0 : -1.0;
                    const Mat2 conj = pauli::z() * u.matrix() * pauli::z();
                    const double d = (conj - sign * u.matrix()).cwiseAbs().maxCoeff();
                    if (tag == OperatorClass::Tag::General || d > tol::kDerived) return "Z U Z != +-U";
                  }
                  return {};
                }});
  ps.push_back({"opsets", "appendix overlap", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 1000; ++t) {
                    const auto u1 = random::unimodular(rng);
                    const auto u2 = random::unimodular(rng);
                    const auto pair = find_orthogonal_pair(u1, u2);
                    const double d = std::abs(std::abs(inner_product(pair.phi_prime, pair.phi)) -
                                              std::abs(std::sin(pair.lambda)));
                    if (d > tol::kDerived) return "overlap off by " + fmt(d);
                  }
                  return {};
                }});
  ps.push_back({"opsets", "axis recovery round trip", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 100; ++t) {
                    const Vec3 n = random::axis(rng);
                    const auto w = random::unimodular(rng);
                    std::vector<Unimodular> set;
                    for (int i = 0; i < 10; ++i) {
                      const auto u = i % 2 ? random::anticommuting(rng, n) : random::commuting(rng, n);
                      set.push_back(w * u * w.adjoint());
                    }
                    const auto rot = rotation_matrix(w);
                    const Vec3 expected{dot(rot[0], n), dot(rot[1], n), dot(rot[2], n)};
                    const auto found = find_common_axis(set);
                    if (!found) return "no axis found";
                    const double err = axis_angle_between(*found, expected);
                    if (err > tol::kAxis) return "angular error " + fmt(err);
                  }
                  return {};
                }});

  // protocols ---------------------------------------------------------------
  ps.push_back({"protocols", "ledger exactness", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 50; ++t) {
                    const auto psi = random::state(rng);
                    const auto u = detail::random_in_set(rng, t);
                    const auto tag = classify_operator(u).tag;
                    const std::pair<Protocol, ResourceLedger> cases[] = {
                        {Protocol::Bqst, {2, 2, 2}},
                        {Protocol::Universal221, {2, 2, 1}},
                        {Protocol::Restricted221, {2, 2, 1}},
                        {Protocol::OneOneOne, {1, 1, 1}}};
                    for (const auto& [p, want] : cases) {
                      ProtocolConfig cfg{u, psi, std::nullopt, Exhaustive{}};
                      if (p == Protocol::OneOneOne) cfg.promise = tag;
                      for (const auto& o : run_protocol(p, cfg)) {
                        if (!(o.ledger == want)) return std::string(to_string(p)) + " ledger mismatch";
                      }
                    }
                  }
                  return {};
                }});
  ps.push_back({"protocols", "universal 2-2-1 succeeds with probability 1/2", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 100; ++t) {
                    const auto out = run_universal_221({random::unimodular(rng), random::state(rng)});
                    const double p = success_probability(out);
                    if (std::abs(p - 0.5) > tol::kDerived) return "success probability " + fmt(p);
                  }
                  return {};
                }});
  ps.push_back({"protocols", "restricted 2-2-1 and 1-1-1 always succeed", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 1000; ++t) {
                    const auto u = detail::random_in_set(rng, t);
                    const auto psi = random::state(rng);
                    for (const auto& o : run_restricted_221({u, psi})) {
                      if (o.target_fidelity < 1.0 - tol::kDerived) return "restricted fidelity " + fmt(o.target_fidelity);
                    }
                    for (const auto& o : run_111({u, psi, classify_operator(u).tag})) {
                      if (o.target_fidelity < 1.0 - tol::kDerived) return "1-1-1 fidelity " + fmt(o.target_fidelity);
                    }
                  }
                  return {};
                }});
  ps.push_back({"protocols", "branch probability conservation", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 50; ++t) {
                    const auto u = detail::random_in_set(rng, t);
                    const auto psi = random::state(rng);
                    for (auto p : {Protocol::Bqst, Protocol::Universal221, Protocol::Restricted221, Protocol::OneOneOne}) {
                      ProtocolConfig cfg{u, psi};
                      if (p == Protocol::OneOneOne) cfg.promise = classify_operator(u).tag;
                      double total = 0;
                      for (const auto& o : run_protocol(p, cfg)) total += o.probability;
                      if (std::abs(total - 1.0) > tol::kNorm) return std::string(to_string(p)) + " total " + fmt(total);
                    }
                  }
                  return {};
                }});
  ps.push_back({"protocols", "failure branch holds U Z psi", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 100; ++t) {
                    const auto u = random::unimodular(rng);
                    const auto psi = random::state(rng);
                    const auto wrong = u.apply(mirror_state(psi));
                    for (const auto& o : run_universal_221({u, psi})) {
                      if (o.succeeded) continue;
                      const double f = fidelity_up_to_phase(o.bob_final, wrong);
                      if (f < 1.0 - tol::kDerived) return "failure fidelity " + fmt(f);
                    }
                  }
                  return {};
                }});
  ps.push_back({"protocols", "restricted run matches classification", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 200; ++t) {
                    const auto u = t % 2 ? random::unimodular(rng) : detail::random_in_set(rng, t / 2);
                    const bool in_set = classify_operator(u).tag != OperatorClass::Tag::General;
                    const auto common = check_common_correction(std::vector<Unimodular>{u});
                    const bool admits_z = common && (common->v - pauli::z()).norm() <= tol::kDerived;
                    bool ran = false;
                    try {
                      (void)run_restricted_221({u, random::state(rng)});
                      ran = true;
                    } catch (const PreconditionError&) {
                    }
                    if (ran != in_set || admits_z != in_set) return "restricted protocol disagrees with classification";
                  }
                  return {};
                }});

  // bloch -------------------------------------------------------------------
  ps.push_back({"bloch", "pure states have unit Bloch vectors", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 1000; ++t) {
                    const double n = bloch_vector(random::state(rng)).norm();
                    if (std::abs(n - 1.0) > tol::kDerived) return "norm " + fmt(n);
                  }
                  return {};
                }});
  ps.push_back({"bloch", "conjugation covariance", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 1000; ++t) {
                    const auto u = random::unimodular(rng);
                    const auto psi = random::state(rng);
                    const auto s = bloch_vector(psi).as_vec3();
                    const auto r = rotation_matrix(u);
                    const BlochVector rotated{dot(r[0], s), dot(r[1], s), dot(r[2], s)};
                    const Mat2 direct = u.matrix() * density_of(psi) * u.matrix().adjoint();
                    const double d = (density_from_bloch(rotated) - direct).cwiseAbs().maxCoeff();
                    if (d > tol::kDerived) return "reconstruction differs by " + fmt(d);
                  }
                  return {};
                }});
  ps.push_back({"bloch", "restoration iff classification", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 1000; ++t) {
                    const auto u = t % 2 ? detail::random_in_set(rng, t / 2) : random::general(rng);
                    const bool in_set = classify_operator(u).tag != OperatorClass::Tag::General;
                    if (in_set) {
                      if (!verify_restoration(u, random::state(rng))) return "restoration failed for in-set U";
                    } else {
                      bool any_fail = false;
                      for (int k = 0; k < 10 && !any_fail; ++k) any_fail = !verify_restoration(u, random::state(rng));
                      if (!any_fail) return "restoration held for a general U on 10 states";
                    }
                  }
                  return {};
                }});

  // cli ---------------------------------------------------------------------
  ps.push_back({"cli", "operator text round trip", [](random::Engine& rng) -> std::string {
                  for (int t = 0; t < 100; ++t) {
                    const auto u = random::unimodular(rng);
                    const auto back = parse_operator(render_operator(u));
                    const double d = (back.matrix() - u.matrix()).cwiseAbs().maxCoeff();
                    if (d > 1e-12) return "round trip differs by " + fmt(d);
                  }
                  return {};
                }});
  return ps;
}

/// Runs every property concurrently; property i uses engine seed + i.
inline std::vector<PropertyResult> run_all(std::uint64_t seed) {
  const auto ps = properties();
  std::vector<std::future<PropertyResult>> jobs;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    jobs.push_back(std::async(std::launch::async, [&ps, i, seed] {
      random::Engine rng(seed + i);
      PropertyResult r{ps[i].module, ps[i].name, false, {}};
      try {
        r.detail = ps[i].check(rng);
        r.passed = r.detail.empty();
      } catch (const std::exception& e) {
        r.detail = std::string("exception: ") + e.what();
      }
      return r;
    }));
  }
  std::vector<PropertyResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace qrc::verify
