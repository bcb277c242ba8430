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

// Exact statevector engine over small, party-labelled qubit registers.
//
// Conventions used everywhere in the library:
//  * the qubit at register position 0 is the most significant bit of the
//    amplitude index;
//  * states are stored normalized; every constructor normalizes on entry;
//  * measurements are exhaustive: all branches of nonzero probability are
//    returned together with their renormalized post-measurement states.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qrc/error.hpp"

namespace qrc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;

namespace tol {
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kNorm = 1e-10;
inline constexpr double kDerived = 1e-9;
inline constexpr double kAxis = 1e-6;
inline constexpr double kSampling = 1e-8;
// Branches below this probability carry no renormalizable post-state.
inline constexpr double kNegligibleProbability = 1e-14;
}  // namespace tol

enum class Party { Alice, Bob, BlackBox };

inline std::string_view to_string(Party p) {
  switch (p) {
    case Party::Alice:
      return "alice";
    case Party::Bob:
      return "bob";
    case Party::BlackBox:
      return "blackbox";
  }
  return "?";
}

/// Qubit identity is its index; the owner travels with it for locality checks.
struct QubitId {
  std::size_t index = 0;
  Party owner = Party::Alice;

  friend bool operator==(const QubitId& a, const QubitId& b) { return a.index == b.index; }
};

inline std::size_t qubit_bit(std::size_t position, std::size_t num_qubits) {
  return num_qubits - 1 - position;
}

/// Normalized amplitude vector over an ordered register of distinct qubits.
class StateVector {
 public:
  StateVector(std::vector<Complex> amplitudes, std::vector<QubitId> reg)
      : amps_(std::move(amplitudes)), reg_(std::move(reg)) {
    if (reg_.empty()) throw PreconditionError("state register is empty");
    if (reg_.size() > 20) throw PreconditionError("register too large for dense simulation");
    for (std::size_t i = 0; i < reg_.size(); ++i) {
      for (std::size_t j = i + 1; j < reg_.size(); ++j) {
        if (reg_[i] == reg_[j]) {
          throw RegisterConflict("qubit " + std::to_string(reg_[i].index) +
                                 " appears twice in register");
        }
      }
    }
    if (amps_.size() != (std::size_t{1} << reg_.size())) {
      throw PreconditionError("amplitude count " + std::to_string(amps_.size()) +
                              " does not match 2^" + std::to_string(reg_.size()));
    }
    double n2 = 0.0;
    for (const auto& a : amps_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw PreconditionError("non-finite amplitude");
      }
      n2 += std::norm(a);
    }
    if (n2 <= 1e-300) throw PreconditionError("zero vector cannot be normalized");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amps_) a *= inv;
  }

  /// Computational basis state |index> over `reg`.
  static StateVector basis(std::vector<QubitId> reg, std::size_t index) {
    std::vector<Complex> amps(std::size_t{1} << reg.size());
    if (index >= amps.size()) throw PreconditionError("basis index out of range");
    amps[index] = 1.0;
    return StateVector(std::move(amps), std::move(reg));
  }

  std::size_t num_qubits() const { return reg_.size(); }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  const std::vector<QubitId>& qubits() const { return reg_; }

  std::optional<std::size_t> position_of(const QubitId& q) const {
    auto it = std::find(reg_.begin(), reg_.end(), q);
    if (it == reg_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - reg_.begin());
  }

  std::size_t require_position(const QubitId& q) const {
    auto p = position_of(q);
    if (!p) throw PreconditionError("qubit " + std::to_string(q.index) + " not in register");
    return *p;
  }

  double norm() const {
    double n2 = 0.0;
    for (const auto& a : amps_) n2 += std::norm(a);
    return std::sqrt(n2);
  }

  Eigen::VectorXcd to_eigen() const {
    return Eigen::Map<const Eigen::VectorXcd>(amps_.data(), static_cast<Eigen::Index>(amps_.size()));
  }

 private:
  std::vector<Complex> amps_;
  std::vector<QubitId> reg_;
};

/// Single-qubit state a|0> + b|1> on qubit `q` (normalized on entry).
inline StateVector qubit_state(Complex a, Complex b, QubitId q = {}) {
  return StateVector({a, b}, {q});
}

/// Unitary acting on 1, 2 or 3 qubits. Three-qubit gates house the
/// controlled-Pauli gate; everything else is one- or two-qubit.
class Gate {
 public:
  explicit Gate(Matrix m, std::string name = {}) : m_(std::move(m)), name_(std::move(name)) {
    const auto d = m_.rows();
    if (d != m_.cols() || (d != 2 && d != 4 && d != 8)) {
      throw PreconditionError("gate must be a square matrix of dimension 2, 4 or 8");
    }
    const double defect = (m_.adjoint() * m_ - Matrix::Identity(d, d)).norm();
    if (defect > tol::kUnitarity) {
      throw PreconditionError("gate is not unitary (defect " + std::to_string(defect) + ")");
    }
  }

  Eigen::Index dimension() const { return m_.rows(); }
  std::size_t arity() const {
    return dimension() == 2 ? 1 : dimension() == 4 ? 2 : 3;
  }
  const Matrix& matrix() const { return m_; }
  const std::string& name() const { return name_; }

 private:
  Matrix m_;
  std::string name_;
};

namespace pauli {
inline Mat2 identity() { return Mat2::Identity(); }
inline Mat2 x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}
inline Mat2 y() {
  Mat2 m;
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline Mat2 z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}
inline Mat2 hadamard() {
  Mat2 m;
  m << 1, 1, 1, -1;
  return m / std::numbers::sqrt2;
}
}  // namespace pauli

namespace gates {
inline Gate from(const Mat2& m, std::string name) { return Gate(Matrix(m), std::move(name)); }
inline Gate x() { return from(pauli::x(), "X"); }
inline Gate y() { return from(pauli::y(), "Y"); }
inline Gate z() { return from(pauli::z(), "Z"); }
inline Gate h() { return from(pauli::hadamard(), "H"); }

/// CNOT with the first target as control.
inline Gate cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = 1;
  m(2, 3) = m(3, 2) = 1;
  return Gate(std::move(m), "CNOT");
}

/// Controlled-Pauli gate: controls |cc'> = 00,01,10,11 select 1, X, Y, Z on
/// the third target.
inline Gate controlled_pauli() {
  Matrix m = Matrix::Zero(8, 8);
  const Mat2 blocks[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
  for (int k = 0; k < 4; ++k) m.block(2 * k, 2 * k, 2, 2) = blocks[k];
  return Gate(std::move(m), "CP");
}
}  // namespace gates

namespace detail {

// Applies an arbitrary (not necessarily unitary) 2^k x 2^k matrix to the
// listed register positions; positions[0] is the most significant gate bit.
inline std::vector<Complex> apply_matrix(std::span<const Complex> amps, std::size_t n,
                                         std::span<const std::size_t> positions,
                                         const Matrix& m) {
  const std::size_t k = positions.size();
  const std::size_t sub = std::size_t{1} << k;
  std::vector<std::size_t> masks(k);
  std::size_t target_mask = 0;
  for (std::size_t j = 0; j < k; ++j) {
    masks[j] = std::size_t{1} << qubit_bit(positions[j], n);
    target_mask |= masks[j];
  }
  auto offset = [&](std::size_t local) {
    std::size_t off = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (local & (std::size_t{1} << (k - 1 - j))) off |= masks[j];
    }
    return off;
  };
  std::vector<std::size_t> offsets(sub);
  for (std::size_t l = 0; l < sub; ++l) offsets[l] = offset(l);

  std::vector<Complex> out(amps.size());
  std::vector<Complex> in(sub);
  for (std::size_t base = 0; base < amps.size(); ++base) {
    if (base & target_mask) continue;
    for (std::size_t l = 0; l < sub; ++l) in[l] = amps[base | offsets[l]];
    for (std::size_t r = 0; r < sub; ++r) {
      Complex acc = 0;
      for (std::size_t c = 0; c < sub; ++c) acc += m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
      out[base | offsets[r]] = acc;
    }
  }
  return out;
}

inline std::vector<std::size_t> positions_of(const StateVector& s, std::span<const QubitId> targets) {
  std::vector<std::size_t> pos;
  pos.reserve(targets.size());
  for (const auto& q : targets) {
    const std::size_t p = s.require_position(q);
    if (std::find(pos.begin(), pos.end(), p) != pos.end()) {
      throw PreconditionError("qubit " + std::to_string(q.index) + " targeted twice");
    }
    pos.push_back(p);
  }
  return pos;
}

inline double norm2(std::span<const Complex> v) {
  double n = 0;
  for (const auto& a : v) n += std::norm(a);
  return n;
}

}  // namespace detail

/// Kronecker product; the register of `s2` is appended to that of `s1`.
inline StateVector tensor(const StateVector& s1, const StateVector& s2) {
  for (const auto& q : s2.qubits()) {
    if (s1.position_of(q)) {
      throw RegisterConflict("qubit " + std::to_string(q.index) + " present in both registers");
    }
  }
  std::vector<Complex> amps;
  amps.reserve(s1.dimension() * s2.dimension());
  for (const auto& a : s1.amplitudes()) {
    for (const auto& b : s2.amplitudes()) amps.push_back(a * b);
  }
  std::vector<QubitId> reg = s1.qubits();
  reg.insert(reg.end(), s2.qubits().begin(), s2.qubits().end());
  return StateVector(std::move(amps), std::move(reg));
}

inline StateVector apply_gate(const StateVector& s, const Gate& g, std::span<const QubitId> targets) {
  if (targets.size() != g.arity()) {
    throw PreconditionError("gate " + g.name() + " acts on " + std::to_string(g.arity()) +
                            " qubits but " + std::to_string(targets.size()) + " targets given");
  }
  const auto pos = detail::positions_of(s, targets);
  auto out = detail::apply_matrix(s.amplitudes(), s.num_qubits(), pos, g.matrix());
  if (std::abs(std::sqrt(detail::norm2(out)) - 1.0) > tol::kNorm) {
    throw InvariantViolation("norm not preserved by gate " + g.name());
  }
  return StateVector(std::move(out), s.qubits());
}

inline StateVector apply_gate(const StateVector& s, const Gate& g,
                              std::initializer_list<QubitId> targets) {
  return apply_gate(s, g, std::span<const QubitId>(targets.begin(), targets.size()));
}

enum class Basis { Computational, Bell };

inline std::string_view to_string(Basis b) {
  return b == Basis::Computational ? "computational" : "bell";
}

/// Bell outcomes are indexed (Phi+, Phi-, Psi+, Psi-) -> 0..3.
inline std::string_view bell_label(std::size_t index) {
  static constexpr std::string_view labels[4] = {"Phi+", "Phi-", "Psi+", "Psi-"};
  return index < 4 ? labels[index] : "?";
}

inline Eigen::Vector4cd bell_vector(std::size_t index) {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
  switch (index) {
    case 0: v << r, 0, 0, r; break;
    case 1: v << r, 0, 0, -r; break;
    case 2: v << 0, r, r, 0; break;
    case 3: v << 0, r, -r, 0; break;
    default: throw PreconditionError("Bell index out of range");
  }
  return v;
}

struct MeasurementBranch {
  /// One character per measured bit; for Bell outcomes the two-bit index.
  std::string outcome;
  double probability = 0.0;
  StateVector post_state;

  std::size_t index() const { return std::stoul(outcome, nullptr, 2); }
};

inline std::string bits_of(std::size_t value, std::size_t width) {
  std::string s(width, '0');
  for (std::size_t j = 0; j < width; ++j) {
    if (value & (std::size_t{1} << (width - 1 - j))) s[j] = '1';
  }
  return s;
}

/// Every branch of nonzero probability, in ascending outcome order.
inline std::vector<MeasurementBranch> measure(const StateVector& s, std::span<const QubitId> targets,
                                              Basis basis = Basis::Computational) {
  if (targets.empty()) throw PreconditionError("measurement needs at least one target");
  if (basis == Basis::Bell && targets.size() != 2) {
    throw PreconditionError("Bell measurement needs exactly 2 targets, got " +
                            std::to_string(targets.size()));
  }
  const auto pos = detail::positions_of(s, targets);
  const std::size_t k = pos.size();
  const std::size_t outcomes = basis == Basis::Bell ? 4 : std::size_t{1} << k;

  std::vector<MeasurementBranch> branches;
  for (std::size_t o = 0; o < outcomes; ++o) {
    Matrix proj;
    if (basis == Basis::Bell) {
      const Eigen::Vector4cd b = bell_vector(o);
      proj = b * b.adjoint();
    } else {
      proj = Matrix::Zero(static_cast<Eigen::Index>(outcomes), static_cast<Eigen::Index>(outcomes));
      proj(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(o)) = 1;
    }
    auto projected = detail::apply_matrix(s.amplitudes(), s.num_qubits(), pos, proj);
    const double p = detail::norm2(projected);
    if (p < tol::kNegligibleProbability) continue;
    branches.push_back({bits_of(o, basis == Basis::Bell ? 2 : k), p,
                        StateVector(std::move(projected), s.qubits())});
  }
  double total = 0;
  for (const auto& b : branches) total += b.probability;
  if (std::abs(total - 1.0) > tol::kNorm) {
    throw InvariantViolation("measurement branch probabilities sum to " + std::to_string(total));
  }
  return branches;
}

inline std::vector<MeasurementBranch> measure(const StateVector& s, std::initializer_list<QubitId> targets,
                                              Basis basis = Basis::Computational) {
  return measure(s, std::span<const QubitId>(targets.begin(), targets.size()), basis);
}

/// Draws one branch with its probability.
template <class Rng>
const MeasurementBranch& sample_branch(std::span<const MeasurementBranch> branches, Rng& rng) {
  if (branches.empty()) throw PreconditionError("no branches to sample");
  double total = 0;
  for (const auto& b : branches) total += b.probability;
  if (std::abs(total - 1.0) > tol::kSampling) {
    throw PreconditionError("branch probabilities sum to " + std::to_string(total));
  }
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng) * total;
  double acc = 0;
  for (const auto& b : branches) {
    acc += b.probability;
    if (u < acc) return b;
  }
  return branches.back();
}

template <class Rng>
const MeasurementBranch& sample_branch(const std::vector<MeasurementBranch>& branches, Rng& rng) {
  return sample_branch(std::span<const MeasurementBranch>(branches), rng);
}

/// Reduced density operator on `keep`; row index bits follow the order of `keep`.
inline Matrix reduced_density(const StateVector& s, std::span<const QubitId> keep) {
  if (keep.empty()) throw PreconditionError("reduced density needs a nonempty subsystem");
  const auto pos = detail::positions_of(s, keep);
  const std::size_t n = s.num_qubits();
  std::vector<std::size_t> rest;
  for (std::size_t p = 0; p < n; ++p) {
    if (std::find(pos.begin(), pos.end(), p) == pos.end()) rest.push_back(p);
  }
  const std::size_t dk = std::size_t{1} << pos.size();
  const std::size_t dr = std::size_t{1} << rest.size();
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dr));
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    std::size_t kk = 0;
    for (std::size_t j = 0; j < pos.size(); ++j) {
      kk = (kk << 1) | ((i >> qubit_bit(pos[j], n)) & 1U);
    }
    std::size_t rr = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      rr = (rr << 1) | ((i >> qubit_bit(rest[j], n)) & 1U);
    }
    m(static_cast<Eigen::Index>(kk), static_cast<Eigen::Index>(rr)) = s[i];
  }
  return m * m.adjoint();
}

inline Matrix reduced_density(const StateVector& s, std::initializer_list<QubitId> keep) {
  return reduced_density(s, std::span<const QubitId>(keep.begin(), keep.size()));
}

/// Von Neumann entropy of a density matrix, in bits.
inline double von_neumann_entropy(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  double h = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()(i);
    if (l > 1e-15) h -= l * std::log2(l);
  }
  return std::max(h, 0.0);
}

/// Entropy of entanglement across the cut `cut | rest`, in bits.
inline double entanglement_entropy(const StateVector& s, std::span<const QubitId> cut) {
  if (cut.empty() || cut.size() >= s.num_qubits()) {
    throw PreconditionError("entropy cut must be a proper nonempty subset of the register");
  }
  const double h = von_neumann_entropy(reduced_density(s, cut));
  const double bound = static_cast<double>(std::min(cut.size(), s.num_qubits() - cut.size()));
  return std::min(h, bound);
}

inline double entanglement_entropy(const StateVector& s, std::initializer_list<QubitId> cut) {
  return entanglement_entropy(s, std::span<const QubitId>(cut.begin(), cut.size()));
}

inline Complex inner_product(const StateVector& s1, const StateVector& s2) {
  if (s1.dimension() != s2.dimension()) {
    throw PreconditionError("states have different register sizes");
  }
  Complex acc = 0;
  for (std::size_t i = 0; i < s1.dimension(); ++i) acc += std::conj(s1[i]) * s2[i];
  return acc;
}

/// |<s1|s2>|^2; insensitive to global phase.
inline double fidelity_up_to_phase(const StateVector& s1, const StateVector& s2) {
  return std::norm(inner_product(s1, s2));
}

/// Splits a product state into the single qubit `q` and the remaining
/// register. Throws InvariantViolation if `q` is entangled with the rest.
inline std::pair<StateVector, StateVector> factor_out(const StateVector& s, const QubitId& q) {
  if (s.num_qubits() < 2) throw PreconditionError("nothing to factor out of a single qubit");
  const std::size_t n = s.num_qubits();
  const std::size_t p = s.require_position(q);
  const std::size_t bit = qubit_bit(p, n);
  const std::size_t low = (std::size_t{1} << bit) - 1;
  const std::size_t dr = s.dimension() / 2;
  Matrix m(2, static_cast<Eigen::Index>(dr));
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    const std::size_t b = (i >> bit) & 1U;
    const std::size_t r = ((i >> (bit + 1)) << bit) | (i & low);
    m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(r)) = s[i];
  }
  Eigen::Index best = 0;
  m.colwise().squaredNorm().maxCoeff(&best);
  Eigen::Vector2cd single = m.col(best).normalized();
  Eigen::RowVectorXcd rest = single.adjoint() * m;
  const double residual = (m - single * rest).norm();
  if (residual > tol::kDerived) {
    throw InvariantViolation("qubit " + std::to_string(q.index) +
                             " is entangled with the rest of the register (residual " +
                             std::to_string(residual) + ")");
  }
  std::vector<QubitId> reg;
  for (const auto& other : s.qubits()) {
    if (!(other == q)) reg.push_back(other);
  }
  return {StateVector({single(0), single(1)}, {q}),
          StateVector(std::vector<Complex>(rest.data(), rest.data() + rest.size()), std::move(reg))};
}

}  // namespace qrc
