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

// SU(2) operator algebra for remote operator implementation: the (a, b)
// parametrization, classification against a fixed axis, the correction
// identity V U = e^{i delta} U Z, and related constructions.

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qrc/qcore.hpp"

namespace qrc {

using Vec3 = std::array<double, 3>;

inline constexpr Vec3 kAxisX{1, 0, 0};
inline constexpr Vec3 kAxisY{0, 1, 0};
inline constexpr Vec3 kAxisZ{0, 0, 1};

inline double dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }
inline double length(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}
inline Vec3 scaled(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }

/// Flips `v` so that its first component with magnitude above `eps` is positive.
inline Vec3 canonical_sign(const Vec3& v, double eps = 1e-9) {
  for (double c : v) {
    if (std::abs(c) > eps) return c > 0 ? v : scaled(v, -1.0);
  }
  return v;
}

/// Angle between two directions, ignoring orientation. In [0, pi/2].
inline double axis_angle_between(const Vec3& u, const Vec3& v) {
  const double c = std::abs(dot(u, v)) / (length(u) * length(v));
  return std::acos(std::min(1.0, c));
}

inline void require_unit(const Vec3& n) {
  if (std::abs(length(n) - 1.0) > tol::kDerived) {
    throw PreconditionError("axis is not a unit vector (norm " + std::to_string(length(n)) + ")");
  }
}

/// n . sigma
inline Mat2 pauli_along(const Vec3& n) {
  return n[0] * pauli::x() + n[1] * pauli::y() + n[2] * pauli::z();
}

/// Special-unitary qubit operator [[a, b], [-b*, a*]] with |a|^2 + |b|^2 = 1.
class Unimodular {
 public:
  Unimodular(Complex a, Complex b) : a_(a), b_(b) {
    const double n = std::norm(a) + std::norm(b);
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol::kUnitarity) {
      throw PreconditionError("|a|^2 + |b|^2 = " + std::to_string(n) + ", not 1");
    }
  }

  static Unimodular identity() { return {1.0, 0.0}; }

  /// Reads (a, b) from the first row of a special-unitary matrix, after
  /// checking that `m` really has the unimodular shape.
  static Unimodular from_matrix(const Mat2& m) {
    Unimodular u(m(0, 0), m(0, 1));
    const double defect = (u.matrix() - m).norm();
    if (defect > tol::kDerived) {
      throw PreconditionError("matrix is not of unimodular form (residual " + std::to_string(defect) + ")");
    }
    return u;
  }

  Complex a() const { return a_; }
  Complex b() const { return b_; }

  Mat2 matrix() const {
    Mat2 m;
    m << a_, b_, -std::conj(b_), std::conj(a_);
    return m;
  }

  Unimodular adjoint() const { return {std::conj(a_), -b_}; }

  friend Unimodular operator*(const Unimodular& x, const Unimodular& y) {
    return {x.a_ * y.a_ - x.b_ * std::conj(y.b_), x.a_ * y.b_ + x.b_ * std::conj(y.a_)};
  }

  Gate gate() const { return Gate(Matrix(matrix()), "U"); }

  StateVector apply(const StateVector& psi) const {
    if (psi.num_qubits() != 1) throw PreconditionError("operator acts on a single qubit");
    return StateVector({a_ * psi[0] + b_ * psi[1], -std::conj(b_) * psi[0] + std::conj(a_) * psi[1]},
                       psi.qubits());
  }

  /// Rotation axis m with U = cos(t/2) 1 - i sin(t/2) m.sigma, or nullopt
  /// when U is within `eps` of +-1.
  std::optional<Vec3> axis(double eps = tol::kDerived) const {
    const Vec3 v{-b_.imag(), -b_.real(), -a_.imag()};
    const double s = length(v);
    if (s <= eps) return std::nullopt;
    return scaled(v, 1.0 / s);
  }

  bool is_traceless(double eps = tol::kDerived) const { return std::abs(a_.real()) <= eps; }

 private:
  Complex a_;
  Complex b_;
};

/// exp(-i theta n.sigma / 2).
inline Unimodular from_axis_angle(const Vec3& n, double theta) {
  require_unit(n);
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  return {Complex(c, -s * n[2]), Complex(-s * n[1], -s * n[0])};
}

/// diag(e^{i phi}, e^{-i phi}) = e^{i phi Z}; the Ramsey phase is 2 phi.
inline Unimodular rz(double phi) { return {std::polar(1.0, phi), 0.0}; }

/// [[0, e^{i phi}], [-e^{-i phi}, 0]]: a pi rotation about an equatorial axis.
inline Unimodular equatorial_flip(double phi) { return {0.0, std::polar(1.0, phi)}; }

// ---------------------------------------------------------------------------
// Classification

struct OperatorClass {
  enum class Tag { CommutesWithAxis, AnticommutesWithAxis, General };
  Tag tag = Tag::General;
  std::optional<Vec3> axis;
};

inline std::string_view to_string(OperatorClass::Tag t) {
  switch (t) {
    case OperatorClass::Tag::CommutesWithAxis:
      return "commuting";
    case OperatorClass::Tag::AnticommutesWithAxis:
      return "anticommuting";
    case OperatorClass::Tag::General:
      return "general";
  }
  return "?";
}

struct CommutationNorms {
  double commutator = 0;
  double anticommutator = 0;
};

inline CommutationNorms commutation_norms(const Unimodular& u, const Vec3& axis) {
  const Mat2 um = u.matrix();
  const Mat2 n = pauli_along(axis);
  return {(um * n - n * um).norm(), (um * n + n * um).norm()};
}

inline OperatorClass classify_operator(const Unimodular& u, const Vec3& axis = kAxisZ) {
  require_unit(axis);
  const auto norms = commutation_norms(u, axis);
  if (norms.commutator <= tol::kDerived) return {OperatorClass::Tag::CommutesWithAxis, axis};
  if (norms.anticommutator <= tol::kDerived) return {OperatorClass::Tag::AnticommutesWithAxis, axis};
  return {OperatorClass::Tag::General, std::nullopt};
}

// ---------------------------------------------------------------------------
// Q operator

/// Q(alpha, xi) = e^{i alpha}|xi><xi| + e^{-i alpha}(1 - |xi><xi|).
inline Unimodular q_operator(double alpha, Complex xi0, Complex xi1) {
  const double n = std::norm(xi0) + std::norm(xi1);
  if (std::abs(n - 1.0) > tol::kNorm) {
    throw PreconditionError("xi is not normalized (norm^2 " + std::to_string(n) + ")");
  }
  const Complex a = std::polar(1.0, alpha) * std::norm(xi0) + std::polar(1.0, -alpha) * std::norm(xi1);
  const Complex b = Complex(0, 2 * std::sin(alpha)) * xi0 * std::conj(xi1);
  return {a, b};
}

inline Unimodular q_operator(double alpha, const StateVector& xi) {
  if (xi.num_qubits() != 1) throw PreconditionError("Q operator needs a single-qubit state");
  return q_operator(alpha, xi[0], xi[1]);
}

/// The state orthogonal to a single-qubit state, (-b*, a*).
inline StateVector orthogonal_state(const StateVector& psi) {
  if (psi.num_qubits() != 1) throw PreconditionError("orthogonal_state needs a single-qubit state");
  return StateVector({-std::conj(psi[1]), std::conj(psi[0])}, psi.qubits());
}

// ---------------------------------------------------------------------------
// Correction operator

/// V with V U = e^{i delta} U Z. V is Hermitian and traceless, so it has
/// determinant -1 and is stored as a general unitary.
struct CorrectionSolution {
  Mat2 v;
  double delta = 0;
};

inline double wrap_phase(double x) {
  constexpr double two_pi = 2 * std::numbers::pi;
  double r = std::fmod(x, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r -= two_pi;
  return r;
}

/// Frobenius residual of V U - e^{i delta} U Z.
inline double correction_residual(const Mat2& v, double delta, const Unimodular& u) {
  const Mat2 um = u.matrix();
  return (v * um - std::polar(1.0, delta) * um * pauli::z()).norm();
}

namespace detail {

// U Z U^dagger = m.sigma for a unit vector m; returns m.
inline Vec3 conjugated_z_axis(const Unimodular& u) {
  const Mat2 w = u.matrix() * pauli::z() * u.matrix().adjoint();
  return {w(0, 1).real(), -w(0, 1).imag(), w(0, 0).real()};
}

}  // namespace detail

/// Always solvable for a single operator: V = U Z U^dagger up to the sign
/// that makes the axis of V canonical, with delta absorbing the sign.
inline CorrectionSolution solve_correction(const Unimodular& u) {
  const Vec3 m = detail::conjugated_z_axis(u);
  const Vec3 c = canonical_sign(m);
  const bool flipped = dot(m, c) < 0;
  CorrectionSolution sol{pauli_along(c), flipped ? std::numbers::pi : 0.0};
  if (correction_residual(sol.v, sol.delta, u) > tol::kDerived) {
    throw InvariantViolation("correction identity failed for solved V");
  }
  return sol;
}

/// A single V that corrects every member of a set; delta may differ per member.
struct CommonCorrection {
  Mat2 v;
  std::vector<double> deltas;
};

inline std::optional<CommonCorrection> check_common_correction(std::span<const Unimodular> set) {
  if (set.empty()) throw PreconditionError("operator set is empty");
  const auto first = solve_correction(set.front());
  CommonCorrection out{first.v, {}};
  for (const auto& u : set) {
    const Mat2 w = u.matrix() * pauli::z() * u.matrix().adjoint();
    if ((w - first.v).norm() <= tol::kDerived) {
      out.deltas.push_back(0.0);
    } else if ((w + first.v).norm() <= tol::kDerived) {
      out.deltas.push_back(std::numbers::pi);
    } else {
      return std::nullopt;
    }
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (correction_residual(out.v, out.deltas[i], set[i]) > tol::kDerived) {
      throw InvariantViolation("common correction fails for member " + std::to_string(i));
    }
  }
  return out;
}

inline std::optional<CommonCorrection> check_common_correction(const std::vector<Unimodular>& set) {
  return check_common_correction(std::span<const Unimodular>(set));
}

// ---------------------------------------------------------------------------
// Common axis

/// Finds n such that every operator commutes or anticommutes with n.sigma.
///
/// A non-traceless operator that is not +-1 commutes with n.sigma only for n
/// along its own rotation axis, so it pins the candidate. Traceless operators
/// (pi rotations) allow n parallel or perpendicular to their axis. The
/// candidates tried are every member axis and every cross product of two
/// non-parallel member axes, which covers all possible solutions. Operators
/// within tolerance of +-1 are compatible with any axis; if nothing else is
/// left the z axis is returned.
inline std::optional<Vec3> find_common_axis(std::span<const Unimodular> set) {
  if (set.empty()) throw PreconditionError("operator set is empty");
  std::vector<Vec3> axes;
  std::optional<Vec3> pinned;
  for (const auto& u : set) {
    const auto ax = u.axis();
    if (!ax) continue;
    axes.push_back(*ax);
    if (!pinned && !u.is_traceless()) pinned = *ax;
  }
  if (axes.empty()) return kAxisZ;

  auto fits = [&](const Vec3& n) {
    for (const auto& u : set) {
      if (classify_operator(u, n).tag == OperatorClass::Tag::General) return false;
    }
    return true;
  };

  std::vector<Vec3> candidates;
  if (pinned) {
    candidates.push_back(*pinned);
  } else {
    candidates = axes;
    for (std::size_t i = 0; i < axes.size(); ++i) {
      for (std::size_t j = i + 1; j < axes.size(); ++j) {
        const Vec3 c = cross(axes[i], axes[j]);
        const double l = length(c);
        if (l > 1e-6) candidates.push_back(scaled(c, 1.0 / l));
      }
    }
  }
  for (const auto& n : candidates) {
    if (fits(n)) return canonical_sign(n);
  }
  return std::nullopt;
}

inline std::optional<Vec3> find_common_axis(const std::vector<Unimodular>& set) {
  return find_common_axis(std::span<const Unimodular>(set));
}

// ---------------------------------------------------------------------------
// Orthogonal pair with overlapping images

struct OrthogonalPair {
  StateVector psi;
  StateVector psi_perp;
  StateVector phi;
  StateVector phi_prime;
  double lambda = 0;
};

/// Diagonalizes U2^dagger U1 = e^{+-i lambda} on |lambda_+->, then takes
/// psi = (l+ + l-)/sqrt2, psi_perp = (l+ - l-)/sqrt2, phi = U1 psi,
/// phi' = U2 psi_perp, so that <phi'|phi> = i sin(lambda).
inline OrthogonalPair find_orthogonal_pair(const Unimodular& u1, const Unimodular& u2) {
  const Unimodular m = u2.adjoint() * u1;
  const double cos_l = std::clamp(m.a().real(), -1.0, 1.0);
  const double sin_l = std::sqrt(std::norm(m.a().imag()) + std::norm(m.b()));
  if (sin_l < 1e-8) {
    throw DegeneracyError("U2^dagger U1 is proportional to the identity (|sin lambda| = " +
                          std::to_string(sin_l) + ")");
  }
  const double lambda = std::atan2(sin_l, cos_l);
  const Mat2 mm = m.matrix();

  auto eigenvector = [&](Complex mu) {
    // Null vector of (M - mu 1), chosen from the better-conditioned row.
    Eigen::Vector2cd r0(mm(0, 1), mu - mm(0, 0));
    Eigen::Vector2cd r1(mu - mm(1, 1), mm(1, 0));
    return (r0.squaredNorm() >= r1.squaredNorm() ? r0 : r1).normalized().eval();
  };
  const Eigen::Vector2cd lp = eigenvector(std::polar(1.0, lambda));
  Eigen::Vector2cd lm = eigenvector(std::polar(1.0, -lambda));
  lm = (lm - lp.dot(lm) * lp).normalized();

  const double r = 1.0 / std::numbers::sqrt2;
  const Eigen::Vector2cd psi = r * (lp + lm);
  const Eigen::Vector2cd perp = r * (lp - lm);
  StateVector psi_s({psi(0), psi(1)}, {QubitId{}});
  StateVector perp_s({perp(0), perp(1)}, {QubitId{}});
  OrthogonalPair out{psi_s, perp_s, u1.apply(psi_s), u2.apply(perp_s), lambda};

  if (std::abs(inner_product(out.psi, out.psi_perp)) > tol::kNorm) {
    throw InvariantViolation("psi and psi_perp are not orthogonal");
  }
  const Complex overlap = inner_product(out.phi_prime, out.phi);
  if (std::abs(overlap - Complex(0, std::sin(lambda))) > tol::kDerived) {
    throw InvariantViolation("<phi'|phi> differs from i sin(lambda)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Diagonal form

/// beta with u = u0 e^{i beta Z}, in (-pi, pi]; nullopt if u0^dagger u is
/// not diagonal.
inline std::optional<double> diag_form_decompose(const Unimodular& u, const Unimodular& u0) {
  const Unimodular d = u0.adjoint() * u;
  if (std::abs(d.b()) > tol::kDerived) return std::nullopt;
  double beta = std::arg(d.a());
  if (beta <= -std::numbers::pi) beta += 2 * std::numbers::pi;
  return beta;
}

}  // namespace qrc
