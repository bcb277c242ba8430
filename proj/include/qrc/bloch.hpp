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

#pragma once

#include <array>
#include <cmath>

#include "qrc/opsets.hpp"
#include "qrc/qcore.hpp"

namespace qrc {

struct BlochVector {
  double sx = 0;
  double sy = 0;
  double sz = 0;

  double norm() const { return std::sqrt(sx * sx + sy * sy + sz * sz); }
  Vec3 as_vec3() const { return {sx, sy, sz}; }
};

inline Mat2 density_of(const StateVector& psi) {
  if (psi.num_qubits() != 1) throw PreconditionError("expected a single-qubit state");
  Eigen::Vector2cd v(psi[0], psi[1]);
  return v * v.adjoint();
}

/// S_i = tr(rho sigma_i). Rejects matrices that are not density operators.
inline BlochVector bloch_vector(const Mat2& rho) {
  if ((rho - rho.adjoint()).norm() > tol::kDerived) throw PreconditionError("rho is not Hermitian");
  if (std::abs(rho.trace() - Complex(1.0)) > tol::kDerived) throw PreconditionError("rho does not have unit trace");
  Eigen::SelfAdjointEigenSolver<Mat2> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::kDerived) throw PreconditionError("rho is not positive semidefinite");
  return {(rho * pauli::x()).trace().real(), (rho * pauli::y()).trace().real(),
          (rho * pauli::z()).trace().real()};
}

inline BlochVector bloch_vector(const StateVector& psi) { return bloch_vector(density_of(psi)); }

/// (1 + S . sigma) / 2
inline Mat2 density_from_bloch(const BlochVector& s) {
  return 0.5 * (Mat2::Identity() + s.sx * pauli::x() + s.sy * pauli::y() + s.sz * pauli::z());
}

/// SO(3) image of U acting by conjugation: R_ij = tr(sigma_i U sigma_j U^dagger) / 2.
inline std::array<Vec3, 3> rotation_matrix(const Unimodular& u) {
  const Mat2 um = u.matrix();
  const Mat2 sig[3] = {pauli::x(), pauli::y(), pauli::z()};
  std::array<Vec3, 3> r{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      r[i][j] = 0.5 * (sig[i] * um * sig[j] * um.adjoint()).trace().real();
    }
  }
  return r;
}

/// Z|psi>: reflects the equatorial projection through the axis, keeps S_z.
inline StateVector mirror_state(const StateVector& psi) {
  if (psi.num_qubits() != 1) throw PreconditionError("expected a single-qubit state");
  return StateVector({psi[0], -psi[1]}, psi.qubits());
}

/// Whether applying Z to U rho_bar U^dagger, with rho_bar the mirrored input,
/// gives back U rho U^dagger.
inline bool verify_restoration(const Unimodular& u, const StateVector& psi) {
  const Mat2 um = u.matrix();
  const Mat2 rho = density_of(psi);
  const Mat2 rho_bar = density_of(mirror_state(psi));
  const Mat2 restored = pauli::z() * um * rho_bar * um.adjoint() * pauli::z();
  const Mat2 wanted = um * rho * um.adjoint();
  return (restored - wanted).cwiseAbs().maxCoeff() <= tol::kDerived;
}

}  // namespace qrc
