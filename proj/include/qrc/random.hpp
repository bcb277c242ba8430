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

// Seeded generators for states, axes and operators used by property suites.

#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "qrc/opsets.hpp"
#include "qrc/qcore.hpp"

namespace qrc::random {

using Engine = std::mt19937_64;

inline double uniform(Engine& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double angle(Engine& rng) { return uniform(rng, -std::numbers::pi, std::numbers::pi); }

/// Haar-random single-qubit state.
inline StateVector state(Engine& rng, QubitId q = {}) {
  std::normal_distribution<double> g;
  return StateVector({Complex(g(rng), g(rng)), Complex(g(rng), g(rng))}, {q});
}

/// Uniform direction on the sphere.
inline Vec3 axis(Engine& rng) {
  std::normal_distribution<double> g;
  Vec3 v{g(rng), g(rng), g(rng)};
  return scaled(v, 1.0 / length(v));
}

/// Uniform unit vector perpendicular to `n`.
inline Vec3 perpendicular(Engine& rng, const Vec3& n) {
  while (true) {
    Vec3 v = axis(rng);
    v = {v[0] - dot(v, n) * n[0], v[1] - dot(v, n) * n[1], v[2] - dot(v, n) * n[2]};
    const double l = length(v);
    if (l > 1e-3) return scaled(v, 1.0 / l);
  }
}

/// Haar-random element of SU(2) from a normalized Gaussian quaternion.
inline Unimodular unimodular(Engine& rng) {
  std::normal_distribution<double> g;
  const double q[4] = {g(rng), g(rng), g(rng), g(rng)};
  const double l = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  return {Complex(q[0] / l, q[1] / l), Complex(q[2] / l, q[3] / l)};
}

/// Rotation about `n` by a random angle.
inline Unimodular commuting(Engine& rng, const Vec3& n) {
  return from_axis_angle(n, uniform(rng, 0, 4 * std::numbers::pi));
}

/// Pi rotation about a random axis perpendicular to `n`.
inline Unimodular anticommuting(Engine& rng, const Vec3& n) {
  return from_axis_angle(perpendicular(rng, n), std::numbers::pi);
}

/// diag(e^{i phi}, e^{-i phi}) with random phi.
inline Unimodular set_a(Engine& rng) { return rz(angle(rng)); }

/// [[0, e^{i phi}], [-e^{-i phi}, 0]] with random phi.
inline Unimodular set_b(Engine& rng) { return equatorial_flip(angle(rng)); }

/// Haar-random operator that neither commutes nor anticommutes with n.sigma.
inline Unimodular general(Engine& rng, const Vec3& n = kAxisZ) {
  while (true) {
    Unimodular u = unimodular(rng);
    const auto c = commutation_norms(u, n);
    if (c.commutator > 1e-3 && c.anticommutator > 1e-3) return u;
  }
}

}  // namespace qrc::random
