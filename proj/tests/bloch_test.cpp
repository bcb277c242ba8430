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

#include "qrc/bloch.hpp"

#include <numbers>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "qrc/random.hpp"

using namespace qrc;

namespace {

constexpr double kR = 1.0 / std::numbers::sqrt2;

}  // namespace

TEST(BlochVector, ground_state_points_up) {
  const auto s = bloch_vector(StateVector::basis({QubitId{}}, 0));
  EXPECT_NEAR(s.sx, 0.0, 1e-15);
  EXPECT_NEAR(s.sy, 0.0, 1e-15);
  EXPECT_NEAR(s.sz, 1.0, 1e-15);
}

TEST(BlochVector, maximally_mixed_is_origin) {
  const auto s = bloch_vector(Mat2(0.5 * Mat2::Identity()));
  EXPECT_NEAR(s.norm(), 0.0, 1e-15);
}

TEST(BlochVector, sz_is_population_difference) {
  random::Engine rng(1);
  for (int t = 0; t < 100; ++t) {
    const auto psi = random::state(rng);
    EXPECT_NEAR(bloch_vector(psi).sz, std::norm(psi[0]) - std::norm(psi[1]), 1e-12);
  }
}

TEST(BlochVector, pure_states_have_unit_length_and_reconstruct) {
  random::Engine rng(2);
  for (int t = 0; t < 500; ++t) {
    const auto psi = random::state(rng);
    const auto s = bloch_vector(psi);
    EXPECT_NEAR(s.norm(), 1.0, 1e-9);
    oracle::Vec v(2);
    v << psi[0], psi[1];
    const oracle::Mat rho = v * v.adjoint();
    const oracle::Mat rebuilt =
        0.5 * (oracle::Mat::Identity(2, 2) + s.sx * oracle::sx() + s.sy * oracle::sy() + s.sz * oracle::sz());
    EXPECT_LE((rho - rebuilt).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(BlochVector, rejects_invalid_density) {
  Mat2 m;
  m << 1.0, 0.3, 0.0, 0.0;
  EXPECT_THROW(bloch_vector(m), PreconditionError);
  EXPECT_THROW(bloch_vector(Mat2(Mat2::Identity())), PreconditionError);
  Mat2 neg;
  neg << 1.5, 0.0, 0.0, -0.5;
  EXPECT_THROW(bloch_vector(neg), PreconditionError);
}

TEST(BlochVector, covariance_under_rotation) {
  random::Engine rng(3);
  for (int t = 0; t < 300; ++t) {
    const auto u = random::unimodular(rng);
    const auto psi = random::state(rng);
    const auto before = bloch_vector(psi).as_vec3();
    const auto after = bloch_vector(u.apply(psi)).as_vec3();
    const auto r = rotation_matrix(u);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(after[i], dot(r[i], before), 1e-9);
  }
}

TEST(Mirror, plus_becomes_minus) {
  const auto m = mirror_state(qubit_state(kR, kR));
  EXPECT_NEAR(std::abs(m[0] - kR), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m[1] + kR), 0.0, 1e-15);
  EXPECT_NEAR(bloch_vector(m).sx, -1.0, 1e-15);
}

TEST(Mirror, ground_state_is_fixed) {
  const auto m = mirror_state(StateVector::basis({QubitId{}}, 0));
  EXPECT_NEAR(fidelity_up_to_phase(m, StateVector::basis({QubitId{}}, 0)), 1.0, 1e-15);
}

TEST(Mirror, negates_equatorial_projection) {
  random::Engine rng(4);
  for (int t = 0; t < 200; ++t) {
    const auto psi = random::state(rng);
    const auto s = bloch_vector(psi);
    const auto m = bloch_vector(mirror_state(psi));
    EXPECT_NEAR(m.sx, -s.sx, 1e-10);
    EXPECT_NEAR(m.sy, -s.sy, 1e-10);
    EXPECT_NEAR(m.sz, s.sz, 1e-10);
  }
}

TEST(Restoration, holds_for_z_rotations_and_flips) {
  random::Engine rng(5);
  for (int t = 0; t < 200; ++t) {
    EXPECT_TRUE(verify_restoration(random::set_a(rng), random::state(rng)));
    EXPECT_TRUE(verify_restoration(random::set_b(rng), random::state(rng)));
  }
}

TEST(Restoration, fails_for_hadamard_like) {
  const Unimodular u(kR, kR);
  EXPECT_FALSE(verify_restoration(u, StateVector::basis({QubitId{}}, 0)));
  EXPECT_FALSE(verify_restoration(u, qubit_state(kR, kR)));
}

// (|0> + i|1>)/sqrt2 lies on the rotation axis of [[1,1],[-1,1]]/sqrt2, so
// both sides of the identity coincide there even though U is general.
TEST(Restoration, holds_on_the_rotation_axis_of_a_general_operator) {
  const Unimodular u(kR, kR);
  ASSERT_EQ(classify_operator(u).tag, OperatorClass::Tag::General);
  EXPECT_TRUE(verify_restoration(u, qubit_state(kR, Complex(0, kR))));
}

TEST(Restoration, matches_classification) {
  random::Engine rng(6);
  for (int t = 0; t < 1000; ++t) {
    const auto u = t % 2 ? random::unimodular(rng) : (t % 4 ? random::set_a(rng) : random::set_b(rng));
    const bool general = classify_operator(u).tag == OperatorClass::Tag::General;
    if (!general) {
      EXPECT_TRUE(verify_restoration(u, random::state(rng)));
      continue;
    }
    bool any_false = false;
    for (int k = 0; k < 10; ++k) any_false |= !verify_restoration(u, random::state(rng));
    EXPECT_TRUE(any_false);
  }
}
