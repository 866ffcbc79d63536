// Copyright 2026 The Leggett-POVM Authors
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

#include "leggett/quantum_core.h"

#include <cmath>
#include <complex>

#include "gtest/gtest.h"

#include "test_util.h"

using namespace leggett;
using D = Direction<double>;
using C = std::complex<double>;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(direction, rejects_non_unit) {
  EXPECT_THROW(D(1, 1, 0), std::invalid_argument);
  EXPECT_THROW(D(0, 0, 0), std::invalid_argument);
  EXPECT_THROW(D::normalized(Vector3<double>::Zero()), std::invalid_argument);
  EXPECT_NO_THROW(D(0.6, 0, 0.8));
}

TEST(pauli_dot, basis_axes) {
  ComplexMatrix2<double> z;
  z << 1, 0, 0, -1;
  ComplexMatrix2<double> x;
  x << 0, 1, 1, 0;
  EXPECT_EQ(pauli_dot(D::z_axis()), z);
  EXPECT_EQ(pauli_dot(D::x_axis()), x);
  ComplexMatrix2<double> y;
  y << C(0), C(0, -1), C(0, 1), C(0);
  EXPECT_EQ(pauli_dot(D::y_axis()), y);
}

TEST(pauli_dot, diagonal_direction_has_unit_eigenvalues) {
  const double r = 1 / std::sqrt(2.0);
  const auto m = pauli_dot(D(r, 0, r));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix2<double>> es(m);
  EXPECT_NEAR(es.eigenvalues()(0), -1, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 1, 1e-12);
}

TEST(pauli_dot, squares_to_identity) {
  fixtures::Gen gen(11);
  for (int t = 0; t < 1000; ++t) {
    const auto s = pauli_dot(gen.direction());
    ASSERT_LT(max_abs(s * s - ComplexMatrix2<double>::Identity()), 1e-12);
    ASSERT_TRUE(is_hermitian(s));
    ASSERT_LT(std::abs(s.trace()), 1e-12);
  }
}

TEST(spin_state, examples) {
  ComplexMatrix2<double> up;
  up << 1, 0, 0, 0;
  ComplexMatrix2<double> down;
  down << 0, 0, 0, 1;
  ComplexMatrix2<double> plus_x;
  plus_x << 0.5, 0.5, 0.5, 0.5;
  EXPECT_LT(max_abs(spin_state(D::z_axis()) - up), 1e-15);
  EXPECT_LT(max_abs(spin_state(D(0, 0, -1)) - down), 1e-15);
  EXPECT_LT(max_abs(spin_state(D::x_axis()) - plus_x), 1e-15);
}

TEST(spin_state, rank_one_projector_property) {
  fixtures::Gen gen(12);
  for (int t = 0; t < 1000; ++t) {
    const D u = gen.direction();
    const auto rho = spin_state(u);
    ASSERT_NEAR(rho.trace().real(), 1, 1e-12);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix2<double>> es(rho);
    ASSERT_NEAR(es.eigenvalues()(0), 0, 1e-12);
    ASSERT_NEAR(es.eigenvalues()(1), 1, 1e-12);
    ASSERT_LT(max_abs(pauli_dot(u) * rho - rho), 1e-12);
  }
}

TEST(states, singlet_and_triplet_are_pure) {
  EXPECT_NEAR(singlet_state().purity(), 1, 1e-12);
  EXPECT_NEAR(triplet_m0_state().purity(), 1, 1e-12);
}

TEST(states, singlet_isotropic_anticorrelation) {
  fixtures::Gen gen(13);
  const auto s = singlet_state();
  for (int t = 0; t < 200; ++t) {
    const D a = gen.direction();
    ASSERT_NEAR(expectation(s, tensor(pauli_dot(a), pauli_dot(a))), -1, 1e-12);
  }
}

TEST(states, singlet_correlation_is_minus_dot) {
  fixtures::Gen gen(14);
  const auto s = singlet_state();
  for (int t = 0; t < 1000; ++t) {
    const D a = gen.direction();
    const D b = gen.direction();
    ASSERT_NEAR(expectation(s, tensor(pauli_dot(a), pauli_dot(b))), -dot(a, b), 1e-12);
  }
}

TEST(states, triplet_m0_examples) {
  const auto t = triplet_m0_state();
  EXPECT_NEAR(expectation(t, tensor(pauli_z(), pauli_z())), -1, 1e-12);
  // (|+-> + |-+>)/sqrt2 is mapped to itself by sigma_x (x) sigma_x.
  EXPECT_NEAR(expectation(t, tensor(pauli_x(), pauli_x())), 1, 1e-12);
  EXPECT_NEAR(expectation(t, tensor(pauli_y(), pauli_y())), 1, 1e-12);
}

TEST(tensor, identity_and_singlet_expectations) {
  EXPECT_EQ(tensor(identity2(), identity2()), (ComplexMatrix4<double>::Identity()));
  const auto s = singlet_state();
  EXPECT_NEAR(expectation(s, tensor(pauli_z(), pauli_z())), -1, 1e-12);
  EXPECT_NEAR(expectation(s, tensor(pauli_x(), pauli_z())), 0, 1e-12);
}

TEST(tensor, kronecker_layout) {
  // (sigma_z (x) 1) is diag(1, 1, -1, -1) in the |++>, |+->, |-+>, |--> basis.
  const auto m = tensor(pauli_z(), identity2());
  EXPECT_EQ(m.diagonal().real(), Eigen::Vector4d(1, 1, -1, -1));
}

TEST(expectation, rejects_non_hermitian) {
  ComplexMatrix4<double> op = ComplexMatrix4<double>::Zero();
  op(0, 1) = 1;
  EXPECT_THROW(expectation(singlet_state(), op), std::invalid_argument);
}

TEST(two_qubit_state, rejects_invalid_density_matrices) {
  ComplexMatrix4<double> rho = ComplexMatrix4<double>::Identity();
  EXPECT_THROW(TwoQubitState<double>{rho}, std::invalid_argument);  // trace 4
  rho = ComplexMatrix4<double>::Zero();
  rho(0, 0) = 1.5;
  rho(1, 1) = -0.5;
  EXPECT_THROW(TwoQubitState<double>{rho}, std::invalid_argument);  // negative eigenvalue
  EXPECT_NO_THROW(TwoQubitState<double>{ComplexMatrix4<double>::Identity() / 4.0});
}

TEST(spin_correlation_matrix, singlet_and_triplet) {
  EXPECT_LT((spin_correlation_matrix(singlet_state()) + Matrix3<double>::Identity()).cwiseAbs().maxCoeff(),
            1e-12);
  const Matrix3<double> t = Eigen::Vector3d(1, 1, -1).asDiagonal();
  EXPECT_LT((spin_correlation_matrix(triplet_m0_state()) - t).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(scalar_templates, long_double_instantiation) {
  using DL = Direction<long double>;
  const auto s = singlet_state<long double>();
  const DL a = DL::normalized(Vector3<long double>(1, 2, 3));
  EXPECT_NEAR(static_cast<double>(expectation(s, tensor(pauli_dot(a), pauli_dot(a)))), -1, 1e-15);
}
