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

#ifndef LEGGETT_QUANTUM_CORE_H
#define LEGGETT_QUANTUM_CORE_H

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace leggett {

/// Absolute tolerance used for every exact-algebra identity on 2x2 / 4x4
/// operators (at most a few dozen flops per identity in double precision).
inline constexpr double kExactTolerance = 1e-12;

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using ComplexMatrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;
template <typename Scalar>
using ComplexMatrix4 = Eigen::Matrix<std::complex<Scalar>, 4, 4>;

/// A unit vector in R^3: a measurement axis or a final-state momentum
/// direction. Construction rejects anything whose norm differs from one by
/// more than `kExactTolerance`; use `Direction::normalized` to project.
template <typename Scalar = double>
class Direction {
 public:
  using Vector = Vector3<Scalar>;

  Direction() : v_(Vector::UnitZ()) {}

  Direction(Scalar x, Scalar y, Scalar z) : Direction(Vector(x, y, z)) {}

  explicit Direction(const Vector& v) : v_(v) {
    using std::abs;
    if (!v.allFinite() || abs(v.squaredNorm() - Scalar(1)) > Scalar(kExactTolerance)) {
      throw std::invalid_argument("Direction: vector is not unit length");
    }
  }

  static Direction normalized(const Vector& v) {
    const Scalar norm = v.norm();
    if (!(norm > Scalar(0)) || !v.allFinite()) {
      throw std::invalid_argument("Direction: cannot normalize a zero or non-finite vector");
    }
    Direction d;
    d.v_ = v / norm;
    return d;
  }

  static Direction x_axis() { return Direction(Vector::UnitX()); }
  static Direction y_axis() { return Direction(Vector::UnitY()); }
  static Direction z_axis() { return Direction(Vector::UnitZ()); }

  Scalar x() const { return v_.x(); }
  Scalar y() const { return v_.y(); }
  Scalar z() const { return v_.z(); }
  const Vector& vec() const { return v_; }

  Direction operator-() const {
    Direction d;
    d.v_ = -v_;
    return d;
  }

  friend bool operator==(const Direction& a, const Direction& b) { return a.v_ == b.v_; }

 private:
  Vector v_;
};

template <typename Scalar>
Scalar dot(const Direction<Scalar>& a, const Direction<Scalar>& b) {
  return a.vec().dot(b.vec());
}

/// Angle between two directions, accurate near 0 and pi.
template <typename Scalar>
Scalar angle_between(const Direction<Scalar>& a, const Direction<Scalar>& b) {
  using std::atan2;
  return atan2(a.vec().cross(b.vec()).norm(), a.vec().dot(b.vec()));
}

template <typename Scalar = double>
ComplexMatrix2<Scalar> identity2() {
  return ComplexMatrix2<Scalar>::Identity();
}

template <typename Scalar = double>
ComplexMatrix2<Scalar> pauli_x() {
  ComplexMatrix2<Scalar> m;
  m << 0, 1, 1, 0;
  return m;
}

template <typename Scalar = double>
ComplexMatrix2<Scalar> pauli_y() {
  using C = std::complex<Scalar>;
  ComplexMatrix2<Scalar> m;
  m << C(0), C(0, -1), C(0, 1), C(0);
  return m;
}

template <typename Scalar = double>
ComplexMatrix2<Scalar> pauli_z() {
  ComplexMatrix2<Scalar> m;
  m << 1, 0, 0, -1;
  return m;
}

/// Pauli matrix by index 0, 1, 2 (x, y, z).
template <typename Scalar = double>
ComplexMatrix2<Scalar> pauli(int axis) {
  switch (axis) {
    case 0:
      return pauli_x<Scalar>();
    case 1:
      return pauli_y<Scalar>();
    case 2:
      return pauli_z<Scalar>();
  }
  throw std::out_of_range("pauli: axis must be 0, 1 or 2");
}

/// sigma . d = d_x sigma_x + d_y sigma_y + d_z sigma_z.
template <typename Scalar>
ComplexMatrix2<Scalar> pauli_dot(const Direction<Scalar>& d) {
  using C = std::complex<Scalar>;
  ComplexMatrix2<Scalar> m;
  m << C(d.z()), C(d.x(), -d.y()), C(d.x(), d.y()), C(-d.z());
  return m;
}

/// Pure-state projector (1 + sigma . u) / 2 for spin along u.
template <typename Scalar>
ComplexMatrix2<Scalar> spin_state(const Direction<Scalar>& u) {
  return (identity2<Scalar>() + pauli_dot(u)) / Scalar(2);
}

/// Kronecker product A (x) B with A acting on the first (left) factor.
template <typename DerivedA, typename DerivedB>
auto tensor(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Complex = typename DerivedA::Scalar;
  Eigen::Matrix<Complex, 4, 4> out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Derived>
typename Derived::RealScalar hermiticity_residual(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m,
                  typename Derived::RealScalar tol = kExactTolerance) {
  return hermiticity_residual(m) < tol;
}

/// Smallest eigenvalue of a Hermitian matrix.
template <typename Derived>
typename Derived::RealScalar min_eigenvalue(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  Eigen::SelfAdjointEigenSolver<Plain> solver(m.eval(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

/// Positive semidefiniteness of a Hermitian matrix up to `tol`.
template <typename Derived>
bool is_positive_semidefinite(const Eigen::MatrixBase<Derived>& m,
                              typename Derived::RealScalar tol = kExactTolerance) {
  return is_hermitian(m, tol) && min_eigenvalue(m) >= -tol;
}

/// Validated 2x2 density matrix.
template <typename Scalar = double>
class QubitState {
 public:
  explicit QubitState(const ComplexMatrix2<Scalar>& rho) : rho_(rho) {
    using std::abs;
    if (abs(rho.trace() - std::complex<Scalar>(1)) > Scalar(kExactTolerance) ||
        !is_positive_semidefinite(rho)) {
      throw std::invalid_argument("QubitState: not a valid density matrix");
    }
  }

  static QubitState pure(const Direction<Scalar>& u) { return QubitState(spin_state(u)); }

  const ComplexMatrix2<Scalar>& rho() const { return rho_; }

 private:
  ComplexMatrix2<Scalar> rho_;
};

/// Validated 4x4 density matrix over spin(A) (x) spin(B). Basis order is
/// |++>, |+->, |-+>, |--> with |+> spin-up along lab z.
template <typename Scalar = double>
class TwoQubitState {
 public:
  explicit TwoQubitState(const ComplexMatrix4<Scalar>& rho) : rho_(rho) {
    using std::abs;
    if (abs(rho.trace() - std::complex<Scalar>(1)) > Scalar(kExactTolerance) ||
        !is_positive_semidefinite(rho)) {
      throw std::invalid_argument("TwoQubitState: not a valid density matrix");
    }
  }

  static TwoQubitState from_amplitudes(const Eigen::Matrix<std::complex<Scalar>, 4, 1>& psi) {
    const auto normalized = (psi / psi.norm()).eval();
    return TwoQubitState(normalized * normalized.adjoint());
  }

  const ComplexMatrix4<Scalar>& rho() const { return rho_; }

  Scalar purity() const { return (rho_ * rho_).trace().real(); }

 private:
  ComplexMatrix4<Scalar> rho_;
};

/// (|+-> - |-+>) / sqrt(2).
template <typename Scalar = double>
TwoQubitState<Scalar> singlet_state() {
  Eigen::Matrix<std::complex<Scalar>, 4, 1> psi(0, 1, -1, 0);
  return TwoQubitState<Scalar>::from_amplitudes(psi);
}

/// (|+-> + |-+>) / sqrt(2), the S=1, m=0 triplet.
template <typename Scalar = double>
TwoQubitState<Scalar> triplet_m0_state() {
  Eigen::Matrix<std::complex<Scalar>, 4, 1> psi(0, 1, 1, 0);
  return TwoQubitState<Scalar>::from_amplitudes(psi);
}

/// trace(rho * op). The observable must be Hermitian; a residual imaginary
/// part above tolerance is reported as an error.
template <typename Scalar, typename Derived>
Scalar expectation(const TwoQubitState<Scalar>& state, const Eigen::MatrixBase<Derived>& op) {
  using std::abs;
  if (!is_hermitian(op)) {
    throw std::invalid_argument("expectation: observable is not Hermitian");
  }
  const std::complex<Scalar> value = (state.rho() * op).trace();
  if (abs(value.imag()) > Scalar(kExactTolerance)) {
    throw std::runtime_error("expectation: imaginary part above tolerance");
  }
  return value.real();
}

template <typename Scalar, typename Derived>
Scalar expectation(const QubitState<Scalar>& state, const Eigen::MatrixBase<Derived>& op) {
  using std::abs;
  if (!is_hermitian(op)) {
    throw std::invalid_argument("expectation: observable is not Hermitian");
  }
  const std::complex<Scalar> value = (state.rho() * op).trace();
  if (abs(value.imag()) > Scalar(kExactTolerance)) {
    throw std::runtime_error("expectation: imaginary part above tolerance");
  }
  return value.real();
}

/// C_ij = <sigma_i (x) sigma_j>, the spin-correlation matrix of a two-qubit
/// state. Drives the joint decay distribution 1 + k n_A^T C n_B.
template <typename Scalar>
Matrix3<Scalar> spin_correlation_matrix(const TwoQubitState<Scalar>& state) {
  Matrix3<Scalar> c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      c(i, j) = expectation(state, tensor(pauli<Scalar>(i), pauli<Scalar>(j)));
    }
  }
  return c;
}

}  // namespace leggett

#endif  // LEGGETT_QUANTUM_CORE_H
