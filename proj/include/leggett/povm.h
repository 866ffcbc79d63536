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

#ifndef LEGGETT_POVM_H
#define LEGGETT_POVM_H

#include <cmath>
#include <complex>
#include <stdexcept>

#include "leggett/quantum_core.h"

namespace leggett {

/// Outcome label of a two-outcome spin measurement.
enum class Outcome : int { Plus = +1, Minus = -1 };

inline int sign_of(Outcome o) { return static_cast<int>(o); }

/// Bias `eta` and unsharpness `alpha` of a two-outcome qubit POVM
///
///   M_+(n) = ((1 + eta) + alpha sigma.n) / 2,
///   M_-(n) = ((1 - eta) - alpha sigma.n) / 2.
///
/// Both elements are positive exactly when |eta + alpha| <= 1 and
/// |eta - alpha| <= 1; that is enforced once, at construction. `alpha` keeps
/// its sign (weak decays carry negative asymmetry parameters).
template <typename Scalar = double>
class MeasurementParams {
 public:
  MeasurementParams() : MeasurementParams(Scalar(0), Scalar(1)) {}

  MeasurementParams(Scalar eta, Scalar alpha) : eta_(eta), alpha_(alpha) {
    using std::abs;
    using std::isfinite;
    const Scalar slack = Scalar(kExactTolerance);
    if (!isfinite(eta) || !isfinite(alpha) || abs(eta + alpha) > 1 + slack ||
        abs(eta - alpha) > 1 + slack) {
      throw std::invalid_argument("MeasurementParams: requires |eta +- alpha| <= 1");
    }
  }

  static MeasurementParams projective() { return {Scalar(0), Scalar(1)}; }
  static MeasurementParams unbiased(Scalar alpha) { return {Scalar(0), alpha}; }

  Scalar eta() const { return eta_; }
  Scalar alpha() const { return alpha_; }

  /// |eta| + |alpha|, the largest magnitude a local response can take.
  Scalar response_bound() const {
    using std::abs;
    return abs(eta_) + abs(alpha_);
  }

 private:
  Scalar eta_;
  Scalar alpha_;
};

/// The POVM element for `outcome` measured along `n`.
template <typename Scalar>
ComplexMatrix2<Scalar> povm_element(const MeasurementParams<Scalar>& params,
                                    const Direction<Scalar>& n, Outcome outcome) {
  const Scalar s = Scalar(sign_of(outcome));
  return ((Scalar(1) + s * params.eta()) * identity2<Scalar>() +
          s * params.alpha() * pauli_dot(n)) /
         Scalar(2);
}

/// M_+ - M_-, the observable whose expectation is the mean polarization.
template <typename Scalar>
ComplexMatrix2<Scalar> povm_observable(const MeasurementParams<Scalar>& params,
                                       const Direction<Scalar>& n) {
  return povm_element(params, n, Outcome::Plus) - povm_element(params, n, Outcome::Minus);
}

/// <M_outcome(n)> in a one-qubit state.
template <typename Scalar>
Scalar outcome_probability(const QubitState<Scalar>& state, const MeasurementParams<Scalar>& params,
                           const Direction<Scalar>& n, Outcome outcome) {
  return expectation(state, povm_element(params, n, outcome));
}

/// eta + alpha u.a: the average polarization for a spin prepared along u.
template <typename Scalar>
Scalar mean_polarization(const Direction<Scalar>& u, const MeasurementParams<Scalar>& params,
                         const Direction<Scalar>& a) {
  return params.eta() + params.alpha() * dot(u, a);
}

/// s-wave and p-wave amplitudes of a J^P = 1/2+ two-body hadronic decay.
template <typename Scalar = double>
class DecayAmplitudes {
 public:
  using Complex = std::complex<Scalar>;

  DecayAmplitudes(Complex s_wave, Complex p_wave) : s_(s_wave), p_(p_wave) {
    if (!(std::norm(s_) + std::norm(p_) > Scalar(0))) {
      throw std::invalid_argument("DecayAmplitudes: |S|^2 + |P|^2 must be positive");
    }
  }

  Complex s_wave() const { return s_; }
  Complex p_wave() const { return p_; }
  Scalar intensity() const { return std::norm(s_) + std::norm(p_); }

 private:
  Complex s_;
  Complex p_;
};

/// alpha = (S* P + S P*) / (|S|^2 + |P|^2) = 2 Re(S* P) / (|S|^2 + |P|^2).
template <typename Scalar>
Scalar alpha_from_amplitudes(const DecayAmplitudes<Scalar>& amps) {
  return Scalar(2) * std::real(std::conj(amps.s_wave()) * amps.p_wave()) / amps.intensity();
}

/// Kraus operator M_+-(n) = (S + P sigma.(+-n)) / sqrt(2(|S|^2 + |P|^2)) of
/// the weak decay viewed as a spin measurement; M^dagger M reproduces the
/// unbiased POVM with unsharpness alpha_from_amplitudes(amps).
template <typename Scalar>
ComplexMatrix2<Scalar> decay_kraus(const DecayAmplitudes<Scalar>& amps, const Direction<Scalar>& n,
                                   Outcome outcome) {
  using std::sqrt;
  const Scalar s = Scalar(sign_of(outcome));
  const Scalar norm = sqrt(Scalar(2) * amps.intensity());
  return (amps.s_wave() * identity2<Scalar>() + (s * amps.p_wave()) * pauli_dot(n)) / norm;
}

}  // namespace leggett

#endif  // LEGGETT_POVM_H
