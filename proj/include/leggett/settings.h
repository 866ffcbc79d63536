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

#ifndef LEGGETT_SETTINGS_H
#define LEGGETT_SETTINGS_H

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "leggett/quantum_core.h"

namespace leggett {

/// Tolerance for the geometric invariants of a triple-measurement setting.
inline constexpr double kGeometryTolerance = 1e-10;

/// Which pair combination is mutually orthogonal.
///
/// `Difference` is the standard triple setting: the vectors b_i - b_i' are
/// mutually orthogonal and a_i bisects (b_i, b_i'). `Sum` is obtained by
/// negating every b_i'; then b_i + b_i' are mutually orthogonal and a_i lies
/// along b_i - b_i'. The sum arrangement feeds the difference-form bound.
enum class Arrangement { Difference, Sum };

/// Three measurement axes a_i for side A and three pairs (b_i, b_i') for
/// side B, all unit vectors.
///
/// `phi` is the full opening angle between b_i and b_i' (not the half angle),
/// so that |b_i - b_i'| = 2 sin(phi/2) and |b_i + b_i'| = 2 cos(phi/2).
template <typename Scalar = double>
struct TripleSettings {
  Scalar phi{};
  Arrangement arrangement = Arrangement::Difference;
  std::array<Direction<Scalar>, 3> a;
  std::array<Direction<Scalar>, 3> b;
  std::array<Direction<Scalar>, 3> b_prime;
};

template <typename Scalar = double>
struct OrthonormalFrame {
  std::array<Direction<Scalar>, 3> e;
};

/// The default frame: e = (z, x, y) with axes a = (x, y, z), so each a_i is
/// orthogonal to its e_i and the three (a_i, e_i) planes are mutually
/// orthogonal.
template <typename Scalar = double>
OrthonormalFrame<Scalar> default_frame() {
  using D = Direction<Scalar>;
  return {{D::z_axis(), D::x_axis(), D::y_axis()}};
}

template <typename Scalar = double>
std::array<Direction<Scalar>, 3> default_axes() {
  using D = Direction<Scalar>;
  return {D::x_axis(), D::y_axis(), D::z_axis()};
}

/// b_i = cos(phi/2) a_i + sin(phi/2) e_i, b_i' = cos(phi/2) a_i - sin(phi/2) e_i.
template <typename Scalar>
TripleSettings<Scalar> build_settings(Scalar phi, const OrthonormalFrame<Scalar>& frame,
                                      const std::array<Direction<Scalar>, 3>& axes) {
  using std::abs;
  using std::cos;
  using std::sin;
  const Scalar tol = Scalar(kGeometryTolerance);
  if (!(phi > Scalar(0)) || phi > std::numbers::pi_v<Scalar> + tol) {
    throw std::invalid_argument("build_settings: phi must lie in (0, pi]");
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (abs(dot(frame.e[i], frame.e[j])) > tol) {
        throw std::invalid_argument("build_settings: frame is not orthonormal");
      }
    }
    if (abs(dot(axes[i], frame.e[i])) > tol) {
      throw std::invalid_argument("build_settings: axis a_" + std::to_string(i + 1) +
                                  " is not orthogonal to e_" + std::to_string(i + 1));
    }
  }
  const Scalar c = cos(phi / 2);
  const Scalar s = sin(phi / 2);
  TripleSettings<Scalar> out;
  out.phi = phi;
  out.arrangement = Arrangement::Difference;
  for (int i = 0; i < 3; ++i) {
    out.a[i] = axes[i];
    out.b[i] = Direction<Scalar>::normalized(c * axes[i].vec() + s * frame.e[i].vec());
    out.b_prime[i] = Direction<Scalar>::normalized(c * axes[i].vec() - s * frame.e[i].vec());
  }
  return out;
}

template <typename Scalar>
TripleSettings<Scalar> build_settings(Scalar phi) {
  return build_settings(phi, default_frame<Scalar>(), default_axes<Scalar>());
}

/// Negate every b_i'. The opening angle becomes pi - phi and the arrangement
/// toggles; applying it twice is the identity.
template <typename Scalar>
TripleSettings<Scalar> flip_b_prime(const TripleSettings<Scalar>& settings) {
  TripleSettings<Scalar> out = settings;
  for (auto& bp : out.b_prime) bp = -bp;
  out.phi = std::numbers::pi_v<Scalar> - settings.phi;
  out.arrangement = settings.arrangement == Arrangement::Difference ? Arrangement::Sum
                                                                    : Arrangement::Difference;
  return out;
}

struct GeometryViolation {
  std::string invariant;
  double residual;
};

/// Every violated invariant with its residual; empty iff `settings` is a
/// valid triple setting for its arrangement.
template <typename Scalar>
std::vector<GeometryViolation> validate(const TripleSettings<Scalar>& settings) {
  using std::abs;
  const Scalar tol = Scalar(kGeometryTolerance);
  std::vector<GeometryViolation> out;
  auto report = [&](std::string what, Scalar residual) {
    out.push_back({std::move(what), static_cast<double>(residual)});
  };
  const bool difference = settings.arrangement == Arrangement::Difference;
  const Scalar phi_lo = difference ? Scalar(0) : Scalar(0) - tol;
  const Scalar phi_hi = difference ? std::numbers::pi_v<Scalar> + tol : std::numbers::pi_v<Scalar>;
  if (!(settings.phi > phi_lo) || !(settings.phi <= phi_hi)) {
    report("phi out of range", settings.phi);
  }

  auto check_unit = [&](const Direction<Scalar>& d, const std::string& name) {
    const Scalar r = abs(d.vec().norm() - Scalar(1));
    if (r > Scalar(kExactTolerance)) report(name + " not unit", r);
  };
  for (int i = 0; i < 3; ++i) {
    const std::string idx = std::to_string(i + 1);
    check_unit(settings.a[i], "a" + idx);
    check_unit(settings.b[i], "b" + idx);
    check_unit(settings.b_prime[i], "b'" + idx);

    const Scalar angle = angle_between(settings.b[i], settings.b_prime[i]);
    if (abs(angle - settings.phi) > tol) {
      report("angle(b" + idx + ", b'" + idx + ") != phi", abs(angle - settings.phi));
    }

    // a_i lies along b_i + b_i' (Difference) or b_i - b_i' (Sum).
    const Vector3<Scalar> axis = difference ? (settings.b[i].vec() + settings.b_prime[i].vec()).eval()
                                            : (settings.b[i].vec() - settings.b_prime[i].vec()).eval();
    const Scalar axis_norm = axis.norm();
    if (axis_norm > tol) {
      const Scalar r = (settings.a[i].vec() - axis / axis_norm).norm();
      if (r > tol) report("a" + idx + " does not bisect (b" + idx + ", b'" + idx + ")", r);
    } else {
      // Degenerate pair (b' = -b for Difference): a_i only needs to be
      // orthogonal to the pair axis.
      const Scalar r = abs(dot(settings.a[i], settings.b[i]));
      if (r > tol) report("a" + idx + " not orthogonal to antipodal pair", r);
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const auto di = difference ? (settings.b[i].vec() - settings.b_prime[i].vec()).eval()
                                 : (settings.b[i].vec() + settings.b_prime[i].vec()).eval();
      const auto dj = difference ? (settings.b[j].vec() - settings.b_prime[j].vec()).eval()
                                 : (settings.b[j].vec() + settings.b_prime[j].vec()).eval();
      const Scalar r = abs(di.dot(dj));
      if (r > tol) {
        report(std::string(difference ? "pair differences " : "pair sums ") +
                   std::to_string(i + 1) + "," + std::to_string(j + 1) + " not orthogonal",
               r);
      }
    }
  }
  return out;
}

}  // namespace leggett

#endif  // LEGGETT_SETTINGS_H
