// Copyright 2026 The rabi-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rabiforge/frames.hpp"

#include <cmath>
#include <numbers>

#include "rabiforge/errors.hpp"

namespace rabiforge {

FrameSpec::FrameSpec(double omega_, double phi_) : omega(omega_), phi(phi_) {
  if (!std::isfinite(omega) || !std::isfinite(phi)) {
    fail(ErrorCode::invalid_value, "frame omega and phi must be finite");
  }
}

Operator2 frame_unitary(const FrameSpec& f, double t) {
  const double half = 0.5 * (f.omega * t + f.phi);
  return Operator2(std::polar(1.0, -half), 0.0, 0.0, std::polar(1.0, half));
}

std::pair<EffectiveParams, FrameSpec> effective_params(const LabDriveParams& p) {
  // LabDriveParams orders the tones, so omega_d_star >= 0 by construction.
  const double omega = 0.5 * (p.tone1.omega + p.tone2.omega);
  double phi = 0.5 * (p.tone1.phase + p.tone2.phase);
  const double omega_a_star = p.omega_a - omega;
  const double omega_d_star = 0.5 * (p.tone1.omega - p.tone2.omega);
  double phi0_star = 0.5 * (p.tone1.phase - p.tone2.phase);
  if (phi0_star < 0.0) {
    // Lift into [0, pi).  e^{+i pi sz/2} folded into the frame flips the sign
    // of both off-diagonal drive terms, which is the same as advancing
    // phi0_star by pi, so the pair (params, frame) still satisfies the
    // transform identity exactly.
    phi0_star += std::numbers::pi;
    phi += std::numbers::pi;
  }
  return {EffectiveParams(omega_a_star, omega_d_star, phi0_star, p.tone1.amplitude,
                          p.tone2.amplitude),
          FrameSpec(omega, phi)};
}

TimeOperator transform_hamiltonian(TimeOperator h, const FrameSpec& f) {
  return [h = std::move(h), f](double t) {
    const Operator2 u = frame_unitary(f, t);
    Operator2 out = u.adjoint() * h(t) * u;
    out += Operator2(-0.5 * f.omega, 0.0, 0.0, 0.5 * f.omega);
    return out;
  };
}

namespace {

Operator2 unitary_for(const FrameSpec& f, double t, FrameDirection dir) {
  const Operator2 u = frame_unitary(f, t);
  // lab -> rotating applies U^dag; the inverse direction applies U.
  return dir == FrameDirection::lab_to_rotating ? u.adjoint() : u;
}

}  // namespace

PureState transform_state(const PureState& s, const FrameSpec& f, double t,
                          FrameDirection dir) {
  const Operator2 v = unitary_for(f, t, dir);
  // v is diagonal (row/col order: e, g).
  return PureState(v.gg() * s.amp_g(), v.ee() * s.amp_e());
}

DensityMatrix transform_state(const DensityMatrix& s, const FrameSpec& f, double t,
                              FrameDirection dir) {
  const Operator2 v = unitary_for(f, t, dir);
  return DensityMatrix(v * s.matrix() * v.adjoint());
}

QubitState transform_state(const QubitState& s, const FrameSpec& f, double t,
                           FrameDirection dir) {
  if (const auto* pure = std::get_if<PureState>(&s)) {
    return transform_state(*pure, f, t, dir);
  }
  return transform_state(std::get<DensityMatrix>(s), f, t, dir);
}

}  // namespace rabiforge
