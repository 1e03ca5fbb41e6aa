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

#pragma once

#include <utility>

#include "rabiforge/model.hpp"
#include "rabiforge/qubit.hpp"

// Rotating-frame machinery.  A frame is the unitary
//   U(t) = exp[-i (omega t + phi) sz / 2],
// and "rotating" quantities are related to lab ones by
//   |psi_rot> = U(t)^dag |psi_lab>,   rho_rot = U^dag rho U,
//   H_rot(t)  = U^dag H_lab(t) U - (omega/2) sz.

namespace rabiforge {

struct FrameSpec {
  double omega = 0.0;  // rotation rate, rad/s (any sign)
  double phi = 0.0;    // phase offset at t = 0, rad

  FrameSpec() = default;
  FrameSpec(double omega, double phi);

  static FrameSpec lab() { return FrameSpec(0.0, 0.0); }
};

enum class FrameDirection { lab_to_rotating, rotating_to_lab };

// U(t) for the given frame; always unitary and diagonal.
Operator2 frame_unitary(const FrameSpec& f, double t);

// Reduces a two-tone lab drive to its bichromatic effective parameters,
// returning both the parameters and the frame that realizes them, so that
//   transform_hamiltonian(lab_hamiltonian(p), frame) == effective_hamiltonian(params)
// holds pointwise in t.
//
// The frame rotates at the mean tone frequency, omega = (omega_1 + omega_2)/2
// with phase phi = (phi_1 + phi_2)/2; the parameters are
//   omega_a_star = omega_a - omega,
//   omega_d_star = (omega_1 - omega_2)/2   (tones ordered, so >= 0),
//   phi0_star    = (phi_1 - phi_2)/2.
// A raw negative phi0_star is lifted by pi (the frame phase absorbs the same
// pi, which leaves the transform identity intact), so phi0_star lands in
// [0, pi) and increasing the lab phase difference phi_1 - phi_2 from 0 to
// 2 pi maps monotonically onto phi0_star in [0, pi).
std::pair<EffectiveParams, FrameSpec> effective_params(const LabDriveParams& p);

// U^dag h(t) U - (omega/2) sz, evaluated lazily.
TimeOperator transform_hamiltonian(TimeOperator h, const FrameSpec& f);

// Frame change for states at one instant.  Pure states pick up no extra
// normalization; density matrices stay Hermitian with unit trace.
PureState transform_state(const PureState& s, const FrameSpec& f, double t,
                          FrameDirection dir);
DensityMatrix transform_state(const DensityMatrix& s, const FrameSpec& f, double t,
                              FrameDirection dir);
QubitState transform_state(const QubitState& s, const FrameSpec& f, double t,
                           FrameDirection dir);

}  // namespace rabiforge
