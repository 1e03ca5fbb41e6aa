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

#include "rabiforge/qubit.hpp"

// Drive models for a qubit under one or two transversal microwave tones.
//
// All frequencies and amplitudes are angular (rad/s).  Three equivalent
// parameterizations are supported:
//   * lab frame: qubit splitting omega_a plus two tones (omega_i, Omega_i, phi_i),
//   * bichromatic effective frame: the same physics in the frame rotating at
//     the mean tone frequency,
//   * generalized Rabi form: rotating term of strength A_d plus a
//     counter-rotating term scaled by the anisotropy ratio lambda.

namespace rabiforge {

// Unit helpers.  Quoting "2 pi x 20 MHz" as 20.0 * kAngularMHz everywhere
// (instead of spelling out 2*pi*20e6) keeps values bit-identical between
// code paths that build the same physics.
inline constexpr double kPi = 3.141592653589793;
inline constexpr double kAngularMHz = 2.0 * kPi * 1.0e6;  // rad/s per unit
inline constexpr double kMicrosecond = 1.0e-6;            // s per unit

// Wraps an angle to the canonical interval (-pi, pi].
double canonical_phase(double phase);

struct DriveTone {
  double omega;      // carrier, rad/s, > 0
  double amplitude;  // coupling strength Omega, rad/s, >= 0
  double phase;      // rad, stored canonically in (-pi, pi]

  DriveTone(double omega, double amplitude, double phase);
};

// Two-tone lab-frame drive.  Tones are ordered so tone1.omega >= tone2.omega.
struct LabDriveParams {
  double omega_a;  // qubit splitting, rad/s
  DriveTone tone1;
  DriveTone tone2;

  LabDriveParams(double omega_a, DriveTone t1, DriveTone t2);
};

// Parameters of the effective Hamiltonian in the mean-frequency frame:
//   H/hbar = (omega_a_star/2) sz
//          + (omega1/2)(e^{+i(omega_d_star t + phi0_star)} s- + h.c.)
//          + (omega2/2)(e^{-i(omega_d_star t + phi0_star)} s- + h.c.)
struct EffectiveParams {
  double omega_a_star;  // effective splitting, rad/s (any sign)
  double omega_d_star;  // effective drive frequency, rad/s, >= 0
  double phi0_star;     // effective initial phase, rad
  double omega1;        // rotating-term strength Omega_1, rad/s, >= 0
  double omega2;        // counter-rotating-term strength Omega_2, rad/s, >= 0

  EffectiveParams(double omega_a_star, double omega_d_star, double phi0_star,
                  double omega1, double omega2);
};

// H/hbar = (omega_a/2) sz + a_d * (H_r + lambda * H_cr), with
//   H_r  = e^{+i omega_d t} s- + e^{-i omega_d t} s+,
//   H_cr = e^{-i omega_d t} s- + e^{+i omega_d t} s+.
struct GeneralizedRabiParams {
  double omega_a;  // rad/s
  double omega_d;  // rad/s, >= 0
  double a_d;      // drive amplitude, rad/s, >= 0
  double lambda;   // counter-rotating ratio, dimensionless, >= 0

  GeneralizedRabiParams(double omega_a, double omega_d, double a_d, double lambda);
};

TimeOperator lab_hamiltonian(const LabDriveParams& p);
TimeOperator effective_hamiltonian(const EffectiveParams& p);

// Isotropic special case Omega_1 == Omega_2 == Omega*:
//   H/hbar = (omega_a_star/2) sz + Omega* cos(omega_d_star t + phi0_star) sx.
// Errors with AnisotropicInput if the strengths differ by more than 1e-9
// (relative).
TimeOperator reduced_rabi_hamiltonian(const EffectiveParams& p);

TimeOperator generalized_hamiltonian(const GeneralizedRabiParams& p);

// Rewrites the effective model in generalized-Rabi form:
//   a_d = omega1 / 2,  lambda = omega2 / omega1.
// Requires omega1 > 0 and phi0_star == 0 (the generalized form has no phase
// slot for the tones).
GeneralizedRabiParams map_from_effective(const EffectiveParams& p);

// Driving regimes by the ratio of the dominant strength Omega = max(Omega_1,
// Omega_2) to |omega_a_star|:
//   weak          Omega <= 0.1 |omega_a_star|
//   ultrastrong   Omega >  0.1 |omega_a_star|
//   deep_strong   Omega >      |omega_a_star|
//   extreme       Omega >= 10  |omega_a_star|, or omega_a_star == 0
enum class DrivingRegime { weak, ultrastrong, deep_strong, extreme };

DrivingRegime classify_regime(const EffectiveParams& p);
const char* regime_name(DrivingRegime r) noexcept;

// Conservative integrator step cap: 1 / (50 * f_max), where f_max is the
// largest linear frequency appearing in the Hamiltonian (carriers and
// coupling strengths alike).  Returns +inf when everything is static.
double suggested_max_step(const LabDriveParams& p);
double suggested_max_step(const EffectiveParams& p);

}  // namespace rabiforge
