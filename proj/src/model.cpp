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

#include "rabiforge/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rabiforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) fail(ErrorCode::invalid_value, std::string(what) + " is not finite");
}

}  // namespace

double canonical_phase(double phase) {
  require_finite(phase, "phase");
  double p = std::remainder(phase, kTwoPi);  // lands in [-pi, pi]
  if (p <= -std::numbers::pi) p += kTwoPi;
  return p == 0.0 ? 0.0 : p;  // normalize -0.0
}

DriveTone::DriveTone(double omega_, double amplitude_, double phase_)
    : omega(omega_), amplitude(amplitude_), phase(canonical_phase(phase_)) {
  require_finite(omega, "tone omega");
  require_finite(amplitude, "tone amplitude");
  if (omega <= 0.0) fail(ErrorCode::invalid_value, "tone omega must be positive");
  if (amplitude < 0.0) fail(ErrorCode::invalid_value, "tone amplitude must be non-negative");
}

LabDriveParams::LabDriveParams(double omega_a_, DriveTone t1, DriveTone t2)
    : omega_a(omega_a_), tone1(t1), tone2(t2) {
  require_finite(omega_a, "omega_a");
  if (tone1.omega < tone2.omega) std::swap(tone1, tone2);
}

EffectiveParams::EffectiveParams(double omega_a_star_, double omega_d_star_, double phi0_star_,
                                 double omega1_, double omega2_)
    : omega_a_star(omega_a_star_),
      omega_d_star(omega_d_star_),
      phi0_star(phi0_star_),
      omega1(omega1_),
      omega2(omega2_) {
  require_finite(omega_a_star, "omega_a_star");
  require_finite(omega_d_star, "omega_d_star");
  require_finite(phi0_star, "phi0_star");
  require_finite(omega1, "omega1");
  require_finite(omega2, "omega2");
  if (omega_d_star < 0.0) fail(ErrorCode::invalid_value, "omega_d_star must be non-negative");
  if (omega1 < 0.0 || omega2 < 0.0) {
    fail(ErrorCode::invalid_value, "drive strengths must be non-negative");
  }
}

GeneralizedRabiParams::GeneralizedRabiParams(double omega_a_, double omega_d_, double a_d_,
                                             double lambda_)
    : omega_a(omega_a_), omega_d(omega_d_), a_d(a_d_), lambda(lambda_) {
  require_finite(omega_a, "omega_a");
  require_finite(omega_d, "omega_d");
  require_finite(a_d, "a_d");
  require_finite(lambda, "lambda");
  if (omega_d < 0.0) fail(ErrorCode::invalid_value, "omega_d must be non-negative");
  if (a_d < 0.0) fail(ErrorCode::invalid_value, "a_d must be non-negative");
  if (lambda < 0.0) fail(ErrorCode::invalid_value, "lambda must be non-negative");
}

TimeOperator lab_hamiltonian(const LabDriveParams& p) {
  return [p](double t) {
    // (omega_a/2) sz + sum_i (Omega_i/2)(e^{+i(omega_i t + phi_i)} s- + h.c.)
    const Complex low = 0.5 * p.tone1.amplitude *
                            std::polar(1.0, p.tone1.omega * t + p.tone1.phase) +
                        0.5 * p.tone2.amplitude *
                            std::polar(1.0, p.tone2.omega * t + p.tone2.phase);
    const double diag = 0.5 * p.omega_a;
    return Operator2(diag, std::conj(low), low, -diag);
  };
}

TimeOperator effective_hamiltonian(const EffectiveParams& p) {
  return [p](double t) {
    const double theta = p.omega_d_star * t + p.phi0_star;
    const Complex low = 0.5 * p.omega1 * std::polar(1.0, theta) +
                        0.5 * p.omega2 * std::polar(1.0, -theta);
    const double diag = 0.5 * p.omega_a_star;
    return Operator2(diag, std::conj(low), low, -diag);
  };
}

TimeOperator reduced_rabi_hamiltonian(const EffectiveParams& p) {
  const double scale = std::max({p.omega1, p.omega2, 1.0});
  if (std::abs(p.omega1 - p.omega2) > 1e-9 * scale) {
    fail(ErrorCode::anisotropic_input,
         "reduced form needs omega1 == omega2 (got " + std::to_string(p.omega1) + " and " +
             std::to_string(p.omega2) + ")");
  }
  const double omega_star = p.omega1;
  return [p, omega_star](double t) {
    const double drive = omega_star * std::cos(p.omega_d_star * t + p.phi0_star);
    return Operator2(0.5 * p.omega_a_star, drive, drive, -0.5 * p.omega_a_star);
  };
}

TimeOperator generalized_hamiltonian(const GeneralizedRabiParams& p) {
  return [p](double t) {
    // a_d * (H_r + lambda H_cr) puts a_d e^{+i w_d t} + a_d lambda e^{-i w_d t}
    // in the lowering slot.
    const Complex low = p.a_d * (std::polar(1.0, p.omega_d * t) +
                                 p.lambda * std::polar(1.0, -p.omega_d * t));
    return Operator2(0.5 * p.omega_a, std::conj(low), low, -0.5 * p.omega_a);
  };
}

GeneralizedRabiParams map_from_effective(const EffectiveParams& p) {
  if (p.phi0_star != 0.0) {
    fail(ErrorCode::phase_not_representable,
         "generalized form has no phase slot; phi0_star must be exactly 0");
  }
  if (p.omega1 <= 0.0) {
    fail(ErrorCode::zero_rotating_strength,
         "cannot form the counter-rotating ratio with omega1 == 0");
  }
  return GeneralizedRabiParams(p.omega_a_star, p.omega_d_star, 0.5 * p.omega1,
                               p.omega2 / p.omega1);
}

DrivingRegime classify_regime(const EffectiveParams& p) {
  const double omega = std::max(p.omega1, p.omega2);
  const double ref = std::abs(p.omega_a_star);
  if (ref == 0.0 || omega >= 10.0 * ref) return DrivingRegime::extreme;
  if (omega > ref) return DrivingRegime::deep_strong;
  if (omega > 0.1 * ref) return DrivingRegime::ultrastrong;
  return DrivingRegime::weak;
}

const char* regime_name(DrivingRegime r) noexcept {
  switch (r) {
    case DrivingRegime::weak: return "weak";
    case DrivingRegime::ultrastrong: return "ultrastrong";
    case DrivingRegime::deep_strong: return "deep_strong";
    case DrivingRegime::extreme: return "extreme";
  }
  return "unknown";
}

namespace {

double step_from_fmax(double omega_max) {
  if (omega_max <= 0.0) return std::numeric_limits<double>::infinity();
  const double f_max = omega_max / kTwoPi;
  return 1.0 / (50.0 * f_max);
}

}  // namespace

double suggested_max_step(const LabDriveParams& p) {
  return step_from_fmax(std::max({std::abs(p.omega_a), p.tone1.omega, p.tone2.omega,
                                  p.tone1.amplitude, p.tone2.amplitude}));
}

double suggested_max_step(const EffectiveParams& p) {
  return step_from_fmax(
      std::max({std::abs(p.omega_a_star), p.omega_d_star, p.omega1, p.omega2}));
}

}  // namespace rabiforge
