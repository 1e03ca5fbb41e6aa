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

#include <optional>
#include <vector>

#include "rabiforge/frames.hpp"
#include "rabiforge/model.hpp"
#include "rabiforge/propagator.hpp"

// Declarative parameter sweeps over the propagator, Bloch-sphere
// trajectories, and full-model-vs-RWA comparisons.  Everything starts from
// the qubit ground state.

namespace rabiforge {

// Which scalar of the lab drive a sweep varies.  phase_difference means
// phi_1 - phi_2: the value is added to tone2's phase and stored as tone1's.
enum class SweepPath { tone2_omega, tone2_amplitude, phase_difference };
enum class SweepObservable { pe, sx, sy, sz };
enum class PropagationFrame { lab, effective };

const char* sweep_path_name(SweepPath path) noexcept;      // e.g. "tone2_omega"
const char* sweep_path_units(SweepPath path) noexcept;     // "rad_per_s" or "rad"
const char* observable_name(SweepObservable obs) noexcept; // e.g. "pe"

struct SweepSpec {
  LabDriveParams base;
  SweepPath path;
  std::vector<double> values;  // non-empty, strictly monotone (either direction)
  TimeGrid grid;
  PropagationFrame frame = PropagationFrame::effective;
  // Engaged -> rows run the Lindblad equation; disengaged -> pure Schroedinger.
  std::optional<DecoherenceParams> decoherence;
  SweepObservable observable = SweepObservable::pe;
  // max_step 0 here means "derive the cap per row from that row's drive".
  IntegratorConfig integrator{};
  unsigned threads = 0;  // worker count; 0 = hardware concurrency
};

struct SweepResult {
  std::vector<double> values;
  std::vector<double> times;
  std::vector<std::vector<double>> data;  // data[row][time_index]
  SweepPath path;
  SweepObservable observable;
};

struct TrajectoryResult {
  std::vector<double> times;
  std::vector<BlochVector> points;
  // Parameters actually propagated (phi0_star already substituted).  Points
  // are sampled in the frame co-rotating with the drive phase
  // omega_d_star*t + phi0_star, where the weak-driving y-z-plane geometry is
  // visible.
  EffectiveParams params;
};

struct RwaComparison {
  EvolutionResult full;  // the complete bichromatic effective model
  EvolutionResult rwa;   // counter-rotating strength zeroed out
  double max_pe_deviation = 0.0;
};

// The three stock two-tone experiment settings (drive strengths of 2 pi
// times 20 MHz; swept detuning / counter-tone amplitude / phase difference),
// 201 sweep values, 501 samples over 1 us, decoherence T1 = T2 = 10 us,
// effective-frame propagation.  omega_a picks the carrier; the reduced
// default keeps lab-frame cross-checks cheap, and observables are
// carrier-independent (see PropagationFrame invariance tests).
enum class Setting { a, b, c };

inline constexpr double kReducedCarrier = 100.0 * kAngularMHz;
inline constexpr double kFullCarrier = 7173.0 * kAngularMHz;

SweepSpec preset_setting(Setting which, double omega_a = kReducedCarrier);

// base with one scalar replaced according to the path (tone ordering is
// re-normalized afterwards, so sweeping tone2 past tone1 is fine).
LabDriveParams apply_sweep_value(const LabDriveParams& base, SweepPath path,
                                 double value);

// One propagation per sweep value; rows are independent and may run on
// several threads, with bit-identical results either way.  A row failure is
// re-raised with the offending sweep value appended to the message.
SweepResult run_sweep(const SweepSpec& spec);

// Propagates |g> under the effective Hamiltonian built from e with its phase
// replaced by phi0_star, then samples Bloch vectors in the drive co-rotating
// frame.  With decoherence engaged the points spiral inside the unit ball.
TrajectoryResult bloch_trajectory(const EffectiveParams& e, double phi0_star,
                                  const TimeGrid& grid,
                                  const std::optional<DecoherenceParams>& dec =
                                      std::nullopt,
                                  const IntegratorConfig& cfg = {});

// Propagates the full effective model and its rotating-term-only truncation
// (omega2 -> 0) side by side, and reports the worst P_e disagreement.
RwaComparison compare_rwa(const EffectiveParams& e, const TimeGrid& grid,
                          const IntegratorConfig& cfg = {});

}  // namespace rabiforge
