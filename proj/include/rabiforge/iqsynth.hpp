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

#include <cstddef>
#include <string>
#include <vector>

#include "rabiforge/model.hpp"

// Single-sideband synthesis of the two-tone drive: quadrature envelopes at
// the tone-splitting frequency, digital upconversion to the carrier, and a
// DFT-based read-back that recovers each tone's frequency, amplitude, and
// phase from sampled RF.
//
// A drive sum_i Omega_i cos(omega_i t + phi_i) mixes exactly out of
//
//   I(t) = Omega_1 cos(delta t + phi_1) + Omega_2 cos(delta t - phi_2)
//   Q(t) = Omega_1 sin(delta t + phi_1) - Omega_2 sin(delta t - phi_2)
//
// with delta = (omega_1 - omega_2)/2 and the local oscillator at
// (omega_1 + omega_2)/2:  s(t) = I cos(omega_lo t) - Q sin(omega_lo t).

namespace rabiforge {

enum class WaveformKind { baseband_iq, rf };

struct SampledWaveform {
  WaveformKind kind;
  double sample_rate;  // Hz
  double start_time;   // seconds; sample j sits at start_time + j/sample_rate
  std::vector<double> i;  // rf waveforms live here; q stays empty
  std::vector<double> q;

  SampledWaveform(WaveformKind kind, double sample_rate, double start_time,
                  std::vector<double> i, std::vector<double> q);
};

struct ToneEstimate {
  double frequency;  // Hz
  double amplitude;
  double phase;  // rad, canonical (-pi, pi]
};

// Local-oscillator angular frequency for the two-tone drive: the midpoint
// (omega_1 + omega_2)/2, in rad/s.
double lo_frequency(const LabDriveParams& p);

// Baseband envelopes for duration seconds at sample_rate Hz, starting at
// t = 0.  The rate must exceed the beat content with margin (UndersampledBeat
// below 4x the tone splitting in Hz).
SampledWaveform synthesize_iq(const LabDriveParams& p, double sample_rate,
                              double duration);

// Digital mix of a baseband pair up to lo_omega rad/s.  The waveform's own
// sample rate must also resolve the carrier (UndersampledCarrier below 4x
// lo_omega/2pi).
SampledWaveform upconvert(const SampledWaveform& iq, double lo_omega);

// Picks the expected_count strongest spectral lines of a sampled RF
// waveform and returns them ordered by increasing frequency.  Requires
// bin-aligned tones: a strong neighbour next to a picked line raises
// NonCommensurateDuration, and extra or missing lines raise
// PeakCountMismatch.  Phases are referenced to absolute time t = 0.
std::vector<ToneEstimate> extract_tones(const SampledWaveform& rf,
                                        std::size_t expected_count);

// Mean power: <s^2> for RF, <(i^2 + q^2)/2> for baseband.  On windows
// commensurate with every beat period both equal
// (Omega_1^2 + Omega_2^2)/2 exactly.
double mean_power(const SampledWaveform& w);

// One '#'-prefixed metadata line, then one (rf) or two (iq) columns per
// sample.  Reading rejects files that do not parse back exactly.
std::string waveform_csv(const SampledWaveform& w);
SampledWaveform parse_waveform_csv(const std::string& text);
void write_waveform_csv(const std::string& path, const SampledWaveform& w);
SampledWaveform read_waveform_csv(const std::string& path);

}  // namespace rabiforge
