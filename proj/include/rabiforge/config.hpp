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

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "rabiforge/experiments.hpp"
#include "rabiforge/model.hpp"
#include "rabiforge/propagator.hpp"

// JSON run descriptions for the command-line tool.
//
// Unit conventions in config files (and only there -- the library API is
// strictly SI): frequencies and drive amplitudes are "2 pi MHz" (a value of
// 20.0 means an angular frequency of 2 pi x 20e6 rad/s), phases are radians,
// times are microseconds, and waveform sample rates are plain MHz.
//
// Unknown keys are rejected by name so typos cannot silently fall back to a
// default.  See the README for the full schema.

namespace rabiforge {

enum class RunMode { evolve, sweep, trajectory, waveform, verify };
enum class WaveformStage { iq, rf };

struct EvolveConfig {
  std::variant<LabDriveParams, EffectiveParams> drive;
  TimeGrid grid;
  // For lab drives only: propagate as given or hop into the effective frame
  // first.  An effective drive already lives there.
  PropagationFrame frame = PropagationFrame::effective;
};

struct TrajectoryConfig {
  EffectiveParams params;
  TimeGrid grid;
};

struct WaveformConfig {
  LabDriveParams params;
  double sample_rate;  // Hz
  double duration;     // s
  WaveformStage stage = WaveformStage::rf;
};

struct VerifyConfig {
  std::string subject;  // "frames", "oracles", "waveform", or "" for all
  int trials = 50;
  std::uint64_t seed = 20260817;
};

struct RunConfig {
  RunMode mode;
  double omega_a;  // rad/s; carrier for presets and "detuning" tone specs
  // Engaged -> Lindblad propagation with these rates; disengaged -> unitary.
  std::optional<DecoherenceParams> decoherence;
  IntegratorConfig integrator;
  std::optional<EvolveConfig> evolve;
  std::optional<SweepSpec> sweep;
  std::optional<TrajectoryConfig> trajectory;
  std::optional<WaveformConfig> waveform;
  std::optional<VerifyConfig> verify;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);

}  // namespace rabiforge
