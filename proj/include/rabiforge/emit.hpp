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

#include <string>

#include "rabiforge/experiments.hpp"
#include "rabiforge/propagator.hpp"

// Text renderings of simulation results: CSV for downstream tools, JSON with
// integrator metadata attached, and self-contained SVG plots.  All floating
// point values round-trip exactly (printed with %.17g).

namespace rabiforge {

std::string to_csv(const EvolutionResult& r);
std::string to_csv(const SweepResult& r);
std::string to_csv(const TrajectoryResult& r);

std::string to_json(const EvolutionResult& r);
std::string to_json(const SweepResult& r);
std::string to_json(const TrajectoryResult& r);

// Observables against time, one line per Bloch component plus P_e.
std::string to_svg_lineplot(const EvolutionResult& r);

// Sweep value against time, colour-mapped observable.  The colour range is
// fixed per observable ([0,1] for P_e, [-1,1] for Bloch components) so plots
// of different runs compare directly.  Needs at least a 2 x 2 panel
// (DegenerateRange otherwise).
std::string to_svg_heatmap(const SweepResult& r);

// Two panels: the trajectory projected on the y-z plane of the Bloch
// sphere, and z against time.
std::string to_svg_trajectory(const TrajectoryResult& r);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace rabiforge
