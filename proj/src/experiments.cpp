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

#include "rabiforge/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <thread>
#include <utility>

#include "rabiforge/errors.hpp"

namespace rabiforge {

namespace {

constexpr double kTwoPi = 2.0 * 3.141592653589793;

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double frac = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1)
                        : 0.0;
    out[i] = lo + (hi - lo) * frac;
  }
  if (n > 1) out.back() = hi;
  return out;
}

void require_monotone(const std::vector<double>& v) {
  if (v.empty()) fail(ErrorCode::invalid_value, "sweep has no values");
  for (double x : v) {
    if (!std::isfinite(x))
      fail(ErrorCode::invalid_value, "sweep value is not finite");
  }
  if (v.size() < 2) return;
  bool increasing = v[1] > v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    bool step_up = v[i] > v[i - 1];
    if (v[i] == v[i - 1] || step_up != increasing)
      fail(ErrorCode::invalid_value,
           "sweep values must be strictly monotone");
  }
}

double observable_at(const EvolutionResult& r, SweepObservable obs,
                     std::size_t i) {
  switch (obs) {
    case SweepObservable::pe: return r.pe[i];
    case SweepObservable::sx: return r.sx[i];
    case SweepObservable::sy: return r.sy[i];
    case SweepObservable::sz: return r.sz[i];
  }
  fail(ErrorCode::invalid_value, "unknown sweep observable");
}

// One row of a sweep: build the Hamiltonian in the requested frame, cap the
// step from that row's own frequencies when the caller did not, propagate.
std::vector<double> run_row(const SweepSpec& spec,
                            const LabDriveParams& row_params) {
  IntegratorConfig cfg = spec.integrator;
  TimeOperator h;
  if (spec.frame == PropagationFrame::effective) {
    auto [eff, frame] = effective_params(row_params);
    (void)frame;
    h = effective_hamiltonian(eff);
    if (cfg.max_step <= 0.0) cfg.max_step = suggested_max_step(eff);
  } else {
    h = lab_hamiltonian(row_params);
    if (cfg.max_step <= 0.0) cfg.max_step = suggested_max_step(row_params);
  }

  EvolutionResult evo;
  if (spec.decoherence.has_value()) {
    evo = propagate_lindblad(h, DensityMatrix::from_pure(PureState::ground()),
                             *spec.decoherence, spec.grid, cfg);
  } else {
    evo = propagate_unitary(h, PureState::ground(), spec.grid, cfg);
  }

  std::vector<double> row(evo.times.size());
  for (std::size_t i = 0; i < row.size(); ++i)
    row[i] = observable_at(evo, spec.observable, i);
  return row;
}

}  // namespace

const char* sweep_path_name(SweepPath path) noexcept {
  switch (path) {
    case SweepPath::tone2_omega: return "tone2_omega";
    case SweepPath::tone2_amplitude: return "tone2_amplitude";
    case SweepPath::phase_difference: return "phase_difference";
  }
  return "unknown";
}

const char* sweep_path_units(SweepPath path) noexcept {
  return path == SweepPath::phase_difference ? "rad" : "rad_per_s";
}

const char* observable_name(SweepObservable obs) noexcept {
  switch (obs) {
    case SweepObservable::pe: return "pe";
    case SweepObservable::sx: return "sigma_x";
    case SweepObservable::sy: return "sigma_y";
    case SweepObservable::sz: return "sigma_z";
  }
  return "unknown";
}

LabDriveParams apply_sweep_value(const LabDriveParams& base, SweepPath path,
                                 double value) {
  DriveTone t1 = base.tone1;
  DriveTone t2 = base.tone2;
  switch (path) {
    case SweepPath::tone2_omega:
      t2 = DriveTone(value, t2.amplitude, t2.phase);
      break;
    case SweepPath::tone2_amplitude:
      t2 = DriveTone(t2.omega, value, t2.phase);
      break;
    case SweepPath::phase_difference:
      // value = phi_1 - phi_2 with tone2's phase held fixed.
      t1 = DriveTone(t1.omega, t1.amplitude, t2.phase + value);
      break;
  }
  return LabDriveParams(base.omega_a, t1, t2);
}

SweepSpec preset_setting(Setting which, double omega_a) {
  if (!(omega_a > 20.0 * kAngularMHz))
    fail(ErrorCode::invalid_value,
         "preset carrier must exceed the 2 pi x 20 MHz drive strength");

  const double strength = 20.0 * kAngularMHz;
  DriveTone tone1(omega_a, strength, 0.0);

  SweepSpec spec{
      /*base=*/LabDriveParams(omega_a, tone1,
                              DriveTone(omega_a - 10.0 * kAngularMHz, strength,
                                        0.0)),
      /*path=*/SweepPath::tone2_omega,
      /*values=*/{},
      /*grid=*/TimeGrid(0.0, 1.0 * kMicrosecond, 501),
      /*frame=*/PropagationFrame::effective,
      /*decoherence=*/DecoherenceParams(10.0 * kMicrosecond,
                                        10.0 * kMicrosecond),
      /*observable=*/SweepObservable::pe,
      /*integrator=*/{},
      /*threads=*/0,
  };

  switch (which) {
    case Setting::a: {
      // Second tone on resonance, swept down by up to 2 pi x 20 MHz.
      spec.base = LabDriveParams(omega_a, tone1,
                                 DriveTone(omega_a, strength, 0.0));
      spec.path = SweepPath::tone2_omega;
      for (double d : linspace(0.0, 20.0 * kAngularMHz, 201))
        spec.values.push_back(omega_a - d);
      break;
    }
    case Setting::b: {
      spec.path = SweepPath::tone2_amplitude;
      spec.values = linspace(1.0 * kAngularMHz, 20.0 * kAngularMHz, 201);
      break;
    }
    case Setting::c: {
      spec.path = SweepPath::phase_difference;
      spec.values = linspace(0.0, kTwoPi, 201);
      break;
    }
  }
  return spec;
}

SweepResult run_sweep(const SweepSpec& spec) {
  require_monotone(spec.values);

  const std::size_t n_rows = spec.values.size();
  std::vector<std::vector<double>> data(n_rows);
  std::vector<std::exception_ptr> errors(n_rows);

  unsigned n_workers = spec.threads != 0
                           ? spec.threads
                           : std::max(1u, std::thread::hardware_concurrency());
  n_workers = static_cast<unsigned>(
      std::min<std::size_t>(n_workers, n_rows));

  auto worker = [&](unsigned w) {
    for (std::size_t i = w; i < n_rows; i += n_workers) {
      try {
        data[i] = run_row(
            spec, apply_sweep_value(spec.base, spec.path, spec.values[i]));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  if (n_workers <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < n_rows; ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", spec.values[i]);
      fail(e.code(),
           e.message() + " (sweep value " + buf + ")");
    }
    // Non-domain exceptions propagate untouched.
  }

  SweepResult out;
  out.values = spec.values;
  out.times = spec.grid.times();
  out.data = std::move(data);
  out.path = spec.path;
  out.observable = spec.observable;
  return out;
}

TrajectoryResult bloch_trajectory(const EffectiveParams& e, double phi0_star,
                                  const TimeGrid& grid,
                                  const std::optional<DecoherenceParams>& dec,
                                  const IntegratorConfig& cfg_in) {
  EffectiveParams params(e.omega_a_star, e.omega_d_star, phi0_star, e.omega1,
                         e.omega2);

  IntegratorConfig cfg = cfg_in;
  cfg.store_states = true;
  if (cfg.max_step <= 0.0) cfg.max_step = suggested_max_step(params);

  TimeOperator h = effective_hamiltonian(params);
  EvolutionResult evo;
  if (dec.has_value()) {
    evo = propagate_lindblad(h, DensityMatrix::from_pure(PureState::ground()),
                             *dec, grid, cfg);
  } else {
    evo = propagate_unitary(h, PureState::ground(), grid, cfg);
  }

  // Co-rotate with the drive phase so the slow precession geometry shows.
  FrameSpec drive_frame(params.omega_d_star, params.phi0_star);

  TrajectoryResult out{evo.times, {}, params};
  out.points.reserve(evo.states.size());
  for (std::size_t i = 0; i < evo.states.size(); ++i) {
    QubitState rotated = transform_state(
        evo.states[i], drive_frame, evo.times[i],
        FrameDirection::lab_to_rotating);
    out.points.push_back(bloch_vector(rotated));
  }
  return out;
}

RwaComparison compare_rwa(const EffectiveParams& e, const TimeGrid& grid,
                          const IntegratorConfig& cfg_in) {
  EffectiveParams truncated(e.omega_a_star, e.omega_d_star, e.phi0_star,
                            e.omega1, 0.0);

  // Same step cap for both runs so the comparison is apples to apples.
  IntegratorConfig cfg = cfg_in;
  if (cfg.max_step <= 0.0) cfg.max_step = suggested_max_step(e);

  RwaComparison out;
  out.full = propagate_unitary(effective_hamiltonian(e), PureState::ground(),
                               grid, cfg);
  out.rwa = propagate_unitary(effective_hamiltonian(truncated),
                              PureState::ground(), grid, cfg);
  for (std::size_t i = 0; i < out.full.pe.size(); ++i)
    out.max_pe_deviation =
        std::max(out.max_pe_deviation, std::abs(out.full.pe[i] - out.rwa.pe[i]));
  return out;
}

}  // namespace rabiforge
