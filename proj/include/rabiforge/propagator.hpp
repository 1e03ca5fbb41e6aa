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

#include <vector>

#include "rabiforge/qubit.hpp"

// Time evolution of a driven qubit: closed-system Schroedinger propagation
// for pure states and the Lindblad master equation
//
//   drho/dt = -i[H, rho] + gamma1 D[s-]rho + (gamma_phi/2) D[sz]rho,
//   D[L]rho = L rho L^dag - (1/2){L^dag L, rho},
//
// with gamma1 = 1/T1 and gamma_phi = 1/T2 - 1/(2 T1), for density matrices.
// Both run on an adaptive embedded Runge-Kutta pair with dense output, so the
// uniform sample grid never constrains the step size.
//
// The integrator cannot see inside an opaque Hamiltonian function, so it is
// the caller's job to cap the step when the drive oscillates fast; see
// suggested_max_step in model.hpp.  Everything in this header treats
// Hamiltonians as H/hbar in rad/s and times in seconds.

namespace rabiforge {

// T1 energy relaxation and T2 total dephasing times, in seconds.  Either may
// be +infinity (channel off).  Construction enforces t2 <= 2*t1, i.e. a
// non-negative pure-dephasing rate.
struct DecoherenceParams {
  double t1;
  double t2;

  DecoherenceParams(double t1, double t2);
  static DecoherenceParams none();

  bool is_none() const;
  double gamma1() const;     // 1/t1, or 0 when t1 is infinite
  double gamma_phi() const;  // 1/t2 - 1/(2 t1), with infinities meaning 0
};

// Uniform output grid: n_samples points from t_start to t_end inclusive.
class TimeGrid {
 public:
  TimeGrid(double t_start, double t_end, std::size_t n_samples);

  double t_start() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  std::size_t size() const { return times_.size(); }
  const std::vector<double>& times() const { return times_; }

 private:
  std::vector<double> times_;
};

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  // Hard step cap in seconds; 0 means uncapped.  Callers that know the
  // fastest frequency in the Hamiltonian should pass suggested_max_step.
  double max_step = 0.0;
  // Renormalize each *output sample* (norm for pure states, trace for
  // density matrices) before observables are computed.  The integrator state
  // itself is never touched, and drift is still reported unrenormalized.
  bool renormalize = false;
  // Also keep the sampled states (normalized) in EvolutionResult::states.
  bool store_states = false;
};

struct StepMetadata {
  long long accepted = 0;
  long long rejected = 0;
  double max_scaled_error = 0.0;   // worst accepted local error / tolerance
  double error_estimate = 0.0;     // accumulated local error, absolute units
  double max_norm_drift = 0.0;     // | ||psi||^2 - 1 | resp. |tr(rho) - 1|
  double max_hermiticity_drift = 0.0;  // max |rho - rho^dag| entry (Lindblad)
  double min_eigenvalue = 1.0;         // smallest rho eigenvalue seen (Lindblad)
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<double> sx, sy, sz;  // <sigma_x>, <sigma_y>, <sigma_z>
  std::vector<double> pe;          // excited-state population (1 + <sigma_z>)/2
  std::vector<QubitState> states;  // filled only when store_states is set
  StepMetadata metadata;
};

// Solves i dpsi/dt = H(t) psi.  The generator is checked for Hermiticity at
// every evaluation (NonHermitianGenerator).  Each sampled P_e must land in
// [-1e-9, 1+1e-9] or the run fails with InvariantViolation.
EvolutionResult propagate_unitary(const TimeOperator& h, const PureState& psi0,
                                  const TimeGrid& grid,
                                  const IntegratorConfig& cfg = {});

// Solves the Lindblad equation above.  Trace and Hermiticity drift are
// tracked per sample in the metadata; the P_e window check applies here too.
EvolutionResult propagate_lindblad(const TimeOperator& h, const DensityMatrix& rho0,
                                   const DecoherenceParams& dec, const TimeGrid& grid,
                                   const IntegratorConfig& cfg = {});

// Closed-form excited-state population for the static rotating-frame problem
// H = (delta/2) sz + (omega/2) sx starting from |g>:
//   P_e(t) = omega^2/(delta^2+omega^2) * sin^2( sqrt(delta^2+omega^2) t / 2 ).
double rabi_formula(double delta, double omega, double t);

// Closed-form P_e for the single-axis Hamiltonian
// H(t) = omega_star cos(omega_d_star t + phi0_star) sx (zero splitting),
// starting from |g>: P_e = sin^2(Theta) with
//   Theta = (omega_star/omega_d_star) (sin(omega_d_star t + phi0_star) - sin phi0_star),
// and the omega_d_star -> 0 limit Theta = omega_star t cos(phi0_star).
// Exact because H commutes with itself at all times.
double commuting_drive_pe(double omega_star, double omega_d_star, double phi0_star,
                          double t);

}  // namespace rabiforge
