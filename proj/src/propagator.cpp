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

#include "rabiforge/propagator.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "rabiforge/detail/integrator.hpp"
#include "rabiforge/errors.hpp"

namespace rabiforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Complex kImag{0.0, 1.0};

void check_pe_window(double pe, double t) {
  if (pe < -1e-9 || pe > 1.0 + 1e-9) {
    fail(ErrorCode::invariant_violation,
         "P_e = " + std::to_string(pe) + " at t = " + std::to_string(t) +
             " s left the [0, 1] window; tolerances are too loose for this run");
  }
}

// Hermiticity gate for the incoming generator, applied at every evaluation.
// Cheap relative to the trig inside typical Hamiltonian closures.
void require_hermitian_generator(const Operator2& h, double t) {
  if (!h.is_hermitian(1e-12)) {
    fail(ErrorCode::non_hermitian_generator,
         "Hamiltonian is not Hermitian at t = " + std::to_string(t) + " s");
  }
}

}  // namespace

DecoherenceParams::DecoherenceParams(double t1_, double t2_) : t1(t1_), t2(t2_) {
  if (std::isnan(t1) || std::isnan(t2) || t1 <= 0.0 || t2 <= 0.0) {
    fail(ErrorCode::invalid_value, "decoherence times must be positive (or infinite)");
  }
  if (t2 > 2.0 * t1) {
    fail(ErrorCode::unphysical_decoherence,
         "t2 = " + std::to_string(t2) + " s exceeds 2*t1 = " + std::to_string(2.0 * t1) +
             " s (negative pure-dephasing rate)");
  }
}

DecoherenceParams DecoherenceParams::none() { return DecoherenceParams(kInf, kInf); }

bool DecoherenceParams::is_none() const { return std::isinf(t1) && std::isinf(t2); }

double DecoherenceParams::gamma1() const { return std::isinf(t1) ? 0.0 : 1.0 / t1; }

double DecoherenceParams::gamma_phi() const {
  const double total = std::isinf(t2) ? 0.0 : 1.0 / t2;
  return total - 0.5 * gamma1();
}

TimeGrid::TimeGrid(double t_start, double t_end, std::size_t n_samples) {
  if (!std::isfinite(t_start) || !std::isfinite(t_end)) {
    fail(ErrorCode::invalid_value, "time grid endpoints must be finite");
  }
  if (!(t_end > t_start)) {
    fail(ErrorCode::invalid_value, "time grid needs t_end > t_start");
  }
  if (n_samples < 2) fail(ErrorCode::invalid_value, "time grid needs at least 2 samples");
  times_.resize(n_samples);
  const double dt = (t_end - t_start) / static_cast<double>(n_samples - 1);
  for (std::size_t i = 0; i < n_samples; ++i) {
    times_[i] = t_start + static_cast<double>(i) * dt;
  }
  times_.back() = t_end;  // exact endpoint regardless of rounding
}

EvolutionResult propagate_unitary(const TimeOperator& h, const PureState& psi0,
                                  const TimeGrid& grid, const IntegratorConfig& cfg) {
  if (!h) fail(ErrorCode::invalid_value, "propagate_unitary needs a Hamiltonian");

  const std::size_t n = grid.size();
  EvolutionResult res;
  res.times = grid.times();
  res.sx.resize(n);
  res.sy.resize(n);
  res.sz.resize(n);
  res.pe.resize(n);
  if (cfg.store_states) res.states.reserve(n);

  auto rhs = [&h](double t, const detail::CVec<2>& y, detail::CVec<2>& dy) {
    const Operator2 ht = h(t);
    require_hermitian_generator(ht, t);
    dy[0] = -kImag * (ht.ee() * y[0] + ht.eg() * y[1]);
    dy[1] = -kImag * (ht.ge() * y[0] + ht.gg() * y[1]);
  };

  auto emit = [&](std::size_t idx, const detail::CVec<2>& y) {
    Complex e = y[0], g = y[1];
    const double n2 = std::norm(e) + std::norm(g);
    res.metadata.max_norm_drift =
        std::max(res.metadata.max_norm_drift, std::abs(n2 - 1.0));
    if (cfg.renormalize) {
      const double inv = 1.0 / std::sqrt(n2);
      e *= inv;
      g *= inv;
    }
    const Complex w = std::conj(e) * g;
    res.sx[idx] = 2.0 * w.real();
    res.sy[idx] = 2.0 * w.imag();
    res.sz[idx] = std::norm(e) - std::norm(g);
    res.pe[idx] = 0.5 * (1.0 + res.sz[idx]);
    check_pe_window(res.pe[idx], res.times[idx]);
    if (cfg.store_states) res.states.emplace_back(PureState::normalized(g, e));
  };

  detail::CVec<2> y0{psi0.amp_e(), psi0.amp_g()};
  const auto stats =
      detail::integrate_dopri5<2>(rhs, y0, grid.t_start(), grid.t_end(), grid.times(),
                                  emit, cfg.rel_tol, cfg.abs_tol, cfg.max_step);
  res.metadata.accepted = stats.accepted;
  res.metadata.rejected = stats.rejected;
  res.metadata.max_scaled_error = stats.max_scaled_error;
  res.metadata.error_estimate = stats.error_estimate;
  return res;
}

EvolutionResult propagate_lindblad(const TimeOperator& h, const DensityMatrix& rho0,
                                   const DecoherenceParams& dec, const TimeGrid& grid,
                                   const IntegratorConfig& cfg) {
  if (!h) fail(ErrorCode::invalid_value, "propagate_lindblad needs a Hamiltonian");

  const double g1 = dec.gamma1();
  const double gphi = dec.gamma_phi();
  const double coherence_decay = 0.5 * g1 + gphi;  // = 1/T2

  const std::size_t n = grid.size();
  EvolutionResult res;
  res.times = grid.times();
  res.sx.resize(n);
  res.sy.resize(n);
  res.sz.resize(n);
  res.pe.resize(n);
  if (cfg.store_states) res.states.reserve(n);

  // State layout: {rho_ee, rho_eg, rho_ge, rho_gg}.
  auto rhs = [&](double t, const detail::CVec<4>& y, detail::CVec<4>& dy) {
    const Operator2 ht = h(t);
    require_hermitian_generator(ht, t);
    const Complex a = ht.ee(), b = ht.eg(), c = ht.ge(), d = ht.gg();
    const Complex p = y[0], q = y[1], r = y[2], s = y[3];
    // Unitary part -i[H, rho].
    dy[0] = -kImag * (b * r - c * q);
    dy[1] = -kImag * ((a - d) * q + b * (s - p));
    dy[2] = -kImag * (c * (p - s) + (d - a) * r);
    dy[3] = -kImag * (c * q - b * r);
    // Relaxation D[s-] and pure dephasing D[sz]/2.
    dy[0] -= g1 * p;
    dy[3] += g1 * p;
    dy[1] -= coherence_decay * q;
    dy[2] -= coherence_decay * r;
  };

  auto emit = [&](std::size_t idx, const detail::CVec<4>& y) {
    Complex p = y[0], q = y[1], r = y[2], s = y[3];
    const double trace_drift = std::abs(p + s - 1.0);
    const double herm_drift = std::max(
        {2.0 * std::abs(p.imag()), 2.0 * std::abs(s.imag()), std::abs(q - std::conj(r))});
    res.metadata.max_norm_drift = std::max(res.metadata.max_norm_drift, trace_drift);
    res.metadata.max_hermiticity_drift =
        std::max(res.metadata.max_hermiticity_drift, herm_drift);
    if (cfg.renormalize) {
      const double tr = (p + s).real();
      const Complex qh = 0.5 * (q + std::conj(r));
      p = Complex(p.real() / tr, 0.0);
      s = Complex(s.real() / tr, 0.0);
      q = qh / tr;
      r = std::conj(q);
    }
    // Observables from the Hermitian part.
    const double pp = p.real(), ss = s.real();
    const Complex qh = 0.5 * (q + std::conj(r));
    res.sx[idx] = 2.0 * qh.real();
    res.sy[idx] = -2.0 * qh.imag();
    res.sz[idx] = pp - ss;
    res.pe[idx] = 0.5 * (1.0 + res.sz[idx]);
    check_pe_window(res.pe[idx], res.times[idx]);
    const double mean = 0.5 * (pp + ss);
    const double disc = std::sqrt(0.25 * (pp - ss) * (pp - ss) + std::norm(qh));
    res.metadata.min_eigenvalue = std::min(res.metadata.min_eigenvalue, mean - disc);
    if (cfg.store_states) {
      const double tr = pp + ss;
      res.states.emplace_back(DensityMatrix(
          Operator2(pp / tr, qh / tr, std::conj(qh) / tr, ss / tr)));
    }
  };

  const Operator2& m = rho0.matrix();
  detail::CVec<4> y0{m.ee(), m.eg(), m.ge(), m.gg()};
  const auto stats =
      detail::integrate_dopri5<4>(rhs, y0, grid.t_start(), grid.t_end(), grid.times(),
                                  emit, cfg.rel_tol, cfg.abs_tol, cfg.max_step);
  res.metadata.accepted = stats.accepted;
  res.metadata.rejected = stats.rejected;
  res.metadata.max_scaled_error = stats.max_scaled_error;
  res.metadata.error_estimate = stats.error_estimate;
  return res;
}

double rabi_formula(double delta, double omega, double t) {
  const double r2 = delta * delta + omega * omega;
  if (r2 == 0.0) return 0.0;
  const double s = std::sin(0.5 * std::sqrt(r2) * t);
  return (omega * omega / r2) * s * s;
}

double commuting_drive_pe(double omega_star, double omega_d_star, double phi0_star,
                          double t) {
  if (!(omega_d_star >= 0.0)) {
    fail(ErrorCode::invalid_value, "commuting_drive_pe needs omega_d_star >= 0");
  }
  double theta;
  if (omega_d_star == 0.0) {
    theta = omega_star * t * std::cos(phi0_star);
  } else {
    theta = (omega_star / omega_d_star) *
            (std::sin(omega_d_star * t + phi0_star) - std::sin(phi0_star));
  }
  const double s = std::sin(theta);
  return s * s;
}

}  // namespace rabiforge
