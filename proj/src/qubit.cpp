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

#include "rabiforge/qubit.hpp"

#include <cmath>

namespace rabiforge {

namespace {

bool finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_finite(std::initializer_list<Complex> zs, const char* what) {
  for (Complex z : zs) {
    if (!finite(z)) fail(ErrorCode::invalid_value, std::string(what) + " has non-finite component");
  }
}

}  // namespace

const char* error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::missing_key: return "MissingKey";
    case ErrorCode::invalid_value: return "InvalidValue";
    case ErrorCode::invalid_state: return "InvalidState";
    case ErrorCode::non_hermitian_observable: return "NonHermitianObservable";
    case ErrorCode::non_hermitian_generator: return "NonHermitianGenerator";
    case ErrorCode::anisotropic_input: return "AnisotropicInput";
    case ErrorCode::zero_rotating_strength: return "ZeroRotatingStrength";
    case ErrorCode::phase_not_representable: return "PhaseNotRepresentable";
    case ErrorCode::unphysical_decoherence: return "UnphysicalDecoherence";
    case ErrorCode::step_size_underflow: return "StepSizeUnderflow";
    case ErrorCode::undersampled_beat: return "UndersampledBeat";
    case ErrorCode::undersampled_carrier: return "UndersampledCarrier";
    case ErrorCode::non_commensurate_duration: return "NonCommensurateDuration";
    case ErrorCode::peak_count_mismatch: return "PeakCountMismatch";
    case ErrorCode::degenerate_range: return "DegenerateRange";
    case ErrorCode::invariant_violation: return "InvariantViolation";
    case ErrorCode::io_error: return "IoError";
  }
  return "UnknownError";
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse_error:
    case ErrorCode::missing_key:
    case ErrorCode::invalid_value:
      return 2;
    case ErrorCode::io_error:
      return 4;
    default:
      return 3;
  }
}

Operator2::Operator2(Complex ee, Complex eg, Complex ge, Complex gg) : m{ee, eg, ge, gg} {
  require_finite({ee, eg, ge, gg}, "Operator2");
}

Operator2 Operator2::identity() {
  Operator2 o;
  o.m = {1.0, 0.0, 0.0, 1.0};
  return o;
}

Operator2 Operator2::adjoint() const {
  Operator2 o;
  o.m = {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
  return o;
}

double Operator2::max_abs() const {
  double v = 0.0;
  for (const Complex& z : m) v = std::max(v, std::abs(z));
  return v;
}

bool Operator2::is_hermitian(double rtol) const {
  const double scale = max_abs();
  const Operator2 d = *this - adjoint();
  return d.max_abs() <= rtol * scale;
}

bool Operator2::is_unitary(double tol) const {
  const Operator2 d = adjoint() * (*this) - identity();
  return d.max_abs() <= tol;
}

Operator2& Operator2::operator+=(const Operator2& o) {
  for (int i = 0; i < 4; ++i) m[i] += o.m[i];
  return *this;
}

Operator2& Operator2::operator-=(const Operator2& o) {
  for (int i = 0; i < 4; ++i) m[i] -= o.m[i];
  return *this;
}

Operator2& Operator2::operator*=(Complex s) {
  for (Complex& z : m) z *= s;
  return *this;
}

Operator2 operator+(Operator2 a, const Operator2& b) { return a += b; }
Operator2 operator-(Operator2 a, const Operator2& b) { return a -= b; }

Operator2 operator*(const Operator2& a, const Operator2& b) {
  Operator2 c;
  c.m[0] = a.m[0] * b.m[0] + a.m[1] * b.m[2];
  c.m[1] = a.m[0] * b.m[1] + a.m[1] * b.m[3];
  c.m[2] = a.m[2] * b.m[0] + a.m[3] * b.m[2];
  c.m[3] = a.m[2] * b.m[1] + a.m[3] * b.m[3];
  return c;
}

Operator2 operator*(Complex s, Operator2 a) { return a *= s; }
Operator2 operator*(Operator2 a, Complex s) { return a *= s; }

Operator2 pauli(Axis axis) {
  switch (axis) {
    case Axis::x: return Operator2(0.0, 1.0, 1.0, 0.0);
    case Axis::y: return Operator2(0.0, Complex(0, -1), Complex(0, 1), 0.0);
    case Axis::z: return Operator2(1.0, 0.0, 0.0, -1.0);
  }
  fail(ErrorCode::invalid_value, "unknown Pauli axis");
}

Operator2 ladder(Ladder which) {
  // sigma_+ maps |g> to |e>: a 1 in the (e, g) slot.
  if (which == Ladder::raising) return Operator2(0.0, 1.0, 0.0, 0.0);
  return Operator2(0.0, 0.0, 1.0, 0.0);
}

PureState::PureState(Complex amp_g, Complex amp_e) : amp_g_(amp_g), amp_e_(amp_e) {
  require_finite({amp_g, amp_e}, "PureState");
  const double n2 = std::norm(amp_g) + std::norm(amp_e);
  if (std::abs(n2 - 1.0) > 1e-10) {
    fail(ErrorCode::invalid_state,
         "PureState amplitudes are not normalized (|amp|^2 = " + std::to_string(n2) + ")");
  }
}

PureState PureState::normalized(Complex amp_g, Complex amp_e) {
  require_finite({amp_g, amp_e}, "PureState");
  const double n = std::sqrt(std::norm(amp_g) + std::norm(amp_e));
  if (n < 1e-150) fail(ErrorCode::invalid_state, "cannot normalize the zero vector");
  return PureState(amp_g / n, amp_e / n);
}

DensityMatrix::DensityMatrix(const Operator2& rho) : rho_(rho) {
  const Operator2 d = rho_ - rho_.adjoint();
  if (d.max_abs() > 1e-10) fail(ErrorCode::invalid_state, "density matrix is not Hermitian");
  if (std::abs(rho_.trace() - Complex(1.0)) > 1e-9) {
    fail(ErrorCode::invalid_state, "density matrix trace differs from 1");
  }
  const auto ev = eigenvalues();
  if (ev[0] < -1e-9 || ev[1] < -1e-9) {
    fail(ErrorCode::invalid_state, "density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const Complex e = psi.amp_e(), g = psi.amp_g();
  return DensityMatrix(Operator2(e * std::conj(e), e * std::conj(g),
                                 g * std::conj(e), g * std::conj(g)));
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Operator2(0.5, 0.0, 0.0, 0.5));
}

std::array<double, 2> DensityMatrix::eigenvalues() const {
  // Closed form for a Hermitian 2x2: mean +- sqrt(mean^2 - det).
  const double mean = 0.5 * rho_.trace().real();
  const double det = rho_.det().real();
  const double disc = std::sqrt(std::max(0.0, mean * mean - det));
  return {mean - disc, mean + disc};
}

BlochVector::BlochVector(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
  for (double v : {x, y, z}) {
    if (!std::isfinite(v)) fail(ErrorCode::invalid_state, "Bloch component is not finite");
    if (std::abs(v) > 1.0 + 1e-9) fail(ErrorCode::invalid_state, "Bloch component outside [-1, 1]");
  }
  if (x * x + y * y + z * z > 1.0 + 1e-8) {
    fail(ErrorCode::invalid_state, "Bloch vector norm exceeds 1");
  }
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

namespace {

void require_observable(const Operator2& obs) {
  if (!obs.is_hermitian(1e-12)) {
    fail(ErrorCode::non_hermitian_observable, "observable fails the Hermitian check");
  }
}

}  // namespace

double expectation(const PureState& state, const Operator2& obs) {
  require_observable(obs);
  const Complex e = state.amp_e(), g = state.amp_g();
  // <psi|A|psi> with psi = (e, g) in matrix order.
  const Complex v = std::conj(e) * (obs.ee() * e + obs.eg() * g) +
                    std::conj(g) * (obs.ge() * e + obs.gg() * g);
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, obs.max_abs())) {
    fail(ErrorCode::non_hermitian_observable, "expectation has a non-negligible imaginary part");
  }
  return v.real();
}

double expectation(const DensityMatrix& state, const Operator2& obs) {
  require_observable(obs);
  const Complex v = (state.matrix() * obs).trace();
  if (std::abs(v.imag()) > 1e-10 * std::max(1.0, obs.max_abs())) {
    fail(ErrorCode::non_hermitian_observable, "expectation has a non-negligible imaginary part");
  }
  return v.real();
}

double expectation(const QubitState& state, const Operator2& obs) {
  return std::visit([&](const auto& s) { return expectation(s, obs); }, state);
}

BlochVector bloch_vector(const PureState& state) {
  const Complex z = std::conj(state.amp_e()) * state.amp_g();
  return BlochVector(2.0 * z.real(), 2.0 * z.imag(),
                     std::norm(state.amp_e()) - std::norm(state.amp_g()));
}

BlochVector bloch_vector(const DensityMatrix& state) {
  const Operator2& r = state.matrix();
  const Complex off = r.eg();  // rho_eg
  return BlochVector(2.0 * off.real(), -2.0 * off.imag(), (r.ee() - r.gg()).real());
}

BlochVector bloch_vector(const QubitState& state) {
  return std::visit([](const auto& s) { return bloch_vector(s); }, state);
}

Operator2 matrix_exp_su2(const Operator2& h, double t) {
  if (!std::isfinite(t)) fail(ErrorCode::invalid_value, "non-finite time in matrix_exp_su2");
  if (!h.is_hermitian(1e-12)) {
    fail(ErrorCode::non_hermitian_generator, "generator fails the Hermitian check");
  }
  // Decompose the Hermitian part exactly: H = c0*I + cx*sx + cy*sy + cz*sz.
  const double c0 = 0.5 * h.trace().real();
  const double cz = 0.5 * (h.ee() - h.gg()).real();
  const Complex off = 0.5 * (h.eg() + std::conj(h.ge()));
  const double cx = off.real();
  const double cy = -off.imag();

  const double r = std::sqrt(cx * cx + cy * cy + cz * cz);
  const Complex global = std::polar(1.0, -c0 * t);
  if (r * std::abs(t) == 0.0) {
    return Operator2(global, 0.0, 0.0, global);
  }
  const double c = std::cos(r * t);
  const double s = std::sin(r * t);
  const double nx = cx / r, ny = cy / r, nz = cz / r;
  // cos(rt) I - i sin(rt) (n . sigma)
  const Complex i(0.0, 1.0);
  return Operator2(global * (c - i * s * nz), global * (-i * s) * Complex(nx, -ny),
                   global * (-i * s) * Complex(nx, ny), global * (c + i * s * nz));
}

}  // namespace rabiforge
