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

#include <array>
#include <complex>
#include <functional>
#include <variant>

#include "rabiforge/errors.hpp"

// Exact two-level (qubit) algebra.  Everything in here is a closed form on
// 2x2 complex matrices; there is deliberately no n-level generality.
//
// Basis convention: index 0 is the excited state |e> and index 1 the ground
// state |g>, so sigma_z = diag(+1, -1) and P_e = (1 + <sigma_z>)/2.

namespace rabiforge {

using Complex = std::complex<double>;

enum class Axis { x, y, z };
enum class Ladder { raising, lowering };

// 2x2 complex matrix, row-major in the (|e>, |g>) basis.
struct Operator2 {
  std::array<Complex, 4> m{};  // [ee, eg, ge, gg]

  Operator2() = default;
  Operator2(Complex ee, Complex eg, Complex ge, Complex gg);

  static Operator2 zero() { return Operator2{}; }
  static Operator2 identity();

  Complex& operator()(int row, int col) { return m[2 * row + col]; }
  const Complex& operator()(int row, int col) const { return m[2 * row + col]; }

  Complex ee() const { return m[0]; }
  Complex eg() const { return m[1]; }
  Complex ge() const { return m[2]; }
  Complex gg() const { return m[3]; }

  Operator2 adjoint() const;
  Complex trace() const { return m[0] + m[3]; }
  Complex det() const { return m[0] * m[3] - m[1] * m[2]; }

  // Largest entry magnitude (sup norm); the scale reference for all
  // relative tolerance checks below.
  double max_abs() const;

  // Hermitian "flag": max|A - A^dag| <= rtol * max|A|.  Computed on demand
  // rather than stored, so it can never go stale.
  bool is_hermitian(double rtol = 1e-12) const;
  // Unitary "flag": max|U^dag U - I| <= tol.
  bool is_unitary(double tol = 1e-10) const;

  Operator2& operator+=(const Operator2& o);
  Operator2& operator-=(const Operator2& o);
  Operator2& operator*=(Complex s);
};

Operator2 operator+(Operator2 a, const Operator2& b);
Operator2 operator-(Operator2 a, const Operator2& b);
Operator2 operator*(const Operator2& a, const Operator2& b);
Operator2 operator*(Complex s, Operator2 a);
Operator2 operator*(Operator2 a, Complex s);

// Time-dependent Hamiltonian divided by hbar, i.e. angular frequency units
// (rad/s).  All propagation routines consume this shape.
using TimeOperator = std::function<Operator2(double)>;

// sigma_x, sigma_y, or sigma_z.
Operator2 pauli(Axis axis);

// sigma_+ = |e><g| (raising) or sigma_- = |g><e| (lowering).
Operator2 ladder(Ladder which);

// Normalized pure state amp_g|g> + amp_e|e>.
class PureState {
 public:
  PureState(Complex amp_g, Complex amp_e);

  // Normalizes the given amplitudes (error if both are ~zero).
  static PureState normalized(Complex amp_g, Complex amp_e);
  static PureState ground() { return PureState(1.0, 0.0); }
  static PureState excited() { return PureState(0.0, 1.0); }

  Complex amp_g() const { return amp_g_; }
  Complex amp_e() const { return amp_e_; }

 private:
  Complex amp_g_, amp_e_;
};

// Physical density matrix: Hermitian, unit trace, positive semidefinite
// (all enforced with small tolerances at construction).
class DensityMatrix {
 public:
  explicit DensityMatrix(const Operator2& rho);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed();

  const Operator2& matrix() const { return rho_; }
  std::array<double, 2> eigenvalues() const;

 private:
  Operator2 rho_;
};

using QubitState = std::variant<PureState, DensityMatrix>;

struct BlochVector {
  double x, y, z;

  BlochVector(double x, double y, double z);
  double norm() const;
};

// <psi|obs|psi> resp. Re tr(rho * obs).  The observable must pass the
// Hermitian check; the (tiny) imaginary residue is checked and discarded.
double expectation(const PureState& state, const Operator2& obs);
double expectation(const DensityMatrix& state, const Operator2& obs);
double expectation(const QubitState& state, const Operator2& obs);

// (<sigma_x>, <sigma_y>, <sigma_z>).  Unit norm for pure states, norm <= 1
// for mixed ones.
BlochVector bloch_vector(const PureState& state);
BlochVector bloch_vector(const DensityMatrix& state);
BlochVector bloch_vector(const QubitState& state);

// exp(-i H t) for Hermitian H, via the exact decomposition
// H = c0*I + c.sigma:  exp(-iHt) = e^{-i c0 t} (cos(|c|t) I - i sin(|c|t) n.sigma).
Operator2 matrix_exp_su2(const Operator2& h, double t);

}  // namespace rabiforge
