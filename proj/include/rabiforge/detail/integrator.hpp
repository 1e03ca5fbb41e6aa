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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "rabiforge/errors.hpp"
#include "rabiforge/qubit.hpp"

// Dormand-Prince 5(4) integrator for small complex ODE systems.
//
// This is deliberately hand-rolled rather than pulled from a library: the
// propagation layer needs FSAL step reuse, a specific weighted error norm
// over complex components, dense output so uniform sample grids never
// constrain the step size, and a hard StepSizeUnderflow diagnostic.  The
// state is a fixed-size array (2 for wavefunctions, 4 for vectorized
// density matrices), so there is nothing to gain from a general-purpose
// solver interface.

namespace rabiforge::detail {

template <std::size_t N>
using CVec = std::array<Complex, N>;

struct IntegratorStats {
  long long accepted = 0;
  long long rejected = 0;
  // Worst accepted local error in units of the tolerance (<= 1 by
  // construction unless the very first trial step was forced through).
  double max_scaled_error = 0.0;
  // Rough global error bound: accepted local errors, rescaled from
  // tolerance units back to absolute units via (abs_tol + rel_tol).  For
  // unit-magnitude quantum states this upper-bounds how far any observable
  // has drifted from the true solution, up to error propagation by the flow.
  double error_estimate = 0.0;
};

// Butcher tableau (Dormand & Prince 1980), plus the 5th-order dense-output
// weights.  b holds the 5th-order solution weights; e = b - b_hat is the
// embedded error estimator.
namespace dopri5 {
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;
}  // namespace dopri5

// Quartic Hermite-type interpolant over one accepted step; evaluating at
// theta=0 and theta=1 reproduces the step endpoints exactly.
template <std::size_t N>
struct DenseOutput {
  CVec<N> r1, r2, r3, r4, r5;

  CVec<N> eval(double theta) const {
    const double om = 1.0 - theta;
    CVec<N> out;
    for (std::size_t i = 0; i < N; ++i) {
      out[i] = r1[i] + theta * (r2[i] + om * (r3[i] + theta * (r4[i] + om * r5[i])));
    }
    return out;
  }
};

// Integrates dy/dt = rhs(t, y) from t0 to t1 (t1 > t0), delivering the state
// at each of sample_times (sorted ascending, all within [t0, t1]) through
// emit(index, y).  rhs has signature void(double, const CVec<N>&, CVec<N>&);
// emit has signature void(std::size_t, const CVec<N>&).
template <std::size_t N, class Rhs, class Emit>
IntegratorStats integrate_dopri5(Rhs&& rhs, CVec<N> y, double t0, double t1,
                                 const std::vector<double>& sample_times, Emit&& emit,
                                 double rel_tol, double abs_tol, double max_step) {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    fail(ErrorCode::invalid_value, "integrator tolerances must be positive");
  }
  if (!(t1 > t0)) fail(ErrorCode::invalid_value, "integration span must be positive");
  if (!(max_step > 0.0)) max_step = std::numeric_limits<double>::infinity();

  const double span = t1 - t0;
  const auto scaled_norm = [&](const CVec<N>& err, const CVec<N>& ya, const CVec<N>& yb) {
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = abs_tol + rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
      const double a = std::abs(err[i]) / sk;
      acc += a * a;
    }
    return std::sqrt(acc / static_cast<double>(N));
  };

  IntegratorStats stats;
  double t = t0;
  CVec<N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, errv;
  rhs(t, y, k1);

  // Initial step size: the usual two-derivative heuristic (one trial Euler
  // step), clipped to the span and the step cap.
  double h;
  {
    double d0 = 0.0, d1 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = abs_tol + rel_tol * std::abs(y[i]);
      d0 += std::norm(y[i] / sk);
      d1 += std::norm(k1[i] / sk);
    }
    d0 = std::sqrt(d0 / N);
    d1 = std::sqrt(d1 / N);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * (d0 / d1);
    h0 = std::min({h0, span, max_step});
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h0 * k1[i];
    rhs(t0 + h0, ytmp, k2);
    double d2 = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = abs_tol + rel_tol * std::abs(y[i]);
      d2 += std::norm((k2[i] - k1[i]) / sk);
    }
    d2 = std::sqrt(d2 / N) / h0;
    const double dm = std::max(d1, d2);
    const double h1 = dm <= 1e-15 ? std::max(1e-6 * span, h0 * 1e-3)
                                  : std::pow(0.01 / dm, 0.2);
    h = std::min({100.0 * h0, h1, span, max_step});
  }

  // Deliver any samples sitting exactly at the start.
  std::size_t next_sample = 0;
  while (next_sample < sample_times.size() && sample_times[next_sample] <= t0) {
    emit(next_sample, y);
    ++next_sample;
  }

  bool just_rejected = false;
  while (t < t1) {
    h = std::min({h, max_step, t1 - t});
    if (h <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), span)) {
      fail(ErrorCode::step_size_underflow,
           "step size underflow at t = " + std::to_string(t) +
               " s; the requested tolerance cannot be met");
    }

    using namespace dopri5;
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a21 * k1[i]);
    rhs(t + c2 * h, ytmp, k2);
    for (std::size_t i = 0; i < N; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    rhs(t + c3 * h, ytmp, k3);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    }
    rhs(t + c4 * h, ytmp, k4);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    }
    rhs(t + c5 * h, ytmp, k5);
    for (std::size_t i = 0; i < N; ++i) {
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                            a65 * k5[i]);
    }
    rhs(t + h, ytmp, k6);
    for (std::size_t i = 0; i < N; ++i) {
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                            b6 * k6[i]);
    }
    rhs(t + h, ynew, k7);  // FSAL: becomes k1 of the next step on acceptance

    for (std::size_t i = 0; i < N; ++i) {
      errv[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                     e7 * k7[i]);
    }
    const double err = scaled_norm(errv, y, ynew);

    if (err <= 1.0) {
      ++stats.accepted;
      stats.max_scaled_error = std::max(stats.max_scaled_error, err);
      stats.error_estimate += err * (abs_tol + rel_tol);

      // Snap to t1 when the leftover is pure roundoff from clamping h above.
      const double snap_band =
          8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t1), span);
      const double t_new = (t1 - (t + h) <= snap_band) ? t1 : t + h;
      if (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
        DenseOutput<N> dense;
        for (std::size_t i = 0; i < N; ++i) {
          const Complex dy = ynew[i] - y[i];
          dense.r1[i] = y[i];
          dense.r2[i] = dy;
          dense.r3[i] = h * k1[i] - dy;
          dense.r4[i] = dy - h * k7[i] - dense.r3[i];
          dense.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                             d6 * k6[i] + d7 * k7[i]);
        }
        while (next_sample < sample_times.size() && sample_times[next_sample] <= t_new) {
          const double theta =
              std::clamp((sample_times[next_sample] - t) / h, 0.0, 1.0);
          emit(next_sample, dense.eval(theta));
          ++next_sample;
        }
      }

      y = ynew;
      k1 = k7;
      t = t_new;

      double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
      if (!std::isfinite(fac)) fac = 0.2;
      fac = std::clamp(fac, 0.2, just_rejected ? 1.0 : 5.0);
      h *= fac;
      just_rejected = false;
    } else {
      ++stats.rejected;
      double fac = std::isfinite(err) ? 0.9 * std::pow(err, -0.2) : 0.2;
      h *= std::clamp(fac, 0.2, 1.0);
      just_rejected = true;
    }
  }

  // Anything left must sit at t1 itself (within the snapping band above).
  while (next_sample < sample_times.size()) {
    emit(next_sample, y);
    ++next_sample;
  }
  return stats;
}

}  // namespace rabiforge::detail
