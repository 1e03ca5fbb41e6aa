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

#include "rabiforge/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "rabiforge/errors.hpp"
#include "rabiforge/frames.hpp"
#include "rabiforge/iqsynth.hpp"
#include "rabiforge/model.hpp"
#include "rabiforge/propagator.hpp"

namespace rabiforge {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

struct Line {
  const char* subject;
  const char* what;
  double residual;
  double tolerance;
};

void append_line(VerifyReport& report, const Line& line) {
  const bool ok = line.residual <= line.tolerance;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: %s = %.3g (tol %.3g) %s\n",
                line.subject, line.what, line.residual, line.tolerance,
                ok ? "ok" : "FAIL");
  report.text += buf;
  report.ok = report.ok && ok;
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

LabDriveParams random_two_tone(std::mt19937_64& rng) {
  // Half the draws at a microwave-scale carrier, half reduced; the frame
  // identity must not care.
  const double carrier = (rng() & 1) ? uniform(rng, kTwoPi * 5.0e9,
                                               kTwoPi * 9.0e9)
                                     : uniform(rng, kTwoPi * 50.0e6,
                                               kTwoPi * 200.0e6);
  const double center = carrier + uniform(rng, -kTwoPi * 20.0e6,
                                          kTwoPi * 20.0e6);
  const double split = uniform(rng, 0.0, kTwoPi * 40.0e6);
  return LabDriveParams(
      carrier,
      DriveTone(center + 0.5 * split, uniform(rng, 0.0, kTwoPi * 20.0e6),
                uniform(rng, -kPi, kPi)),
      DriveTone(center - 0.5 * split, uniform(rng, 0.0, kTwoPi * 20.0e6),
                uniform(rng, -kPi, kPi)));
}

void verify_frames(VerifyReport& report, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);

  double worst_h = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const LabDriveParams p = random_two_tone(rng);
    auto [eff, frame] = effective_params(p);
    const TimeOperator transformed =
        transform_hamiltonian(lab_hamiltonian(p), frame);
    const TimeOperator direct = effective_hamiltonian(eff);
    for (int k = 0; k < 10; ++k) {
      const double t = uniform(rng, 0.0, 1.0e-6);
      const Operator2 a = transformed(t);
      const Operator2 b = direct(t);
      const double resid = (a - b).max_abs() / std::max(1.0, b.max_abs());
      worst_h = std::max(worst_h, resid);
    }
  }
  append_line(report, {"frames", "transformed-vs-direct Hamiltonian",
                       worst_h, 1.0e-10});

  // d/dt of the frame unitary must equal -i (omega/2) sigma_z U.  Checked by
  // central differences at two step sizes: a deliberately tiny step that is
  // dominated by cancellation, and a near-optimal one.  Sample points are
  // drawn with omega*t of order one: the identity is phase-periodic, and at
  // large absolute phases the roundoff of omega*t itself (~ omega*t*eps)
  // would drown the difference signal and measure libm instead of the code.
  double worst_coarse = 0.0;
  double worst_fine = 0.0;
  for (int trial = 0; trial < std::max(1, trials / 4); ++trial) {
    const double omega = uniform(rng, kTwoPi * 10.0e6, kTwoPi * 9.0e9);
    const FrameSpec f(omega, uniform(rng, -kPi, kPi));
    const double t = uniform(rng, 0.0, kTwoPi) / omega;
    const Operator2 expected =
        Complex(0.0, -0.5 * omega) * (pauli(Axis::z) * frame_unitary(f, t));
    for (double phase_step : {1.0e-12, 2.0e-5}) {
      const double h = phase_step / omega;
      const Operator2 diff = (1.0 / (2.0 * h)) *
                             (frame_unitary(f, t + h) - frame_unitary(f, t - h));
      const double resid =
          (diff - expected).max_abs() / expected.max_abs();
      double& worst = phase_step < 1.0e-6 ? worst_coarse : worst_fine;
      worst = std::max(worst, resid);
    }
  }
  append_line(report, {"frames", "frame generator, cancellation-limited step",
                       worst_coarse, 5.0e-3});
  append_line(report, {"frames", "frame generator, near-optimal step",
                       worst_fine, 1.0e-9});
}

void verify_oracles(VerifyReport& report, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);
  const TimeGrid grid(0.0, 1.0e-6, 51);

  double worst_rabi = 0.0;
  double worst_comm = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    {
      // Single rotating tone: analytic detuned flopping.
      const double delta = uniform(rng, -kTwoPi * 10.0e6, kTwoPi * 10.0e6);
      const double omega1 = uniform(rng, kTwoPi * 0.5e6, kTwoPi * 10.0e6);
      const double omega_d = uniform(rng, 0.0, kTwoPi * 10.0e6);
      const EffectiveParams eff(delta + omega_d, omega_d, 0.0, omega1, 0.0);
      IntegratorConfig cfg;
      cfg.max_step = suggested_max_step(eff);
      const EvolutionResult res = propagate_unitary(
          effective_hamiltonian(eff), PureState::ground(), grid, cfg);
      for (std::size_t i = 0; i < res.times.size(); ++i) {
        worst_rabi = std::max(
            worst_rabi,
            std::abs(res.pe[i] - rabi_formula(delta, omega1, res.times[i])));
      }
    }
    {
      // Zero effective detuning, equal strengths: the drive commutes with
      // itself at all times and the population is a pure phase integral.
      const double amp = uniform(rng, kTwoPi * 1.0e6, kTwoPi * 20.0e6);
      const double omega_d = uniform(rng, 0.0, kTwoPi * 10.0e6);
      const double phi0 = uniform(rng, 0.0, kPi);
      const EffectiveParams eff(0.0, omega_d, phi0, amp, amp);
      IntegratorConfig cfg;
      cfg.max_step = suggested_max_step(eff);
      const EvolutionResult res = propagate_unitary(
          effective_hamiltonian(eff), PureState::ground(), grid, cfg);
      for (std::size_t i = 0; i < res.times.size(); ++i) {
        worst_comm = std::max(
            worst_comm,
            std::abs(res.pe[i] -
                     commuting_drive_pe(amp, omega_d, phi0, res.times[i])));
      }
    }
  }
  append_line(report, {"oracles", "detuned single-tone P_e", worst_rabi,
                       1.0e-6});
  append_line(report, {"oracles", "commuting bichromatic P_e", worst_comm,
                       1.0e-6});
}

void verify_waveform(VerifyReport& report, std::uint64_t seed, int trials) {
  std::mt19937_64 rng(seed);

  // 1 MHz bins: 2000 samples at 2 GHz spanning exactly 1 us.
  const double rate = 2.0e9;
  const double duration = 1.0e-6;

  double worst_freq = 0.0;
  double worst_amp = 0.0;
  double worst_phase = 0.0;
  double worst_power = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const auto f2 = static_cast<double>(
        std::uniform_int_distribution<int>(80, 100)(rng));
    const auto f1 = static_cast<double>(std::uniform_int_distribution<int>(
        static_cast<int>(f2) + 1, 120)(rng));
    const double a1 = uniform(rng, kTwoPi * 2.0e6, kTwoPi * 20.0e6);
    const double a2 = uniform(rng, kTwoPi * 2.0e6, kTwoPi * 20.0e6);
    const double p1 = uniform(rng, -3.0, 3.0);
    const double p2 = uniform(rng, -3.0, 3.0);
    const LabDriveParams params(kTwoPi * 100.0e6,
                                DriveTone(kTwoPi * f1 * 1.0e6, a1, p1),
                                DriveTone(kTwoPi * f2 * 1.0e6, a2, p2));

    const SampledWaveform rf =
        upconvert(synthesize_iq(params, rate, duration), lo_frequency(params));
    const auto tones = extract_tones(rf, 2);

    const double ef[2] = {f2 * 1.0e6, f1 * 1.0e6};
    const double ea[2] = {a2, a1};
    const double ep[2] = {p2, p1};
    for (int k = 0; k < 2; ++k) {
      worst_freq = std::max(
          worst_freq, std::abs(tones[k].frequency - ef[k]) / ef[k]);
      worst_amp =
          std::max(worst_amp, std::abs(tones[k].amplitude - ea[k]) / ea[k]);
      worst_phase = std::max(
          worst_phase,
          std::abs(std::remainder(tones[k].phase - ep[k], kTwoPi)));
    }
    const double expected_power = 0.5 * (a1 * a1 + a2 * a2);
    worst_power = std::max(
        worst_power,
        std::abs(mean_power(rf) - expected_power) / expected_power);
  }
  append_line(report, {"waveform", "recovered tone frequency", worst_freq,
                       1.0e-9});
  append_line(report, {"waveform", "recovered tone amplitude", worst_amp,
                       1.0e-3});
  append_line(report, {"waveform", "recovered tone phase", worst_phase,
                       1.0e-3});
  append_line(report, {"waveform", "mean RF power", worst_power, 1.0e-6});
}

void dispatch(VerifyReport& report, VerifySubject subject, std::uint64_t seed,
              int trials) {
  switch (subject) {
    case VerifySubject::frames: verify_frames(report, seed, trials); break;
    case VerifySubject::oracles: verify_oracles(report, seed, trials); break;
    case VerifySubject::waveform: verify_waveform(report, seed, trials); break;
  }
}

void append_summary(VerifyReport& report, int subjects, std::uint64_t seed,
                    int trials) {
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "verification %s (%d subject%s, %d trials, seed %llu)\n",
                report.ok ? "PASSED" : "FAILED", subjects,
                subjects == 1 ? "" : "s", trials,
                static_cast<unsigned long long>(seed));
  report.text += buf;
}

}  // namespace

VerifyReport run_verify(VerifySubject subject, std::uint64_t seed,
                        int trials) {
  if (trials < 1) fail(ErrorCode::invalid_value, "trials must be >= 1");
  VerifyReport report;
  dispatch(report, subject, seed, trials);
  append_summary(report, 1, seed, trials);
  return report;
}

VerifyReport run_verify_all(std::uint64_t seed, int trials) {
  if (trials < 1) fail(ErrorCode::invalid_value, "trials must be >= 1");
  VerifyReport report;
  for (VerifySubject s : {VerifySubject::frames, VerifySubject::oracles,
                          VerifySubject::waveform})
    dispatch(report, s, seed, trials);
  append_summary(report, 3, seed, trials);
  return report;
}

}  // namespace rabiforge
