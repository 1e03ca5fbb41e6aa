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

#include "rabiforge/iqsynth.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

#include "rabiforge/errors.hpp"

namespace rabiforge {

namespace {

constexpr double kTwoPi = 2.0 * 3.141592653589793;

void require_rate(double rate) {
  if (!std::isfinite(rate) || rate <= 0.0)
    fail(ErrorCode::invalid_value, "sample rate must be positive and finite");
}

// FFTW's planner is not reentrant; executions are.  All plan bookkeeping in
// this translation unit goes through this mutex.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  void* p = nullptr;
  explicit FftwBuffer(std::size_t bytes) : p(fftw_malloc(bytes)) {
    if (p == nullptr) fail(ErrorCode::io_error, "fftw_malloc failed");
  }
  ~FftwBuffer() { fftw_free(p); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
};

struct PlanGuard {
  fftw_plan plan = nullptr;
  PlanGuard(int n, double* in, fftw_complex* out) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
    if (plan == nullptr)
      fail(ErrorCode::io_error, "fftw plan creation failed");
  }
  ~PlanGuard() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  PlanGuard(const PlanGuard&) = delete;
  PlanGuard& operator=(const PlanGuard&) = delete;
};

}  // namespace

SampledWaveform::SampledWaveform(WaveformKind kind, double sample_rate,
                                 double start_time, std::vector<double> i,
                                 std::vector<double> q)
    : kind(kind),
      sample_rate(sample_rate),
      start_time(start_time),
      i(std::move(i)),
      q(std::move(q)) {
  require_rate(sample_rate);
  if (!std::isfinite(start_time))
    fail(ErrorCode::invalid_value, "waveform start time must be finite");
  if (this->i.empty())
    fail(ErrorCode::invalid_value, "waveform has no samples");
  if (kind == WaveformKind::baseband_iq) {
    if (this->q.size() != this->i.size())
      fail(ErrorCode::invalid_value,
           "baseband waveform needs matching i and q lengths");
  } else if (!this->q.empty()) {
    fail(ErrorCode::invalid_value, "rf waveform must not carry a q channel");
  }
  for (double v : this->i)
    if (!std::isfinite(v))
      fail(ErrorCode::invalid_value, "waveform sample is not finite");
  for (double v : this->q)
    if (!std::isfinite(v))
      fail(ErrorCode::invalid_value, "waveform sample is not finite");
}

double lo_frequency(const LabDriveParams& p) {
  return 0.5 * (p.tone1.omega + p.tone2.omega);
}

SampledWaveform synthesize_iq(const LabDriveParams& p, double sample_rate,
                              double duration) {
  require_rate(sample_rate);
  if (!std::isfinite(duration) || duration <= 0.0)
    fail(ErrorCode::invalid_value, "waveform duration must be positive");

  const double split_hz = (p.tone1.omega - p.tone2.omega) / kTwoPi;
  if (sample_rate <= 4.0 * split_hz)
    fail(ErrorCode::undersampled_beat,
         "sample rate must exceed four times the tone splitting");

  const auto n = static_cast<std::size_t>(std::llround(duration * sample_rate));
  if (n < 1)
    fail(ErrorCode::invalid_value, "duration too short for one sample");

  const double delta = 0.5 * (p.tone1.omega - p.tone2.omega);
  const double a1 = p.tone1.amplitude;
  const double a2 = p.tone2.amplitude;
  const double ph1 = p.tone1.phase;
  const double ph2 = p.tone2.phase;

  std::vector<double> mi(n), mq(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double t = static_cast<double>(j) / sample_rate;
    mi[j] = a1 * std::cos(delta * t + ph1) + a2 * std::cos(delta * t - ph2);
    mq[j] = a1 * std::sin(delta * t + ph1) - a2 * std::sin(delta * t - ph2);
  }
  return SampledWaveform(WaveformKind::baseband_iq, sample_rate, 0.0,
                         std::move(mi), std::move(mq));
}

SampledWaveform upconvert(const SampledWaveform& iq, double lo_omega) {
  if (iq.kind != WaveformKind::baseband_iq)
    fail(ErrorCode::invalid_value, "upconvert expects a baseband waveform");
  if (!std::isfinite(lo_omega) || lo_omega <= 0.0)
    fail(ErrorCode::invalid_value,
         "local oscillator frequency must be positive");
  if (iq.sample_rate <= 4.0 * (lo_omega / kTwoPi))
    fail(ErrorCode::undersampled_carrier,
         "sample rate must exceed four times the carrier frequency");

  std::vector<double> s(iq.i.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double t = iq.start_time + static_cast<double>(j) / iq.sample_rate;
    s[j] = iq.i[j] * std::cos(lo_omega * t) - iq.q[j] * std::sin(lo_omega * t);
  }
  return SampledWaveform(WaveformKind::rf, iq.sample_rate, iq.start_time,
                         std::move(s), {});
}

std::vector<ToneEstimate> extract_tones(const SampledWaveform& rf,
                                        std::size_t expected_count) {
  if (rf.kind != WaveformKind::rf)
    fail(ErrorCode::invalid_value, "tone extraction expects an rf waveform");
  const std::size_t n = rf.i.size();
  if (n < 4)
    fail(ErrorCode::invalid_value, "waveform too short for tone extraction");
  // Interior bins only: DC and (for even n) Nyquist carry no phase.
  const std::size_t k_end = (n + 1) / 2;  // exclusive
  if (expected_count < 1 || expected_count > k_end - 1)
    fail(ErrorCode::invalid_value,
         "expected tone count outside the resolvable range");

  FftwBuffer in_buf(sizeof(double) * n);
  FftwBuffer out_buf(sizeof(fftw_complex) * (n / 2 + 1));
  auto* in = static_cast<double*>(in_buf.p);
  auto* out = static_cast<fftw_complex*>(out_buf.p);
  std::copy(rf.i.begin(), rf.i.end(), in);

  PlanGuard guard(static_cast<int>(n), in, out);
  fftw_execute(guard.plan);

  std::vector<double> amp(k_end, 0.0);
  for (std::size_t k = 1; k < k_end; ++k)
    amp[k] = 2.0 * std::hypot(out[k][0], out[k][1]) / static_cast<double>(n);

  // Strongest lines first; equal strengths tie-break toward lower bins.
  std::vector<std::size_t> order;
  for (std::size_t k = 1; k < k_end; ++k) order.push_back(k);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (amp[a] != amp[b]) return amp[a] > amp[b];
    return a < b;
  });
  std::vector<bool> picked(k_end, false);
  for (std::size_t r = 0; r < expected_count; ++r) picked[order[r]] = true;

  // A real line on a non-integer bin smears into its neighbours; treat a
  // strong unpicked neighbour as an off-grid tone rather than a new peak.
  // Noise-level picks (when the caller over-counts) are skipped here so the
  // count check below reports them for what they are.
  const double max_amp = amp[order[0]];
  for (std::size_t k = 1; k < k_end; ++k) {
    if (!picked[k] || amp[k] < 1.0e-6 * max_amp) continue;
    for (std::size_t nb : {k - 1, k + 1}) {
      if (nb < 1 || nb >= k_end || picked[nb]) continue;
      if (amp[nb] > 1.0e-3 * amp[k])
        fail(ErrorCode::non_commensurate_duration,
             "spectral leakage: tone is not bin-aligned over this window");
    }
  }
  for (std::size_t k = 1; k < k_end; ++k) {
    if (!picked[k] && amp[k] >= 1.0e-6 * max_amp)
      fail(ErrorCode::peak_count_mismatch,
           "more spectral lines than expected");
    if (picked[k] && amp[k] < 1.0e-6 * max_amp)
      fail(ErrorCode::peak_count_mismatch,
           "fewer spectral lines than expected");
  }

  std::vector<ToneEstimate> tones;
  for (std::size_t k = 1; k < k_end; ++k) {
    if (!picked[k]) continue;
    const double freq = static_cast<double>(k) * rf.sample_rate /
                        static_cast<double>(n);
    const double raw_phase = std::atan2(out[k][1], out[k][0]);
    tones.push_back(ToneEstimate{
        freq, amp[k],
        canonical_phase(raw_phase - kTwoPi * freq * rf.start_time)});
  }
  return tones;
}

double mean_power(const SampledWaveform& w) {
  double acc = 0.0;
  if (w.kind == WaveformKind::rf) {
    for (double v : w.i) acc += v * v;
  } else {
    for (std::size_t j = 0; j < w.i.size(); ++j)
      acc += 0.5 * (w.i[j] * w.i[j] + w.q[j] * w.q[j]);
  }
  return acc / static_cast<double>(w.i.size());
}

std::string waveform_csv(const SampledWaveform& w) {
  std::string out;
  out.reserve(64 + 40 * w.i.size());

  char head[160];
  std::snprintf(head, sizeof head,
                "# kind=%s sample_rate_hz=%.17g start_time_s=%.17g\n",
                w.kind == WaveformKind::rf ? "rf" : "iq", w.sample_rate,
                w.start_time);
  out += head;

  char line[80];
  for (std::size_t j = 0; j < w.i.size(); ++j) {
    if (w.kind == WaveformKind::rf) {
      std::snprintf(line, sizeof line, "%.17g\n", w.i[j]);
    } else {
      std::snprintf(line, sizeof line, "%.17g,%.17g\n", w.i[j], w.q[j]);
    }
    out += line;
  }
  return out;
}

SampledWaveform parse_waveform_csv(const std::string& text) {
  std::istringstream in(text);

  std::string header;
  if (!std::getline(in, header))
    fail(ErrorCode::parse_error, "empty waveform text");

  char kind_word[8] = {0};
  double rate = 0.0;
  double start = 0.0;
  if (std::sscanf(header.c_str(),
                  "# kind=%7s sample_rate_hz=%lg start_time_s=%lg", kind_word,
                  &rate, &start) != 3)
    fail(ErrorCode::parse_error, "bad waveform header line");

  WaveformKind kind;
  const std::string kw = kind_word;
  if (kw == "rf") {
    kind = WaveformKind::rf;
  } else if (kw == "iq") {
    kind = WaveformKind::baseband_iq;
  } else {
    fail(ErrorCode::parse_error, "unknown waveform kind: " + kw);
  }

  std::vector<double> ci, cq;
  std::string line;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double a = 0.0;
    double b = 0.0;
    if (kind == WaveformKind::rf) {
      if (std::sscanf(line.c_str(), "%lg", &a) != 1)
        fail(ErrorCode::parse_error,
             "bad sample at line " + std::to_string(line_no));
      ci.push_back(a);
    } else {
      if (std::sscanf(line.c_str(), "%lg,%lg", &a, &b) != 2)
        fail(ErrorCode::parse_error,
             "bad sample at line " + std::to_string(line_no));
      ci.push_back(a);
      cq.push_back(b);
    }
  }
  return SampledWaveform(kind, rate, start, std::move(ci), std::move(cq));
}

void write_waveform_csv(const std::string& path, const SampledWaveform& w) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io_error, "cannot open for writing: " + path);
  out << waveform_csv(w);
  if (!out.flush()) fail(ErrorCode::io_error, "write failed: " + path);
}

SampledWaveform read_waveform_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_waveform_csv(buf.str());
  } catch (const Error& e) {
    fail(e.code(), e.message() + " (" + path + ")");
  }
}

}  // namespace rabiforge
