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

#include "rabiforge/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <utility>

#include "rabiforge/errors.hpp"

namespace rabiforge {

namespace {

using nlohmann::json;

// Config-file units: kAngularMHz and kMicrosecond (model.hpp) convert
// "2 pi MHz" and microsecond fields to SI.

void check_keys(const json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* a : allowed)
      if (it.key() == a) {
        known = true;
        break;
      }
    if (!known)
      fail(ErrorCode::parse_error,
           "unknown key \"" + it.key() + "\" in " + section);
  }
}

const json& require_object(const json& parent, const char* key,
                           const std::string& section) {
  auto it = parent.find(key);
  if (it == parent.end())
    fail(ErrorCode::missing_key,
         "missing \"" + std::string(key) + "\" in " + section);
  if (!it->is_object())
    fail(ErrorCode::parse_error,
         "\"" + std::string(key) + "\" in " + section + " must be an object");
  return *it;
}

double get_number(const json& obj, const char* key,
                  const std::string& section) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(ErrorCode::missing_key,
         "missing \"" + std::string(key) + "\" in " + section);
  if (!it->is_number())
    fail(ErrorCode::parse_error,
         "\"" + std::string(key) + "\" in " + section + " must be a number");
  const double v = it->get<double>();
  if (!std::isfinite(v))
    fail(ErrorCode::invalid_value,
         "\"" + std::string(key) + "\" in " + section + " must be finite");
  return v;
}

double get_number_or(const json& obj, const char* key, double fallback,
                     const std::string& section) {
  return obj.contains(key) ? get_number(obj, key, section) : fallback;
}

long long get_integer(const json& obj, const char* key,
                      const std::string& section) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(ErrorCode::missing_key,
         "missing \"" + std::string(key) + "\" in " + section);
  if (!it->is_number_integer())
    fail(ErrorCode::parse_error,
         "\"" + std::string(key) + "\" in " + section + " must be an integer");
  return it->get<long long>();
}

long long get_integer_or(const json& obj, const char* key, long long fallback,
                         const std::string& section) {
  return obj.contains(key) ? get_integer(obj, key, section) : fallback;
}

std::string get_string(const json& obj, const char* key,
                       const std::string& section) {
  auto it = obj.find(key);
  if (it == obj.end())
    fail(ErrorCode::missing_key,
         "missing \"" + std::string(key) + "\" in " + section);
  if (!it->is_string())
    fail(ErrorCode::parse_error,
         "\"" + std::string(key) + "\" in " + section + " must be a string");
  return it->get<std::string>();
}

bool get_bool_or(const json& obj, const char* key, bool fallback,
                 const std::string& section) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_boolean())
    fail(ErrorCode::parse_error,
         "\"" + std::string(key) + "\" in " + section + " must be a boolean");
  return it->get<bool>();
}

TimeGrid parse_grid(const json& g, const std::string& section) {
  check_keys(g, section, {"start_us", "end_us", "samples"});
  const double start = get_number_or(g, "start_us", 0.0, section);
  const double end = get_number(g, "end_us", section);
  const long long samples = get_integer(g, "samples", section);
  if (samples < 2)
    fail(ErrorCode::invalid_value,
         "\"samples\" in " + section + " must be at least 2");
  return TimeGrid(start * kMicrosecond, end * kMicrosecond,
                  static_cast<std::size_t>(samples));
}

DriveTone parse_tone(const json& t, double omega_a,
                     const std::string& section) {
  check_keys(t, section, {"frequency", "detuning", "amplitude", "phase"});
  const bool has_f = t.contains("frequency");
  const bool has_d = t.contains("detuning");
  if (has_f == has_d)
    fail(has_f ? ErrorCode::parse_error : ErrorCode::missing_key,
         section + " needs exactly one of \"frequency\" or \"detuning\"");
  const double omega =
      has_f ? get_number(t, "frequency", section) * kAngularMHz
            : omega_a - get_number(t, "detuning", section) * kAngularMHz;
  const double amp = get_number(t, "amplitude", section) * kAngularMHz;
  const double phase = get_number_or(t, "phase", 0.0, section);
  return DriveTone(omega, amp, phase);
}

LabDriveParams parse_lab_drive(const json& d, double omega_a,
                               const std::string& section) {
  check_keys(d, section, {"tone1", "tone2"});
  DriveTone t1 = parse_tone(require_object(d, "tone1", section), omega_a,
                            section + ".tone1");
  DriveTone t2 = parse_tone(require_object(d, "tone2", section), omega_a,
                            section + ".tone2");
  return LabDriveParams(omega_a, t1, t2);
}

EffectiveParams parse_effective(const json& e, const std::string& section) {
  check_keys(e, section,
             {"detuning", "splitting", "phase", "amplitude1", "amplitude2"});
  return EffectiveParams(get_number(e, "detuning", section) * kAngularMHz,
                         get_number(e, "splitting", section) * kAngularMHz,
                         get_number_or(e, "phase", 0.0, section),
                         get_number(e, "amplitude1", section) * kAngularMHz,
                         get_number(e, "amplitude2", section) * kAngularMHz);
}

std::variant<LabDriveParams, EffectiveParams> parse_drive(
    const json& d, double omega_a, const std::string& section) {
  check_keys(d, section, {"lab", "effective"});
  const bool has_lab = d.contains("lab");
  const bool has_eff = d.contains("effective");
  if (has_lab && has_eff)
    fail(ErrorCode::parse_error,
         section + " must hold either \"lab\" or \"effective\", not both");
  if (!has_lab && !has_eff)
    fail(ErrorCode::missing_key,
         section + " needs a \"lab\" block (tone1/tone2) or an \"effective\""
         " block (detuning/splitting/phase/amplitude1/amplitude2)");
  if (has_lab)
    return parse_lab_drive(require_object(d, "lab", section), omega_a,
                           section + ".lab");
  return parse_effective(require_object(d, "effective", section),
                         section + ".effective");
}

PropagationFrame parse_frame_word(const std::string& word,
                                  const std::string& section) {
  if (word == "lab") return PropagationFrame::lab;
  if (word == "effective") return PropagationFrame::effective;
  fail(ErrorCode::parse_error,
       "\"frame\" in " + section + " must be \"lab\" or \"effective\"");
}

EvolveConfig parse_evolve(const json& j, double omega_a) {
  const std::string section = "evolve";
  check_keys(j, section, {"drive", "grid", "frame"});
  auto drive = parse_drive(require_object(j, "drive", section), omega_a,
                           section + ".drive");
  TimeGrid grid = parse_grid(require_object(j, "grid", section),
                             section + ".grid");
  PropagationFrame frame = PropagationFrame::effective;
  if (j.contains("frame"))
    frame = parse_frame_word(get_string(j, "frame", section), section);
  if (frame == PropagationFrame::lab &&
      std::holds_alternative<EffectiveParams>(drive))
    fail(ErrorCode::parse_error,
         "lab-frame propagation requires a lab drive");
  return EvolveConfig{std::move(drive), grid, frame};
}

TrajectoryConfig parse_trajectory(const json& j) {
  const std::string section = "trajectory";
  check_keys(j, section, {"effective", "grid"});
  EffectiveParams params = parse_effective(
      require_object(j, "effective", section), section + ".effective");
  TimeGrid grid = parse_grid(require_object(j, "grid", section),
                             section + ".grid");
  return TrajectoryConfig{params, grid};
}

WaveformConfig parse_waveform(const json& j, double omega_a) {
  const std::string section = "waveform";
  check_keys(j, section, {"drive", "sample_rate", "duration_us", "stage"});
  auto drive = parse_drive(require_object(j, "drive", section), omega_a,
                           section + ".drive");
  if (!std::holds_alternative<LabDriveParams>(drive))
    fail(ErrorCode::parse_error, "waveform synthesis needs a lab drive");
  const double rate = get_number(j, "sample_rate", section) * 1.0e6;  // MHz
  const double duration = get_number(j, "duration_us", section) * kMicrosecond;
  WaveformStage stage = WaveformStage::rf;
  if (j.contains("stage")) {
    const std::string word = get_string(j, "stage", section);
    if (word == "iq") {
      stage = WaveformStage::iq;
    } else if (word == "rf") {
      stage = WaveformStage::rf;
    } else {
      fail(ErrorCode::parse_error,
           "\"stage\" in waveform must be \"iq\" or \"rf\"");
    }
  }
  return WaveformConfig{std::get<LabDriveParams>(drive), rate, duration,
                        stage};
}

SweepPath parse_path_word(const std::string& word) {
  if (word == "tone2_omega") return SweepPath::tone2_omega;
  if (word == "tone2_amplitude") return SweepPath::tone2_amplitude;
  if (word == "phase_difference") return SweepPath::phase_difference;
  fail(ErrorCode::parse_error,
       "\"path\" in sweep must be tone2_omega, tone2_amplitude, or"
       " phase_difference");
}

SweepObservable parse_observable_word(const std::string& word) {
  if (word == "pe") return SweepObservable::pe;
  if (word == "sigma_x") return SweepObservable::sx;
  if (word == "sigma_y") return SweepObservable::sy;
  if (word == "sigma_z") return SweepObservable::sz;
  fail(ErrorCode::parse_error,
       "\"observable\" in sweep must be pe, sigma_x, sigma_y, or sigma_z");
}

std::vector<double> parse_sweep_values(const json& j, SweepPath path) {
  const std::string section = "sweep.values";
  // Phase sweeps are plain radians; the frequency-like paths use 2 pi MHz.
  const double scale =
      path == SweepPath::phase_difference ? 1.0 : kAngularMHz;

  auto it = j.find("values");
  if (it == j.end())
    fail(ErrorCode::missing_key, "missing \"values\" in sweep");

  std::vector<double> out;
  if (it->is_array()) {
    for (const auto& v : *it) {
      if (!v.is_number())
        fail(ErrorCode::parse_error, section + " must hold numbers");
      out.push_back(v.get<double>() * scale);
    }
  } else if (it->is_object()) {
    check_keys(*it, section, {"start", "stop", "count"});
    const double start = get_number(*it, "start", section) * scale;
    const double stop = get_number(*it, "stop", section) * scale;
    const long long count = get_integer(*it, "count", section);
    if (count < 1)
      fail(ErrorCode::invalid_value,
           "\"count\" in " + section + " must be at least 1");
    for (long long i = 0; i < count; ++i) {
      const double frac =
          count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1)
                    : 0.0;
      out.push_back(start + (stop - start) * frac);
    }
    if (count > 1) out.back() = stop;
  } else {
    fail(ErrorCode::parse_error,
         section + " must be an array or a start/stop/count object");
  }
  return out;
}

SweepSpec parse_sweep(const json& j, double omega_a) {
  const std::string section = "sweep";
  if (j.contains("setting")) {
    check_keys(j, section, {"setting"});
    const std::string word = get_string(j, "setting", section);
    if (word == "a") return preset_setting(Setting::a, omega_a);
    if (word == "b") return preset_setting(Setting::b, omega_a);
    if (word == "c") return preset_setting(Setting::c, omega_a);
    fail(ErrorCode::parse_error,
         "\"setting\" in sweep must be \"a\", \"b\", or \"c\"");
  }

  check_keys(j, section,
             {"drive", "path", "values", "grid", "frame", "observable",
              "threads"});
  auto drive = parse_drive(require_object(j, "drive", section), omega_a,
                           section + ".drive");
  if (!std::holds_alternative<LabDriveParams>(drive))
    fail(ErrorCode::parse_error, "sweep base drive must be a lab drive");
  SweepPath path = parse_path_word(get_string(j, "path", section));
  std::vector<double> values = parse_sweep_values(j, path);
  TimeGrid grid = parse_grid(require_object(j, "grid", section),
                             section + ".grid");
  PropagationFrame frame = PropagationFrame::effective;
  if (j.contains("frame"))
    frame = parse_frame_word(get_string(j, "frame", section), section);
  SweepObservable obs = SweepObservable::pe;
  if (j.contains("observable"))
    obs = parse_observable_word(get_string(j, "observable", section));
  const long long threads = get_integer_or(j, "threads", 0, section);
  if (threads < 0)
    fail(ErrorCode::invalid_value, "\"threads\" in sweep must be >= 0");

  return SweepSpec{std::get<LabDriveParams>(drive),
                   path,
                   std::move(values),
                   grid,
                   frame,
                   std::nullopt,
                   obs,
                   {},
                   static_cast<unsigned>(threads)};
}

VerifyConfig parse_verify(const json& j) {
  const std::string section = "verify";
  check_keys(j, section, {"subject", "trials", "seed"});
  VerifyConfig out;
  if (j.contains("subject")) {
    out.subject = get_string(j, "subject", section);
    if (out.subject != "frames" && out.subject != "oracles" &&
        out.subject != "waveform")
      fail(ErrorCode::parse_error,
           "\"subject\" in verify must be frames, oracles, or waveform");
  }
  const long long trials = get_integer_or(j, "trials", out.trials, section);
  if (trials < 1)
    fail(ErrorCode::invalid_value, "\"trials\" in verify must be >= 1");
  out.trials = static_cast<int>(trials);
  const long long seed =
      get_integer_or(j, "seed", static_cast<long long>(out.seed), section);
  if (seed < 0)
    fail(ErrorCode::invalid_value, "\"seed\" in verify must be >= 0");
  out.seed = static_cast<std::uint64_t>(seed);
  return out;
}

RunMode parse_mode_word(const std::string& word) {
  if (word == "evolve") return RunMode::evolve;
  if (word == "sweep") return RunMode::sweep;
  if (word == "trajectory") return RunMode::trajectory;
  if (word == "waveform") return RunMode::waveform;
  if (word == "verify") return RunMode::verify;
  fail(ErrorCode::parse_error,
       "\"mode\" must be evolve, sweep, trajectory, waveform, or verify");
}

const char* mode_word(RunMode mode) {
  switch (mode) {
    case RunMode::evolve: return "evolve";
    case RunMode::sweep: return "sweep";
    case RunMode::trajectory: return "trajectory";
    case RunMode::waveform: return "waveform";
    case RunMode::verify: return "verify";
  }
  return "unknown";
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse_error, std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object())
    fail(ErrorCode::parse_error, "config root must be a JSON object");

  check_keys(root, "config",
             {"mode", "qubit", "decoherence", "integrator", "evolve", "sweep",
              "trajectory", "waveform", "verify"});

  const RunMode mode = parse_mode_word(get_string(root, "mode", "config"));

  // A stray block for some other mode is almost certainly a mistake.
  for (const char* name : {"evolve", "sweep", "trajectory", "waveform",
                           "verify"}) {
    if (root.contains(name) && name != std::string(mode_word(mode)))
      fail(ErrorCode::parse_error,
           "block \"" + std::string(name) + "\" does not match mode \"" +
               mode_word(mode) + "\"");
  }

  double qubit_frequency = 7173.0;  // 2 pi MHz
  double t1_us = 10.0;
  double t2_us = 10.0;
  if (root.contains("qubit")) {
    const json& q = require_object(root, "qubit", "config");
    check_keys(q, "qubit", {"frequency", "t1_us", "t2_us"});
    qubit_frequency = get_number_or(q, "frequency", qubit_frequency, "qubit");
    t1_us = get_number_or(q, "t1_us", t1_us, "qubit");
    t2_us = get_number_or(q, "t2_us", t2_us, "qubit");
  }
  const double omega_a = qubit_frequency * kAngularMHz;

  RunConfig cfg{
      mode, omega_a, std::nullopt, IntegratorConfig{},
      std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt};

  if (get_bool_or(root, "decoherence", true, "config"))
    cfg.decoherence = DecoherenceParams(t1_us * kMicrosecond, t2_us * kMicrosecond);

  if (root.contains("integrator")) {
    const json& integ = require_object(root, "integrator", "config");
    check_keys(integ, "integrator",
               {"rel_tol", "abs_tol", "max_step_us", "renormalize"});
    cfg.integrator.rel_tol =
        get_number_or(integ, "rel_tol", cfg.integrator.rel_tol, "integrator");
    cfg.integrator.abs_tol =
        get_number_or(integ, "abs_tol", cfg.integrator.abs_tol, "integrator");
    cfg.integrator.max_step =
        get_number_or(integ, "max_step_us",
                      cfg.integrator.max_step / kMicrosecond, "integrator") *
        kMicrosecond;
    cfg.integrator.renormalize =
        get_bool_or(integ, "renormalize", cfg.integrator.renormalize,
                    "integrator");
  }

  switch (mode) {
    case RunMode::evolve:
      cfg.evolve = parse_evolve(require_object(root, "evolve", "config"),
                                omega_a);
      break;
    case RunMode::sweep: {
      SweepSpec spec = parse_sweep(require_object(root, "sweep", "config"),
                                   omega_a);
      spec.decoherence = cfg.decoherence;
      spec.integrator = cfg.integrator;
      cfg.sweep = std::move(spec);
      break;
    }
    case RunMode::trajectory:
      cfg.trajectory =
          parse_trajectory(require_object(root, "trajectory", "config"));
      break;
    case RunMode::waveform:
      cfg.waveform = parse_waveform(require_object(root, "waveform", "config"),
                                    omega_a);
      break;
    case RunMode::verify:
      cfg.verify = root.contains("verify")
                       ? parse_verify(require_object(root, "verify", "config"))
                       : VerifyConfig{};
      break;
  }
  return cfg;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io_error, "cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const Error& e) {
    fail(e.code(), e.message() + " (" + path + ")");
  }
}

}  // namespace rabiforge
