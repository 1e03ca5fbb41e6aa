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

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <variant>

#include "rabiforge/config.hpp"
#include "rabiforge/emit.hpp"
#include "rabiforge/errors.hpp"
#include "rabiforge/experiments.hpp"
#include "rabiforge/frames.hpp"
#include "rabiforge/iqsynth.hpp"
#include "rabiforge/model.hpp"
#include "rabiforge/propagator.hpp"
#include "rabiforge/verify.hpp"

namespace {

using namespace rabiforge;

constexpr double kHalfPi = 0.5 * kPi;

struct CliOptions {
  std::string mode;
  std::string config_path;
  std::string output = "-";
  std::string format = "csv";
  std::string setting;
  std::string figure;
  std::string frame;
  std::string subject;
  bool no_decoherence = false;
  bool full_carrier = false;
  std::uint64_t seed = 0;
  int trials = 0;
  bool seed_given = false;
  bool trials_given = false;
};

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

// The four stock trajectory views: weak driving (fast splitting, 50 ns
// window, no decoherence) and deep-strong driving (slow splitting, 1 us
// window) at drive phases 0 and pi/2.
RunConfig figure_config(const std::string& name) {
  const bool weak = name == "3a" || name == "3b";
  const double phase = (name == "3b" || name == "3d") ? kHalfPi : 0.0;
  const double scale = (weak ? 2000.0 : 5.0) * kAngularMHz;
  const EffectiveParams params(scale, scale, phase, 20.0 * kAngularMHz,
                               20.0 * kAngularMHz);
  const TimeGrid grid(0.0, (weak ? 0.05 : 1.0) * kMicrosecond, 501);

  RunConfig cfg{RunMode::trajectory,
                7173.0 * kAngularMHz,
                weak ? std::optional<DecoherenceParams>{}
                     : std::optional<DecoherenceParams>(
                           DecoherenceParams(10.0 * kMicrosecond,
                                             10.0 * kMicrosecond)),
                IntegratorConfig{},
                std::nullopt,
                std::nullopt,
                TrajectoryConfig{params, grid},
                std::nullopt,
                std::nullopt};
  return cfg;
}

RunConfig setting_config(const std::string& name, bool full_carrier) {
  Setting s = name == "a" ? Setting::a
                          : name == "b" ? Setting::b : Setting::c;
  SweepSpec spec =
      preset_setting(s, full_carrier ? kFullCarrier : kReducedCarrier);
  return RunConfig{RunMode::sweep,
                   full_carrier ? kFullCarrier : kReducedCarrier,
                   spec.decoherence,
                   IntegratorConfig{},
                   std::nullopt,
                   std::move(spec),
                   std::nullopt,
                   std::nullopt,
                   std::nullopt};
}

RunConfig build_config(const CliOptions& opt) {
  if (!opt.config_path.empty()) return load_config_file(opt.config_path);
  if (!opt.setting.empty()) return setting_config(opt.setting,
                                                  opt.full_carrier);
  if (!opt.figure.empty()) return figure_config(opt.figure);

  if (opt.mode == "verify" || !opt.subject.empty()) {
    RunConfig cfg{RunMode::verify, 7173.0 * kAngularMHz, std::nullopt,
                  IntegratorConfig{}, std::nullopt, std::nullopt,
                  std::nullopt, std::nullopt, VerifyConfig{}};
    return cfg;
  }
  fail(ErrorCode::parse_error,
       "nothing to run: pass --config, --setting, --figure, or the verify"
       " mode");
}

void apply_overrides(RunConfig& cfg, const CliOptions& opt) {
  if (opt.no_decoherence) {
    cfg.decoherence.reset();
    if (cfg.sweep) cfg.sweep->decoherence.reset();
  }
  if (!opt.frame.empty()) {
    const PropagationFrame f = opt.frame == "lab" ? PropagationFrame::lab
                                                  : PropagationFrame::effective;
    if (cfg.evolve) {
      if (f == PropagationFrame::lab &&
          std::holds_alternative<EffectiveParams>(cfg.evolve->drive))
        fail(ErrorCode::parse_error,
             "lab-frame propagation requires a lab drive");
      cfg.evolve->frame = f;
    }
    if (cfg.sweep) cfg.sweep->frame = f;
  }
  if (cfg.verify) {
    if (!opt.subject.empty()) cfg.verify->subject = opt.subject;
    if (opt.seed_given) cfg.verify->seed = opt.seed;
    if (opt.trials_given) cfg.verify->trials = opt.trials;
  }
  if (!opt.mode.empty() && opt.mode != mode_word(cfg.mode))
    fail(ErrorCode::parse_error,
         "mode \"" + opt.mode + "\" does not match the configured mode \"" +
             mode_word(cfg.mode) + "\"");
}

void emit_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  write_text_file(path, content);
}

int run_evolve(const RunConfig& cfg, const CliOptions& opt) {
  const EvolveConfig& e = *cfg.evolve;

  TimeOperator h;
  double auto_step = 0.0;
  if (const auto* lab = std::get_if<LabDriveParams>(&e.drive)) {
    if (e.frame == PropagationFrame::lab) {
      h = lab_hamiltonian(*lab);
      auto_step = suggested_max_step(*lab);
    } else {
      auto [eff, frame] = effective_params(*lab);
      (void)frame;
      h = effective_hamiltonian(eff);
      auto_step = suggested_max_step(eff);
    }
  } else {
    const auto& eff = std::get<EffectiveParams>(e.drive);
    h = effective_hamiltonian(eff);
    auto_step = suggested_max_step(eff);
  }

  IntegratorConfig icfg = cfg.integrator;
  if (icfg.max_step <= 0.0) icfg.max_step = auto_step;

  const EvolutionResult res =
      cfg.decoherence
          ? propagate_lindblad(h, DensityMatrix::from_pure(PureState::ground()),
                               *cfg.decoherence, e.grid, icfg)
          : propagate_unitary(h, PureState::ground(), e.grid, icfg);

  if (opt.format == "json") {
    emit_output(opt.output, to_json(res));
  } else if (opt.format == "svg") {
    emit_output(opt.output, to_svg_lineplot(res));
  } else {
    emit_output(opt.output, to_csv(res));
  }
  return 0;
}

int run_sweep_mode(const RunConfig& cfg, const CliOptions& opt) {
  const SweepResult res = run_sweep(*cfg.sweep);
  if (opt.format == "json") {
    emit_output(opt.output, to_json(res));
  } else if (opt.format == "svg") {
    emit_output(opt.output, to_svg_heatmap(res));
  } else {
    emit_output(opt.output, to_csv(res));
  }
  return 0;
}

int run_trajectory(const RunConfig& cfg, const CliOptions& opt) {
  const TrajectoryConfig& t = *cfg.trajectory;
  const TrajectoryResult res =
      bloch_trajectory(t.params, t.params.phi0_star, t.grid, cfg.decoherence,
                       cfg.integrator);
  if (opt.format == "json") {
    emit_output(opt.output, to_json(res));
  } else if (opt.format == "svg") {
    emit_output(opt.output, to_svg_trajectory(res));
  } else {
    emit_output(opt.output, to_csv(res));
  }
  return 0;
}

int run_waveform(const RunConfig& cfg, const CliOptions& opt) {
  const WaveformConfig& wc = *cfg.waveform;

  SampledWaveform wave = synthesize_iq(wc.params, wc.sample_rate, wc.duration);
  std::vector<ToneEstimate> tones;
  if (wc.stage == WaveformStage::rf) {
    wave = upconvert(wave, lo_frequency(wc.params));
    const std::size_t expected =
        (wc.params.tone1.omega == wc.params.tone2.omega) ? 1 : 2;
    try {
      tones = extract_tones(wave, expected);
      for (const auto& tone : tones)
        std::fprintf(stderr,
                     "tone: %.9g MHz  amplitude %.9g (2 pi MHz)  phase %.6g"
                     " rad\n",
                     tone.frequency / 1.0e6, tone.amplitude / kAngularMHz,
                     tone.phase);
    } catch (const Error& e) {
      std::fprintf(stderr, "tone readback skipped: %s\n", e.what());
    }
  }

  if (opt.format == "svg")
    fail(ErrorCode::parse_error, "waveform mode renders csv or json, not svg");
  if (opt.format == "json") {
    nlohmann::ordered_json j;
    j["kind"] = "waveform";
    j["stage"] = wc.stage == WaveformStage::rf ? "rf" : "iq";
    j["sample_rate_hz"] = wave.sample_rate;
    j["start_time_s"] = wave.start_time;
    j["mean_power"] = mean_power(wave);
    if (wc.stage == WaveformStage::rf) {
      j["s"] = wave.i;
      nlohmann::ordered_json jt = nlohmann::ordered_json::array();
      for (const auto& tone : tones)
        jt.push_back(nlohmann::ordered_json{{"frequency_hz", tone.frequency},
                                            {"amplitude_rad_per_s",
                                             tone.amplitude},
                                            {"phase_rad", tone.phase}});
      j["tones"] = jt;
    } else {
      j["i"] = wave.i;
      j["q"] = wave.q;
    }
    emit_output(opt.output, j.dump(2) + "\n");
  } else {
    emit_output(opt.output, waveform_csv(wave));
  }
  return 0;
}

int run_verify_mode(const RunConfig& cfg, const CliOptions& opt) {
  const VerifyConfig& v = *cfg.verify;
  VerifyReport report;
  if (v.subject.empty()) {
    report = run_verify_all(v.seed, v.trials);
  } else {
    const VerifySubject subject =
        v.subject == "frames"
            ? VerifySubject::frames
            : v.subject == "oracles" ? VerifySubject::oracles
                                     : VerifySubject::waveform;
    report = run_verify(subject, v.seed, v.trials);
  }
  emit_output(opt.output, report.text);
  return report.ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CliOptions opt;

  CLI::App app{
      "rabi-forge: a two-level system under bichromatic transversal driving"};
  app.add_option("mode", opt.mode,
                 "run mode: evolve, sweep, trajectory, waveform, or verify");
  app.add_option("-c,--config", opt.config_path, "JSON run description");
  app.add_option("-o,--output", opt.output, "output path ('-' for stdout)");
  app.add_option("-f,--format", opt.format, "output format")
      ->check(CLI::IsMember({"csv", "json", "svg"}));
  app.add_option("--setting", opt.setting,
                 "stock sweep: a (tone frequency), b (tone amplitude),"
                 " c (phase difference)")
      ->check(CLI::IsMember({"a", "b", "c"}));
  app.add_option("--figure", opt.figure, "stock trajectory view")
      ->check(CLI::IsMember({"3a", "3b", "3c", "3d"}));
  app.add_flag("--no-decoherence", opt.no_decoherence,
               "propagate without relaxation or dephasing");
  app.add_option("--frame", opt.frame, "propagation frame override")
      ->check(CLI::IsMember({"lab", "effective"}));
  app.add_flag("--full-carrier", opt.full_carrier,
               "run stock sweeps at the full microwave carrier");
  app.add_option("--seed", opt.seed, "verify: RNG seed");
  app.add_option("--trials", opt.trials, "verify: trials per check");
  app.add_option("--subject", opt.subject, "verify: restrict to one subject")
      ->check(CLI::IsMember({"frames", "oracles", "waveform"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  opt.seed_given = app.count("--seed") > 0;
  opt.trials_given = app.count("--trials") > 0;

  try {
    RunConfig cfg = build_config(opt);
    apply_overrides(cfg, opt);
    switch (cfg.mode) {
      case RunMode::evolve: return run_evolve(cfg, opt);
      case RunMode::sweep: return run_sweep_mode(cfg, opt);
      case RunMode::trajectory: return run_trajectory(cfg, opt);
      case RunMode::waveform: return run_waveform(cfg, opt);
      case RunMode::verify: return run_verify_mode(cfg, opt);
    }
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
