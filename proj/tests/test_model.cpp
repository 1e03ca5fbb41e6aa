#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "rabiforge/model.hpp"

using namespace rabiforge;

namespace {

const Complex kI(0.0, 1.0);
constexpr double kTwoPi = 2.0 * kPi;

double max_abs_diff(const Operator2& a, const Operator2& b) {
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(a.m[k] - b.m[k]));
  return worst;
}

}  // namespace

TEST_CASE("canonical_phase wraps into (-pi, pi]") {
  CHECK(canonical_phase(0.0) == 0.0);
  CHECK(canonical_phase(kPi) == kPi);
  CHECK(canonical_phase(-kPi) == kPi);  // -pi is excluded, maps to +pi
  CHECK(canonical_phase(kTwoPi) == 0.0);
  CHECK(canonical_phase(-kTwoPi) == 0.0);
  CHECK(canonical_phase(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(canonical_phase(kPi + 0.1) == doctest::Approx(-kPi + 0.1));
  CHECK(canonical_phase(-0.25) == -0.25);
  // No negative zero leaks out.
  CHECK(!std::signbit(canonical_phase(-kTwoPi)));
  CHECK_THROWS_AS(canonical_phase(std::nan("")), Error);
  CHECK_THROWS_AS(canonical_phase(INFINITY), Error);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (int k = 0; k < 1000; ++k) {
    const double raw = u(rng);
    const double p = canonical_phase(raw);
    CHECK(p > -kPi);
    CHECK(p <= kPi);
    // Same angle modulo 2 pi.
    CHECK(std::abs(std::remainder(p - raw, kTwoPi)) < 1e-12);
  }
}

TEST_CASE("DriveTone validates and canonicalizes") {
  const DriveTone t(2.0 * kAngularMHz, 1.0 * kAngularMHz, 7.0);
  CHECK(t.phase == doctest::Approx(7.0 - kTwoPi));
  CHECK_THROWS_AS(DriveTone(0.0, 1.0, 0.0), Error);
  CHECK_THROWS_AS(DriveTone(-1.0, 1.0, 0.0), Error);
  CHECK_THROWS_AS(DriveTone(1.0, -1e-9, 0.0), Error);
  CHECK_THROWS_AS(DriveTone(std::nan(""), 1.0, 0.0), Error);
  CHECK(DriveTone(1.0, 0.0, 0.0).amplitude == 0.0);  // zero amplitude is fine
}

TEST_CASE("LabDriveParams orders tones by descending carrier") {
  const DriveTone lo(90.0 * kAngularMHz, 1.0, 0.1);
  const DriveTone hi(110.0 * kAngularMHz, 2.0, 0.2);
  const LabDriveParams swapped(100.0 * kAngularMHz, lo, hi);
  CHECK(swapped.tone1.omega == hi.omega);
  CHECK(swapped.tone1.amplitude == hi.amplitude);
  CHECK(swapped.tone2.omega == lo.omega);

  const LabDriveParams kept(100.0 * kAngularMHz, hi, lo);
  CHECK(kept.tone1.omega == hi.omega);
  CHECK(kept.tone2.omega == lo.omega);

  CHECK_THROWS_AS(LabDriveParams(std::nan(""), hi, lo), Error);
}

TEST_CASE("EffectiveParams and GeneralizedRabiParams validate") {
  CHECK_NOTHROW(EffectiveParams(-1.0, 0.0, 0.0, 1.0, 0.0));  // any-sign splitting
  CHECK_THROWS_AS(EffectiveParams(0.0, -1.0, 0.0, 1.0, 1.0), Error);  // omega_d >= 0
  CHECK_THROWS_AS(EffectiveParams(0.0, 1.0, 0.0, -1.0, 1.0), Error);
  CHECK_THROWS_AS(EffectiveParams(0.0, 1.0, std::nan(""), 1.0, 1.0), Error);
  // phi0_star is stored as given (not canonicalized): the frame reduction
  // guarantees [0, pi) on its own outputs, but the struct allows any finite
  // phase so closed-form cross-checks can probe arbitrary offsets.
  CHECK(EffectiveParams(0.0, 1.0, 4.0, 1.0, 1.0).phi0_star == 4.0);

  CHECK_NOTHROW(GeneralizedRabiParams(1.0, 1.0, 1.0, 0.0));
  CHECK_THROWS_AS(GeneralizedRabiParams(1.0, -1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(GeneralizedRabiParams(1.0, 1.0, -1.0, 1.0), Error);
  CHECK_THROWS_AS(GeneralizedRabiParams(1.0, 1.0, 1.0, -0.5), Error);
}

TEST_CASE("lab Hamiltonian matches its defining expression") {
  const double wa = 100.0 * kAngularMHz;
  const LabDriveParams p(wa, DriveTone(105.0 * kAngularMHz, 3.0 * kAngularMHz, 0.4),
                         DriveTone(95.0 * kAngularMHz, 1.5 * kAngularMHz, -0.9));
  const TimeOperator h = lab_hamiltonian(p);
  for (double t : {0.0, 1.3e-9, 7.7e-8}) {
    const Operator2 m = h(t);
    CHECK(m.is_hermitian());
    CHECK(std::abs(m.ee() - Complex(wa / 2.0)) < 1e-6);
    CHECK(std::abs(m.gg() + Complex(wa / 2.0)) < 1e-6);
    // sigma_- coefficient: sum of (Omega_i/2) e^{+i(omega_i t + phi_i)}.
    const Complex want =
        0.5 * p.tone1.amplitude * std::exp(kI * (p.tone1.omega * t + p.tone1.phase)) +
        0.5 * p.tone2.amplitude * std::exp(kI * (p.tone2.omega * t + p.tone2.phase));
    CHECK(std::abs(m.ge() - want) < 1e-6 * std::abs(want));
    CHECK(std::abs(m.eg() - std::conj(want)) < 1e-6 * std::abs(want));
  }
}

TEST_CASE("effective Hamiltonian matches its defining expression") {
  const EffectiveParams e(-4.0 * kAngularMHz, 5.0 * kAngularMHz, 0.7,
                          20.0 * kAngularMHz, 8.0 * kAngularMHz);
  const TimeOperator h = effective_hamiltonian(e);
  for (double t : {0.0, 2.9e-8, 4.1e-7}) {
    const Operator2 m = h(t);
    CHECK(m.is_hermitian());
    CHECK(std::abs(m.ee() - Complex(e.omega_a_star / 2.0)) < 1e-6);
    const double theta = e.omega_d_star * t + e.phi0_star;
    const Complex want = 0.5 * e.omega1 * std::exp(kI * theta) +
                         0.5 * e.omega2 * std::exp(-kI * theta);
    CHECK(std::abs(m.ge() - want) < 1e-6 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("Hamiltonians are Hermitian at ten thousand random times") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const LabDriveParams lab(kTwoPi * 7.173e9,
                           DriveTone(kTwoPi * 7.178e9, 20.0 * kAngularMHz, 0.3),
                           DriveTone(kTwoPi * 7.168e9, 20.0 * kAngularMHz, -0.5));
  const EffectiveParams eff(0.0, 5.0 * kAngularMHz, 0.25, 20.0 * kAngularMHz,
                            20.0 * kAngularMHz);
  const TimeOperator hs[] = {lab_hamiltonian(lab), effective_hamiltonian(eff),
                             reduced_rabi_hamiltonian(eff),
                             generalized_hamiltonian(map_from_effective(
                                 EffectiveParams(0.0, 5.0 * kAngularMHz, 0.0,
                                                 20.0 * kAngularMHz, 20.0 * kAngularMHz)))};
  for (int k = 0; k < 10000; ++k) {
    const double t = 1e-6 * u(rng);
    for (const TimeOperator& h : hs) CHECK(h(t).is_hermitian(1e-12));
  }
}

TEST_CASE("reduced model coincides with the isotropic effective model") {
  const EffectiveParams e(3.0 * kAngularMHz, 5.0 * kAngularMHz, 1.1,
                          20.0 * kAngularMHz, 20.0 * kAngularMHz);
  const TimeOperator full = effective_hamiltonian(e);
  const TimeOperator reduced = reduced_rabi_hamiltonian(e);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1e-6);
  for (int k = 0; k < 300; ++k) {
    const double t = u(rng);
    const Operator2 a = full(t);
    const Operator2 b = reduced(t);
    CHECK(max_abs_diff(a, b) < 1e-12 * a.max_abs());
    // Single-axis form: the sigma_- coefficient is real.
    CHECK(std::abs(b.ge().imag()) < 1e-12 * b.max_abs());
  }

  const EffectiveParams skewed(0.0, 5.0 * kAngularMHz, 0.0, 20.0 * kAngularMHz,
                               19.0 * kAngularMHz);
  CHECK_THROWS_AS(reduced_rabi_hamiltonian(skewed), Error);
  // Tiny relative mismatch stays under the 1e-9 gate.
  CHECK_NOTHROW(reduced_rabi_hamiltonian(
      EffectiveParams(0.0, 1.0, 0.0, 1.0, 1.0 + 1e-12)));
}

TEST_CASE("map_from_effective reproduces the effective Hamiltonian") {
  struct Row {
    double omega1, omega2;
  } rows[] = {{20.0 * kAngularMHz, 20.0 * kAngularMHz},   // lambda = 1
              {20.0 * kAngularMHz, 1.0 * kAngularMHz},    // lambda = 0.05
              {20.0 * kAngularMHz, 0.0}};                 // lambda = 0
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1e-6);
  for (const Row& r : rows) {
    const EffectiveParams e(-2.0 * kAngularMHz, 5.0 * kAngularMHz, 0.0, r.omega1,
                            r.omega2);
    const GeneralizedRabiParams g = map_from_effective(e);
    CHECK(g.a_d == e.omega1 / 2.0);
    CHECK(g.lambda == doctest::Approx(r.omega2 / r.omega1).epsilon(1e-15));
    CHECK(g.omega_a == e.omega_a_star);
    CHECK(g.omega_d == e.omega_d_star);
    const TimeOperator he = effective_hamiltonian(e);
    const TimeOperator hg = generalized_hamiltonian(g);
    for (int k = 0; k < 100; ++k) {
      const double t = u(rng);
      const Operator2 a = he(t);
      CHECK(max_abs_diff(a, hg(t)) < 1e-12 * a.max_abs());
    }
  }

  // The generalized form has no phase slot.
  CHECK_THROWS_AS(
      map_from_effective(EffectiveParams(0.0, 1.0, 0.3, 1.0, 1.0)),
      Error);
  try {
    map_from_effective(EffectiveParams(0.0, 1.0, 0.3, 1.0, 1.0));
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::phase_not_representable);
  }
  // ...and needs a rotating term to normalize lambda against.
  try {
    map_from_effective(EffectiveParams(0.0, 1.0, 0.0, 0.0, 1.0));
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::zero_rotating_strength);
  }
}

TEST_CASE("regime classification thresholds") {
  const double wa = 10.0 * kAngularMHz;
  auto regime = [&](double omega1, double omega2, double splitting = 10.0 * kAngularMHz) {
    return classify_regime(EffectiveParams(splitting, 1.0, 0.0, omega1, omega2));
  };
  (void)wa;
  CHECK(regime(0.5 * kAngularMHz, 0.0) == DrivingRegime::weak);
  CHECK(regime(1.0 * kAngularMHz, 0.0) == DrivingRegime::weak);        // boundary: <=
  CHECK(regime(1.0000001 * kAngularMHz, 0.0) == DrivingRegime::ultrastrong);
  CHECK(regime(5.0 * kAngularMHz, 0.0) == DrivingRegime::ultrastrong);
  CHECK(regime(10.0 * kAngularMHz, 0.0) == DrivingRegime::ultrastrong);  // == ref
  CHECK(regime(10.1 * kAngularMHz, 0.0) == DrivingRegime::deep_strong);
  CHECK(regime(99.0 * kAngularMHz, 0.0) == DrivingRegime::deep_strong);
  CHECK(regime(100.0 * kAngularMHz, 0.0) == DrivingRegime::extreme);   // >= 10x
  CHECK(regime(1.0, 0.0, 0.0) == DrivingRegime::extreme);              // zero splitting
  // The dominant strength is the max over both terms.
  CHECK(regime(0.1 * kAngularMHz, 20.0 * kAngularMHz) == DrivingRegime::deep_strong);
  // Negative splitting classifies by magnitude.
  CHECK(regime(5.0 * kAngularMHz, 0.0, -10.0 * kAngularMHz) == DrivingRegime::ultrastrong);

  // Scaling all rates together never changes the class.
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int k = 0; k < 200; ++k) {
    const double wa_s = u(rng) * kAngularMHz;
    const double o1 = u(rng) * kAngularMHz;
    const double o2 = u(rng) * kAngularMHz;
    const double scale = u(rng);
    const DrivingRegime base =
        classify_regime(EffectiveParams(wa_s, 1.0, 0.0, o1, o2));
    const DrivingRegime scaled = classify_regime(
        EffectiveParams(scale * wa_s, scale, 0.0, scale * o1, scale * o2));
    CHECK(base == scaled);
  }

  CHECK(regime_name(DrivingRegime::weak) == std::string("weak"));
  CHECK(regime_name(DrivingRegime::ultrastrong) == std::string("ultrastrong"));
  CHECK(regime_name(DrivingRegime::deep_strong) == std::string("deep_strong"));
  CHECK(regime_name(DrivingRegime::extreme) == std::string("extreme"));
}

TEST_CASE("suggested_max_step tracks the fastest frequency") {
  // Lab: carrier dominates.
  const LabDriveParams lab(kTwoPi * 7.173e9,
                           DriveTone(kTwoPi * 7.178e9, 20.0 * kAngularMHz, 0.0),
                           DriveTone(kTwoPi * 7.168e9, 20.0 * kAngularMHz, 0.0));
  CHECK(suggested_max_step(lab) == doctest::Approx(1.0 / (50.0 * 7.178e9)));

  // Effective: here the coupling strength is the fastest rate.
  const EffectiveParams eff(0.0, 5.0 * kAngularMHz, 0.0, 20.0 * kAngularMHz,
                            20.0 * kAngularMHz);
  CHECK(suggested_max_step(eff) == doctest::Approx(1.0 / (50.0 * 20.0e6)));

  // Everything static: no cap.
  CHECK(std::isinf(suggested_max_step(EffectiveParams(0.0, 0.0, 0.0, 0.0, 0.0))));
}
