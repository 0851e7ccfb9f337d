#include "doctest.h"
#include "qhe/cycle.hpp"
#include "qhe/thermo.hpp"

#include <cmath>
#include <stdexcept>

#include "support/oracles.hpp"

using namespace qhe;
using cycle::DrivingMode;
using cycle::OttoCycleSpec;

namespace {

OttoCycleSpec make_spec(double x, double a, int n, double lambda, double beta_c,
                        const DrivingMode& driving) {
  OttoCycleSpec spec;
  spec.omega1 = 1.0;
  spec.omega2 = 1.0 / x;
  spec.beta_c = beta_c;
  spec.beta_h = a * beta_c;
  spec.medium = {n, lambda};
  spec.driving = driving;
  spec.stroke_times = cycle::default_stroke_times(driving);
  return spec;
}

OttoCycleSpec random_spec(testsupport::Rng& rng, int which_driving) {
  const double x = rng.uniform(0.12, 0.95);
  DrivingMode driving = DrivingMode::adiabatic();
  if (which_driving == 1) driving = DrivingMode::sudden();
  if (which_driving == 2)
    driving = DrivingMode::ramp(rng.uniform(0.3, 2.5), dynamics::RampShape::Smoothstep);
  return make_spec(x, rng.uniform(0.05, 0.95), rng.uniform_int(1, 8),
                   rng.uniform(0.0, 1.5),
                   std::exp(rng.uniform(std::log(1e-3), std::log(20.0))), driving);
}

}  // namespace

TEST_CASE("stroke times per driving mode") {
  const auto ad = cycle::default_stroke_times(DrivingMode::adiabatic(), 2.0, 3.0);
  CHECK(ad[0] == 3.0);
  CHECK(ad[1] == 2.0);
  CHECK(ad[2] == 3.0);
  CHECK(ad[3] == 2.0);
  const auto sq = cycle::default_stroke_times(DrivingMode::sudden());
  CHECK(sq[0] == 0.0);
  CHECK(sq[1] == 1.0);
  const auto rp = cycle::default_stroke_times(DrivingMode::ramp(0.7));
  CHECK(rp[0] == doctest::Approx(0.7));
}

TEST_CASE("spec validation refuses non-engine geometry") {
  CHECK_THROWS_AS(make_spec(1.5, 0.5, 1, 0.0, 1.0, DrivingMode::sudden()).validate(),
                  std::invalid_argument);  // omega2 < omega1
  auto bad_bath = make_spec(0.5, 0.5, 1, 0.0, 1.0, DrivingMode::sudden());
  bad_bath.beta_h = 2.0;  // hotter bath must have smaller beta
  CHECK_THROWS_AS(bad_bath.validate(), std::invalid_argument);
  auto ok = make_spec(0.5, 0.5, 1, 0.0, 1.0, DrivingMode::sudden());
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.x() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ok.a() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("frictionless strokes: exact frequency scaling and 1 - x efficiency") {
  for (double x : {0.3, 0.5, 0.8})
    for (double lambda : {0.0, 0.5, 1.0}) {
      const auto spec = make_spec(x, 0.2, 4, lambda, 0.7, DrivingMode::adiabatic());
      const auto ledger = cycle::stroke_ledger(spec);
      CHECK(ledger.q_ab.value == 1.0);
      CHECK(ledger.q_cd.value == 1.0);
      CHECK(ledger.energy_b ==
            doctest::Approx(ledger.energy_a / x).epsilon(1e-14));
      CHECK(ledger.energy_d ==
            doctest::Approx(ledger.energy_c * x).epsilon(1e-14));
      const auto perf = cycle::cycle_performance(spec);
      if (perf.engine_valid)
        CHECK(perf.efficiency == doctest::Approx(1.0 - x).epsilon(1e-12));
    }
}

TEST_CASE("frictionless work and efficiency do not depend on the coupling") {
  const auto base = make_spec(0.5, 0.25, 6, 0.0, 0.9, DrivingMode::adiabatic());
  const auto perf0 = cycle::cycle_performance(base);
  for (double lambda : {0.2, 0.5, 1.0, 1.7}) {
    const auto spec = make_spec(0.5, 0.25, 6, lambda, 0.9, DrivingMode::adiabatic());
    const auto perf = cycle::cycle_performance(spec);
    CHECK(perf.total_work_out ==
          doctest::Approx(perf0.total_work_out).epsilon(1e-12));
    CHECK(perf.efficiency == doctest::Approx(perf0.efficiency).epsilon(1e-12));
  }
}

TEST_CASE("instantaneous strokes carry the closed-form quench factor") {
  const double x = 0.6;
  const auto spec = make_spec(x, 0.3, 3, 0.4, 0.05, DrivingMode::sudden());
  const auto ledger = cycle::stroke_ledger(spec);
  const double q = (1 + x * x) / (2 * x);
  CHECK(ledger.q_ab.value == doctest::Approx(q).epsilon(1e-15));
  CHECK(ledger.q_cd.value == doctest::Approx(q).epsilon(1e-15));
  // net output in the compact quench form
  const double want = (1 - x * x) / (2 * x * x) *
                      (x * x * ledger.energy_c - ledger.energy_a);
  const auto perf = cycle::cycle_performance(spec);
  CHECK(perf.total_work_out == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("finite ramps interpolate between quench and frictionless limits") {
  const double x = 0.5, a = 0.2;
  const auto sudden = cycle::cycle_performance(
      make_spec(x, a, 2, 0.3, 0.4, DrivingMode::sudden()));
  const auto adiab = cycle::cycle_performance(
      make_spec(x, a, 2, 0.3, 0.4, DrivingMode::adiabatic()));
  const auto slow = cycle::cycle_performance(
      make_spec(x, a, 2, 0.3, 0.4, DrivingMode::ramp(25.0)));
  const auto fast = cycle::cycle_performance(
      make_spec(x, a, 2, 0.3, 0.4, DrivingMode::ramp(0.02)));
  CHECK(std::abs(slow.total_work_out - adiab.total_work_out) <=
        0.01 * std::abs(adiab.total_work_out));
  CHECK(std::abs(fast.total_work_out - sudden.total_work_out) <=
        0.01 * std::abs(sudden.total_work_out));
  // friction can only help the quench, not beat the frictionless limit
  CHECK(slow.total_work_out <= adiab.total_work_out + 1e-10);
  CHECK(fast.total_work_out <= adiab.total_work_out);
}

TEST_CASE("ledger closes and efficiency bounds are ordered on random cycles") {
  testsupport::Rng rng(31337);
  for (int i = 0; i < 200; ++i) {
    const auto spec = random_spec(rng, i % 3);
    const auto ledger = cycle::stroke_ledger(spec);
    const double scale = std::abs(ledger.w1) + std::abs(ledger.q2) +
                         std::abs(ledger.w3) + std::abs(ledger.q4);
    CHECK(std::abs(ledger.w1 + ledger.q2 + ledger.w3 + ledger.q4) <=
          1e-12 * std::max(1.0, scale));

    const auto perf = cycle::cycle_performance(spec);
    CHECK(perf.q2_positive == (ledger.q2 > 0.0));
    if (perf.engine_valid) {
      CHECK(std::isfinite(perf.efficiency));
      CHECK(perf.efficiency <= perf.eta_nad_bound + 1e-12);
      CHECK(perf.eta_nad_bound <= perf.eta_otto + 1e-12);
      CHECK(perf.eta_otto == doctest::Approx(1.0 - spec.x()).epsilon(1e-14));
      if (spec.driving.kind == cycle::DrivingKind::SuddenQuench)
        CHECK(perf.efficiency <= 0.5 * (1.0 - spec.x() * spec.x()) + 1e-12);
      CHECK(perf.power == doctest::Approx(perf.total_work_out /
                                          spec.total_time()).epsilon(1e-14));
    } else {
      CHECK((!perf.q2_positive || perf.total_work_out <= 0.0));
    }
  }
}

TEST_CASE("heat only flows in at the hot bath under the documented conditions") {
  // frictionless: intake is positive iff a < x
  CHECK(cycle::heat_positivity(0.5, 0.25, DrivingMode::adiabatic()).adiabatic_ok);
  CHECK_FALSE(
      cycle::heat_positivity(0.5, 0.75, DrivingMode::adiabatic()).adiabatic_ok);
  // quench necessary condition a/x <= 2x
  CHECK(cycle::heat_positivity(0.5, 0.4, DrivingMode::sudden()).sudden_necessary_ok);
  CHECK_FALSE(
      cycle::heat_positivity(0.4, 0.9, DrivingMode::sudden()).sudden_necessary_ok);
  CHECK_THROWS_AS(cycle::heat_positivity(1.2, 0.5, DrivingMode::sudden()),
                  std::domain_error);

  // the frictionless flag is exact: check against the ledger on both sides
  for (double a : {0.3, 0.7}) {
    const auto spec = make_spec(0.5, a, 3, 0.2, 1.0, DrivingMode::adiabatic());
    const auto ledger = cycle::stroke_ledger(spec);
    CHECK((ledger.q2 > 0.0) ==
          cycle::heat_positivity(0.5, a, DrivingMode::adiabatic()).adiabatic_ok);
  }
}

TEST_CASE("a cycle that absorbs no heat is not an engine") {
  // a == x with frictionless strokes: intake is exactly zero
  const auto spec = make_spec(0.5, 0.5, 1, 0.0, 1.0, DrivingMode::adiabatic());
  const auto ledger = cycle::stroke_ledger(spec);
  CHECK(std::abs(ledger.q2) <= 1e-12 * std::abs(ledger.energy_c));
  CHECK_THROWS_AS(cycle::efficiency(ledger, spec), cycle::NotAnEngineError);
  const auto perf = cycle::cycle_performance(spec);
  CHECK_FALSE(perf.engine_valid);
  CHECK(std::isnan(perf.efficiency));
}

TEST_CASE("coupling dependence of the output work is an exact linear shift") {
  // net output W(lambda) - W(0) = [(1-q_cd) omega1 + (1-q_ab) omega2] /2 * N(N-1) lambda
  testsupport::Rng rng(404);
  for (int i = 0; i < 20; ++i) {
    const double x = rng.uniform(0.3, 0.9);
    const double a = rng.uniform(0.1, 0.9);
    const int n = rng.uniform_int(2, 12);
    const double lambda = rng.uniform(0.1, 1.5);
    const double beta_c = std::exp(rng.uniform(std::log(0.01), std::log(2.0)));
    const auto driving = (i % 2) ? DrivingMode::sudden()
                                 : DrivingMode::ramp(rng.uniform(0.3, 2.0));
    const auto p0 = cycle::cycle_performance(make_spec(x, a, n, 0.0, beta_c, driving));
    const auto pl =
        cycle::cycle_performance(make_spec(x, a, n, lambda, beta_c, driving));
    const auto ledger = cycle::stroke_ledger(make_spec(x, a, n, 0.0, beta_c, driving));
    const double omega2 = 1.0 / x;
    const double predicted = 0.5 *
                             ((1.0 - ledger.q_cd.value) * 1.0 + (1.0 - ledger.q_ab.value) * omega2) *
                             n * (n - 1.0) * lambda;
    CHECK(pl.total_work_out - p0.total_work_out ==
          doctest::Approx(predicted).epsilon(1e-10).scale(
              std::abs(p0.total_work_out) + 1.0));
  }
}

TEST_CASE("more coupling never helps a quenched engine at fixed geometry") {
  const int n = 50;
  const double beta_c = 1.0 / n;  // sigma_c = 1
  double prev_w = 0.0, prev_eta = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const auto perf = cycle::cycle_performance(
        make_spec(0.6, 0.3, n, 0.1 * i, beta_c, DrivingMode::sudden()));
    REQUIRE(perf.engine_valid);
    if (i > 0) {
      CHECK(perf.total_work_out <= prev_w * (1 + 1e-12));
      CHECK(perf.efficiency <= prev_eta * (1 + 1e-12));
    }
    prev_w = perf.total_work_out;
    prev_eta = perf.efficiency;
  }
}
