#include "qhe/cycle.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace qhe::cycle {

const char* DrivingMode::name() const {
  switch (kind) {
    case DrivingKind::Adiabatic: return "adiabatic";
    case DrivingKind::SuddenQuench: return "sudden";
    case DrivingKind::Ramp: return "ramp";
  }
  return "?";
}

std::array<double, 4> default_stroke_times(const DrivingMode& driving,
                                           double isochore_time,
                                           double adiabatic_time) {
  double unitary = 0.0;
  switch (driving.kind) {
    case DrivingKind::SuddenQuench: unitary = 0.0; break;
    case DrivingKind::Ramp: unitary = driving.ramp_tau; break;
    case DrivingKind::Adiabatic: unitary = adiabatic_time; break;
  }
  return {unitary, isochore_time, unitary, isochore_time};
}

double OttoCycleSpec::total_time() const {
  return stroke_times[0] + stroke_times[1] + stroke_times[2] + stroke_times[3];
}

void OttoCycleSpec::validate() const {
  medium.validate();
  if (!(omega1 > 0.0)) throw std::invalid_argument("cycle: omega1 must be > 0");
  if (!(omega2 > omega1))
    throw std::invalid_argument("cycle: omega2 must exceed omega1 (x in (0,1))");
  if (!(beta_c > 0.0)) throw std::invalid_argument("cycle: beta_c must be > 0");
  if (!(beta_h > 0.0) || !(beta_h < beta_c))
    throw std::invalid_argument("cycle: need 0 < beta_h < beta_c (a in (0,1))");
  if (driving.kind == DrivingKind::Ramp && !(driving.ramp_tau > 0.0))
    throw std::invalid_argument("cycle: ramp driving needs ramp_tau > 0");
  for (double t : stroke_times)
    if (!(t >= 0.0)) throw std::invalid_argument("cycle: stroke times must be >= 0");
}

namespace {

// Q* at the end of each unitary stroke for the given driving.
std::pair<dynamics::NonadiabaticFactor, dynamics::NonadiabaticFactor>
stroke_q_factors(const OttoCycleSpec& spec) {
  using dynamics::NonadiabaticFactor;
  using dynamics::Provenance;
  switch (spec.driving.kind) {
    case DrivingKind::Adiabatic:
      return {NonadiabaticFactor{1.0, Provenance::AdiabaticUnity},
              NonadiabaticFactor{1.0, Provenance::AdiabaticUnity}};
    case DrivingKind::SuddenQuench:
      // Symmetric in the two frequencies, so both strokes share one value.
      return {dynamics::q_factor_sudden(spec.omega1, spec.omega2),
              dynamics::q_factor_sudden(spec.omega2, spec.omega1)};
    case DrivingKind::Ramp: {
      const double tau = spec.driving.ramp_tau;
      const auto up = dynamics::FrequencyProtocol::smooth_ramp(
          spec.omega1, spec.omega2, tau, spec.driving.ramp_shape);
      const auto down = dynamics::FrequencyProtocol::smooth_ramp(
          spec.omega2, spec.omega1, tau, spec.driving.ramp_shape);
      const auto traj_up = dynamics::solve_ermakov(up);
      const auto traj_down = dynamics::solve_ermakov(down);
      return {dynamics::q_factor_scale_invariant(traj_up, spec.omega2, tau),
              dynamics::q_factor_scale_invariant(traj_down, spec.omega1, tau)};
    }
  }
  throw std::logic_error("stroke_q_factors: unknown driving kind");
}

}  // namespace

StrokeLedger stroke_ledger(const OttoCycleSpec& spec) {
  spec.validate();
  StrokeLedger ledger;
  ledger.energy_a =
      thermo::mean_energy(spec.medium, {spec.beta_c, spec.omega1}).total;
  ledger.energy_c =
      thermo::mean_energy(spec.medium, {spec.beta_h, spec.omega2}).total;

  auto [q_ab, q_cd] = stroke_q_factors(spec);
  ledger.q_ab = q_ab;
  ledger.q_cd = q_cd;

  const double x = spec.x();
  ledger.energy_b = q_ab.value / x * ledger.energy_a;
  ledger.energy_d = q_cd.value * x * ledger.energy_c;

  ledger.w1 = ledger.energy_b - ledger.energy_a;
  ledger.q2 = ledger.energy_c - ledger.energy_b;
  ledger.w3 = ledger.energy_d - ledger.energy_c;
  ledger.q4 = ledger.energy_a - ledger.energy_d;
  return ledger;
}

double efficiency(const StrokeLedger& ledger, const OttoCycleSpec& spec) {
  if (!(ledger.q2 > 0.0))
    throw NotAnEngineError("efficiency: no heat intake on the hot isochore (Q2 <= 0)",
                           ledger.q2);
  const double x = spec.x();
  const double from_ledger = -(ledger.w1 + ledger.w3) / ledger.q2;
  const double closed_form =
      1.0 - x * (ledger.q_cd.value * ledger.energy_c - ledger.energy_a / x) / ledger.q2;
  // The two routes are algebraically identical; they may drift apart only by
  // rounding, amplified by the conditioning (energy scale / Q2).
  const double cond =
      std::max(1.0, (ledger.energy_a / x + ledger.energy_c) / ledger.q2);
  if (std::abs(from_ledger - closed_form) > 1e-12 * cond)
    throw std::logic_error("efficiency: ledger and closed-form routes disagree");
  return closed_form;
}

double power(double work_out, const OttoCycleSpec& spec) {
  const double total = spec.total_time();
  if (!(total > 0.0))
    throw std::domain_error("power: total cycle time must be > 0");
  return work_out / total;
}

CyclePerformance cycle_performance(const OttoCycleSpec& spec) {
  const StrokeLedger ledger = stroke_ledger(spec);
  CyclePerformance perf;
  perf.total_work_out = -(ledger.w1 + ledger.w3);
  perf.q2_positive = ledger.q2 > 0.0;
  perf.engine_valid = perf.q2_positive && perf.total_work_out > 0.0;
  perf.efficiency = perf.q2_positive ? efficiency(ledger, spec)
                                     : std::numeric_limits<double>::quiet_NaN();
  perf.power = power(perf.total_work_out, spec);
  perf.eta_otto = 1.0 - spec.x();
  perf.eta_nad_bound = 1.0 - ledger.q_cd.value * spec.x();
  return perf;
}

HeatFlags heat_positivity(double x, double a, const DrivingMode& driving) {
  if (!(x > 0.0) || !(x < 1.0)) throw std::domain_error("heat_positivity: x in (0,1)");
  if (!(a > 0.0) || !(a < 1.0)) throw std::domain_error("heat_positivity: a in (0,1)");
  HeatFlags flags;
  flags.adiabatic_ok = a <= x;
  flags.sudden_necessary_ok = a / x <= 2.0 * x;
  (void)driving;  // both flags are reported regardless of the actual driving
  return flags;
}

}  // namespace qhe::cycle
