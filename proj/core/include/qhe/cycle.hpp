#pragma once

// Four-stroke Otto cycle on the trapped medium:
//   A -> B  unitary compression omega1 -> omega2 (work input),
//   B -> C  isochore at omega2 against the hot bath (beta_h),
//   C -> D  unitary expansion omega2 -> omega1 (work output),
//   D -> A  isochore at omega1 against the cold bath (beta_c).
// Compression ratio x = omega1/omega2 in (0,1); bath ratio a = beta_h/beta_c
// in (0,1).  Both unitary strokes carry a nonadiabatic factor Q* >= 1; the
// mean energies after them are
//   <H>_B = Q*_AB (omega2/omega1) <H>_A,   <H>_D = Q*_CD (omega1/omega2) <H>_C.
// Sign convention: W and Q are energy changes of the medium, so the net
// work *output* per cycle is  W_out = -(W1 + W3)  and a working engine has
// W_out > 0 with heat intake Q2 > 0.

#include <array>
#include <stdexcept>

#include "qhe/ermakov.hpp"
#include "qhe/thermo.hpp"

namespace qhe::cycle {

enum class DrivingKind { Adiabatic, SuddenQuench, Ramp };

struct DrivingMode {
  DrivingKind kind = DrivingKind::Adiabatic;
  double ramp_tau = 0.0;          // duration of each unitary stroke (Ramp only)
  dynamics::RampShape ramp_shape = dynamics::RampShape::Smoothstep;

  static DrivingMode adiabatic() { return {DrivingKind::Adiabatic, 0.0}; }
  static DrivingMode sudden() { return {DrivingKind::SuddenQuench, 0.0}; }
  static DrivingMode ramp(double tau,
                          dynamics::RampShape shape = dynamics::RampShape::Smoothstep) {
    return {DrivingKind::Ramp, tau, shape};
  }
  const char* name() const;
};

// Per-stroke wall-clock times (tau1..tau4) used for power.  The unitary
// times are fixed by the driving: 0 for a sudden quench, ramp_tau for a
// ramp, and a caller-chosen proxy for idealized adiabatic strokes.
std::array<double, 4> default_stroke_times(const DrivingMode& driving,
                                           double isochore_time = 1.0,
                                           double adiabatic_time = 1.0);

struct OttoCycleSpec {
  double omega1 = 1.0;
  double omega2 = 2.0;            // > omega1
  double beta_c = 1.0;            // cold bath, > beta_h
  double beta_h = 0.5;
  thermo::MediumSpec medium;
  DrivingMode driving;
  std::array<double, 4> stroke_times{1.0, 1.0, 1.0, 1.0};

  double x() const { return omega1 / omega2; }
  double a() const { return beta_h / beta_c; }
  double total_time() const;
  void validate() const;          // throws naming the violated constraint
};

struct StrokeLedger {
  double energy_a = 0.0, energy_b = 0.0, energy_c = 0.0, energy_d = 0.0;
  double w1 = 0.0;                // compression work on the medium
  double q2 = 0.0;                // heat intake on the hot isochore
  double w3 = 0.0;                // expansion work on the medium
  double q4 = 0.0;                // heat on the cold isochore (negative for an engine)
  dynamics::NonadiabaticFactor q_ab, q_cd;
};

// Populate the ledger.  Equilibrium endpoints: <H>_A at (beta_c, omega1),
// <H>_C at (beta_h, omega2); Ramp driving integrates the two time-mirrored
// ramps of duration ramp_tau to get the Q* factors.
StrokeLedger stroke_ledger(const OttoCycleSpec& spec);

struct NotAnEngineError : std::runtime_error {
  NotAnEngineError(const std::string& what, double q2_value)
      : std::runtime_error(what), q2(q2_value) {}
  double q2;
};

// eta = W_out / Q2, evaluated both from the ledger and from the closed-form
// rearrangement in (x, Q*, <H>_A, <H>_C); the two routes are cross-checked
// internally.  Throws NotAnEngineError when Q2 <= 0.
double efficiency(const StrokeLedger& ledger, const OttoCycleSpec& spec);

double power(double work_out, const OttoCycleSpec& spec);  // W_out / total_time

struct CyclePerformance {
  double total_work_out = 0.0;
  double efficiency = 0.0;        // NaN when no heat is taken in (q2 <= 0)
  double power = 0.0;
  double eta_otto = 0.0;          // adiabatic ceiling 1 - x
  double eta_nad_bound = 0.0;     // nonadiabatic ceiling 1 - Q*_CD x
  bool q2_positive = false;
  bool engine_valid = false;      // q2 > 0 and work output > 0
};

CyclePerformance cycle_performance(const OttoCycleSpec& spec);

struct HeatFlags {
  // a <= x: necessary and sufficient for Q2 > 0 under adiabatic driving.
  bool adiabatic_ok = false;
  // a/x <= 2x: necessary (small x) for Q2 > 0 under sudden driving; when it
  // fails the hot stroke certainly dumps heat.
  bool sudden_necessary_ok = false;
};

HeatFlags heat_positivity(double x, double a, const DrivingMode& driving);

}  // namespace qhe::cycle
