#pragma once

// Ermakov-Pinney dynamics of a driven harmonic trap.
//
// The scaling factor b(t) of a trap driven from omega0 obeys
//     b'' + omega(t)^2 b = omega0^2 / b^3,   b(0) = 1, b'(0) = 0.
// Instead of integrating this stiff-looking nonlinear equation directly we
// integrate the two fundamental solutions of the *linear* oscillator
//     x'' + omega(t)^2 x = 0,
//     G1(0) = 1, G1'(0) = 0   and   G2(0) = 0, G2'(0) = 1,
// and reconstruct  b = sqrt(G1^2 + omega0^2 G2^2)  (Pinney).  The Wronskian
// G1' G2 - G1 G2' = -1 is conserved exactly by the flow and serves as a
// built-in integration-error monitor.
//
// The degree of nonadiabaticity of a stroke is the factor
//     Q*(t) = b_ad^2 [ 1/(2 b^2) + omega(t)^2 b^2 / (2 omega0^2)
//                      + b'^2 / (2 omega0^2) ],   b_ad = sqrt(omega0/omega(t)),
// equal to 1 for quasistatic driving and >= 1 always.  An equivalent form in
// terms of the fundamental solutions,
//     Q*(t) = [ (G1'^2 + omega^2 G1^2) + omega0^2 (G2'^2 + omega^2 G2^2) ]
//             / (2 omega0 omega),
// coincides with the first one whenever the Wronskian is exact, so the two
// evaluations double as a cross-validation of the integration.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qhe/protocol.hpp"

namespace qhe::dynamics {

// State of the fundamental pair at one instant, with the reconstructed
// scaling factor.  omega is the drive frequency at time t (stored so dense
// output can use x'' = -omega^2 x without re-evaluating the protocol).
struct TrajectorySample {
  double t = 0.0;
  double omega = 0.0;
  double g1 = 1.0, dg1 = 0.0;
  double g2 = 0.0, dg2 = 1.0;
  double b = 1.0, db = 0.0;
};

// Thrown when the adaptive integrator cannot reach the requested accuracy.
struct IntegrationError : std::runtime_error {
  IntegrationError(const std::string& what, double t) : std::runtime_error(what), time(t) {}
  double time;
};

class ErmakovTrajectory {
 public:
  ErmakovTrajectory(double omega0, std::vector<TrajectorySample> samples);

  double omega0() const { return omega0_; }
  double duration() const { return samples_.back().t; }
  const std::vector<TrajectorySample>& samples() const { return samples_; }

  // State at arbitrary t in [0, duration].  Between stored steps each of
  // G1, G1', G2, G2' is interpolated by a cubic Hermite polynomial built
  // from its own stored derivative (G'' = -omega^2 G at the nodes), and
  // b, b' are reconstructed from the interpolated fundamental pair, so the
  // Pinney relation holds exactly at interpolated points as well.
  TrajectorySample at(double t) const;

 private:
  double omega0_;
  std::vector<TrajectorySample> samples_;   // strictly increasing t, front().t == 0
};

struct SolverOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  // Frequency the trap was prepared in before the stroke.  Defaults to the
  // protocol's omega_start; override it to evolve after a sudden switch
  // (e.g. free oscillation at omega2 of a state prepared at omega1).
  double omega0 = 0.0;                      // 0 = use protocol.omega_start
  // If > 0, force accepted steps to land exactly on multiples of this
  // spacing (samples there are genuine solver states, not interpolants).
  double forced_grid_dt = 0.0;
};

// Integrate the fundamental pair over the protocol's full duration with an
// embedded Dormand-Prince 4(5) scheme and record every accepted step.
// SuddenQuench protocols have no trajectory (duration 0) and are rejected;
// use q_factor_sudden for their closed form.
ErmakovTrajectory solve_ermakov(const FrequencyProtocol& protocol,
                                const SolverOptions& options = {});

enum class Provenance { AdiabaticUnity, SuddenClosedForm, Numerical };

struct NonadiabaticFactor {
  double value = 1.0;
  Provenance provenance = Provenance::AdiabaticUnity;
};

// Q*(t) from the scaling factor (adiabatic-scaling form).  omega_t must be
// the drive frequency at time t of the protocol that produced the trajectory.
NonadiabaticFactor q_factor_scale_invariant(const ErmakovTrajectory& trajectory,
                                            double omega_t, double t);

// Q*(t) evaluated from the fundamental pair directly (quadratic-invariant
// form).  Agrees with q_factor_scale_invariant up to integration error.
NonadiabaticFactor q_factor_husimi(const ErmakovTrajectory& trajectory,
                                   double omega_t, double t);

// Closed form for an instantaneous switch omega_i -> omega_f:
//     Q* = (omega_i^2 + omega_f^2) / (2 omega_i omega_f),
// symmetric under exchanging the two frequencies.
NonadiabaticFactor q_factor_sudden(double omega_i, double omega_f);

}  // namespace qhe::dynamics
