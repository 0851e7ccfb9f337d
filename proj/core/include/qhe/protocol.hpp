#pragma once

// Time-dependent trap frequency protocols for the unitary strokes.
// Units: hbar = m = 1 throughout; frequencies in units of the reference
// trap frequency omega1, times in 1/omega1.

#include <stdexcept>
#include <string>

namespace qhe::dynamics {

enum class ProtocolKind { Constant, SuddenQuench, SmoothRamp };

// Monotone interpolation family for SmoothRamp.
// Smoothstep s(u) = 3u^2 - 2u^3 starts and ends with zero slope, which keeps
// the drive differentiable at the stroke endpoints; Linear is s(u) = u.
enum class RampShape { Smoothstep, Linear };

struct FrequencyProtocol {
  ProtocolKind kind = ProtocolKind::Constant;
  double omega_start = 1.0;
  double omega_end = 1.0;
  double duration = 0.0;          // SuddenQuench has duration 0 by definition
  RampShape shape = RampShape::Smoothstep;

  static FrequencyProtocol constant(double omega, double duration);
  static FrequencyProtocol sudden_quench(double omega_from, double omega_to);
  static FrequencyProtocol smooth_ramp(double omega_from, double omega_to,
                                       double duration,
                                       RampShape shape = RampShape::Smoothstep);
};

// omega(t) for t in [0, duration]. A sudden quench is already at omega_end
// for every admissible t (the switch is instantaneous at t = 0).
// Out-of-range t or non-positive frequencies throw std::domain_error.
double omega_at(const FrequencyProtocol& protocol, double t);

}  // namespace qhe::dynamics
