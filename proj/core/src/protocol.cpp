#include "qhe/protocol.hpp"

namespace qhe::dynamics {

namespace {

void require_positive_frequency(double omega, const char* which) {
  if (!(omega > 0.0))
    throw std::domain_error(std::string(which) + " frequency must be > 0, got " +
                            std::to_string(omega));
}

}  // namespace

FrequencyProtocol FrequencyProtocol::constant(double omega, double duration) {
  require_positive_frequency(omega, "constant");
  if (!(duration >= 0.0)) throw std::domain_error("duration must be >= 0");
  return {ProtocolKind::Constant, omega, omega, duration, RampShape::Smoothstep};
}

FrequencyProtocol FrequencyProtocol::sudden_quench(double omega_from, double omega_to) {
  require_positive_frequency(omega_from, "initial");
  require_positive_frequency(omega_to, "final");
  return {ProtocolKind::SuddenQuench, omega_from, omega_to, 0.0, RampShape::Smoothstep};
}

FrequencyProtocol FrequencyProtocol::smooth_ramp(double omega_from, double omega_to,
                                                 double duration, RampShape shape) {
  require_positive_frequency(omega_from, "initial");
  require_positive_frequency(omega_to, "final");
  if (!(duration > 0.0)) throw std::domain_error("ramp duration must be > 0");
  return {ProtocolKind::SmoothRamp, omega_from, omega_to, duration, shape};
}

double omega_at(const FrequencyProtocol& protocol, double t) {
  if (t < 0.0 || t > protocol.duration)
    throw std::domain_error("omega_at: t = " + std::to_string(t) +
                            " outside [0, " + std::to_string(protocol.duration) + "]");
  switch (protocol.kind) {
    case ProtocolKind::Constant:
      return protocol.omega_start;
    case ProtocolKind::SuddenQuench:
      // Instantaneous switch: already at the post-quench frequency.
      return protocol.omega_end;
    case ProtocolKind::SmoothRamp: {
      const double u = t / protocol.duration;
      const double s = protocol.shape == RampShape::Smoothstep ? u * u * (3.0 - 2.0 * u) : u;
      return protocol.omega_start + (protocol.omega_end - protocol.omega_start) * s;
    }
  }
  throw std::logic_error("omega_at: unknown protocol kind");
}

}  // namespace qhe::dynamics
