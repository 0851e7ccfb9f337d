#include "qhe/ermakov.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace qhe::dynamics {

namespace {

// Dormand-Prince 5(4) tableau (FSAL: the 7th stage is the first of the next
// step).  The 5th-order weights are b[]; err[] = b - bhat gives the embedded
// 4th-order error estimate.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

using State = std::array<double, 4>;  // (G1, G1', G2, G2')

State rhs(const FrequencyProtocol& protocol, double t, const State& y) {
  const double w = omega_at(protocol, t);
  const double w2 = w * w;
  return {y[1], -w2 * y[0], y[3], -w2 * y[2]};
}

TrajectorySample make_sample(double t, double omega, const State& y, double omega0) {
  TrajectorySample s;
  s.t = t;
  s.omega = omega;
  s.g1 = y[0];
  s.dg1 = y[1];
  s.g2 = y[2];
  s.dg2 = y[3];
  s.b = std::sqrt(y[0] * y[0] + omega0 * omega0 * y[2] * y[2]);
  s.db = (y[1] * y[0] + omega0 * omega0 * y[3] * y[2]) / s.b;
  return s;
}

// Cubic Hermite on [0,h] given endpoint values and endpoint derivatives.
double hermite(double theta, double h, double y0, double m0, double y1, double m1) {
  const double t2 = theta * theta, t3 = t2 * theta;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + theta) * h * m0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * m1;
}

}  // namespace

ErmakovTrajectory::ErmakovTrajectory(double omega0, std::vector<TrajectorySample> samples)
    : omega0_(omega0), samples_(std::move(samples)) {
  if (!(omega0_ > 0.0)) throw std::domain_error("ErmakovTrajectory: omega0 must be > 0");
  if (samples_.empty()) throw std::domain_error("ErmakovTrajectory: no samples");
  if (samples_.front().t != 0.0)
    throw std::domain_error("ErmakovTrajectory: samples must start at t = 0");
  for (std::size_t i = 1; i < samples_.size(); ++i)
    if (!(samples_[i].t > samples_[i - 1].t))
      throw std::domain_error("ErmakovTrajectory: sample times must increase");
}

TrajectorySample ErmakovTrajectory::at(double t) const {
  const double tmax = samples_.back().t;
  const double slack = 1e-12 * std::max(1.0, tmax);
  if (t < -slack || t > tmax + slack)
    throw std::domain_error("ErmakovTrajectory::at: t outside [0, duration]");
  t = std::clamp(t, 0.0, tmax);

  auto hi = std::lower_bound(samples_.begin(), samples_.end(), t,
                             [](const TrajectorySample& s, double tq) { return s.t < tq; });
  if (hi == samples_.begin()) return samples_.front();
  if (hi == samples_.end()) return samples_.back();
  if (hi->t == t) return *hi;
  const TrajectorySample& s0 = *(hi - 1);
  const TrajectorySample& s1 = *hi;

  const double h = s1.t - s0.t;
  const double theta = (t - s0.t) / h;
  // Second derivatives at the nodes come from the oscillator equation itself.
  const double dd10 = -s0.omega * s0.omega * s0.g1, dd11 = -s1.omega * s1.omega * s1.g1;
  const double dd20 = -s0.omega * s0.omega * s0.g2, dd21 = -s1.omega * s1.omega * s1.g2;

  TrajectorySample out;
  out.t = t;
  out.g1 = hermite(theta, h, s0.g1, s0.dg1, s1.g1, s1.dg1);
  out.dg1 = hermite(theta, h, s0.dg1, dd10, s1.dg1, dd11);
  out.g2 = hermite(theta, h, s0.g2, s0.dg2, s1.g2, s1.dg2);
  out.dg2 = hermite(theta, h, s0.dg2, dd20, s1.dg2, dd21);
  // Frequency is re-interpolated the same way (linear in the stored values
  // would break the smoothstep shape less gracefully than this blend).
  out.omega = s0.omega + (s1.omega - s0.omega) * theta;
  out.b = std::sqrt(out.g1 * out.g1 + omega0_ * omega0_ * out.g2 * out.g2);
  out.db = (out.dg1 * out.g1 + omega0_ * omega0_ * out.dg2 * out.g2) / out.b;
  return out;
}

ErmakovTrajectory solve_ermakov(const FrequencyProtocol& protocol,
                                const SolverOptions& options) {
  if (protocol.kind == ProtocolKind::SuddenQuench)
    throw std::domain_error(
        "solve_ermakov: a sudden quench has no trajectory; use q_factor_sudden");
  if (!(options.rel_tol > 0.0) || !(options.abs_tol > 0.0))
    throw std::domain_error("solve_ermakov: tolerances must be > 0");

  const double omega0 = options.omega0 > 0.0 ? options.omega0 : protocol.omega_start;
  const double tau = protocol.duration;

  std::vector<TrajectorySample> samples;
  State y = {1.0, 0.0, 0.0, 1.0};
  samples.push_back(make_sample(0.0, omega_at(protocol, 0.0), y, omega0));
  if (tau == 0.0) return ErmakovTrajectory(omega0, std::move(samples));

  // Step-size ceiling keeping the cubic Hermite dense output roughly as
  // accurate as the integration itself: the interpolation error per
  // component is ~ omega^4 h^4 |G| / 384, so cap h^4 omega_hi^4 / 384 at a
  // fraction of rel_tol.
  const double omega_hi = std::max(protocol.omega_start, protocol.omega_end);
  double h_max = 0.3 * std::pow(384.0 * options.rel_tol, 0.25) / omega_hi;
  if (options.forced_grid_dt > 0.0) h_max = std::min(h_max, options.forced_grid_dt);
  h_max = std::min(h_max, tau);

  const double eps = std::numeric_limits<double>::epsilon();
  const double t_snap = 64.0 * eps * std::max(1.0, tau);

  double t = 0.0;
  double h_ctl = std::min(h_max, 1e-2 / omega_hi);  // controller's preferred step
  State k1 = rhs(protocol, 0.0, y);
  long grid_index = 1;  // next forced-grid multiple to hit

  while (tau - t > t_snap) {
    // Never step past the end of the stroke or the next mandatory grid time.
    double t_limit = tau;
    if (options.forced_grid_dt > 0.0)
      t_limit = std::min(tau, grid_index * options.forced_grid_dt);
    const bool clamped = h_ctl > t_limit - t;
    const double h = clamped ? t_limit - t : h_ctl;
    if (!(h > 0.0) || t + h == t)
      throw IntegrationError("solve_ermakov: step size underflow", t);

    State k2, k3, k4, k5, k6, k7, ynew;
    auto stage = [&](double c, const State& incr) {
      State ys;
      for (int i = 0; i < 4; ++i) ys[i] = y[i] + h * incr[i];
      return rhs(protocol, t + c * h, ys);
    };
    k2 = stage(c2, {a21 * k1[0], a21 * k1[1], a21 * k1[2], a21 * k1[3]});
    {
      State in;
      for (int i = 0; i < 4; ++i) in[i] = a31 * k1[i] + a32 * k2[i];
      k3 = stage(c3, in);
      for (int i = 0; i < 4; ++i) in[i] = a41 * k1[i] + a42 * k2[i] + a43 * k3[i];
      k4 = stage(c4, in);
      for (int i = 0; i < 4; ++i)
        in[i] = a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
      k5 = stage(c5, in);
      for (int i = 0; i < 4; ++i)
        in[i] = a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
      k6 = stage(1.0, in);
    }
    for (int i = 0; i < 4; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = rhs(protocol, t + h, ynew);

    double err = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                             e6 * k6[i] + e7 * k7[i]);
      const double scale =
          options.abs_tol + options.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err += (ei / scale) * (ei / scale);
    }
    err = std::sqrt(err / 4.0);

    const double factor =
        err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;

    if (err <= 1.0) {
      t += h;
      y = ynew;
      k1 = k7;  // FSAL
      samples.push_back(make_sample(t, omega_at(protocol, std::min(t, tau)), y, omega0));
      if (options.forced_grid_dt > 0.0 &&
          t >= grid_index * options.forced_grid_dt - t_snap)
        ++grid_index;
      // A step shortened only to land on an output time says nothing about
      // accuracy, so it must not shrink the controller's step.
      if (!clamped) h_ctl = std::min(h * factor, h_max);
    } else {
      h_ctl = std::min(h * factor, h_max);
      if (h_ctl < 1e4 * eps * std::max(1.0, t))
        throw IntegrationError("solve_ermakov: tolerance unattainable", t);
    }
  }

  // The last accepted step lands on tau up to accumulation roundoff.
  samples.back().t = tau;
  return ErmakovTrajectory(omega0, std::move(samples));
}

NonadiabaticFactor q_factor_scale_invariant(const ErmakovTrajectory& trajectory,
                                            double omega_t, double t) {
  if (!(omega_t > 0.0)) throw std::domain_error("q_factor: omega(t) must be > 0");
  const TrajectorySample s = trajectory.at(t);
  const double w0 = trajectory.omega0();
  const double b_ad_sq = w0 / omega_t;
  const double value =
      b_ad_sq * (1.0 / (2.0 * s.b * s.b) +
                 omega_t * omega_t * s.b * s.b / (2.0 * w0 * w0) +
                 s.db * s.db / (2.0 * w0 * w0));
  return {value, Provenance::Numerical};
}

NonadiabaticFactor q_factor_husimi(const ErmakovTrajectory& trajectory,
                                   double omega_t, double t) {
  if (!(omega_t > 0.0)) throw std::domain_error("q_factor: omega(t) must be > 0");
  const TrajectorySample s = trajectory.at(t);
  const double w0 = trajectory.omega0();
  const double w2 = omega_t * omega_t;
  const double value = ((s.dg1 * s.dg1 + w2 * s.g1 * s.g1) +
                        w0 * w0 * (s.dg2 * s.dg2 + w2 * s.g2 * s.g2)) /
                       (2.0 * w0 * omega_t);
  return {value, Provenance::Numerical};
}

NonadiabaticFactor q_factor_sudden(double omega_i, double omega_f) {
  if (!(omega_i > 0.0) || !(omega_f > 0.0))
    throw std::domain_error("q_factor_sudden: frequencies must be > 0");
  return {(omega_i * omega_i + omega_f * omega_f) / (2.0 * omega_i * omega_f),
          Provenance::SuddenClosedForm};
}

}  // namespace qhe::dynamics
