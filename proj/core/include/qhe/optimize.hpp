#pragma once

// Optimal operating points of the cycle: numerical maximization of the work
// output over the compression ratio x, plus closed-form optima per
// temperature regime and the large-N polynomial reductions.

#include <stdexcept>
#include <utility>

#include "qhe/cycle.hpp"
#include "qhe/thermo.hpp"

namespace qhe::optimize {

struct OptimizationError : std::runtime_error {
  OptimizationError(const std::string& what, double lo_, double hi_,
                    bool valid_lo_, bool valid_hi_)
      : std::runtime_error(what), lo(lo_), hi(hi_), valid_lo(valid_lo_), valid_hi(valid_hi_) {}
  double lo, hi;            // bracket that contained no engine point
  bool valid_lo, valid_hi;  // engine validity at the bracket ends
};

enum class OptMethod { GoldenSection, ClosedForm };

struct OptimizationResult {
  double x_opt = 0.0;
  double work_opt = 0.0;
  double efficiency_at_opt = 0.0;
  double power_opt = 0.0;
  OptMethod method = OptMethod::GoldenSection;
  int evaluations = 0;
  double bracket_lo = 0.0, bracket_hi = 0.0;  // bracket after validity clipping
  bool at_validity_boundary = false;  // maximizer pinned at the clipped edge
  bool engine_valid = false;
};

// Maximize the work output W(x) over x = omega1/omega2 with everything else
// in the spec held fixed (the template's omega2 is ignored).  Golden-section
// search to |hi - lo| <= 1e-8 after the bracket is clipped to the region
// with positive heat intake (boundary located by bisection on Q2).
// Throws OptimizationError when the bracket contains no engine point.
OptimizationResult maximize_work(const cycle::OttoCycleSpec& spec_template,
                                 double lo = 0.02, double hi = 0.995);

struct ClosedFormOptimum {
  double x_opt = 0.0;
  double work = 0.0;        // in units of omega1 (the implied beta_c is in 1/omega1)
  double efficiency = 0.0;
};

// Closed-form optimum for Adiabatic or SuddenQuench driving in the given
// temperature regime.  Parameter conventions (omega1 = 1):
//   - VeryLowT uses beta_h_omega1 (the cold-side scale drops out; beta_c is
//     recovered as beta_h_omega1 / a),
//   - every other regime uses sigma_c = N beta_c omega1.
// For Adiabatic driving the result is independent of lambda.
ClosedFormOptimum closed_form_optimum(const cycle::DrivingMode& driving,
                                      const thermo::RegimeTag& regime,
                                      const thermo::MediumSpec& medium,
                                      double a, double sigma_c, double beta_h_omega1);

// Stationarity condition of the sudden-quench work in the large-N window
// (both baths in the collective regime):  3x^5 - x^3 - 2a^2 = 0.  Returns
// the unique root in (0, 1], residual <= 1e-12.  The interval estimate
// root in [a^{1/3}, a^{1/4}] is exact only for a >= 0.17 (the root crosses
// a^{1/4} near a = 0.161) and is asserted there.
double solve_quintic_largen(double a);

struct CubicOptimum {
  double root = 0.0;        // of 2x^3 - x^2 - a^2 = 0 in (0, 1]
  double estimate = 0.0;    // quadratic estimate 1 + (a-1)/2 - (a-1)^2/16
  double efficiency = 0.0;  // (9 - 10a + a^2)/16, i.e. 1 - estimate
};

// Stationarity condition of the adiabatic work in the same window.
CubicOptimum solve_cubic_adiabatic(double a);

// Bounds on the optimal sudden-quench efficiency in the large-N window from
// the exponent estimate x_opt = a^s, s in [1/4, 1/3]:
//   eta(s) = (1 - a^{2s})(1 - a^{2-3s}) / (2 - a^{2-3s} - a^{2-s}).
// Returns {eta(1/4), eta(1/3)} = {lower, upper}.
std::pair<double, double> efficiency_band_largen(double a);

// Interaction strength at which the collective work advantage changes sign:
// lambda_c = pi^2 / (3 sigma_c^2).
double lambda_critical(double sigma_c);

}  // namespace qhe::optimize
