#pragma once

// Many-particle vs ensemble comparison: the performance of one N-particle
// engine against N independent single-particle engines running with the
// same bath temperatures and trap, quantified by
//     r   = W_many / (N * W_single)        (work; equals the power ratio
//                                            because cycle times are shared)
//     rho = eta_many / eta_single.
// Two conventions: each engine at its own optimal x, or both at one shared x.

#include <array>
#include <vector>

#include "qhe/cycle.hpp"
#include "qhe/optimize.hpp"
#include "qhe/thermo.hpp"

namespace qhe::supremacy {

enum class RatioConvention { AtRespectiveOptima, SameResources };

struct RatioPoint {
  double a = 0.0;
  int n_particles = 1;
  double lambda = 0.0;
  double sigma_c = 0.0;
  cycle::DrivingMode driving;
  RatioConvention convention = RatioConvention::AtRespectiveOptima;

  double r = 0.0;
  double rho = 0.0;
  double x_opt_many = 0.0;    // shared x under SameResources
  double x_opt_single = 0.0;

  // Snapshot of the N-particle engine at its x (for tables/plots).
  double work_many = 0.0;
  double efficiency_many = 0.0;
  double power_many = 0.0;
  double sigma_h = 0.0;       // N beta_h omega2 at the many-particle x
  bool q2_positive = false;
  bool engine_valid = false;  // the N-particle engine alone

  bool valid = false;         // both engines valid, ratios meaningful
};

// Compare at respective optima (each medium's x maximizes its own work).
// beta_c = sigma_c / (N omega1); the single-particle reference shares
// (a, beta_c, omega1, stroke times) — its own sigma is sigma_c / N.  A
// failed optimization yields an invalid point rather than an exception.
RatioPoint ratios_at_optima(double a, const thermo::MediumSpec& medium, double sigma_c,
                            const cycle::DrivingMode& driving, double omega1 = 1.0);

// Compare at one shared compression ratio x.  In the window where both
// baths see a collective medium (sigma_c, sigma_h >= 1 and sigma_c <= N/10)
// the result is additionally cross-checked against the temperature-
// rescaling identities of the collective-regime model (see
// same_resource_model below); a disagreement there is a logic error.
RatioPoint ratios_same_resources(double x, double a, const thermo::MediumSpec& medium,
                                 double sigma_c, const cycle::DrivingMode& driving,
                                 double omega1 = 1.0);

// Collective-regime model: energies E = (N/beta) mu_lambda(sigma) on both
// isochore endpoints.  Within this model the many/single ratios collapse to
// single-particle classical quantities at a rescaled bath ratio
//     f = mu_lambda(sigma_c) / mu_lambda(sigma_h),  sigma_h = (a/x) sigma_c:
//     r   = mu_lambda(sigma_c) * W1(x, a f) / W1(x, a),
//     rho = eta1(x, a f) / eta1(x, a),
// where W1, eta1 are the classical single-particle work and efficiency.
// Both the direct-model and rescaled evaluations are returned.
struct ModelRatios {
  double r = 0.0, rho = 0.0;                    // from model energies
  double r_rescaled = 0.0, rho_rescaled = 0.0;  // from the rescaling identities
};

ModelRatios same_resource_model(double x, double a, double lambda, double sigma_c,
                                double q_ab, double q_cd);

struct SweepSpec {
  std::vector<double> a_grid;
  std::vector<int> n_grid;
  std::vector<double> lambda_grid;
  std::vector<double> sigma_c_grid;
  cycle::DrivingMode driving;
  RatioConvention convention = RatioConvention::AtRespectiveOptima;
  double same_resource_x = 0.0;  // required when convention == SameResources
  double omega1 = 1.0;
  int workers = 0;               // 0 = hardware concurrency

  std::size_t size() const {
    return a_grid.size() * n_grid.size() * lambda_grid.size() * sigma_c_grid.size();
  }
  void validate() const;
};

// Evaluate every grid point.  Output is row-major over (a, n, lambda,
// sigma_c) in declared order and bit-identical for any worker count; a
// point that is not an engine comes back flagged invalid, never aborts.
std::vector<RatioPoint> sweep(const SweepSpec& spec);

struct CriticalA {
  enum class Status {
    Found,      // r(a) = 1 bracketed and bisected
    AboveOne,   // r > 1 over the whole scan
    BelowOne,   // r < 1 over the whole scan
    Unity       // r = 1 identically (self-comparison)
  };
  Status status = Status::Unity;
  double a = 0.0;  // the crossing when status == Found
};

// Locate the bath ratio where the work advantage disappears, r(a) = 1,
// by bisection to |delta a| <= 1e-3 over a in (a_lo, a_hi).
CriticalA locate_critical_a(const thermo::MediumSpec& medium, double sigma_c,
                            const cycle::DrivingMode& driving, double a_lo = 0.05,
                            double a_hi = 0.95);

}  // namespace qhe::supremacy
