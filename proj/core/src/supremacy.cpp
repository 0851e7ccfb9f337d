#include "qhe/supremacy.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace qhe::supremacy {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

cycle::OttoCycleSpec base_spec(double a, const thermo::MediumSpec& medium,
                               double sigma_c, const cycle::DrivingMode& driving,
                               double omega1) {
  if (!(a > 0.0) || !(a < 1.0))
    throw std::domain_error("supremacy: a must lie in (0,1)");
  if (!(sigma_c > 0.0)) throw std::domain_error("supremacy: sigma_c must be > 0");
  medium.validate();
  cycle::OttoCycleSpec spec;
  spec.omega1 = omega1;
  spec.omega2 = 2.0 * omega1;  // placeholder, replaced by the x of interest
  spec.beta_c = sigma_c / (medium.n * omega1);
  spec.beta_h = a * spec.beta_c;
  spec.medium = medium;
  spec.driving = driving;
  spec.stroke_times = cycle::default_stroke_times(driving);
  return spec;
}

RatioPoint init_point(double a, const thermo::MediumSpec& medium, double sigma_c,
                      const cycle::DrivingMode& driving, RatioConvention convention) {
  RatioPoint point;
  point.a = a;
  point.n_particles = medium.n;
  point.lambda = medium.lambda;
  point.sigma_c = sigma_c;
  point.driving = driving;
  point.convention = convention;
  point.r = kNaN;
  point.rho = kNaN;
  point.x_opt_many = kNaN;
  point.x_opt_single = kNaN;
  point.work_many = kNaN;
  point.efficiency_many = kNaN;
  point.power_many = kNaN;
  point.sigma_h = kNaN;
  return point;
}

// Classical single-particle work and heat intake (in units of 1/beta_c) at
// compression ratio x and bath ratio a, for given stroke Q* factors.
double classical_work(double x, double a, double q_ab, double q_cd) {
  return (1.0 - q_ab / x) + (1.0 - q_cd * x) / a;
}
double classical_q2(double x, double a, double q_ab) { return 1.0 / a - q_ab / x; }

}  // namespace

RatioPoint ratios_at_optima(double a, const thermo::MediumSpec& medium, double sigma_c,
                            const cycle::DrivingMode& driving, double omega1) {
  RatioPoint point = init_point(a, medium, sigma_c, driving,
                                RatioConvention::AtRespectiveOptima);
  const cycle::OttoCycleSpec spec_many = base_spec(a, medium, sigma_c, driving, omega1);
  cycle::OttoCycleSpec spec_single = spec_many;
  spec_single.medium.n = 1;  // same lambda slot; it is inert at N = 1

  optimize::OptimizationResult many, single;
  try {
    many = optimize::maximize_work(spec_many);
    single = optimize::maximize_work(spec_single);
  } catch (const optimize::OptimizationError&) {
    return point;  // no engine point for one of the media: flagged invalid
  }

  point.x_opt_many = many.x_opt;
  point.x_opt_single = single.x_opt;
  point.work_many = many.work_opt;
  point.efficiency_many = many.efficiency_at_opt;
  point.power_many = many.power_opt;
  point.sigma_h = medium.n * spec_many.beta_h * omega1 / many.x_opt;
  point.q2_positive = true;
  point.engine_valid = many.engine_valid;
  point.valid = many.engine_valid && single.engine_valid;
  if (point.valid) {
    point.r = many.work_opt / (medium.n * single.work_opt);
    point.rho = many.efficiency_at_opt / single.efficiency_at_opt;
  }
  return point;
}

RatioPoint ratios_same_resources(double x, double a, const thermo::MediumSpec& medium,
                                 double sigma_c, const cycle::DrivingMode& driving,
                                 double omega1) {
  if (!(x > 0.0) || !(x < 1.0))
    throw std::domain_error("ratios_same_resources: x must lie in (0,1)");
  RatioPoint point =
      init_point(a, medium, sigma_c, driving, RatioConvention::SameResources);
  point.x_opt_many = x;
  point.x_opt_single = x;

  cycle::OttoCycleSpec spec_many = base_spec(a, medium, sigma_c, driving, omega1);
  spec_many.omega2 = omega1 / x;
  cycle::OttoCycleSpec spec_single = spec_many;
  spec_single.medium.n = 1;

  const cycle::CyclePerformance many = cycle::cycle_performance(spec_many);
  const cycle::CyclePerformance single = cycle::cycle_performance(spec_single);

  point.work_many = many.total_work_out;
  point.efficiency_many = many.efficiency;
  point.power_many = many.power;
  point.sigma_h = medium.n * spec_many.beta_h * omega1 / x;
  point.q2_positive = many.q2_positive;
  point.engine_valid = many.engine_valid;
  point.valid = many.engine_valid && single.engine_valid;
  if (point.valid) {
    point.r = many.total_work_out / (medium.n * single.total_work_out);
    point.rho = many.efficiency / single.efficiency;
  }

  // In the collective window both evaluation routes of the model must agree
  // to rounding; this guards the implementation, not the physics.
  const double sigma_h = (a / x) * sigma_c;
  if (sigma_c >= 1.0 && sigma_h >= 1.0 && sigma_c <= medium.n / 10.0 &&
      driving.kind != cycle::DrivingKind::Ramp) {
    const double q = driving.kind == cycle::DrivingKind::SuddenQuench
                         ? dynamics::q_factor_sudden(1.0, 1.0 / x).value
                         : 1.0;
    const ModelRatios model =
        same_resource_model(x, a, medium.lambda, sigma_c, q, q);
    if (std::isfinite(model.r) &&
        std::abs(model.r - model.r_rescaled) >
            1e-12 * std::max(1.0, std::abs(model.r)))
      throw std::logic_error("ratios_same_resources: model rescaling identity broken");
    if (std::isfinite(model.rho) &&
        std::abs(model.rho - model.rho_rescaled) >
            1e-12 * std::max(1.0, std::abs(model.rho)))
      throw std::logic_error("ratios_same_resources: model rescaling identity broken");
  }
  return point;
}

ModelRatios same_resource_model(double x, double a, double lambda, double sigma_c,
                                double q_ab, double q_cd) {
  if (!(x > 0.0) || !(x < 1.0) || !(a > 0.0) || !(a < 1.0))
    throw std::domain_error("same_resource_model: need x, a in (0,1)");
  const double sigma_h = (a / x) * sigma_c;
  const double mu_c = thermo::mu(lambda, sigma_c);
  const double mu_h = thermo::mu(lambda, sigma_h);

  ModelRatios out;
  // Direct model evaluation (energies in units of N/beta_c).
  const double w_many = (1.0 - q_ab / x) * mu_c + (1.0 - q_cd * x) * mu_h / a;
  const double q2_many = mu_h / a - (q_ab / x) * mu_c;
  const double w_one = classical_work(x, a, q_ab, q_cd);
  const double q2_one = classical_q2(x, a, q_ab);
  out.r = w_many / w_one;
  out.rho = (w_many / q2_many) / (w_one / q2_one);

  // Rescaling route: the many-particle engine is a classical one running at
  // bath ratio a*f.
  const double f = mu_c / mu_h;
  out.r_rescaled = mu_c * classical_work(x, a * f, q_ab, q_cd) / w_one;
  out.rho_rescaled = (classical_work(x, a * f, q_ab, q_cd) / classical_q2(x, a * f, q_ab)) /
                     (w_one / q2_one);
  return out;
}

void SweepSpec::validate() const {
  if (a_grid.empty() || n_grid.empty() || lambda_grid.empty() || sigma_c_grid.empty())
    throw std::invalid_argument("sweep: all four grids must be nonempty");
  for (double a : a_grid)
    if (!(a > 0.0) || !(a < 1.0)) throw std::invalid_argument("sweep: a grid outside (0,1)");
  for (int n : n_grid)
    if (n < 1) throw std::invalid_argument("sweep: n grid must be >= 1");
  for (double l : lambda_grid)
    if (!(l >= 0.0)) throw std::invalid_argument("sweep: lambda grid must be >= 0");
  for (double s : sigma_c_grid)
    if (!(s > 0.0)) throw std::invalid_argument("sweep: sigma_c grid must be > 0");
  if (convention == RatioConvention::SameResources &&
      (!(same_resource_x > 0.0) || !(same_resource_x < 1.0)))
    throw std::invalid_argument("sweep: SameResources needs same_resource_x in (0,1)");
  if (!(omega1 > 0.0)) throw std::invalid_argument("sweep: omega1 must be > 0");
  if (workers < 0) throw std::invalid_argument("sweep: workers must be >= 0");
}

std::vector<RatioPoint> sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t total = spec.size();
  std::vector<RatioPoint> results(total);

  auto evaluate_index = [&spec, &results](std::size_t idx) {
    // Row-major decode over (a, n, lambda, sigma_c) in declared order.
    const std::size_t ns = spec.sigma_c_grid.size();
    const std::size_t nl = spec.lambda_grid.size();
    const std::size_t nn = spec.n_grid.size();
    const std::size_t i_s = idx % ns;
    const std::size_t i_l = (idx / ns) % nl;
    const std::size_t i_n = (idx / (ns * nl)) % nn;
    const std::size_t i_a = idx / (ns * nl * nn);
    const thermo::MediumSpec medium{spec.n_grid[i_n], spec.lambda_grid[i_l]};
    const double a = spec.a_grid[i_a];
    const double sigma_c = spec.sigma_c_grid[i_s];
    try {
      results[idx] =
          spec.convention == RatioConvention::AtRespectiveOptima
              ? ratios_at_optima(a, medium, sigma_c, spec.driving, spec.omega1)
              : ratios_same_resources(spec.same_resource_x, a, medium, sigma_c,
                                      spec.driving, spec.omega1);
    } catch (const std::exception&) {
      results[idx] = init_point(a, medium, sigma_c, spec.driving, spec.convention);
    }
  };

  unsigned n_workers = spec.workers > 0
                           ? static_cast<unsigned>(spec.workers)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_workers = static_cast<unsigned>(
      std::min<std::size_t>(n_workers, total));

  if (n_workers <= 1) {
    for (std::size_t i = 0; i < total; ++i) evaluate_index(i);
    return results;
  }

  // Each worker claims the next unevaluated index; every slot is written by
  // exactly one worker and the value does not depend on who computed it.
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (unsigned w = 0; w < n_workers; ++w) {
    pool.emplace_back([&]() {
      for (std::size_t idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1))
        evaluate_index(idx);
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

CriticalA locate_critical_a(const thermo::MediumSpec& medium, double sigma_c,
                            const cycle::DrivingMode& driving, double a_lo,
                            double a_hi) {
  if (!(0.0 < a_lo && a_lo < a_hi && a_hi < 1.0))
    throw std::domain_error("locate_critical_a: need 0 < a_lo < a_hi < 1");

  auto r_at = [&](double a) {
    const RatioPoint p = ratios_at_optima(a, medium, sigma_c, driving);
    return p.valid ? p.r : kNaN;
  };

  // Coarse scan, then bisection on the first bracketing pair.
  constexpr int kScan = 19;
  double prev_a = kNaN, prev_r = kNaN;
  double lo = 0.0, hi = 0.0, r_lo = 0.0;
  bool bracketed = false, any_above = false, any_below = false, any_valid = false;
  for (int i = 0; i < kScan; ++i) {
    const double a = a_lo + (a_hi - a_lo) * i / (kScan - 1);
    const double r = r_at(a);
    if (!std::isfinite(r)) continue;
    any_valid = true;
    if (r > 1.0 + 1e-9) any_above = true;
    if (r < 1.0 - 1e-9) any_below = true;
    if (std::isfinite(prev_r) && (prev_r - 1.0) * (r - 1.0) < 0.0 && !bracketed) {
      lo = prev_a;
      hi = a;
      r_lo = prev_r;
      bracketed = true;
    }
    prev_a = a;
    prev_r = r;
  }
  if (!any_valid)
    throw std::domain_error("locate_critical_a: no valid engine point on the scan");

  CriticalA result;
  if (!bracketed) {
    if (any_above && !any_below) result.status = CriticalA::Status::AboveOne;
    else if (any_below && !any_above) result.status = CriticalA::Status::BelowOne;
    else result.status = CriticalA::Status::Unity;
    return result;
  }

  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    const double r_mid = r_at(mid);
    if (!std::isfinite(r_mid)) break;  // validity edge inside the bracket
    if ((r_mid - 1.0) * (r_lo - 1.0) > 0.0) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
    }
  }
  result.status = CriticalA::Status::Found;
  result.a = 0.5 * (lo + hi);
  return result;
}

}  // namespace qhe::supremacy
