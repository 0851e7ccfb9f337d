#include "checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "qhe/cycle.hpp"
#include "qhe/ermakov.hpp"
#include "qhe/optimize.hpp"
#include "qhe/protocol.hpp"
#include "qhe/supremacy.hpp"
#include "qhe/thermo.hpp"

namespace checks {

namespace {

using namespace qhe;

// SplitMix64: tiny, seedable, identical on every platform. The standard
// distributions are not bit-stable across library implementations, which
// would break byte-identical reports.
struct Rng {
  std::uint64_t s;
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
};

std::string describe(double dev, double tol) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst %.3e vs tolerance %.3e", dev, tol);
  return buf;
}

// --- husimi: two evaluations of the nonadiabatic factor must coincide ------

CheckResult check_husimi(std::uint64_t seed) {
  Rng rng{seed};
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double w0 = rng.uniform(0.4, 2.5);
    const double wf = rng.uniform(0.4, 2.5);
    const double tau = rng.uniform(0.1, 6.0);
    const auto shape =
        (i % 2 == 0) ? dynamics::RampShape::Smoothstep : dynamics::RampShape::Linear;
    const auto protocol = dynamics::FrequencyProtocol::smooth_ramp(w0, wf, tau, shape);
    const auto traj = dynamics::solve_ermakov(protocol);
    for (int j = 0; j < 10; ++j) {
      const double t = rng.uniform(0.0, tau);
      const double w = dynamics::omega_at(protocol, t);
      const double q = dynamics::q_factor_scale_invariant(traj, w, t).value;
      const double qh = dynamics::q_factor_husimi(traj, w, t).value;
      worst = std::max(worst, std::abs(q - qh));
    }
  }
  return {"husimi", worst <= 1e-8, worst, 1e-8,
          "scale-invariant vs fundamental-pair nonadiabatic factor, "
          "100 random ramps x 10 times; " + describe(worst, 1e-8)};
}

// --- sudden: post-quench evolution keeps the closed-form factor ------------

CheckResult check_sudden(std::uint64_t) {
  const double pairs[3][2] = {{1, 2}, {1, 5}, {2, 1}};
  double worst = 0.0;
  for (const auto& p : pairs) {
    const double wi = p[0], wf = p[1];
    const double expect = dynamics::q_factor_sudden(wi, wf).value;
    const double horizon = 6.0;
    dynamics::SolverOptions opt;
    opt.omega0 = wi;  // state prepared at wi, evolved at constant wf
    const auto traj = dynamics::solve_ermakov(
        dynamics::FrequencyProtocol::constant(wf, horizon), opt);
    for (int j = 0; j <= 24; ++j) {
      const double t = horizon * j / 24;
      const double q = dynamics::q_factor_scale_invariant(traj, wf, t).value;
      worst = std::max(worst, std::abs(q - expect));
    }
  }
  return {"sudden", worst <= 1e-8, worst, 1e-8,
          "constant-frequency evolution after a quench, 3 frequency pairs, "
          "25 times each; " + describe(worst, 1e-8)};
}

// --- first-law: ledger closure, efficiency bound ordering ------------------

CheckResult check_first_law(std::uint64_t seed) {
  Rng rng{seed};
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    cycle::OttoCycleSpec spec;
    const double x = rng.uniform(0.12, 0.95);
    spec.omega1 = 1.0;
    spec.omega2 = 1.0 / x;
    spec.beta_c = std::exp(rng.uniform(std::log(1e-3), std::log(20.0)));
    spec.beta_h = rng.uniform(0.05, 0.95) * spec.beta_c;
    spec.medium = {rng.uniform_int(1, 8), rng.uniform(0.0, 1.5)};
    switch (i % 3) {
      case 0: spec.driving = cycle::DrivingMode::adiabatic(); break;
      case 1: spec.driving = cycle::DrivingMode::sudden(); break;
      default:
        spec.driving = cycle::DrivingMode::ramp(rng.uniform(0.3, 2.5),
                                                dynamics::RampShape::Smoothstep);
    }
    spec.stroke_times = cycle::default_stroke_times(spec.driving);

    const auto ledger = cycle::stroke_ledger(spec);
    const double scale = std::abs(ledger.w1) + std::abs(ledger.q2) +
                         std::abs(ledger.w3) + std::abs(ledger.q4);
    const double closure = std::abs(ledger.w1 + ledger.q2 + ledger.w3 + ledger.q4) /
                           std::max(1.0, scale);
    worst = std::max(worst, closure);

    const auto perf = cycle::cycle_performance(spec);
    if (perf.engine_valid && std::isfinite(perf.efficiency)) {
      worst = std::max(worst, perf.efficiency - perf.eta_nad_bound);
      worst = std::max(worst, perf.eta_nad_bound - perf.eta_otto);
      if (spec.driving.kind == cycle::DrivingKind::SuddenQuench)
        worst = std::max(worst, perf.efficiency - 0.5 * (1.0 - x * x));
    }
  }
  return {"first-law", worst <= 1e-12, worst, 1e-12,
          "energy-ledger closure and efficiency bound ordering on 200 random "
          "cycles; " + describe(worst, 1e-12)};
}

// --- lambda: coupling can only hurt a sudden engine; adiabatic is immune ---

CheckResult check_lambda(std::uint64_t) {
  const double x = 0.6, a = 0.3;
  const int n = 50;
  const double beta_c = 1.0 / n;  // sigma_c = 1
  double worst = 0.0;

  auto perf_at = [&](double lambda, const cycle::DrivingMode& driving) {
    cycle::OttoCycleSpec spec;
    spec.omega1 = 1.0;
    spec.omega2 = 1.0 / x;
    spec.beta_c = beta_c;
    spec.beta_h = a * beta_c;
    spec.medium = {n, lambda};
    spec.driving = driving;
    spec.stroke_times = cycle::default_stroke_times(driving);
    return cycle::cycle_performance(spec);
  };

  double prev_w = 0.0, prev_eta = 0.0;
  double w0 = 0.0, eta0 = 0.0;
  double ad_w_ref = 0.0, ad_eta_ref = 0.0;
  for (int i = 0; i <= 10; ++i) {
    const double lambda = 0.1 * i;
    const auto sudden = perf_at(lambda, cycle::DrivingMode::sudden());
    const auto adiab = perf_at(lambda, cycle::DrivingMode::adiabatic());
    if (i == 0) {
      w0 = sudden.total_work_out;
      eta0 = sudden.efficiency;
      prev_w = w0;
      prev_eta = eta0;
      ad_w_ref = adiab.total_work_out;
      ad_eta_ref = adiab.efficiency;
    } else {
      worst = std::max(worst, (sudden.total_work_out - prev_w) / std::abs(w0));
      worst = std::max(worst, (sudden.efficiency - prev_eta) / std::abs(eta0));
      prev_w = sudden.total_work_out;
      prev_eta = sudden.efficiency;
      worst = std::max(worst,
                       std::abs(adiab.total_work_out - ad_w_ref) / std::abs(ad_w_ref));
      worst = std::max(worst, std::abs(adiab.efficiency - ad_eta_ref) / ad_eta_ref);
    }
  }
  return {"lambda", worst <= 1e-11, worst, 1e-11,
          "work/efficiency nonincreasing in the coupling (sudden) and "
          "coupling-independent (adiabatic); " + describe(worst, 1e-11)};
}

// --- asymptotic: regime formulas track the exact energy ---------------------

CheckResult check_asymptotic(std::uint64_t) {
  double worst = 0.0;  // relative error divided by the regime's allowance

  auto rel = [](const thermo::MediumSpec& m, const thermo::BathSpec& b,
                thermo::RegimeKind kind) {
    const double exact = thermo::mean_energy(m, b).total;
    const double sigma = thermo::sigma(m, b);
    const double approx = thermo::mean_energy_asymptotic(m, b, {kind, sigma});
    return std::abs(approx - exact) / std::abs(exact);
  };

  for (int n : {1, 50, 200})
    for (double lambda : {0.0, 0.3, 1.0})
      for (double sigma : {0.02, 0.1})
        worst = std::max(
            worst, rel({n, lambda}, {sigma / n, 1.0}, thermo::RegimeKind::HighT) / 0.01);

  // The intermediate-regime energy omits the one-body ground term N omega/2;
  // relative to N/beta that is sigma/(2N), so at lambda = 0 the formula is
  // only good for small sigma, while the lambda sigma/2 piece dominates it
  // for lambda >= 1/2 across the whole window.
  for (double sigma : {0.5, 1.0, 2.0})
    worst = std::max(worst, rel({200, 0.0}, {sigma / 200, 1.0},
                                thermo::RegimeKind::Intermediate) /
                                0.02);
  for (double lambda : {0.5, 1.0})
    for (double sigma : {0.5, 2.0, 5.0, 20.0})
      worst = std::max(worst, rel({200, lambda}, {sigma / 200, 1.0},
                                  thermo::RegimeKind::Intermediate) /
                                  0.02);

  for (int n : {1, 10})
    for (double lambda : {0.0, 1.0})
      for (double mult : {10.0, 20.0})
        worst = std::max(worst, rel({n, lambda}, {mult, 1.0},
                                    thermo::RegimeKind::VeryLowT) /
                                    0.03);

  return {"asymptotic", worst <= 1.0, worst, 1.0,
          "regime energy formulas vs exact sums (error / regime allowance); " +
              describe(worst, 1.0)};
}

// --- band: collective efficiency band, ratio cap, adiabatic floor ----------

CheckResult check_band(std::uint64_t) {
  const thermo::MediumSpec medium{1000, 0.0};
  const double sigma_c = 10.0;
  double worst = -1.0;  // signed margin; pass iff <= 0
  for (double a : {0.4, 0.5, 0.6}) {
    const auto sudden =
        supremacy::ratios_at_optima(a, medium, sigma_c, cycle::DrivingMode::sudden());
    const auto [lo, hi] = optimize::efficiency_band_largen(a);
    worst = std::max(worst, sudden.efficiency_many - (hi + 0.02));
    worst = std::max(worst, (lo - 0.02) - sudden.efficiency_many);
    worst = std::max(worst, sudden.rho - 1.55);
    const auto adiab = supremacy::ratios_at_optima(a, medium, sigma_c,
                                                   cycle::DrivingMode::adiabatic());
    worst = std::max(worst, 0.65 - adiab.rho);
    if (!sudden.valid || !adiab.valid) worst = std::max(worst, 1.0);
  }
  return {"band", worst <= 0.0, worst, 0.0,
          "optimized collective efficiency inside the large-N band, "
          "efficiency-ratio cap 1.55, adiabatic floor 0.65 (signed margin); " +
              describe(worst, 0.0)};
}

// --- polynomial: stationarity polynomials for the large-N optima ------------

CheckResult check_polynomial(std::uint64_t) {
  double worst = 0.0;
  for (double a = 0.2; a < 0.951; a += 0.05) {
    const double x5 = optimize::solve_quintic_largen(a);
    worst = std::max(worst,
                     std::abs(3 * std::pow(x5, 5) - std::pow(x5, 3) - 2 * a * a) / 1e-12);
    const auto cubic = optimize::solve_cubic_adiabatic(a);
    worst = std::max(
        worst,
        std::abs(2 * std::pow(cubic.root, 3) - cubic.root * cubic.root - a * a) / 1e-12);
  }
  const auto at_half = optimize::solve_cubic_adiabatic(0.5);
  worst = std::max(worst, std::abs(at_half.root - at_half.estimate) / 2e-3);
  worst = std::max(worst, std::abs(at_half.efficiency - 0.265625) / 1e-15);
  return {"polynomial", worst <= 1.0, worst, 1.0,
          "quintic/cubic residuals, series estimate and efficiency value at "
          "a=0.5 (error / allowance); " + describe(worst, 1.0)};
}

// --- thermo: consistency of energy and partition function -------------------

double oracle_log_partition(const thermo::MediumSpec& m, const thermo::BathSpec& b) {
  // Brute force: excitation degeneracies are partitions into parts <= N.
  const double bw = b.beta * b.omega;
  const int m_max = static_cast<int>(std::ceil(42.0 / bw)) + m.n;
  std::vector<double> ways(m_max + 1, 0.0);
  ways[0] = 1.0;
  for (int part = 1; part <= m.n; ++part)
    for (int tot = part; tot <= m_max; ++tot) ways[tot] += ways[tot - part];
  double z = 0.0;
  for (int tot = m_max; tot >= 0; --tot) z += ways[tot] * std::exp(-bw * tot);
  const double ground = 0.5 * b.omega * m.n * (1.0 + m.lambda * (m.n - 1));
  return -b.beta * ground + std::log(z);
}

CheckResult check_thermo(std::uint64_t seed) {
  Rng rng{seed};
  double worst = 0.0;
  for (int i = 0; i < 60; ++i) {
    const thermo::MediumSpec m{rng.uniform_int(1, 50), rng.uniform(0.0, 2.0)};
    const double beta = std::exp(rng.uniform(std::log(0.01), std::log(5.0)));
    const double e = thermo::mean_energy(m, {beta, 1.0}).total;
    const double h = 1e-5 * beta;
    const double dlnz = (thermo::log_partition(m, {beta + h, 1.0}) -
                         thermo::log_partition(m, {beta - h, 1.0})) /
                        (2 * h);
    worst = std::max(worst, std::abs(e + dlnz) / (1e-6 * e));
  }
  for (int n = 1; n <= 4; ++n)
    for (double lambda : {0.0, 0.5, 1.0})
      for (double bw : {0.2, 1.0, 3.0}) {
        const thermo::MediumSpec m{n, lambda};
        const thermo::BathSpec b{bw, 1.0};
        const double got = thermo::log_partition(m, b);
        const double want = oracle_log_partition(m, b);
        worst = std::max(worst,
                         (std::abs(got - want) / std::max(1.0, std::abs(want))) / 1e-8);
      }
  return {"thermo", worst <= 1.0, worst, 1.0,
          "energy = -d(ln Z)/d(beta) on 60 random media and brute-force "
          "partition sums for N <= 4 (error / allowance); " + describe(worst, 1.0)};
}

}  // namespace

std::vector<CheckResult> run_checks(const std::string& only, std::uint64_t seed) {
  struct Entry {
    const char* name;
    CheckResult (*fn)(std::uint64_t);
  };
  static const Entry table[] = {
      {"husimi", check_husimi},       {"sudden", check_sudden},
      {"first-law", check_first_law}, {"lambda", check_lambda},
      {"asymptotic", check_asymptotic}, {"band", check_band},
      {"polynomial", check_polynomial}, {"thermo", check_thermo},
  };
  if (!only.empty()) {
    for (const Entry& e : table)
      if (only == e.name) return {e.fn(seed)};
    throw std::invalid_argument("unknown check: " + only);
  }
  std::vector<CheckResult> results;
  for (const Entry& e : table) results.push_back(e.fn(seed));
  return results;
}

}  // namespace checks
