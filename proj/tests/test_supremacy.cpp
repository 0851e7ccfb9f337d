#include "doctest.h"
#include "qhe/supremacy.hpp"

#include <cmath>
#include <vector>

#include "support/oracles.hpp"

using namespace qhe;
using cycle::DrivingMode;

TEST_CASE("single particle vs itself gives unit ratios exactly") {
  const auto pt =
      supremacy::ratios_at_optima(0.25, {1, 0.0}, 0.01, DrivingMode::sudden());
  REQUIRE(pt.valid);
  CHECK(pt.r == 1.0);    // identical optimization runs, bitwise
  CHECK(pt.rho == 1.0);
  CHECK(pt.x_opt_many == pt.x_opt_single);
  CHECK(pt.n_particles == 1);
  CHECK(pt.engine_valid);
  CHECK(pt.q2_positive);
  // echoed inputs and the hot-side scale
  CHECK(pt.a == 0.25);
  CHECK(pt.sigma_c == 0.01);
  CHECK(pt.sigma_h == doctest::Approx(0.01 * 0.25 / pt.x_opt_many).epsilon(1e-12));
}

TEST_CASE("rescaling identities of the collective-regime model") {
  for (double x : {0.5, 0.65, 0.8}) {
    for (double a : {0.2, 0.4, 0.6}) {
      for (double lambda : {0.0, 0.5, 1.0}) {
        for (double sigma_c : {1.0, 2.0, 5.0}) {
          const double q_sudden = (1 + x * x) / (2 * x);
          for (double q : {1.0, q_sudden}) {
            const auto m = supremacy::same_resource_model(x, a, lambda, sigma_c, q, q);
            CHECK(std::abs(m.r - m.r_rescaled) <=
                  1e-12 * std::max(1.0, std::abs(m.r)));
            CHECK(std::abs(m.rho - m.rho_rescaled) <=
                  1e-12 * std::max(1.0, std::abs(m.rho)));
          }
        }
      }
    }
  }
}

TEST_CASE("shared-x comparison agrees with the model inside its window") {
  // sigma_c = 5, sigma_h = 5 a / x >= 1, N = 200 >= 10 sigma_c: the call
  // runs its internal model cross-check; it must come back valid and the
  // exact ratios must sit near the model prediction
  const double x = 0.7, a = 0.3, sigma_c = 5.0;
  const int n = 200;
  const auto pt =
      supremacy::ratios_same_resources(x, a, {n, 0.5}, sigma_c, DrivingMode::sudden());
  REQUIRE(pt.valid);
  CHECK(pt.x_opt_many == x);
  CHECK(pt.x_opt_single == x);

  // recompute the definition directly from the cycle layer
  cycle::OttoCycleSpec many;
  many.omega1 = 1.0;
  many.omega2 = 1.0 / x;
  many.beta_c = sigma_c / n;
  many.beta_h = a * many.beta_c;
  many.medium = {n, 0.5};
  many.driving = DrivingMode::sudden();
  many.stroke_times = cycle::default_stroke_times(many.driving);
  cycle::OttoCycleSpec single = many;
  single.medium = {1, 0.5};
  const auto perf_many = cycle::cycle_performance(many);
  const auto perf_single = cycle::cycle_performance(single);
  CHECK(pt.r ==
        doctest::Approx(perf_many.total_work_out / (n * perf_single.total_work_out))
            .epsilon(1e-14));
  CHECK(pt.rho ==
        doctest::Approx(perf_many.efficiency / perf_single.efficiency).epsilon(1e-14));
  CHECK(pt.work_many == doctest::Approx(perf_many.total_work_out).epsilon(1e-14));

  // and the collective-regime model lands in the same neighborhood
  const double q = (1 + x * x) / (2 * x);
  const auto m = supremacy::same_resource_model(x, a, 0.5, sigma_c, q, q);
  CHECK(pt.r == doctest::Approx(m.r).epsilon(0.25));
  CHECK(pt.rho == doctest::Approx(m.rho).epsilon(0.25));
}

TEST_CASE("shared-x comparison flags non-engine points instead of throwing") {
  // a/x large enough that the quench dumps heat on the hot stroke
  const auto pt =
      supremacy::ratios_same_resources(0.3, 0.8, {50, 0.0}, 2.0, DrivingMode::sudden());
  CHECK(!pt.valid);
  CHECK(!pt.engine_valid);
  CHECK(std::isnan(pt.r));
  CHECK(std::isnan(pt.rho));
}

TEST_CASE("frictionless ratios do not depend on the coupling") {
  const auto r0 =
      supremacy::ratios_at_optima(0.3, {50, 0.0}, 2.0, DrivingMode::adiabatic());
  const auto r1 =
      supremacy::ratios_at_optima(0.3, {50, 1.0}, 2.0, DrivingMode::adiabatic());
  REQUIRE(r0.valid);
  REQUIRE(r1.valid);
  // work ratios are quadratically flat in the 1e-8 location jitter of each
  // optimum; the efficiency ratio inherits it linearly
  CHECK(r0.r == doctest::Approx(r1.r).epsilon(1e-9));
  CHECK(r0.rho == doctest::Approx(r1.rho).epsilon(1e-7));
  CHECK(r0.x_opt_many == doctest::Approx(r1.x_opt_many).epsilon(1e-6));
}

TEST_CASE("optimal work and efficiency fall as the baths get closer") {
  double prev_work = 1e300, prev_eta = 1e300;
  for (double a : {0.2, 0.35, 0.5, 0.65, 0.8}) {
    const auto pt =
        supremacy::ratios_at_optima(a, {100, 0.0}, 2.0, DrivingMode::sudden());
    REQUIRE(pt.valid);
    CHECK(pt.work_many < prev_work);
    CHECK(pt.efficiency_many < prev_eta);
    prev_work = pt.work_many;
    prev_eta = pt.efficiency_many;
  }
}

TEST_CASE("sweep order is row-major and worker-count independent") {
  supremacy::SweepSpec spec;
  spec.a_grid = {0.2, 0.3};
  spec.n_grid = {1, 3};
  spec.lambda_grid = {0.0, 1.0};
  spec.sigma_c_grid = {1.0, 2.0};
  spec.driving = DrivingMode::sudden();
  spec.workers = 1;
  REQUIRE(spec.size() == 16);

  const auto serial = supremacy::sweep(spec);
  REQUIRE(serial.size() == 16);
  std::size_t idx = 0;
  for (double a : spec.a_grid)
    for (int n : spec.n_grid)
      for (double lambda : spec.lambda_grid)
        for (double sigma_c : spec.sigma_c_grid) {
          CHECK(serial[idx].a == a);
          CHECK(serial[idx].n_particles == n);
          CHECK(serial[idx].lambda == lambda);
          CHECK(serial[idx].sigma_c == sigma_c);
          CHECK(serial[idx].valid);
          ++idx;
        }

  spec.workers = 5;
  const auto parallel = supremacy::sweep(spec);
  REQUIRE(parallel.size() == serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].r == parallel[i].r);
    CHECK(serial[i].rho == parallel[i].rho);
    CHECK(serial[i].x_opt_many == parallel[i].x_opt_many);
    CHECK(serial[i].x_opt_single == parallel[i].x_opt_single);
    CHECK(serial[i].work_many == parallel[i].work_many);
    CHECK(serial[i].sigma_h == parallel[i].sigma_h);
    CHECK(serial[i].valid == parallel[i].valid);
  }
}

TEST_CASE("sweep carries non-engine points through as invalid rows") {
  supremacy::SweepSpec spec;
  spec.a_grid = {0.2, 0.8};
  spec.n_grid = {20};
  spec.lambda_grid = {0.0};
  spec.sigma_c_grid = {2.0};
  spec.driving = DrivingMode::sudden();
  spec.convention = supremacy::RatioConvention::SameResources;
  spec.same_resource_x = 0.55;
  spec.workers = 2;
  const auto points = supremacy::sweep(spec);
  REQUIRE(points.size() == 2);
  CHECK(points[0].valid);       // a = 0.2: comfortable engine at x = 0.55
  CHECK(!points[1].valid);      // a = 0.8: hot stroke dumps heat
  CHECK(std::isnan(points[1].r));
}

TEST_CASE("sweep validation rejects malformed grids") {
  supremacy::SweepSpec spec;
  spec.driving = DrivingMode::sudden();
  CHECK_THROWS_AS(supremacy::sweep(spec), std::invalid_argument);  // empty grids
  spec.a_grid = {0.2};
  spec.n_grid = {1};
  spec.lambda_grid = {0.0};
  spec.sigma_c_grid = {1.0};
  spec.convention = supremacy::RatioConvention::SameResources;  // x unset
  CHECK_THROWS_AS(supremacy::sweep(spec), std::invalid_argument);
}

TEST_CASE("work-advantage crossing: found, saturated, or absent") {
  // single particle: the comparison is against itself, r = 1 identically
  const auto unity =
      supremacy::locate_critical_a({1, 0.0}, 5.0, DrivingMode::sudden());
  CHECK(unity.status == supremacy::CriticalA::Status::Unity);

  // uncoupled many-particle quench medium: advantage dies at a* near 0.216
  const auto found =
      supremacy::locate_critical_a({500, 0.0}, 5.0, DrivingMode::sudden());
  REQUIRE(found.status == supremacy::CriticalA::Status::Found);
  CHECK(std::abs(found.a - 0.216) <= 0.01);

  // same medium scanned only below the crossing: advantage everywhere
  const auto above = supremacy::locate_critical_a({500, 0.0}, 5.0,
                                                  DrivingMode::sudden(), 0.05, 0.15);
  CHECK(above.status == supremacy::CriticalA::Status::AboveOne);

  // strong coupling pushes the whole curve below one
  const auto below =
      supremacy::locate_critical_a({500, 1.0}, 5.0, DrivingMode::sudden());
  CHECK(below.status == supremacy::CriticalA::Status::BelowOne);
}
