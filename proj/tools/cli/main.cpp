#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "checks.hpp"
#include "emit.hpp"
#include "qhe/cycle.hpp"
#include "qhe/supremacy.hpp"
#include "qhe/thermo.hpp"

namespace {

using namespace qhe;
using emit::Value;

// Grids are "lo:hi:step" (inclusive ends) or comma-separated values.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    double lo, hi, step;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 ||
        !(step > 0.0) || hi < lo)
      throw std::invalid_argument("bad grid range: " + text);
    for (int i = 0;; ++i) {
      const double v = lo + i * step;
      if (v > hi + 1e-9 * step) break;
      out.push_back(std::min(v, hi));
    }
  } else {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      std::size_t pos = 0;
      const double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument("bad grid value: " + item);
      out.push_back(v);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty grid: " + text);
  return out;
}

std::vector<int> parse_int_grid(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_grid(text)) {
    const int n = static_cast<int>(std::lround(v));
    if (std::abs(v - n) > 1e-9) throw std::invalid_argument("grid needs integers: " + text);
    out.push_back(n);
  }
  return out;
}

struct DrivingOpts {
  std::string driving = "sudden";  // adiabatic | sudden | ramp
  double ramp_tau = 1.0;
  std::string ramp_shape = "smoothstep";

  cycle::DrivingMode mode() const {
    if (driving == "adiabatic") return cycle::DrivingMode::adiabatic();
    if (driving == "sudden") return cycle::DrivingMode::sudden();
    const auto shape = ramp_shape == "linear" ? dynamics::RampShape::Linear
                                              : dynamics::RampShape::Smoothstep;
    return cycle::DrivingMode::ramp(ramp_tau, shape);
  }
};

void add_driving(CLI::App* cmd, DrivingOpts& d) {
  cmd->add_option("--driving", d.driving, "Unitary-stroke driving")
      ->check(CLI::IsMember({"adiabatic", "sudden", "ramp"}))
      ->capture_default_str();
  cmd->add_option("--ramp-tau", d.ramp_tau, "Ramp duration (driving=ramp)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--ramp-shape", d.ramp_shape, "Ramp shape (driving=ramp)")
      ->check(CLI::IsMember({"smoothstep", "linear"}))
      ->capture_default_str();
}

void add_output(CLI::App* cmd, emit::Options& o) {
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", o.path,
                  "Output file (default stdout; relative paths resolve against "
                  "$QHE_OUTPUT_DIR)");
  cmd->add_option("--precision", o.precision, "Significant digits")
      ->check(CLI::Range(3, 17))
      ->capture_default_str();
}

emit::Row row_from_point(const supremacy::RatioPoint& p) {
  return {
      {"a", Value::of(p.a)},
      {"x", Value::of(p.x_opt_many)},
      {"n", Value::of(p.n_particles)},
      {"lambda", Value::of(p.lambda)},
      {"sigma_c", Value::of(p.sigma_c)},
      {"sigma_h", Value::of(p.sigma_h)},
      {"driving", Value::of(std::string(p.driving.name()))},
      {"work", Value::of(p.work_many)},
      {"efficiency", Value::of(p.efficiency_many)},
      {"power", Value::of(p.power_many)},
      {"r", Value::of(p.r)},
      {"rho", Value::of(p.rho)},
      {"q2_positive", Value::of(p.q2_positive)},
      {"engine_valid", Value::of(p.engine_valid)},
  };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-time quantum Otto engine calculator for a harmonically "
               "trapped interacting gas"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Read options from a key = value file (# comments)");
  app.allow_config_extras(false);

  int status = 0;

  // ---- cycle: one operating point, full energy ledger ----------------------
  auto* cyc = app.add_subcommand("cycle", "Evaluate one cycle operating point");
  cyc->configurable();
  struct {
    double x = 0, a = 0, beta_c = 0, omega1 = 1.0;
    double isochore_time = 1.0, adiabatic_time = 1.0;
    int n = 1;
    double lambda = 0.0;
    DrivingOpts driving;
    emit::Options out;
  } c;
  cyc->add_option("--x", c.x, "Frequency ratio omega1/omega2")->required();
  cyc->add_option("--a", c.a, "Bath ratio beta_h/beta_c")->required();
  cyc->add_option("--beta-c", c.beta_c, "Cold inverse temperature (units 1/omega1)")
      ->required();
  cyc->add_option("--n", c.n, "Particle number")->check(CLI::PositiveNumber)
      ->capture_default_str();
  cyc->add_option("--lambda", c.lambda, "Interaction strength")
      ->capture_default_str();
  cyc->add_option("--omega1", c.omega1, "Trap frequency unit")
      ->check(CLI::PositiveNumber)->capture_default_str();
  cyc->add_option("--isochore-time", c.isochore_time, "Thermalization stroke time")
      ->check(CLI::PositiveNumber)->capture_default_str();
  cyc->add_option("--adiabatic-time", c.adiabatic_time,
                  "Unitary stroke time booked under adiabatic driving")
      ->check(CLI::PositiveNumber)->capture_default_str();
  add_driving(cyc, c.driving);
  add_output(cyc, c.out);
  auto run_cycle = [&c]() {
    cycle::OttoCycleSpec spec;
    spec.omega1 = c.omega1;
    spec.omega2 = c.omega1 / c.x;
    spec.beta_c = c.beta_c;
    spec.beta_h = c.a * c.beta_c;
    spec.medium = {c.n, c.lambda};
    spec.driving = c.driving.mode();
    spec.stroke_times =
        cycle::default_stroke_times(spec.driving, c.isochore_time, c.adiabatic_time);
    spec.validate();
    const auto ledger = cycle::stroke_ledger(spec);
    const auto perf = cycle::cycle_performance(spec);
    emit::Row row{
        {"a", Value::of(spec.a())},
        {"x", Value::of(spec.x())},
        {"n", Value::of(c.n)},
        {"lambda", Value::of(c.lambda)},
        {"beta_c", Value::of(c.beta_c)},
        {"sigma_c", Value::of(thermo::sigma(spec.medium, {spec.beta_c, spec.omega1}))},
        {"sigma_h", Value::of(thermo::sigma(spec.medium, {spec.beta_h, spec.omega2}))},
        {"driving", Value::of(std::string(spec.driving.name()))},
        {"energy_a", Value::of(ledger.energy_a)},
        {"energy_b", Value::of(ledger.energy_b)},
        {"energy_c", Value::of(ledger.energy_c)},
        {"energy_d", Value::of(ledger.energy_d)},
        {"w1", Value::of(ledger.w1)},
        {"q2", Value::of(ledger.q2)},
        {"w3", Value::of(ledger.w3)},
        {"q4", Value::of(ledger.q4)},
        {"work", Value::of(perf.total_work_out)},
        {"efficiency", Value::of(perf.efficiency)},
        {"power", Value::of(perf.power)},
        {"eta_otto", Value::of(perf.eta_otto)},
        {"eta_nad_bound", Value::of(perf.eta_nad_bound)},
        {"q2_positive", Value::of(perf.q2_positive)},
        {"engine_valid", Value::of(perf.engine_valid)},
    };
    emit::write_table(c.out, {row}, /*single_record=*/true);
  };

  // ---- optimize: work-optimal point plus single-particle comparison --------
  auto* opt = app.add_subcommand("optimize", "Locate the work-optimal frequency ratio");
  opt->configurable();
  struct {
    double a = 0, sigma_c = 0, beta_c = 0, omega1 = 1.0;
    int n = 1;
    double lambda = 0.0;
    DrivingOpts driving;
    emit::Options out;
  } o;
  opt->add_option("--a", o.a, "Bath ratio beta_h/beta_c")->required();
  auto* o_sc = opt->add_option("--sigma-c", o.sigma_c,
                               "Cold-bath sigma = N beta_c omega1");
  auto* o_bc = opt->add_option("--beta-c", o.beta_c,
                               "Cold inverse temperature (units 1/omega1)");
  o_sc->excludes(o_bc);
  o_bc->excludes(o_sc);
  opt->add_option("--n", o.n, "Particle number")->check(CLI::PositiveNumber)
      ->capture_default_str();
  opt->add_option("--lambda", o.lambda, "Interaction strength")
      ->capture_default_str();
  opt->add_option("--omega1", o.omega1, "Trap frequency unit")
      ->check(CLI::PositiveNumber)->capture_default_str();
  add_driving(opt, o.driving);
  add_output(opt, o.out);
  auto run_optimize = [&o, &o_sc, &o_bc]() {
    if (!*o_sc && !*o_bc)
      throw CLI::RequiredError("one of --sigma-c or --beta-c");
    const double sigma_c = *o_sc ? o.sigma_c : o.n * o.beta_c * o.omega1;
    const auto point = supremacy::ratios_at_optima(o.a, {o.n, o.lambda}, sigma_c,
                                                   o.driving.mode(), o.omega1);
    emit::write_table(o.out, {row_from_point(point)}, /*single_record=*/true);
  };

  // ---- sweep: grid evaluation in declared row-major order ------------------
  auto* swp = app.add_subcommand("sweep", "Evaluate a grid of operating points");
  swp->configurable();
  struct {
    std::string a_grid, n_grid = "1", lambda_grid = "0", sigma_c_grid;
    std::string convention = "optima";
    double same_x = 0.0, omega1 = 1.0;
    int workers = 0;
    DrivingOpts driving;
    emit::Options out;
  } s;
  swp->add_option("--a-grid", s.a_grid, "Bath-ratio grid (lo:hi:step or list)")
      ->required();
  swp->add_option("--sigma-c-grid", s.sigma_c_grid, "Cold sigma grid")->required();
  swp->add_option("--n-grid", s.n_grid, "Particle-number grid")
      ->capture_default_str();
  swp->add_option("--lambda-grid", s.lambda_grid, "Interaction grid")
      ->capture_default_str();
  swp->add_option("--convention", s.convention,
                  "optima: each medium at its own optimum; same-x: shared ratio")
      ->check(CLI::IsMember({"optima", "same-x"}))
      ->capture_default_str();
  auto* s_x = swp->add_option("--same-x", s.same_x,
                              "Shared frequency ratio for --convention same-x");
  swp->add_option("--workers", s.workers, "Worker threads (0: machine parallelism)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  swp->add_option("--omega1", s.omega1, "Trap frequency unit")
      ->check(CLI::PositiveNumber)->capture_default_str();
  add_driving(swp, s.driving);
  add_output(swp, s.out);
  auto run_sweep = [&s, &s_x]() {
    supremacy::SweepSpec spec;
    spec.a_grid = parse_grid(s.a_grid);
    spec.n_grid = parse_int_grid(s.n_grid);
    spec.lambda_grid = parse_grid(s.lambda_grid);
    spec.sigma_c_grid = parse_grid(s.sigma_c_grid);
    spec.driving = s.driving.mode();
    spec.omega1 = s.omega1;
    spec.workers = s.workers;
    if (s.convention == "same-x") {
      if (!*s_x) throw CLI::RequiredError("--same-x (with --convention same-x)");
      spec.convention = supremacy::RatioConvention::SameResources;
      spec.same_resource_x = s.same_x;
    }
    const auto points = supremacy::sweep(spec);
    std::vector<emit::Row> rows;
    rows.reserve(points.size());
    for (const auto& p : points) rows.push_back(row_from_point(p));
    emit::write_table(s.out, rows);
  };

  // ---- validate: cross-module identity checks ------------------------------
  auto* val = app.add_subcommand("validate", "Run the invariant check suite");
  val->configurable();
  struct {
    std::string only;
    std::uint64_t seed = 12345;
    emit::Options out;
  } v;
  val->add_option("--only", v.only,
                  "Run a single check: husimi, sudden, first-law, lambda, "
                  "asymptotic, band, polynomial, thermo");
  val->add_option("--seed", v.seed, "Seed for the randomized checks")
      ->capture_default_str();
  add_output(val, v.out);
  auto run_validate = [&v, &status]() {
    const auto results = checks::run_checks(v.only, v.seed);
    std::ostringstream report;
    bool all_pass = true;
    for (const auto& r : results) {
      all_pass = all_pass && r.pass;
      char head[64];
      std::snprintf(head, sizeof head, "check %-10s %s", r.name.c_str(),
                    r.pass ? "pass" : "FAIL");
      report << head << "  " << r.detail << '\n';
    }
    report << (all_pass ? "all checks passed\n" : "CHECKS FAILED\n");
    emit::write_text(v.out, report.str());
    if (!all_pass) status = 1;
  };

  try {
    app.parse(argc, argv);
    if (*cyc) run_cycle();
    if (*opt) run_optimize();
    if (*swp) run_sweep();
    if (*val) run_validate();
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message and usage hint
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
