#include "qhe/thermo.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qhe::thermo {

namespace {
constexpr double kPiSqOver6 = std::numbers::pi * std::numbers::pi / 6.0;
}

double MediumSpec::kappa() const { return std::sqrt(1.0 + (n - 1) * lambda); }

void MediumSpec::validate() const {
  if (n < 1) throw std::domain_error("MediumSpec: n must be >= 1, got " + std::to_string(n));
  if (!(lambda >= 0.0))
    throw std::domain_error("MediumSpec: lambda must be >= 0, got " + std::to_string(lambda));
}

void BathSpec::validate() const {
  if (!(beta > 0.0)) throw std::domain_error("BathSpec: beta must be > 0");
  if (!(omega > 0.0)) throw std::domain_error("BathSpec: omega must be > 0");
}

double sigma(const MediumSpec& medium, const BathSpec& bath) {
  return medium.n * bath.beta * bath.omega;
}

double log_partition(const MediumSpec& medium, const BathSpec& bath) {
  medium.validate();
  bath.validate();
  const double bw = bath.beta * bath.omega;
  double ln_z = -bw * 0.5 * medium.n * (1.0 + medium.lambda * (medium.n - 1));
  for (int k = 1; k <= medium.n; ++k) {
    // ln(1 - e^{-x}) = ln(-expm1(-x)): stable at both ends.
    ln_z -= std::log(-std::expm1(-k * bw));
  }
  return ln_z;
}

EnergyDecomposition mean_energy(const MediumSpec& medium, const BathSpec& bath) {
  medium.validate();
  bath.validate();
  EnergyDecomposition e;
  e.ground = 0.5 * medium.n * bath.omega * (1.0 + medium.lambda * (medium.n - 1));
  for (int k = 1; k <= medium.n; ++k) {
    const double x = k * bath.beta * bath.omega;
    // expm1 overflows to +inf for large x; the mode contribution then
    // correctly flushes to zero.
    e.thermal += k * bath.omega / std::expm1(x);
  }
  e.total = e.ground + e.thermal;
  return e;
}

double dilog(double z) {
  if (!(z >= 0.0) || z > 1.0)
    throw std::domain_error("dilog: z must lie in [0, 1], got " + std::to_string(z));
  if (z == 0.0) return 0.0;
  if (z == 1.0) return kPiSqOver6;
  if (z > 0.5)
    return kPiSqOver6 - std::log(z) * std::log1p(-z) - dilog(1.0 - z);
  double sum = 0.0, term = z;
  for (int j = 1; j < 200; ++j) {
    const double add = term / (static_cast<double>(j) * j);
    sum += add;
    if (add < 1e-17 * sum) break;
    term *= z;
  }
  return sum;
}

double mu(double lambda, double sigma) {
  if (!(sigma > 0.0)) throw std::domain_error("mu: sigma must be > 0");
  if (!(lambda >= 0.0)) throw std::domain_error("mu: lambda must be >= 0");
  double base;
  if (sigma < 1e-4) {
    // Small-sigma Taylor form of the bracket; the closed form loses all
    // significant digits to cancellation here.
    base = 1.0 - sigma / 4.0 + sigma * sigma / 36.0;
  } else {
    const double q = std::exp(-sigma);
    base = (kPiSqOver6 + sigma * std::log1p(-q) - dilog(q)) / sigma;
  }
  return base + lambda * sigma / 2.0;
}

std::optional<RegimeTag> classify_regime(const MediumSpec& medium, const BathSpec& bath) {
  const double s = sigma(medium, bath);
  if (s <= kSigmaHighTCut) return RegimeTag{RegimeKind::HighT, s};
  if (s >= kSigmaVltFactor * medium.n) return RegimeTag{RegimeKind::VeryLowT, s};
  if (s <= medium.n / kSigmaIntMargin) return RegimeTag{RegimeKind::Intermediate, s};
  return std::nullopt;  // buffer zone: no expansion is reliable, use exact sums
}

double mean_energy_asymptotic(const MediumSpec& medium, const BathSpec& bath,
                              const RegimeTag& regime) {
  medium.validate();
  bath.validate();
  const double s = sigma(medium, bath);
  const double n = medium.n;
  const double n_over_beta = n / bath.beta;
  switch (regime.kind) {
    case RegimeKind::VeryLowT:
      if (s < kSigmaVltFactor * n)
        throw std::domain_error("mean_energy_asymptotic: sigma too small for VeryLowT");
      return 0.5 * n * bath.omega * (1.0 + medium.lambda * (n - 1));
    case RegimeKind::HighT: {
      if (s > kSigmaHighTCut)
        throw std::domain_error("mean_energy_asymptotic: sigma too large for HighT");
      const double corr = 0.5 * s * medium.g() * (medium.lambda - 0.5) +
                          s * s * (n + 1) * (2 * n + 1) / (72.0 * n * n);
      return n_over_beta * (1.0 + corr);
    }
    case RegimeKind::Intermediate:
      if (s <= kSigmaHighTCut || s > n / kSigmaIntMargin)
        throw std::domain_error("mean_energy_asymptotic: sigma outside Intermediate window");
      return n_over_beta * mu(medium.lambda, s);
    case RegimeKind::Classical:
      if (s > kSigmaHighTCut)
        throw std::domain_error("mean_energy_asymptotic: sigma too large for Classical");
      return n_over_beta;
  }
  throw std::logic_error("mean_energy_asymptotic: unknown regime kind");
}

}  // namespace qhe::thermo
