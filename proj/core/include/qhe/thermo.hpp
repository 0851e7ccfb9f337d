#pragma once

// Equilibrium thermodynamics of N harmonically trapped particles with an
// inverse-square pair coupling of strength lambda (lambda = 0 free bosons,
// lambda = 1 fermionized, lambda = 1/2 self-dual).  The spectrum is that of
// N oscillator modes k = 1..N on top of a lambda-shifted ground state:
//
//   ln Z = -beta (omega/2) N [1 + lambda (N-1)]
//          - sum_{k=1..N} ln(1 - e^{-beta k omega}),
//
//   E(omega, beta) = (N omega/2) [1 + lambda (N-1)]
//                    + sum_{k=1..N} k omega / (e^{beta k omega} - 1).
//
// The dimensionless scale separating temperature regimes is
// sigma = N beta omega.  Units: hbar = m = k_B = 1.

#include <optional>
#include <stdexcept>

namespace qhe::thermo {

struct MediumSpec {
  int n = 1;             // particle number, >= 1
  double lambda = 0.0;   // interaction strength, >= 0

  // (N-1)/N, the finite-size weight of the pair interaction.
  double g() const { return (n - 1.0) / n; }
  // sqrt(1 + (N-1) lambda), the stiffness of the frozen (ground-state) medium.
  double kappa() const;
  void validate() const;
};

struct BathSpec {
  double beta = 1.0;     // inverse temperature, > 0, in units of 1/omega1
  double omega = 1.0;    // trap frequency during the contact, > 0
  void validate() const;
};

double sigma(const MediumSpec& medium, const BathSpec& bath);

// ln Z; accurate for beta*omega from deep-quantum to near-classical values.
double log_partition(const MediumSpec& medium, const BathSpec& bath);

struct EnergyDecomposition {
  double ground = 0.0;    // (N omega/2)[1 + lambda (N-1)]
  double thermal = 0.0;   // sum_k k omega / (e^{beta k omega} - 1)
  double total = 0.0;
};

// Mean energy -d(ln Z)/d(beta), evaluated in closed form.
EnergyDecomposition mean_energy(const MediumSpec& medium, const BathSpec& bath);

// Dilogarithm Li2(z) for z in [0, 1]: power series for z <= 1/2, the Euler
// reflection  Li2(z) = pi^2/6 - ln z ln(1-z) - Li2(1-z)  above.
double dilog(double z);

// Average excitation per particle in the window 1 << sigma << N where the
// mode sum becomes an integral:
//   mu_lambda(sigma) = sigma^{-1} [ pi^2/6 + sigma ln(1-e^{-sigma})
//                                   - Li2(e^{-sigma}) ] + lambda sigma / 2.
// For sigma < 1e-4 the cancellation-prone bracket is replaced by its Taylor
// form 1 - sigma/4 + sigma^2/36.
double mu(double lambda, double sigma);

enum class RegimeKind { VeryLowT, HighT, Intermediate, Classical };

struct RegimeTag {
  RegimeKind kind = RegimeKind::HighT;
  double sigma = 0.0;
};

// Classification thresholds (in sigma = N beta omega).
inline constexpr double kSigmaHighTCut = 0.1;   // HighT iff sigma <= this
inline constexpr double kSigmaVltFactor = 10.0; // VeryLowT iff sigma >= N * this
inline constexpr double kSigmaIntMargin = 10.0; // Intermediate iff cut < sigma <= N / this

// Deterministic classification by sigma.  Returns nullopt in the buffer
// zones where no asymptotic expansion is trustworthy (callers should fall
// back to the exact mean_energy there).  Classical is never auto-assigned;
// it is the explicit leading-order choice N/beta valid alongside HighT.
std::optional<RegimeTag> classify_regime(const MediumSpec& medium, const BathSpec& bath);

// Closed-form regime estimates of the mean energy:
//   VeryLowT:      ground energy only,
//   HighT:         (N/beta) [1 + (sigma/2) g (lambda - 1/2)
//                            + sigma^2 (N+1)(2N+1) / (72 N^2)],
//   Intermediate:  (N/beta) mu_lambda(sigma),
//   Classical:     N/beta.
// Requesting a tag outside its validity window throws std::domain_error.
double mean_energy_asymptotic(const MediumSpec& medium, const BathSpec& bath,
                              const RegimeTag& regime);

}  // namespace qhe::thermo
