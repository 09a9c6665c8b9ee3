#pragma once

// Extended fractional-order Jeffreys model of a viscoelastic actuator,
//
//   mu s^gamma (lambda2 s^alpha + 1) x(s) = (lambda1 s^beta + 1) tau(s),
//
// with differential pressure (force) tau as input and displacement x as
// output, plus the classical integer-order rheological models it extends.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "fojeffreys/errors.hpp"

namespace fojeffreys {

template <typename Scalar>
struct JeffreysParameters {
  Scalar mu;       ///< viscous gain
  Scalar lambda1;  ///< numerator (relaxation-side) coefficient, units s^beta
  Scalar lambda2;  ///< denominator (retardation-side) coefficient, units s^alpha
  Scalar alpha;    ///< order acting on the displacement
  Scalar beta;     ///< order acting on the force
  Scalar gamma;    ///< integrator order

  template <typename Other>
  JeffreysParameters<Other> cast() const {
    return {Other(mu), Other(lambda1), Other(lambda2), Other(alpha), Other(beta), Other(gamma)};
  }

  bool operator==(const JeffreysParameters&) const = default;
};

using FoJeffreysParams = JeffreysParameters<double>;

enum class ConstraintMode { constrained, unconstrained };

enum class Constraint {
  finite,
  mu_positive,
  lambda1_positive,
  lambda2_positive,
  alpha_range,
  beta_range,
  gamma_range,
  lambda2_exceeds_lambda1,
  equal_orders,
  unit_integrator,
};

struct Violation {
  Constraint constraint;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  bool has(Constraint c) const noexcept {
    for (const auto& v : violations) {
      if (v.constraint == c) return true;
    }
    return false;
  }
  std::string summary() const;
};

/// Positivity and order bounds (0, 2) always apply. The constrained mode adds
/// lambda2 > lambda1, alpha == beta and gamma == 1.
ValidationReport validate(const FoJeffreysParams& params,
                          ConstraintMode mode = ConstraintMode::constrained);

/// Throws InvalidArgumentError carrying the report summary if validation fails.
void require_valid(const FoJeffreysParams& params,
                   ConstraintMode mode = ConstraintMode::constrained);

/// (j omega)^p on the principal branch: omega^p (cos(p pi/2) + j sin(p pi/2)).
template <typename Scalar>
std::complex<Scalar> jomega_pow(Scalar omega, Scalar p) {
  using std::pow;
  return std::polar(pow(omega, p), p * std::numbers::pi_v<Scalar> / Scalar(2));
}

/// G(j omega) = x / tau at angular frequency omega (rad/s).
template <typename Scalar>
std::complex<Scalar> freq_response(const JeffreysParameters<Scalar>& p, Scalar omega) {
  if (!(omega > Scalar(0))) {
    throw DomainError("freq_response: omega must be positive");
  }
  const std::complex<Scalar> one(1);
  const auto numerator = p.lambda1 * jomega_pow(omega, p.beta) + one;
  const auto denominator =
      p.mu * jomega_pow(omega, p.gamma) * (p.lambda2 * jomega_pow(omega, p.alpha) + one);
  return numerator / denominator;
}

/// Exact equality of the time constants and of the two fractional orders,
/// in which case the model collapses to 1 / (mu s^gamma).
template <typename Scalar>
bool reduces_to_dashpot(const JeffreysParameters<Scalar>& p) {
  return p.lambda1 == p.lambda2 && p.alpha == p.beta;
}

// Classical variants -------------------------------------------------------

/// sigma = mu d(eps)/dt; x / tau = 1 / (mu s).
struct Dashpot {
  double mu;
};

/// Standard linear solid: E (s/phi + 1) eps = (s/phi_tilde + 1) sigma.
/// Physically meaningful when the retardation time 1/phi exceeds the
/// relaxation time 1/phi_tilde; phi == phi_tilde is the purely elastic limit.
struct Zener {
  double modulus;
  double phi;
  double phi_tilde;
};

/// Kelvin-Voigt element (K parallel to mu1) in series with a dashpot mu2:
/// x / tau = ((mu1 + mu2)/K s + 1) / (mu2 s (mu1/K s + 1)).
struct IntegerJeffreys {
  double stiffness;
  double mu1;
  double mu2;

  double relaxation_time() const noexcept { return (mu1 + mu2) / stiffness; }
  double retardation_time() const noexcept { return mu1 / stiffness; }
};

using ClassicalVariant = std::variant<Dashpot, Zener, IntegerJeffreys>;

/// Strict physical validity (positivity, phi_tilde > phi for the Zener solid).
ValidationReport validate(const ClassicalVariant& variant);

/// Throws InvalidArgumentError for parameters that make the response undefined
/// (non-positive gains; mu1 may be zero), DomainError for omega <= 0.
std::complex<double> classical_freq_response(const ClassicalVariant& variant, double omega);

// Bode helpers ---------------------------------------------------------------

inline double magnitude_db(std::complex<double> g) { return 20.0 * std::log10(std::abs(g)); }

inline double phase_deg(std::complex<double> g) {
  return std::arg(g) * 180.0 / std::numbers::pi;
}

inline double hz_to_rad(double hz) { return 2.0 * std::numbers::pi * hz; }

}  // namespace fojeffreys
