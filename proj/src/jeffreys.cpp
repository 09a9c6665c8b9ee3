#include "fojeffreys/jeffreys.hpp"

#include <sstream>

namespace fojeffreys {

namespace {

void add(ValidationReport& report, Constraint c, std::string message) {
  report.violations.push_back({c, std::move(message)});
}

bool in_open_order_range(double order) { return order > 0.0 && order < 2.0; }

}  // namespace

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) out << "; ";
    out << violations[i].message;
  }
  return out.str();
}

ValidationReport validate(const FoJeffreysParams& p, ConstraintMode mode) {
  ValidationReport report;
  for (double v : {p.mu, p.lambda1, p.lambda2, p.alpha, p.beta, p.gamma}) {
    if (!std::isfinite(v)) {
      add(report, Constraint::finite, "all parameters must be finite");
      return report;
    }
  }
  if (!(p.mu > 0.0)) add(report, Constraint::mu_positive, "mu must be positive");
  if (!(p.lambda1 > 0.0)) add(report, Constraint::lambda1_positive, "lambda1 must be positive");
  if (!(p.lambda2 > 0.0)) add(report, Constraint::lambda2_positive, "lambda2 must be positive");
  if (!in_open_order_range(p.alpha)) add(report, Constraint::alpha_range, "alpha must lie in (0, 2)");
  if (!in_open_order_range(p.beta)) add(report, Constraint::beta_range, "beta must lie in (0, 2)");
  if (!in_open_order_range(p.gamma)) add(report, Constraint::gamma_range, "gamma must lie in (0, 2)");

  if (mode == ConstraintMode::constrained) {
    if (!(p.lambda2 > p.lambda1)) {
      add(report, Constraint::lambda2_exceeds_lambda1, "lambda2 must exceed lambda1 (lambda2 <= lambda1)");
    }
    if (p.alpha != p.beta) add(report, Constraint::equal_orders, "alpha must equal beta");
    if (p.gamma != 1.0) add(report, Constraint::unit_integrator, "gamma must equal 1");
  }
  return report;
}

void require_valid(const FoJeffreysParams& params, ConstraintMode mode) {
  const auto report = validate(params, mode);
  if (!report.ok()) {
    throw InvalidArgumentError("invalid model parameters: " + report.summary());
  }
}

ValidationReport validate(const ClassicalVariant& variant) {
  ValidationReport report;
  std::visit(
      [&report](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Dashpot>) {
          if (!(v.mu > 0.0)) add(report, Constraint::mu_positive, "dashpot: mu must be positive");
        } else if constexpr (std::is_same_v<T, Zener>) {
          if (!(v.modulus > 0.0) || !(v.phi > 0.0) || !(v.phi_tilde > 0.0)) {
            add(report, Constraint::mu_positive, "zener: E, phi and phi_tilde must be positive");
          } else if (!(v.phi_tilde > v.phi)) {
            add(report, Constraint::lambda2_exceeds_lambda1,
                "zener: retardation time 1/phi must exceed relaxation time 1/phi_tilde");
          }
        } else {
          if (!(v.stiffness > 0.0) || !(v.mu1 > 0.0) || !(v.mu2 > 0.0)) {
            add(report, Constraint::mu_positive, "jeffreys: K, mu1 and mu2 must be positive");
          }
        }
      },
      variant);
  return report;
}

std::complex<double> classical_freq_response(const ClassicalVariant& variant, double omega) {
  if (!(omega > 0.0)) {
    throw DomainError("classical_freq_response: omega must be positive");
  }
  const std::complex<double> s(0.0, omega);
  return std::visit(
      [&s](const auto& v) -> std::complex<double> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Dashpot>) {
          if (!(v.mu > 0.0)) throw InvalidArgumentError("dashpot: mu must be positive");
          return 1.0 / (v.mu * s);
        } else if constexpr (std::is_same_v<T, Zener>) {
          if (!(v.modulus > 0.0) || !(v.phi > 0.0) || !(v.phi_tilde > 0.0)) {
            throw InvalidArgumentError("zener: E, phi and phi_tilde must be positive");
          }
          return (s / v.phi_tilde + 1.0) / (v.modulus * (s / v.phi + 1.0));
        } else {
          if (!(v.stiffness > 0.0) || !(v.mu2 > 0.0) || !(v.mu1 >= 0.0)) {
            throw InvalidArgumentError("jeffreys: K and mu2 must be positive, mu1 non-negative");
          }
          const auto numerator = v.relaxation_time() * s + 1.0;
          const auto denominator = v.mu2 * (v.retardation_time() * s * s + s);
          return numerator / denominator;
        }
      },
      variant);
}

}  // namespace fojeffreys
