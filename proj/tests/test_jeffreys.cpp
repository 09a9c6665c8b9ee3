#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fojeffreys/jeffreys.hpp"

using namespace fojeffreys;

namespace {

const FoJeffreysParams kIdentified{171e3, 0.013, 0.047, 1.571, 1.571, 1.0};

// Straight complex arithmetic with std::pow on the principal branch.
std::complex<double> reference_response(const FoJeffreysParams& p, double omega) {
  const std::complex<double> s(0.0, omega);
  return (p.lambda1 * std::pow(s, p.beta) + 1.0) / (p.mu * std::pow(s, p.gamma) * (p.lambda2 * std::pow(s, p.alpha) + 1.0));
}

double relative_difference(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("validate examples") {
  CHECK(validate(kIdentified).ok());
  CHECK(validate(kIdentified, ConstraintMode::unconstrained).ok());

  const auto swapped = validate({1.0, 0.05, 0.01, 1.0, 1.0, 1.0});
  CHECK_FALSE(swapped.ok());
  CHECK(swapped.has(Constraint::lambda2_exceeds_lambda1));
  CHECK(swapped.violations.size() == 1);

  auto unequal = kIdentified;
  unequal.alpha = 1.2;
  unequal.beta = 1.0;
  const auto report = validate(unequal);
  CHECK(report.has(Constraint::equal_orders));
  CHECK(report.violations.size() == 1);
  CHECK(report.summary().find("alpha") != std::string::npos);
}

TEST_CASE("validate modes") {
  auto p = kIdentified;
  p.gamma = 1.1;
  CHECK(validate(p).has(Constraint::unit_integrator));
  CHECK(validate(p, ConstraintMode::unconstrained).ok());

  p = {1.0, 0.05, 0.01, 1.2, 0.8, 0.9};
  CHECK(validate(p).violations.size() == 3);
  CHECK(validate(p, ConstraintMode::unconstrained).ok());

  p = kIdentified;
  p.alpha = p.beta = 2.0;
  CHECK(validate(p, ConstraintMode::unconstrained).has(Constraint::alpha_range));
  CHECK(validate(p, ConstraintMode::unconstrained).has(Constraint::beta_range));
  p = kIdentified;
  p.gamma = 0.0;
  CHECK(validate(p, ConstraintMode::unconstrained).has(Constraint::gamma_range));

  p = kIdentified;
  p.mu = -1.0;
  p.lambda1 = 0.0;
  const auto report = validate(p, ConstraintMode::unconstrained);
  CHECK(report.has(Constraint::mu_positive));
  CHECK(report.has(Constraint::lambda1_positive));
  CHECK_FALSE(report.has(Constraint::lambda2_positive));

  p = kIdentified;
  p.lambda2 = std::nan("");
  CHECK(validate(p, ConstraintMode::unconstrained).has(Constraint::finite));

  CHECK_NOTHROW(require_valid(kIdentified));
  CHECK_THROWS_AS(require_valid({1.0, 0.05, 0.01, 1.0, 1.0, 1.0}), InvalidArgumentError);
}

TEST_CASE("jomega_pow is the principal power") {
  for (double omega : {1e-3, 0.5, 1.0, 7.0, 1e3}) {
    for (double p : {0.2, 1.0, 1.571, 1.99}) {
      const auto expected = std::pow(std::complex<double>(0.0, omega), p);
      CHECK(relative_difference(jomega_pow(omega, p), expected) <= 1e-14);
    }
  }
}

TEST_CASE("freq_response examples") {
  const FoJeffreysParams dashpot{1.0, 0.1, 0.1, 1.0, 1.0, 1.0};
  const auto g = freq_response(dashpot, 1.0);
  CHECK(std::abs(g.real()) <= 1e-15);
  CHECK(g.imag() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(phase_deg(g) == doctest::Approx(-90.0).epsilon(1e-14));

  const double low = hz_to_rad(0.005);
  const auto g_low = freq_response(kIdentified, low);
  CHECK(relative_difference(g_low, reference_response(kIdentified, low)) <= 1e-13);
  CHECK(std::abs(g_low) == doctest::Approx(1.0 / (kIdentified.mu * low)).epsilon(1e-3));
  CHECK(phase_deg(g_low) == doctest::Approx(-90.0).epsilon(1e-3));

  const double high = hz_to_rad(1.6);
  const auto g_high = freq_response(kIdentified, high);
  CHECK(relative_difference(g_high, reference_response(kIdentified, high)) <= 1e-13);
  CHECK(phase_deg(g_high) < -90.0);
}

TEST_CASE("freq_response agrees with the reference evaluation on random parameters") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> log_dist(-3.0, 3.0);
  std::uniform_real_distribution<double> order_dist(0.05, 1.95);
  for (int trial = 0; trial < 500; ++trial) {
    const FoJeffreysParams p{std::pow(10.0, log_dist(rng)), std::pow(10.0, log_dist(rng)), std::pow(10.0, log_dist(rng)),
                             order_dist(rng),             order_dist(rng),             order_dist(rng)};
    const double omega = std::pow(10.0, log_dist(rng));
    REQUIRE(relative_difference(freq_response(p, omega), reference_response(p, omega)) <= 1e-12);
  }
}

TEST_CASE("freq_response rejects non-positive frequency") {
  CHECK_THROWS_AS(freq_response(kIdentified, 0.0), DomainError);
  CHECK_THROWS_AS(freq_response(kIdentified, -1.0), DomainError);
}

TEST_CASE("freq_response long double instantiation") {
  const auto p = kIdentified.cast<long double>();
  const auto g = freq_response(p, static_cast<long double>(hz_to_rad(0.3)));
  const auto expected = freq_response(kIdentified, hz_to_rad(0.3));
  CHECK(std::abs(static_cast<double>(g.real()) - expected.real()) <= 1e-13 * std::abs(expected));
  CHECK(std::abs(static_cast<double>(g.imag()) - expected.imag()) <= 1e-13 * std::abs(expected));
}

TEST_CASE("reduces_to_dashpot examples") {
  CHECK(reduces_to_dashpot(FoJeffreysParams{1.0, 0.1, 0.1, 1.3, 1.3, 1.0}));
  CHECK_FALSE(reduces_to_dashpot(kIdentified));
  CHECK_FALSE(reduces_to_dashpot(FoJeffreysParams{1.0, 0.1, 0.1, 1.2, 1.3, 1.0}));
}

TEST_CASE("dashpot reduction holds at every frequency") {
  for (double order : {0.3, 1.0, 1.3, 1.9}) {
    const FoJeffreysParams p{250.0, 0.07, 0.07, order, order, 1.0};
    REQUIRE(reduces_to_dashpot(p));
    for (double e = -4.0; e <= 4.0; e += 0.25) {
      const double omega = std::pow(10.0, e);
      const auto g = freq_response(p, omega);
      INFO("order = " << order << ", omega = " << omega);
      CHECK(std::abs(std::abs(g) - 1.0 / (p.mu * omega)) <= 1e-12 / (p.mu * omega));
      CHECK(std::abs(phase_deg(g) + 90.0) <= 90.0 * 1e-12);
    }
  }
}

TEST_CASE("asymptotes at the identified parameters") {
  for (double omega : {1e-4, 1e4}) {
    const auto g = freq_response(kIdentified, omega);
    const auto g10 = freq_response(kIdentified, 10.0 * omega);
    INFO("omega = " << omega);
    CHECK(std::abs(phase_deg(g) + 90.0) <= 1.0);
    CHECK(std::abs((magnitude_db(g10) - magnitude_db(g)) + 20.0) <= 0.5);
  }
  // Level of the asymptotes: 1/(mu omega) below, lambda1/(lambda2 mu omega) above.
  const auto low = freq_response(kIdentified, 1e-4);
  CHECK(std::abs(magnitude_db(low) - 20.0 * std::log10(1.0 / (kIdentified.mu * 1e-4))) <= 0.5);
  const auto high = freq_response(kIdentified, 1e4);
  const double high_level = kIdentified.lambda1 / (kIdentified.lambda2 * kIdentified.mu * 1e4);
  CHECK(std::abs(magnitude_db(high) - 20.0 * std::log10(high_level)) <= 0.5);
}

TEST_CASE("lag region: phase never exceeds -90 degrees") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> order_dist(0.05, 1.95);
  std::uniform_real_distribution<double> log_dist(-3.0, 1.0);
  std::vector<FoJeffreysParams> cases{kIdentified};
  for (int i = 0; i < 30; ++i) {
    const double order = order_dist(rng);
    const double l1 = std::pow(10.0, log_dist(rng));
    const double l2 = l1 * std::pow(10.0, 0.05 + std::abs(log_dist(rng)));
    cases.push_back({3.0, l1, l2, order, order, 1.0});
  }
  for (const auto& p : cases) {
    // Phase relative to -90 degrees, which stays inside (-180, 180].
    double deepest = 0.0;
    for (double e = -3.0; e <= 3.0; e += 0.02) {
      const double excess = phase_deg(freq_response(p, std::pow(10.0, e)) * std::complex<double>(0.0, 1.0));
      REQUIRE(excess <= 0.0);
      deepest = std::min(deepest, excess);
    }
    CHECK(deepest < 0.0);
  }
}

TEST_CASE("classical_freq_response examples") {
  const auto dashpot = classical_freq_response(Dashpot{2.0}, 1.0);
  CHECK(dashpot.real() == 0.0);
  CHECK(dashpot.imag() == doctest::Approx(-0.5).epsilon(1e-15));

  for (double omega : {0.01, 1.0, 100.0}) {
    const auto elastic = classical_freq_response(Zener{3.0, 2.0, 2.0}, omega);
    CHECK(elastic.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(elastic.imag()) <= 1e-15);
  }

  // With mu1 = 0 the Kelvin-Voigt branch is a bare spring: 1/(mu2 s) + 1/K.
  const auto maxwell = classical_freq_response(IntegerJeffreys{1.0, 0.0, 1.0}, 1.0);
  CHECK(maxwell.real() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(maxwell.imag() == doctest::Approx(-1.0).epsilon(1e-15));
  for (double omega : {0.1, 2.0, 30.0}) {
    const auto expected = 1.0 / (3.0 * std::complex<double>(0.0, omega)) + 1.0 / 5.0;
    CHECK(relative_difference(classical_freq_response(IntegerJeffreys{5.0, 0.0, 3.0}, omega), expected) <= 1e-14);
  }

  // A stiff spring leaves only the series dashpot.
  const auto stiff = classical_freq_response(IntegerJeffreys{1e12, 0.0, 1.0}, 1.0);
  CHECK(relative_difference(stiff, classical_freq_response(Dashpot{1.0}, 1.0)) <= 1e-11);
}

TEST_CASE("integer Jeffreys transfer function") {
  const IntegerJeffreys j{4.0, 2.0, 6.0};
  CHECK(j.relaxation_time() == 2.0);
  CHECK(j.retardation_time() == 0.5);
  for (double omega : {0.05, 1.0, 20.0}) {
    const std::complex<double> s(0.0, omega);
    const auto expected = (2.0 * s + 1.0) / (6.0 * (0.5 * s * s + s));
    CHECK(relative_difference(classical_freq_response(j, omega), expected) <= 1e-14);
  }
  CHECK(validate(ClassicalVariant{j}).ok());
  CHECK_FALSE(validate(ClassicalVariant{IntegerJeffreys{4.0, 0.0, 6.0}}).ok());
  CHECK_THROWS_AS(classical_freq_response(IntegerJeffreys{0.0, 1.0, 1.0}, 1.0), InvalidArgumentError);
}

TEST_CASE("integer Jeffreys relaxation time exceeds retardation time") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(1e-3, 1e3);
  for (int i = 0; i < 1000; ++i) {
    const IntegerJeffreys j{dist(rng), dist(rng), dist(rng)};
    REQUIRE(j.relaxation_time() > j.retardation_time());
  }
}

TEST_CASE("Zener response is bounded") {
  for (auto [phi, phi_tilde] : {std::pair{1.0, 4.0}, std::pair{3.0, 0.5}, std::pair{2.0, 2.0}}) {
    const Zener z{7.0, phi, phi_tilde};
    const double lo = std::min(1.0, phi / phi_tilde);
    const double hi = std::max(1.0, phi / phi_tilde);
    for (double e = -4.0; e <= 4.0; e += 0.05) {
      const double scaled = std::abs(classical_freq_response(z, std::pow(10.0, e))) * z.modulus;
      REQUIRE(scaled >= lo * (1.0 - 1e-14));
      REQUIRE(scaled <= hi * (1.0 + 1e-14));
    }
  }
}

TEST_CASE("classical variant validation") {
  CHECK(validate(ClassicalVariant{Dashpot{1.0}}).ok());
  CHECK_FALSE(validate(ClassicalVariant{Dashpot{0.0}}).ok());
  CHECK(validate(ClassicalVariant{Zener{1.0, 1.0, 2.0}}).ok());
  CHECK(validate(ClassicalVariant{Zener{1.0, 2.0, 1.0}}).has(Constraint::lambda2_exceeds_lambda1));
  CHECK_THROWS_AS(classical_freq_response(Dashpot{1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(classical_freq_response(Dashpot{-1.0}, 1.0), InvalidArgumentError);
}

TEST_CASE("Bode helpers") {
  CHECK(magnitude_db({0.1, 0.0}) == doctest::Approx(-20.0).epsilon(1e-14));
  CHECK(phase_deg({0.0, -1.0}) == doctest::Approx(-90.0).epsilon(1e-14));
  CHECK(hz_to_rad(1.0) == doctest::Approx(2.0 * std::numbers::pi).epsilon(1e-15));
}
