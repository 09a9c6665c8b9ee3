#pragma once

#include <array>
#include <cmath>
#include <numbers>

#include "fojeffreys/errors.hpp"

namespace fojeffreys {

/// sin(pi * x) with exact argument reduction, so that values near the
/// integers keep full relative accuracy.
template <typename Scalar>
Scalar sin_pi(Scalar x) {
  using std::round;
  using std::sin;
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  // r in [-1, 1]; the subtraction is exact.
  Scalar r = x - Scalar(2) * round(x / Scalar(2));
  if (r > Scalar(0.5)) {
    r = Scalar(1) - r;
  } else if (r < Scalar(-0.5)) {
    r = Scalar(-1) - r;
  }
  return sin(pi * r);
}

template <typename Scalar>
bool is_nonpositive_integer(Scalar z) {
  using std::floor;
  return z <= Scalar(0) && z == floor(z);
}

/// Gamma function.
///
/// Lanczos approximation (g = 7, 9 terms) for z >= 1/2 and the reflection
/// formula below that. Positive integers up to 170 return the exact
/// factorial product, so gamma_fn(1) == 1 and gamma_fn(5) == 24 bit-exactly.
/// Throws PoleError at 0, -1, -2, ...
template <typename Scalar>
Scalar gamma_fn(Scalar z) {
  using std::exp;
  using std::floor;
  using std::isfinite;
  using std::log;
  using std::pow;
  using std::sqrt;

  if (!isfinite(z)) {
    throw InvalidArgumentError("gamma_fn: non-finite argument");
  }
  if (is_nonpositive_integer(z)) {
    throw PoleError("gamma_fn: pole at non-positive integer");
  }
  if (z == floor(z) && z <= Scalar(171)) {
    Scalar factorial(1);
    for (Scalar k(2); k < z; k += Scalar(1)) {
      factorial *= k;
    }
    return factorial;
  }
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  if (z < Scalar(0.5)) {
    return pi / (sin_pi(z) * gamma_fn(Scalar(1) - z));
  }

  static constexpr std::array<double, 9> kLanczos = {
      0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
      771.32342877765313,      -176.61502916214059,   12.507343278686905,
      -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
  constexpr Scalar g(7);

  const Scalar x = z - Scalar(1);
  Scalar series(kLanczos[0]);
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += Scalar(kLanczos[i]) / (x + Scalar(i));
  }
  const Scalar t = x + g + Scalar(0.5);
  // Split the power so t^(x+1/2) does not overflow before exp(-t) applies.
  const Scalar half_power = pow(t, (x + Scalar(0.5)) / Scalar(2));
  return sqrt(Scalar(2) * pi) * series * (half_power * exp(-t)) * half_power;
}

}  // namespace fojeffreys
