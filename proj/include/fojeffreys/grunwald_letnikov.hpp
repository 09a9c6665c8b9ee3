#pragma once

// Grunwald-Letnikov differintegration of uniformly sampled signals.
//
// For a signal f sampled at t_k = k h with zero history before t = 0,
//
//   D^a f (t_k) ~= h^(-a) * sum_{i=0..k} w_i^(a) f_{k-i},
//   w_i^(a) = (-1)^i binom(a, i),
//
// which differentiates for a > 0, integrates for a < 0 and is the identity
// for a = 0. The approximation is first order in h.

#include <Eigen/Core>
#include <algorithm>
#include <cmath>

#include "fojeffreys/errors.hpp"
#include "fojeffreys/gamma.hpp"
#include "fojeffreys/time_series.hpp"

namespace fojeffreys {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Coefficients w_0..w_n of the GL sum for one order.
template <typename Scalar>
struct GlWeightTable {
  Scalar order;
  VectorX<Scalar> weights;

  Eigen::Index size() const noexcept { return weights.size(); }
  Scalar operator[](Eigen::Index i) const { return weights[i]; }
};

/// w_0 = 1, w_i = (1 - (alpha + 1) / i) w_{i-1}; returns n + 1 weights.
template <typename Scalar>
GlWeightTable<Scalar> gl_weights(Scalar alpha, Eigen::Index n) {
  using std::isfinite;
  if (!isfinite(alpha)) {
    throw InvalidArgumentError("gl_weights: order must be finite");
  }
  if (n < 0) {
    throw InvalidArgumentError("gl_weights: n must be non-negative");
  }
  GlWeightTable<Scalar> table{alpha, VectorX<Scalar>(n + 1)};
  table.weights[0] = Scalar(1);
  for (Eigen::Index i = 1; i <= n; ++i) {
    table.weights[i] = (Scalar(1) - (alpha + Scalar(1)) / Scalar(i)) * table.weights[i - 1];
  }
  return table;
}

struct GlOptions {
  /// Keep only the most recent `memory_length` terms of each sum.
  /// Zero selects the exact full-history sum.
  Eigen::Index memory_length = 0;
};

/// sum_{i=first..m-1} w_i x_{k-i} with m = min(k + 1, memory); the
/// convolution kernel shared by the differintegral and the implicit solver.
template <typename DerivedW, typename DerivedX>
typename DerivedX::Scalar gl_history_sum(const Eigen::MatrixBase<DerivedW>& weights,
                                         const Eigen::MatrixBase<DerivedX>& x, Eigen::Index k,
                                         Eigen::Index first, Eigen::Index memory_length = 0) {
  Eigen::Index terms = k + 1;
  if (memory_length > 0) {
    terms = std::min(terms, memory_length);
  }
  const Eigen::Index count = terms - first;
  if (count <= 0) {
    return typename DerivedX::Scalar(0);
  }
  // x_{k-first}, x_{k-first-1}, ..., x_{k-terms+1}
  return weights.segment(first, count).dot(x.segment(k - terms + 1, count).reverse());
}

/// GL differintegral of order `alpha` of the samples in `f` taken at spacing `step`.
template <typename Derived>
VectorX<typename Derived::Scalar> gl_differintegral(const Eigen::MatrixBase<Derived>& f,
                                                    typename Derived::Scalar step,
                                                    typename Derived::Scalar alpha,
                                                    GlOptions options = {}) {
  using Scalar = typename Derived::Scalar;
  using std::pow;
  if (f.size() == 0) {
    throw InvalidArgumentError("gl_differintegral: empty input");
  }
  if (!(step > Scalar(0))) {
    throw InvalidArgumentError("gl_differintegral: step must be positive");
  }
  if (alpha == Scalar(0)) {
    return f;
  }
  const Eigen::Index n = f.size();
  const Eigen::Index kept = options.memory_length > 0 ? std::min(options.memory_length, n) : n;
  const auto table = gl_weights(alpha, kept - 1);
  const Scalar scale = pow(step, -alpha);

  VectorX<Scalar> out(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out[k] = scale * gl_history_sum(table.weights, f, k, 0, options.memory_length);
  }
  return out;
}

inline TimeSeries gl_differintegral(const TimeSeries& f, double alpha, GlOptions options = {}) {
  return TimeSeries(f.step(), gl_differintegral(f.samples(), f.step(), alpha, options));
}

/// Closed form of D^eta applied to a Dirac impulse at t = 0:
/// t^(-eta - 1) / Gamma(-eta).
template <typename Scalar>
Scalar dirac_differintegral_analytic(Scalar eta, Scalar t) {
  using std::isfinite;
  using std::pow;
  if (!isfinite(eta) || !isfinite(t)) {
    throw InvalidArgumentError("dirac_differintegral_analytic: non-finite argument");
  }
  if (!(t > Scalar(0))) {
    throw DomainError("dirac_differintegral_analytic: t must be positive");
  }
  if (is_nonpositive_integer(-eta)) {
    throw PoleError("dirac_differintegral_analytic: Gamma(-eta) has a pole for eta = 0, 1, 2, ...");
  }
  return pow(t, -eta - Scalar(1)) / gamma_fn(-eta);
}

}  // namespace fojeffreys
