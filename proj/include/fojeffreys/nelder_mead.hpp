#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace fojeffreys {

template <typename Scalar>
struct NelderMeadOptions {
  int max_iterations = 5000;
  /// Converged once the simplex value spread drops below
  /// tolerance * (1 + |best|) and a fresh simplex around the best vertex
  /// improves on it by less than the same amount.
  Scalar tolerance = Scalar(1e-12);
  Scalar initial_step = Scalar(0.1);
};

template <typename Scalar>
struct NelderMeadResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar value;
  int iterations = 0;
  bool converged = false;
  /// Best value after every iteration.
  std::vector<Scalar> best_trace;
};

/// Derivative-free simplex minimisation of `f` starting from `x0`, with the
/// standard reflection / expansion / contraction / shrink coefficients
/// (1, 2, 1/2, 1/2).
template <typename Scalar, typename Function>
NelderMeadResult<Scalar> nelder_mead(Function&& f, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x0,
                                     const NelderMeadOptions<Scalar>& options = {}) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index dim = x0.size();
  const Eigen::Index vertices = dim + 1;

  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> simplex(dim, vertices);
  Vector values(vertices);
  std::vector<Eigen::Index> order(static_cast<std::size_t>(vertices));

  NelderMeadResult<Scalar> result;
  auto build = [&](const Vector& base, Scalar base_value) {
    simplex.col(0) = base;
    values[0] = base_value;
    for (Eigen::Index i = 0; i < dim; ++i) {
      simplex.col(i + 1) = base;
      simplex(i, i + 1) += options.initial_step;
      values[i + 1] = f(Vector(simplex.col(i + 1)));
    }
  };
  build(x0, f(x0));

  auto sort_vertices = [&] {
    std::iota(order.begin(), order.end(), Eigen::Index(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values[a] < values[b]; });
  };
  auto threshold = [&](Scalar best) { return options.tolerance * (Scalar(1) + std::abs(best)); };

  bool have_previous = false;
  Scalar previous_converged_best = Scalar(0);

  while (result.iterations < options.max_iterations) {
    sort_vertices();
    const Eigen::Index best = order.front();
    const Eigen::Index worst = order.back();
    const Eigen::Index second_worst = order[order.size() - 2];

    if (values[worst] - values[best] <= threshold(values[best])) {
      if (have_previous && previous_converged_best - values[best] <= threshold(values[best])) {
        result.converged = true;
        break;
      }
      have_previous = true;
      previous_converged_best = values[best];
      const Vector base = simplex.col(best);
      build(base, values[best]);
      continue;
    }
    ++result.iterations;

    Vector centroid = Vector::Zero(dim);
    for (Eigen::Index v = 0; v < vertices; ++v) {
      if (v != worst) centroid += simplex.col(v);
    }
    centroid /= Scalar(dim);

    const Vector reflected = centroid + (centroid - simplex.col(worst));
    const Scalar f_reflected = f(reflected);
    if (f_reflected < values[best]) {
      const Vector expanded = centroid + Scalar(2) * (centroid - simplex.col(worst));
      const Scalar f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        simplex.col(worst) = expanded;
        values[worst] = f_expanded;
      } else {
        simplex.col(worst) = reflected;
        values[worst] = f_reflected;
      }
    } else if (f_reflected < values[second_worst]) {
      simplex.col(worst) = reflected;
      values[worst] = f_reflected;
    } else {
      const bool outside = f_reflected < values[worst];
      const Vector contracted = outside ? Vector(centroid + Scalar(0.5) * (reflected - centroid))
                                        : Vector(centroid + Scalar(0.5) * (simplex.col(worst) - centroid));
      const Scalar f_contracted = f(contracted);
      if (f_contracted < (outside ? f_reflected : values[worst])) {
        simplex.col(worst) = contracted;
        values[worst] = f_contracted;
      } else {
        for (Eigen::Index v = 0; v < vertices; ++v) {
          if (v == best) continue;
          simplex.col(v) = simplex.col(best) + Scalar(0.5) * (simplex.col(v) - simplex.col(best));
          values[v] = f(Vector(simplex.col(v)));
        }
      }
    }
    result.best_trace.push_back(values.minCoeff());
  }

  Eigen::Index best_index = 0;
  result.value = values.minCoeff(&best_index);
  result.x = simplex.col(best_index);
  return result;
}

}  // namespace fojeffreys
