#pragma once

#include <Eigen/Core>
#include <cmath>
#include <utility>

#include "fojeffreys/errors.hpp"

namespace fojeffreys {

/// Uniformly sampled signal starting at t = 0. Samples before t = 0 are
/// taken to be zero by every operator in this library.
class TimeSeries {
 public:
  TimeSeries(double step, Eigen::VectorXd samples) : step_(step), samples_(std::move(samples)) {
    if (!(step_ > 0.0) || !std::isfinite(step_)) {
      throw InvalidArgumentError("TimeSeries: step must be positive and finite");
    }
    if (samples_.size() == 0) {
      throw InvalidArgumentError("TimeSeries: samples must be non-empty");
    }
    if (!samples_.allFinite()) {
      throw InvalidArgumentError("TimeSeries: samples must be finite");
    }
  }

  double step() const noexcept { return step_; }
  const Eigen::VectorXd& samples() const noexcept { return samples_; }
  Eigen::Index size() const noexcept { return samples_.size(); }
  double operator[](Eigen::Index k) const { return samples_[k]; }
  double time(Eigen::Index k) const noexcept { return static_cast<double>(k) * step_; }
  double duration() const noexcept { return time(size() - 1); }

  Eigen::VectorXd times() const {
    return Eigen::VectorXd::NullaryExpr(size(), [this](Eigen::Index k) { return time(k); });
  }

 private:
  double step_;
  Eigen::VectorXd samples_;
};

}  // namespace fojeffreys
