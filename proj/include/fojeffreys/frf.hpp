#pragma once

#include <Eigen/Core>
#include <complex>

#include "fojeffreys/jeffreys.hpp"

namespace fojeffreys {

/// Frequency-response points (frequency in Hz, complex gain x / tau).
/// Frequencies are strictly increasing, gains finite and non-zero and there
/// are at least `kMinPoints` of them.
class FrfDataset {
 public:
  static constexpr Eigen::Index kMinPoints = 4;

  /// Throws ValidationError when an invariant does not hold.
  FrfDataset(Eigen::VectorXd frequency_hz, Eigen::VectorXcd gain);

  /// Model response of `params` sampled at `frequency_hz`.
  static FrfDataset from_model(const FoJeffreysParams& params, const Eigen::VectorXd& frequency_hz);

  const Eigen::VectorXd& frequency_hz() const noexcept { return frequency_hz_; }
  const Eigen::VectorXcd& gain() const noexcept { return gain_; }
  Eigen::Index size() const noexcept { return frequency_hz_.size(); }
  Eigen::VectorXd omega() const;

  Eigen::VectorXd magnitude_db() const;
  /// Phase in degrees, unwrapped along the sweep.
  Eigen::VectorXd phase_deg_unwrapped() const;

 private:
  Eigen::VectorXd frequency_hz_;
  Eigen::VectorXcd gain_;
};

/// Checks the dataset invariants without constructing one.
void validate_frf_points(const Eigen::VectorXd& frequency_hz, const Eigen::VectorXcd& gain,
                         Eigen::Index min_points = FrfDataset::kMinPoints);

/// Log-spaced frequencies from f_min to f_max inclusive.
Eigen::VectorXd log_spaced(double f_min, double f_max, Eigen::Index points);

/// Removes 360 degree jumps so consecutive samples differ by at most 180.
Eigen::VectorXd unwrap_degrees(const Eigen::VectorXd& phase_deg);

/// Wraps into (-360, 0], the storage convention for lagging responses.
double wrap_phase_nonpositive(double phase_deg);

struct FrfResiduals {
  Eigen::VectorXd db;   ///< model dB - measured dB
  Eigen::VectorXd deg;  ///< model deg - measured deg, both unwrapped

  double sum_of_squares() const { return db.squaredNorm() + deg.squaredNorm(); }
};

/// Per-point residuals of the model against measured gains. Both phase
/// sequences are unwrapped along the sweep and the model branch is shifted by
/// a whole number of turns to start next to the measurement.
FrfResiduals frf_residuals(const FoJeffreysParams& params, const Eigen::VectorXd& frequency_hz,
                           const Eigen::VectorXcd& gain);

/// Equal-weight dB / degree least-squares objective. Accepts any non-empty
/// point set; throws InvalidArgumentError on zero-magnitude or non-finite gains.
double objective(const FoJeffreysParams& params, const Eigen::VectorXd& frequency_hz,
                 const Eigen::VectorXcd& gain);

inline double objective(const FoJeffreysParams& params, const FrfDataset& data) {
  return objective(params, data.frequency_hz(), data.gain());
}

}  // namespace fojeffreys
