#include "fojeffreys/frf.hpp"

#include <cmath>

#include "fojeffreys/errors.hpp"

namespace fojeffreys {

void validate_frf_points(const Eigen::VectorXd& frequency_hz, const Eigen::VectorXcd& gain,
                         Eigen::Index min_points) {
  if (frequency_hz.size() != gain.size()) {
    throw ValidationError("FRF: frequency and gain counts differ");
  }
  if (frequency_hz.size() < min_points) {
    throw ValidationError("FRF: at least " + std::to_string(min_points) + " points are required, got " +
                          std::to_string(frequency_hz.size()));
  }
  for (Eigen::Index k = 0; k < frequency_hz.size(); ++k) {
    if (!std::isfinite(frequency_hz[k]) || !(frequency_hz[k] > 0.0)) {
      throw ValidationError("FRF: frequencies must be positive and finite");
    }
    if (k > 0 && !(frequency_hz[k] > frequency_hz[k - 1])) {
      throw ValidationError("FRF: frequencies must be strictly increasing (point " + std::to_string(k) + ")");
    }
    if (!std::isfinite(gain[k].real()) || !std::isfinite(gain[k].imag()) || std::abs(gain[k]) == 0.0) {
      throw ValidationError("FRF: gains must be finite and non-zero (point " + std::to_string(k) + ")");
    }
  }
}

FrfDataset::FrfDataset(Eigen::VectorXd frequency_hz, Eigen::VectorXcd gain)
    : frequency_hz_(std::move(frequency_hz)), gain_(std::move(gain)) {
  validate_frf_points(frequency_hz_, gain_);
}

FrfDataset FrfDataset::from_model(const FoJeffreysParams& params, const Eigen::VectorXd& frequency_hz) {
  Eigen::VectorXcd gain(frequency_hz.size());
  for (Eigen::Index k = 0; k < frequency_hz.size(); ++k) {
    gain[k] = freq_response(params, hz_to_rad(frequency_hz[k]));
  }
  return FrfDataset(frequency_hz, std::move(gain));
}

Eigen::VectorXd FrfDataset::omega() const { return frequency_hz_ * (2.0 * std::numbers::pi); }

Eigen::VectorXd FrfDataset::magnitude_db() const {
  return gain_.unaryExpr([](std::complex<double> g) { return fojeffreys::magnitude_db(g); }).real();
}

Eigen::VectorXd FrfDataset::phase_deg_unwrapped() const {
  return unwrap_degrees(gain_.unaryExpr([](std::complex<double> g) { return phase_deg(g); }).real());
}

Eigen::VectorXd log_spaced(double f_min, double f_max, Eigen::Index points) {
  if (!(f_min > 0.0) || !(f_max > f_min) || !std::isfinite(f_max) || points < 2) {
    throw InvalidArgumentError("log_spaced: need 0 < f_min < f_max and at least 2 points");
  }
  Eigen::VectorXd f = Eigen::VectorXd::LinSpaced(points, std::log10(f_min), std::log10(f_max));
  f = f.unaryExpr([](double e) { return std::pow(10.0, e); });
  // Pin the end points exactly.
  f[0] = f_min;
  f[points - 1] = f_max;
  return f;
}

Eigen::VectorXd unwrap_degrees(const Eigen::VectorXd& phase_deg) {
  Eigen::VectorXd out = phase_deg;
  double offset = 0.0;
  for (Eigen::Index k = 1; k < out.size(); ++k) {
    const double jump = phase_deg[k] - phase_deg[k - 1];
    offset -= 360.0 * std::round(jump / 360.0);
    out[k] = phase_deg[k] + offset;
  }
  return out;
}

double wrap_phase_nonpositive(double phase_deg) {
  double wrapped = std::fmod(phase_deg, 360.0);
  if (wrapped > 0.0) wrapped -= 360.0;
  if (wrapped <= -360.0) wrapped += 360.0;
  return wrapped;
}

FrfResiduals frf_residuals(const FoJeffreysParams& params, const Eigen::VectorXd& frequency_hz,
                           const Eigen::VectorXcd& gain) {
  const Eigen::Index n = frequency_hz.size();
  if (n == 0 || gain.size() != n) {
    throw InvalidArgumentError("objective: need matching, non-empty frequency and gain vectors");
  }
  Eigen::VectorXd model_db(n), model_deg(n), data_db(n), data_deg(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto measured = gain[k];
    if (!std::isfinite(measured.real()) || !std::isfinite(measured.imag()) || std::abs(measured) == 0.0) {
      throw InvalidArgumentError("objective: measured gain must be finite and non-zero (point " +
                                 std::to_string(k) + ")");
    }
    const auto model = freq_response(params, hz_to_rad(frequency_hz[k]));
    model_db[k] = magnitude_db(model);
    model_deg[k] = phase_deg(model);
    data_db[k] = magnitude_db(measured);
    data_deg[k] = phase_deg(measured);
  }
  model_deg = unwrap_degrees(model_deg);
  data_deg = unwrap_degrees(data_deg);
  model_deg.array() += 360.0 * std::round((data_deg[0] - model_deg[0]) / 360.0);
  return {model_db - data_db, model_deg - data_deg};
}

double objective(const FoJeffreysParams& params, const Eigen::VectorXd& frequency_hz,
                 const Eigen::VectorXcd& gain) {
  return frf_residuals(params, frequency_hz, gain).sum_of_squares();
}

}  // namespace fojeffreys
