#include "fojeffreys/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fojeffreys {

namespace {

void require_finite_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw InvalidArgumentError(std::string(what) + " must be positive and finite");
  }
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw InvalidArgumentError(std::string(what) + " must be finite");
  }
}

Eigen::Index first_non_finite(const Eigen::VectorXd& v) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (!std::isfinite(v[k])) return k;
  }
  return -1;
}

}  // namespace

TimeSeries generate_signal(const SignalSpec& spec) {
  require_finite_positive(spec.duration, "signal duration");
  require_finite_positive(spec.step, "signal step");
  const double ratio = spec.duration / spec.step;
  if (ratio < 1.0 - 1e-9) {
    throw InvalidArgumentError("signal duration must cover at least one step");
  }
  // Tolerate representation error in duration / step (1.5 / 0.5 etc.).
  const auto n = static_cast<Eigen::Index>(std::floor(ratio + 1e-9)) + 1;
  const double h = spec.step;

  Eigen::VectorXd samples = Eigen::VectorXd::Zero(n);
  std::visit(
      [&](const auto& shape) {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Impulse>) {
          require_finite(shape.area, "impulse area");
          samples[0] = shape.area / h;
        } else if constexpr (std::is_same_v<T, Step>) {
          require_finite(shape.amplitude, "step amplitude");
          samples.setConstant(shape.amplitude);
        } else if constexpr (std::is_same_v<T, Slope>) {
          require_finite(shape.rate, "slope rate");
          for (Eigen::Index k = 0; k < n; ++k) samples[k] = shape.rate * (static_cast<double>(k) * h);
        } else {
          require_finite(shape.amplitude, "sine amplitude");
          require_finite_positive(shape.frequency_hz, "sine frequency");
          const double omega = hz_to_rad(shape.frequency_hz);
          for (Eigen::Index k = 0; k < n; ++k) {
            samples[k] = shape.amplitude * std::sin(omega * (static_cast<double>(k) * h));
          }
        }
      },
      spec.shape);
  return TimeSeries(h, std::move(samples));
}

SimulationResult simulate(const FoJeffreysParams& p, const TimeSeries& input,
                          const SimulationOptions& options) {
  require_valid(p, ConstraintMode::unconstrained);
  const double h = input.step();
  const Eigen::VectorXd& tau = input.samples();
  const Eigen::Index n = tau.size();

  const Eigen::VectorXd forcing = p.lambda1 * gl_differintegral(tau, h, p.beta, options.gl) + tau;
  const Eigen::VectorXd y = gl_differintegral(forcing, h, -p.gamma, options.gl);
  if (const auto k = first_non_finite(y); k >= 0) {
    throw DivergenceError("simulate: non-finite forcing term", static_cast<std::size_t>(k));
  }

  const double reference = h * tau.cwiseAbs().sum() / p.mu;
  const double limit = reference > 0.0 ? options.divergence_factor * reference
                                       : std::numeric_limits<double>::infinity();

  const auto kept = options.gl.memory_length > 0 ? std::min(options.gl.memory_length, n) : n;
  const auto weights = gl_weights(p.alpha, kept - 1);
  const double c = p.mu * p.lambda2 * std::pow(h, -p.alpha);
  const double diagonal = c + p.mu;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double history = gl_history_sum(weights.weights, x, k, 1, options.gl.memory_length);
    x[k] = (y[k] - c * history) / diagonal;
    if (!std::isfinite(x[k])) {
      throw DivergenceError("simulate: non-finite displacement", static_cast<std::size_t>(k));
    }
    if (std::abs(x[k]) > limit) {
      throw DivergenceError("simulate: displacement exceeded divergence bound", static_cast<std::size_t>(k));
    }
  }
  return SimulationResult{input, TimeSeries(h, std::move(x)), p};
}

FinalValue impulse_final_value(const FoJeffreysParams& p, double area) {
  if (!std::isfinite(p.gamma) || !(p.gamma > 0.0)) {
    throw DomainError("impulse_final_value: gamma must be positive");
  }
  require_finite_positive(p.mu, "mu");
  require_finite(area, "impulse area");
  if (p.gamma == 1.0) return FinalValue::finite(area / p.mu);
  if (p.gamma < 1.0) return FinalValue::finite(0.0);
  return FinalValue::divergent();
}

SineGain steady_state_sine_gain(const FoJeffreysParams& p, double frequency_hz, int cycles,
                                double step) {
  require_finite_positive(frequency_hz, "frequency");
  require_finite_positive(step, "step");
  if (cycles < 4) {
    throw InvalidArgumentError("steady_state_sine_gain: at least 4 cycles are required");
  }
  const double samples_per_cycle = 1.0 / (frequency_hz * step);
  if (samples_per_cycle < 100.0) {
    throw InvalidArgumentError("steady_state_sine_gain: step too coarse, need >= 100 samples per cycle");
  }

  const double duration = static_cast<double>(cycles) / frequency_hz;
  const auto input = generate_signal({Sine{1.0, frequency_hz}, duration, step});
  const auto result = simulate(p, input);
  const Eigen::VectorXd& x = result.output.samples();

  const int kept_cycles = cycles / 2;
  const auto window =
      static_cast<Eigen::Index>(std::llround(kept_cycles * samples_per_cycle));
  const Eigen::Index first = x.size() - window;
  const Eigen::VectorXd tail = x.tail(window).array() - x.tail(window).mean();

  const double omega = hz_to_rad(frequency_hz);
  double in_phase = 0.0;
  double quadrature = 0.0;
  for (Eigen::Index i = 0; i < window; ++i) {
    const double t = result.output.time(first + i);
    in_phase += tail[i] * std::sin(omega * t);
    quadrature += tail[i] * std::cos(omega * t);
  }
  in_phase *= 2.0 / static_cast<double>(window);
  quadrature *= 2.0 / static_cast<double>(window);
  return {std::hypot(in_phase, quadrature), std::atan2(quadrature, in_phase) * 180.0 / std::numbers::pi};
}

const char* to_string(Trend trend) noexcept {
  switch (trend) {
    case Trend::decaying: return "decaying";
    case Trend::constant: return "constant";
    case Trend::growing: return "growing";
  }
  return "unknown";
}

Trend late_time_trend(const TimeSeries& x, const TrendOptions& options) {
  if (!(options.window_fraction > 0.0 && options.window_fraction <= 1.0)) {
    throw InvalidArgumentError("late_time_trend: window fraction must lie in (0, 1]");
  }
  const Eigen::Index last = x.size() - 1;
  const auto first = static_cast<Eigen::Index>(
      std::floor((1.0 - options.window_fraction) * static_cast<double>(last)));
  if (first >= last) return Trend::constant;

  const double peak = x.samples().segment(first, last - first + 1).cwiseAbs().maxCoeff();
  if (peak == 0.0) return Trend::constant;
  const double change = (std::abs(x[last]) - std::abs(x[first])) / peak;
  if (change > options.relative_tolerance) return Trend::growing;
  if (change < -options.relative_tolerance) return Trend::decaying;
  return Trend::constant;
}

}  // namespace fojeffreys
