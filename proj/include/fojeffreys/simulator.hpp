#pragma once

#include <variant>

#include "fojeffreys/grunwald_letnikov.hpp"
#include "fojeffreys/jeffreys.hpp"
#include "fojeffreys/time_series.hpp"

namespace fojeffreys {

// Input signals ---------------------------------------------------------------

/// Dirac impulse of the given area, discretised as area / h in the first sample.
struct Impulse {
  double area;
};
struct Step {
  double amplitude;
};
/// Linear ramp rate * t.
struct Slope {
  double rate;
};
struct Sine {
  double amplitude;
  double frequency_hz;
};

using SignalShape = std::variant<Impulse, Step, Slope, Sine>;

struct SignalSpec {
  SignalShape shape;
  double duration;  ///< seconds; samples cover [0, duration]
  double step;      ///< sampling interval h
};

/// Samples t_k = k h for k = 0 .. floor(duration / h).
TimeSeries generate_signal(const SignalSpec& spec);

// Time-domain solution ----------------------------------------------------------

struct SimulationOptions {
  GlOptions gl;
  /// |x_k| beyond this multiple of (h * sum|tau|) / mu is reported as divergence.
  double divergence_factor = 1e12;
};

struct SimulationResult {
  TimeSeries input;
  TimeSeries output;
  FoJeffreysParams params;
};

/// Solves mu lambda2 D^alpha x + mu x = D^-gamma (lambda1 D^beta tau + tau)
/// with zero history for x and tau. The GL sum of x enters the current step
/// only through w_0 = 1, so each step is an explicit division:
///
///   x_k = (y_k - c sum_{i>=1} w_i x_{k-i}) / (c + mu),  c = mu lambda2 h^-alpha.
///
/// Parameters must pass unconstrained validation. Throws DivergenceError with
/// the offending sample index on non-finite or runaway output.
SimulationResult simulate(const FoJeffreysParams& params, const TimeSeries& input,
                          const SimulationOptions& options = {});

// Final value of the impulse response -------------------------------------------

class FinalValue {
 public:
  static FinalValue finite(double value) { return FinalValue(false, value); }
  static FinalValue divergent() { return FinalValue(true, 0.0); }

  bool is_divergent() const noexcept { return divergent_; }
  /// Meaningless when is_divergent().
  double value() const noexcept { return value_; }

 private:
  FinalValue(bool divergent, double value) : divergent_(divergent), value_(value) {}
  bool divergent_;
  double value_;
};

/// lim x(t) for tau = area * delta(t): the late response follows
/// area / mu * D^-gamma delta = area / mu * t^(gamma - 1) / Gamma(gamma),
/// so the limit is area / mu for gamma == 1, zero below and divergent above.
FinalValue impulse_final_value(const FoJeffreysParams& params, double area);

// Sine testing -----------------------------------------------------------------

struct SineGain {
  double magnitude;
  double phase_deg;  ///< in (-180, 180]
};

/// Drives the simulator with sin(2 pi f t) for `cycles` periods, drops the
/// first half of the record and correlates the remaining whole periods with
/// sine and cosine references. Requires cycles >= 4 and at least 100 samples
/// per period.
SineGain steady_state_sine_gain(const FoJeffreysParams& params, double frequency_hz, int cycles,
                                double step);

// Late-time behaviour -----------------------------------------------------------

enum class Trend { decaying, constant, growing };

const char* to_string(Trend trend) noexcept;

struct TrendOptions {
  double window_fraction = 0.2;
  /// Change of |x| over the window, relative to max |x| in it, below which
  /// the tail counts as constant.
  double relative_tolerance = 5e-3;
};

/// Sign of the mean d|x|/dt over the trailing window of the record.
Trend late_time_trend(const TimeSeries& x, const TrendOptions& options = {});

}  // namespace fojeffreys
