#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fojeffreys/frf.hpp"
#include "fojeffreys/jeffreys.hpp"

namespace fojeffreys {

/// FO: mu, lambda1, lambda2 and a shared order alpha = beta in (0, 2).
/// IO: alpha = beta = 1; mu, lambda1, lambda2 only. gamma is pinned to 1 for both.
enum class ModelClass { fractional, integer };

const char* to_string(ModelClass model_class) noexcept;
/// Accepts "FO" / "IO" (case-insensitive). Throws InvalidArgumentError otherwise.
ModelClass parse_model_class(const std::string& text);

struct FitConfig {
  ModelClass model_class = ModelClass::fractional;
  /// Heuristic guess from the data when empty (see default_initial_guess).
  std::optional<FoJeffreysParams> initial_guess;
  int max_iterations = 4000;
  double tolerance = 1e-12;
  /// Number of simplex runs; the first starts at the initial guess, the rest
  /// at seeded random perturbations of it.
  int multistart = 8;
  /// Half-width of the uniform perturbation of the restarts in transformed
  /// (log / logit) coordinates.
  double restart_spread = 1.0;
  std::uint64_t seed = 1;
  /// Restarts evaluated in parallel; results do not depend on it.
  int jobs = 1;
};

void validate(const FitConfig& config);

struct FitResult {
  FoJeffreysParams params;
  ModelClass model_class = ModelClass::fractional;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  FrfResiduals residuals;
  /// Best objective after each simplex iteration of the winning restart.
  std::vector<double> objective_trace;
};

/// Thrown by fit() when no restart converges; carries the best feasible incumbent.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, FitResult incumbent)
      : std::runtime_error(what), incumbent_(std::move(incumbent)) {}
  const FitResult& incumbent() const noexcept { return incumbent_; }

 private:
  FitResult incumbent_;
};

/// mu from the lowest-frequency magnitude (mu ~ 1 / (|G| omega)),
/// lambda2 = 1 / (2 pi f_mid) at the geometric mid frequency, lambda1 = lambda2 / 3,
/// alpha = beta = 1.5 (1 for the IO class), gamma = 1.
FoJeffreysParams default_initial_guess(const FrfDataset& data, ModelClass model_class);

/// Minimises the dB / degree objective over the model class with a
/// multistart simplex search in log / logit coordinates. lambda2 > lambda1
/// is enforced by a penalty, and the returned parameters always satisfy the
/// constrained-mode validation for the FO class.
FitResult fit(const FrfDataset& data, const FitConfig& config = {});

struct ResidualRow {
  double frequency_hz;
  double measured_db;
  double measured_deg;
  double model_db;
  double model_deg;
  double residual_db;
  double residual_deg;
};

/// Per-frequency comparison table. Phases are unwrapped; residual = model - measured.
std::vector<ResidualRow> residual_report(const FitResult& result, const FrfDataset& data);

}  // namespace fojeffreys
