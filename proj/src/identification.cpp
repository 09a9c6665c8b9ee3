#include "fojeffreys/identification.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <random>
#include <thread>

#include "fojeffreys/nelder_mead.hpp"

namespace fojeffreys {

namespace {

constexpr double kPenalty = 1e10;
constexpr double kMaxOrder = 2.0;

double logit_order(double order) {
  const double p = order / kMaxOrder;
  return std::log(p / (1.0 - p));
}

double order_from_logit(double z) { return kMaxOrder / (1.0 + std::exp(-z)); }

/// Maps between model parameters and the unconstrained search coordinates
/// (log mu, log lambda1, log lambda2[, logit(alpha / 2)]).
struct Transform {
  ModelClass model_class;

  Eigen::Index dimension() const { return model_class == ModelClass::fractional ? 4 : 3; }

  Eigen::VectorXd to_search(const FoJeffreysParams& p) const {
    Eigen::VectorXd theta(dimension());
    theta[0] = std::log(p.mu);
    theta[1] = std::log(p.lambda1);
    theta[2] = std::log(p.lambda2);
    if (model_class == ModelClass::fractional) theta[3] = logit_order(p.alpha);
    return theta;
  }

  FoJeffreysParams to_params(const Eigen::VectorXd& theta) const {
    const double order = model_class == ModelClass::fractional ? order_from_logit(theta[3]) : 1.0;
    return {std::exp(theta[0]), std::exp(theta[1]), std::exp(theta[2]), order, order, 1.0};
  }
};

struct RestartOutcome {
  FoJeffreysParams params{};
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  bool feasible = false;
  std::vector<double> trace;
};

double penalized_objective(const Transform& transform, const Eigen::VectorXd& theta, const FrfDataset& data) {
  const auto p = transform.to_params(theta);
  // Positivity is structural; what remains is lambda2 > lambda1 and orders
  // strictly inside (0, 2) after the logit saturates.
  if (!validate(p, ConstraintMode::constrained).ok()) {
    const double gap = std::max(0.0, theta[1] - theta[2]);
    return kPenalty * (1.0 + gap);
  }
  const double value = objective(p, data);
  return std::isfinite(value) ? value : kPenalty;
}

Eigen::VectorXd make_feasible_start(Eigen::VectorXd theta) {
  if (theta[1] > theta[2]) {
    std::swap(theta[1], theta[2]);
  }
  if (theta[1] == theta[2]) {
    theta[1] -= 0.1;
  }
  return theta;
}

RestartOutcome run_restart(const FrfDataset& data, const FitConfig& config, const Transform& transform,
                           const Eigen::VectorXd& start, int restart) {
  Eigen::VectorXd theta = start;
  if (restart > 0) {
    std::mt19937_64 rng(config.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(restart));
    std::uniform_real_distribution<double> offset(-config.restart_spread, config.restart_spread);
    for (Eigen::Index i = 0; i < theta.size(); ++i) theta[i] += offset(rng);
    theta = make_feasible_start(theta);
  }

  NelderMeadOptions<double> options;
  options.max_iterations = config.max_iterations;
  options.tolerance = config.tolerance;
  const auto nm = nelder_mead<double>(
      [&](const Eigen::VectorXd& x) { return penalized_objective(transform, x, data); }, theta, options);

  RestartOutcome outcome;
  outcome.params = transform.to_params(nm.x);
  outcome.feasible = validate(outcome.params, ConstraintMode::constrained).ok();
  outcome.objective = outcome.feasible ? objective(outcome.params, data) : nm.value;
  outcome.iterations = nm.iterations;
  outcome.converged = nm.converged && outcome.feasible;
  outcome.trace = nm.best_trace;
  return outcome;
}

bool better(const RestartOutcome& a, const RestartOutcome& b) {
  if (a.feasible != b.feasible) return a.feasible;
  return a.objective < b.objective;
}

}  // namespace

const char* to_string(ModelClass model_class) noexcept {
  return model_class == ModelClass::fractional ? "FO" : "IO";
}

ModelClass parse_model_class(const std::string& text) {
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "FO") return ModelClass::fractional;
  if (upper == "IO") return ModelClass::integer;
  throw InvalidArgumentError("model class must be FO or IO, got '" + text + "'");
}

void validate(const FitConfig& config) {
  if (!(config.tolerance > 0.0)) throw InvalidArgumentError("fit: tolerance must be positive");
  if (config.max_iterations < 1) throw InvalidArgumentError("fit: max_iterations must be at least 1");
  if (config.multistart < 1) throw InvalidArgumentError("fit: multistart must be at least 1");
  if (config.jobs < 1) throw InvalidArgumentError("fit: jobs must be at least 1");
  if (!(config.restart_spread >= 0.0)) throw InvalidArgumentError("fit: restart spread must be non-negative");
  if (config.initial_guess) {
    FoJeffreysParams guess = *config.initial_guess;
    if (config.model_class == ModelClass::integer) guess.alpha = guess.beta = 1.0;
    guess.beta = guess.alpha;
    guess.gamma = 1.0;
    require_valid(guess, ConstraintMode::constrained);
  }
}

FoJeffreysParams default_initial_guess(const FrfDataset& data, ModelClass model_class) {
  const double omega0 = hz_to_rad(data.frequency_hz()[0]);
  const double mu = 1.0 / (std::abs(data.gain()[0]) * omega0);
  const double f_mid = std::sqrt(data.frequency_hz()[0] * data.frequency_hz()[data.size() - 1]);
  const double lambda2 = 1.0 / hz_to_rad(f_mid);
  const double order = model_class == ModelClass::fractional ? 1.5 : 1.0;
  return {mu, lambda2 / 3.0, lambda2, order, order, 1.0};
}

FitResult fit(const FrfDataset& data, const FitConfig& config) {
  validate(config);
  const Transform transform{config.model_class};

  FoJeffreysParams guess = config.initial_guess.value_or(default_initial_guess(data, config.model_class));
  if (config.model_class == ModelClass::integer) guess.alpha = 1.0;
  guess.beta = guess.alpha;
  guess.gamma = 1.0;
  const Eigen::VectorXd start = transform.to_search(guess);

  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(config.multistart));
  const int workers = std::min(config.jobs, config.multistart);
  if (workers <= 1) {
    for (int r = 0; r < config.multistart; ++r) {
      outcomes[static_cast<std::size_t>(r)] = run_restart(data, config, transform, start, r);
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int r = next++; r < config.multistart; r = next++) {
          outcomes[static_cast<std::size_t>(r)] = run_restart(data, config, transform, start, r);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Deterministic merge: best converged restart, lowest index on ties.
  const RestartOutcome* winner = nullptr;
  const RestartOutcome* incumbent = &outcomes.front();
  for (const auto& o : outcomes) {
    if (better(o, *incumbent)) incumbent = &o;
    if (o.converged && (winner == nullptr || o.objective < winner->objective)) winner = &o;
  }

  const RestartOutcome& chosen = winner != nullptr ? *winner : *incumbent;
  FitResult result;
  result.params = chosen.params;
  result.model_class = config.model_class;
  result.objective = chosen.objective;
  result.iterations = chosen.iterations;
  result.converged = winner != nullptr;
  result.residuals = frf_residuals(chosen.params, data.frequency_hz(), data.gain());
  result.objective_trace = chosen.trace;

  if (winner == nullptr) {
    throw NonConvergenceError("fit: no restart converged within " + std::to_string(config.max_iterations) +
                                  " iterations",
                              std::move(result));
  }
  return result;
}

std::vector<ResidualRow> residual_report(const FitResult& result, const FrfDataset& data) {
  const auto residuals = frf_residuals(result.params, data.frequency_hz(), data.gain());
  const Eigen::VectorXd measured_db = data.magnitude_db();
  const Eigen::VectorXd measured_deg = data.phase_deg_unwrapped();
  std::vector<ResidualRow> rows;
  rows.reserve(static_cast<std::size_t>(data.size()));
  for (Eigen::Index k = 0; k < data.size(); ++k) {
    rows.push_back({data.frequency_hz()[k], measured_db[k], measured_deg[k], measured_db[k] + residuals.db[k],
                    measured_deg[k] + residuals.deg[k], residuals.db[k], residuals.deg[k]});
  }
  return rows;
}

}  // namespace fojeffreys
