// fojeffreys: frequency response, time-domain simulation and FRF fitting of
// the fractional-order Jeffreys actuator model.
//
// Exit codes: 0 success, 2 usage or validation error, 3 numerical divergence,
// 4 fit did not converge (the incumbent report is still written).

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fojeffreys/dataio.hpp"
#include "fojeffreys/frf.hpp"
#include "fojeffreys/identification.hpp"
#include "fojeffreys/jeffreys.hpp"
#include "fojeffreys/simulator.hpp"

namespace {

using namespace fojeffreys;

enum ExitCode : int { kSuccess = 0, kFailure = 1, kUsage = 2, kDivergence = 3, kNonConvergence = 4 };

struct ParamFlags {
  std::string file;
  std::optional<double> mu, lambda1, lambda2, alpha, beta, gamma;
  bool unconstrained = false;

  void attach(CLI::App& cmd) {
    cmd.add_option("--params", file, "Parameter file (key,value lines; fit reports are accepted)");
    cmd.add_option("--mu", mu, "Viscous gain mu");
    cmd.add_option("--lambda1", lambda1, "Numerator coefficient lambda1");
    cmd.add_option("--lambda2", lambda2, "Denominator coefficient lambda2");
    cmd.add_option("--alpha", alpha, "Displacement-side order alpha");
    cmd.add_option("--beta", beta, "Force-side order beta (defaults to alpha)");
    cmd.add_option("--gamma", gamma, "Integrator order gamma (defaults to 1)");
    cmd.add_flag("--unconstrained", unconstrained,
                 "Skip lambda2 > lambda1, alpha == beta and gamma == 1 checks");
  }

  FoJeffreysParams resolve() const {
    std::optional<FoJeffreysParams> base;
    if (!file.empty()) base = read_params(file);
    auto pick = [](const std::optional<double>& flag, std::optional<double> fallback, const char* name) {
      if (flag) return *flag;
      if (fallback) return *fallback;
      throw InvalidArgumentError(std::string("missing parameter --") + name + " (or --params)");
    };
    FoJeffreysParams p{};
    p.mu = pick(mu, base ? std::optional(base->mu) : std::nullopt, "mu");
    p.lambda1 = pick(lambda1, base ? std::optional(base->lambda1) : std::nullopt, "lambda1");
    p.lambda2 = pick(lambda2, base ? std::optional(base->lambda2) : std::nullopt, "lambda2");
    p.alpha = pick(alpha, base ? std::optional(base->alpha) : std::nullopt, "alpha");
    p.beta = beta ? *beta : (base && !alpha ? base->beta : p.alpha);
    p.gamma = gamma ? *gamma : (base ? base->gamma : 1.0);
    return p;
  }

  ConstraintMode mode() const { return unconstrained ? ConstraintMode::unconstrained : ConstraintMode::constrained; }
};

// freqresp -------------------------------------------------------------------------

struct FreqrespCommand {
  ParamFlags params;
  double f_min = 0.005;
  double f_max = 1.6;
  int points = 20;
  std::string out;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("freqresp", "Evaluate the model frequency response on a log-spaced sweep");
    params.attach(*cmd);
    cmd->add_option("--f-min", f_min, "Lowest frequency in Hz")->capture_default_str();
    cmd->add_option("--f-max", f_max, "Highest frequency in Hz")->capture_default_str();
    cmd->add_option("--points", points, "Number of sweep points (>= 2)")->capture_default_str();
    cmd->add_option("-o,--out", out, "Output FRF file")->required();
    cmd->callback([this] { run(); });
  }

  void run() const {
    if (!(f_min > 0.0) || !(f_max > f_min) || points < 2) {
      throw InvalidArgumentError("freqresp: need 0 < --f-min < --f-max and --points >= 2");
    }
    const auto p = params.resolve();
    require_valid(p, params.mode());
    const Eigen::VectorXd f = log_spaced(f_min, f_max, points);
    Eigen::VectorXcd g(f.size());
    for (Eigen::Index k = 0; k < f.size(); ++k) g[k] = freq_response(p, hz_to_rad(f[k]));
    write_frf_sweep(out, f, g);
  }
};

// simulate -------------------------------------------------------------------------

SignalShape make_shape(const std::string& kind, double amplitude, double frequency_hz) {
  if (kind == "impulse") return Impulse{amplitude};
  if (kind == "step") return Step{amplitude};
  if (kind == "slope") return Slope{amplitude};
  if (kind == "sine") return Sine{amplitude, frequency_hz};
  throw InvalidArgumentError("unknown signal '" + kind + "'");
}

struct SimulateCommand {
  ParamFlags params;
  std::string signal = "impulse";
  double amplitude = 1.0;
  double frequency_hz = 1.0;
  double duration = 2.0;
  double step = 1e-3;
  std::string out;
  std::string tau_out;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("simulate", "Simulate the time response to an impulse, step, slope or sine");
    params.attach(*cmd);
    cmd->add_option("--signal", signal, "Input shape")
        ->check(CLI::IsMember({"impulse", "step", "slope", "sine"}))
        ->capture_default_str();
    cmd->add_option("--amplitude", amplitude,
                    "Impulse area, step amplitude, slope rate (per second) or sine amplitude")
        ->capture_default_str();
    cmd->add_option("--frequency", frequency_hz, "Sine frequency in Hz")->capture_default_str();
    cmd->add_option("--duration", duration, "Simulated time in seconds")->capture_default_str();
    cmd->add_option("--step", step, "Sampling interval h in seconds")->capture_default_str();
    cmd->add_option("-o,--out", out, "Output displacement file")->required();
    cmd->add_option("--tau-out", tau_out, "Output file for the input signal");
    cmd->callback([this] { run(); });
  }

  void run() const {
    const auto p = params.resolve();
    require_valid(p, params.mode());
    const auto input = generate_signal({make_shape(signal, amplitude, frequency_hz), duration, step});
    const auto result = simulate(p, input);
    write_timeseries(out, result.output, "x");
    if (!tau_out.empty()) write_timeseries(tau_out, result.input, "tau");
    if (signal == "impulse") {
      std::cerr << "late-time trend: " << to_string(late_time_trend(result.output)) << '\n';
    }
  }
};

// fit -------------------------------------------------------------------------------

struct FitCommand {
  std::string frf;
  std::string model = "FO";
  std::string report;
  std::optional<double> mu, lambda1, lambda2, alpha;
  FitConfig config;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("fit", "Least-squares fit of model parameters to FRF data");
    cmd->add_option("--frf", frf, "Measured FRF file")->required();
    cmd->add_option("--model", model, "Model class FO or IO")->capture_default_str();
    cmd->add_option("--report", report, "Output fit report")->required();
    cmd->add_option("--mu", mu, "Initial guess for mu");
    cmd->add_option("--lambda1", lambda1, "Initial guess for lambda1");
    cmd->add_option("--lambda2", lambda2, "Initial guess for lambda2");
    cmd->add_option("--alpha", alpha, "Initial guess for alpha = beta");
    cmd->add_option("--multistart", config.multistart, "Number of simplex restarts")->capture_default_str();
    cmd->add_option("--seed", config.seed, "Seed of the restart perturbations")->capture_default_str();
    cmd->add_option("--jobs", config.jobs, "Restarts run in parallel")->capture_default_str();
    cmd->add_option("--max-iterations", config.max_iterations, "Simplex iterations per restart")
        ->capture_default_str();
    cmd->add_option("--tolerance", config.tolerance, "Objective improvement threshold")->capture_default_str();
    cmd->add_option("--spread", config.restart_spread, "Restart perturbation half-width (log units)")
        ->capture_default_str();
    cmd->callback([this] { run(); });
  }

  static nlohmann::ordered_json summary(const FitResult& r) {
    nlohmann::ordered_json j;
    j["model_class"] = to_string(r.model_class);
    j["mu"] = r.params.mu;
    j["lambda1"] = r.params.lambda1;
    j["lambda2"] = r.params.lambda2;
    j["alpha"] = r.params.alpha;
    j["beta"] = r.params.beta;
    j["gamma"] = r.params.gamma;
    j["objective"] = r.objective;
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    return j;
  }

  void run() {
    config.model_class = parse_model_class(model);
    const auto data = read_frf(frf);
    if (mu || lambda1 || lambda2 || alpha) {
      auto guess = default_initial_guess(data, config.model_class);
      if (mu) guess.mu = *mu;
      if (lambda1) guess.lambda1 = *lambda1;
      if (lambda2) guess.lambda2 = *lambda2;
      if (alpha) guess.alpha = guess.beta = *alpha;
      config.initial_guess = guess;
    }
    try {
      const auto result = fit(data, config);
      write_fit_report(report, result, data);
      std::cout << summary(result).dump() << std::endl;
    } catch (const NonConvergenceError& e) {
      write_fit_report(report, e.incumbent(), data);
      std::cout << summary(e.incumbent()).dump() << std::endl;
      throw;
    }
  }
};

// impulse-study ----------------------------------------------------------------------

struct ImpulseStudyCommand {
  ParamFlags params;
  std::vector<double> gammas{0.9, 1.0, 1.1};
  double area = 1.0;
  double duration = 10.0;
  double step = 1e-3;
  std::string out;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("impulse-study", "Impulse responses for a list of integrator orders");
    params.attach(*cmd);
    cmd->add_option("--gammas", gammas, "Integrator orders, each in (0, 2)")->delimiter(',')->capture_default_str();
    cmd->add_option("--area", area, "Impulse area B")->capture_default_str();
    cmd->add_option("--duration", duration, "Simulated time in seconds")->capture_default_str();
    cmd->add_option("--step", step, "Sampling interval h in seconds")->capture_default_str();
    cmd->add_option("-o,--out", out, "Output file, one column per gamma")->required();
    cmd->callback([this] { run(); });
  }

  void run() const {
    if (gammas.empty()) throw InvalidArgumentError("impulse-study: --gammas is empty");
    for (double g : gammas) {
      if (!(g > 0.0 && g < 2.0)) {
        throw InvalidArgumentError("impulse-study: gamma " + format_number(g) + " is outside (0, 2)");
      }
    }
    auto base = params.resolve();
    if (!params.gamma) base.gamma = 1.0;
    require_valid(base, params.mode());

    const auto input = generate_signal({Impulse{area}, duration, step});
    TimeSeriesTable table{input.step(), {}, Eigen::MatrixXd(input.size(), static_cast<Eigen::Index>(gammas.size()))};
    for (std::size_t c = 0; c < gammas.size(); ++c) {
      auto p = base;
      p.gamma = gammas[c];
      const auto result = simulate(p, input);
      table.names.push_back("gamma_" + format_number(gammas[c]));
      table.values.col(static_cast<Eigen::Index>(c)) = result.output.samples();
      std::cerr << "gamma " << format_number(gammas[c]) << ": " << to_string(late_time_trend(result.output))
                << '\n';
    }
    write_timeseries_table(out, table);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-order Jeffreys model toolkit"};
  app.require_subcommand(1);

  FreqrespCommand freqresp;
  SimulateCommand simulate_cmd;
  FitCommand fit_cmd;
  ImpulseStudyCommand impulse_study;
  freqresp.attach(app);
  simulate_cmd.attach(app);
  fit_cmd.attach(app);
  impulse_study.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const DivergenceError& e) {
    std::cerr << "error: numerical divergence: " << e.what() << '\n';
    return kDivergence;
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const InvalidArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const fojeffreys::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kSuccess;
}
