#include <fstream>
#include <iostream>
#include <memory>

#include <CLI11.hpp>

#include "commands.hpp"
#include "retrialq/errors.hpp"

namespace {

using retrialq::cli::ExperimentConfig;

// Exit codes: 0 ok, 2 config error, 3 numerical guard tripped,
// 4 validation failure.
constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kNumericalGuard = 3;
constexpr int kValidationFailure = 4;

void add_model_flags(CLI::App* cmd, ExperimentConfig& config) {
  cmd->add_option("--model", config.model_spec,
                  "model spec: \"family=burr b=2 v=3 w=1\"; families: burr "
                  "(b,v,w), lomax (b,v), hallweiss (v,w), studentt (v), "
                  "exponential (nu)");
  cmd->add_option("--family", config.model_spec,
                  "alias of --model (same grammar)");
  cmd->add_option("--lambda", config.lambda, "arrival rate (> 0)");
  cmd->add_option("--mu", config.mu_text, "retrial rate (> 0) or 'inf'");
}

void add_grid_flags(CLI::App* cmd, ExperimentConfig& config) {
  cmd->add_option("--j", config.j_list, "explicit j values (repeatable)");
  cmd->add_option("--jmin", config.jmin, "log-spaced grid start");
  cmd->add_option("--jmax", config.jmax, "log-spaced grid end");
  cmd->add_option("--jcount", config.jcount, "log-spaced grid size");
}

int run(int argc, char** argv) {
  CLI::App app{
      "retrialq: stationary queue-length analysis of the M/G/1 retrial queue "
      "with heavy-tailed service times, via closed-form tail expansions, "
      "exact generating-function series and discrete-event simulation"};
  app.require_subcommand(1);
  ExperimentConfig config;
  std::string out_path = "-";

  auto* asym = app.add_subcommand(
      "asym", "two-term tail expansion rows (j, first, second, delta)");
  add_model_flags(asym, config);
  add_grid_flags(asym, config);
  asym->add_option("--out", out_path, "output CSV path or - for stdout");

  auto* pmf = app.add_subcommand(
      "pmf", "exact series pmf/cdf CSV for lmu, linf or rmu");
  add_model_flags(pmf, config);
  pmf->add_option("--order", config.order, "series truncation order");
  pmf->add_option("--target", config.target, "lmu | linf | rmu");
  pmf->add_option("--out", out_path, "output CSV path or - for stdout");

  auto* simulate = app.add_subcommand(
      "simulate", "discrete-event simulation estimate of the count law");
  add_model_flags(simulate, config);
  simulate->add_option("--horizon", config.horizon, "simulated time");
  simulate->add_option("--warmup", config.warmup,
                       "discarded prefix (default horizon/10)");
  simulate->add_option("--batches", config.batches, "batch-means batches");
  simulate->add_option("--seed", config.seed, "random seed");
  simulate->add_option("--out", out_path, "output CSV path or - for stdout");

  auto* compare = app.add_subcommand(
      "compare", "error curves of the expansions against the exact series");
  add_model_flags(compare, config);
  compare->add_option("--order", config.order, "series truncation order");
  add_grid_flags(compare, config);
  compare->add_option("--out", out_path, "output CSV path or - for stdout");

  auto* validate =
      app.add_subcommand("validate", "run the built-in cross-validation suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (out_path != "-") {
      file.open(out_path);
      if (!file) {
        std::cerr << "error: cannot open " << out_path << "\n";
        return kConfigError;
      }
      out = &file;
    }
    if (asym->parsed()) {
      retrialq::cli::cmd_asym(config, *out);
    } else if (pmf->parsed()) {
      retrialq::cli::cmd_pmf(config, *out);
    } else if (simulate->parsed()) {
      const std::string manifest =
          out_path == "-" ? std::string{} : out_path + ".manifest.json";
      retrialq::cli::cmd_simulate(config, *out, manifest);
    } else if (compare->parsed()) {
      retrialq::cli::cmd_compare(config, *out);
    } else if (validate->parsed()) {
      if (!retrialq::cli::cmd_validate(std::cout)) return kValidationFailure;
    }
  } catch (const retrialq::DivergenceGuard& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kNumericalGuard;
  } catch (const retrialq::InsufficientIdleTime& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kNumericalGuard;
  } catch (const retrialq::TooFewSamples& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return kNumericalGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
