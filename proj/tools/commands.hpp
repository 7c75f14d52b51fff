#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "retrialq/queue_model.hpp"

namespace retrialq::cli {

struct ExperimentConfig {
  std::string model_spec = "family=burr b=2 v=3 w=1";
  double lambda = 0.5;
  std::string mu_text = "1";  // number or "inf"
  std::size_t order = 4096;   // series truncation
  double horizon = 1e6;
  double warmup = -1.0;  // < 0: default to horizon / 10
  int batches = 32;
  std::uint64_t seed = 1;
  long long jmin = 10;
  long long jmax = 10000;
  int jcount = 25;
  std::vector<long long> j_list;  // explicit --j values override the grid
  std::string target = "lmu";     // pmf target: lmu | linf | rmu
};

QueueModel build_model(const ExperimentConfig& config);
std::vector<long long> j_grid(const ExperimentConfig& config);
std::string manifest_string(const ExperimentConfig& config,
                            const std::string& command);

void cmd_asym(const ExperimentConfig& config, std::ostream& out);
void cmd_pmf(const ExperimentConfig& config, std::ostream& out);

/// Writes the CSV to `out`; when `manifest_path` is nonempty also writes the
/// JSON run manifest there.
void cmd_simulate(const ExperimentConfig& config, std::ostream& out,
                  const std::string& manifest_path);

void cmd_compare(const ExperimentConfig& config, std::ostream& out);

/// Runs the acceptance suite; returns true when every criterion passed.
bool cmd_validate(std::ostream& out);

}  // namespace retrialq::cli
