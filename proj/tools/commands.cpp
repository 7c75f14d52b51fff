#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "retrialq/asymptotics.hpp"
#include "retrialq/errors.hpp"
#include "retrialq/simulator.hpp"
#include "retrialq/transforms.hpp"
#include "retrialq/validation.hpp"

namespace retrialq::cli {

namespace {

double parse_mu(const std::string& text) {
  if (text == "inf" || text == "Inf" || text == "INF")
    return QueueModel::kNoRetrial;
  std::size_t pos = 0;
  double mu = 0.0;
  try {
    mu = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw ConfigError("--mu: expected a number or 'inf', got '" + text + "'");
  }
  if (pos != text.size())
    throw ConfigError("--mu: expected a number or 'inf', got '" + text + "'");
  return mu;
}

std::string num17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

QueueModel build_model(const ExperimentConfig& config) {
  return QueueModel(config.lambda, parse_mu(config.mu_text),
                    ServiceModel::parse(config.model_spec));
}

std::vector<long long> j_grid(const ExperimentConfig& config) {
  if (!config.j_list.empty()) {
    auto grid = config.j_list;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.front() < 1) throw ConfigError("--j: values must be >= 1");
    return grid;
  }
  if (config.jmin < 1 || config.jmax < config.jmin || config.jcount < 1)
    throw ConfigError("--jmin/--jmax/--jcount: need 1 <= jmin <= jmax, jcount >= 1");
  std::vector<long long> grid;
  const double lo = std::log(static_cast<double>(config.jmin));
  const double hi = std::log(static_cast<double>(config.jmax));
  for (int k = 0; k < config.jcount; ++k) {
    const double f = config.jcount == 1 ? 0.0 : static_cast<double>(k) / (config.jcount - 1);
    grid.push_back(std::llround(std::exp(lo + f * (hi - lo))));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::string manifest_string(const ExperimentConfig& config,
                            const std::string& command) {
  std::ostringstream os;
  os << "command=" << command << " model=\"" << config.model_spec << "\""
     << " lambda=" << num17(config.lambda) << " mu=" << config.mu_text;
  if (command == "pmf" || command == "compare")
    os << " order=" << config.order;
  if (command == "pmf") os << " target=" << config.target;
  if (command == "asym" || command == "compare") {
    if (!config.j_list.empty()) {
      os << " j=";
      for (std::size_t i = 0; i < config.j_list.size(); ++i)
        os << (i ? "," : "") << config.j_list[i];
    } else {
      os << " jmin=" << config.jmin << " jmax=" << config.jmax
         << " jcount=" << config.jcount;
    }
  }
  if (command == "simulate") {
    os << " horizon=" << num17(config.horizon)
       << " warmup=" << num17(config.warmup < 0 ? config.horizon / 10 : config.warmup)
       << " batches=" << config.batches << " seed=" << config.seed;
  }
  return os.str();
}

void cmd_asym(const ExperimentConfig& config, std::ostream& out) {
  const auto model = build_model(config);
  const auto expansion = queue_length_expansion(model);
  out << "# " << manifest_string(config, "asym") << "\n";
  out << "j,first_order,second_order,delta\n";
  for (long long j : j_grid(config)) {
    const double dj = static_cast<double>(j);
    const double first = expansion.value(dj, 1);
    const double second = expansion.value(dj, 2);
    out << j << ',' << num17(first) << ',' << num17(second) << ','
        << num17(second - first) << "\n";
  }
}

void cmd_pmf(const ExperimentConfig& config, std::ostream& out) {
  const auto model = build_model(config);
  CoefficientSeries series = [&] {
    if (config.target == "lmu") return pmf_total_count(model, config.order);
    if (config.target == "linf") return pmf_nonretrial_count(model, config.order);
    if (config.target == "rmu") return pmf_orbit_given_idle(model, config.order);
    throw ConfigError("--target: expected lmu, linf or rmu");
  }();
  write_series_csv(out, series, manifest_string(config, "pmf"));
}

void cmd_simulate(const ExperimentConfig& config, std::ostream& out,
                  const std::string& manifest_path) {
  const auto model = build_model(config);
  if (!model.has_retrial())
    throw ConfigError("simulate: mu must be finite (retrial system)");
  SimulationConfig sim;
  sim.horizon = config.horizon;
  sim.warmup = config.warmup < 0 ? config.horizon / 10 : config.warmup;
  sim.batches = config.batches;
  sim.seed = config.seed;
  const auto run = run_retrial_simulation(model, sim);

  nlohmann::json manifest{
      {"command", "simulate"},
      {"model", config.model_spec},
      {"lambda", config.lambda},
      {"mu", config.mu_text},
      {"horizon", sim.horizon},
      {"warmup", sim.warmup},
      {"batches", sim.batches},
      {"seed", sim.seed},
      {"idle_fraction", run.idle_fraction},
      {"idle_fraction_half_width", run.idle_fraction_half_width},
      {"mean_in_system", run.mean_in_system},
  };

  out << "# " << manifest_string(config, "simulate") << "\n";
  out << "# manifest " << manifest.dump() << "\n";
  out << "state,pmf,half_width\n";
  std::size_t last = 0;
  const auto& est = run.total_count;
  for (std::size_t j = 0; j < est.pmf.size(); ++j)
    if (est.pmf[j] > 0.0) last = j;
  for (std::size_t j = 0; j <= last; ++j)
    out << j << ',' << num17(est.pmf[j]) << ',' << num17(est.half_width[j])
        << "\n";

  if (!manifest_path.empty()) {
    std::ofstream mf(manifest_path);
    if (!mf) throw ConfigError("simulate: cannot write " + manifest_path);
    mf << manifest.dump(2) << "\n";
  }
}

void cmd_compare(const ExperimentConfig& config, std::ostream& out) {
  const auto model = build_model(config);
  const auto grid = j_grid(config);
  if (static_cast<std::size_t>(grid.back()) >= config.order)
    throw ConfigError("compare: series order must exceed the largest j");
  const auto expansion = queue_length_expansion(model);
  const auto series = pmf_total_count(model, config.order);

  struct Row {
    long long j;
    double exact, e1, e2;
    bool reliable;
  };
  std::vector<Row> rows;
  for (long long j : grid) {
    const auto exact = tail_from_pmf(series, static_cast<std::size_t>(j));
    const double dj = static_cast<double>(j);
    Row row{};
    row.j = j;
    row.exact = exact.value;
    row.e1 = std::abs(exact.value - expansion.value(dj, 1)) / exact.value;
    row.e2 = std::abs(exact.value - expansion.value(dj, 2)) / exact.value;
    row.reliable = exact.value >= 10.0 * exact.uncertainty;
    rows.push_back(row);
  }
  // Crossover: first grid point from which the second order stays closer.
  long long crossover = -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool from_here = true;
    for (std::size_t k = i; k < rows.size(); ++k)
      if (!(rows[k].e2 < rows[k].e1)) from_here = false;
    if (from_here) {
      crossover = rows[i].j;
      break;
    }
  }

  out << "# " << manifest_string(config, "compare") << "\n";
  out << "# ratio_c2_c1=" << num17(std::abs(expansion.c2()) / expansion.c1)
      << " crossover_j=" << (crossover < 0 ? std::string("none")
                                           : std::to_string(crossover))
      << "\n";
  out << "j,exact_tail,e1_rel,e2_rel,reliable\n";
  for (const auto& row : rows)
    out << row.j << ',' << num17(row.exact) << ',' << num17(row.e1) << ','
        << num17(row.e2) << ',' << (row.reliable ? 1 : 0) << "\n";
}

bool cmd_validate(std::ostream& out) {
  const auto results = run_acceptance_suite(out);
  const bool ok = all_passed(results);
  out << (ok ? "all criteria passed\n" : "validation failed\n");
  return ok;
}

}  // namespace retrialq::cli
