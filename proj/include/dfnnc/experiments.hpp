#pragma once

#include "dfnnc/channel.hpp"
#include "dfnnc/search.hpp"

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfnnc {

/// Bad experiment configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output could not be written (CLI exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment { oneway_sweep, twrc_sum_sweep, twrc_region };

struct ExperimentConfig {
  Experiment experiment = Experiment::oneway_sweep;
  double power = 10.0;
  double gamma = 3.0;
  double d_min = 0.05;
  double d_max = 0.95;
  int d_steps = 21;
  /// Channel of the region experiment; its power is `power`.
  TwoWayChannel region_channel{.g12 = 1.0, .g1r = 2.0, .g21 = 0.5, .g2r = 3.0, .gr1 = 6.0, .gr2 = 2.0, .power = 3.0};
  /// Budget of the one-way searches and the three TWRC special cases.
  SearchBudget budget = default_search_budget();
  /// Budget of the TWRC combined scheme.
  SearchBudget combined_budget = default_twrc_budget();
  int jobs = 1;
  /// "-" writes to standard output.
  std::string out = "-";

  /// Throws ConfigError.
  void validate() const;
  std::vector<double> distances() const;
};

/// Defaults for one experiment: P=10, gamma=3 and 21 points for the one-way
/// sweep, 11 points for the TWRC sum sweep, P=3 and the fixed asymmetric
/// channel for the region experiment.
ExperimentConfig default_config(Experiment experiment);

Experiment parse_experiment(const std::string& name);
std::string experiment_name(Experiment experiment);

/// Builds a config from key=value settings. `experiment` picks the
/// defaults; every other key overrides one field. Keys: p, gamma, d_min,
/// d_max, d_steps, g12, g1r, g21, g2r, gr1, gr2, coarse_steps,
/// refine_rounds, refine_shrink, tol (all searches), combined_coarse_steps,
/// combined_refine_rounds, jobs, out. Throws ConfigError.
ExperimentConfig make_config(const std::map<std::string, std::string>& settings);

/// Reads key=value lines; blank lines and lines starting with '#' are
/// skipped. Throws IoError when unreadable, ConfigError on a bad line.
std::map<std::string, std::string> read_config_file(const std::string& path);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct VertexRow {
  std::string scheme;
  std::size_t vertex_index = 0;
  double r1 = 0.0;
  double r2 = 0.0;
};

/// d, df, nnc, combined, cutset.
Table run_oneway_sweep(const ExperimentConfig& cfg);
/// d, rankov_df, xie_df, lnnc, combined (sum rates).
Table run_twrc_sum_sweep(const ExperimentConfig& cfg);
/// Hull vertices of rankov_df, xie_df, lnnc, combined in that order.
std::vector<VertexRow> run_twrc_region(const ExperimentConfig& cfg);

/// Six significant digits, fixed notation.
std::string format_number(double x);

void write_csv(std::ostream& os, const Table& table);
void write_csv(std::ostream& os, const std::vector<VertexRow>& rows);

/// Runs cfg.experiment and writes its CSV to cfg.out.
void run_experiment(const ExperimentConfig& cfg);

}  // namespace dfnnc
