#include "dfnnc/experiments.hpp"

#include "dfnnc/oneway.hpp"
#include "dfnnc/parallel.hpp"
#include "dfnnc/rate_region.hpp"
#include "dfnnc/twrc.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace dfnnc {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ConfigError("invalid value '" + text + "' for " + key);
  return v;
}

void validate_budget(const SearchBudget& b, const char* which) {
  try {
    b.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(which) + ": " + e.what());
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!(power > 0.0) || !std::isfinite(power)) throw ConfigError("p must be positive");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be positive");
  if (!(d_min > 0.0 && d_min < 1.0 && d_max > 0.0 && d_max < 1.0)) throw ConfigError("d range must lie in (0, 1)");
  if (!(d_min <= d_max)) throw ConfigError("d_min must not exceed d_max");
  if (d_steps < 2) throw ConfigError("d_steps must be >= 2");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  try {
    TwoWayChannel ch = region_channel;
    ch.power = power;
    ch.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  validate_budget(budget, "search budget");
  validate_budget(combined_budget, "combined search budget");
  if (out.empty()) throw ConfigError("out must not be empty");
}

std::vector<double> ExperimentConfig::distances() const {
  std::vector<double> d(static_cast<std::size_t>(d_steps));
  for (int i = 0; i < d_steps; ++i) d[i] = d_min + (d_max - d_min) * i / (d_steps - 1);
  return d;
}

ExperimentConfig default_config(Experiment experiment) {
  ExperimentConfig cfg;
  cfg.experiment = experiment;
  cfg.jobs = available_jobs();
  if (experiment == Experiment::twrc_sum_sweep) cfg.d_steps = 11;
  if (experiment == Experiment::twrc_region) cfg.power = 3.0;
  return cfg;
}

Experiment parse_experiment(const std::string& name) {
  if (name == "oneway-sweep") return Experiment::oneway_sweep;
  if (name == "twrc-sum-sweep") return Experiment::twrc_sum_sweep;
  if (name == "twrc-region") return Experiment::twrc_region;
  throw ConfigError("unknown experiment '" + name + "'");
}

std::string experiment_name(Experiment experiment) {
  switch (experiment) {
    case Experiment::oneway_sweep:
      return "oneway-sweep";
    case Experiment::twrc_sum_sweep:
      return "twrc-sum-sweep";
    case Experiment::twrc_region:
      return "twrc-region";
  }
  return "unknown";
}

ExperimentConfig make_config(const std::map<std::string, std::string>& settings) {
  const auto it = settings.find("experiment");
  ExperimentConfig cfg = default_config(it == settings.end() ? Experiment::oneway_sweep : parse_experiment(it->second));
  for (const auto& [key, value] : settings) {
    const auto real = [&] { return parse_number<double>(key, value); };
    const auto integer = [&] { return parse_number<int>(key, value); };
    if (key == "experiment") continue;
    if (key == "p") cfg.power = real();
    else if (key == "gamma") cfg.gamma = real();
    else if (key == "d_min") cfg.d_min = real();
    else if (key == "d_max") cfg.d_max = real();
    else if (key == "d_steps") cfg.d_steps = integer();
    else if (key == "g12") cfg.region_channel.g12 = real();
    else if (key == "g1r") cfg.region_channel.g1r = real();
    else if (key == "g21") cfg.region_channel.g21 = real();
    else if (key == "g2r") cfg.region_channel.g2r = real();
    else if (key == "gr1") cfg.region_channel.gr1 = real();
    else if (key == "gr2") cfg.region_channel.gr2 = real();
    else if (key == "coarse_steps") cfg.budget.coarse_steps = cfg.combined_budget.coarse_steps = integer();
    else if (key == "refine_rounds") cfg.budget.refine_rounds = cfg.combined_budget.refine_rounds = integer();
    else if (key == "refine_shrink") cfg.budget.refine_shrink = cfg.combined_budget.refine_shrink = real();
    else if (key == "tol") cfg.budget.tol = cfg.combined_budget.tol = real();
    else if (key == "jobs") cfg.jobs = integer();
    else if (key == "out") cfg.out = value;
    else if (key != "combined_coarse_steps" && key != "combined_refine_rounds") {
      throw ConfigError("unknown setting '" + key + "'");
    }
  }
  // The combined-only keys win over the shared ones regardless of order.
  if (const auto c = settings.find("combined_coarse_steps"); c != settings.end()) {
    cfg.combined_budget.coarse_steps = parse_number<int>(c->first, c->second);
  }
  if (const auto c = settings.find("combined_refine_rounds"); c != settings.end()) {
    cfg.combined_budget.refine_rounds = parse_number<int>(c->first, c->second);
  }
  cfg.region_channel.power = cfg.power;
  cfg.validate();
  return cfg;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(number) + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    for (char& c : key) {
      if (c == '-') c = '_';
    }
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(number) + ": empty key");
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

Table run_oneway_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<double> ds = cfg.distances();
  Table t{{"d", "df", "nnc", "combined", "cutset"}, std::vector<std::vector<double>>(ds.size())};
  SearchBudget inner = cfg.budget;
  inner.jobs = 1;
  parallel_for(ds.size(), cfg.jobs, [&](std::size_t i) {
    const OneWayChannel ch = oneway_from_geometry({ds[i], cfg.gamma}, cfg.power);
    t.rows[i] = {ds[i], optimize_df_rate(ch).rate, optimize_nnc_rate(ch).rate, optimize_combined_rate(ch, inner).rate,
                 oneway_cutset_bound(ch)};
  });
  return t;
}

Table run_twrc_sum_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::vector<double> ds = cfg.distances();
  Table t{{"d", "rankov_df", "xie_df", "lnnc", "combined"}, std::vector<std::vector<double>>(ds.size())};
  SearchBudget special = cfg.budget;
  SearchBudget combined = cfg.combined_budget;
  special.jobs = combined.jobs = 1;
  parallel_for(ds.size(), cfg.jobs, [&](std::size_t i) {
    const TwoWayChannel ch = twrc_from_geometry({ds[i], cfg.gamma}, cfg.power);
    const TwrcComparison c = compare_twrc_schemes(ch, special, combined, {0.5});
    t.rows[i] = {ds[i], sum_rate(c.rankov_df.region), sum_rate(c.xie_df.region), sum_rate(c.lnnc.region),
                 sum_rate(c.combined.region)};
  });
  return t;
}

std::vector<VertexRow> run_twrc_region(const ExperimentConfig& cfg) {
  cfg.validate();
  TwoWayChannel ch = cfg.region_channel;
  ch.power = cfg.power;
  SearchBudget special = cfg.budget;
  SearchBudget combined = cfg.combined_budget;
  special.jobs = combined.jobs = cfg.jobs;
  const TwrcComparison c = compare_twrc_schemes(ch, special, combined, default_region_weights());
  std::vector<VertexRow> rows;
  const std::pair<const char*, const TwrcSearchResult*> schemes[] = {
      {"rankov_df", &c.rankov_df}, {"xie_df", &c.xie_df}, {"lnnc", &c.lnnc}, {"combined", &c.combined}};
  for (const auto& [name, result] : schemes) {
    const auto& v = result->region.vertices;
    for (std::size_t k = 0; k < v.size(); ++k) rows.push_back({name, k, v[k].r1, v[k].r2});
  }
  return rows;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  // Round to six significant digits first so that the digit count is taken
  // from the rounded value (0.9999996 -> 1.00000).
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5e", x);
  double rounded = std::strtod(buf, nullptr);
  if (rounded == 0.0) rounded = 0.0;  // drop the sign of -0
  int decimals = 5;
  if (rounded != 0.0) decimals = std::max(0, 5 - static_cast<int>(std::floor(std::log10(std::abs(rounded)))));
  std::snprintf(buf, sizeof buf, "%.*f", decimals, rounded);
  return buf;
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t j = 0; j < table.columns.size(); ++j) os << (j ? "," : "") << table.columns[j];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << format_number(row[j]);
    os << '\n';
  }
}

void write_csv(std::ostream& os, const std::vector<VertexRow>& rows) {
  os << "scheme,vertex_index,r1,r2\n";
  for (const auto& r : rows) {
    os << r.scheme << ',' << r.vertex_index << ',' << format_number(r.r1) << ',' << format_number(r.r2) << '\n';
  }
}

void run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::ostringstream csv;
  switch (cfg.experiment) {
    case Experiment::oneway_sweep:
      write_csv(csv, run_oneway_sweep(cfg));
      break;
    case Experiment::twrc_sum_sweep:
      write_csv(csv, run_twrc_sum_sweep(cfg));
      break;
    case Experiment::twrc_region:
      write_csv(csv, run_twrc_region(cfg));
      break;
  }
  if (cfg.out == "-") {
    std::cout << csv.str() << std::flush;
    if (!std::cout) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw IoError("cannot open '" + cfg.out + "' for writing");
  f << csv.str();
  f.close();
  if (!f) throw IoError("failed writing '" + cfg.out + "'");
}

}  // namespace dfnnc
