#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pca/config.hpp"
#include "pca/parallel.hpp"

namespace pca {

enum class Unit { SE, Mbps };
enum class Scale { Desk, Paper };

struct ExperimentSpec {
  std::string scenario;
  std::vector<double> sweep;  // empty: scenario default
  int realizations = 500;
  std::uint64_t seed = 1;
  Unit unit = Unit::SE;
  std::string out;  // empty: stdout

  // physical setup; powers in dBm
  int M = 256;
  int K = 10;
  int L = 10;
  double gamma = 3.522;
  double A = 3.0682e-5;
  double P_A_dBm = 46.0;
  double P_pilot_dBm = 20.0;
  double P_J_dBm = 30.0;
  double noise_dBm = -101.0;
  double D_min = 10.0;
  double D_max = 750.0;
  double D_maxJ = -1.0;  // negative: scenario default
  double bandwidth_hz = 20e6;
  double t_p = 1.0;
  double t_d = 1.0;

  // solver knobs
  int grid_n = 64;
  int scenarios = 200;        // SAA sample size T
  double delta = 1e-3;
  int p4_grid = 50;
  std::size_t p4_max_points = 100000;
  int validation_draws = 200;
  Execution exec = Execution::Parallel;

  void validate() const;
};

struct ResultRow {
  double sweep = 0.0;
  std::string scheme;
  std::string metric;
  double mean = 0.0;
  double se = 0.0;
  std::size_t n = 0;
};

struct CdfSeries {
  std::string scheme;
  double sweep = 0.0;
  std::vector<double> samples;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<CdfSeries> cdfs;
  std::vector<std::string> notes;
};

struct ScenarioInfo {
  std::string id;
  std::string sweep_variable;
  std::vector<double> default_sweep;
  std::string description;
};

const std::vector<ScenarioInfo>& scenario_catalog();
const ScenarioInfo& find_scenario(const std::string& id);

double dbm_to_linear(double dbm, double noise_dbm = -101.0);
double linear_to_dbm(double p, double noise_dbm = -101.0);

// Linear, noise-normalized system with every sweep-independent field set.
SystemConfig make_system(const ExperimentSpec& spec);

void apply_scale(ExperimentSpec& spec, Scale scale);

ExperimentResult run_experiment(const ExperimentSpec& spec);

void write_csv(const std::vector<ResultRow>& rows, std::ostream& os);
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
void write_cdf(std::vector<double> samples, std::ostream& os);
void emit_cdf(const std::vector<double>& samples, const std::string& path);

// key = value config with [tables]; keys are flattened to "table.key".
std::map<std::string, std::string> read_config(const std::string& path);
std::map<std::string, std::string> parse_config(std::istream& is);
// Throws std::invalid_argument on unknown keys or malformed values.
void apply_config(ExperimentSpec& spec, const std::map<std::string, std::string>& kv);

}  // namespace pca
