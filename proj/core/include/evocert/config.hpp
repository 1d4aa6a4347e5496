#ifndef EVOCERT_CONFIG_HPP
#define EVOCERT_CONFIG_HPP

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evocert/solver.hpp"

namespace evocert {

/// Declarative scenario description, parsed from the key/value config
/// format (INI-style sections, '#' comments, row-major matrices).
struct ScenarioConfig {
  // [grid]
  double t_start = 0.0;
  double t_end = 1.0;
  int n = 32;
  std::optional<double> rho;  // nullopt = "auto"

  // [law]
  int dim = 1;
  Regime regime = Regime::lipschitz;
  std::string m0_kind = "constant";  // constant | piecewise_constant_random | table
  Eigen::MatrixXd m0_constant;
  int m0_jumps = 10;
  double m0_low = 1.0;
  double m0_high = 2.0;
  std::string m0_table;
  std::string m1_kind = "constant";
  Eigen::MatrixXd m1_constant;
  std::string m1_table;
  std::string m0_prime_kind = "auto";  // auto | none | table
  std::string m0_prime_table;
  std::optional<double> d_low;

  // [spatial]
  std::string spatial_kind = "zero";  // zero | transport | matrix
  int cells = 8;
  Eigen::MatrixXd coupling;
  std::string matrix_file;

  // [forcing]
  std::string forcing_kind = "constant";  // zero | constant | smooth | table
  double forcing_value = 1.0;
  std::string forcing_table;
  double support_start = -1e300;  // forcing zeroed at nodes t <= support_start

  // [check]
  double c = 0.0;
  std::vector<double> rho_grid;  // candidates for rho = auto (lipschitz)

  unsigned long seed = 1;
};

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// Resolved scenario plus bookkeeping from config ingestion.
struct ResolvedScenario {
  Scenario scenario;
  double rho = 0.0;
  bool rho_auto = false;
  std::vector<std::string> notes;
};

ResolvedScenario to_scenario(const ScenarioConfig& cfg);

/// Column tables: '#'-prefixed header, whitespace-separated, 17 significant
/// digits (lossless double round trip).
struct ColumnTable {
  std::vector<std::string> header;
  Eigen::MatrixXd rows;
};

ColumnTable read_table(const std::string& path);
void write_table(const std::string& path, const ColumnTable& table);

/// Whole-file atomic write (write-then-rename).
void atomic_write(const std::string& path, const std::string& content);

/// FNV-1a 64-bit hash of the raw config text, hex-encoded.
std::string config_hash(const std::string& text);

}  // namespace evocert

#endif
