#include "evocert/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "evocert/random.hpp"

namespace evocert {

namespace {

using KeyValues = std::map<std::string, std::string>;
using Sections = std::map<std::string, KeyValues>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Sections parse_sections(const std::string& text) {
  Sections out;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key = value");
    out[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

double to_double(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': not a number: '" + s + "'");
  }
}

long to_long(const std::string& s, const std::string& key) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("field '" + key + "': not an integer: '" + s + "'");
  }
}

std::vector<double> to_doubles(const std::string& s, const std::string& key) {
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(to_double(tok, key));
  return out;
}

Eigen::MatrixXd to_matrix(const std::string& s, int dim,
                          const std::string& key) {
  const std::vector<double> v = to_doubles(s, key);
  if (static_cast<int>(v.size()) != dim * dim)
    throw ConfigError("field '" + key + "': expected " +
                      std::to_string(dim * dim) + " row-major entries");
  Eigen::MatrixXd m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = v[i * dim + j];
  return m;
}

struct Lookup {
  const Sections& sec;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const {
    auto s = sec.find(section);
    if (s == sec.end()) return fallback;
    auto k = s->second.find(key);
    return k == s->second.end() ? fallback : k->second;
  }
  bool has(const std::string& section, const std::string& key) const {
    auto s = sec.find(section);
    return s != sec.end() && s->second.count(key) > 0;
  }
};

MatrixFamily table_to_family(const ColumnTable& t, int dim, const TimeGrid& g,
                             const std::string& what) {
  if (t.rows.rows() != g.n)
    throw ConfigError(what + ": table row count != grid nodes");
  if (t.rows.cols() != 1 + dim * dim)
    throw ConfigError(what + ": expected t plus " + std::to_string(dim * dim) +
                      " row-major entries per row");
  MatrixFamily fam(static_cast<std::size_t>(g.n));
  for (int k = 0; k < g.n; ++k) {
    Eigen::MatrixXd m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = t.rows(k, 1 + i * dim + j);
    fam[k] = m;
  }
  return fam;
}

MatrixFamily piecewise_constant_scalar(const TimeGrid& g, int dim, int jumps,
                                       double low, double high,
                                       unsigned long seed) {
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> jump_pos(g.t_start, g.t_end);
  std::uniform_real_distribution<double> level(low, high);
  std::vector<double> pos(jumps);
  for (auto& p : pos) p = jump_pos(rng);
  std::sort(pos.begin(), pos.end());
  std::vector<double> levels(jumps + 1);
  for (auto& l : levels) l = level(rng);
  MatrixFamily fam(static_cast<std::size_t>(g.n));
  for (int k = 0; k < g.n; ++k) {
    const double t = g.nodes[k];
    const std::size_t idx =
        std::upper_bound(pos.begin(), pos.end(), t) - pos.begin();
    fam[k] = levels[idx] * Eigen::MatrixXd::Identity(dim, dim);
  }
  return fam;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  const Sections sec = parse_sections(text);
  const Lookup cfg{sec};
  ScenarioConfig c;

  c.t_start = to_double(cfg.get("grid", "t_start", "0"), "grid.t_start");
  c.t_end = to_double(cfg.get("grid", "t_end", "1"), "grid.t_end");
  c.n = static_cast<int>(to_long(cfg.get("grid", "n", "32"), "grid.n"));
  const std::string rho = cfg.get("grid", "rho", "auto");
  if (rho != "auto") c.rho = to_double(rho, "grid.rho");

  c.dim = static_cast<int>(to_long(cfg.get("law", "d", "1"), "law.d"));
  const std::string regime = cfg.get("law", "regime", "lipschitz");
  if (regime == "lipschitz")
    c.regime = Regime::lipschitz;
  else if (regime == "commutator")
    c.regime = Regime::commutator;
  else
    throw ConfigError("law.regime must be lipschitz or commutator");

  c.m0_kind = cfg.get("law", "m0", "constant");
  c.m0_constant = cfg.has("law", "m0_constant")
                      ? to_matrix(cfg.get("law", "m0_constant", ""), c.dim,
                                  "law.m0_constant")
                      : Eigen::MatrixXd::Identity(c.dim, c.dim);
  c.m0_jumps = static_cast<int>(to_long(cfg.get("law", "m0_jumps", "10"),
                                        "law.m0_jumps"));
  c.m0_low = to_double(cfg.get("law", "m0_low", "1"), "law.m0_low");
  c.m0_high = to_double(cfg.get("law", "m0_high", "2"), "law.m0_high");
  c.m0_table = cfg.get("law", "m0_table", "");

  c.m1_kind = cfg.get("law", "m1", "constant");
  c.m1_constant = cfg.has("law", "m1_constant")
                      ? to_matrix(cfg.get("law", "m1_constant", ""), c.dim,
                                  "law.m1_constant")
                      : Eigen::MatrixXd::Zero(c.dim, c.dim);
  c.m1_table = cfg.get("law", "m1_table", "");

  c.m0_prime_kind = cfg.get("law", "m0_prime", "auto");
  c.m0_prime_table = cfg.get("law", "m0_prime_table", "");
  if (cfg.has("law", "d_low"))
    c.d_low = to_double(cfg.get("law", "d_low", ""), "law.d_low");

  c.spatial_kind = cfg.get("spatial", "kind", "zero");
  c.cells = static_cast<int>(to_long(cfg.get("spatial", "N", "8"), "spatial.N"));
  c.coupling = cfg.has("spatial", "B")
                   ? to_matrix(cfg.get("spatial", "B", ""), c.dim, "spatial.B")
                   : Eigen::MatrixXd::Identity(c.dim, c.dim);
  c.matrix_file = cfg.get("spatial", "matrix_file", "");

  c.forcing_kind = cfg.get("forcing", "kind", "constant");
  c.forcing_value =
      to_double(cfg.get("forcing", "value", "1"), "forcing.value");
  c.forcing_table = cfg.get("forcing", "table", "");
  if (cfg.has("forcing", "support_start"))
    c.support_start =
        to_double(cfg.get("forcing", "support_start", ""), "forcing.support_start");

  c.c = to_double(cfg.get("check", "c", "0"), "check.c");
  if (cfg.has("check", "rho_grid"))
    c.rho_grid = to_doubles(cfg.get("check", "rho_grid", ""), "check.rho_grid");

  c.seed = static_cast<unsigned long>(
      to_long(cfg.get("run", "seed", "1"), "run.seed"));
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

ResolvedScenario to_scenario(const ScenarioConfig& cfg) {
  std::vector<std::string> notes;

  // Build everything on a provisional grid first; the weights depend on rho,
  // which may itself be resolved from the law ("auto").
  auto build_law = [&](const TimeGrid& g) {
    MatrixFamily m0, m1;
    if (cfg.m0_kind == "constant")
      m0 = constant_family(cfg.m0_constant, g.n);
    else if (cfg.m0_kind == "piecewise_constant_random")
      m0 = piecewise_constant_scalar(g, cfg.dim, cfg.m0_jumps, cfg.m0_low,
                                     cfg.m0_high, cfg.seed);
    else if (cfg.m0_kind == "table")
      m0 = table_to_family(read_table(cfg.m0_table), cfg.dim, g, "law.m0_table");
    else
      throw ConfigError("law.m0: unknown generator '" + cfg.m0_kind + "'");

    if (cfg.m1_kind == "constant")
      m1 = constant_family(cfg.m1_constant.size() == 0
                               ? Eigen::MatrixXd::Zero(cfg.dim, cfg.dim).eval()
                               : cfg.m1_constant,
                           g.n);
    else if (cfg.m1_kind == "table")
      m1 = table_to_family(read_table(cfg.m1_table), cfg.dim, g, "law.m1_table");
    else
      throw ConfigError("law.m1: unknown generator '" + cfg.m1_kind + "'");

    std::optional<MatrixFamily> m0p;
    if (cfg.m0_prime_kind == "table")
      m0p = table_to_family(read_table(cfg.m0_prime_table), cfg.dim, g,
                            "law.m0_prime_table");

    MaterialLaw law = MaterialLaw::create(cfg.dim, std::move(m0), std::move(m1),
                                          std::move(m0p), cfg.regime, cfg.d_low);
    if (cfg.regime == Regime::lipschitz && cfg.m0_prime_kind == "auto" &&
        !law.m0_prime) {
      if (cfg.m0_kind == "piecewise_constant_random")
        throw HypothesisFailed(
            "lipschitz regime refused: piecewise-constant m0 has no a.e. "
            "derivative; use the commutator regime");
      law = with_derivative(law, g);
      if (law.derivative_estimated)
        notes.push_back("m0_prime estimated by forward differences");
    }
    return law;
  };

  double rho;
  bool rho_auto = false;
  if (cfg.rho) {
    rho = *cfg.rho;
  } else {
    rho_auto = true;
    // the law samples only fix rho through the certificates; resolve on a
    // rho=0 grid (the samples themselves do not depend on the weights)
    TimeGrid g0 = build_grid(cfg.t_start, cfg.t_end, cfg.n, 0.0);
    MaterialLaw law0 = build_law(g0);
    if (cfg.regime == Regime::commutator) {
      rho = rho0_commutator(law0, cfg.c);
      notes.push_back("rho resolved by the commutator-regime formula");
    } else {
      std::vector<double> grid = cfg.rho_grid;
      if (grid.empty())
        for (int i = 1; i <= 64; ++i) grid.push_back(0.25 * i);
      auto found = rho0_lipschitz(with_derivative(law0, g0), cfg.c, grid);
      if (!found)
        throw HypothesisFailed(
            "rho = auto: no rate in the grid satisfies the pos-def condition");
      rho = *found;
      notes.push_back("rho resolved from the pos-def condition grid scan");
    }
  }

  TimeGrid grid = build_grid(cfg.t_start, cfg.t_end, cfg.n, rho);
  MaterialLaw law = build_law(grid);

  std::optional<TransportSpec> transport;
  std::optional<Eigen::MatrixXd> user_matrix;
  int copies = 1;
  if (cfg.spatial_kind == "transport") {
    transport = TransportSpec::create(cfg.cells, cfg.dim, cfg.coupling);
    copies = cfg.cells;
  } else if (cfg.spatial_kind == "matrix") {
    ColumnTable t = read_table(cfg.matrix_file);
    if (t.rows.rows() != t.rows.cols())
      throw ConfigError("spatial matrix file must be square");
    user_matrix = t.rows;
  } else if (cfg.spatial_kind != "zero") {
    throw ConfigError("spatial.kind must be zero, transport or matrix");
  }
  const int block_dim = cfg.dim * copies;

  GridFunction forcing(grid, block_dim);
  if (cfg.forcing_kind == "zero") {
    // already zero
  } else if (cfg.forcing_kind == "constant") {
    forcing.values().setConstant(cfg.forcing_value);
  } else if (cfg.forcing_kind == "smooth") {
    auto rng = make_rng(cfg.seed + 0x5eedULL);
    std::vector<Eigen::VectorXd> coef;
    for (int w = 1; w <= 3; ++w) coef.push_back(random_vector(rng, block_dim));
    for (int k = 0; k < grid.n; ++k) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(block_dim);
      for (int w = 1; w <= 3; ++w)
        v += std::sin(w * 3.141592653589793 * grid.nodes[k]) * coef[w - 1];
      forcing.block(k) = v;
    }
  } else if (cfg.forcing_kind == "table") {
    ColumnTable t = read_table(cfg.forcing_table);
    if (t.rows.rows() != grid.n || t.rows.cols() != 1 + block_dim)
      throw ConfigError("forcing table shape does not match the scenario");
    for (int k = 0; k < grid.n; ++k)
      forcing.block(k) = t.rows.row(k).segment(1, block_dim).transpose();
  } else {
    throw ConfigError("forcing.kind must be zero, constant, smooth or table");
  }
  for (int k = 0; k < grid.n; ++k)
    if (grid.nodes[k] <= cfg.support_start) forcing.block(k).setZero();

  Scenario s(grid, std::move(law), std::move(forcing));
  s.transport = std::move(transport);
  s.spatial_matrix = std::move(user_matrix);
  s.c_target = cfg.c;

  ResolvedScenario out{std::move(s), rho, rho_auto, std::move(notes)};
  return out;
}

ColumnTable read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table file: " + path);
  ColumnTable t;
  std::string line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (t.header.empty()) {
        std::istringstream hs(line.substr(1));
        std::string tok;
        while (hs >> tok) t.header.push_back(tok);
      }
      continue;
    }
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (!rows.empty() && row.size() != rows.front().size())
      throw ConfigError("ragged table row in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("empty table: " + path);
  t.rows.resize(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      t.rows(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  return t;
}

void write_table(const std::string& path, const ColumnTable& table) {
  std::ostringstream out;
  out << "#";
  for (const auto& h : table.header) out << " " << h;
  out << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < table.rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < table.rows.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", table.rows(i, j));
      out << (j ? " " : "") << buf;
    }
    out << "\n";
  }
  atomic_write(path, out.str());
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write: " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string config_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace evocert
