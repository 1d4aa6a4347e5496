#include "evocert/commands.hpp"

#include <Eigen/LU>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "evocert/random.hpp"
#include "evocert/time_derivative.hpp"
#include "evocert/verify.hpp"

namespace evocert {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_report(const RunReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  atomic_write((std::filesystem::path(out_dir) / "report.json").string(),
               to_json_string(report));
}

void write_solution(const Scenario& s, const GridFunction& u,
                    const std::string& out_dir) {
  ColumnTable t;
  t.header.push_back("t");
  for (int j = 0; j < u.block_dim(); ++j)
    t.header.push_back("u" + std::to_string(j));
  t.rows.resize(s.grid.n, 1 + u.block_dim());
  for (int k = 0; k < s.grid.n; ++k) {
    t.rows(k, 0) = s.grid.nodes[k];
    t.rows.row(k).segment(1, u.block_dim()) = u.block(k).transpose();
  }
  std::filesystem::create_directories(out_dir);
  write_table((std::filesystem::path(out_dir) / "solution.txt").string(), t);
}

ScenarioConfig config_for(const CommandOptions& opts, RunReport& report) {
  const std::string text = read_file(opts.config_path);
  ScenarioConfig cfg = parse_config(text);
  if (opts.seed) cfg.seed = *opts.seed;
  report.config_hash = config_hash(text);
  report.seed = cfg.seed;
  return cfg;
}

/// Smallest rho whose certified discrete rate reaches the continuous
/// target rho0 (bisection; d0_discrete_rate is increasing in rho).
double inflate_rho(double rho0, double h) {
  if (rho0 <= 0.0) return 0.0;
  if (rho0 >= 1.0 / (2.0 * h))
    throw HypothesisFailed("grid too coarse for the required decay rate");
  double lo = rho0, hi = rho0;
  while (d0_discrete_rate(hi, h) < rho0) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (d0_discrete_rate(mid, h) < rho0 ? lo : hi) = mid;
  }
  return hi;
}

void run_certificates(const ResolvedScenario& rs, RunReport& report) {
  const Scenario& s = rs.scenario;
  report.notes.insert(report.notes.end(), rs.notes.begin(), rs.notes.end());
  report.notes.push_back("rho = " + std::to_string(rs.rho));
  report.notes.push_back(
      "certified discrete rate rho_h = " +
      std::to_string(d0_discrete_rate(s.grid.rho, s.grid.h)));
  report.notes.push_back(std::string("m0 samples PSD: ") +
                         (s.law.m0_psd() ? "yes" : "no"));
  report.notes.push_back(
      "node minima approximate essential infima over the sampled mesh");

  Certificate d0 = accretivity_margin(d0_operator(s.grid, s.block_dim()));
  report.certificates.push_back(Certificate::make(
      "d0_accretivity", d0.margin,
      d0_discrete_rate(s.grid.rho, s.grid.h) - 1e-12, d0.witness));

  if (s.transport) {
    Certificate sp =
        spatial_accretivity_margin(transport_operator(*s.transport));
    report.certificates.push_back(sp.with_threshold(-1e-10));
    if (s.transport->coupling_norm > 1.0)
      report.notes.push_back("coupling norm exceeds 1; accretivity not guaranteed");
  } else if (s.spatial_matrix) {
    Certificate sp = spatial_accretivity_margin(*s.spatial_matrix);
    report.certificates.push_back(sp.with_threshold(-1e-10));
  }

  bool regime_ok = true;
  if (s.law.regime == Regime::lipschitz) {
    MaterialLaw law = with_derivative(s.law, s.grid);
    Certificate pd = check_pos_def_condition(law, s.grid.rho, s.c_target);
    report.certificates.push_back(pd);
    regime_ok = pd.passed;
  } else {
    if (s.transport) {
      Certificate cc = coupling_commutes(s.transport->coupling, s.law.m0);
      report.certificates.push_back(cc);
      regime_ok = cc.passed;
    }
    report.notes.push_back("rho0_commutator = " +
                           std::to_string(rho0_commutator(s.law, s.c_target)));
  }

  if (regime_ok) {
    Certificate wp = wellposedness_certificate(s);
    report.certificates.push_back(wp);
  } else {
    report.notes.push_back(
        "wellposedness certificate skipped: regime hypothesis failed");
  }
}

void add_suite_rows(RunReport& report, unsigned long seed) {
  const std::vector<int> dims{2, 4, 8};
  const std::vector<int> nodes{8, 16};
  unsigned long trial = 0;
  for (int dim : dims) {
    for (int n : nodes) {
      const TimeGrid g = build_grid(0.0, 1.0, n, 1.0);
      for (int i = 0; i < 10; ++i) {
        auto rng = make_rng(derive_seed(seed, trial++));
        SpaceTimeOperator S =
            make_operator(random_matrix(rng, n * dim, n * dim), g, dim);
        SpaceTimeOperator T =
            make_operator(random_matrix(rng, n * dim, n * dim), g, dim);
        report.theorems.push_back({check_adjoint_sum(S, T), true});
      }
      for (int i = 0; i < 10; ++i) {
        auto rng = make_rng(derive_seed(seed, trial++));
        Eigen::MatrixXd b = random_matrix(rng, n * dim, n * dim) +
                            2.0 * std::sqrt(static_cast<double>(n * dim)) *
                                Eigen::MatrixXd::Identity(n * dim, n * dim);
        SpaceTimeOperator B = make_operator(std::move(b), g, dim);
        SpaceTimeOperator T =
            make_operator(random_matrix(rng, n * dim, n * dim), g, dim);
        report.theorems.push_back({check_sandwich_adjoint(B, T), true});
      }
      for (int i = 0; i < 5; ++i) {
        auto rng = make_rng(derive_seed(seed, trial++));
        MatrixFamily m0(static_cast<std::size_t>(n)), m1(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
          m0[k] = random_spd(rng, dim, 0.5);
          m1[k] = random_matrix(rng, dim, dim);
        }
        MaterialLaw law = MaterialLaw::create(dim, std::move(m0), std::move(m1),
                                              std::nullopt, Regime::commutator,
                                              0.25);
        GridFunction f(g, dim);
        Scenario s(g, std::move(law), std::move(f));
        report.theorems.push_back({check_evo_adjoint(s), true});
      }
      // commuting configuration: D against a lifted constant spatial block
      {
        auto rng = make_rng(derive_seed(seed, trial++));
        Eigen::MatrixXd a_h = random_matrix(rng, dim, dim) +
                              dim * Eigen::MatrixXd::Identity(dim, dim);
        SpaceTimeOperator D = d0_operator(g, dim);
        SpaceTimeOperator A = lift_to_spacetime(a_h, g);
        report.theorems.push_back({check_resolvent_commutation(D, A), true});
      }
      for (int i = 0; i < 3; ++i) {
        auto rng = make_rng(derive_seed(seed, trial++));
        SpaceTimeOperator S = make_operator(
            random_matrix(rng, n * dim, n * dim) +
                2.0 * Eigen::MatrixXd::Identity(n * dim, n * dim),
            g, dim);
        SpaceTimeOperator T = make_operator(
            random_matrix(rng, n * dim, n * dim) +
                2.0 * Eigen::MatrixXd::Identity(n * dim, n * dim),
            g, dim);
        report.theorems.push_back({check_resolvent_commutation(S, T), false});
      }
    }
  }
  report.theorems.push_back(
      {counterexample_search(2, 100, derive_seed(seed, trial++)), true});
  TheoremRow scalar_search{counterexample_search(1, 50, derive_seed(seed, trial++)),
                           true};
  report.theorems.push_back(scalar_search);
}

ScenarioConfig example_config(unsigned long seed) {
  ScenarioConfig cfg;
  cfg.t_start = 0.0;
  cfg.t_end = 1.0;
  cfg.n = 64;
  cfg.dim = 2;
  cfg.regime = Regime::commutator;
  cfg.m0_kind = "piecewise_constant_random";
  cfg.m0_jumps = 10;
  cfg.m0_low = 1.0;
  cfg.m0_high = 2.0;
  cfg.d_low = 1.0;
  cfg.spatial_kind = "transport";
  cfg.cells = 8;
  const double angle = 3.141592653589793 / 3.0;
  cfg.coupling.resize(2, 2);
  cfg.coupling << std::cos(angle), -std::sin(angle), std::sin(angle),
      std::cos(angle);
  cfg.forcing_kind = "smooth";
  cfg.c = 1.0;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

RunReport cmd_check(const CommandOptions& opts) {
  RunReport report;
  report.version = kVersion;
  ScenarioConfig cfg = config_for(opts, report);
  ResolvedScenario rs = to_scenario(cfg);
  run_certificates(rs, report);
  write_report(report, opts.out_dir);
  return report;
}

RunReport cmd_solve(const CommandOptions& opts) {
  RunReport report;
  report.version = kVersion;
  ScenarioConfig cfg = config_for(opts, report);
  ResolvedScenario rs = to_scenario(cfg);
  run_certificates(rs, report);

  bool hypotheses_ok = true;
  for (const auto& c : report.certificates) hypotheses_ok &= c.passed;
  if (!hypotheses_ok && !opts.force) {
    report.notes.push_back("solve refused: certificate failed (use --force)");
    write_report(report, opts.out_dir);
    return report;
  }

  SolveReport solve = march(rs.scenario);
  write_solution(rs.scenario, solve.solution, opts.out_dir);
  report.solve = std::move(solve);
  write_report(report, opts.out_dir);
  return report;
}

RunReport cmd_verify(const CommandOptions& opts) {
  RunReport report;
  report.version = kVersion;
  if (opts.suite) {
    report.seed = opts.seed.value_or(1);
    report.config_hash = "builtin-suite";
    add_suite_rows(report, report.seed);
  } else {
    ScenarioConfig cfg = config_for(opts, report);
    ResolvedScenario rs = to_scenario(cfg);
    const Scenario& s = rs.scenario;
    const int copies = s.spatial_copies();
    SpaceTimeOperator D = d0_operator(s.grid, s.block_dim());
    SpaceTimeOperator M0 = mult_operator(s.law.m0, s.grid, copies);
    SpaceTimeOperator A = lift_to_spacetime(s.spatial_block(), s.grid);
    report.theorems.push_back({check_adjoint_sum(D * M0, A), true});
    MatrixFamily roots(s.law.m0.size());
    bool invertible = true;
    for (std::size_t k = 0; k < s.law.m0.size(); ++k) {
      roots[k] = sqrt_psd(s.law.m0[k]);
      invertible = invertible && roots[k].fullPivLu().isInvertible();
    }
    if (invertible) {
      SpaceTimeOperator Q = mult_operator(roots, s.grid, copies);
      report.theorems.push_back({check_sandwich_adjoint(Q, D), true});
    } else {
      report.notes.push_back(
          "sandwich adjoint skipped: m0^{1/2} not surjective");
    }
    if (s.law.regime == Regime::commutator)
      report.theorems.push_back({check_evo_adjoint(s), true});
  }
  write_report(report, opts.out_dir);
  return report;
}

RunReport cmd_example(const CommandOptions& opts) {
  RunReport report;
  report.version = kVersion;
  report.seed = opts.seed.value_or(42);
  ScenarioConfig cfg = example_config(report.seed);
  report.config_hash = "builtin-example";

  // resolve rho so that the certified discrete rate reaches the
  // continuous threshold from the commutator formula
  {
    TimeGrid g0 = build_grid(cfg.t_start, cfg.t_end, cfg.n, 0.0);
    ScenarioConfig probe = cfg;
    probe.rho = 0.0;
    ResolvedScenario rs0 = to_scenario(probe);
    const double rho0 = rho0_commutator(rs0.scenario.law, cfg.c);
    cfg.rho = inflate_rho(rho0, g0.h);
    report.notes.push_back("rho0_commutator = " + std::to_string(rho0));
    report.notes.push_back("rho inflated to " + std::to_string(*cfg.rho) +
                           " so the discrete rate reaches rho0");
  }

  ResolvedScenario rs = to_scenario(cfg);
  run_certificates(rs, report);
  report.theorems.push_back({check_evo_adjoint(rs.scenario), true});

  SolveReport solve = march(rs.scenario);
  const double equiv = equivalence_check(rs.scenario);
  report.notes.push_back("equivalence residual = " + std::to_string(equiv));
  TheoremReport eq;
  eq.theorem = "plain_vs_sandwich_equivalence";
  eq.residuals["weighted"] = equiv;
  eq.passed = equiv <= 1e-9 * solve.forcing_norm;
  report.theorems.push_back({eq, true});

  write_solution(rs.scenario, solve.solution, opts.out_dir);
  report.solve = std::move(solve);
  write_report(report, opts.out_dir);
  return report;
}

}  // namespace evocert
