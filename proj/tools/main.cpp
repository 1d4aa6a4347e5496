#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <string>

#include "evocert/commands.hpp"

namespace {

void print_summary(const evocert::RunReport& report) {
  for (const auto& c : report.certificates)
    std::printf("certificate %-26s margin=% .6e threshold=% .6e %s\n",
                c.kind.c_str(), c.margin, c.threshold,
                c.passed ? "PASS" : "FAIL");
  int theorem_ok = 0, theorem_bad = 0;
  for (const auto& t : report.theorems) (t.ok() ? theorem_ok : theorem_bad)++;
  if (theorem_ok + theorem_bad > 0)
    std::printf("theorems: %d ok, %d unexpected\n", theorem_ok, theorem_bad);
  if (report.solve) {
    const auto& s = *report.solve;
    std::printf("solve: |U|=%.6e |F|=%.6e margin=%.6e bound_ok=%s "
                "causality=%.3e residual=%.3e\n",
                s.solution_norm, s.forcing_norm, s.margin,
                s.bound_ok ? "true" : "false", s.causality_residual,
                s.residual_norm);
  }
  for (const auto& n : report.notes) std::printf("note: %s\n", n.c_str());
  std::printf("overall: %s\n", report.all_ok() ? "PASS" : "FAIL");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certificates and causal solves for weighted space-time systems"};
  app.require_subcommand(1);

  evocert::CommandOptions opts;
  unsigned long seed_value = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", opts.config_path, "scenario config file");
    if (config_required) c->required();
    sub->add_option("--seed", seed_value, "override the config seed")
        ->each([&](const std::string&) { seed_given = true; });
    sub->add_option("--out", opts.out_dir, "output directory");
  };

  auto* check = app.add_subcommand("check", "run hypothesis certificates");
  add_common(check, true);

  auto* solve = app.add_subcommand("solve", "certify and solve the scenario");
  add_common(solve, true);
  solve->add_flag("--force", opts.force, "solve even if a certificate fails");

  auto* verify = app.add_subcommand("verify", "run the theorem residual suite");
  add_common(verify, false);
  verify->add_flag("--suite", opts.suite, "run the built-in randomized suite");

  auto* example = app.add_subcommand("example", "run the built-in transport scenario");
  add_common(example, false);

  CLI11_PARSE(app, argc, argv);

  if (seed_given) opts.seed = seed_value;
  if (verify->parsed() && !opts.suite && opts.config_path.empty()) {
    std::fprintf(stderr, "verify needs --config or --suite\n");
    return 2;
  }

  try {
    evocert::RunReport report;
    if (check->parsed()) report = evocert::cmd_check(opts);
    if (solve->parsed()) report = evocert::cmd_solve(opts);
    if (verify->parsed()) report = evocert::cmd_verify(opts);
    if (example->parsed()) report = evocert::cmd_example(opts);
    print_summary(report);
    return report.all_ok() ? 0 : 1;
  } catch (const evocert::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
