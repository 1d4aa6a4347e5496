#ifndef EVOCERT_COMMANDS_HPP
#define EVOCERT_COMMANDS_HPP

#include <optional>
#include <string>

#include "evocert/config.hpp"
#include "evocert/report.hpp"

namespace evocert {

struct CommandOptions {
  std::string config_path;
  std::optional<unsigned long> seed;  // overrides config seed
  std::string out_dir = ".";
  bool force = false;
  bool suite = false;
};

/// Hypothesis certificates only; no solve.
RunReport cmd_check(const CommandOptions& opts);

/// Certificates + causal solve; writes solution table and JSON report.
RunReport cmd_solve(const CommandOptions& opts);

/// Theorem suite (adjoint sum, resolvent commutation, sandwich adjoint,
/// evo adjoint, counterexample search) over seeded random instances.
RunReport cmd_verify(const CommandOptions& opts);

/// Built-in end-to-end scenario: coupled transport in d = 2 with a
/// rotational coupling and a scalar piecewise-constant coefficient.
RunReport cmd_example(const CommandOptions& opts);

}  // namespace evocert

#endif
