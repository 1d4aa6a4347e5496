#ifndef EVOCERT_SOLVER_HPP
#define EVOCERT_SOLVER_HPP

#include <optional>
#include <vector>

#include "evocert/material_law.hpp"
#include "evocert/operator.hpp"
#include "evocert/transport.hpp"

namespace evocert {

/// A fully specified discrete problem (d0 M0 + M1 + A) U = F.
struct Scenario {
  TimeGrid grid;
  MaterialLaw law;
  std::optional<TransportSpec> transport;       // coupled transport A
  std::optional<Eigen::MatrixXd> spatial_matrix;  // user-supplied A
  GridFunction forcing;
  double c_target = 0.0;

  Scenario(TimeGrid g, MaterialLaw l, GridFunction f)
      : grid(std::move(g)), law(std::move(l)), forcing(std::move(f)) {}

  /// Spatial block count (1 when there is no transport operator).
  int spatial_copies() const;
  /// Total unknowns per time node.
  int block_dim() const;
  /// The spatial matrix A_h (zero when absent), size block_dim().
  Eigen::MatrixXd spatial_block() const;
};

struct SolveReport {
  GridFunction solution;
  double margin = 0.0;          // discrete margin c_h of the assembled operator
  bool bound_ok = false;        // ||U||_W <= ||F||_W / c_h (1 + 1e-9)
  double causality_residual = 0.0;
  std::vector<double> step_conditions;
  double forcing_norm = 0.0;
  double solution_norm = 0.0;
  double residual_norm = 0.0;   // ||assemble(s) U - F||_W
};

/// D * mult(M0) + mult(M1) + I_t (x) A_h.  Block lower triangular in time.
SpaceTimeOperator assemble(const Scenario& s);

/// Block forward substitution for any block-lower-triangular operator.
/// Throws StepSingular with the failing node and a condition estimate.
GridFunction forward_substitute(const SpaceTimeOperator& op,
                                const GridFunction& f,
                                std::vector<double>* step_conditions = nullptr);

/// Causal time-march: step k solves
/// (M0(t_k)/h + M1(t_k) + A_h) u_k = f_k + M0(t_{k-1}) u_{k-1} / h.
SolveReport march(const Scenario& s);

/// M0^{1/2} D M0^{1/2} + M0^{1/2} M1 M0^{-1/2} + A  (commutator regime).
/// Requires d_low > 0 and, with a transport operator, a commuting coupling.
SpaceTimeOperator sandwich_operator(const Scenario& s);

/// Regime accretivity certificate: margin of the assembled operator
/// (lipschitz) or of the sandwich operator (commutator).  The a-priori
/// bound on the plain solution uses SolveReport::margin instead.
/// Throws HypothesisFailed when the regime hypotheses do not hold.
Certificate wellposedness_certificate(const Scenario& s);

/// ||M0^{1/2} U_plain - V_sandwich||_W between the plain solve and the
/// sandwiched solve of the conjugated system.
double equivalence_check(const Scenario& s);

}  // namespace evocert

#endif
