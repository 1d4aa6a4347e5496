#include "evocert/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "evocert/time_derivative.hpp"

namespace evocert {

int Scenario::spatial_copies() const {
  return transport ? transport->cells : 1;
}

int Scenario::block_dim() const { return law.dim * spatial_copies(); }

Eigen::MatrixXd Scenario::spatial_block() const {
  const int m = block_dim();
  if (transport) {
    if (transport->components != law.dim)
      throw DimensionMismatch("transport components != law dimension");
    return transport_operator(*transport);
  }
  if (spatial_matrix) {
    if (spatial_matrix->rows() != m || spatial_matrix->cols() != m)
      throw DimensionMismatch("user spatial matrix has wrong size");
    return *spatial_matrix;
  }
  return Eigen::MatrixXd::Zero(m, m);
}

SpaceTimeOperator assemble(const Scenario& s) {
  const int copies = s.spatial_copies();
  const SpaceTimeOperator d = d0_operator(s.grid, s.block_dim());
  const SpaceTimeOperator m0m = mult_operator(s.law.m0, s.grid, copies);
  const SpaceTimeOperator m1m = mult_operator(s.law.m1, s.grid, copies);
  const SpaceTimeOperator a = lift_to_spacetime(s.spatial_block(), s.grid);
  return d * m0m + m1m + a;
}

GridFunction forward_substitute(const SpaceTimeOperator& op,
                                const GridFunction& f,
                                std::vector<double>* step_conditions) {
  if (!(op.grid == f.grid()) || op.block_dim != f.block_dim())
    throw DimensionMismatch("operator/forcing mismatch");
  const int n = op.grid.n;
  const int m = op.block_dim;
  GridFunction u(f.grid(), m);
  for (int k = 0; k < n; ++k) {
    Eigen::MatrixXd diag = op.matrix.block(static_cast<Eigen::Index>(k) * m,
                                           static_cast<Eigen::Index>(k) * m, m, m);
    Eigen::VectorXd rhs = f.block(k);
    for (int j = 0; j < k; ++j) {
      Eigen::MatrixXd sub = op.matrix.block(static_cast<Eigen::Index>(k) * m,
                                            static_cast<Eigen::Index>(j) * m, m, m);
      if (!sub.isZero(0.0)) rhs -= sub * u.block(j);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diag,
                                          Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(m - 1);
    const double cond = (smin > 0.0) ? smax / smin
                                     : std::numeric_limits<double>::infinity();
    if (step_conditions) step_conditions->push_back(cond);
    if (!(smin > smax * 1e-14))
      throw StepSingular(k, cond,
                         "singular step matrix at node " + std::to_string(k) +
                             " (discrete m-accretivity fails there)");
    if (rhs.isZero(0.0)) {
      u.block(k).setZero();  // exact causality, no rounding
    } else {
      u.block(k) = svd.solve(rhs);
    }
  }
  return u;
}

namespace {

// Largest k0 such that f vanishes identically at nodes 0..k0-1.
int zero_prefix(const GridFunction& f) {
  int k0 = 0;
  while (k0 < f.grid().n && f.block(k0).isZero(0.0)) ++k0;
  return k0;
}

}  // namespace

SolveReport march(const Scenario& s) {
  const SpaceTimeOperator op = assemble(s);
  std::vector<double> conds;
  GridFunction u = forward_substitute(op, s.forcing, &conds);

  SolveReport r{std::move(u)};
  r.step_conditions = std::move(conds);
  r.forcing_norm = weighted_norm(s.forcing);
  r.solution_norm = weighted_norm(r.solution);

  GridFunction res(s.grid, s.block_dim(),
                   op.matrix * r.solution.values() - s.forcing.values());
  r.residual_norm = weighted_norm(res);

  const int k0 = zero_prefix(s.forcing);
  double causality = 0.0;
  for (int k = 0; k < k0; ++k)
    causality = std::max(causality, r.solution.block(k).lpNorm<Eigen::Infinity>());
  r.causality_residual = causality;

  r.margin = accretivity_margin(op).margin;
  r.bound_ok = r.margin > 0.0 &&
               r.solution_norm <= r.forcing_norm / r.margin * (1.0 + 1e-9);
  return r;
}

SpaceTimeOperator sandwich_operator(const Scenario& s) {
  if (s.law.regime != Regime::commutator)
    throw HypothesisFailed("sandwich operator needs the commutator regime");
  if (!s.law.d_low || *s.law.d_low <= 0.0)
    throw MissingLowerBound("sandwich operator requires d_low > 0");
  if (s.transport) {
    Certificate cc = coupling_commutes(s.transport->coupling, s.law.m0);
    if (!cc.passed)
      throw HypothesisFailed("coupling does not commute with m0 samples");
  }

  const int copies = s.spatial_copies();
  MatrixFamily roots(s.law.m0.size()), inv_roots(s.law.m0.size());
  for (std::size_t k = 0; k < s.law.m0.size(); ++k) {
    roots[k] = sqrt_psd(s.law.m0[k]);
    inv_roots[k] = roots[k].inverse();
  }
  const SpaceTimeOperator q = mult_operator(roots, s.grid, copies);
  const SpaceTimeOperator qinv = mult_operator(inv_roots, s.grid, copies);
  const SpaceTimeOperator d = d0_operator(s.grid, s.block_dim());
  const SpaceTimeOperator m1m = mult_operator(s.law.m1, s.grid, copies);
  const SpaceTimeOperator a = lift_to_spacetime(s.spatial_block(), s.grid);
  return q * d * q + q * m1m * qinv + a;
}

Certificate wellposedness_certificate(const Scenario& s) {
  if (s.law.regime == Regime::lipschitz) {
    MaterialLaw law = with_derivative(s.law, s.grid);
    Certificate hyp = check_pos_def_condition(law, s.grid.rho, s.c_target);
    if (!hyp.passed)
      throw HypothesisFailed("pos-def condition fails: margin " +
                             std::to_string(hyp.margin) + " < c " +
                             std::to_string(s.c_target));
    Certificate m = accretivity_margin(assemble(s));
    return Certificate::make("wellposedness_lipschitz", m.margin, s.c_target,
                             m.witness);
  }
  // commutator regime: the sandwich margin certifies the regime; the
  // a-priori bound on the plain solution uses the assembled operator's
  // own margin, reported separately in the SolveReport.
  Certificate sw = accretivity_margin(sandwich_operator(s));
  return Certificate::make("wellposedness_commutator", sw.margin, s.c_target,
                           sw.witness);
}

double equivalence_check(const Scenario& s) {
  const SpaceTimeOperator t_sw = sandwich_operator(s);
  const int copies = s.spatial_copies();
  MatrixFamily roots(s.law.m0.size());
  for (std::size_t k = 0; k < s.law.m0.size(); ++k)
    roots[k] = sqrt_psd(s.law.m0[k]);
  const SpaceTimeOperator q = mult_operator(roots, s.grid, copies);

  GridFunction u_plain = march(s).solution;
  GridFunction g_rhs(s.grid, s.block_dim(), q.matrix * s.forcing.values());
  GridFunction v_sw = forward_substitute(t_sw, g_rhs);

  GridFunction diff(s.grid, s.block_dim(),
                    q.matrix * u_plain.values() - v_sw.values());
  return weighted_norm(diff);
}

}  // namespace evocert
