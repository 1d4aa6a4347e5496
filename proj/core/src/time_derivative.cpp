#include "evocert/time_derivative.hpp"

#include <cmath>

namespace evocert {

SpaceTimeOperator d0_operator(const TimeGrid& g, int block_dim) {
  const Eigen::Index sz = static_cast<Eigen::Index>(g.n) * block_dim;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(sz, sz);
  const double inv_h = 1.0 / g.h;
  for (int k = 0; k < g.n; ++k) {
    for (int j = 0; j < block_dim; ++j) {
      const Eigen::Index row = static_cast<Eigen::Index>(k) * block_dim + j;
      d(row, row) = inv_h;
      if (k > 0) d(row, row - block_dim) = -inv_h;
    }
  }
  return SpaceTimeOperator{std::move(d), g, block_dim};
}

double d0_discrete_rate(double rho, double h) {
  if (rho == 0.0) return 0.0;
  return (1.0 - std::exp(-2.0 * rho * h)) / (2.0 * h);
}

double d0_adjoint_consistency(const TimeGrid& g, const GridFunction& v) {
  if (!(v.grid() == g)) throw GridMismatch("function not on the given grid");
  const int m = v.block_dim();
  if (v.block(0).norm() != 0.0 || v.block(g.n - 1).norm() != 0.0)
    throw UnsupportedBoundarySupport(
        "function must vanish at the first and last node");

  const SpaceTimeOperator adj = weighted_adjoint(d0_operator(g, m));
  GridFunction lhs = apply(adj, v);

  // -D_f v + 2 rho v on interior nodes
  GridFunction rhs(g, m);
  for (int k = 0; k < g.n; ++k) {
    Eigen::VectorXd next = (k + 1 < g.n) ? Eigen::VectorXd(v.block(k + 1))
                                         : Eigen::VectorXd::Zero(m);
    rhs.block(k) = -(next - v.block(k)) / g.h + 2.0 * g.rho * v.block(k);
  }

  GridFunction r(g, m);
  for (int k = 1; k + 1 < g.n; ++k) r.block(k) = lhs.block(k) - rhs.block(k);
  return weighted_norm(r);
}

}  // namespace evocert
