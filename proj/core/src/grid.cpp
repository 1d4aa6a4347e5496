#include "evocert/grid.hpp"

#include <cmath>
#include <utility>

namespace evocert {

TimeGrid build_grid(double t_start, double t_end, int n, double rho) {
  if (!(t_end > t_start)) throw NonPositiveSpan("t_end must exceed t_start");
  if (n < 2) throw TooFewNodes("need at least 2 time nodes");
  if (rho < 0.0) throw NegativeRho("decay rate must be nonnegative");

  TimeGrid g;
  g.t_start = t_start;
  g.t_end = t_end;
  g.n = n;
  g.rho = rho;
  g.h = (t_end - t_start) / n;
  g.nodes.resize(n);
  g.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    g.nodes[k] = t_start + (k + 1) * g.h;
    g.weights[k] = std::exp(-2.0 * rho * g.nodes[k]);
  }
  return g;
}

GridFunction::GridFunction(TimeGrid grid, int block_dim, Eigen::VectorXd values)
    : grid_(std::move(grid)), block_dim_(block_dim), values_(std::move(values)) {
  if (values_.size() != static_cast<Eigen::Index>(grid_.n) * block_dim_)
    throw DimensionMismatch("grid function value count != n * block_dim");
}

GridFunction sample(const TimeGrid& g, int block_dim,
                    const std::function<Eigen::VectorXd(double)>& f) {
  GridFunction u(g, block_dim);
  for (int k = 0; k < g.n; ++k) {
    Eigen::VectorXd v = f(g.nodes[k]);
    if (v.size() != block_dim)
      throw DimensionMismatch("sampled block has wrong dimension");
    u.block(k) = v;
  }
  return u;
}

GridFunction sample_scalar(const TimeGrid& g,
                           const std::function<double(double)>& f) {
  GridFunction u(g, 1);
  for (int k = 0; k < g.n; ++k) u.values()(k) = f(g.nodes[k]);
  return u;
}

Eigen::VectorXd quad_weights(const TimeGrid& g, int block_dim) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(g.n) * block_dim);
  for (int k = 0; k < g.n; ++k)
    w.segment(static_cast<Eigen::Index>(k) * block_dim, block_dim)
        .setConstant(g.h * g.weights[k]);
  return w;
}

double weighted_inner(const GridFunction& u, const GridFunction& v) {
  if (!(u.grid() == v.grid())) throw GridMismatch("grid functions on different grids");
  if (u.block_dim() != v.block_dim())
    throw DimensionMismatch("grid functions with different block dimensions");
  const Eigen::VectorXd w = quad_weights(u.grid(), u.block_dim());
  return u.values().cwiseProduct(w).dot(v.values());
}

double weighted_norm(const GridFunction& u) {
  return std::sqrt(std::max(0.0, weighted_inner(u, u)));
}

}  // namespace evocert
