#ifndef EVOCERT_GRID_HPP
#define EVOCERT_GRID_HPP

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "evocert/errors.hpp"

namespace evocert {

/// Uniform time mesh on [t_start, t_end] with exponential decay weights
/// w_k = exp(-2 rho t_k).  Nodes sit at t_start + (k+1) h; the value at
/// t_start itself is the implicit zero history.
struct TimeGrid {
  double t_start = 0.0;
  double t_end = 1.0;
  int n = 2;
  double rho = 0.0;
  double h = 0.5;
  std::vector<double> nodes;
  std::vector<double> weights;

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
    return a.t_start == b.t_start && a.t_end == b.t_end && a.n == b.n &&
           a.rho == b.rho;
  }
};

TimeGrid build_grid(double t_start, double t_end, int n, double rho);

/// Space-time vector: n blocks of dimension block_dim over a TimeGrid.
class GridFunction {
 public:
  GridFunction(TimeGrid grid, int block_dim)
      : grid_(std::move(grid)),
        block_dim_(block_dim),
        values_(Eigen::VectorXd::Zero(
            static_cast<Eigen::Index>(grid_.n) * block_dim)) {}

  GridFunction(TimeGrid grid, int block_dim, Eigen::VectorXd values);

  const TimeGrid& grid() const { return grid_; }
  int block_dim() const { return block_dim_; }
  const Eigen::VectorXd& values() const { return values_; }
  Eigen::VectorXd& values() { return values_; }

  Eigen::VectorBlock<Eigen::VectorXd> block(int k) {
    return values_.segment(static_cast<Eigen::Index>(k) * block_dim_,
                           block_dim_);
  }
  Eigen::VectorBlock<const Eigen::VectorXd> block(int k) const {
    return values_.segment(static_cast<Eigen::Index>(k) * block_dim_,
                           block_dim_);
  }

 private:
  TimeGrid grid_;
  int block_dim_;
  Eigen::VectorXd values_;
};

/// Sample a time-dependent block function onto the grid.
GridFunction sample(const TimeGrid& g, int block_dim,
                    const std::function<Eigen::VectorXd(double)>& f);

/// Scalar convenience overload (block_dim = 1).
GridFunction sample_scalar(const TimeGrid& g,
                           const std::function<double(double)>& f);

/// Diagonal quadrature weights h*w_k, repeated block_dim times per node.
Eigen::VectorXd quad_weights(const TimeGrid& g, int block_dim);

/// Sum_k h w_k <u_k, v_k>.
double weighted_inner(const GridFunction& u, const GridFunction& v);
double weighted_norm(const GridFunction& u);

}  // namespace evocert

#endif
