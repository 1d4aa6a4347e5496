#ifndef EVOCERT_TIME_DERIVATIVE_HPP
#define EVOCERT_TIME_DERIVATIVE_HPP

#include "evocert/operator.hpp"

namespace evocert {

/// Backward-difference time derivative with zero history at t_start:
/// (Du)_k = (u_k - u_{k-1})/h, u_{-1} = 0.  Block-diagonal over the
/// block_dim components; causal and lower bidiagonal in time.
SpaceTimeOperator d0_operator(const TimeGrid& g, int block_dim);

/// Certified discrete accretivity constant of the derivative,
/// (1 - e^{-2 rho h}) / (2h).  Converges to rho as h -> 0 with
/// |rho_h - rho| <= rho^2 h.
double d0_discrete_rate(double rho, double h);

/// W-norm of D*v - (-D_f v + 2 rho v) over interior nodes, D_f the forward
/// difference.  v must vanish at the first and last node.
double d0_adjoint_consistency(const TimeGrid& g, const GridFunction& v);

}  // namespace evocert

#endif
