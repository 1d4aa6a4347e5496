#ifndef EVOCERT_TRANSPORT_HPP
#define EVOCERT_TRANSPORT_HPP

#include <Eigen/Core>

#include "evocert/certificate.hpp"
#include "evocert/material_law.hpp"
#include "evocert/operator.hpp"

namespace evocert {

/// Coupled transport on (0,1)^d: Au = u' with boundary coupling
/// u(0) = B u(1).  Accretivity is guaranteed only for ||B|| <= 1;
/// larger couplings are allowed for counterexample studies.
struct TransportSpec {
  int cells = 2;        // N
  int components = 1;   // d
  Eigen::MatrixXd coupling;  // B, d x d
  double coupling_norm = 0.0;

  double dx() const { return 1.0 / cells; }

  static TransportSpec create(int cells, int components,
                              const Eigen::MatrixXd& coupling);
};

/// Upwind backward difference of size d*N (cell-major layout):
/// row block j >= 1: (u_j - u_{j-1})/dx; row block 0: (u_0 - B u_{N-1})/dx.
Eigen::MatrixXd transport_operator(const TransportSpec& spec);

/// Accretivity margin of a spatial matrix in the plain Euclidean inner
/// product (weights factor out of the time lift).
Certificate spatial_accretivity_margin(const Eigen::MatrixXd& a);

/// Block-diagonal-in-time copy of a spatial matrix.
SpaceTimeOperator lift_to_spacetime(const Eigen::MatrixXd& a_spatial,
                                    const TimeGrid& g);

/// Passes iff max_k ||B M0(t_k) - M0(t_k) B|| <= 1e-12 * scale.
/// margin = tol*scale - residual, threshold 0.
Certificate coupling_commutes(const Eigen::MatrixXd& coupling,
                              const MatrixFamily& m0_samples);

}  // namespace evocert

#endif
