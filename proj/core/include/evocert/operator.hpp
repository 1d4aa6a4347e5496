#ifndef EVOCERT_OPERATOR_HPP
#define EVOCERT_OPERATOR_HPP

#include <Eigen/Core>

#include "evocert/certificate.hpp"
#include "evocert/grid.hpp"

namespace evocert {

/// Finite matrix acting on grid functions.  Carries its grid so that
/// adjoints and norms are taken in the weighted geometry.
struct SpaceTimeOperator {
  Eigen::MatrixXd matrix;
  TimeGrid grid;
  int block_dim = 1;

  Eigen::Index size() const { return matrix.rows(); }
};

SpaceTimeOperator make_operator(Eigen::MatrixXd m, const TimeGrid& g,
                                int block_dim);

SpaceTimeOperator identity_operator(const TimeGrid& g, int block_dim);
SpaceTimeOperator zero_operator(const TimeGrid& g, int block_dim);

GridFunction apply(const SpaceTimeOperator& T, const GridFunction& u);

SpaceTimeOperator operator+(const SpaceTimeOperator& a,
                            const SpaceTimeOperator& b);
SpaceTimeOperator operator-(const SpaceTimeOperator& a,
                            const SpaceTimeOperator& b);
SpaceTimeOperator operator*(const SpaceTimeOperator& a,
                            const SpaceTimeOperator& b);
SpaceTimeOperator operator*(double s, const SpaceTimeOperator& a);

/// T* = W^{-1} T^t W with W the diagonal weight-quadrature matrix, so that
/// <Tu, v>_W = <u, T*v>_W exactly.
SpaceTimeOperator weighted_adjoint(const SpaceTimeOperator& T);

/// Least eigenvalue of the W-symmetrised part of T; witness is a minimising
/// vector of unit W-norm.  Threshold 0 (plain accretivity).
Certificate accretivity_margin(const SpaceTimeOperator& T);

/// (lambda + T)^{-1}.  Throws SingularOperator if the shift is singular.
SpaceTimeOperator resolvent(const SpaceTimeOperator& T, double lambda);

/// Weighted operator norm of PT - TP.
double commutator_residual(const SpaceTimeOperator& P,
                           const SpaceTimeOperator& T);

/// Spectral norm of W^{1/2} M W^{-1/2}.
double operator_norm(const SpaceTimeOperator& T);

}  // namespace evocert

#endif
