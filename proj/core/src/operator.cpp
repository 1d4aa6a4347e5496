#include "evocert/operator.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace evocert {

namespace {

void require_compatible(const SpaceTimeOperator& a, const SpaceTimeOperator& b) {
  if (!(a.grid == b.grid) || a.block_dim != b.block_dim ||
      a.matrix.rows() != b.matrix.rows())
    throw DimensionMismatch("operators on different grids or sizes");
}

}  // namespace

SpaceTimeOperator make_operator(Eigen::MatrixXd m, const TimeGrid& g,
                                int block_dim) {
  if (m.rows() != m.cols()) throw DimensionMismatch("operator matrix not square");
  if (m.rows() != static_cast<Eigen::Index>(g.n) * block_dim)
    throw DimensionMismatch("operator size != n * block_dim");
  return SpaceTimeOperator{std::move(m), g, block_dim};
}

SpaceTimeOperator identity_operator(const TimeGrid& g, int block_dim) {
  const Eigen::Index sz = static_cast<Eigen::Index>(g.n) * block_dim;
  return SpaceTimeOperator{Eigen::MatrixXd::Identity(sz, sz), g, block_dim};
}

SpaceTimeOperator zero_operator(const TimeGrid& g, int block_dim) {
  const Eigen::Index sz = static_cast<Eigen::Index>(g.n) * block_dim;
  return SpaceTimeOperator{Eigen::MatrixXd::Zero(sz, sz), g, block_dim};
}

GridFunction apply(const SpaceTimeOperator& T, const GridFunction& u) {
  if (!(T.grid == u.grid()) || T.block_dim != u.block_dim())
    throw DimensionMismatch("operator/function mismatch");
  return GridFunction(u.grid(), u.block_dim(), T.matrix * u.values());
}

SpaceTimeOperator operator+(const SpaceTimeOperator& a,
                            const SpaceTimeOperator& b) {
  require_compatible(a, b);
  return SpaceTimeOperator{a.matrix + b.matrix, a.grid, a.block_dim};
}

SpaceTimeOperator operator-(const SpaceTimeOperator& a,
                            const SpaceTimeOperator& b) {
  require_compatible(a, b);
  return SpaceTimeOperator{a.matrix - b.matrix, a.grid, a.block_dim};
}

SpaceTimeOperator operator*(const SpaceTimeOperator& a,
                            const SpaceTimeOperator& b) {
  require_compatible(a, b);
  return SpaceTimeOperator{a.matrix * b.matrix, a.grid, a.block_dim};
}

SpaceTimeOperator operator*(double s, const SpaceTimeOperator& a) {
  return SpaceTimeOperator{s * a.matrix, a.grid, a.block_dim};
}

SpaceTimeOperator weighted_adjoint(const SpaceTimeOperator& T) {
  const Eigen::VectorXd w = quad_weights(T.grid, T.block_dim);
  // T* = W^{-1} T^t W, W diagonal
  Eigen::MatrixXd adj =
      w.cwiseInverse().asDiagonal() * T.matrix.transpose() * w.asDiagonal();
  return SpaceTimeOperator{std::move(adj), T.grid, T.block_dim};
}

Certificate accretivity_margin(const SpaceTimeOperator& T) {
  const Eigen::VectorXd ws = quad_weights(T.grid, T.block_dim).cwiseSqrt();
  Eigen::MatrixXd s = ws.asDiagonal() * T.matrix * ws.cwiseInverse().asDiagonal();
  Eigen::MatrixXd sym = 0.5 * (s + s.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success)
    throw EigenSolveFailure("symmetric eigensolve failed");
  const Eigen::Index imin = 0;  // eigenvalues ascending
  Eigen::VectorXd witness = ws.cwiseInverse().asDiagonal() * es.eigenvectors().col(imin);
  return Certificate::make("accretivity", es.eigenvalues()(imin), 0.0,
                           std::move(witness));
}

SpaceTimeOperator resolvent(const SpaceTimeOperator& T, double lambda) {
  Eigen::MatrixXd shifted =
      lambda * Eigen::MatrixXd::Identity(T.size(), T.size()) + T.matrix;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(shifted);
  if (!lu.isInvertible())
    throw SingularOperator("lambda + T is singular at lambda = " +
                           std::to_string(lambda));
  return SpaceTimeOperator{lu.inverse(), T.grid, T.block_dim};
}

double commutator_residual(const SpaceTimeOperator& P,
                           const SpaceTimeOperator& T) {
  require_compatible(P, T);
  return operator_norm(P * T - T * P);
}

double operator_norm(const SpaceTimeOperator& T) {
  const Eigen::VectorXd ws = quad_weights(T.grid, T.block_dim).cwiseSqrt();
  Eigen::MatrixXd s = ws.asDiagonal() * T.matrix * ws.cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace evocert
