#include "evocert/transport.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace evocert {

TransportSpec TransportSpec::create(int cells, int components,
                                    const Eigen::MatrixXd& coupling) {
  if (cells < 2) throw TooFewNodes("transport needs at least 2 cells");
  if (coupling.rows() != components || coupling.cols() != components)
    throw DimensionMismatch("coupling matrix must be d x d");
  TransportSpec spec;
  spec.cells = cells;
  spec.components = components;
  spec.coupling = coupling;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(coupling);
  spec.coupling_norm = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return spec;
}

Eigen::MatrixXd transport_operator(const TransportSpec& spec) {
  const int n = spec.cells;
  const int d = spec.components;
  const double inv_dx = static_cast<double>(n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n * d, n * d);
  for (int j = 0; j < n; ++j) {
    a.block(j * d, j * d, d, d) = inv_dx * Eigen::MatrixXd::Identity(d, d);
    if (j > 0)
      a.block(j * d, (j - 1) * d, d, d) =
          -inv_dx * Eigen::MatrixXd::Identity(d, d);
  }
  // inflow row: (u_0 - B u_{N-1}) / dx
  a.block(0, (n - 1) * d, d, d) = -inv_dx * spec.coupling;
  return a;
}

Certificate spatial_accretivity_margin(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success)
    throw EigenSolveFailure("spatial accretivity eigensolve failed");
  return Certificate::make("spatial_accretivity", es.eigenvalues()(0), 0.0,
                           es.eigenvectors().col(0));
}

SpaceTimeOperator lift_to_spacetime(const Eigen::MatrixXd& a_spatial,
                                    const TimeGrid& g) {
  if (a_spatial.rows() != a_spatial.cols())
    throw DimensionMismatch("spatial matrix not square");
  const int m = static_cast<int>(a_spatial.rows());
  const Eigen::Index sz = static_cast<Eigen::Index>(g.n) * m;
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(sz, sz);
  for (int k = 0; k < g.n; ++k)
    op.block(static_cast<Eigen::Index>(k) * m, static_cast<Eigen::Index>(k) * m,
             m, m) = a_spatial;
  return SpaceTimeOperator{std::move(op), g, m};
}

Certificate coupling_commutes(const Eigen::MatrixXd& coupling,
                              const MatrixFamily& m0_samples) {
  double residual = 0.0;
  double scale = std::max(1.0, coupling.norm());
  for (const auto& m : m0_samples) {
    if (m.rows() != coupling.rows())
      throw DimensionMismatch("coupling and m0 samples have different sizes");
    residual = std::max(residual, (coupling * m - m * coupling).norm());
    scale = std::max(scale, coupling.norm() * m.norm());
  }
  const double tol = 1e-12 * scale;
  return Certificate::make("coupling_commutes", tol - residual, 0.0);
}

}  // namespace evocert
