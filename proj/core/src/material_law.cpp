#include "evocert/material_law.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "evocert/time_derivative.hpp"

namespace evocert {

namespace {

double family_scale(const MatrixFamily& f) {
  double s = 0.0;
  for (const auto& m : f) s = std::max(s, m.norm());
  return s;
}

double spectral_norm(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace

MaterialLaw MaterialLaw::create(int dim, MatrixFamily m0, MatrixFamily m1,
                                std::optional<MatrixFamily> m0_prime,
                                Regime regime, std::optional<double> d_low) {
  if (m0.size() != m1.size())
    throw SampleCountMismatch("m0 and m1 sample counts differ");
  if (m0_prime && m0_prime->size() != m0.size())
    throw SampleCountMismatch("m0_prime sample count differs from m0");
  const double scale = std::max(1.0, family_scale(m0));
  for (const auto& m : m0) {
    if (m.rows() != dim || m.cols() != dim)
      throw DimensionMismatch("m0 sample has wrong dimension");
    if ((m - m.transpose()).norm() > 1e-12 * scale)
      throw NotSymmetric("m0 samples must be symmetric");
  }
  for (const auto& m : m1)
    if (m.rows() != dim || m.cols() != dim)
      throw DimensionMismatch("m1 sample has wrong dimension");

  MaterialLaw law;
  law.dim = dim;
  law.m0 = std::move(m0);
  law.m1 = std::move(m1);
  law.m0_prime = std::move(m0_prime);
  law.regime = regime;
  law.d_low = d_low;

  if (regime == Regime::commutator) {
    if (!law.d_low)
      throw MissingLowerBound("commutator regime requires d_low > 0");
    for (const auto& m : law.m0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
      if (es.eigenvalues()(0) < *law.d_low - 1e-12)
        throw HypothesisFailed("m0 sample violates the lower bound d_low");
    }
  }
  return law;
}

bool MaterialLaw::m0_psd() const {
  for (const auto& m : m0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.eigenvalues()(0) < -1e-12 * std::max(1.0, m.norm())) return false;
  }
  return true;
}

MatrixFamily constant_family(const Eigen::MatrixXd& m, int n) {
  return MatrixFamily(static_cast<std::size_t>(n), m);
}

SpaceTimeOperator mult_operator(const MatrixFamily& samples, const TimeGrid& g,
                                int spatial_copies) {
  if (static_cast<int>(samples.size()) != g.n)
    throw SampleCountMismatch("sample count != number of time nodes");
  const int d = static_cast<int>(samples.front().rows());
  const int m = d * spatial_copies;
  const Eigen::Index sz = static_cast<Eigen::Index>(g.n) * m;
  Eigen::MatrixXd op = Eigen::MatrixXd::Zero(sz, sz);
  for (int k = 0; k < g.n; ++k)
    for (int c = 0; c < spatial_copies; ++c)
      op.block(static_cast<Eigen::Index>(k) * m + c * d,
               static_cast<Eigen::Index>(k) * m + c * d, d, d) = samples[k];
  return SpaceTimeOperator{std::move(op), g, m};
}

MatrixFamily lipschitz_derivative(const MatrixFamily& m0_samples,
                                  const TimeGrid& g) {
  if (m0_samples.size() < 2) throw TooFewSamples("need at least 2 samples");
  if (static_cast<int>(m0_samples.size()) != g.n)
    throw SampleCountMismatch("sample count != number of time nodes");
  MatrixFamily d(m0_samples.size());
  for (std::size_t k = 0; k + 1 < m0_samples.size(); ++k)
    d[k] = (m0_samples[k + 1] - m0_samples[k]) / g.h;
  d.back() = d[d.size() - 2];
  return d;
}

MaterialLaw with_derivative(const MaterialLaw& law, const TimeGrid& g) {
  if (law.m0_prime) return law;
  MaterialLaw out = law;
  out.m0_prime = lipschitz_derivative(law.m0, g);
  out.derivative_estimated = true;
  return out;
}

Certificate check_pos_def_condition(const MaterialLaw& law, double rho,
                                    double c) {
  if (!law.m0_prime)
    throw MissingDerivative("pos-def condition needs derivative samples");
  double margin = std::numeric_limits<double>::infinity();
  Eigen::VectorXd witness;
  for (std::size_t k = 0; k < law.m0.size(); ++k) {
    Eigen::MatrixXd s = rho * law.m0[k] + 0.5 * (*law.m0_prime)[k] +
                        0.5 * (law.m1[k] + law.m1[k].transpose());
    s = 0.5 * (s + s.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    if (es.info() != Eigen::Success)
      throw EigenSolveFailure("pos-def condition eigensolve failed");
    if (es.eigenvalues()(0) < margin) {
      margin = es.eigenvalues()(0);
      witness = es.eigenvectors().col(0);
    }
  }
  return Certificate::make("pos_def_condition", margin, c, witness);
}

Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& m) {
  const double scale = std::max(1.0, m.norm());
  if (m.rows() != m.cols() || (m - m.transpose()).norm() > 1e-12 * scale)
    throw NotSymmetric("sqrt_psd needs a symmetric matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw EigenSolveFailure("sqrt_psd eigensolve failed");
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-12 * scale)
      throw NegativeEigenvalue("matrix is not positive semidefinite");
    ev(i) = std::sqrt(std::max(0.0, ev(i)));
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

std::optional<double> rho0_lipschitz(const MaterialLaw& law, double c,
                                     const std::vector<double>& rho_grid) {
  if (rho_grid.empty()) throw ConfigError("empty rho grid");
  if (!std::is_sorted(rho_grid.begin(), rho_grid.end()))
    throw ConfigError("rho grid must be ascending");
  const bool psd = law.m0_psd();
  bool seen_pass = false;
  std::optional<double> first_pass;
  for (double rho : rho_grid) {
    const bool pass = check_pos_def_condition(law, rho, c).passed;
    if (pass && !first_pass) first_pass = rho;
    if (psd && seen_pass && !pass)
      throw HypothesisFailed(
          "pos-def margin not monotone in rho despite PSD m0");
    seen_pass = seen_pass || pass;
  }
  return first_pass;
}

double rho0_commutator(const MaterialLaw& law, double c) {
  if (!law.d_low || *law.d_low <= 0.0)
    throw MissingLowerBound("rho0_commutator requires d_low > 0");
  double sup = 0.0;
  for (std::size_t k = 0; k < law.m0.size(); ++k) {
    Eigen::MatrixXd r = sqrt_psd(law.m0[k]);
    Eigen::MatrixXd rinv = r.inverse();
    sup = std::max(sup, spectral_norm(r * law.m1[k] * rinv));
  }
  return (c + sup) / *law.d_low;
}

double product_rule_residual(const MaterialLaw& law, const TimeGrid& g,
                             const GridFunction& u) {
  if (!law.m0_prime)
    throw MissingDerivative("product rule residual needs derivative samples");
  const int m = u.block_dim();
  const int copies = m / law.dim;
  if (copies * law.dim != m)
    throw DimensionMismatch("block dimension not a multiple of law dimension");
  const SpaceTimeOperator d = d0_operator(g, m);
  const SpaceTimeOperator m0m = mult_operator(law.m0, g, copies);
  const SpaceTimeOperator m0p = mult_operator(*law.m0_prime, g, copies);
  GridFunction r(g, m);
  r.values() = d.matrix * (m0m.matrix * u.values()) -
               m0m.matrix * (d.matrix * u.values()) - m0p.matrix * u.values();
  r.block(0).setZero();  // zero-history jump, not a product-rule violation
  return weighted_norm(r);
}

}  // namespace evocert
