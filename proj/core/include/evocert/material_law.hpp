#ifndef EVOCERT_MATERIAL_LAW_HPP
#define EVOCERT_MATERIAL_LAW_HPP

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "evocert/certificate.hpp"
#include "evocert/operator.hpp"

namespace evocert {

using MatrixFamily = std::vector<Eigen::MatrixXd>;

enum class Regime { lipschitz, commutator };

/// Sampled coefficient families t_k -> (M0(t_k), M1(t_k), optionally
/// M0'(t_k)).  M0 samples must be symmetric; M1 may be anything bounded.
struct MaterialLaw {
  int dim = 1;
  MatrixFamily m0;
  MatrixFamily m1;
  std::optional<MatrixFamily> m0_prime;
  Regime regime = Regime::lipschitz;
  std::optional<double> d_low;  // lower bound: M0(t) >= d_low (commutator regime)
  bool derivative_estimated = false;

  /// Validates symmetry of m0 samples and dimension consistency.
  static MaterialLaw create(int dim, MatrixFamily m0, MatrixFamily m1,
                            std::optional<MatrixFamily> m0_prime,
                            Regime regime,
                            std::optional<double> d_low = std::nullopt);

  /// True when every M0 sample is positive semidefinite (up to 1e-12).
  bool m0_psd() const;
};

/// Constant-in-time family convenience.
MatrixFamily constant_family(const Eigen::MatrixXd& m, int n);

/// Block-diagonal multiplication operator: block at node k is
/// I_{spatial_copies} (x) M(t_k).
SpaceTimeOperator mult_operator(const MatrixFamily& samples, const TimeGrid& g,
                                int spatial_copies = 1);

/// Forward differences (M0(t_{k+1}) - M0(t_k))/h; last node copies its
/// predecessor.  O(h)-accurate for C^1 samples.
MatrixFamily lipschitz_derivative(const MatrixFamily& m0_samples,
                                  const TimeGrid& g);

/// Returns the law with m0_prime filled in (estimated by forward
/// differences when absent) and derivative_estimated flagged.
MaterialLaw with_derivative(const MaterialLaw& law, const TimeGrid& g);

/// margin = min_k lambda_min( rho M0(t_k) + 1/2 M0'(t_k) + sym M1(t_k) ),
/// threshold c.  Requires derivative samples.
Certificate check_pos_def_condition(const MaterialLaw& law, double rho,
                                    double c);

/// Symmetric PSD square root via eigendecomposition.  Eigenvalues below
/// -1e-12*scale throw NegativeEigenvalue; small negatives are clamped to 0.
Eigen::MatrixXd sqrt_psd(const Eigen::MatrixXd& m);

/// Smallest rate in the ascending grid whose pos-def certificate passes
/// with threshold c, or nullopt.
std::optional<double> rho0_lipschitz(const MaterialLaw& law, double c,
                                     const std::vector<double>& rho_grid);

/// rho0 = (c + max_k ||M0^{1/2} M1 M0^{-1/2}(t_k)||) / d_low.
double rho0_commutator(const MaterialLaw& law, double c);

/// ||D(M0 u) - M0 (D u) - M0' u||_W over nodes k >= 1 (the zero-history
/// jump at the first node is not a product-rule violation).
double product_rule_residual(const MaterialLaw& law, const TimeGrid& g,
                             const GridFunction& u);

}  // namespace evocert

#endif
