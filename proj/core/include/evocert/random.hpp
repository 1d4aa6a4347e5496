#ifndef EVOCERT_RANDOM_HPP
#define EVOCERT_RANDOM_HPP

#include <Eigen/Core>
#include <Eigen/SVD>
#include <cstdint>
#include <random>

namespace evocert {

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int rows, int cols,
                                     double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n,
                                     double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = dist(rng);
  return v;
}

inline Eigen::MatrixXd random_spd(std::mt19937_64& rng, int n,
                                  double shift = 0.1) {
  Eigen::MatrixXd m = random_matrix(rng, n, n);
  return m * m.transpose() + shift * Eigen::MatrixXd::Identity(n, n);
}

/// Random matrix scaled to a target spectral norm.
inline Eigen::MatrixXd random_with_norm(std::mt19937_64& rng, int n,
                                        double target_norm) {
  Eigen::MatrixXd m = random_matrix(rng, n, n);
  double norm = m.jacobiSvd().singularValues()(0);
  if (norm == 0.0) return Eigen::MatrixXd::Zero(n, n);
  return (target_norm / norm) * m;
}

}  // namespace evocert

#endif
