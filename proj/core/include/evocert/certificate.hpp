#ifndef EVOCERT_CERTIFICATE_HPP
#define EVOCERT_CERTIFICATE_HPP

#include <Eigen/Core>
#include <optional>
#include <string>
#include <utility>

namespace evocert {

/// Outcome of a checked hypothesis.  Invariant: passed == (margin >= threshold).
struct Certificate {
  std::string kind;
  double margin = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::optional<Eigen::VectorXd> witness;

  static Certificate make(std::string kind, double margin, double threshold,
                          std::optional<Eigen::VectorXd> witness = {}) {
    Certificate c;
    c.kind = std::move(kind);
    c.margin = margin;
    c.threshold = threshold;
    c.passed = margin >= threshold;
    c.witness = std::move(witness);
    return c;
  }

  /// Same margin, different threshold.
  Certificate with_threshold(double t) const {
    return make(kind, margin, t, witness);
  }
};

}  // namespace evocert

#endif
