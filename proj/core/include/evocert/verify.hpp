#ifndef EVOCERT_VERIFY_HPP
#define EVOCERT_VERIFY_HPP

#include <map>
#include <optional>
#include <string>

#include "evocert/operator.hpp"
#include "evocert/solver.hpp"

namespace evocert {

/// Result of one theorem-level residual check.
struct TheoremReport {
  std::string theorem;
  std::map<std::string, double> residuals;
  bool passed = false;
  std::string note;
  std::optional<Eigen::MatrixXd> witness_left;
  std::optional<Eigen::MatrixXd> witness_right;
};

/// ||(S+T)* - (S* + T*)||_W.  Exact additivity of the weighted adjoint;
/// a failure indicates an adjoint-implementation bug.
TheoremReport check_adjoint_sum(const SpaceTimeOperator& S,
                                const SpaceTimeOperator& T);

/// Residuals of (1+T)^{-1}(1+S)^{-1} - (1+S)^{-1}(1+T)^{-1} and of the
/// resolvent family (1+eps S)^{-1} T - T (1+eps S)^{-1}, eps in {1,.1,.01}.
TheoremReport check_resolvent_commutation(const SpaceTimeOperator& S,
                                          const SpaceTimeOperator& T);

/// ||(B*TB)* - B* T* B||_W for nonsingular B.  Throws SingularB.
TheoremReport check_sandwich_adjoint(const SpaceTimeOperator& B,
                                     const SpaceTimeOperator& T);

/// Weighted adjoint of the sandwiched operator against two candidate
/// middle terms: (a) M0^{-1/2} M1^t M0^{1/2} (the algebraic adjoint) and
/// (b) M0^{-1/2} M1^t M0^{-1/2}.  Candidate (a) must always pass.
TheoremReport check_evo_adjoint(const Scenario& s);

/// Seeded random search for a pair (M0 family, B) whose coupling fails to
/// commute and whose lifted resolvents fail to commute (residual > 1e-8).
TheoremReport counterexample_search(int dim, int trials, unsigned long seed);

/// Deterministic per-trial seed derivation (splitmix64 step).
unsigned long derive_seed(unsigned long master, unsigned long index);

}  // namespace evocert

#endif
