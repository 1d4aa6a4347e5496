#ifndef EVOCERT_ERRORS_HPP
#define EVOCERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace evocert {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// grid construction / pairing
struct NonPositiveSpan : Error { using Error::Error; };
struct TooFewNodes : Error { using Error::Error; };
struct NegativeRho : Error { using Error::Error; };
struct GridMismatch : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// operator algebra
struct EigenSolveFailure : Error { using Error::Error; };
struct SingularOperator : Error { using Error::Error; };
struct SingularShift : Error { using Error::Error; };
struct SingularB : Error { using Error::Error; };

// time derivative
struct UnsupportedBoundarySupport : Error { using Error::Error; };

// material laws
struct SampleCountMismatch : Error { using Error::Error; };
struct TooFewSamples : Error { using Error::Error; };
struct MissingDerivative : Error { using Error::Error; };
struct NotSymmetric : Error { using Error::Error; };
struct NegativeEigenvalue : Error { using Error::Error; };
struct MissingLowerBound : Error { using Error::Error; };

// solver
struct StepSingular : Error {
  StepSingular(int node, double condition, const std::string& what)
      : Error(what), node(node), condition(condition) {}
  int node;
  double condition;
};
struct HypothesisFailed : Error { using Error::Error; };

// configuration
struct ConfigError : Error { using Error::Error; };

}  // namespace evocert

#endif
