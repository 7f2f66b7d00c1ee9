#pragma once

#include <stdexcept>
#include <string>

namespace svkit {

/// Base class for runtime failures of the numerical machinery. Precondition
/// violations throw std::invalid_argument instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iterative kernel (projection QP, simplex, local descent) hit its
/// iteration cap without reaching the requested tolerance.
struct ConvergenceError : Error {
  using Error::Error;
};

/// A refinement loop stopped making progress before the Cauchy stopping rule
/// was satisfied. Carries the best gap achieved.
struct RefinementStagnation : Error {
  RefinementStagnation(const std::string& what, double gap)
      : Error(what), achieved_gap(gap) {}
  double achieved_gap;
};

/// The halving search for a stability radius fell below the representable
/// floor; signals a near-degenerate configuration.
struct DeltaUnderflow : Error {
  using Error::Error;
};

/// One stage of the backward induction could not be completed.
struct StageFailure : Error {
  StageFailure(const std::string& what, int stage_index)
      : Error(what), stage(stage_index) {}
  int stage;
};

}  // namespace svkit
