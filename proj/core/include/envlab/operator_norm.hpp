#pragma once

#include <cstdint>

#include "envlab/lpspace.hpp"

namespace envlab {

struct OperatorNorm {
  double value = 0.0;
  /// True for p in {1, 2, inf}; otherwise value is a lower bound.
  bool exact = false;
  /// A unit vector attaining value (for p = 2 and the polyhedral cases, an
  /// exact maximiser).
  Vector maximizer;
};

struct NormSearchOptions {
  int starts = 32;
  std::uint64_t seed = 42;
  int max_steps = 400;
};

/// Norm of a acting on coordinates of l_p^n(mu).
///
/// p = 1: max_j sum_i mu_i |a_ij| / mu_j. p = inf: max row sum.
/// p = 2: spectral norm of W^{1/2} a W^{-1/2}.
/// Otherwise a multi-start ascent on the unit sphere (Boyd's power
/// iteration through the duality maps), which only bounds the norm from below.
OperatorNorm op_norm(const Space& space, const Matrix& a, double p, const NormSearchOptions& options = {});

}  // namespace envlab
