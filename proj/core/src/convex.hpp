#pragma once

// Unconstrained minimisation of smooth (or nearly smooth) convex functions.

#include <functional>

#include "envlab/lpspace.hpp"

namespace envlab::detail {

/// f(x, grad) returns the value and, when grad is non-null, writes the gradient.
using Objective = std::function<double(const Vector&, Vector*)>;

struct MinimizeResult {
  Vector x;
  double value = 0.0;
  int iterations = 0;
};

/// BFGS with Armijo backtracking. Stops on a small gradient, a stalled line
/// search or max_iter.
MinimizeResult minimize_bfgs(const Objective& f, Vector x0, int max_iter = 500, double gtol = 1e-12);

}  // namespace envlab::detail
