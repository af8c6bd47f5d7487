#pragma once

// Dense two-phase simplex for the small linear programs of the library.

#include <vector>

#include "envlab/lpspace.hpp"

namespace envlab::detail {

/// minimize c.x  s.t.  a_eq x = b_eq,  a_ub x <= b_ub,  x_j >= 0 unless free_var[j].
struct LinearProgram {
  Vector c;
  Matrix a_eq;
  Vector b_eq;
  Matrix a_ub;
  Vector b_ub;
  std::vector<bool> free_var;  // empty: all variables free

  explicit LinearProgram(int num_vars)
      : c(Vector::Zero(num_vars)), a_eq(0, num_vars), b_eq(0), a_ub(0, num_vars), b_ub(0),
        free_var(static_cast<std::size_t>(num_vars), true) {}

  int num_vars() const { return static_cast<int>(c.size()); }
  /// Appends a row; returns its index.
  int add_eq(const Vector& row, double rhs);
  int add_ub(const Vector& row, double rhs);
};

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpResult {
  LpStatus status = LpStatus::iteration_limit;
  Vector x;
  double objective = 0.0;
  int pivots = 0;
};

LpResult solve_lp(const LinearProgram& lp, int max_pivots = 200'000);

}  // namespace envlab::detail
