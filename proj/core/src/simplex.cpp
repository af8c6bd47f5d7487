#include "simplex.hpp"

#include <cmath>
#include <limits>

namespace envlab::detail {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-11;
constexpr double kFeasTol = 1e-9;
constexpr int kDegenerateRun = 50;

struct Tableau {
  // Rows 0..m-1 are constraints, row m is the reduced-cost row; last column is the rhs.
  Matrix t;
  std::vector<int> basis;
  std::vector<bool> blocked;
  int m = 0;
  int cols = 0;

  double rhs(int i) const { return t(i, cols); }

  void pivot(int r, int s) {
    t.row(r) /= t(r, s);
    for (int i = 0; i <= m; ++i) {
      if (i != r && t(i, s) != 0.0) t.row(i) -= t(i, s) * t.row(r);
    }
    t(r, s) = 1.0;
    basis[static_cast<std::size_t>(r)] = s;
  }

  // Returns the status of the phase; pivots accumulate into count.
  LpStatus run(int& count, int max_pivots) {
    int degenerate = 0;
    while (count < max_pivots) {
      const bool bland = degenerate >= kDegenerateRun;
      int s = -1;
      double best = -kCostTol;
      for (int j = 0; j < cols; ++j) {
        if (blocked[static_cast<std::size_t>(j)]) continue;
        const double rc = t(m, j);
        if (rc < -kCostTol) {
          if (bland) {
            s = j;
            break;
          }
          if (rc < best) {
            best = rc;
            s = j;
          }
        }
      }
      if (s < 0) return LpStatus::optimal;
      int r = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        const double a = t(i, s);
        if (a > kPivotTol) {
          const double q = std::max(0.0, rhs(i)) / a;
          if (q < ratio - 1e-14 ||
              (q <= ratio + 1e-14 && r >= 0 && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(r)])) {
            ratio = q;
            r = i;
          }
        }
      }
      if (r < 0) return LpStatus::unbounded;
      degenerate = ratio <= 1e-14 ? degenerate + 1 : 0;
      pivot(r, s);
      ++count;
    }
    return LpStatus::iteration_limit;
  }
};

}  // namespace

int LinearProgram::add_eq(const Vector& row, double rhs) {
  const auto r = a_eq.rows();
  a_eq.conservativeResize(r + 1, Eigen::NoChange);
  a_eq.row(r) = row.transpose();
  b_eq.conservativeResize(r + 1);
  b_eq[r] = rhs;
  return static_cast<int>(r);
}

int LinearProgram::add_ub(const Vector& row, double rhs) {
  const auto r = a_ub.rows();
  a_ub.conservativeResize(r + 1, Eigen::NoChange);
  a_ub.row(r) = row.transpose();
  b_ub.conservativeResize(r + 1);
  b_ub[r] = rhs;
  return static_cast<int>(r);
}

LpResult solve_lp(const LinearProgram& lp, int max_pivots) {
  const int nv = lp.num_vars();
  const int meq = static_cast<int>(lp.a_eq.rows());
  const int mub = static_cast<int>(lp.a_ub.rows());
  const int m = meq + mub;

  // Column layout: structural (free variables split), slacks, artificials.
  std::vector<int> plus(static_cast<std::size_t>(nv)), minus(static_cast<std::size_t>(nv), -1);
  int ncol = 0;
  for (int j = 0; j < nv; ++j) {
    plus[static_cast<std::size_t>(j)] = ncol++;
    const bool is_free = lp.free_var.empty() || lp.free_var[static_cast<std::size_t>(j)];
    if (is_free) minus[static_cast<std::size_t>(j)] = ncol++;
  }
  const int slack0 = ncol;
  ncol += mub;
  const int art0 = ncol;
  ncol += m;

  Tableau tab;
  tab.m = m;
  tab.cols = ncol;
  tab.t = Matrix::Zero(m + 1, ncol + 1);
  tab.basis.assign(static_cast<std::size_t>(m), 0);
  tab.blocked.assign(static_cast<std::size_t>(ncol), false);
  for (int i = 0; i < m; ++i) {
    const bool is_eq = i < meq;
    const auto row = is_eq ? lp.a_eq.row(i) : lp.a_ub.row(i - meq);
    double b = is_eq ? lp.b_eq[i] : lp.b_ub[i - meq];
    for (int j = 0; j < nv; ++j) {
      tab.t(i, plus[static_cast<std::size_t>(j)]) = row[j];
      if (minus[static_cast<std::size_t>(j)] >= 0) tab.t(i, minus[static_cast<std::size_t>(j)]) = -row[j];
    }
    if (!is_eq) tab.t(i, slack0 + (i - meq)) = 1.0;
    tab.t(i, ncol) = b;
    if (b < 0.0) tab.t.row(i) *= -1.0;
    tab.t(i, art0 + i) = 1.0;
    tab.basis[static_cast<std::size_t>(i)] = art0 + i;
  }

  // Phase 1: minimise the sum of artificials.
  for (int i = 0; i < m; ++i) tab.t.row(m) -= tab.t.row(i);
  for (int i = 0; i < m; ++i) tab.t(m, art0 + i) = 0.0;

  LpResult result;
  int count = 0;
  LpStatus st = tab.run(count, max_pivots);
  result.pivots = count;
  if (st == LpStatus::iteration_limit) return result;
  const double scale = std::max(1.0, tab.t.col(ncol).head(m).cwiseAbs().maxCoeff());
  if (-tab.t(m, ncol) > kFeasTol * scale) {
    result.status = LpStatus::infeasible;
    return result;
  }

  // Drive artificials out of the basis; rows where that fails are redundant.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < art0) continue;
    int s = -1;
    double best = 1e-9;
    for (int j = 0; j < art0; ++j) {
      if (std::abs(tab.t(i, j)) > best) {
        best = std::abs(tab.t(i, j));
        s = j;
      }
    }
    if (s >= 0) tab.pivot(i, s);
  }
  for (int j = art0; j < ncol; ++j) tab.blocked[static_cast<std::size_t>(j)] = true;

  // Phase 2.
  tab.t.row(m).setZero();
  for (int j = 0; j < nv; ++j) {
    tab.t(m, plus[static_cast<std::size_t>(j)]) = lp.c[j];
    if (minus[static_cast<std::size_t>(j)] >= 0) tab.t(m, minus[static_cast<std::size_t>(j)]) = -lp.c[j];
  }
  for (int i = 0; i < m; ++i) {
    const int b = tab.basis[static_cast<std::size_t>(i)];
    if (tab.t(m, b) != 0.0) tab.t.row(m) -= tab.t(m, b) * tab.t.row(i);
  }
  st = tab.run(count, max_pivots);
  result.pivots = count;
  result.status = st;
  if (st != LpStatus::optimal) return result;

  Vector col_value = Vector::Zero(ncol);
  for (int i = 0; i < m; ++i) col_value[tab.basis[static_cast<std::size_t>(i)]] = tab.rhs(i);
  result.x.resize(nv);
  for (int j = 0; j < nv; ++j) {
    double v = col_value[plus[static_cast<std::size_t>(j)]];
    if (minus[static_cast<std::size_t>(j)] >= 0) v -= col_value[minus[static_cast<std::size_t>(j)]];
    result.x[j] = v;
  }
  result.objective = lp.c.dot(result.x);
  return result;
}

}  // namespace envlab::detail
