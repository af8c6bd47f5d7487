#include "envlab/subspace.hpp"

#include <algorithm>
#include <cmath>

namespace envlab {
namespace {

// Orthonormal basis (whitened coordinates) of the column span of gw.
Matrix whitened_range(const Matrix& gw, double tol, bool& all_small) {
  all_small = true;
  if (gw.cols() == 0) return Matrix(gw.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(gw, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] <= tol) return Matrix(gw.rows(), 0);
  all_small = false;
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv[rank] > tol * sv[0]) ++rank;
  return svd.matrixU().leftCols(rank);
}

// Weighted modified Gram-Schmidt, applied twice for stability.
Matrix orthonormalise(const Space& space, Matrix rows_as_cols) {
  const Vector& w = space.weights();
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index j = 0; j < rows_as_cols.cols(); ++j) {
      for (Eigen::Index k = 0; k < j; ++k) {
        const double c = (w.array() * rows_as_cols.col(k).array() * rows_as_cols.col(j).array()).sum();
        rows_as_cols.col(j) -= c * rows_as_cols.col(k);
      }
      const double nj = std::sqrt((w.array() * rows_as_cols.col(j).array().square()).sum());
      rows_as_cols.col(j) /= nj;
    }
  }
  return rows_as_cols;
}

// Canonical basis from an orthonormal whitened basis u: reduced row echelon
// form of the row space, then orthonormalised in pivot order.
Matrix canonical_basis(const Space& space, const Matrix& u) {
  const int n = space.n();
  const Eigen::Index r = u.cols();
  if (r == 0) return Matrix(n, 0);
  const Vector inv_sqrt = space.weights().cwiseSqrt().cwiseInverse();
  Matrix rows = (inv_sqrt.asDiagonal() * u).transpose();  // r x n, original coordinates
  const double scale = rows.cwiseAbs().maxCoeff();
  const double pivot_tol = 1e-9 * scale;

  Eigen::Index lead = 0;
  for (int c = 0; c < n && lead < r; ++c) {
    Eigen::Index best = lead;
    for (Eigen::Index i = lead + 1; i < r; ++i)
      if (std::abs(rows(i, c)) > std::abs(rows(best, c))) best = i;
    if (std::abs(rows(best, c)) <= pivot_tol) continue;
    rows.row(lead).swap(rows.row(best));
    rows.row(lead) /= rows(lead, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      if (i != lead && rows(i, c) != 0.0) rows.row(i) -= rows(i, c) * rows.row(lead);
    }
    rows(lead, c) = 1.0;
    ++lead;
  }
  if (lead < r) {
    // Elimination lost rank to rounding; fall back to the SVD basis.
    return inv_sqrt.asDiagonal() * u;
  }
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    for (Eigen::Index j = 0; j < rows.cols(); ++j)
      if (std::abs(rows(i, j)) <= 1e-14 * scale) rows(i, j) = 0.0;
  return orthonormalise(space, rows.transpose());
}

Matrix whitened(const Space& space, const Matrix& m) {
  return space.weights().cwiseSqrt().asDiagonal() * m;
}

void check_same(const Subspace& y, const Subspace& z) {
  if (!(y.ambient() == z.ambient())) throw DimensionError("subspaces live in different spaces");
}

}  // namespace

Subspace Subspace::from_vectors(const Space& space, const std::vector<Vector>& gens, double tol) {
  if (gens.empty()) throw ZeroSubspaceError("no generators given");
  Matrix g(space.n(), static_cast<Eigen::Index>(gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k) {
    space.check(gens[k]);
    g.col(static_cast<Eigen::Index>(k)) = gens[k];
  }
  bool all_small = false;
  Matrix u = whitened_range(whitened(space, g), tol, all_small);
  if (all_small) throw ZeroSubspaceError("every generator is below tolerance");
  return Subspace(space, canonical_basis(space, u));
}

Subspace Subspace::span(const Space& space, const Matrix& gens, double tol) {
  if (gens.rows() != space.n()) throw DimensionError("generator matrix has wrong row count");
  bool all_small = false;
  Matrix u = whitened_range(whitened(space, gens), tol, all_small);
  return Subspace(space, canonical_basis(space, u));
}

Subspace Subspace::zero(const Space& space) { return Subspace(space, Matrix(space.n(), 0)); }

Subspace Subspace::whole(const Space& space) {
  return span(space, Matrix::Identity(space.n(), space.n()));
}

std::vector<Vector> Subspace::basis_vectors() const {
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (int j = 0; j < dim(); ++j) out.emplace_back(basis_.col(j));
  return out;
}

Vector Subspace::project(const Vector& f) const {
  space_.check(f);
  if (dim() == 0) return Vector::Zero(n());
  return basis_ * (basis_.transpose() * space_.weights().asDiagonal() * f);
}

Matrix Subspace::projector() const {
  if (dim() == 0) return Matrix::Zero(n(), n());
  return basis_ * basis_.transpose() * space_.weights().asDiagonal();
}

Subspace Subspace::with_exponent(double q) const { return Subspace(space_.with_exponent(q), basis_); }

bool contains(const Subspace& y, const Vector& f, double tol) {
  const Space& s = y.ambient();
  const double nf = reference_norm(s, f);
  if (nf == 0.0) return true;
  return reference_norm(s, f - y.project(f)) <= tol * nf;
}

bool includes(const Subspace& outer, const Subspace& inner, double tol) {
  check_same(outer, inner);
  for (int j = 0; j < inner.dim(); ++j)
    if (!contains(outer, inner.basis().col(j), tol)) return false;
  return true;
}

bool equal(const Subspace& y, const Subspace& z, double tol) {
  return y.dim() == z.dim() && includes(y, z, tol) && includes(z, y, tol);
}

Subspace sum(const Subspace& y, const Subspace& z, double tol) {
  check_same(y, z);
  Matrix g(y.n(), y.dim() + z.dim());
  g << y.basis(), z.basis();
  return Subspace::span(y.ambient(), g, tol);
}

Subspace intersect(const Subspace& y, const Subspace& z, double tol) {
  check_same(y, z);
  const Space& s = y.ambient();
  if (y.dim() == 0 || z.dim() == 0) return Subspace::zero(s);
  // x = B_y a lies in z iff (I - P_z) B_y a = 0.
  const Matrix residual = whitened(s, y.basis() - z.projector() * y.basis());
  Eigen::JacobiSVD<Matrix> svd(residual, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Matrix coeffs(y.dim(), 0);
  for (int k = 0; k < y.dim(); ++k) {
    const double sigma = k < sv.size() ? sv[k] : 0.0;
    if (sigma <= 100.0 * tol) {
      coeffs.conservativeResize(Eigen::NoChange, coeffs.cols() + 1);
      coeffs.col(coeffs.cols() - 1) = svd.matrixV().col(k);
    }
  }
  return Subspace::span(s, y.basis() * coeffs, tol);
}

Subspace orthogonal_complement(const Subspace& y) {
  const Space& s = y.ambient();
  const int n = s.n();
  if (y.dim() == 0) return Subspace::whole(s);
  if (y.dim() == n) return Subspace::zero(s);
  Eigen::HouseholderQR<Matrix> qr(whitened(s, y.basis()));
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix comp = s.weights().cwiseSqrt().cwiseInverse().asDiagonal() * q.rightCols(n - y.dim());
  return Subspace::span(s, comp);
}

Subspace image(const Subspace& y, const Matrix& a, double tol) {
  if (a.rows() != y.n() || a.cols() != y.n()) throw DimensionError("operator has wrong shape");
  return Subspace::span(y.ambient(), a * y.basis(), tol);
}

Subspace lattice_closure(const Subspace& y, double tol) {
  // A finite-dimensional vector sublattice of R^n is spanned by disjointly
  // supported nonnegative vectors. The one generated by y groups atoms whose
  // evaluation functionals on y are positively proportional; atoms where
  // every element of y vanishes are dropped.
  const Space& s = y.ambient();
  const int n = s.n();
  if (y.dim() == 0) return Subspace::zero(s);
  const Matrix& b = y.basis();
  Vector row_norm(n);
  for (int i = 0; i < n; ++i) row_norm[i] = b.row(i).norm();
  const double max_row = row_norm.maxCoeff();

  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  std::vector<Vector> gens;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0 || row_norm[i] <= tol * max_row) continue;
    const Eigen::RowVectorXd dir = b.row(i) / row_norm[i];
    Vector w = Vector::Zero(n);
    for (int j = i; j < n; ++j) {
      if (cls[j] >= 0 || row_norm[j] <= tol * max_row) continue;
      if ((b.row(j) / row_norm[j] - dir).norm() <= std::max(tol, 1e-12) * 10.0) {
        cls[j] = static_cast<int>(gens.size());
        w[j] = row_norm[j] / row_norm[i];
      }
    }
    gens.push_back(std::move(w));
  }
  Matrix g(n, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t k = 0; k < gens.size(); ++k) g.col(static_cast<Eigen::Index>(k)) = gens[k];
  return Subspace::span(s, g, tol);
}

bool is_sublattice(const Subspace& y, double tol) {
  return equal(lattice_closure(y, tol), y, std::max(tol, 1e-9) * 100.0);
}

bool is_unital(const Subspace& y, double tol) { return contains(y, ones(y.ambient()), tol); }

Subspace divide_by(const Subspace& y, const Vector& g) {
  const Space& s = y.ambient();
  s.check(g);
  for (int i = 0; i < s.n(); ++i)
    if (g[i] == 0.0 || !std::isfinite(g[i]))
      throw FullSupportError("divisor vanishes at atom " + std::to_string(i + 1));
  Vector w = s.weights();
  if (s.finite_p())
    for (int i = 0; i < s.n(); ++i) w[i] *= std::pow(std::abs(g[i]), s.p());
  const Space target(std::move(w), s.p());
  const Matrix q = g.cwiseInverse().asDiagonal() * y.basis();
  return Subspace::span(target, q);
}

Subspace restrict_to(const Subspace& y, std::span<const int> support) {
  const Space& s = y.ambient();
  if (support.empty()) throw DimensionError("empty support");
  Vector w(static_cast<Eigen::Index>(support.size()));
  Matrix rows(static_cast<Eigen::Index>(support.size()), y.dim());
  for (std::size_t k = 0; k < support.size(); ++k) {
    const int i = support[k];
    if (i < 0 || i >= s.n()) throw DimensionError("support index out of range");
    w[static_cast<Eigen::Index>(k)] = s.weight(i);
    rows.row(static_cast<Eigen::Index>(k)) = y.basis().row(i);
  }
  return Subspace::span(Space(std::move(w), s.p()), rows);
}

}  // namespace envlab
