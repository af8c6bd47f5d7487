#pragma once

#include <span>
#include <vector>

#include "envlab/lpspace.hpp"

namespace envlab {

/// Relative tolerance for rank and membership decisions.
inline constexpr double kDefaultTol = 1e-9;

/// A linear subspace of l_p^n(mu), stored through a canonical basis.
///
/// The canonical basis is the reduced row echelon form of the span,
/// orthonormalised in order with respect to the mu-weighted Euclidean inner
/// product. Two spanning sets of the same subspace therefore produce the same
/// basis up to rounding. The p-norm plays no role here.
class Subspace {
 public:
  /// Placeholder: the zero subspace of a one-atom space.
  Subspace() : space_(Space::uniform(1, 2.0)), basis_(1, 0) {}

  /// Span of a nonempty generator list; throws ZeroSubspaceError when every
  /// generator is below tol.
  static Subspace from_vectors(const Space& space, const std::vector<Vector>& gens,
                               double tol = kDefaultTol);
  /// Span of the columns of gens; may be the zero subspace.
  static Subspace span(const Space& space, const Matrix& gens, double tol = kDefaultTol);
  static Subspace zero(const Space& space);
  static Subspace whole(const Space& space);

  const Space& ambient() const { return space_; }
  /// n x dim, columns orthonormal for the reference inner product.
  const Matrix& basis() const { return basis_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  int n() const { return space_.n(); }
  bool is_zero() const { return dim() == 0; }
  bool is_whole() const { return dim() == n(); }

  std::vector<Vector> basis_vectors() const;
  /// Reference-orthogonal projection onto the subspace.
  Vector project(const Vector& f) const;
  Matrix projector() const;

  /// Same subspace regarded inside a space with a different exponent.
  Subspace with_exponent(double q) const;

 private:
  Subspace(Space space, Matrix basis) : space_(std::move(space)), basis_(std::move(basis)) {}

  Space space_;
  Matrix basis_;
};

/// Residual of the reference projection is at most tol * ||f||.
bool contains(const Subspace& y, const Vector& f, double tol = kDefaultTol);
/// inner is a subset of outer.
bool includes(const Subspace& outer, const Subspace& inner, double tol = kDefaultTol);
bool equal(const Subspace& y, const Subspace& z, double tol = kDefaultTol);

Subspace sum(const Subspace& y, const Subspace& z, double tol = kDefaultTol);
Subspace intersect(const Subspace& y, const Subspace& z, double tol = kDefaultTol);
Subspace orthogonal_complement(const Subspace& y);
/// Span of a.b for b in the basis of y.
Subspace image(const Subspace& y, const Matrix& a, double tol = kDefaultTol);

/// Smallest subspace containing y that is closed under pointwise max and min.
Subspace lattice_closure(const Subspace& y, double tol = kDefaultTol);
/// Subspace closed under pointwise max/min (sampled on the basis structure).
bool is_sublattice(const Subspace& y, double tol = kDefaultTol);

bool is_unital(const Subspace& y, double tol = kDefaultTol);

/// span{f/g}. Division by g is an isometry from l_p(mu) onto l_p(|g|^p mu),
/// so the result lives in the reweighted space. Throws FullSupportError when g
/// vanishes somewhere.
Subspace divide_by(const Subspace& y, const Vector& g);

/// Restriction of every element of y to the atoms in support (0-based).
Subspace restrict_to(const Subspace& y, std::span<const int> support);

}  // namespace envlab
