#pragma once

// The ambient space l_p^n(mu): a finite set of weighted atoms with a p-norm.

#include <Eigen/Dense>

#include <limits>

#include "envlab/errors.hpp"

namespace envlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Weighted discrete measure space with exponent p in [1, inf].
///
/// p = inf is accepted so that sup-norms can be evaluated; everything that
/// needs strict convexity or a duality map rejects it.
class Space {
 public:
  Space(Vector weights, double p);

  static Space uniform(int n, double p);

  int n() const { return static_cast<int>(weights_.size()); }
  double p() const { return p_; }
  const Vector& weights() const { return weights_; }
  double weight(int i) const { return weights_[i]; }
  double total_mass() const { return weights_.sum(); }

  bool finite_p() const { return p_ < kInfinity; }
  bool is_hilbert() const { return p_ == 2.0; }
  bool strictly_convex() const { return p_ > 1.0 && p_ < kInfinity; }

  /// Same atoms and weights, different exponent.
  Space with_exponent(double q) const;
  /// l_{p'}^n(mu): the dual under the weighted pairing.
  Space dual() const;

  /// True when both spaces have the same atoms and weights (relative 1e-12).
  bool same_measure(const Space& other) const;
  bool operator==(const Space& other) const { return p_ == other.p_ && same_measure(other); }

  /// Throws DimensionError unless v has n coordinates.
  void check(const Vector& v) const;
  void check_same_measure(const Space& other) const;

 private:
  Vector weights_;
  double p_;
};

double dual_exponent(double p);

double norm(const Space& space, const Vector& f);
/// Weighted p-norm for an explicit exponent, ignoring space.p().
double norm(const Space& space, const Vector& f, double p);

/// <g, f>_mu = sum_i mu_i g_i f_i.
double pairing(const Space& space, const Vector& g, const Vector& f);

/// The mu-weighted Euclidean inner product used for all linear algebra.
inline double reference_inner(const Space& space, const Vector& a, const Vector& b) {
  return pairing(space, a, b);
}
double reference_norm(const Space& space, const Vector& f);

Vector ones(const Space& space);
Vector unit_vector(const Space& space, int i);

/// Jf = |f|^{2-p} sign(f)|f|^{p-1}: homogeneous of degree one, with
/// ||Jf||_{p'} = ||f||_p and <Jf, f> = ||f||_p^2.
Vector duality_map(const Space& space, const Vector& f);

/// Mazur map from the sphere of l_p(mu) to the sphere of l_q(mu), extended
/// positively homogeneously: f -> ||f||_p * sign(u)|u|^{p/q}, u = f/||f||_p.
Vector mazur_map(const Space& source, double target_p, const Vector& f);

/// W^{1/2} A W^{-1/2}: the matrix of A in coordinates where the reference
/// inner product is Euclidean.
Matrix whiten(const Space& space, const Matrix& a);
Matrix unwhiten(const Space& space, const Matrix& a);

/// mu-adjoint W^{-1} A^T W, so that <g, A f>_mu = <A* g, f>_mu.
Matrix adjoint(const Space& space, const Matrix& a);

/// Frobenius norm of the whitened matrix; dominates the reference operator norm.
double reference_matrix_norm(const Space& space, const Matrix& a);

}  // namespace envlab
