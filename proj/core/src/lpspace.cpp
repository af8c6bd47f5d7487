#include "envlab/lpspace.hpp"

#include <cmath>
#include <string>

namespace envlab {

Space::Space(Vector weights, double p) : weights_(std::move(weights)), p_(p) {
  if (weights_.size() < 1) throw DomainError("space needs at least one atom");
  if (!(p_ >= 1.0)) throw DomainError("exponent p must lie in [1, inf], got " + std::to_string(p_));
  for (Eigen::Index i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i]))
      throw DomainError("weight " + std::to_string(i + 1) + " is not strictly positive");
  }
}

Space Space::uniform(int n, double p) {
  if (n < 1) throw DomainError("space needs at least one atom");
  return Space(Vector::Ones(n), p);
}

Space Space::with_exponent(double q) const { return Space(weights_, q); }

Space Space::dual() const { return Space(weights_, dual_exponent(p_)); }

bool Space::same_measure(const Space& other) const {
  if (n() != other.n()) return false;
  for (int i = 0; i < n(); ++i) {
    const double a = weights_[i];
    const double b = other.weights_[i];
    if (std::abs(a - b) > 1e-12 * std::max(a, b)) return false;
  }
  return true;
}

void Space::check(const Vector& v) const {
  if (v.size() != weights_.size())
    throw DimensionError("vector has " + std::to_string(v.size()) + " coordinates, space has " +
                         std::to_string(n()) + " atoms");
}

void Space::check_same_measure(const Space& other) const {
  if (!same_measure(other)) throw DimensionError("operands live on different measure spaces");
}

double dual_exponent(double p) {
  if (!(p >= 1.0)) throw DomainError("exponent p must lie in [1, inf]");
  if (p == 1.0) return kInfinity;
  if (p == kInfinity) return 1.0;
  return p / (p - 1.0);
}

double norm(const Space& space, const Vector& f, double p) {
  space.check(f);
  if (!(p >= 1.0)) throw DomainError("exponent p must lie in [1, inf]");
  if (p == kInfinity) return f.size() ? f.cwiseAbs().maxCoeff() : 0.0;
  // Scale by the largest entry so that |f_i|^p neither overflows nor underflows.
  const double scale = f.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  if (p == 1.0) return space.weights().dot(f.cwiseAbs());
  if (p == 2.0) return std::sqrt(space.weights().dot(f.cwiseAbs2()));
  double sum = 0.0;
  for (int i = 0; i < space.n(); ++i) sum += space.weight(i) * std::pow(std::abs(f[i]) / scale, p);
  return scale * std::pow(sum, 1.0 / p);
}

double norm(const Space& space, const Vector& f) { return norm(space, f, space.p()); }

double pairing(const Space& space, const Vector& g, const Vector& f) {
  space.check(g);
  space.check(f);
  return (space.weights().array() * g.array() * f.array()).sum();
}

double reference_norm(const Space& space, const Vector& f) { return norm(space, f, 2.0); }

Vector ones(const Space& space) { return Vector::Ones(space.n()); }

Vector unit_vector(const Space& space, int i) {
  if (i < 0 || i >= space.n()) throw DimensionError("atom index out of range");
  return Vector::Unit(space.n(), i);
}

Vector duality_map(const Space& space, const Vector& f) {
  if (!space.strictly_convex())
    throw NotStrictlyConvexError("duality map needs 1 < p < inf");
  space.check(f);
  const double p = space.p();
  const double nf = norm(space, f);
  if (nf == 0.0) return Vector::Zero(space.n());
  // ||f||^{2-p} sign(f)|f|^{p-1}, evaluated on f/||f|| to stay in range.
  Vector out(space.n());
  for (int i = 0; i < space.n(); ++i) {
    const double u = f[i] / nf;
    out[i] = nf * std::copysign(std::pow(std::abs(u), p - 1.0), u);
  }
  return out;
}

Vector mazur_map(const Space& source, double target_p, const Vector& f) {
  if (!(target_p >= 1.0) || target_p == kInfinity)
    throw DomainError("Mazur map target exponent must lie in [1, inf)");
  if (!source.finite_p()) throw DomainError("Mazur map source exponent must be finite");
  source.check(f);
  if (target_p == source.p()) return f;
  const double nf = norm(source, f);
  if (nf == 0.0) return Vector::Zero(source.n());
  const double power = source.p() / target_p;
  Vector out(source.n());
  for (int i = 0; i < source.n(); ++i) {
    const double u = f[i] / nf;
    out[i] = nf * std::copysign(std::pow(std::abs(u), power), u);
  }
  return out;
}

Matrix whiten(const Space& space, const Matrix& a) {
  const Vector s = space.weights().cwiseSqrt();
  return s.asDiagonal() * a * s.cwiseInverse().asDiagonal();
}

Matrix unwhiten(const Space& space, const Matrix& a) {
  const Vector s = space.weights().cwiseSqrt();
  return s.cwiseInverse().asDiagonal() * a * s.asDiagonal();
}

Matrix adjoint(const Space& space, const Matrix& a) {
  const Vector& w = space.weights();
  return w.cwiseInverse().asDiagonal() * a.transpose() * w.asDiagonal();
}

double reference_matrix_norm(const Space& space, const Matrix& a) {
  return whiten(space, a).norm();
}

}  // namespace envlab
