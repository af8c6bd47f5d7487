#include "envlab/operator_norm.hpp"

#include <cmath>
#include <random>

namespace envlab {
namespace {

OperatorNorm one_norm(const Space& space, const Matrix& a) {
  OperatorNorm out{0.0, true, Vector::Zero(space.n())};
  Eigen::Index best = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double v = space.weights().dot(a.col(j).cwiseAbs()) / space.weight(static_cast<int>(j));
    if (v > out.value) {
      out.value = v;
      best = j;
    }
  }
  out.maximizer[best] = 1.0 / space.weight(static_cast<int>(best));
  return out;
}

OperatorNorm inf_norm(const Space& space, const Matrix& a) {
  OperatorNorm out{0.0, true, Vector::Ones(space.n())};
  Eigen::Index best = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double v = a.row(i).cwiseAbs().sum();
    if (v > out.value) {
      out.value = v;
      best = i;
    }
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j) out.maximizer[j] = a(best, j) < 0.0 ? -1.0 : 1.0;
  return out;
}

OperatorNorm two_norm(const Space& space, const Matrix& a) {
  const Matrix aw = whiten(space, a);
  Eigen::JacobiSVD<Matrix> svd(aw, Eigen::ComputeFullV);
  OperatorNorm out{svd.singularValues().size() ? svd.singularValues()[0] : 0.0, true, Vector()};
  out.maximizer = space.weights().cwiseSqrt().cwiseInverse().asDiagonal() * svd.matrixV().col(0);
  return out;
}

// Boyd's iteration x <- J*(A* J(Ax)); ||Ax|| is nondecreasing along it.
double ascend(const Space& space, const Space& dual, const Matrix& a, const Matrix& a_adj, Vector& x,
              int max_steps) {
  x /= norm(space, x);
  double value = norm(space, a * x);
  for (int step = 0; step < max_steps; ++step) {
    const Vector y = a * x;
    if (norm(space, y) == 0.0) break;
    const Vector z = a_adj * duality_map(space, y);
    if (norm(dual, z) == 0.0) break;
    Vector next = duality_map(dual, z);
    next /= norm(space, next);
    const double v = norm(space, a * next);
    const bool stalled = v <= value * (1.0 + 1e-15);
    if (v >= value) {
      x = next;
      value = v;
    }
    if (stalled) break;
  }
  return value;
}

}  // namespace

OperatorNorm op_norm(const Space& space, const Matrix& a, double p, const NormSearchOptions& options) {
  if (!(p >= 1.0)) throw DomainError("operator norm needs p >= 1");
  if (a.rows() != space.n() || a.cols() != space.n()) throw DimensionError("operator has wrong shape");
  if (p == 1.0) return one_norm(space, a);
  if (p == kInfinity) return inf_norm(space, a);
  if (p == 2.0) return two_norm(space, a);

  const Space x_space = space.with_exponent(p);
  const Space dual = x_space.dual();
  const Matrix a_adj = adjoint(space, a);
  OperatorNorm best{0.0, false, Vector::Ones(space.n())};
  auto consider = [&](Vector x) {
    if (norm(x_space, x) == 0.0) return;
    const double v = ascend(x_space, dual, a, a_adj, x, options.max_steps);
    if (v > best.value) {
      best.value = v;
      best.maximizer = x;
    }
  };
  consider(Vector::Ones(space.n()));
  for (int j = 0; j < space.n(); ++j) consider(Vector::Unit(space.n(), j));
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < options.starts; ++s) {
    Vector x(space.n());
    for (int i = 0; i < space.n(); ++i) x[i] = gauss(rng);
    consider(std::move(x));
  }
  best.maximizer /= norm(x_space, best.maximizer);
  return best;
}

}  // namespace envlab
