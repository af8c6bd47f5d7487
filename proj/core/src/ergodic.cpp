#include "envlab/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Eigenvalues>

namespace envlab {

namespace {

constexpr double kContractionSlack = 1e-9;
constexpr double kProjectionTol = 1e-9;

Matrix null_space(const Matrix& a, double tol) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double scale = std::max(1.0, s.size() > 0 ? s[0] : 0.0);
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > tol * scale) ++rank;
  }
  return svd.matrixV().rightCols(a.cols() - rank);
}

// Unimodular eigenvalue other than 1: Cesaro averages converge only like 1/N.
bool has_peripheral_rotation(const Matrix& t) {
  Eigen::EigenSolver<Matrix> es(t, false);
  for (const auto& lambda : es.eigenvalues()) {
    if (std::abs(lambda) > 1.0 - 1e-7 && std::abs(lambda - 1.0) > 1e-7) return true;
  }
  return false;
}

// Lawson-Hanson non-negative least squares.
Vector nnls(const Matrix& a, const Vector& b, int max_outer = 500) {
  const int m = static_cast<int>(a.cols());
  Vector x = Vector::Zero(m);
  std::vector<bool> passive(m, false);
  const double eps = 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff() * b.cwiseAbs().maxCoeff());
  for (int outer = 0; outer < max_outer; ++outer) {
    Vector w = a.transpose() * (b - a * x);
    int t = -1;
    double best = eps;
    for (int j = 0; j < m; ++j) {
      if (!passive[j] && w[j] > best) {
        best = w[j];
        t = j;
      }
    }
    if (t < 0) break;
    passive[t] = true;
    for (int inner = 0; inner < 2 * m + 10; ++inner) {
      std::vector<int> idx;
      for (int j = 0; j < m; ++j) {
        if (passive[j]) idx.push_back(j);
      }
      Matrix ap(a.rows(), static_cast<Eigen::Index>(idx.size()));
      for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
      Vector sp = ap.colPivHouseholderQr().solve(b);
      bool feasible = true;
      for (Eigen::Index k = 0; k < sp.size(); ++k) feasible = feasible && sp[k] > 0.0;
      if (feasible) {
        x.setZero();
        for (std::size_t k = 0; k < idx.size(); ++k) x[idx[k]] = sp[static_cast<Eigen::Index>(k)];
        break;
      }
      double alpha = 1.0;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const double s = sp[static_cast<Eigen::Index>(k)];
        if (s <= 0.0) alpha = std::min(alpha, x[idx[k]] / (x[idx[k]] - s));
      }
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const int j = idx[k];
        x[j] += alpha * (sp[static_cast<Eigen::Index>(k)] - x[j]);
        if (x[j] <= 1e-15) {
          x[j] = 0.0;
          passive[j] = false;
        }
      }
    }
  }
  return x;
}

// Distance (reference norm) from v to the convex hull of the columns of pts.
double hull_distance(const Space& space, const Matrix& pts, const Vector& v) {
  const Vector sqrt_w = space.weights().cwiseSqrt();
  const double scale = std::max(1.0, pts.cwiseAbs().maxCoeff());
  const double penalty = 1e4 * scale;
  Matrix a(pts.rows() + 1, pts.cols());
  a.topRows(pts.rows()) = sqrt_w.asDiagonal() * pts;
  a.row(pts.rows()).setConstant(penalty);
  Vector b(pts.rows() + 1);
  b.head(pts.rows()) = sqrt_w.cwiseProduct(v);
  b[pts.rows()] = penalty;
  Vector lambda = nnls(a, b);
  const double total = lambda.sum();
  if (total <= 0.0) return kInfinity;
  lambda /= total;
  return reference_norm(space, pts * lambda - v);
}

// p when k is a power of the prime p, otherwise 0.
int prime_base(int k) {
  for (int p = 2; p <= k; ++p) {
    if (k % p == 0) {
      while (k % p == 0) k /= p;
      return k == 1 ? p : 0;
    }
  }
  return 0;
}

ErgodicReport finish(const Space& space, const Matrix& t, Matrix projection, ErgodicReport report) {
  report.projection = std::move(projection);
  report.fixed_space = projection_range(space, report.projection);
  report.oracle_discrepancy =
      reference_matrix_norm(space, report.projection - spectral_projection(space, t));
  return report;
}

}  // namespace

std::string to_string(Certification c) {
  switch (c) {
    case Certification::none: return "none";
    case Certification::exact: return "exact";
    case Certification::by_construction: return "by_construction";
    case Certification::sampled: return "sampled";
  }
  return "none";
}

ContractionOperator ContractionOperator::certify(const Space& space, Matrix entries,
                                                 const NormSearchOptions& options) {
  if (entries.rows() != space.n() || entries.cols() != space.n()) {
    throw DimensionError("operator must be n x n");
  }
  const OperatorNorm nrm = op_norm(space, entries, space.p(), options);
  if (nrm.value > 1.0 + kContractionSlack) {
    throw NotContractionError("operator norm " + std::to_string(nrm.value) + " exceeds 1");
  }
  return ContractionOperator(space, std::move(entries), nrm.value,
                             nrm.exact ? Certification::exact : Certification::sampled);
}

ContractionOperator ContractionOperator::convex_combination(const Space& space, std::span<const double> weights,
                                                            std::span<const SignedPermutation> elements) {
  if (weights.size() != elements.size() || elements.empty()) {
    throw DimensionError("need one weight per element");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw DomainError("convex weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("convex weights must sum to 1");
  Matrix t = Matrix::Zero(space.n(), space.n());
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (elements[k].n() != space.n()) throw DimensionError("element size does not match space");
    if (!elements[k].compatible_with(space)) throw NotIsometryError("element does not preserve weights");
    t += weights[k] * elements[k].matrix();
  }
  return ContractionOperator(space, std::move(t), 1.0, Certification::by_construction);
}

ContractionOperator ContractionOperator::average(std::span<const ContractionOperator> ops) {
  if (ops.empty()) throw DimensionError("average of an empty family");
  const Space& space = ops.front().ambient();
  Matrix t = Matrix::Zero(space.n(), space.n());
  double bound = 0.0;
  bool sampled = false;
  for (const auto& op : ops) {
    if (!(op.ambient() == space)) throw DimensionError("operators act on different spaces");
    if (!op.certified()) throw NotContractionError("operator is not a certified contraction");
    t += op.entries();
    bound += *op.certified_norm_bound();
    sampled = sampled || op.certification() == Certification::sampled;
  }
  const double m = static_cast<double>(ops.size());
  return ContractionOperator(space, t / m, bound / m,
                             sampled ? Certification::sampled : Certification::by_construction);
}

ContractionOperator ContractionOperator::conditional_expectation(const Space& space, const Partition& partition) {
  return ContractionOperator(space, envlab::conditional_expectation(space, partition), 1.0,
                             Certification::by_construction);
}

ContractionOperator ContractionOperator::uncertified(const Space& space, Matrix entries) {
  if (entries.rows() != space.n() || entries.cols() != space.n()) {
    throw DimensionError("operator must be n x n");
  }
  return ContractionOperator(space, std::move(entries), std::nullopt, Certification::none);
}

Matrix spectral_projection(const Space& space, const Matrix& t, double tol) {
  const int n = space.n();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix b = null_space(id - t, tol);
  const Matrix c = null_space((id - t).transpose(), tol);
  if (b.cols() == 0 || c.cols() == 0) return Matrix::Zero(n, n);
  if (b.cols() != c.cols()) throw Error("eigenvalue 1 is not semisimple");
  const Matrix m = c.transpose() * b;
  return b * m.fullPivLu().solve(c.transpose());
}

Subspace projection_range(const Space& space, const Matrix& projection) {
  const Matrix white = whiten(space, projection);
  Eigen::JacobiSVD<Matrix> svd(white, Eigen::ComputeThinU);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > 0.5) ++rank;
  }
  const Vector inv_sqrt = space.weights().cwiseSqrt().cwiseInverse();
  return Subspace::span(space, inv_sqrt.asDiagonal() * svd.matrixU().leftCols(rank));
}

ErgodicReport cesaro_projection(const ContractionOperator& op, const ErgodicOptions& options) {
  if (!op.certified()) throw NotContractionError("operator is not a certified contraction");
  if (!(options.tol > 0.0)) throw DomainError("tol must be positive");
  if (options.max_iter < 1) throw DomainError("max_iter must be positive");
  const Space& space = op.ambient();
  const Matrix& t = op.entries();
  const int n = space.n();

  const bool spectral = options.method == ErgodicMethod::spectral ||
                        (options.method == ErgodicMethod::automatic && has_peripheral_rotation(t));
  ErgodicReport report;
  if (spectral) {
    report.oracle_used = "spectral";
    Matrix p = spectral_projection(space, t);
    report.residual = reference_matrix_norm(space, p * p - p);
    return finish(space, t, std::move(p), std::move(report));
  }

  report.oracle_used = "cesaro";
  Matrix a = Matrix::Identity(n, n);  // A_N
  Matrix power = t;                   // T^N
  Matrix tail;                        // previous tail average
  bool have_tail = false;
  long long big_n = 1;
  int j = 1;
  while (true) {
    const Matrix a2 = 0.5 * (a + power * a);
    const double r = reference_matrix_norm(space, a2 - a);
    if (r <= options.tol) {
      report.iterations = big_n;
      report.residual = r;
      return finish(space, t, std::move(a), std::move(report));
    }
    // (1/N) sum_{N <= k < 2N} T^k.
    Matrix e = 2.0 * a2 - a;
    if (have_tail) {
      const double ra = reference_matrix_norm(space, e - tail);
      if (ra <= options.tol) {
        report.iterations = 2 * big_n;
        report.residual = ra;
        report.accelerated = true;
        return finish(space, t, std::move(e), std::move(report));
      }
    }
    tail = std::move(e);
    have_tail = true;

    // N runs through lcm(1, ..., j): a rotation of order m averages out
    // exactly once m divides N.
    int prime = 0;
    while (prime == 0) prime = prime_base(++j);
    if (big_n > options.max_iter / prime) {
      report.iterations = 2 * big_n;
      report.residual = r;
      report = finish(space, t, a, std::move(report));
      throw ConvergenceError("Cesaro averages did not converge within max_iter", std::move(report));
    }
    Matrix acc = a;
    Matrix term = a;
    for (int k = 1; k < prime; ++k) {
      term = power * term;
      acc += term;
    }
    a = acc / prime;
    Matrix next = power;
    for (int k = 1; k < prime; ++k) next = next * power;
    power = std::move(next);
    big_n *= prime;
  }
}

IntersectionReport intersection_projection(std::span<const ContractionOperator> projections,
                                           const ErgodicOptions& options) {
  if (projections.empty()) throw DimensionError("empty family of projections");
  const Space& space = projections.front().ambient();
  for (const auto& p : projections) {
    if (!(p.ambient() == space)) throw DimensionError("projections act on different spaces");
    if (!p.certified()) throw NotContractionError("projection is not a certified contraction");
    const Matrix& e = p.entries();
    if (reference_matrix_norm(space, e * e - e) > kProjectionTol * std::max(1.0, reference_matrix_norm(space, e))) {
      throw NotProjectionError("operator is not idempotent");
    }
  }
  IntersectionReport out;
  out.ergodic = cesaro_projection(ContractionOperator::average(projections), options);
  Subspace inter = projection_range(space, projections.front().entries());
  for (std::size_t k = 1; k < projections.size(); ++k) {
    inter = intersect(inter, projection_range(space, projections[k].entries()));
  }
  out.range_matches_intersection = equal(inter, out.ergodic.fixed_space, 1e-6);
  out.intersection = std::move(inter);
  return out;
}

MeanErgodicValue mean_ergodic_value(const ContractionOperator& op, const Vector& x, const ErgodicOptions& options) {
  const Space& space = op.ambient();
  space.check(x);
  MeanErgodicValue out;
  out.report = cesaro_projection(op, options);
  out.value = out.report.projection * x;
  const Matrix& t = op.entries();
  const double scale = std::max(1.0, reference_norm(space, x));
  out.fixed_residual = reference_norm(space, t * out.value - out.value);

  const long long want = std::max<long long>(64, 2 * out.report.iterations);
  out.orbit_length = static_cast<int>(std::min<long long>(want, 4096));
  Matrix pts(space.n(), out.orbit_length);
  Vector cur = x;
  for (int k = 0; k < out.orbit_length; ++k) {
    pts.col(k) = cur;
    cur = t * cur;
  }
  out.hull_distance = hull_distance(space, pts, out.value);
  const double tol = std::max(options.tol, 1e-8) * scale;
  out.verified = out.fixed_residual <= tol && out.hull_distance <= tol;
  return out;
}

JdlgReport jdlg_check(const Space& space, std::span<const SignedPermutation> gens, std::size_t max_order,
                      std::uint64_t seed) {
  if (!space.strictly_convex()) throw NotStrictlyConvexError("the splitting needs 1 < p < inf");
  const int n = space.n();
  std::vector<SignedPermutation> gen_list(gens.begin(), gens.end());
  if (gen_list.empty()) gen_list.push_back(SignedPermutation::identity(n));
  for (const auto& g : gen_list) {
    if (g.n() != n) throw DimensionError("generator size does not match space");
    if (!g.compatible_with(space)) throw NotIsometryError("generator does not preserve weights");
  }
  const auto group = group_closure(gen_list, max_order);

  JdlgReport rep;
  rep.group_order = group.size();
  rep.projection = group_average_projection(space, group);
  rep.fixed = fixed_space_of(space, gen_list);
  rep.range_is_fixed = equal(projection_range(space, rep.projection), rep.fixed);
  rep.kernel = Subspace::span(space, Matrix::Identity(n, n) - rep.projection);

  std::vector<SignedPermutation> adjoints;
  adjoints.reserve(gen_list.size());
  for (const auto& g : gen_list) adjoints.push_back(g.inverse());
  rep.dual_fixed = fixed_space_of(space, adjoints);
  rep.annihilator = orthogonal_complement(rep.dual_fixed);
  rep.kernel_is_annihilator = equal(rep.kernel, rep.annihilator, 1e-8);
  rep.direct_sum = rep.fixed.dim() + rep.kernel.dim() == n && sum(rep.fixed, rep.kernel).dim() == n;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  rep.samples = std::max(10, 10 * rep.fixed.dim());
  Matrix images(n, rep.fixed.is_zero() ? 0 : rep.samples);
  for (int k = 0; k < images.cols(); ++k) {
    Vector c(rep.fixed.dim());
    for (int i = 0; i < c.size(); ++i) c[i] = gauss(rng);
    Vector x = rep.fixed.basis() * c;
    x /= norm(space, x);
    const Vector jx = duality_map(space, x);
    const double rel = reference_norm(space, jx - rep.dual_fixed.project(jx)) / reference_norm(space, jx);
    rep.duality_residual = std::max(rep.duality_residual, rel);
    images.col(k) = jx;
  }
  const Subspace j_span = Subspace::span(space, images);
  rep.j_image_spans = equal(j_span, rep.dual_fixed, 1e-8);
  rep.j_annihilator = orthogonal_complement(j_span);
  rep.kernel_is_j_annihilator = equal(rep.kernel, rep.j_annihilator, 1e-8);

  rep.invariant = true;
  for (const auto& g : gen_list) {
    const Matrix m = g.matrix();
    rep.invariant = rep.invariant && includes(rep.fixed, image(rep.fixed, m), 1e-8) &&
                    includes(rep.kernel, image(rep.kernel, m), 1e-8);
  }
  return rep;
}

}  // namespace envlab
