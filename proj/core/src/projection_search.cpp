#include <algorithm>
#include <cmath>
#include <random>

#include "convex.hpp"
#include "envlab/complement.hpp"
#include "envlab/partition.hpp"
#include "simplex.hpp"

namespace envlab {

namespace {

constexpr double kAttainedOne = 1e-12;

struct Polyhedral {
  Matrix c;
  double objective = 0.0;
};

// min t over C (d x n) with C B = I and ||B C||_p <= t, p in {1, inf}.
Polyhedral polyhedral_minimax(const Space& space, const Matrix& b) {
  const int n = static_cast<int>(b.rows());
  const int d = static_cast<int>(b.cols());
  const int nc = d * n;
  const int nu = n * n;
  detail::LinearProgram lp(nc + nu + 1);
  for (int j = nc; j < nc + nu + 1; ++j) lp.free_var[static_cast<std::size_t>(j)] = false;
  const int t = nc + nu;
  auto cvar = [n](int k, int j) { return k * n + j; };
  auto uvar = [nc, n](int i, int j) { return nc + i * n + j; };
  lp.c[t] = 1.0;

  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      Vector row = Vector::Zero(lp.num_vars());
      for (int j = 0; j < n; ++j) row[cvar(k, j)] = b(j, l);
      lp.add_eq(row, k == l ? 1.0 : 0.0);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Vector row = Vector::Zero(lp.num_vars());
      for (int k = 0; k < d; ++k) row[cvar(k, j)] = b(i, k);
      row[uvar(i, j)] = -1.0;
      lp.add_ub(row, 0.0);
      for (int k = 0; k < d; ++k) row[cvar(k, j)] = -b(i, k);
      lp.add_ub(row, 0.0);
    }
  }
  if (space.p() == 1.0) {
    for (int j = 0; j < n; ++j) {
      Vector row = Vector::Zero(lp.num_vars());
      for (int i = 0; i < n; ++i) row[uvar(i, j)] = space.weight(i);
      row[t] = -space.weight(j);
      lp.add_ub(row, 0.0);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      Vector row = Vector::Zero(lp.num_vars());
      for (int j = 0; j < n; ++j) row[uvar(i, j)] = 1.0;
      row[t] = -1.0;
      lp.add_ub(row, 0.0);
    }
  }
  const auto res = detail::solve_lp(lp);
  if (res.status != detail::LpStatus::optimal) throw Error("projection linear program failed");
  Polyhedral out;
  out.c.resize(d, n);
  for (int k = 0; k < d; ++k) {
    for (int j = 0; j < n; ++j) out.c(k, j) = res.x[cvar(k, j)];
  }
  out.objective = res.objective;
  return out;
}

Matrix left_null_rows(const Matrix& b) {
  Eigen::JacobiSVD<Matrix> svd(b.transpose(), Eigen::ComputeFullV);
  return svd.matrixV().rightCols(b.rows() - b.cols()).transpose();
}

Vector random_sphere_point(const Space& space, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Vector x(space.n());
  for (int i = 0; i < x.size(); ++i) x[i] = gauss(rng);
  return x / norm(space, x);
}

// Smoothed maximum of ||B (C0 + M Q) x_s||_p over the sample.
class SampledObjective {
 public:
  SampledObjective(const Space& space, Matrix b, Matrix c0, Matrix q)
      : space_(space), b_(std::move(b)), c0_(std::move(c0)), q_(std::move(q)) {}

  int rows() const { return static_cast<int>(b_.cols()); }
  int cols() const { return static_cast<int>(q_.rows()); }

  Matrix projection(const Vector& m) const {
    const Eigen::Map<const Matrix> mm(m.data(), rows(), cols());
    return b_ * (c0_ + mm * q_);
  }
  Vector to_params(const Matrix& c) const {
    Matrix m = (c - c0_) * q_.transpose();
    return Eigen::Map<const Vector>(m.data(), m.size());
  }

  void add_sample(const Vector& x) { samples_.push_back(x / norm(space_, x)); }
  double sample_max(const Matrix& p) const {
    double best = 0.0;
    for (const auto& x : samples_) best = std::max(best, norm(space_, p * x));
    return best;
  }

  double operator()(const Vector& m, Vector* grad, double beta) const {
    const Matrix p = projection(m);
    const double pp = space_.p();
    std::vector<double> vals(samples_.size());
    std::vector<Vector> images(samples_.size());
    double vmax = 0.0;
    for (std::size_t s = 0; s < samples_.size(); ++s) {
      images[s] = p * samples_[s];
      vals[s] = norm(space_, images[s]);
      vmax = std::max(vmax, vals[s]);
    }
    double z = 0.0;
    for (double v : vals) z += std::exp(beta * (v - vmax));
    const double value = vmax + std::log(z) / beta;
    if (grad != nullptr) {
      Matrix g = Matrix::Zero(p.rows(), p.cols());
      for (std::size_t s = 0; s < samples_.size(); ++s) {
        const double w = std::exp(beta * (vals[s] - vmax)) / z;
        if (w < 1e-300 || vals[s] <= 0.0) continue;
        Vector du(images[s].size());
        for (int i = 0; i < du.size(); ++i) {
          const double u = images[s][i] / vals[s];
          du[i] = space_.weight(i) * (u > 0 ? 1.0 : (u < 0 ? -1.0 : 0.0)) * std::pow(std::abs(u), pp - 1.0);
        }
        g += w * du * samples_[s].transpose();
      }
      Matrix gm = b_.transpose() * g * q_.transpose();
      *grad = Eigen::Map<const Vector>(gm.data(), gm.size());
    }
    return value;
  }

 private:
  const Space& space_;
  Matrix b_, c0_, q_;
  std::vector<Vector> samples_;
};

// Candidate C whose projection has kernel J(Y)^perp; requires rank J(Y) = dim Y.
std::optional<Matrix> duality_candidate(const Space& space, const Matrix& b, std::mt19937_64& rng) {
  if (!space.strictly_convex()) return std::nullopt;
  const int d = static_cast<int>(b.cols());
  std::normal_distribution<double> gauss;
  const int m = std::max(10, 10 * d);
  Matrix images(b.rows(), m);
  for (int k = 0; k < m; ++k) {
    Vector c(d);
    for (int i = 0; i < d; ++i) c[i] = gauss(rng);
    images.col(k) = duality_map(space, b * c);
  }
  const Subspace z = Subspace::span(space, images, 1e-8);
  if (z.dim() != d) return std::nullopt;
  const Matrix zw = z.basis().transpose() * space.weights().asDiagonal();
  const Matrix g = zw * b;
  if (std::abs(g.determinant()) < 1e-12) return std::nullopt;
  return Matrix(g.fullPivLu().solve(zw));
}

}  // namespace

std::string to_string(SearchMethod m) {
  switch (m) {
    case SearchMethod::exact_polyhedral: return "exact-polyhedral";
    case SearchMethod::subgradient: return "subgradient";
    case SearchMethod::spectral: return "spectral";
  }
  return "subgradient";
}

ProjectionSearchResult min_projection_norm(const Space& space, const Subspace& y, double p,
                                           const ProjectionSearchConfig& config) {
  space.check_same_measure(y.ambient());
  const Space sp = space.with_exponent(p);
  const int n = sp.n();
  const int d = y.dim();
  if (d == 0 || d == n) throw DegenerateRangeError("range must satisfy 1 <= dim Y < n");
  const Matrix& b = y.basis();
  const Matrix c0 = b.transpose() * sp.weights().asDiagonal();

  ProjectionSearchResult out;
  out.seed = config.seed;

  if (sp.is_hilbert()) {
    out.best_projection = b * c0;
    out.upper_bound = op_norm(sp, out.best_projection, 2.0).value;
    out.lower_bound = 1.0;
    out.method = SearchMethod::spectral;
    out.exact = true;
    return out;
  }
  if (p == 1.0 || p == kInfinity) {
    const Polyhedral poly = polyhedral_minimax(sp, b);
    out.best_projection = b * poly.c;
    out.upper_bound = op_norm(sp, out.best_projection, p).value;
    out.lower_bound = std::min(std::max(1.0, poly.objective), out.upper_bound);
    out.method = SearchMethod::exact_polyhedral;
    out.exact = true;
    return out;
  }

  std::mt19937_64 rng(config.seed);
  const Matrix q = left_null_rows(b);
  SampledObjective objective(sp, b, c0, q);
  objective.add_sample(ones(sp));
  for (int j = 0; j < n; ++j) objective.add_sample(unit_vector(sp, j));
  for (int k = 0; k < config.samples; ++k) objective.add_sample(random_sphere_point(sp, rng));

  std::vector<Vector> starts;
  starts.push_back(Vector::Zero(d * (n - d)));
  if (auto cj = duality_candidate(sp, b, rng)) starts.push_back(objective.to_params(*cj));
  if (is_unital(y)) {
    const Partition part = generated_partition(y);
    if (equal(fixed_space(sp, part), y)) {
      const Matrix e = conditional_expectation(sp, part);
      starts.push_back(objective.to_params(b.transpose() * sp.weights().asDiagonal() * e));
    }
  }
  std::normal_distribution<double> gauss;
  for (int r = 0; r < config.restarts; ++r) {
    Vector m(d * (n - d));
    for (int i = 0; i < m.size(); ++i) m[i] = 0.3 * gauss(rng);
    starts.push_back(std::move(m));
  }

  out.method = SearchMethod::subgradient;
  out.lower_bound = 1.0;
  out.upper_bound = kInfinity;
  auto consider = [&](const Vector& m) {
    const Matrix proj = objective.projection(m);
    const OperatorNorm nb = op_norm(sp, proj, p, config.norm_options);
    if (nb.value < out.upper_bound) {
      out.upper_bound = nb.value;
      out.best_projection = proj;
    }
    return nb;
  };

  // Structural candidates first: one attaining norm 1 is optimal.
  const std::size_t structural = starts.size() - static_cast<std::size_t>(config.restarts);
  for (std::size_t s = 0; s < structural; ++s) {
    const OperatorNorm nb = consider(starts[s]);
    if (nb.value <= 1.0 + kAttainedOne) {
      out.restarts = static_cast<int>(s + 1);
      return out;
    }
  }

  for (std::size_t s = 0; s < starts.size(); ++s) {
    out.restarts = static_cast<int>(s + 1);
    Vector m = starts[s];
    for (int round = 0; round < config.rounds; ++round) {
      for (double beta : {50.0, 500.0, 5e3, 5e4}) {
        auto f = [&](const Vector& x, Vector* g) { return objective(x, g, beta); };
        m = detail::minimize_bfgs(f, m, 200, 1e-10).x;
      }
      const OperatorNorm nb = consider(m);
      if (nb.value <= 1.0 + kAttainedOne) return out;
      if (nb.value <= objective.sample_max(objective.projection(m)) + 1e-9) break;
      objective.add_sample(nb.maximizer);
    }
  }
  out.upper_bound = std::max(out.upper_bound, out.lower_bound);
  return out;
}

OneComplementedReport is_one_complemented(const Space& space, const Subspace& y, double p, double tol,
                                          const ProjectionSearchConfig& config) {
  const Space sp = space.with_exponent(p);
  OneComplementedReport rep;
  rep.minimax = min_projection_norm(space, y, p, config);
  rep.minimax_verdict = rep.minimax.upper_bound <= 1.0 + tol;

  if (sp.strictly_convex()) {
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> gauss;
    const int d = y.dim();
    rep.j_samples = std::max(10, 10 * d);
    Matrix images(sp.n(), rep.j_samples);
    for (int k = 0; k < rep.j_samples; ++k) {
      Vector c(d);
      for (int i = 0; i < d; ++i) c[i] = gauss(rng);
      Vector x = y.basis() * c;
      images.col(k) = duality_map(sp, x / norm(sp, x));
    }
    rep.j_rank = Subspace::span(sp, images, 1e-8).dim();
    rep.j_verdict = rep.j_rank == d;
  }
  if (!sp.is_hilbert() && is_unital(y)) {
    rep.douglas_ando_verdict = equal(y.with_exponent(p), conditional_envelope(y.with_exponent(p)), 1e-8);
  }
  rep.verdict = rep.minimax_verdict;
  rep.agree = (!rep.j_verdict || *rep.j_verdict == rep.minimax_verdict) &&
              (!rep.douglas_ando_verdict || *rep.douglas_ando_verdict == rep.minimax_verdict);
  return rep;
}

}  // namespace envlab
