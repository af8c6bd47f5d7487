#include <algorithm>
#include <cmath>
#include <random>

#include "convex.hpp"
#include "envlab/complement.hpp"
#include "simplex.hpp"

namespace envlab {

namespace {

Space doubled(const Space& base) {
  Vector w(2 * base.n());
  w << base.weights(), base.weights();
  return Space(w, base.p());
}

Matrix kernel_generators(const Subspace& y) {
  const int n = y.n();
  Matrix k(2 * n, y.dim());
  k.topRows(n) = y.basis();
  k.bottomRows(n) = -y.basis();
  return k;
}

bool polyhedral(double p) { return p == 1.0 || p == kInfinity; }

// Adds |v| <= bound coordinatewise for v = a x + offset, where bound is either
// per-coordinate (abs_vars) or one shared variable.
void add_abs_rows(detail::LinearProgram& lp, const Matrix& coeffs, const Vector& offset,
                  const std::vector<int>& bound_vars) {
  for (Eigen::Index i = 0; i < coeffs.rows(); ++i) {
    const int bv = bound_vars.size() == 1 ? bound_vars[0] : bound_vars[static_cast<std::size_t>(i)];
    Vector row = coeffs.row(i).transpose();
    row[bv] -= 1.0;
    lp.add_ub(row, -offset[i]);
    row = -coeffs.row(i).transpose();
    row[bv] -= 1.0;
    lp.add_ub(row, offset[i]);
  }
}

}  // namespace

QuotientSpace::QuotientSpace(const Space& base, const Subspace& y)
    : base_(base), parent_(doubled(base)), y_(y) {
  base.check_same_measure(y.ambient());
  if (y.dim() == base.n()) throw DegenerateRangeError("cannot glue along the whole space");
  kernel_ = Subspace::span(parent_, kernel_generators(y));
  complement_ = orthogonal_complement(kernel_);
}

double QuotientSpace::parent_norm(const Vector& v) const {
  parent_.check(v);
  const int n = base_.n();
  return envlab::norm(base_, v.head(n)) + envlab::norm(base_, v.tail(n));
}

double QuotientSpace::norm(const Vector& v) const {
  parent_.check(v);
  const int n = base_.n();
  const int d = y_.dim();
  const Vector x1 = v.head(n);
  const Vector x2 = v.tail(n);
  if (d == 0) return parent_norm(v);
  const Matrix& b = y_.basis();
  const double p = base_.p();

  if (polyhedral(p)) {
    // Variables: c (d, free), then bounds for x1 - Bc and x2 + Bc.
    const int nb = p == 1.0 ? n : 1;
    detail::LinearProgram lp(d + 2 * nb);
    for (int j = d; j < d + 2 * nb; ++j) lp.free_var[static_cast<std::size_t>(j)] = false;
    std::vector<int> s(static_cast<std::size_t>(nb)), r(static_cast<std::size_t>(nb));
    for (int i = 0; i < nb; ++i) {
      s[static_cast<std::size_t>(i)] = d + i;
      r[static_cast<std::size_t>(i)] = d + nb + i;
      lp.c[d + i] = p == 1.0 ? base_.weight(i) : 1.0;
      lp.c[d + nb + i] = p == 1.0 ? base_.weight(i) : 1.0;
    }
    Matrix coeffs = Matrix::Zero(n, lp.num_vars());
    coeffs.leftCols(d) = -b;
    add_abs_rows(lp, coeffs, x1, s);
    coeffs.leftCols(d) = b;
    add_abs_rows(lp, coeffs, x2, r);
    const auto res = detail::solve_lp(lp);
    if (res.status != detail::LpStatus::optimal) throw Error("quotient norm linear program failed");
    return std::max(0.0, res.objective);
  }

  auto f = [&](const Vector& c, Vector* grad) {
    const Vector u1 = x1 - b * c;
    const Vector u2 = x2 + b * c;
    const double n1 = envlab::norm(base_, u1);
    const double n2 = envlab::norm(base_, u2);
    if (grad != nullptr) {
      Vector g1 = Vector::Zero(n), g2 = Vector::Zero(n);
      for (int i = 0; i < n; ++i) {
        if (n1 > 0) g1[i] = base_.weight(i) * std::copysign(std::pow(std::abs(u1[i]) / n1, p - 1.0), u1[i]);
        if (n2 > 0) g2[i] = base_.weight(i) * std::copysign(std::pow(std::abs(u2[i]) / n2, p - 1.0), u2[i]);
      }
      *grad = b.transpose() * (g2 - g1);
    }
    return n1 + n2;
  };
  const Matrix coords = b.transpose() * base_.weights().asDiagonal();
  const Vector ca = coords * x1;
  const Vector cb = -(coords * x2);
  Vector best = Vector::Zero(d);
  double best_value = f(best, nullptr);
  for (const Vector& c : {ca, cb, Vector(0.5 * (ca + cb))}) {
    const double v = f(c, nullptr);
    if (v < best_value) {
      best_value = v;
      best = c;
    }
  }
  const auto res = detail::minimize_bfgs(f, best, 300, 1e-14);
  return std::min(best_value, res.value);
}

Vector QuotientSpace::representative(const Vector& v) const { return complement_.project(v); }

Vector QuotientSpace::embed_first(const Vector& x) const {
  base_.check(x);
  Vector v = Vector::Zero(2 * base_.n());
  v.head(base_.n()) = x;
  return v;
}

Vector QuotientSpace::embed_second(const Vector& x) const {
  base_.check(x);
  Vector v = Vector::Zero(2 * base_.n());
  v.tail(base_.n()) = x;
  return v;
}

Vector QuotientSpace::project_first(const Vector& v) const {
  parent_.check(v);
  return embed_first(v.head(base_.n()) + v.tail(base_.n()));
}

Vector QuotientSpace::project_second(const Vector& v) const {
  parent_.check(v);
  return embed_second(v.head(base_.n()) + v.tail(base_.n()));
}

std::vector<Vector> QuotientSpace::ball_generators() const {
  const int n = base_.n();
  std::vector<Vector> base_gens;
  if (base_.p() == 1.0) {
    for (int j = 0; j < n; ++j) {
      for (double s : {1.0, -1.0}) base_gens.push_back(s * unit_vector(base_, j) / base_.weight(j));
    }
  } else if (base_.p() == kInfinity) {
    if (n > 16) throw TooLargeError("too many sign vectors");
    for (long mask = 0; mask < (1L << n); ++mask) {
      Vector s(n);
      for (int i = 0; i < n; ++i) s[i] = (mask >> i) & 1 ? -1.0 : 1.0;
      base_gens.push_back(s);
    }
  }
  std::vector<Vector> out;
  for (const auto& g : base_gens) out.push_back(embed_first(g));
  for (const auto& g : base_gens) out.push_back(embed_second(g));
  return out;
}

double pushout_projection_constant(const QuotientSpace& w) {
  const Space& base = w.base();
  const double p = base.p();
  if (!polyhedral(p)) throw DomainError("projection constant in W is computed for p in {1, inf} only");
  const int n = base.n();
  const int d = w.glued().dim();
  const Matrix& b = w.glued().basis();

  // Pi u = [(B A u, 0)] with A (d x 2n); one witness c_k per ball generator u_k:
  // ||B A u_k - B c_k|| + ||B c_k|| <= t.
  std::vector<Vector> gens;
  for (const auto& g : w.ball_generators()) {
    // g and -g give the same constraint.
    bool dup = false;
    for (const auto& h : gens) dup = dup || (h + g).cwiseAbs().maxCoeff() == 0.0;
    if (!dup) gens.push_back(g);
  }
  const int na = d * 2 * n;
  const int nb = p == 1.0 ? n : 1;
  const int per_gen = d + 2 * nb;
  const int t = na;
  detail::LinearProgram lp(na + 1 + per_gen * static_cast<int>(gens.size()));
  for (int j = na; j < lp.num_vars(); ++j) lp.free_var[static_cast<std::size_t>(j)] = false;
  auto avar = [n](int k, int col) { return k * 2 * n + col; };
  lp.c[t] = 1.0;

  Matrix kern(2 * n, d), first(2 * n, d);
  kern << b, -b;
  first << b, Matrix::Zero(n, d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      Vector row = Vector::Zero(lp.num_vars());
      for (int col = 0; col < 2 * n; ++col) row[avar(k, col)] = kern(col, l);
      lp.add_eq(row, 0.0);
      for (int col = 0; col < 2 * n; ++col) row[avar(k, col)] = first(col, l);
      lp.add_eq(row, k == l ? 1.0 : 0.0);
    }
  }
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const int base_var = na + 1 + per_gen * static_cast<int>(g);
    for (int k = 0; k < d; ++k) lp.free_var[static_cast<std::size_t>(base_var + k)] = true;
    std::vector<int> s(static_cast<std::size_t>(nb)), r(static_cast<std::size_t>(nb));
    for (int i = 0; i < nb; ++i) {
      s[static_cast<std::size_t>(i)] = base_var + d + i;
      r[static_cast<std::size_t>(i)] = base_var + d + nb + i;
    }
    // First coordinates: B (A u_g) - B c_g.
    Matrix coeffs = Matrix::Zero(n, lp.num_vars());
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < d; ++k) {
        for (int col = 0; col < 2 * n; ++col) coeffs(i, avar(k, col)) += b(i, k) * gens[g][col];
        coeffs(i, base_var + k) = -b(i, k);
      }
    }
    add_abs_rows(lp, coeffs, Vector::Zero(n), s);
    coeffs.setZero();
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < d; ++k) coeffs(i, base_var + k) = b(i, k);
    }
    add_abs_rows(lp, coeffs, Vector::Zero(n), r);
    Vector row = Vector::Zero(lp.num_vars());
    for (int i = 0; i < nb; ++i) {
      const double wt = p == 1.0 ? base.weight(i) : 1.0;
      row[s[static_cast<std::size_t>(i)]] = wt;
      row[r[static_cast<std::size_t>(i)]] = wt;
    }
    row[t] = -1.0;
    lp.add_ub(row, 0.0);
  }
  const auto res = detail::solve_lp(lp);
  if (res.status != detail::LpStatus::optimal) throw Error("pushout projection linear program failed");
  return res.objective;
}

PushoutReport pushout(const Space& space, const Subspace& y, std::uint64_t seed, int samples) {
  if (y.dim() == 0 || y.dim() == space.n()) throw DegenerateRangeError("range must satisfy 1 <= dim Y < n");
  PushoutReport rep(QuotientSpace(space, y));
  const QuotientSpace& w = rep.w;
  const int n = space.n();

  for (const auto& v : y.basis_vectors()) {
    Vector k(2 * n);
    k << v, -v;
    rep.kernel_norm = std::max(rep.kernel_norm, w.norm(k) / norm(space, v));
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<Vector> xs = y.basis_vectors();
  for (int s = 0; s < samples; ++s) {
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = gauss(rng);
    xs.push_back(x);
  }
  for (const auto& x : xs) {
    const double nx = norm(space, x);
    rep.embedding_defect = std::max(rep.embedding_defect, std::abs(w.norm(w.embed_first(x)) - nx) / nx);
    rep.embedding_defect = std::max(rep.embedding_defect, std::abs(w.norm(w.embed_second(x)) - nx) / nx);
  }

  const auto gens = w.ball_generators();
  if (!gens.empty()) {
    // The unit ball is the hull of the generator classes, each of norm <= 1.
    rep.exact = true;
    for (const auto& u : gens) {
      rep.first_copy_projection_norm = std::max(rep.first_copy_projection_norm, w.norm(w.project_first(u)));
      rep.second_copy_projection_norm = std::max(rep.second_copy_projection_norm, w.norm(w.project_second(u)));
    }
    rep.lambda_w = pushout_projection_constant(w);
    rep.lambda_x = min_projection_norm(space, y, space.p()).upper_bound;
  } else {
    for (int s = 0; s < samples; ++s) {
      Vector v(2 * n);
      for (int i = 0; i < 2 * n; ++i) v[i] = gauss(rng);
      const double nv = w.norm(v);
      if (nv <= 1e-12) continue;
      rep.first_copy_projection_norm = std::max(rep.first_copy_projection_norm, w.norm(w.project_first(v)) / nv);
      rep.second_copy_projection_norm = std::max(rep.second_copy_projection_norm, w.norm(w.project_second(v)) / nv);
    }
  }
  return rep;
}

ScreeningReport screen_pushout_base(double threshold, std::uint64_t seed, int max_candidates) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> entry(-3, 3);
  ScreeningReport rep;
  rep.seed = seed;
  for (int n : {3, 4}) {
    const Space space = Space::uniform(n, 1.0);
    for (int c = 0; c < max_candidates; ++c) {
      Matrix gens(n, 2);
      for (int i = 0; i < n; ++i) {
        gens(i, 0) = entry(rng);
        gens(i, 1) = entry(rng);
      }
      const Subspace y = Subspace::span(space, gens);
      if (y.dim() != 2) continue;
      ++rep.candidates;
      const double lambda = min_projection_norm(space, y, 1.0).upper_bound;
      if (lambda >= threshold) {
        rep.y = y;
        rep.lambda_x = lambda;
        rep.n = n;
        return rep;
      }
    }
    rep.escalated = true;
  }
  throw Error("no subspace with the required projection constant was found");
}

}  // namespace envlab
