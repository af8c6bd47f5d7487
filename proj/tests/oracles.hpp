#pragma once

// Reference computations for the tests. Each one reaches its answer by a
// route that shares no code with the library routine it checks.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline double lp_norm(const Vec& w, const Vec& f, double p) {
  if (std::isinf(p)) return f.cwiseAbs().maxCoeff();
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) s += w[i] * std::pow(std::abs(f[i]), p);
  return std::pow(s, 1.0 / p);
}

inline int rank(const Mat& m, double tol = 1e-9) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  const double top = s.size() ? s[0] : 0.0;
  if (top <= tol) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i) r += s[i] > tol * top ? 1 : 0;
  return r;
}

/// Same column space, by rank counting.
inline bool same_span(const Mat& a, const Mat& b, double tol = 1e-9) {
  const int ra = rank(a, tol);
  const int rb = rank(b, tol);
  Mat ab(a.rows(), a.cols() + b.cols());
  ab << a, b;
  return ra == rb && rank(ab, tol) == ra;
}

inline bool span_contains(const Mat& a, const Mat& b, double tol = 1e-9) {
  Mat ab(a.rows(), a.cols() + b.cols());
  ab << a, b;
  return rank(ab, tol) == rank(a, tol);
}

/// Orthonormal basis of the (Euclidean) null space.
inline Mat null_space(const Mat& m, double tol = 1e-9) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = std::max(1.0, s.size() ? s[0] : 0.0);
  int r = 0;
  for (int i = 0; i < s.size(); ++i) r += s[i] > tol * top ? 1 : 0;
  return svd.matrixV().rightCols(m.cols() - r);
}

/// Signed permutation matrix with (g f)_i = signs_i f_{perm^{-1}(i)}.
inline Mat signed_perm_matrix(const std::vector<int>& perm, const std::vector<int>& signs) {
  const int n = static_cast<int>(perm.size());
  Mat m = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) m(perm[j], j) = signs[perm[j]];
  return m;
}

/// Every weight-compatible signed permutation matrix, by brute force.
inline std::vector<Mat> all_isometries(const Vec& w) {
  const int n = static_cast<int>(w.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Mat> out;
  do {
    bool ok = true;
    for (int i = 0; i < n; ++i) ok = ok && w[perm[i]] == w[i];
    if (!ok) continue;
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> signs(n);
      for (int i = 0; i < n; ++i) signs[i] = (mask >> i) & 1 ? -1 : 1;
      out.push_back(signed_perm_matrix(perm, signs));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Fix(Stab(Y)) by brute force over the whole group; gens span Y.
inline Mat algebraic_envelope(const Vec& w, const Mat& gens) {
  Mat stacked(0, gens.rows());
  for (const Mat& g : all_isometries(w)) {
    if ((g * gens - gens).cwiseAbs().maxCoeff() <= 1e-9) {
      Mat next(stacked.rows() + g.rows(), g.cols());
      next << stacked, g - Mat::Identity(g.rows(), g.cols());
      stacked = next;
    }
  }
  if (stacked.rows() == 0) return Mat::Identity(gens.rows(), gens.rows());
  return null_space(stacked);
}

/// Block-constant vectors of the partition "rows of gens are equal".
inline Mat conditional_envelope(const Mat& gens, double tol = 1e-9) {
  const int n = static_cast<int>(gens.rows());
  std::vector<int> label(n, -1);
  int blocks = 0;
  for (int i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = blocks;
    for (int j = i + 1; j < n; ++j) {
      if (label[j] < 0 && (gens.row(i) - gens.row(j)).cwiseAbs().maxCoeff() <= tol) label[j] = blocks;
    }
    ++blocks;
  }
  Mat out = Mat::Zero(n, blocks);
  for (int i = 0; i < n; ++i) out(i, label[i]) = 1.0;
  return out;
}

/// Closure under max/min by saturation: adds max and min of random
/// combinations until the rank stops growing for many rounds.
inline Mat lattice_closure(const Mat& gens, unsigned seed = 7) {
  Mat cur = gens;
  int r = rank(cur);
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  int quiet = 0;
  while (quiet < 200) {
    Vec a = Vec::Zero(cur.rows()), b = Vec::Zero(cur.rows());
    for (int k = 0; k < cur.cols(); ++k) {
      a += g(rng) * cur.col(k);
      b += g(rng) * cur.col(k);
    }
    Mat next(cur.rows(), cur.cols() + 2);
    next << cur, a.cwiseMax(b), a.cwiseMin(b);
    const int nr = rank(next);
    if (nr > r) {
      cur = next;
      r = nr;
      quiet = 0;
    } else {
      ++quiet;
    }
  }
  return cur;
}

/// Projection onto the eigenvalue-1 eigenspace along the other eigenspaces,
/// from a complex eigendecomposition (T diagonalisable).
inline Mat spectral_projection(const Mat& t, double tol = 1e-8) {
  Eigen::EigenSolver<Mat> es(t);
  const Eigen::MatrixXcd v = es.eigenvectors();
  const Eigen::MatrixXcd vinv = v.inverse();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(t.rows(), t.cols());
  for (int k = 0; k < t.rows(); ++k) {
    if (std::abs(es.eigenvalues()[k] - 1.0) <= tol) p += v.col(k) * vinv.row(k);
  }
  return p.real();
}

/// (1/N) sum_{k<N} T^k by direct summation.
inline Mat naive_cesaro(const Mat& t, long n) {
  Mat power = Mat::Identity(t.rows(), t.cols());
  Mat acc = Mat::Zero(t.rows(), t.cols());
  for (long k = 0; k < n; ++k) {
    acc += power;
    power = t * power;
  }
  return acc / static_cast<double>(n);
}

/// ||A||_{1} or ||A||_{inf} on l_p^n(w) by evaluating A on every extreme point
/// of the unit ball.
inline double polyhedral_norm(const Vec& w, const Mat& a, double p) {
  const int n = static_cast<int>(w.size());
  double best = 0.0;
  if (p == 1.0) {
    for (int j = 0; j < n; ++j) {
      Vec x = Vec::Zero(n);
      x[j] = 1.0 / w[j];
      best = std::max(best, lp_norm(w, a * x, 1.0));
    }
  } else {
    for (int mask = 0; mask < (1 << n); ++mask) {
      Vec x(n);
      for (int i = 0; i < n; ++i) x[i] = (mask >> i) & 1 ? -1.0 : 1.0;
      best = std::max(best, (a * x).cwiseAbs().maxCoeff());
    }
  }
  return best;
}

/// E|g|^p for a standard Gaussian g, by composite Simpson on [0, 40].
inline double gaussian_abs_moment(double p) {
  const int m = 400000;
  const double h = 40.0 / m;
  auto f = [p](double x) { return std::pow(x, p) * std::exp(-0.5 * x * x); };
  double s = f(0.0) + f(40.0);
  for (int k = 1; k < m; ++k) s += (k % 2 ? 4.0 : 2.0) * f(k * h);
  return 2.0 * s * h / 3.0 / std::sqrt(2.0 * M_PI);
}

/// c_2(L_p) = ||g||_p ||g||_{p'} for a standard Gaussian g.
inline double c2_by_quadrature(double p) {
  const double q = p / (p - 1.0);
  return std::pow(gaussian_abs_moment(p), 1.0 / p) * std::pow(gaussian_abs_moment(q), 1.0 / q);
}

/// min_c ||x1 - B c||_1 + ||x2 + B c||_1 (weights w) by evaluating the
/// piecewise-linear objective at every vertex of its breakpoint arrangement
/// (d <= 2).
inline double quotient_norm_l1(const Vec& w, const Mat& b, const Vec& x1, const Vec& x2) {
  const int n = static_cast<int>(b.rows());
  const int d = static_cast<int>(b.cols());
  auto f = [&](const Vec& c) { return lp_norm(w, x1 - b * c, 1.0) + lp_norm(w, x2 + b * c, 1.0); };
  // Hyperplanes (row, offset): row . c = offset.
  std::vector<std::pair<Vec, double>> planes;
  for (int i = 0; i < n; ++i) {
    planes.emplace_back(b.row(i).transpose(), x1[i]);
    planes.emplace_back(b.row(i).transpose(), -x2[i]);
  }
  double best = f(Vec::Zero(d));
  if (d == 1) {
    for (const auto& [r, o] : planes) {
      if (std::abs(r[0]) > 1e-14) best = std::min(best, f(Vec::Constant(1, o / r[0])));
    }
  } else {
    for (std::size_t a = 0; a < planes.size(); ++a) {
      for (std::size_t c = a + 1; c < planes.size(); ++c) {
        Mat m(2, 2);
        m.row(0) = planes[a].first.transpose();
        m.row(1) = planes[c].first.transpose();
        if (std::abs(m.determinant()) < 1e-12) continue;
        const Vec sol = m.inverse() * Vec((Vec(2) << planes[a].second, planes[c].second).finished());
        best = std::min(best, f(sol));
      }
    }
  }
  return best;
}

/// Minimal ||I - z f^T||_1 over f.z = 1 for the hyperplane ker f of l_1^3 with
/// uniform weights, by grid search and local pattern refinement.
inline double hyperplane_projection_constant_l1(const Vec& f) {
  // z = z0 + s u + t v with f.z0 = 1 and u, v spanning ker f.
  const Vec z0 = f / f.squaredNorm();
  const Mat kern = null_space(f.transpose());
  auto obj = [&](double s, double t) {
    const Vec z = z0 + s * kern.col(0) + t * kern.col(1);
    const Mat p = Mat::Identity(3, 3) - z * f.transpose();
    double best = 0.0;
    for (int j = 0; j < 3; ++j) best = std::max(best, p.col(j).cwiseAbs().sum());
    return best;
  };
  double bs = 0.0, bt = 0.0, bv = obj(0.0, 0.0);
  for (int i = -200; i <= 200; ++i) {
    for (int j = -200; j <= 200; ++j) {
      const double v = obj(0.02 * i, 0.02 * j);
      if (v < bv) {
        bv = v;
        bs = 0.02 * i;
        bt = 0.02 * j;
      }
    }
  }
  for (double h = 0.02; h > 1e-13; h *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (auto [ds, dt] : {std::pair{h, 0.0}, {-h, 0.0}, {0.0, h}, {0.0, -h}, {h, h}, {-h, -h}, {h, -h}, {-h, h}}) {
        const double v = obj(bs + ds, bt + dt);
        if (v < bv - 1e-15) {
          bv = v;
          bs += ds;
          bt += dt;
          moved = true;
        }
      }
    }
  }
  return bv;
}

}  // namespace oracle
