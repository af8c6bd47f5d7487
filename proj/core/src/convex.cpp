#include "convex.hpp"

#include <cmath>

namespace envlab::detail {

MinimizeResult minimize_bfgs(const Objective& f, Vector x0, int max_iter, double gtol) {
  const auto n = x0.size();
  MinimizeResult out;
  out.x = std::move(x0);
  Vector g(n);
  out.value = f(out.x, &g);
  if (n == 0) return out;
  Matrix h = Matrix::Identity(n, n);
  Vector g_new(n);
  for (int it = 0; it < max_iter; ++it) {
    out.iterations = it + 1;
    if (g.norm() <= gtol * std::max(1.0, std::abs(out.value))) break;
    Vector d = -h * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      h.setIdentity();
      d = -g;
      slope = -g.squaredNorm();
    }
    double step = 1.0;
    double trial = 0.0;
    Vector x_new;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      x_new = out.x + step * d;
      trial = f(x_new, nullptr);
      if (trial <= out.value + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (h.isIdentity()) break;
      h.setIdentity();
      continue;
    }
    f(x_new, &g_new);
    const Vector s = x_new - out.x;
    const Vector y = g_new - g;
    const double sy = s.dot(y);
    const double decrease = out.value - trial;
    out.x = std::move(x_new);
    out.value = trial;
    g = g_new;
    if (sy > 1e-16 * s.norm() * y.norm()) {
      const double rho = 1.0 / sy;
      const Matrix id = Matrix::Identity(n, n);
      h = (id - rho * s * y.transpose()) * h * (id - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    if (decrease <= 1e-15 * std::max(1.0, std::abs(trial)) && s.norm() <= 1e-14 * std::max(1.0, out.x.norm())) break;
  }
  return out;
}

}  // namespace envlab::detail
