#include "envlab/random.hpp"

#include <algorithm>
#include <map>

namespace envlab {

Vector random_weights(Rng& rng, int n, bool integer) {
  Vector w(n);
  if (integer) {
    std::uniform_int_distribution<int> d(1, 3);
    for (int i = 0; i < n; ++i) w[i] = d(rng);
  } else {
    std::uniform_real_distribution<double> d(0.5, 2.0);
    for (int i = 0; i < n; ++i) w[i] = d(rng);
  }
  return w;
}

Subspace random_subspace(Rng& rng, const Space& space, int dim, int range) {
  if (dim < 1 || dim > space.n()) throw DimensionError("random_subspace needs 1 <= dim <= n");
  std::uniform_int_distribution<int> entry(-range, range);
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    Matrix g(space.n(), dim);
    for (int i = 0; i < g.rows(); ++i) {
      for (int j = 0; j < dim; ++j) g(i, j) = entry(rng);
    }
    Subspace y = Subspace::span(space, g);
    if (y.dim() == dim) return y;
  }
  throw Error("could not draw a subspace of the requested dimension");
}

Subspace random_unital_subspace(Rng& rng, const Space& space, int extra, int range) {
  std::uniform_int_distribution<int> entry(0, range);
  Matrix g(space.n(), extra + 1);
  g.col(0).setOnes();
  for (int j = 1; j <= extra; ++j) {
    for (int i = 0; i < space.n(); ++i) g(i, j) = entry(rng);
  }
  return Subspace::span(space, g);
}

Partition random_partition(Rng& rng, int n, int max_blocks) {
  std::uniform_int_distribution<int> label(0, std::max(0, max_blocks - 1));
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (auto& l : labels) l = label(rng);
  return Partition::from_labels(labels);
}

SignedPermutation random_signed_permutation(Rng& rng, const Space& space) {
  const int n = space.n();
  std::map<double, std::vector<int>> classes;
  for (int i = 0; i < n; ++i) classes[space.weight(i)].push_back(i);
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (auto& [w, atoms] : classes) {
    std::vector<int> images = atoms;
    std::shuffle(images.begin(), images.end(), rng);
    for (std::size_t k = 0; k < atoms.size(); ++k) perm[static_cast<std::size_t>(atoms[k])] = images[k];
  }
  std::bernoulli_distribution flip(0.5);
  std::vector<int> signs(static_cast<std::size_t>(n));
  for (auto& s : signs) s = flip(rng) ? -1 : 1;
  return SignedPermutation(std::move(perm), std::move(signs));
}

std::vector<double> random_convex_weights(Rng& rng, int k) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(static_cast<std::size_t>(k));
  double total = 0.0;
  for (auto& x : w) {
    x = e(rng);
    total += x;
  }
  for (auto& x : w) x /= total;
  // Exact unit sum for the simplex check.
  double partial = 0.0;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) partial += w[i];
  if (!w.empty()) w.back() = std::max(0.0, 1.0 - partial);
  return w;
}

}  // namespace envlab
