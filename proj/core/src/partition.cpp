#include "envlab/partition.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>

namespace envlab {
namespace {

struct DisjointSets {
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

void check_same_n(const Partition& a, const Partition& b) {
  if (a.n() != b.n()) throw DimensionError("partitions of different ground sets");
}

}  // namespace

Partition::Partition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) {
    if (b.empty()) throw DomainError("partition has an empty block");
    n_ += static_cast<int>(b.size());
  }
  labels_.assign(static_cast<std::size_t>(n_), -1);
  for (auto& b : blocks_) std::sort(b.begin(), b.end());
  std::sort(blocks_.begin(), blocks_.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    for (int atom : blocks_[k]) {
      if (atom < 0 || atom >= n_ || labels_[static_cast<std::size_t>(atom)] != -1)
        throw DomainError("blocks do not form a partition of {1.." + std::to_string(n_) + "}");
      labels_[static_cast<std::size_t>(atom)] = static_cast<int>(k);
    }
  }
}

Partition Partition::from_labels(std::span<const int> labels) {
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> blocks;
  blocks.reserve(groups.size());
  for (auto& [label, atoms] : groups) blocks.push_back(std::move(atoms));
  return Partition(std::move(blocks));
}

Partition Partition::discrete(int n) {
  std::vector<std::vector<int>> blocks;
  for (int i = 0; i < n; ++i) blocks.push_back({i});
  return Partition(std::move(blocks));
}

Partition Partition::single_block(int n) {
  std::vector<int> all(static_cast<std::size_t>(n));
  std::iota(all.begin(), all.end(), 0);
  return Partition({std::move(all)});
}

Partition generated_partition(const Subspace& y, double tol) {
  const int n = y.n();
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int k = 0; k < y.dim(); ++k) {
    const Vector b = y.basis().col(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return b[i] < b[j]; });
    const double range = b.maxCoeff() - b.minCoeff();
    const double threshold = tol * std::max(range, b.cwiseAbs().maxCoeff());
    std::vector<int> level(static_cast<std::size_t>(n), 0);
    int current = 0;
    for (std::size_t r = 1; r < order.size(); ++r) {
      if (b[order[r]] - b[order[r - 1]] > threshold) ++current;
      level[static_cast<std::size_t>(order[r])] = current;
    }
    // Common refinement of the running labels with this vector's level sets.
    std::map<std::pair<int, int>, int> pairs;
    for (int i = 0; i < n; ++i) {
      auto key = std::make_pair(labels[i], level[i]);
      auto it = pairs.try_emplace(key, static_cast<int>(pairs.size())).first;
      labels[i] = it->second;
    }
  }
  return Partition::from_labels(labels);
}

Matrix conditional_expectation(const Space& space, const Partition& partition) {
  if (partition.n() != space.n()) throw DimensionError("partition and space disagree on n");
  const int n = space.n();
  Matrix e = Matrix::Zero(n, n);
  for (const auto& block : partition.blocks()) {
    double mass = 0.0;
    for (int j : block) mass += space.weight(j);
    for (int i : block)
      for (int j : block) e(i, j) = space.weight(j) / mass;
  }
  return e;
}

Subspace fixed_space(const Space& space, const Partition& partition) {
  if (partition.n() != space.n()) throw DimensionError("partition and space disagree on n");
  Matrix g = Matrix::Zero(space.n(), static_cast<Eigen::Index>(partition.size()));
  for (std::size_t k = 0; k < partition.size(); ++k)
    for (int i : partition.blocks()[k]) g(i, static_cast<Eigen::Index>(k)) = 1.0;
  return Subspace::span(space, g);
}

Partition meet(const Partition& a, const Partition& b) {
  check_same_n(a, b);
  std::map<std::pair<int, int>, int> pairs;
  std::vector<int> labels(static_cast<std::size_t>(a.n()));
  for (int i = 0; i < a.n(); ++i) {
    auto key = std::make_pair(a.block_of(i), b.block_of(i));
    labels[static_cast<std::size_t>(i)] = pairs.try_emplace(key, static_cast<int>(pairs.size())).first->second;
  }
  return Partition::from_labels(labels);
}

Partition join(const Partition& a, const Partition& b) {
  check_same_n(a, b);
  DisjointSets sets(a.n());
  for (const Partition* p : {&a, &b})
    for (const auto& block : p->blocks())
      for (int atom : block) sets.unite(block.front(), atom);
  std::vector<int> labels(static_cast<std::size_t>(a.n()));
  for (int i = 0; i < a.n(); ++i) labels[static_cast<std::size_t>(i)] = sets.find(i);
  return Partition::from_labels(labels);
}

bool is_refinement(const Partition& fine, const Partition& coarse) {
  check_same_n(fine, coarse);
  for (const auto& block : fine.blocks())
    for (int atom : block)
      if (coarse.block_of(atom) != coarse.block_of(block.front())) return false;
  return true;
}

Subspace conditional_envelope(const Subspace& y, double tol) {
  return fixed_space(y.ambient(), generated_partition(y, tol));
}

}  // namespace envlab
