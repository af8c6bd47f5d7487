#pragma once

// Sigma-algebras on finitely many atoms, represented as set partitions.

#include <span>
#include <vector>

#include "envlab/subspace.hpp"

namespace envlab {

inline constexpr double kLevelSetTol = 1e-8;

/// A set partition of {0, ..., n-1}. Blocks are sorted internally and ordered
/// by their smallest atom, so equal partitions compare equal.
class Partition {
 public:
  explicit Partition(std::vector<std::vector<int>> blocks);
  /// Atoms with equal labels share a block.
  static Partition from_labels(std::span<const int> labels);
  static Partition discrete(int n);
  static Partition single_block(int n);

  int n() const { return n_; }
  std::size_t size() const { return blocks_.size(); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  /// Block index of every atom.
  const std::vector<int>& labels() const { return labels_; }
  int block_of(int atom) const { return labels_[static_cast<std::size_t>(atom)]; }

  bool operator==(const Partition& other) const { return blocks_ == other.blocks_; }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> labels_;
};

/// Coarsest partition making every element of y block-constant. Level sets
/// are split at gaps larger than tol times the vector's scale; closer values
/// merge.
Partition generated_partition(const Subspace& y, double tol = kLevelSetTol);

/// Weighted block averaging: (Ef)_i = sum_{j in B(i)} mu_j f_j / mu(B(i)).
Matrix conditional_expectation(const Space& space, const Partition& partition);

/// Block-constant vectors; dimension equals the number of blocks.
Subspace fixed_space(const Space& space, const Partition& partition);

/// Common refinement.
Partition meet(const Partition& a, const Partition& b);
/// Finest common coarsening.
Partition join(const Partition& a, const Partition& b);
/// True when every block of fine lies inside a block of coarse.
bool is_refinement(const Partition& fine, const Partition& coarse);

/// fixed_space(generated_partition(y)); always unital and contains y.
Subspace conditional_envelope(const Subspace& y, double tol = kLevelSetTol);

}  // namespace envlab
