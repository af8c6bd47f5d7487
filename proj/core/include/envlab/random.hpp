#pragma once

// Seeded generators for test instances.

#include <cstdint>
#include <random>
#include <vector>

#include "envlab/isometry.hpp"
#include "envlab/partition.hpp"

namespace envlab {

using Rng = std::mt19937_64;

/// Weights drawn from {1, 2, 3} (integer) or uniformly from [0.5, 2].
Vector random_weights(Rng& rng, int n, bool integer = true);

/// Span of dim vectors with entries in {-range, ..., range}; retries until
/// the span has dimension dim (1 <= dim <= n).
Subspace random_subspace(Rng& rng, const Space& space, int dim, int range = 3);

/// span{1, v_1, ..., v_extra} with entries of v_k in {0, ..., range}.
/// The dimension can fall short of extra + 1 when draws coincide.
Subspace random_unital_subspace(Rng& rng, const Space& space, int extra, int range = 3);

/// Uniform labels in {0, ..., max_blocks - 1}.
Partition random_partition(Rng& rng, int n, int max_blocks);

/// Random weight-compatible signed permutation: a uniform permutation
/// inside every class of equal weights and uniform signs.
SignedPermutation random_signed_permutation(Rng& rng, const Space& space);

/// Random point of the simplex with k coordinates.
std::vector<double> random_convex_weights(Rng& rng, int k);

}  // namespace envlab
