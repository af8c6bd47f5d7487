#include <gtest/gtest.h>

#include "envlab/partition.hpp"
#include "envlab/random.hpp"
#include "oracles.hpp"

using namespace envlab;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Partition parts(std::vector<std::vector<int>> b) { return Partition(std::move(b)); }

}  // namespace

TEST(Partition, Validates) {
  EXPECT_THROW(parts({{0, 1}, {1, 2}}), DomainError);
  EXPECT_THROW(parts({{0}, {2}}), DomainError);
  EXPECT_THROW(parts({{0}, {}}), DomainError);
  EXPECT_EQ(parts({{2, 1}, {0}}), parts({{0}, {1, 2}}));
}

TEST(GeneratedPartition, LevelSets) {
  const Space s = Space::uniform(3, 3.0);
  EXPECT_EQ(generated_partition(Subspace::from_vectors(s, {Vector::Ones(3)})), Partition::single_block(3));
  EXPECT_EQ(generated_partition(Subspace::from_vectors(s, {vec({1, 1, 2})})), parts({{0, 1}, {2}}));
  EXPECT_EQ(generated_partition(Subspace::from_vectors(s, {vec({1, 1, 2}), vec({1, 2, 2})})),
            Partition::discrete(3));
}

TEST(GeneratedPartition, MatchesRowEqualityOracle) {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 4;
    const Space s(random_weights(rng, n), 3.0);
    const Partition truth = random_partition(rng, n, 3);
    std::vector<Vector> gens;
    std::uniform_int_distribution<int> pick(-3, 3);
    for (int k = 0; k < 2; ++k) {
      Vector v(n);
      std::vector<double> value(truth.size());
      for (double& x : value) x = pick(rng);
      for (int i = 0; i < n; ++i) v[i] = value[static_cast<std::size_t>(truth.block_of(i))];
      gens.push_back(v);
    }
    gens.push_back(Vector::Ones(n));
    const Subspace y = Subspace::from_vectors(s, gens);
    const Partition got = generated_partition(y);
    EXPECT_TRUE(is_refinement(truth, got));
    EXPECT_TRUE(oracle::same_span(fixed_space(s, got).basis(), oracle::conditional_envelope(y.basis())));
  }
}

TEST(ConditionalExpectation, Examples) {
  const Space s(vec({1, 1, 2}), 3.0);
  const Matrix e = conditional_expectation(s, parts({{0, 1}, {2}}));
  const Vector f = vec({3, 5, 7});
  EXPECT_TRUE((e * f).isApprox(vec({4, 4, 7})));
  EXPECT_TRUE(conditional_expectation(s, Partition::discrete(3)).isApprox(Matrix::Identity(3, 3)));
  const Space u = Space::uniform(3, 3.0);
  EXPECT_TRUE((conditional_expectation(u, Partition::single_block(3)) * vec({0, 1, 2})).isApprox(vec({1, 1, 1})));
}

TEST(ConditionalExpectation, WeightedAndContractive) {
  const Space s(vec({1, 3, 2}), 1.0);
  const Matrix e = conditional_expectation(s, parts({{0, 1}, {2}}));
  EXPECT_TRUE((e * vec({4, 0, 1})).isApprox(vec({1, 1, 1})));
  EXPECT_TRUE((e * e).isApprox(e, 1e-14));
  for (double p : {1.0, kInfinity}) EXPECT_NEAR(oracle::polyhedral_norm(s.weights(), e, p), 1.0, 1e-14);
}

TEST(Partition, FixedSpaceMeetJoin) {
  const Space s = Space::uniform(3, 3.0);
  const Partition p = parts({{0, 1}, {2}});
  const Partition q = parts({{0}, {1, 2}});
  EXPECT_TRUE(equal(fixed_space(s, p), Subspace::from_vectors(s, {vec({1, 1, 0}), vec({0, 0, 1})})));
  EXPECT_EQ(join(p, q), Partition::single_block(3));
  EXPECT_EQ(meet(p, q), Partition::discrete(3));
  EXPECT_TRUE(is_refinement(meet(p, q), p));
  EXPECT_TRUE(is_refinement(p, join(p, q)));
  EXPECT_FALSE(is_refinement(p, q));
  EXPECT_THROW(join(p, Partition::discrete(4)), DimensionError);
}

TEST(Partition, JoinFixedSpaceIsIntersection) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 5;
    const Space s = Space::uniform(n, 3.0);
    const Partition p = random_partition(rng, n, n);
    const Partition q = random_partition(rng, n, n);
    EXPECT_TRUE(equal(fixed_space(s, join(p, q)), intersect(fixed_space(s, p), fixed_space(s, q))));
    EXPECT_TRUE(includes(fixed_space(s, meet(p, q)), sum(fixed_space(s, p), fixed_space(s, q))));
  }
}

TEST(ConditionalEnvelope, Examples) {
  const Space s = Space::uniform(3, 3.0);
  const Subspace y = Subspace::from_vectors(s, {Vector::Ones(3), vec({1, 1, 2})});
  const Subspace env = conditional_envelope(y);
  EXPECT_EQ(env.dim(), 2);
  EXPECT_TRUE(equal(env, fixed_space(s, parts({{0, 1}, {2}}))));
  const Space s4 = Space::uniform(4, 3.0);
  EXPECT_TRUE(conditional_envelope(Subspace::from_vectors(s4, {Vector::Ones(4), vec({0, 1, 2, 3})})).is_whole());
  const Subspace ones = Subspace::from_vectors(s, {Vector::Ones(3)});
  EXPECT_TRUE(equal(conditional_envelope(ones), ones));
}
