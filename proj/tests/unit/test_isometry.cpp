#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "envlab/isometry.hpp"
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

Subspace unital_112(const Space& s) { return Subspace::from_vectors(s, {Vector::Ones(3), vec({1, 1, 2})}); }

}  // namespace

TEST(SignedPermutation, Apply) {
  const Space s = Space::uniform(3, 3.0);
  const Vector f = vec({1, 2, 3});
  EXPECT_TRUE(apply(s, SignedPermutation::identity(3), f).isApprox(f));
  EXPECT_TRUE(apply(s, SignedPermutation::transposition(3, 0, 1), f).isApprox(vec({2, 1, 3})));
  EXPECT_TRUE(apply(s, SignedPermutation::sign_flip(3, 2), f).isApprox(vec({1, 2, -3})));
  EXPECT_TRUE(apply(s, SignedPermutation::cyclic_shift(3), f).isApprox(vec({3, 1, 2})));
  EXPECT_THROW(apply(Space(vec({1, 2, 1}), 3.0), SignedPermutation::transposition(3, 0, 1), f), NotIsometryError);
  EXPECT_THROW(SignedPermutation({0, 0}, {1, 1}), DomainError);
  EXPECT_THROW(SignedPermutation({0, 1}, {1, 2}), DomainError);
}

TEST(SignedPermutation, MatrixComposeInverse) {
  Rng rng(37);
  const Space s = Space::uniform(5, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const SignedPermutation g = random_signed_permutation(rng, s);
    const SignedPermutation h = random_signed_permutation(rng, s);
    EXPECT_TRUE(g.matrix().isApprox(oracle::signed_perm_matrix(g.perm(), g.signs())));
    EXPECT_TRUE(g.compose(h).matrix().isApprox(g.matrix() * h.matrix()));
    EXPECT_TRUE(g.compose(g.inverse()).is_identity());
  }
}

TEST(Group, Orders) {
  EXPECT_EQ(enumerate_group(Space::uniform(1, 3.0)).size(), 2u);
  EXPECT_EQ(enumerate_group(Space::uniform(2, 3.0)).size(), 8u);
  EXPECT_EQ(enumerate_group(Space(vec({1, 2}), 3.0)).size(), 4u);
  EXPECT_DOUBLE_EQ(group_order(Space(vec({1, 1, 2, 2, 2}), 1.0)), 32.0 * 2 * 6);
  EXPECT_THROW(enumerate_group(Space::uniform(3, 2.0)), HilbertCaseError);
  EXPECT_THROW(enumerate_group(Space::uniform(9, 3.0)), TooLargeError);
}

TEST(Group, EnumerationMatchesBruteForce) {
  const Space s(vec({1, 2, 1, 2}), 1.5);
  const auto group = enumerate_group(s);
  const auto brute = oracle::all_isometries(s.weights());
  ASSERT_EQ(group.size(), brute.size());
  std::set<std::vector<double>> a, b;
  for (const auto& g : group) {
    const Matrix m = g.matrix();
    a.insert(std::vector<double>(m.data(), m.data() + m.size()));
  }
  for (const Matrix& m : brute) b.insert(std::vector<double>(m.data(), m.data() + m.size()));
  EXPECT_EQ(a, b);
}

TEST(Stabilizer, Examples) {
  const Space s = Space::uniform(3, 3.0);
  const auto whole = stabilizer(Subspace::whole(s));
  ASSERT_EQ(whole.size(), 1u);
  EXPECT_TRUE(whole[0].is_identity());
  EXPECT_EQ(stabilizer(Subspace::zero(s)).size(), 48u);

  const auto st = stabilizer(Subspace::from_vectors(s, {vec({1, 1, 0})}));
  ASSERT_EQ(st.size(), 4u);
  for (const auto& g : st) {
    EXPECT_EQ(g.signs()[0], 1);
    EXPECT_EQ(g.signs()[1], 1);
    EXPECT_EQ(g.perm()[2], 2);
  }
}

TEST(FixedSpaceOf, Examples) {
  const Space s = Space::uniform(3, 3.0);
  const SignedPermutation id[] = {SignedPermutation::identity(3)};
  EXPECT_TRUE(fixed_space_of(s, id).is_whole());
  const SignedPermutation neg[] = {SignedPermutation::negation(3)};
  EXPECT_TRUE(fixed_space_of(s, neg).is_zero());
  const SignedPermutation shift[] = {SignedPermutation::cyclic_shift(3)};
  EXPECT_TRUE(equal(fixed_space_of(s, shift), Subspace::from_vectors(s, {Vector::Ones(3)})));
}

TEST(AlgebraicEnvelope, Examples) {
  const Space h = Space::uniform(3, 2.0);
  const Subspace line = Subspace::from_vectors(h, {vec({1, 2, 0})});
  EXPECT_TRUE(equal(algebraic_envelope(line), line));
  EXPECT_TRUE(equal(isometric_envelope(line), line));
  EXPECT_TRUE(isometric_envelope_report(line).hilbert_case);

  const Space u = Space::uniform(3, 3.0);
  EXPECT_TRUE(equal(algebraic_envelope(unital_112(u)), fixed_space(u, Partition({{0, 1}, {2}}))));

  const Space w(vec({1, 2, 4}), 3.0);
  const Subspace y = unital_112(w);
  EXPECT_TRUE(algebraic_envelope(y).is_whole());
  EXPECT_TRUE(isometric_envelope(y).is_whole());
  EXPECT_EQ(conditional_envelope(y).dim(), 2);
}

TEST(AlgebraicEnvelope, MatchesBruteForce) {
  Rng rng(41);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 3 + trial % 3;
    const Space s(random_weights(rng, n), trial % 2 ? 1.0 : 3.0);
    const Subspace y = random_subspace(rng, s, 1 + trial % 2, 2);
    const Subspace env = algebraic_envelope(y);
    EXPECT_TRUE(oracle::same_span(env.basis(), oracle::algebraic_envelope(s.weights(), y.basis())))
        << "trial " << trial;
    EXPECT_TRUE(equal(isometric_envelope(y), env));
  }
}

TEST(IsometricEnvelope, UniformUnitalEqualsConditional) {
  Rng rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + trial % 4;
    const Space s = Space::uniform(n, 3.0);
    const Subspace y = random_unital_subspace(rng, s, 1 + trial % 2);
    EXPECT_TRUE(equal(isometric_envelope(y), conditional_envelope(y), 1e-7));
  }
}

TEST(Extension, IdentityAndReversal) {
  const Space s = Space::uniform(3, 3.0);
  const std::vector<Vector> src = {Vector::Ones(3), vec({1, 1, 2})};
  const ExtensionResult same = extend_partial_isometry(s, src, src);
  ASSERT_TRUE(same.unique());
  const Matrix b = same.envelope.basis();
  EXPECT_TRUE(same.restrictions[0].isApprox(b, 1e-12));

  const ExtensionResult rev = extend_partial_isometry(s, src, {Vector::Ones(3), vec({2, 1, 1})});
  ASSERT_TRUE(rev.unique());
  const Matrix flip = SignedPermutation({2, 1, 0}, {1, 1, 1}).matrix();
  EXPECT_TRUE(rev.restrictions[0].isApprox(flip * rev.envelope.basis(), 1e-12));
}

TEST(Extension, WeightObstruction) {
  const Space s(vec({1, 2}), 3.0);
  const Vector e1 = Vector::Unit(2, 0), e2 = Vector::Unit(2, 1);
  // e2 is longer than e1, so the plain map fails as an isometry.
  EXPECT_THROW(extend_partial_isometry(s, {e1}, {e2}), NotIsometryError);
  // Rescaled to the right length, no signed permutation can realise it.
  EXPECT_THROW(extend_partial_isometry(s, {e1}, {std::pow(0.5, 1.0 / 3.0) * e2}), NotExtendableError);
}

TEST(Extension, NonLinearMapRejected) {
  const Space s = Space::uniform(3, 3.0);
  EXPECT_THROW(extend_partial_isometry(s, {vec({1, 0, 0}), vec({2, 0, 0})},
                                       {vec({1, 0, 0}), vec({0, 2, 0})}),
               NotIsometryError);
}

TEST(GroupAverage, Examples) {
  const Space s = Space::uniform(3, 3.0);
  const SignedPermutation pm[] = {SignedPermutation::identity(3), SignedPermutation::negation(3)};
  EXPECT_TRUE(group_average_projection(s, pm).isZero());
  const SignedPermutation sw[] = {SignedPermutation::identity(3), SignedPermutation::transposition(3, 0, 1)};
  const Matrix e = conditional_expectation(s, Partition({{0, 1}, {2}}));
  EXPECT_TRUE(group_average_projection(s, sw).isApprox(e));
  const auto st = stabilizer(unital_112(s));
  EXPECT_TRUE(group_average_projection(s, st).isApprox(e));
  const SignedPermutation half[] = {SignedPermutation::cyclic_shift(3)};
  EXPECT_THROW(group_average_projection(s, half), NotAGroupError);
}

TEST(GroupClosure, SizesAndCap) {
  const SignedPermutation gens[] = {SignedPermutation::cyclic_shift(4), SignedPermutation::transposition(4, 0, 1)};
  const auto g = group_closure(gens);
  EXPECT_EQ(g.size(), 24u);
  EXPECT_TRUE(is_group(g));
  EXPECT_THROW(group_closure(gens, 10), TooLargeError);
}

TEST(Stabilizer, OrderMatchesBruteForce) {
  Rng rng(97);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 3;
    const Space s(random_weights(rng, n), 3.0);
    const Subspace y = random_subspace(rng, s, 1 + trial % 2, 1);
    std::size_t count = 0;
    for (const Matrix& g : oracle::all_isometries(s.weights())) {
      count += (g * y.basis() - y.basis()).cwiseAbs().maxCoeff() <= 1e-9 ? 1 : 0;
    }
    EXPECT_EQ(stabilizer(y).size(), count) << "trial " << trial;
  }
}
