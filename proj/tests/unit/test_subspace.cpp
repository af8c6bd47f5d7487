#include <gtest/gtest.h>

#include "envlab/random.hpp"
#include "envlab/subspace.hpp"
#include "oracles.hpp"

using namespace envlab;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

Vector e(int n, int i) { return Vector::Unit(n, i); }

}  // namespace

TEST(Subspace, FromVectorsRank) {
  const Space s2 = Space::uniform(2, 3.0);
  const Subspace y = Subspace::from_vectors(s2, {e(2, 0), e(2, 0)});
  EXPECT_EQ(y.dim(), 1);
  EXPECT_TRUE(contains(y, e(2, 0)));
  EXPECT_EQ(Subspace::from_vectors(s2, {vec({1, 0}), vec({1, 1e-15})}).dim(), 1);
  EXPECT_EQ(Subspace::from_vectors(Space::uniform(3, 3.0), {vec({1, 1, 0}), vec({0, 1, 1})}).dim(), 2);
  EXPECT_THROW(Subspace::from_vectors(s2, {vec({0, 0}), vec({1e-14, 0})}), ZeroSubspaceError);
  EXPECT_THROW(Subspace::from_vectors(s2, {vec({1, 0, 0})}), DimensionError);
}

TEST(Subspace, CanonicalBasisIndependentOfSpanningSet) {
  const Space s(vec({1, 2, 3, 1}), 3.0);
  const Subspace a = Subspace::from_vectors(s, {vec({1, 2, 0, 1}), vec({0, 1, 1, 1})});
  const Subspace b = Subspace::from_vectors(s, {vec({1, 3, 1, 2}), vec({2, 3, -1, 1})});
  EXPECT_LE((a.basis() - b.basis()).cwiseAbs().maxCoeff(), 1e-12);
  const Matrix g = a.basis().transpose() * s.weights().asDiagonal() * a.basis();
  EXPECT_TRUE(g.isApprox(Matrix::Identity(2, 2), 1e-12));
}

TEST(Subspace, LatticeOperations) {
  const Space s = Space::uniform(3, 3.0);
  const Subspace y12 = Subspace::from_vectors(s, {e(3, 0), e(3, 1)});
  const Subspace y23 = Subspace::from_vectors(s, {e(3, 1), e(3, 2)});
  EXPECT_TRUE(equal(intersect(y12, y23), Subspace::from_vectors(s, {e(3, 1)})));
  EXPECT_TRUE(equal(sum(Subspace::from_vectors(s, {e(3, 0)}), Subspace::from_vectors(s, {e(3, 1)})), y12));
  const Space s2 = Space::uniform(2, 3.0);
  EXPECT_TRUE(contains(Subspace::from_vectors(s2, {vec({1, 1})}), vec({2, 2}), 1e-9));
  EXPECT_FALSE(contains(Subspace::from_vectors(s2, {vec({1, 1})}), vec({2, 1}), 1e-9));
  EXPECT_THROW(sum(y12, Subspace::whole(s2)), DimensionError);
  EXPECT_THROW(intersect(y12, Subspace::whole(Space(vec({1, 2, 1}), 3.0))), DimensionError);
}

TEST(Subspace, RandomSumsAndIntersectionsAgreeWithRankCounts) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Space s(random_weights(rng, 6), 3.0);
    const Subspace y = random_subspace(rng, s, 1 + trial % 4);
    const Subspace z = random_subspace(rng, s, 1 + (trial / 4) % 4);
    const Subspace total = sum(y, z);
    const Subspace common = intersect(y, z);
    Matrix both(6, y.dim() + z.dim());
    both << y.basis(), z.basis();
    EXPECT_EQ(total.dim(), oracle::rank(both));
    EXPECT_EQ(common.dim(), y.dim() + z.dim() - total.dim());
    EXPECT_TRUE(includes(y, common) && includes(z, common));
    EXPECT_TRUE(oracle::same_span(total.basis(), both));
  }
}

TEST(Subspace, OrthogonalComplementIsWeighted) {
  const Space s(vec({1, 2, 4}), 3.0);
  const Subspace y = Subspace::from_vectors(s, {vec({1, 1, 1})});
  const Subspace c = orthogonal_complement(y);
  EXPECT_EQ(c.dim(), 2);
  for (const Vector& b : c.basis_vectors()) EXPECT_NEAR(pairing(s, b, vec({1, 1, 1})), 0.0, 1e-12);
}

TEST(LatticeClosure, SmallCases) {
  const Space s4 = Space::uniform(4, 3.0);
  const Subspace ones4 = Subspace::from_vectors(s4, {Vector::Ones(4)});
  EXPECT_TRUE(equal(lattice_closure(ones4), ones4));
  EXPECT_TRUE(lattice_closure(Subspace::from_vectors(s4, {Vector::Ones(4), vec({0, 1, 2, 3})})).is_whole());

  const Space s3 = Space::uniform(3, 3.0);
  const Subspace blocks = Subspace::from_vectors(s3, {vec({1, 1, 0}), vec({0, 0, 1})});
  EXPECT_TRUE(equal(lattice_closure(blocks), blocks));
  EXPECT_TRUE(is_sublattice(blocks));
  EXPECT_FALSE(is_sublattice(Subspace::from_vectors(s4, {Vector::Ones(4), vec({0, 1, 2, 3})})));
}

TEST(LatticeClosure, MatchesSaturationOracle) {
  Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 4;
    const Space s = Space::uniform(n, 3.0);
    const Subspace y = random_subspace(rng, s, 1 + trial % 2, 2);
    const Subspace l = lattice_closure(y);
    EXPECT_TRUE(oracle::same_span(l.basis(), oracle::lattice_closure(y.basis())))
        << "trial " << trial;
    EXPECT_TRUE(is_sublattice(l));
  }
}

TEST(Unital, AndDivide) {
  const Space s4 = Space::uniform(4, 3.0);
  EXPECT_TRUE(is_unital(Subspace::from_vectors(s4, {Vector::Ones(4), vec({0, 1, 2, 3})})));
  EXPECT_FALSE(is_unital(Subspace::from_vectors(s4, {vec({0, 1, 2, 3})})));

  const Space s3 = Space::uniform(3, 1.0);
  const Subspace line = Subspace::from_vectors(s3, {vec({1, 2, 0})});
  const int support[] = {0, 1};
  const Subspace restricted = restrict_to(line, support);
  const Subspace divided = divide_by(restricted, vec({1, 2}));
  EXPECT_EQ(divided.dim(), 1);
  EXPECT_TRUE(contains(divided, Vector::Ones(2)));
  EXPECT_TRUE(is_unital(divided));
  EXPECT_THROW(divide_by(restricted, vec({1, 0})), FullSupportError);
}

TEST(Unital, DivideReweightsIsometrically) {
  const Space s(vec({1, 2}), 3.0);
  const Subspace y = Subspace::from_vectors(s, {vec({1, 3})});
  const Vector g = vec({2, -0.5});
  const Subspace d = divide_by(y, g);
  const Vector f = vec({1, 3});
  const Vector q = f.cwiseQuotient(g);
  EXPECT_TRUE(contains(d, q));
  EXPECT_NEAR(norm(d.ambient(), q), norm(s, f), 1e-12);
}
