#include <gtest/gtest.h>

#include "envlab/ergodic.hpp"
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

ContractionOperator half_shift(const Space& s) {
  const double w[] = {0.5, 0.5};
  const SignedPermutation g[] = {SignedPermutation::identity(s.n()), SignedPermutation::cyclic_shift(s.n())};
  return ContractionOperator::convex_combination(s, w, g);
}

}  // namespace

TEST(Contraction, Certification) {
  const Space s = Space::uniform(3, 1.0);
  EXPECT_EQ(ContractionOperator::certify(s, Matrix::Identity(3, 3)).certification(), Certification::exact);
  EXPECT_THROW(ContractionOperator::certify(s, 2.0 * Matrix::Identity(3, 3)), NotContractionError);
  EXPECT_EQ(half_shift(s).certification(), Certification::by_construction);
  const Space s3 = Space::uniform(3, 3.0);
  EXPECT_EQ(ContractionOperator::certify(s3, 0.5 * Matrix::Identity(3, 3)).certification(), Certification::sampled);
  const auto bad = ContractionOperator::uncertified(s3, Matrix::Identity(3, 3));
  EXPECT_THROW(cesaro_projection(bad), NotContractionError);
  const double w[] = {0.6, 0.6};
  const SignedPermutation g[] = {SignedPermutation::identity(3), SignedPermutation::negation(3)};
  EXPECT_THROW(ContractionOperator::convex_combination(s3, w, g), DomainError);
}

TEST(Cesaro, Identity) {
  const Space s = Space::uniform(3, 3.0);
  const auto r = cesaro_projection(ContractionOperator::certify(s, Matrix::Identity(3, 3)));
  EXPECT_TRUE(r.projection.isApprox(Matrix::Identity(3, 3)));
  EXPECT_EQ(r.iterations, 1);
}

TEST(Cesaro, HalfShiftIsGlobalMean) {
  const Space s = Space::uniform(3, 3.0);
  ErgodicOptions opt;
  opt.method = ErgodicMethod::cesaro;
  opt.tol = 1e-10;
  const auto r = cesaro_projection(half_shift(s), opt);
  EXPECT_LE((r.projection - Matrix::Constant(3, 3, 1.0 / 3.0)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_EQ(r.fixed_space.dim(), 1);
  EXPECT_LE(r.oracle_discrepancy, 1e-9);
}

TEST(Cesaro, MinusIdentity) {
  const Space s = Space::uniform(3, 3.0);
  const auto t = ContractionOperator::certify(s, -Matrix::Identity(3, 3));
  EXPECT_TRUE(cesaro_projection(t).projection.isZero(1e-12));
  ErgodicOptions opt;
  opt.method = ErgodicMethod::cesaro;
  EXPECT_LE(cesaro_projection(t, opt).projection.cwiseAbs().maxCoeff(), 1e-6);
}

TEST(Cesaro, ConvergenceErrorCarriesPartialReport) {
  const Space s = Space::uniform(4, 3.0);
  const double w[] = {0.999, 0.001};
  const SignedPermutation g[] = {SignedPermutation::identity(4), SignedPermutation::cyclic_shift(4)};
  ErgodicOptions opt;
  opt.method = ErgodicMethod::cesaro;
  opt.tol = 1e-12;
  opt.max_iter = 8;
  try {
    cesaro_projection(ContractionOperator::convex_combination(s, w, g), opt);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.partial().iterations, 0);
    EXPECT_EQ(e.partial().projection.rows(), 4);
  }
}

TEST(Cesaro, AgreesWithEigenOracleAndNaiveSum) {
  Rng rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 4;
    const Space s = Space::uniform(n, 3.0);
    std::vector<SignedPermutation> g;
    for (int k = 0; k < 3; ++k) g.push_back(random_signed_permutation(rng, s));
    const auto w = random_convex_weights(rng, 3);
    const auto t = ContractionOperator::convex_combination(s, w, g);
    ErgodicOptions opt;
    opt.method = ErgodicMethod::cesaro;
    opt.tol = 1e-9;
    opt.max_iter = 1LL << 40;
    const auto r = cesaro_projection(t, opt);
    const Matrix eig = oracle::spectral_projection(t.entries());
    EXPECT_LE((r.projection - eig).cwiseAbs().maxCoeff(), 1e-6) << "trial " << trial;
  }
  // Direct summation converges like 1/N, so compare loosely on one instance.
  const Space s = Space::uniform(3, 3.0);
  const Matrix naive = oracle::naive_cesaro(half_shift(s).entries(), 20000);
  EXPECT_LE((naive - Matrix::Constant(3, 3, 1.0 / 3.0)).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Spectral, SemisimpleOracle) {
  const Space s(vec({1, 2, 2}), 3.0);
  const Matrix t = SignedPermutation({0, 2, 1}, {1, 1, 1}).matrix();
  const Matrix p = spectral_projection(s, t);
  EXPECT_TRUE(p.isApprox(oracle::spectral_projection(t), 1e-12));
  EXPECT_TRUE((p * p).isApprox(p, 1e-12));
}

TEST(Intersection, ConditionalExpectations) {
  const Space s = Space::uniform(3, 3.0);
  const ContractionOperator ops[] = {
      ContractionOperator::conditional_expectation(s, Partition({{0, 1}, {2}})),
      ContractionOperator::conditional_expectation(s, Partition({{0}, {1, 2}}))};
  const auto r = intersection_projection(ops);
  EXPECT_TRUE(r.range_matches_intersection);
  EXPECT_LE((r.ergodic.projection - Matrix::Constant(3, 3, 1.0 / 3.0)).cwiseAbs().maxCoeff(), 1e-6);

  const ContractionOperator ids[] = {ContractionOperator::certify(s, Matrix::Identity(3, 3)),
                                     ContractionOperator::certify(s, Matrix::Identity(3, 3))};
  EXPECT_TRUE(intersection_projection(ids).ergodic.projection.isApprox(Matrix::Identity(3, 3)));

  const ContractionOperator notproj[] = {half_shift(s)};
  EXPECT_THROW(intersection_projection(notproj), NotProjectionError);
}

TEST(Intersection, RandomJoinsExact) {
  Rng rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial % 5;
    const Space s(random_weights(rng, n), 3.0);
    const Partition p = random_partition(rng, n, n);
    const Partition q = random_partition(rng, n, n);
    const ContractionOperator ops[] = {ContractionOperator::conditional_expectation(s, p),
                                       ContractionOperator::conditional_expectation(s, q)};
    ErgodicOptions opt;
    opt.tol = 1e-9;
    opt.max_iter = 1LL << 30;
    const auto r = intersection_projection(ops, opt);
    EXPECT_TRUE(r.range_matches_intersection);
    EXPECT_TRUE(r.ergodic.projection.isApprox(conditional_expectation(s, join(p, q)), 1e-6))
        << "trial " << trial;
  }
}

TEST(MeanErgodic, Examples) {
  const Space s = Space::uniform(3, 3.0);
  const SignedPermutation shift[] = {SignedPermutation::cyclic_shift(3)};
  const double one[] = {1.0};
  const auto t = ContractionOperator::convex_combination(s, one, shift);
  const auto v = mean_ergodic_value(t, Vector::Unit(3, 0));
  EXPECT_TRUE(v.value.isApprox(Vector::Constant(3, 1.0 / 3.0), 1e-9));
  EXPECT_TRUE(v.verified);

  const auto id = ContractionOperator::certify(s, Matrix::Identity(3, 3));
  const Vector x = vec({0.3, -1, 2});
  EXPECT_TRUE(mean_ergodic_value(id, x).value.isApprox(x));

  const double w[] = {0.5, 0.5};
  const SignedPermutation g[] = {SignedPermutation::identity(3), SignedPermutation::transposition(3, 0, 1)};
  const auto half_swap = ContractionOperator::convex_combination(s, w, g);
  const auto r = mean_ergodic_value(half_swap, vec({1, 0, 5}));
  EXPECT_TRUE(r.value.isApprox(vec({0.5, 0.5, 5}), 1e-9));
  EXPECT_LE(r.hull_distance, 1e-6);
}

TEST(Jdlg, Examples) {
  const Space s = Space::uniform(3, 3.0);
  const SignedPermutation shift[] = {SignedPermutation::cyclic_shift(3)};
  const auto r = jdlg_check(s, shift);
  EXPECT_EQ(r.group_order, 3u);
  EXPECT_TRUE(equal(r.fixed, Subspace::from_vectors(s, {Vector::Ones(3)})));
  EXPECT_TRUE(equal(r.kernel, orthogonal_complement(r.fixed)));
  EXPECT_TRUE(r.ok(1e-8));

  const SignedPermutation neg[] = {SignedPermutation::negation(3)};
  const auto rn = jdlg_check(s, neg);
  EXPECT_TRUE(rn.fixed.is_zero());
  EXPECT_TRUE(rn.kernel.is_whole());
  EXPECT_TRUE(rn.ok(1e-8));

  const auto st = stabilizer(Subspace::from_vectors(s, {Vector::Ones(3), vec({1, 1, 2})}));
  const auto rs = jdlg_check(s, st);
  EXPECT_TRUE(equal(rs.fixed, fixed_space(s, Partition({{0, 1}, {2}}))));
  EXPECT_TRUE(rs.kernel_is_j_annihilator);
  EXPECT_TRUE(rs.invariant);
  EXPECT_TRUE(rs.ok(1e-8));

  EXPECT_THROW(jdlg_check(Space::uniform(3, 1.0), shift), NotStrictlyConvexError);
  const SignedPermutation big[] = {SignedPermutation::cyclic_shift(6), SignedPermutation::transposition(6, 0, 1)};
  EXPECT_THROW(jdlg_check(Space::uniform(6, 3.0), big, 100), TooLargeError);
}
