#pragma once

// Mean ergodic projections of contractions and of finite families of
// contractive projections.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "envlab/isometry.hpp"
#include "envlab/operator_norm.hpp"
#include "envlab/partition.hpp"

namespace envlab {

enum class Certification {
  none,
  exact,            // operator norm evaluated exactly (p in {1, 2, inf})
  by_construction,  // convex combination of contractions
  sampled,          // sampled lower bound only; flagged
};

std::string to_string(Certification c);

/// A linear operator on l_p^n(mu) with a record of how its contractivity
/// was established.
class ContractionOperator {
 public:
  /// Checks ||A||_p <= 1 + 1e-9: exactly for p in {1, 2, inf}, by sampling
  /// otherwise. Throws NotContractionError on failure.
  static ContractionOperator certify(const Space& space, Matrix entries, const NormSearchOptions& options = {});
  /// sum_k w_k g_k with w on the simplex; contractive in every p.
  static ContractionOperator convex_combination(const Space& space, std::span<const double> weights,
                                                std::span<const SignedPermutation> elements);
  /// Average of contractions that are already certified.
  static ContractionOperator average(std::span<const ContractionOperator> ops);
  static ContractionOperator conditional_expectation(const Space& space, const Partition& partition);
  static ContractionOperator uncertified(const Space& space, Matrix entries);

  const Space& ambient() const { return space_; }
  const Matrix& entries() const { return entries_; }
  std::optional<double> certified_norm_bound() const { return bound_; }
  Certification certification() const { return certification_; }
  bool certified() const { return certification_ != Certification::none; }

 private:
  ContractionOperator(Space space, Matrix entries, std::optional<double> bound, Certification c)
      : space_(std::move(space)), entries_(std::move(entries)), bound_(bound), certification_(c) {}

  Space space_;
  Matrix entries_;
  std::optional<double> bound_;
  Certification certification_;
};

enum class ErgodicMethod {
  automatic,  // spectral when T has unimodular eigenvalues other than 1
  cesaro,
  spectral,
};

struct ErgodicOptions {
  double tol = 1e-6;
  /// Upper bound on the number N of averaged powers.
  long long max_iter = 100'000;
  ErgodicMethod method = ErgodicMethod::automatic;
};

struct ErgodicReport {
  Matrix projection;
  long long iterations = 0;
  double residual = 0.0;
  Subspace fixed_space;
  /// "cesaro" or "spectral": which path produced projection.
  std::string oracle_used;
  /// Reference-norm distance to the spectral projection.
  double oracle_discrepancy = 0.0;
  /// True when the tail average met the tolerance before the plain average did.
  bool accelerated = false;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, ErgodicReport partial)
      : Error(what), partial_(std::move(partial)) {}
  const ErgodicReport& partial() const { return partial_; }

 private:
  ErgodicReport partial_;
};

/// Projection onto ker(I - T) along range(I - T), from null spaces.
Matrix spectral_projection(const Space& space, const Matrix& t, double tol = 1e-9);

/// Range of an approximate projection (singular values above 1/2).
Subspace projection_range(const Space& space, const Matrix& projection);

/// Cesaro averages A_N = (1/N) sum_{k<N} T^k for N = lcm(1, ..., j), j = 1, 2, ...
/// Stops once ||A_{2N} - A_N|| <= tol in the reference norm (returning A_N),
/// or once two consecutive tail averages (1/N) sum_{N <= k < 2N} T^k agree
/// within tol (returning the later one).
ErgodicReport cesaro_projection(const ContractionOperator& t, const ErgodicOptions& options = {});

struct IntersectionReport {
  ErgodicReport ergodic;
  /// Intersection of the input ranges, computed by linear algebra.
  Subspace intersection;
  bool range_matches_intersection = false;
};

/// Mean ergodic projection of the average of contractive projections; its
/// range is the intersection of their ranges.
IntersectionReport intersection_projection(std::span<const ContractionOperator> projections,
                                           const ErgodicOptions& options = {});

struct MeanErgodicValue {
  Vector value;
  ErgodicReport report;
  double fixed_residual = 0.0;  // ||T v - v||
  double hull_distance = 0.0;   // distance to conv of the computed orbit segment
  int orbit_length = 0;
  bool verified = false;
};

MeanErgodicValue mean_ergodic_value(const ContractionOperator& t, const Vector& x,
                                    const ErgodicOptions& options = {});

struct JdlgReport {
  std::size_t group_order = 0;
  Matrix projection;
  Subspace fixed;          // Fix(S)
  Subspace kernel;         // ker of the group average
  Subspace dual_fixed;     // Fix(S*) for the mu-pairing
  Subspace annihilator;    // pre-annihilator of Fix(S*)
  Subspace j_annihilator;  // pre-annihilator of span J(Fix(S))
  bool range_is_fixed = false;
  bool direct_sum = false;
  bool kernel_is_annihilator = false;
  bool kernel_is_j_annihilator = false;
  double duality_residual = 0.0;  // worst relative distance of J(x) from Fix(S*)
  bool j_image_spans = false;     // span J(Fix(S)) == Fix(S*)
  bool invariant = false;         // both summands invariant under the generators
  int samples = 0;

  bool ok(double residual_tol) const {
    return range_is_fixed && direct_sum && kernel_is_annihilator && kernel_is_j_annihilator &&
           j_image_spans && invariant && duality_residual <= residual_tol;
  }
};

/// Checks X = Fix(S) + J(Fix(S))^perp = Fix(S) + Fix(S*)^perp for the group
/// generated by gens. Needs 1 < p < inf.
JdlgReport jdlg_check(const Space& space, std::span<const SignedPermutation> gens,
                      std::size_t max_order = 1'000'000, std::uint64_t seed = 42);

}  // namespace envlab
