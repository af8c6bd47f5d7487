#pragma once

// Minimal relative projection constants, 1-complementation tests, the
// pushout of two copies of a space glued along a subspace, and the constants
// c_2(L_p).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "envlab/operator_norm.hpp"
#include "envlab/subspace.hpp"

namespace envlab {

enum class SearchMethod { exact_polyhedral, subgradient, spectral };

std::string to_string(SearchMethod m);

struct ProjectionSearchConfig {
  std::uint64_t seed = 42;
  /// Random starting points in addition to the structural candidates.
  int restarts = 4;
  /// Initial number of sampled sphere directions.
  int samples = 48;
  /// Sample-refresh rounds per start.
  int rounds = 10;
  NormSearchOptions norm_options{};
};

struct ProjectionSearchResult {
  Matrix best_projection;
  double upper_bound = 0.0;
  double lower_bound = 1.0;
  SearchMethod method = SearchMethod::subgradient;
  int restarts = 0;
  std::uint64_t seed = 0;
  /// upper_bound is the exact norm of best_projection (p in {1, 2, inf}).
  bool exact = false;
};

/// Minimises ||P||_p over projections P = B C onto y with C B = I.
///
/// p in {1, inf}: a linear program, so both bounds equal the optimum.
/// p = 2: the reference-orthogonal projection, norm 1.
/// Otherwise: smoothed minimax over sampled sphere directions, refreshed by
/// the maximiser of the current candidate; lower_bound is 1.
/// Throws DegenerateRangeError when dim y is 0 or n.
ProjectionSearchResult min_projection_norm(const Space& space, const Subspace& y, double p,
                                           const ProjectionSearchConfig& config = {});

struct OneComplementedReport {
  ProjectionSearchResult minimax;
  bool minimax_verdict = false;
  /// Rank of span J(x) over sampled sphere points x of y; unset for p in {1, inf}.
  std::optional<bool> j_verdict;
  int j_rank = 0;
  int j_samples = 0;
  /// For unital y: y equals the range of its conditional expectation.
  std::optional<bool> douglas_ando_verdict;
  bool agree = false;
  bool verdict = false;
};

OneComplementedReport is_one_complemented(const Space& space, const Subspace& y, double p, double tol = 1e-6,
                                          const ProjectionSearchConfig& config = {});

/// W = (X (+)_1 X) / {(y, -y) : y in Y}. Vectors of the parent are
/// concatenations (x1, x2) of length 2n.
class QuotientSpace {
 public:
  QuotientSpace(const Space& base, const Subspace& y);

  const Space& base() const { return base_; }
  /// Atoms of both copies with their weights. Its own p-norm is not the
  /// parent norm; use parent_norm.
  const Space& parent() const { return parent_; }
  const Subspace& glued() const { return y_; }
  const Subspace& kernel() const { return kernel_; }
  const Subspace& representative_complement() const { return complement_; }
  int dim() const { return complement_.dim(); }

  double parent_norm(const Vector& v) const;
  /// inf over y in Y of ||x1 - y|| + ||x2 + y||.
  double norm(const Vector& v) const;
  /// Canonical representative in the reference complement of the kernel.
  Vector representative(const Vector& v) const;
  Vector embed_first(const Vector& x) const;
  Vector embed_second(const Vector& x) const;
  /// Q1[(x1, x2)] = [(x1 + x2, 0)] and Q2[(x1, x2)] = [(0, x1 + x2)].
  Vector project_first(const Vector& v) const;
  Vector project_second(const Vector& v) const;
  /// Parent vectors whose classes have convex hull equal to the unit ball of
  /// W (p in {1, inf}); empty otherwise.
  std::vector<Vector> ball_generators() const;

 private:
  Space base_;
  Space parent_;
  Subspace y_;
  Subspace kernel_;
  Subspace complement_;
};

struct PushoutReport {
  explicit PushoutReport(QuotientSpace space) : w(std::move(space)) {}

  QuotientSpace w;
  /// max |[(x,0)]_W - ||x|| | and the same for the second copy, over samples.
  double embedding_defect = 0.0;
  double kernel_norm = 0.0;
  double first_copy_projection_norm = 0.0;
  double second_copy_projection_norm = 0.0;
  /// True when the copy projection norms were evaluated on ball generators.
  bool exact = false;
  /// lambda(diagonal image of Y, W); computed for p in {1, inf}.
  std::optional<double> lambda_w;
  std::optional<double> lambda_x;
};

/// Builds W and checks the embeddings and copy projections on samples.
/// Throws DegenerateRangeError unless 1 <= dim y < n.
PushoutReport pushout(const Space& space, const Subspace& y, std::uint64_t seed = 42, int samples = 64);

/// Minimal norm of a projection of W onto [(Y, 0)], as one linear program
/// whose extra variables witness the quotient norms.
double pushout_projection_constant(const QuotientSpace& w);

struct ScreeningReport {
  Subspace y;
  double lambda_x = 0.0;
  int n = 0;
  bool escalated = false;
  int candidates = 0;
  std::uint64_t seed = 0;
};

/// Random 2-dimensional subspaces of l_1^3 (l_1^4 if none qualifies) until
/// lambda(Y, X) >= threshold. Throws DegenerateRangeError if none is found.
ScreeningReport screen_pushout_base(double threshold = 1.01, std::uint64_t seed = 42, int max_candidates = 400);

/// c_2(L_p) = (2/sqrt(pi)) Gamma((p+1)/2)^{1/p} Gamma((p'+1)/2)^{1/p'};
/// +inf at p in {1, inf}.
double c2_formula(double p);

/// n Gamma(n/2) / (sqrt(pi) Gamma((n+1)/2)).
double c2n_l1(int n);

struct C2Row {
  double p = 0.0;
  double c2 = 0.0;
  /// Step from the previous row moves in the expected direction
  /// (down below 2, up above 2).
  bool monotone = true;
};

struct C2Table {
  std::vector<C2Row> rows;
  bool decreasing_below_2 = true;
  bool increasing_above_2 = true;
};

C2Table scan_c2(std::span<const double> grid);

/// "a:b:step" (inclusive) or a comma separated list.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace envlab
