#include "envlab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

#include "envlab/complement.hpp"
#include "envlab/ergodic.hpp"
#include "envlab/random.hpp"

namespace envlab {

namespace {

constexpr double kEqualTol = 1e-7;

template <class T>
T pick(Rng& rng, std::initializer_list<T> options) {
  std::uniform_int_distribution<std::size_t> d(0, options.size() - 1);
  return *(options.begin() + static_cast<std::ptrdiff_t>(d(rng)));
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Vector gaussian(Rng& rng, int n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

struct Check {
  TrialOutcome out;
  void require(bool cond, const std::string& what) {
    if (!cond && out.passed) {
      out.passed = false;
      out.detail = what;
    }
  }
  void residual(double r) { out.residual = std::max(out.residual, r); }
};

// Random spanning set of y: y's basis mixed by an invertible integer matrix.
Subspace respan(Rng& rng, const Subspace& y) {
  const int d = y.dim();
  Matrix mix = Matrix::Identity(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i < j) mix(i, j) = uniform_int(rng, -2, 2);
    }
  }
  Matrix gens(y.n(), d + 1);
  gens.leftCols(d) = y.basis() * mix;
  gens.col(d) = y.basis() * Vector::Constant(d, 1.0);
  return Subspace::span(y.ambient(), gens);
}

TrialOutcome axioms_trial(std::uint64_t seed, int) {
  Rng rng(seed);
  const int n = uniform_int(rng, 3, 6);
  const double p = pick(rng, {1.0, 1.5, 3.0});
  Vector w(n);
  for (int i = 0; i < n; ++i) w[i] = uniform_int(rng, 1, 2);
  const Space space(w, p);
  const int range = pick(rng, {1, 2});
  const Subspace y = random_subspace(rng, space, uniform_int(rng, 1, n - 2), range);
  Matrix g(n, y.dim() + 1);
  g.leftCols(y.dim()) = y.basis();
  for (int i = 0; i < n; ++i) g(i, y.dim()) = uniform_int(rng, -range, range);
  const Subspace z = Subspace::span(space, g);
  const Subspace y_alt = respan(rng, y);

  using Envelope = std::function<Subspace(const Subspace&)>;
  const std::vector<std::pair<std::string, Envelope>> kinds = {
      {"conditional", [](const Subspace& s) { return conditional_envelope(s); }},
      {"algebraic", [](const Subspace& s) { return algebraic_envelope(s); }},
      {"isometric", [](const Subspace& s) { return isometric_envelope(s); }},
      {"lattice", [](const Subspace& s) { return lattice_closure(s); }},
  };
  Check c;
  for (const auto& [name, env] : kinds) {
    const Subspace ey = env(y);
    c.require(includes(ey, y, kEqualTol), name + ": Y not contained in env(Y)");
    c.require(includes(env(z), ey, kEqualTol), name + ": not monotone");
    c.require(equal(env(y_alt), ey, kEqualTol), name + ": depends on the spanning set");
    c.require(equal(env(ey), ey, kEqualTol), name + ": not idempotent");
  }
  return c.out;
}

TrialOutcome theorem62_trial(std::uint64_t seed, int) {
  Rng rng(seed);
  const int n = uniform_int(rng, 3, 6);
  const double p = pick(rng, {1.0, 1.5, 3.0, 5.0});
  const Space space = Space::uniform(n, p);
  const Subspace y = random_unital_subspace(rng, space, uniform_int(rng, 1, 2), pick(rng, {1, 2, 3}));
  const Subspace iso = isometric_envelope(y);
  const Subspace alg = algebraic_envelope(y);
  const Subspace cond = conditional_envelope(y);
  const Subspace lat = lattice_closure(y);
  Check c;
  c.require(equal(iso, alg, kEqualTol), "isometric != algebraic");
  c.require(equal(iso, cond, kEqualTol), "isometric != conditional");
  c.require(equal(iso, lat, kEqualTol), "isometric != lattice");
  if (p > 1.0 && !cond.is_whole()) {
    const auto res = min_projection_norm(space, cond, p);
    c.residual(res.upper_bound - 1.0);
    c.require(res.upper_bound <= 1.0 + 1e-6, "conditional envelope projection norm " + fmt(res.upper_bound));
    const Matrix e = conditional_expectation(space, generated_partition(y));
    const double ne = op_norm(space, e, p).value;
    c.residual(ne - 1.0);
    c.require(ne <= 1.0 + 1e-6, "conditional expectation norm " + fmt(ne));
  }
  return c.out;
}

TrialOutcome intersection_trial(std::uint64_t seed, int) {
  Rng rng(seed);
  const int n = uniform_int(rng, 3, 6);
  const double p = pick(rng, {1.0, 1.5, 3.0});
  const Space space(random_weights(rng, n), p);
  const Partition a = random_partition(rng, n, 3);
  const Partition b = random_partition(rng, n, 3);
  const std::vector<ContractionOperator> ops = {ContractionOperator::conditional_expectation(space, a),
                                                ContractionOperator::conditional_expectation(space, b)};
  ErgodicOptions opt;
  opt.tol = 1e-9;
  opt.max_iter = 1LL << 30;
  const auto rep = intersection_projection(ops, opt);
  Check c;
  c.residual(rep.ergodic.residual);
  c.require(rep.ergodic.residual <= 1e-6, "residual " + fmt(rep.ergodic.residual));
  const Subspace expected = fixed_space(space, join(a, b));
  c.require(rep.ergodic.fixed_space.dim() == expected.dim() && equal(rep.ergodic.fixed_space, expected, 1e-9),
            "range differs from the join's fixed space");
  c.require(rep.range_matches_intersection, "range differs from the intersection of ranges");
  for (int k = 0; k < 100; ++k) {
    const Vector x = gaussian(rng, n);
    const double ratio = norm(space, rep.ergodic.projection * x) / norm(space, x);
    c.residual(ratio - 1.0);
    c.require(ratio <= 1.0 + 1e-6, "not contractive: ratio " + fmt(ratio));
  }
  return c.out;
}

TrialOutcome cesaro_trial(std::uint64_t seed, int) {
  Rng rng(seed);
  const int n = uniform_int(rng, 2, 6);
  Vector w(n);
  for (int i = 0; i < n; ++i) w[i] = uniform_int(rng, 1, 2);
  const Space space(w, pick(rng, {1.0, 1.5, 3.0}));
  const int k = uniform_int(rng, 1, 4);
  std::vector<SignedPermutation> elems;
  for (int i = 0; i < k; ++i) elems.push_back(random_signed_permutation(rng, space));
  const auto weights = random_convex_weights(rng, k);
  const auto t = ContractionOperator::convex_combination(space, weights, elems);
  ErgodicOptions opt;
  opt.method = ErgodicMethod::cesaro;
  opt.tol = 1e-9;
  opt.max_iter = 1LL << 40;
  const auto rep = cesaro_projection(t, opt);
  const double diff = reference_matrix_norm(space, rep.projection - spectral_projection(space, t.entries()));
  Check c;
  c.residual(diff);
  c.require(diff <= 1e-6, "Cesaro and spectral projections differ by " + fmt(diff));
  return c.out;
}

TrialOutcome jdlg_trial(std::uint64_t seed, int) {
  Rng rng(seed);
  const int n = uniform_int(rng, 2, 6);
  Vector w(n);
  for (int i = 0; i < n; ++i) w[i] = uniform_int(rng, 1, 2);
  const Space space(w, pick(rng, {1.5, 3.0}));
  std::vector<SignedPermutation> gens;
  const int k = uniform_int(rng, 1, 3);
  for (int i = 0; i < k; ++i) gens.push_back(random_signed_permutation(rng, space));
  // Drop generators until the group fits the cap.
  while (true) {
    try {
      const auto rep = jdlg_check(space, gens, 10'000, seed);
      Check c;
      c.residual(rep.duality_residual);
      c.require(rep.range_is_fixed, "range of the average differs from Fix(S)");
      c.require(rep.direct_sum, "Fix(S) and ker P do not form a direct sum");
      c.require(rep.kernel_is_annihilator, "ker P differs from the annihilator of Fix(S*)");
      c.require(rep.kernel_is_j_annihilator, "ker P differs from the annihilator of J(Fix(S))");
      c.require(rep.j_image_spans, "J(Fix(S)) does not span Fix(S*)");
      c.require(rep.duality_residual <= 1e-8, "J residual " + fmt(rep.duality_residual));
      c.require(rep.invariant, "summands not invariant");
      return c.out;
    } catch (const TooLargeError&) {
      gens.pop_back();
      if (gens.empty()) gens.push_back(SignedPermutation::negation(n));
    }
  }
}

TrialOutcome union_trial(std::uint64_t seed, int) {
  Rng rng(seed);
  const int n = uniform_int(rng, 5, 6);
  const Space space = Space::uniform(n, 3.0);
  std::vector<Subspace> chain;
  Matrix gens(n, 0);
  while (static_cast<int>(chain.size()) < 5) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform_int(rng, 0, 2);
    Matrix next(n, gens.cols() + 1);
    next << gens, v;
    const Subspace s = Subspace::span(space, next);
    if (s.dim() == static_cast<int>(chain.size()) + 1) {
      gens = next;
      chain.push_back(s);
    }
  }
  Check c;
  for (int kind = 0; kind < 2; ++kind) {
    auto env = [kind](const Subspace& s) { return kind == 0 ? conditional_envelope(s) : isometric_envelope(s); };
    Subspace total = Subspace::zero(space);
    Subspace prev = total;
    for (const auto& s : chain) {
      const Subspace e = env(s);
      c.require(includes(e, prev, 1e-9), "stage envelopes not nested");
      total = sum(total, e);
      prev = e;
    }
    c.require(equal(env(chain.back()), total, 1e-9),
              std::string(kind == 0 ? "conditional" : "isometric") + " envelope of the union differs");
  }
  return c.out;
}

TrialOutcome sublattice_trial(std::uint64_t seed, int) {
  Rng rng(seed);
  const int n = uniform_int(rng, 2, 7);
  const Space space(random_weights(rng, n), pick(rng, {1.0, 1.5, 3.0}));
  const Partition part = random_partition(rng, n, uniform_int(rng, 1, n));
  const Subspace f = fixed_space(space, part);
  Check c;
  c.require(is_unital(f), "block constants not unital");
  c.require(is_sublattice(f), "block constants not a sublattice");
  c.require(generated_partition(f) == part, "generated partition differs");
  // A random unital subspace generates a unital sublattice of block constants.
  const Subspace y = random_unital_subspace(rng, space, uniform_int(rng, 1, 2), 2);
  const Subspace lat = lattice_closure(y);
  c.require(is_unital(lat) && is_sublattice(lat), "lattice closure not a unital sublattice");
  c.require(equal(lat, fixed_space(space, generated_partition(y)), kEqualTol), "lattice closure not block constants");
  return c.out;
}

TrialOutcome chain_trial(std::uint64_t seed, int) {
  Rng rng(seed);
  const int n = uniform_int(rng, 3, 6);
  const Space space(random_weights(rng, n), pick(rng, {1.0, 1.5, 3.0}));
  const Subspace y = random_unital_subspace(rng, space, uniform_int(rng, 1, 2), 2);
  const Subspace minimal = conditional_envelope(y);
  const Subspace iso = isometric_envelope(y);
  const Subspace alg = algebraic_envelope(y);
  Check c;
  c.require(includes(minimal, y, kEqualTol), "Y not inside the minimal envelope");
  c.require(includes(iso, minimal, kEqualTol), "minimal envelope not inside the isometric envelope");
  c.require(includes(alg, iso, kEqualTol), "isometric envelope not inside the algebraic envelope");
  return c.out;
}

TrialOutcome mazur_trial(std::uint64_t seed, int) {
  Rng rng(seed);
  const int n = uniform_int(rng, 2, 8);
  const double p = pick(rng, {1.0, 1.5, 3.0});
  const double q = pick(rng, {1.0, 1.5, 3.0});
  Vector w(n);
  for (int i = 0; i < n; ++i) w[i] = uniform_int(rng, 1, 3);
  const Space sp(w, p);
  const Space sq = sp.with_exponent(q);
  const SignedPermutation t = random_signed_permutation(rng, sp);
  Check c;
  for (int k = 0; k < 5; ++k) {
    const Vector x = gaussian(rng, n);
    const Vector conj = mazur_map(sp, q, t.apply(mazur_map(sq, p, x)));
    const Vector direct = t.apply(x);
    const double err = (conj - direct).cwiseAbs().maxCoeff() / std::max(1.0, x.cwiseAbs().maxCoeff());
    c.residual(err);
    c.require(err <= 1e-12, "conjugate differs from T by " + fmt(err));
    const double sphere = std::abs(norm(sq, mazur_map(sp, q, x)) - norm(sp, x)) / norm(sp, x);
    c.residual(sphere);
    c.require(sphere <= 1e-10, "not sphere to sphere: " + fmt(sphere));
  }
  return c.out;
}

TrialOutcome hilbert_trial(std::uint64_t seed, int) {
  Rng rng(seed);
  const int n = uniform_int(rng, 2, 8);
  const Space space(random_weights(rng, n, false), 2.0);
  const Subspace y = random_subspace(rng, space, uniform_int(rng, 1, n - 1));
  Check c;
  const Subspace env = isometric_envelope(y);
  c.require(env.dim() == y.dim() && equal(env, y, 1e-12), "envelope differs from Y");
  const auto res = min_projection_norm(space, y, 2.0);
  c.residual(std::abs(res.upper_bound - 1.0));
  c.require(std::abs(res.upper_bound - 1.0) <= 1e-9, "projection norm " + fmt(res.upper_bound));
  return c.out;
}

TrialOutcome c2_trial(std::uint64_t, int) {
  Check c;
  c.require(std::abs(c2_formula(2.0) - 1.0) <= 1e-12, "c2(2) != 1");
  for (int k = 0; k < 50; ++k) {
    const double p = 1.05 + 0.19 * k;
    const double diff = std::abs(c2_formula(p) - c2_formula(p / (p - 1.0)));
    c.residual(diff);
    c.require(diff <= 1e-10, "duality symmetry fails at p=" + fmt(p));
  }
  std::vector<double> below, above;
  for (int k = 0; k <= 200; ++k) below.push_back(1.001 + (2.0 - 1.001) * k / 200.0);
  for (int k = 0; k <= 200; ++k) above.push_back(2.0 + 48.0 * k / 200.0);
  const C2Table lo = scan_c2(below);
  const C2Table hi = scan_c2(above);
  c.require(lo.decreasing_below_2, "not strictly decreasing on [1.001, 2]");
  c.require(hi.increasing_above_2, "not strictly increasing on [2, 50]");
  c.require(std::isinf(c2_formula(1.0)) && std::isinf(c2_formula(kInfinity)), "endpoints not infinite");
  return c.out;
}

TrialOutcome c2n_trial(std::uint64_t, int) {
  Check c;
  c.require(std::abs(c2n_l1(1) - 1.0) <= 1e-12, "c2n_l1(1) != 1");
  c.require(std::abs(c2n_l1(2) - 4.0 / std::numbers::pi) <= 1e-12, "c2n_l1(2) != 4/pi");
  for (int n = 2; n <= 64; ++n) c.require(c2n_l1(n) >= c2n_l1(n - 1), "c2n_l1 decreases at n=" + std::to_string(n));
  return c.out;
}

TrialOutcome pushout_trial(std::uint64_t seed, int) {
  const ScreeningReport screen = screen_pushout_base(1.01, seed);
  const Space space = Space::uniform(screen.n, 1.0);
  const PushoutReport rep = pushout(space, screen.y, seed);
  Check c;
  c.require(screen.lambda_x >= 1.01, "screened lambda " + fmt(screen.lambda_x));
  c.require(rep.first_copy_projection_norm <= 1.0 + 1e-6, "first copy projection norm " + fmt(rep.first_copy_projection_norm));
  c.require(rep.second_copy_projection_norm <= 1.0 + 1e-6, "second copy projection norm " + fmt(rep.second_copy_projection_norm));
  c.require(rep.embedding_defect <= 1e-9, "embedding defect " + fmt(rep.embedding_defect));
  c.require(rep.kernel_norm <= 1e-9, "kernel norm " + fmt(rep.kernel_norm));
  c.require(rep.lambda_w && *rep.lambda_w >= 1.005, "lambda in W " + fmt(rep.lambda_w.value_or(0.0)));
  c.residual(std::max(rep.embedding_defect, rep.kernel_norm));
  return c.out;
}

std::vector<Suite> make_suites() {
  return {
      {"axioms", "envelope axioms for the conditional, algebraic, isometric and lattice envelopes", 200,
       {{"subspace_equality", kEqualTol}}, axioms_trial},
      {"intersection", "averaged conditional expectations converge onto the join's fixed space", 50,
       {{"residual", 1e-6}, {"cesaro_tol", 1e-9}, {"contraction_slack", 1e-6}}, intersection_trial},
      {"cesaro", "Cesaro averages of convex combinations of signed permutations match the spectral projection", 100,
       {{"oracle_agreement", 1e-6}, {"cesaro_tol", 1e-9}}, cesaro_trial},
      {"jdlg", "X = Fix(S) + J(Fix(S))^perp = Fix(S) + Fix(S*)^perp for finite groups", 50,
       {{"duality_residual", 1e-8}, {"subspace_equality", 1e-8}}, jdlg_trial},
      {"union", "envelopes of the top of a nested chain equal the sum of the stage envelopes", 50,
       {{"subspace_equality", 1e-9}}, union_trial},
      {"sublattice", "finite dimensional unital sublattices are block constants", 100,
       {{"subspace_equality", kEqualTol}}, sublattice_trial},
      {"theorem62", "isometric = algebraic = conditional = lattice envelopes for unital subspaces", 100,
       {{"subspace_equality", kEqualTol}, {"projection_norm_slack", 1e-6}}, theorem62_trial},
      {"chain", "minimal envelope inside isometric inside algebraic", 100,
       {{"subspace_equality", kEqualTol}}, chain_trial},
      {"mazur", "Mazur maps conjugate signed permutations to themselves", 200,
       {{"coordinate", 1e-12}, {"sphere", 1e-10}}, mazur_trial},
      {"hilbert", "p = 2: every subspace is its own envelope and 1-complemented", 100,
       {{"projection_norm", 1e-9}}, hilbert_trial},
      {"c2", "c_2(L_p): value at 2, duality symmetry, monotonicity", 1,
       {{"value_at_2", 1e-12}, {"symmetry", 1e-10}}, c2_trial},
      {"c2n", "c_2^n lower bound for l_1: small values and monotonicity", 1, {{"value", 1e-12}}, c2n_trial},
      {"pushout", "gluing two copies of l_1^3 along a badly complemented plane", 1,
       {{"screen_threshold", 1.01}, {"copy_projection_slack", 1e-6}, {"lambda_w_threshold", 1.005}},
       pushout_trial},
  };
}

}  // namespace

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = make_suites();
  return all;
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& s : suites()) names.push_back(s.name);
  return names;
}

const Suite& find_suite(const std::string& name) {
  for (const auto& s : suites()) {
    if (s.name == name) return s;
  }
  std::string known;
  for (const auto& s : suites()) known += (known.empty() ? "" : ", ") + s.name;
  throw UsageError("unknown suite '" + name + "'; known suites: " + known);
}

SuiteResult run_suite(const Suite& suite, const SuiteOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int trials = std::max(0, options.trials);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < trials; i = next++) {
      try {
        outcomes[static_cast<std::size_t>(i)] = suite.trial(options.seed + static_cast<std::uint64_t>(i), i);
      } catch (const std::exception& e) {
        outcomes[static_cast<std::size_t>(i)] = TrialOutcome{false, 0.0, std::string("exception: ") + e.what()};
      }
    }
  };
  int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(1, trials));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  SuiteResult result;
  result.suite = suite.name;
  result.trials = trials;
  result.tolerances = suite.tolerances;
  for (int i = 0; i < trials; ++i) {
    const auto& o = outcomes[static_cast<std::size_t>(i)];
    if (o.passed) ++result.passed;
    result.worst_residual = std::max(result.worst_residual, o.residual);
    if (!o.passed && result.failures.size() < 10) {
      result.failures.push_back("trial " + std::to_string(i) + " (seed " +
                                std::to_string(options.seed + static_cast<std::uint64_t>(i)) + "): " + o.detail);
    }
  }
  result.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  return run_suite(find_suite(name), options);
}

nlohmann::json to_json(const SuiteResult& result) {
  nlohmann::json tol = nlohmann::json::object();
  for (const auto& [k, v] : result.tolerances) tol[k] = v;
  return {{"suite", result.suite},       {"trials", result.trials},
          {"passed", result.passed},     {"failed", result.failed()},
          {"worst_residual", result.worst_residual}, {"failures", result.failures},
          {"tolerances", tol},           {"wall_time_ms", result.wall_time_ms}};
}

}  // namespace envlab
