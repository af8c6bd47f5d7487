#include "envlab/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_set>

namespace envlab {
namespace {

bool same_weight(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }

void check_enumerable(const Space& space, int atom_cap) {
  if (space.is_hilbert())
    throw HilbertCaseError("the isometry group of l_2^n is the orthogonal group; not enumerable");
  if (!space.finite_p()) throw DomainError("isometries of l_inf^n are not modelled");
  if (space.n() > atom_cap)
    throw TooLargeError("group enumeration capped at " + std::to_string(atom_cap) + " atoms, got " +
                        std::to_string(space.n()));
}

// Enumerates (perm, signs) with signs_i * src.row(perm^{-1}(i)) == dst.row(i)
// up to tol in the sup norm, perms in lexicographic order.
class Matcher {
 public:
  Matcher(const Space& space, const Matrix& src, const Matrix& dst, double tol,
          const std::function<void(const SignedPermutation&)>& visit)
      : space_(space), src_(src), dst_(dst), tol_(tol), visit_(visit), n_(space.n()),
        perm_(static_cast<std::size_t>(n_)), used_(static_cast<std::size_t>(n_), false),
        options_(static_cast<std::size_t>(n_)), signs_(static_cast<std::size_t>(n_), 1) {}

  void run() { assign(0); }

 private:
  // Bit 0: + allowed, bit 1: - allowed.
  int sign_options(int from, int to) const {
    if (src_.cols() == 0) return 3;
    const double plus = (src_.row(from) - dst_.row(to)).cwiseAbs().maxCoeff();
    const double minus = (src_.row(from) + dst_.row(to)).cwiseAbs().maxCoeff();
    return (plus <= tol_ ? 1 : 0) | (minus <= tol_ ? 2 : 0);
  }

  void assign(int j) {
    if (j == n_) {
      emit_signs(0);
      return;
    }
    for (int i = 0; i < n_; ++i) {
      if (used_[static_cast<std::size_t>(i)] || !same_weight(space_.weight(i), space_.weight(j))) continue;
      const int opts = sign_options(j, i);
      if (opts == 0) continue;
      used_[static_cast<std::size_t>(i)] = true;
      perm_[static_cast<std::size_t>(j)] = i;
      options_[static_cast<std::size_t>(i)] = opts;
      assign(j + 1);
      used_[static_cast<std::size_t>(i)] = false;
    }
  }

  void emit_signs(int i) {
    if (i == n_) {
      visit_(SignedPermutation(perm_, signs_));
      return;
    }
    const int opts = options_[static_cast<std::size_t>(i)];
    if (opts & 1) {
      signs_[static_cast<std::size_t>(i)] = 1;
      emit_signs(i + 1);
    }
    if (opts & 2) {
      signs_[static_cast<std::size_t>(i)] = -1;
      emit_signs(i + 1);
    }
  }

  const Space& space_;
  const Matrix& src_;
  const Matrix& dst_;
  double tol_;
  const std::function<void(const SignedPermutation&)>& visit_;
  int n_;
  std::vector<int> perm_;
  std::vector<bool> used_;
  std::vector<int> options_;
  std::vector<int> signs_;
};

// Union-find over constraints f_a = s * f_b. A component whose constraints
// force f_root = -f_root carries only the zero function.
class SignedUnionFind {
 public:
  explicit SignedUnionFind(int n)
      : parent_(static_cast<std::size_t>(n)), parity_(static_cast<std::size_t>(n), 1),
        zero_(static_cast<std::size_t>(n), false) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  // Returns (root, s) with f_x = s * f_root.
  std::pair<int, int> find(int x) {
    if (parent_[x] == x) return {x, 1};
    auto [root, s] = find(parent_[x]);
    parity_[x] *= s;
    parent_[x] = root;
    return {root, parity_[x]};
  }

  void link(int a, int b, int s) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    const int rel = pa * s * pb;  // f_ra = rel * f_rb
    if (ra == rb) {
      if (rel != 1) zero_[ra] = true;
      return;
    }
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;
    parity_[rb] = rel;
    zero_[ra] = zero_[ra] || zero_[rb];
  }

  Matrix generators() {
    const int n = static_cast<int>(parent_.size());
    std::vector<int> column(static_cast<std::size_t>(n), -1);
    int count = 0;
    for (int i = 0; i < n; ++i) {
      auto [r, s] = find(i);
      if (!zero_[r] && column[r] < 0) column[r] = count++;
    }
    Matrix g = Matrix::Zero(n, count);
    for (int i = 0; i < n; ++i) {
      auto [r, s] = find(i);
      if (!zero_[r]) g(i, column[r]) = s;
    }
    return g;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
  std::vector<bool> zero_;
};

void link_fixed_constraints(SignedUnionFind& uf, const SignedPermutation& g) {
  // (g f)_{perm(j)} = signs_{perm(j)} f_j must equal f_{perm(j)}.
  for (int j = 0; j < g.n(); ++j) {
    const int i = g.perm()[static_cast<std::size_t>(j)];
    uf.link(i, j, g.signs()[static_cast<std::size_t>(i)]);
  }
}

}  // namespace

SignedPermutation::SignedPermutation(std::vector<int> perm, std::vector<int> signs)
    : perm_(std::move(perm)), signs_(std::move(signs)) {
  if (perm_.size() != signs_.size()) throw DimensionError("perm and signs differ in length");
  std::vector<bool> seen(perm_.size(), false);
  for (int v : perm_) {
    if (v < 0 || v >= static_cast<int>(perm_.size()) || seen[static_cast<std::size_t>(v)])
      throw DomainError("not a permutation");
    seen[static_cast<std::size_t>(v)] = true;
  }
  for (int s : signs_)
    if (s != 1 && s != -1) throw DomainError("signs must be +1 or -1");
}

SignedPermutation SignedPermutation::identity(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return {std::move(p), std::vector<int>(static_cast<std::size_t>(n), 1)};
}

SignedPermutation SignedPermutation::negation(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return {std::move(p), std::vector<int>(static_cast<std::size_t>(n), -1)};
}

SignedPermutation SignedPermutation::transposition(int n, int i, int j) {
  auto g = identity(n);
  std::swap(g.perm_[static_cast<std::size_t>(i)], g.perm_[static_cast<std::size_t>(j)]);
  return g;
}

SignedPermutation SignedPermutation::sign_flip(int n, int i) {
  auto g = identity(n);
  g.signs_[static_cast<std::size_t>(i)] = -1;
  return g;
}

SignedPermutation SignedPermutation::cyclic_shift(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = (i + 1) % n;
  return {std::move(p), std::vector<int>(static_cast<std::size_t>(n), 1)};
}

Vector SignedPermutation::apply(const Vector& f) const {
  if (f.size() != n()) throw DimensionError("vector length does not match permutation degree");
  Vector out(n());
  for (int j = 0; j < n(); ++j) {
    const int i = perm_[static_cast<std::size_t>(j)];
    out[i] = signs_[static_cast<std::size_t>(i)] * f[j];
  }
  return out;
}

Matrix SignedPermutation::matrix() const {
  Matrix m = Matrix::Zero(n(), n());
  for (int j = 0; j < n(); ++j) {
    const int i = perm_[static_cast<std::size_t>(j)];
    m(i, j) = signs_[static_cast<std::size_t>(i)];
  }
  return m;
}

SignedPermutation SignedPermutation::compose(const SignedPermutation& rhs) const {
  if (rhs.n() != n()) throw DimensionError("composing permutations of different degree");
  std::vector<int> p(perm_.size());
  std::vector<int> s(perm_.size());
  for (int j = 0; j < n(); ++j) {
    const int mid = rhs.perm_[static_cast<std::size_t>(j)];
    const int i = perm_[static_cast<std::size_t>(mid)];
    p[static_cast<std::size_t>(j)] = i;
    s[static_cast<std::size_t>(i)] = signs_[static_cast<std::size_t>(i)] * rhs.signs_[static_cast<std::size_t>(mid)];
  }
  return {std::move(p), std::move(s)};
}

SignedPermutation SignedPermutation::inverse() const {
  std::vector<int> p(perm_.size());
  std::vector<int> s(perm_.size());
  for (int j = 0; j < n(); ++j) {
    const int i = perm_[static_cast<std::size_t>(j)];
    p[static_cast<std::size_t>(i)] = j;
    s[static_cast<std::size_t>(j)] = signs_[static_cast<std::size_t>(i)];
  }
  return {std::move(p), std::move(s)};
}

bool SignedPermutation::is_identity() const {
  for (int i = 0; i < n(); ++i)
    if (perm_[static_cast<std::size_t>(i)] != i || signs_[static_cast<std::size_t>(i)] != 1) return false;
  return true;
}

bool SignedPermutation::compatible_with(const Space& space) const {
  if (space.n() != n()) return false;
  for (int i = 0; i < n(); ++i)
    if (!same_weight(space.weight(perm_[static_cast<std::size_t>(i)]), space.weight(i))) return false;
  return true;
}

std::size_t SignedPermutation::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (int i = 0; i < n(); ++i) {
    const auto code = static_cast<std::size_t>(perm_[static_cast<std::size_t>(i)] * 2 +
                                               (signs_[static_cast<std::size_t>(i)] < 0 ? 1 : 0));
    h = (h ^ code) * 1099511628211ull;
  }
  return h;
}

Vector apply(const Space& space, const SignedPermutation& g, const Vector& f) {
  space.check(f);
  if (!g.compatible_with(space)) throw NotIsometryError("signed permutation does not preserve the weights");
  return g.apply(f);
}

void for_each_group_element(const Space& space,
                            const std::function<void(const SignedPermutation&)>& visit, int atom_cap) {
  check_enumerable(space, atom_cap);
  const Matrix none(space.n(), 0);
  Matcher(space, none, none, 0.0, visit).run();
}

std::vector<SignedPermutation> enumerate_group(const Space& space, int atom_cap) {
  std::vector<SignedPermutation> out;
  for_each_group_element(space, [&](const SignedPermutation& g) { out.push_back(g); }, atom_cap);
  return out;
}

double group_order(const Space& space) {
  std::vector<bool> done(static_cast<std::size_t>(space.n()), false);
  double order = std::pow(2.0, space.n());
  for (int i = 0; i < space.n(); ++i) {
    if (done[static_cast<std::size_t>(i)]) continue;
    int size = 0;
    for (int j = i; j < space.n(); ++j) {
      if (!done[static_cast<std::size_t>(j)] && same_weight(space.weight(i), space.weight(j))) {
        done[static_cast<std::size_t>(j)] = true;
        ++size;
      }
    }
    for (int k = 2; k <= size; ++k) order *= k;
  }
  return order;
}

std::vector<SignedPermutation> stabilizer(const Subspace& y, double tol, int atom_cap) {
  const Space& space = y.ambient();
  check_enumerable(space, atom_cap);
  std::vector<SignedPermutation> out;
  Matcher(space, y.basis(), y.basis(), tol, [&](const SignedPermutation& g) { out.push_back(g); }).run();
  return out;
}

Subspace fixed_space_of(const Space& space, std::span<const SignedPermutation> gens) {
  SignedUnionFind uf(space.n());
  for (const auto& g : gens) {
    if (g.n() != space.n()) throw DimensionError("generator degree does not match the space");
    link_fixed_constraints(uf, g);
  }
  return Subspace::span(space, uf.generators());
}

Subspace algebraic_envelope(const Subspace& y, double tol, int atom_cap) {
  return isometric_envelope_report(y, tol, atom_cap).envelope;
}

EnvelopeReport isometric_envelope_report(const Subspace& y, double tol, int atom_cap) {
  const Space& space = y.ambient();
  if (space.is_hilbert()) {
    EnvelopeReport r{y, true, true, 0, "p = 2: every subspace equals its envelope"};
    return r;
  }
  check_enumerable(space, atom_cap);
  SignedUnionFind uf(space.n());
  std::size_t order = 0;
  Matcher(space, y.basis(), y.basis(), tol, [&](const SignedPermutation& g) {
    link_fixed_constraints(uf, g);
    ++order;
  }).run();
  EnvelopeReport r{Subspace::span(space, uf.generators()), true, false, order,
                   "discrete model: the isometry group is the finite group of weight-preserving "
                   "signed permutations; with non-uniform weights it is smaller than the "
                   "continuum group and envelopes can be strictly larger"};
  return r;
}

Subspace isometric_envelope(const Subspace& y, double tol, int atom_cap) {
  return isometric_envelope_report(y, tol, atom_cap).envelope;
}

ExtensionResult extend_partial_isometry(const Space& space, const std::vector<Vector>& sources,
                                        const std::vector<Vector>& images, double tol, int atom_cap) {
  if (sources.size() != images.size() || sources.empty())
    throw DimensionError("need matching, nonempty source and image lists");
  check_enumerable(space, atom_cap);
  const auto k = static_cast<Eigen::Index>(sources.size());
  Matrix src(space.n(), k);
  Matrix dst(space.n(), k);
  for (Eigen::Index c = 0; c < k; ++c) {
    space.check(sources[static_cast<std::size_t>(c)]);
    space.check(images[static_cast<std::size_t>(c)]);
    src.col(c) = sources[static_cast<std::size_t>(c)];
    dst.col(c) = images[static_cast<std::size_t>(c)];
  }
  const double scale = std::max({1.0, src.cwiseAbs().maxCoeff(), dst.cwiseAbs().maxCoeff()});

  // Well defined: every linear relation among the sources holds for the images.
  Eigen::JacobiSVD<Matrix> svd(src, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  for (Eigen::Index c = 0; c < k; ++c) {
    const double sigma = c < sv.size() ? sv[c] : 0.0;
    if (sigma <= kDefaultTol * (sv.size() ? sv[0] : 1.0)) {
      if ((dst * svd.matrixV().col(c)).cwiseAbs().maxCoeff() > tol * scale * 10.0)
        throw NotIsometryError("prescribed map is not linear on the span of the sources");
    }
  }
  // Isometric on the generators and on a fixed sample of combinations.
  std::mt19937_64 rng(0x5eedULL);
  std::normal_distribution<double> gauss;
  for (Eigen::Index trial = 0; trial < k + 32; ++trial) {
    Vector c = Vector::Zero(k);
    if (trial < k) {
      c[trial] = 1.0;
    } else {
      for (Eigen::Index t = 0; t < k; ++t) c[t] = gauss(rng);
    }
    const double a = norm(space, src * c);
    const double b = norm(space, dst * c);
    if (std::abs(a - b) > tol * scale * std::max(1.0, a) * 10.0)
      throw NotIsometryError("prescribed map does not preserve the p-norm");
  }

  ExtensionResult result{algebraic_envelope(Subspace::span(space, src), kDefaultTol, atom_cap), {}, {}, 0};
  const Matrix& env = result.envelope.basis();
  Matcher(space, src, dst, tol * scale, [&](const SignedPermutation& g) {
    ++result.agreeing;
    Matrix restricted(env.rows(), env.cols());
    for (Eigen::Index c = 0; c < env.cols(); ++c) restricted.col(c) = g.apply(env.col(c));
    for (const auto& seen : result.restrictions)
      if ((seen - restricted).cwiseAbs().maxCoeff() <= 1e-9) return;
    result.restrictions.push_back(std::move(restricted));
    result.witnesses.push_back(g);
  }).run();
  if (result.agreeing == 0)
    throw NotExtendableError("no isometry of the whole space agrees with the prescribed map");
  return result;
}

std::vector<SignedPermutation> group_closure(std::span<const SignedPermutation> gens, std::size_t max_order) {
  if (gens.empty()) throw DimensionError("group closure needs at least one generator");
  const int n = gens.front().n();
  std::unordered_set<SignedPermutation, SignedPermutationHash> seen;
  std::vector<SignedPermutation> out{SignedPermutation::identity(n)};
  seen.insert(out.front());
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& g : gens) {
      SignedPermutation next = g.compose(out[head]);
      if (seen.insert(next).second) {
        out.push_back(std::move(next));
        if (out.size() > max_order)
          throw TooLargeError("group closure exceeds " + std::to_string(max_order) + " elements");
      }
    }
  }
  return out;
}

bool is_group(std::span<const SignedPermutation> elements) {
  if (elements.empty()) return false;
  const int n = elements.front().n();
  std::unordered_set<SignedPermutation, SignedPermutationHash> set;
  for (const auto& g : elements) {
    if (g.n() != n) return false;
    set.insert(g);
  }
  if (!set.count(SignedPermutation::identity(n))) return false;
  // Grow a subgroup from elements of the set; a finite subset closed under
  // composition is a group, so it suffices that every generated product stays
  // inside and the generated subgroup exhausts the set.
  std::vector<SignedPermutation> gens;
  std::unordered_set<SignedPermutation, SignedPermutationHash> generated{SignedPermutation::identity(n)};
  for (const auto& h : set) {
    if (generated.count(h)) continue;
    gens.push_back(h);
    std::vector<SignedPermutation> frontier(generated.begin(), generated.end());
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      for (const auto& g : gens) {
        SignedPermutation next = g.compose(frontier[head]);
        if (!set.count(next)) return false;
        if (generated.insert(next).second) frontier.push_back(std::move(next));
      }
    }
  }
  return generated.size() == set.size();
}

Matrix group_average_projection(const Space& space, std::span<const SignedPermutation> group) {
  for (const auto& g : group)
    if (!g.compatible_with(space)) throw NotIsometryError("group element does not preserve the weights");
  if (!is_group(group)) throw NotAGroupError("elements are not closed under composition and inverses");
  std::unordered_set<SignedPermutation, SignedPermutationHash> unique(group.begin(), group.end());
  Matrix avg = Matrix::Zero(space.n(), space.n());
  for (const auto& g : unique) {
    for (int j = 0; j < g.n(); ++j) {
      const int i = g.perm()[static_cast<std::size_t>(j)];
      avg(i, j) += g.signs()[static_cast<std::size_t>(i)];
    }
  }
  return avg / static_cast<double>(unique.size());
}

}  // namespace envlab
