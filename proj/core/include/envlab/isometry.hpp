#pragma once

// Isometries of l_p^n(mu), p != 2: weight-preserving signed permutations.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "envlab/subspace.hpp"

namespace envlab {

/// Default bound on the number of atoms for group enumeration. The full
/// group has 2^n times a product of factorials elements.
inline constexpr int kGroupAtomCap = 8;

/// The map (g f)_i = signs_i * f_{perm^{-1}(i)}; perm[i] is the image of atom i.
class SignedPermutation {
 public:
  SignedPermutation(std::vector<int> perm, std::vector<int> signs);

  static SignedPermutation identity(int n);
  static SignedPermutation negation(int n);
  static SignedPermutation transposition(int n, int i, int j);
  static SignedPermutation sign_flip(int n, int i);
  /// Atom i goes to i + 1 mod n.
  static SignedPermutation cyclic_shift(int n);

  int n() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }
  const std::vector<int>& signs() const { return signs_; }

  Vector apply(const Vector& f) const;
  Matrix matrix() const;
  /// (*this) o rhs.
  SignedPermutation compose(const SignedPermutation& rhs) const;
  SignedPermutation inverse() const;
  bool is_identity() const;
  /// mu_{perm(i)} = mu_i up to relative 1e-12.
  bool compatible_with(const Space& space) const;

  bool operator==(const SignedPermutation& other) const = default;
  std::size_t hash() const;

 private:
  std::vector<int> perm_;
  std::vector<int> signs_;
};

struct SignedPermutationHash {
  std::size_t operator()(const SignedPermutation& g) const { return g.hash(); }
};

/// Checked action: throws NotIsometryError when g does not preserve weights.
Vector apply(const Space& space, const SignedPermutation& g, const Vector& f);

/// Streams every weight-compatible signed permutation, perm in lexicographic
/// order and signs lexicographic (+ before -) within a perm.
void for_each_group_element(const Space& space,
                            const std::function<void(const SignedPermutation&)>& visit,
                            int atom_cap = kGroupAtomCap);
std::vector<SignedPermutation> enumerate_group(const Space& space, int atom_cap = kGroupAtomCap);
/// Order of the group without enumerating it.
double group_order(const Space& space);

/// Elements g with ||g b - b||_inf <= tol for every basis vector b of y.
std::vector<SignedPermutation> stabilizer(const Subspace& y, double tol = kDefaultTol,
                                          int atom_cap = kGroupAtomCap);

/// Common fixed vectors of gens (the whole space for an empty list).
Subspace fixed_space_of(const Space& space, std::span<const SignedPermutation> gens);

/// Fix(Stab(y)). For p = 2 returns y: the orthogonal group moves everything
/// outside y.
Subspace algebraic_envelope(const Subspace& y, double tol = kDefaultTol,
                            int atom_cap = kGroupAtomCap);

struct EnvelopeReport {
  Subspace envelope;
  /// The isometry group is finite, so the pointwise-convergence envelope and
  /// Fix(Stab) coincide.
  bool equals_algebraic = true;
  bool hilbert_case = false;
  std::size_t stabilizer_order = 0;
  std::string caveat;
};

EnvelopeReport isometric_envelope_report(const Subspace& y, double tol = kDefaultTol,
                                         int atom_cap = kGroupAtomCap);
Subspace isometric_envelope(const Subspace& y, double tol = kDefaultTol,
                            int atom_cap = kGroupAtomCap);

struct ExtensionResult {
  /// Algebraic envelope of the source subspace.
  Subspace envelope;
  /// One group element per distinct restriction to the envelope.
  std::vector<SignedPermutation> witnesses;
  /// Images of the envelope basis, one matrix per distinct restriction.
  std::vector<Matrix> restrictions;
  /// Number of group elements agreeing with the prescribed map.
  std::size_t agreeing = 0;

  bool unique() const { return witnesses.size() == 1; }
};

/// Extends the linear map sources[k] -> images[k] to group elements and
/// compares the extensions on the envelope of span(sources).
/// Throws NotIsometryError when the map is not a well-defined p-isometry and
/// NotExtendableError when no group element agrees with it.
ExtensionResult extend_partial_isometry(const Space& space, const std::vector<Vector>& sources,
                                        const std::vector<Vector>& images,
                                        double tol = kDefaultTol,
                                        int atom_cap = kGroupAtomCap);

/// Closure of gens under composition; throws TooLargeError past max_order.
std::vector<SignedPermutation> group_closure(std::span<const SignedPermutation> gens,
                                             std::size_t max_order = 1'000'000);
bool is_group(std::span<const SignedPermutation> elements);

/// (1/|H|) sum_h h. Throws NotAGroupError unless H is a group and
/// NotIsometryError unless every element preserves weights.
Matrix group_average_projection(const Space& space, std::span<const SignedPermutation> group);

}  // namespace envlab
