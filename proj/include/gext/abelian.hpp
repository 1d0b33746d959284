#pragma once

// Bundles of abelian groups over a unit space, groupoid actions by fibre
// automorphisms, bundle homomorphisms and character duals.
//
// A fibre is presented as a direct sum of cyclic groups Z_{d_1} + ... + Z_{d_k};
// elements are exponent tuples reduced componentwise. A factor d = 0 stands
// for Z and is only meaningful for cocycle bookkeeping (validation and
// pushforward); every table-building construction requires finite fibres.

#include <cstdint>
#include <string>
#include <vector>

#include "gext/groupoid.hpp"
#include "gext/report.hpp"

namespace gext {

using Element = std::vector<long long>;
using ExponentMatrix = std::vector<std::vector<long long>>;  // rows x cols

long long lcm_ll(long long a, long long b);
long long mod_floor(long long a, long long m);  // m > 0; m == 0 returns a

class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<long long> factors);

  const std::vector<long long>& factors() const noexcept { return factors_; }
  int rank() const noexcept { return static_cast<int>(factors_.size()); }
  bool is_finite() const noexcept;
  long long order() const;     // throws for infinite groups
  long long exponent() const;  // lcm of the factors; throws for infinite groups

  Element zero() const { return Element(factors_.size(), 0); }
  Element reduce(Element a) const;
  bool contains(const Element& a) const;  // reduced and of the right length
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element scale(const Element& a, long long k) const;
  bool is_zero(const Element& a) const;

  // Mixed-radix numbering of a finite group, first component most significant.
  long long index_of(const Element& a) const;
  Element element(long long index) const;

  /// Invariant factors d_1 | d_2 | ... of the group (trivial factors dropped,
  /// Z summands reported as trailing zeros).
  std::vector<long long> invariant_factors() const;

  std::string format(const Element& a) const;

  bool operator==(const AbelianGroup& o) const { return factors_ == o.factors_; }

 private:
  std::vector<long long> factors_;
};

/// Applies an integer matrix to an exponent tuple and reduces into `target`.
Element apply_matrix(const ExponentMatrix& m, const Element& a, const AbelianGroup& target);
ExponentMatrix identity_matrix(int n);
ExponentMatrix multiply(const ExponentMatrix& a, const ExponentMatrix& b, int inner);
/// True when m induces a well-defined homomorphism source -> target.
bool well_defined(const ExponentMatrix& m, const AbelianGroup& source, const AbelianGroup& target);
/// Equality of the induced homomorphisms (checked on generators).
bool same_hom(const ExponentMatrix& a, const ExponentMatrix& b, const AbelianGroup& source,
              const AbelianGroup& target);

class GroupBundle {
 public:
  GroupBundle() = default;
  GroupBundle(std::vector<std::string> units, std::vector<AbelianGroup> fibers);
  static GroupBundle constant(const FiniteGroupoid& g, const AbelianGroup& a);

  int num_units() const noexcept { return static_cast<int>(fibers_.size()); }
  const AbelianGroup& fiber(int u) const { return fibers_[u]; }
  const std::vector<AbelianGroup>& fibers() const noexcept { return fibers_; }
  const std::vector<std::string>& unit_ids() const noexcept { return units_; }
  bool is_finite() const;
  bool is_constant() const;
  long long exponent() const;  // lcm over all fibres (1 for the empty bundle)
  long long total_order() const;

  bool operator==(const GroupBundle& o) const {
    return units_ == o.units_ && fibers_ == o.fibers_;
  }

 private:
  std::vector<std::string> units_;
  std::vector<AbelianGroup> fibers_;
};

/// Left action of a groupoid on a bundle: arrow gamma acts by an integer
/// matrix A(src gamma) -> A(tgt gamma).
class GroupoidAction {
 public:
  GroupoidAction() = default;
  GroupoidAction(GroupoidPtr g, GroupBundle bundle, std::vector<ExponentMatrix> matrices);
  /// Identity matrices; requires A(src) and A(tgt) to have the same presentation.
  static GroupoidAction trivial(GroupoidPtr g, GroupBundle bundle);

  const GroupoidPtr& groupoid() const noexcept { return g_; }
  const GroupBundle& bundle() const noexcept { return bundle_; }
  const ExponentMatrix& matrix(int arrow) const { return matrices_[arrow]; }
  const std::vector<ExponentMatrix>& matrices() const noexcept { return matrices_; }

  Element apply(int arrow, const Element& a) const;
  /// Element-index form of apply (finite bundles only).
  long long apply_index(int arrow, long long index) const;
  bool is_trivial() const;

  /// Same groupoid tables, bundle and induced automorphisms.
  bool same_as(const GroupoidAction& o) const;

 private:
  GroupoidPtr g_;
  GroupBundle bundle_;
  std::vector<ExponentMatrix> matrices_;
  std::vector<std::vector<long long>> cache_;  // per arrow, when finite
};

Report validate_action(const GroupoidAction& act);

/// Fibrewise homomorphism f_u : A(u) -> B(u).
struct BundleHom {
  GroupBundle source;
  GroupBundle target;
  std::vector<ExponentMatrix> matrices;  // per unit

  Element apply(int u, const Element& a) const {
    return apply_matrix(matrices[u], a, target.fiber(u));
  }
};

/// Well-definedness, plus G-equivariance against the two actions.
Report validate_bundle_hom(const BundleHom& f, const GroupoidAction& source_action,
                           const GroupoidAction& target_action);
BundleHom identity_bundle_hom(const GroupBundle& a);
BundleHom zero_bundle_hom(const GroupBundle& a, const GroupBundle& b);
BundleHom compose(const BundleHom& second, const BundleHom& first);
/// Multiplication by n on every fibre.
BundleHom multiplication_hom(const GroupBundle& a, long long n);

/// Fibrewise direct sum A1 + A2.
GroupBundle fibered_product_bundle(const GroupBundle& a1, const GroupBundle& a2);
/// Diagonal action on A1 * A2.
GroupoidAction fibered_product_action(const GroupoidAction& a1, const GroupoidAction& a2);
/// Fibrewise addition A * A -> A.
BundleHom nabla(const GroupBundle& a);

struct RootOfUnity {
  long long exponent = 0;  // represents exp(2 pi i exponent / modulus)
  long long modulus = 1;

  RootOfUnity operator+(const RootOfUnity& o) const;
  bool operator==(const RootOfUnity& o) const = default;
};

/// Characters of each fibre, encoded as exponent tuples in the same
/// presentation as the fibre; values land in mu_N.
struct CharacterBundle {
  GroupBundle bundle;
  long long modulus = 1;

  const AbelianGroup& characters(int u) const { return bundle.fiber(u); }
};

/// chi(a) = exp(2 pi i sum_i (N/d_i) chi_i a_i / N).
RootOfUnity pairing(const CharacterBundle& dual, int u, const Element& chi, const Element& a);

/// The dual bundle with its right G-action, as a right G-space whose points
/// are the characters (u, chi) ordered by unit, then character index.
struct DualBundle {
  CharacterBundle characters;
  RightSpace space;
  std::vector<int> point_unit;
  std::vector<Element> point_character;
  std::vector<int> unit_offset;

  int point(int u, const Element& chi) const {
    return unit_offset[u] + static_cast<int>(characters.characters(u).index_of(chi));
  }
  int num_points() const noexcept { return space.num_points(); }
};

/// `modulus` 0 picks the lcm of the fibre exponents; otherwise it must be a
/// multiple of it.
DualBundle dual_bundle(const GroupoidAction& act, long long modulus = 0);

/// (chi . gamma)(a) = chi(gamma . a) for chi at tgt(gamma).
Element dual_act(const GroupoidAction& act, const CharacterBundle& dual, int arrow,
                 const Element& chi);

/// Constant mu_N bundle (Z_N fibres) over the units of g.
GroupBundle root_of_unity_bundle(const FiniteGroupoid& g, long long modulus);

/// f_chi(u, a) = (u, chi(a)) for a constant bundle with trivial action.
BundleHom character_hom(const GroupoidAction& act, const Element& chi, long long modulus = 0);

}  // namespace gext
