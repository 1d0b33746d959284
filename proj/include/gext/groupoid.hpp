#pragma once

// Table-based finite groupoids: arrows are dense indices with opaque string
// identifiers, composition is a total n x n table with kNone marking
// non-composable pairs.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gext/report.hpp"

namespace gext {

struct ArrowSpec {
  std::string id;
  std::string src;
  std::string tgt;
};

class FiniteGroupoid {
 public:
  static constexpr int kNone = -1;

  FiniteGroupoid() = default;

  /// Builds from identifier tables. Unknown or duplicate identifiers throw;
  /// axiom violations do not (see validate_groupoid). Pairs absent from
  /// `comp` are non-composable, arrows absent from `inv` have no inverse.
  FiniteGroupoid(std::vector<std::string> units, const std::vector<ArrowSpec>& arrows,
                 const std::vector<std::array<std::string, 3>>& comp,
                 const std::vector<std::pair<std::string, std::string>>& inv);

  /// Index-level constructor used by the constructions. `comp` is row-major
  /// num_arrows x num_arrows.
  static FiniteGroupoid from_tables(std::vector<std::string> unit_ids,
                                    std::vector<std::string> arrow_ids, std::vector<int> src,
                                    std::vector<int> tgt, std::vector<int> comp,
                                    std::vector<int> inv);

  int num_units() const noexcept { return static_cast<int>(unit_ids_.size()); }
  int num_arrows() const noexcept { return static_cast<int>(arrow_ids_.size()); }

  const std::string& unit_id(int u) const { return unit_ids_[u]; }
  const std::string& arrow_id(int a) const { return arrow_ids_[a]; }
  const std::vector<std::string>& unit_ids() const noexcept { return unit_ids_; }
  const std::vector<std::string>& arrow_ids() const noexcept { return arrow_ids_; }

  int src(int a) const { return src_[a]; }
  int tgt(int a) const { return tgt_[a]; }
  int comp(int a, int b) const { return comp_[static_cast<std::size_t>(a) * arrow_ids_.size() + b]; }
  int inv(int a) const { return inv_[a]; }
  bool composable(int a, int b) const { return src_[a] == tgt_[b]; }

  /// Identity arrow at u: the unique a with src = tgt = u and a*a = a, or kNone.
  int unit_arrow(int u) const { return unit_arrow_[u]; }
  bool is_unit_arrow(int a) const { return src_[a] == tgt_[a] && unit_arrow_[src_[a]] == a; }

  /// Arrows with the given target (range fibre r^{-1}(u)), in index order.
  const std::vector<int>& arrows_into(int u) const { return into_[u]; }

  std::optional<int> find_unit(std::string_view id) const;
  std::optional<int> find_arrow(std::string_view id) const;
  int unit_index(std::string_view id) const;   // throws Error when unknown
  int arrow_index(std::string_view id) const;  // throws Error when unknown

  /// Same identifiers and identical tables.
  bool operator==(const FiniteGroupoid& other) const;

 private:
  void build_index();

  std::vector<std::string> unit_ids_;
  std::vector<std::string> arrow_ids_;
  std::vector<int> src_, tgt_, comp_, inv_;
  std::vector<int> unit_arrow_;
  std::vector<std::vector<int>> into_;
  std::unordered_map<std::string, int> unit_lookup_, arrow_lookup_;
};

using GroupoidPtr = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidPtr share(FiniteGroupoid g) {
  return std::make_shared<const FiniteGroupoid>(std::move(g));
}

struct GroupoidHom {
  GroupoidPtr domain;
  GroupoidPtr codomain;
  std::vector<int> arrow_map;
  std::vector<int> unit_map;

  int operator()(int a) const { return arrow_map[a]; }
};

GroupoidHom identity_hom(const GroupoidPtr& g);
GroupoidHom compose(const GroupoidHom& second, const GroupoidHom& first);
Report validate_hom(const GroupoidHom& h);
bool is_bijective(const GroupoidHom& h);

/// Labels units by a finite index set; must be constant along arrows.
struct InvariantPartition {
  std::vector<int> label;  // per unit
};

/// Finite right g-space: points with anchors in G^0 and a partial action
/// x . gamma defined when anchor(x) = tgt(gamma).
struct RightSpace {
  std::vector<std::string> points;
  std::vector<int> anchor;
  std::vector<int> act;  // point * num_arrows + arrow -> point, or kNone

  int num_points() const noexcept { return static_cast<int>(points.size()); }
  int apply(int x, int arrow, int num_arrows) const {
    return act[static_cast<std::size_t>(x) * num_arrows + arrow];
  }
};

/// X x| G together with the bookkeeping back to (point, base arrow).
struct ActionGroupoid {
  GroupoidPtr groupoid;
  std::vector<int> point_of;      // per arrow of X x| G
  std::vector<int> base_arrow_of; // per arrow of X x| G
  std::vector<int> index;         // point * base_arrows + base arrow -> arrow, or kNone
  int base_arrows = 0;

  int lookup(int x, int gamma) const {
    return index[static_cast<std::size_t>(x) * base_arrows + gamma];
  }
};

/// A reduction G|_F with the embedding back into G.
struct Reduction {
  GroupoidPtr groupoid;
  std::vector<int> arrow_to_parent;
  std::vector<int> unit_to_parent;
};

/// Coset groupoid G/N with its projection.
struct Quotient {
  GroupoidPtr groupoid;
  GroupoidHom projection;
};

/// Fibred product G1 *_H G2 with the component of each arrow.
struct FiberedProduct {
  GroupoidPtr groupoid;
  std::vector<std::pair<int, int>> components;
  std::vector<int> index;  // a1 * |G2| + a2 -> arrow, or kNone
  int right_arrows = 0;

  int lookup(int a1, int a2) const {
    return index[static_cast<std::size_t>(a1) * right_arrows + a2];
  }
};

std::string pair_id(std::string_view a, std::string_view b);

Report validate_groupoid(const FiniteGroupoid& g);

Reduction restrict_indexed(const FiniteGroupoid& g, const std::vector<int>& units);
FiniteGroupoid restrict(const FiniteGroupoid& g, const std::vector<std::string>& unit_ids);

/// Coset groupoid by a wide normal subgroupoid `normal` contained in the
/// isotropy. Cosets are named by their lexicographically smallest member.
Quotient quotient_by_normal_subgroupoid(const GroupoidPtr& g, const std::vector<int>& normal);

FiberedProduct fibered_product(const GroupoidHom& p1, const GroupoidHom& p2);

Report validate_space(const FiniteGroupoid& g, const RightSpace& x);
ActionGroupoid transformation_groupoid(const GroupoidPtr& g, const RightSpace& x);

Report validate_partition(const FiniteGroupoid& g, const InvariantPartition& p);
/// Reductions to each label class, in ascending label order.
std::vector<Reduction> invariant_partition_fibers(const FiniteGroupoid& g,
                                                  const InvariantPartition& p);
/// Connected components (orbits on units), numbered in order of first unit.
InvariantPartition orbit_partition(const FiniteGroupoid& g);
bool is_invariant(const FiniteGroupoid& g, const std::vector<int>& units);

// Standard groupoids.
FiniteGroupoid cyclic_group(int n, const std::string& prefix = "");
/// Group Z_{n1} x ... x Z_{nk}; elements are named "a.b.c".
FiniteGroupoid abelian_group(const std::vector<int>& factors, const std::string& prefix = "");
FiniteGroupoid symmetric_group3(const std::string& prefix = "");
/// Pair groupoid on k points: arrows (i,j) with tgt i, src j.
FiniteGroupoid pair_groupoid(int k, const std::string& prefix = "");
/// A group presented by its multiplication table (identity at index 0).
FiniteGroupoid group_from_table(const std::string& unit, std::vector<std::string> elements,
                                const std::vector<std::vector<int>>& mult);
/// Identifiers must be disjoint.
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);
/// Relabels arrows by a permutation (arrow i of the result is arrow perm[i]
/// of g); identifiers are kept.
FiniteGroupoid permute_arrows(const FiniteGroupoid& g, const std::vector<int>& perm);

}  // namespace gext
