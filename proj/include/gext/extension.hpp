#pragma once

// Extensions  A --iota--> Sigma --proj--> G  of a finite groupoid G by a
// bundle A carrying a G-action. The unit space of Sigma is identified with
// that of G (same identifiers, same order).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gext/abelian.hpp"
#include "gext/groupoid.hpp"
#include "gext/report.hpp"

namespace gext {

struct Extension {
  GroupoidPtr total;
  GroupoidAction action;               // G acting on A
  std::vector<std::vector<int>> iota;  // iota[u][element index of A(u)] -> arrow of Sigma
  std::vector<int> proj;               // arrow of Sigma -> arrow of G

  const GroupoidPtr& base() const noexcept { return action.groupoid(); }
  const GroupBundle& kernel() const noexcept { return action.bundle(); }
  int iota_of(int u, const Element& a) const {
    return iota[u][kernel().fiber(u).index_of(a)];
  }
};

/// Kernel coordinates of each arrow of Sigma: (unit, element index) or
/// (kNone, 0) when the arrow is not in the image of iota.
std::vector<std::pair<int, long long>> iota_inverse(const Extension& e);

GroupoidHom projection_hom(const Extension& e);

Report validate_extension(const Extension& e);

/// Extension with arrows (a, gamma), a in A(tgt gamma), and product
/// (a1 + gamma1.a2 + phi(gamma1, gamma2), gamma1 gamma2). A null `phi` gives
/// the semidirect product. phi must be normalised and valued in A(tgt gamma1).
using PairFunction = std::function<Element(int, int)>;
Extension twisted_semidirect(const GroupoidAction& act, const PairFunction& phi);

/// SD(A, G).
Extension semidirect(const GroupoidAction& act);

/// Lift of each base arrow: the unit arrow over units, otherwise the lift
/// with the smallest identifier.
std::vector<int> canonical_section(const Extension& e);

struct PushoutResult {
  Extension extension;
  GroupoidHom map;  // f_* : Sigma -> f_* Sigma
};

/// f_* Sigma = (SD(B,G) *_G Sigma) / theta(A). `target` is the G-action on B.
PushoutResult pushout(const BundleHom& f, const GroupoidAction& target, const Extension& e);

/// Sigma1 *_G Sigma2 as an extension of G by A1 * A2 with the diagonal action.
Extension fibered_product_extension(const Extension& e1, const Extension& e2);

/// [e1] + [e2] = nabla_*(e1 *_G e2).
Extension baer_sum(const Extension& e1, const Extension& e2);

/// Same total groupoid, injection a -> iota(-a).
Extension inverse_ext(const Extension& e);

/// Reduction of an extension to an invariant set of units.
Extension restrict_extension(const Extension& e, const std::vector<int>& units);

enum class IsoStatus { Isomorphic, NotIsomorphic, Unknown };
enum class IsoStrategy { Auto, Backtrack, Cohomology };

struct IsoOptions {
  IsoStrategy strategy = IsoStrategy::Auto;
  long long max_nodes = 1000000;
};

struct IsoResult {
  IsoStatus status = IsoStatus::Unknown;
  std::optional<GroupoidHom> witness;  // Sigma1 -> Sigma2
  long long nodes = 0;
  std::string method;
};

/// Same base tables, same bundle and same induced action.
bool same_extension_data(const Extension& e1, const Extension& e2);

/// Checks that `f` is a bijective homomorphism with f iota1 = iota2 and
/// proj2 f = proj1.
Report verify_proper_isomorphism(const Extension& e1, const Extension& e2, const GroupoidHom& f);

IsoResult properly_isomorphic(const Extension& e1, const Extension& e2, const IsoOptions& opts = {});

/// The dual of a G-bundle A, the groupoid Ahat x| G, and its action on Ahat * A.
struct DualData {
  DualBundle dual;
  ActionGroupoid base;
  GroupoidAction kernel_action;
};
DualData dual_data(const GroupoidAction& act, long long modulus = 0);

/// Ahat x| Sigma as an extension of Ahat x| G by Ahat * A (Sigma acts on
/// Ahat through proj).
Extension action_extension(const Extension& e, const DualData& d);

struct TGroupoid {
  Extension extension;  // of Ahat x| G by the constant mu_N bundle
  DualData data;
  long long modulus = 1;
};

/// f_*(Ahat x| Sigma) along f(chi, a) = (chi, chi(a)).
TGroupoid t_groupoid(const Extension& e, long long modulus = 0);

/// ((Ahat x| Sigma) x mu_N) / {(chi, -chi(a), iota(a))}.
TGroupoid t_groupoid_quotient_model(const Extension& e, long long modulus = 0);

}  // namespace gext
