#pragma once

// Normalised 2-cocycles of a groupoid with coefficients in a G-bundle, the
// extension/cocycle dictionary, coboundaries and H^2.
//
// Conventions: for a section tau, iota(phi(g1,g2)) = tau(g1) tau(g2) tau(g1 g2)^-1,
// and (delta c)(g1,g2) = g1.c(g2) - c(g1 g2) + c(g1).

#include <optional>
#include <vector>

#include "gext/abelian.hpp"
#include "gext/extension.hpp"
#include "gext/groupoid.hpp"
#include "gext/report.hpp"

namespace gext {

struct Cocycle2 {
  GroupoidAction action;
  std::vector<Element> values;  // g1 * num_arrows + g2; empty for non-composable pairs

  static Cocycle2 zero(const GroupoidAction& act);
  const Element& operator()(int g1, int g2) const {
    return values[static_cast<std::size_t>(g1) * action.groupoid()->num_arrows() + g2];
  }
  Element& at(int g1, int g2) {
    return values[static_cast<std::size_t>(g1) * action.groupoid()->num_arrows() + g2];
  }
};

struct Cochain1 {
  GroupoidAction action;
  std::vector<Element> values;  // per arrow, in A(tgt)

  static Cochain1 zero(const GroupoidAction& act);
};

using Section = std::vector<int>;  // base arrow -> total arrow

struct CohomologyGroup {
  std::vector<long long> invariant_factors;  // empty for the trivial group
  std::vector<Cocycle2> basis;               // one representative per factor

  long long order() const;
};

Report validate_cocycle(const Cocycle2& phi);
Report validate_section(const Extension& e, const Section& tau);

Cocycle2 add(const Cocycle2& a, const Cocycle2& b);
Cocycle2 scale(const Cocycle2& a, long long k);
bool operator==(const Cocycle2& a, const Cocycle2& b);

/// Sigma_phi; throws on an invalid cocycle.
Extension extension_from_cocycle(const Cocycle2& phi);

/// An empty section means canonical_section(e). Throws unless tau is a
/// normalised section.
Cocycle2 cocycle_from_extension(const Extension& e, const Section& tau = {});

/// f_*(phi)(g1,g2) = f(phi(g1,g2)); `target` is the action on the target bundle.
Cocycle2 pushforward_cocycle(const BundleHom& f, const GroupoidAction& target, const Cocycle2& phi);

Cocycle2 coboundary(const Cochain1& c);

/// A cochain c with phi1 - phi2 = delta c, or nullopt (certified by exact
/// integer linear algebra).
std::optional<Cochain1> cohomologous(const Cocycle2& phi1, const Cocycle2& phi2);

/// H^2 of the groupoid with coefficients in a finite bundle.
CohomologyGroup h2(const GroupoidAction& act);

/// phi~((x,g1),(x.g1,g2)) = (x, phi(g1,g2)) on X x| G with coefficients X * A.
struct LiftedCocycle {
  ActionGroupoid groupoid;
  Cocycle2 cocycle;
};
LiftedCocycle lift_transformation_cocycle(const Cocycle2& phi, const RightSpace& x);
/// Checks that V((x,a),(x,g)) = (x,(a,g)) is an isomorphism Sigma_phi~ -> X x| Sigma_phi.
Report verify_lift_isomorphism(const Cocycle2& phi, const RightSpace& x);

/// phi^((chi,g1),(chi.g1,g2)) = chi(phi(g1,g2)) on Ahat x| G, valued in the
/// constant mu_N bundle with trivial action.
struct HatCocycle {
  DualData data;
  Cocycle2 cocycle;
};
HatCocycle hat_cocycle(const Cocycle2& phi, long long modulus = 0);

/// omega(k1,k2) = n s when k1 + k2 >= n, else 0, on Z_n with constant Z
/// coefficients, where s m = 1 mod n.
Cocycle2 rotation_cocycle(int n, long long m);

/// Modular inverse s of m mod n (requires gcd(m,n) = 1).
long long rotation_s(int n, long long m);

}  // namespace gext
