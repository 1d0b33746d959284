#include "gext/cohomology.hpp"

#include <numeric>

#include "gext/intlinalg.hpp"

namespace gext {

namespace {

constexpr int kNone = FiniteGroupoid::kNone;

std::size_t at(int a, int b, int n) { return static_cast<std::size_t>(a) * n + b; }

std::string triple_id(const FiniteGroupoid& g, int a, int b, int c) {
  return "(" + g.arrow_id(a) + "," + g.arrow_id(b) + "," + g.arrow_id(c) + ")";
}

// coordinates of normalised 1- and 2-cochains as integer vectors
struct Coords {
  std::vector<int> c1;  // per arrow, offset or kNone on units
  std::vector<int> c2;  // per pair, offset or kNone
  std::vector<BigInt> m1, m2, m3;
  std::vector<std::array<int, 3>> triples;
  std::vector<int> row3;  // first row of each triple
  int k1 = 0, k2 = 0, k3 = 0;
};

Coords coords(const GroupoidAction& act, bool with_triples) {
  const auto& g = *act.groupoid();
  const int na = g.num_arrows();
  const auto rank = [&](int a) { return act.bundle().fiber(g.tgt(a)).rank(); };
  const auto push = [&](std::vector<BigInt>& m, int a) {
    for (long long d : act.bundle().fiber(g.tgt(a)).factors()) m.push_back(d);
  };
  Coords c;
  c.c1.assign(na, kNone);
  c.c2.assign(static_cast<std::size_t>(na) * na, kNone);
  for (int a = 0; a < na; ++a) {
    if (g.is_unit_arrow(a)) continue;
    c.c1[a] = c.k1;
    c.k1 += rank(a);
    push(c.m1, a);
  }
  for (int a = 0; a < na; ++a) {
    if (g.is_unit_arrow(a)) continue;
    for (int b : g.arrows_into(g.src(a))) {
      if (g.is_unit_arrow(b)) continue;
      c.c2[at(a, b, na)] = c.k2;
      c.k2 += rank(a);
      push(c.m2, a);
    }
  }
  if (!with_triples) return c;
  for (int a = 0; a < na; ++a) {
    if (g.is_unit_arrow(a)) continue;
    for (int b : g.arrows_into(g.src(a))) {
      if (g.is_unit_arrow(b)) continue;
      for (int d : g.arrows_into(g.src(b))) {
        if (g.is_unit_arrow(d)) continue;
        c.triples.push_back({a, b, d});
        c.row3.push_back(c.k3);
        c.k3 += rank(a);
        push(c.m3, a);
      }
    }
  }
  return c;
}

// delta : C^1 -> C^2
BigMatrix d1_matrix(const GroupoidAction& act, const Coords& c) {
  const auto& g = *act.groupoid();
  const int na = g.num_arrows();
  BigMatrix d = zero_matrix(c.k2, c.k1);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      const int row = c.c2[at(a, b, na)];
      if (row == kNone) continue;
      const int r = act.bundle().fiber(g.tgt(a)).rank();
      const auto& m = act.matrix(a);
      const int ab = g.comp(a, b);
      for (int i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < m[i].size(); ++j) d[row + i][c.c1[b] + j] += m[i][j];
        if (c.c1[ab] != kNone) d[row + i][c.c1[ab] + i] -= 1;
        d[row + i][c.c1[a] + i] += 1;
      }
    }
  return d;
}

// cocycle condition : C^2 -> C^3
BigMatrix d2_matrix(const GroupoidAction& act, const Coords& c) {
  const auto& g = *act.groupoid();
  const int na = g.num_arrows();
  BigMatrix d = zero_matrix(c.k3, c.k2);
  for (std::size_t t = 0; t < c.triples.size(); ++t) {
    const auto [a, b, e] = c.triples[t];
    const int row = c.row3[t];
    const int r = act.bundle().fiber(g.tgt(a)).rank();
    const auto& m = act.matrix(a);
    const int ab = g.comp(a, b), be = g.comp(b, e);
    for (int i = 0; i < r; ++i) {
      d[row + i][c.c2[at(a, b, na)] + i] += 1;
      if (c.c2[at(ab, e, na)] != kNone) d[row + i][c.c2[at(ab, e, na)] + i] += 1;
      for (std::size_t j = 0; j < m[i].size(); ++j) d[row + i][c.c2[at(b, e, na)] + j] -= m[i][j];
      if (c.c2[at(a, be, na)] != kNone) d[row + i][c.c2[at(a, be, na)] + i] -= 1;
    }
  }
  return d;
}

std::vector<BigInt> to_vector(const Cocycle2& phi, const Coords& c) {
  const int na = phi.action.groupoid()->num_arrows();
  std::vector<BigInt> v(c.k2, 0);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      const int o = c.c2[at(a, b, na)];
      if (o == kNone) continue;
      const Element& x = phi(a, b);
      for (std::size_t i = 0; i < x.size(); ++i) v[o + i] = x[i];
    }
  return v;
}

Cocycle2 from_vector(const GroupoidAction& act, const Coords& c, const std::vector<BigInt>& v) {
  Cocycle2 phi = Cocycle2::zero(act);
  const auto& g = *act.groupoid();
  const int na = g.num_arrows();
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      const int o = c.c2[at(a, b, na)];
      if (o == kNone) continue;
      Element& x = phi.at(a, b);
      for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = static_cast<long long>(((v[o + i] % c.m2[o + i]) + c.m2[o + i]) % c.m2[o + i]);
    }
  return phi;
}

void require_finite(const GroupoidAction& act, const char* what) {
  if (!act.bundle().is_finite()) throw Error(std::string(what) + ": coefficients must be finite");
}

Error first_violation(const std::string& what, const Report& r) {
  return Error(what + ": " + r.violations().front().check + " at " + r.violations().front().witness);
}

}  // namespace

// ---------------------------------------------------------------------------

Cocycle2 Cocycle2::zero(const GroupoidAction& act) {
  const auto& g = *act.groupoid();
  const int na = g.num_arrows();
  Cocycle2 phi{act, std::vector<Element>(static_cast<std::size_t>(na) * na)};
  for (int a = 0; a < na; ++a)
    for (int b : g.arrows_into(g.src(a))) phi.at(a, b) = act.bundle().fiber(g.tgt(a)).zero();
  return phi;
}

Cochain1 Cochain1::zero(const GroupoidAction& act) {
  const auto& g = *act.groupoid();
  Cochain1 c{act, {}};
  for (int a = 0; a < g.num_arrows(); ++a) c.values.push_back(act.bundle().fiber(g.tgt(a)).zero());
  return c;
}

long long CohomologyGroup::order() const {
  long long n = 1;
  for (long long d : invariant_factors) n *= d;
  return n;
}

Report validate_cocycle(const Cocycle2& phi) {
  Report r;
  const auto& g = *phi.action.groupoid();
  const int na = g.num_arrows();
  if (phi.values.size() != static_cast<std::size_t>(na) * na) {
    r.add("shape", "one value slot per pair required");
    return r;
  }
  for (int a = 0; a < na; ++a)
    for (int b : g.arrows_into(g.src(a))) {
      const auto& f = phi.action.bundle().fiber(g.tgt(a));
      if (!f.contains(phi(a, b))) {
        r.add("range", pair_id(g.arrow_id(a), g.arrow_id(b)));
        continue;
      }
      if ((g.is_unit_arrow(a) || g.is_unit_arrow(b)) && !f.is_zero(phi(a, b)))
        r.add("normalized", pair_id(g.arrow_id(a), g.arrow_id(b)));
    }
  if (!r.ok()) return r;
  for (int a = 0; a < na; ++a) {
    const auto& f = phi.action.bundle().fiber(g.tgt(a));
    for (int b : g.arrows_into(g.src(a)))
      for (int c : g.arrows_into(g.src(b))) {
        const int ab = g.comp(a, b), bc = g.comp(b, c);
        const Element lhs = f.add(phi(a, b), phi(ab, c));
        const Element rhs = f.add(phi.action.apply(a, phi(b, c)), phi(a, bc));
        if (lhs != rhs) r.add("cocycle", triple_id(g, a, b, c));
      }
  }
  return r;
}

Report validate_section(const Extension& e, const Section& tau) {
  Report r;
  const auto& g = *e.base();
  if (static_cast<int>(tau.size()) != g.num_arrows()) {
    r.add("shape", "one lift per base arrow required");
    return r;
  }
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (tau[a] < 0 || tau[a] >= e.total->num_arrows() || e.proj[tau[a]] != a) {
      r.add("section", g.arrow_id(a));
      continue;
    }
    if (g.is_unit_arrow(a) && !e.total->is_unit_arrow(tau[a])) r.add("normalized", g.arrow_id(a));
  }
  return r;
}

Cocycle2 add(const Cocycle2& a, const Cocycle2& b) {
  if (!a.action.same_as(b.action)) throw Error("cocycle sum: different coefficient data");
  Cocycle2 out = a;
  const auto& g = *a.action.groupoid();
  const int na = g.num_arrows();
  for (int x = 0; x < na; ++x)
    for (int y : g.arrows_into(g.src(x)))
      out.at(x, y) = a.action.bundle().fiber(g.tgt(x)).add(a(x, y), b(x, y));
  return out;
}

Cocycle2 scale(const Cocycle2& a, long long k) {
  Cocycle2 out = a;
  const auto& g = *a.action.groupoid();
  for (int x = 0; x < g.num_arrows(); ++x)
    for (int y : g.arrows_into(g.src(x))) out.at(x, y) = a.action.bundle().fiber(g.tgt(x)).scale(a(x, y), k);
  return out;
}

bool operator==(const Cocycle2& a, const Cocycle2& b) {
  return a.action.same_as(b.action) && a.values == b.values;
}

Extension extension_from_cocycle(const Cocycle2& phi) {
  {
    const Report r = validate_action(phi.action);
    if (!r.ok()) throw first_violation("extension_from_cocycle: invalid action", r);
    const Report v = validate_cocycle(phi);
    if (!v.ok()) throw first_violation("extension_from_cocycle: invalid cocycle", v);
  }
  require_finite(phi.action, "extension_from_cocycle");
  return twisted_semidirect(phi.action, [&](int a, int b) { return phi(a, b); });
}

Cocycle2 cocycle_from_extension(const Extension& e, const Section& given) {
  const Section tau = given.empty() ? canonical_section(e) : given;
  const Report r = validate_section(e, tau);
  if (!r.ok()) throw first_violation("cocycle_from_extension", r);
  const auto& s = *e.total;
  const auto& g = *e.base();
  const auto back = iota_inverse(e);
  Cocycle2 phi = Cocycle2::zero(e.action);
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int b : g.arrows_into(g.src(a))) {
      const int k = s.comp(s.comp(tau[a], tau[b]), s.inv(tau[g.comp(a, b)]));
      const auto [u, idx] = back[k];
      if (u == kNone) throw Error("cocycle_from_extension: lifts do not differ by a kernel element");
      phi.at(a, b) = e.kernel().fiber(u).element(idx);
    }
  return phi;
}

Cocycle2 pushforward_cocycle(const BundleHom& f, const GroupoidAction& target, const Cocycle2& phi) {
  if (!(f.source == phi.action.bundle()) || !(f.target == target.bundle()))
    throw Error("pushforward: hom does not match the coefficient bundles");
  const Report r = validate_bundle_hom(f, phi.action, target);
  if (!r.ok()) throw first_violation("pushforward: hom is not equivariant", r);
  Cocycle2 out = Cocycle2::zero(target);
  const auto& g = *phi.action.groupoid();
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int b : g.arrows_into(g.src(a))) out.at(a, b) = f.apply(g.tgt(a), phi(a, b));
  return out;
}

Cocycle2 coboundary(const Cochain1& c) {
  const auto& g = *c.action.groupoid();
  for (int u = 0; u < g.num_units(); ++u)
    if (!c.action.bundle().fiber(u).is_zero(c.values[g.unit_arrow(u)]))
      throw Error("coboundary: cochain is not normalised at " + g.unit_id(u));
  Cocycle2 phi = Cocycle2::zero(c.action);
  for (int a = 0; a < g.num_arrows(); ++a) {
    const auto& f = c.action.bundle().fiber(g.tgt(a));
    for (int b : g.arrows_into(g.src(a)))
      phi.at(a, b) = f.add(f.sub(c.action.apply(a, c.values[b]), c.values[g.comp(a, b)]), c.values[a]);
  }
  return phi;
}

std::optional<Cochain1> cohomologous(const Cocycle2& phi1, const Cocycle2& phi2) {
  if (!phi1.action.same_as(phi2.action)) throw Error("cohomologous: different coefficient data");
  require_finite(phi1.action, "cohomologous");
  const auto& act = phi1.action;
  const Coords c = coords(act, false);
  const BigMatrix d1 = d1_matrix(act, c);
  BigMatrix m = zero_matrix(c.k2, c.k1 + c.k2);
  for (int i = 0; i < c.k2; ++i) {
    for (int j = 0; j < c.k1; ++j) m[i][j] = d1[i][j];
    m[i][c.k1 + i] = c.m2[i];
  }
  const auto v1 = to_vector(phi1, c), v2 = to_vector(phi2, c);
  std::vector<BigInt> delta(c.k2);
  for (int i = 0; i < c.k2; ++i) delta[i] = v1[i] - v2[i];
  const auto sol = solve_integer(m, delta);
  if (!sol) return std::nullopt;
  Cochain1 out = Cochain1::zero(act);
  const auto& g = *act.groupoid();
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (c.c1[a] == kNone) continue;
    for (std::size_t i = 0; i < out.values[a].size(); ++i) {
      const BigInt& mod = c.m1[c.c1[a] + i];
      out.values[a][i] = static_cast<long long>(((((*sol)[c.c1[a] + i]) % mod) + mod) % mod);
    }
  }
  if (!(add(coboundary(out), phi2) == phi1)) throw Error("cohomologous: solution failed verification");
  return out;
}

CohomologyGroup h2(const GroupoidAction& act) {
  {
    const Report r = validate_action(act);
    if (!r.ok()) throw first_violation("h2: invalid action", r);
  }
  require_finite(act, "h2");
  const Coords c = coords(act, true);
  CohomologyGroup out;
  if (c.k2 == 0) return out;

  // Z^2 as a lattice containing the relations, then B^2 + relations inside it
  const ModKernel z = kernel_mod(d2_matrix(act, c), c.m3, c.k2);
  const BigMatrix d1 = d1_matrix(act, c);
  BigMatrix gens = zero_matrix(c.k2, c.k1 + c.k2);
  for (int i = 0; i < c.k2; ++i) {
    for (int j = 0; j < c.k1; ++j) gens[i][j] = d1[i][j];
    gens[i][c.k1 + i] = c.m2[i];
  }
  BigMatrix x = mul(z.q_inv, gens);
  for (int i = 0; i < c.k2; ++i)
    for (auto& v : x[i]) {
      if (v % z.scale[i] != 0) throw Error("h2: coboundary outside the cocycle lattice");
      v /= z.scale[i];
    }
  SmithOptions o;
  o.right = false;
  const SmithForm f = smith(std::move(x), o);
  if (f.rank != c.k2) throw Error("h2: relation lattice is not of full rank");
  const BigMatrix basis = z.basis();
  for (int i = 0; i < c.k2; ++i) {
    if (f.diagonal[i] == 1) continue;
    out.invariant_factors.push_back(static_cast<long long>(f.diagonal[i]));
    std::vector<BigInt> col(c.k2);
    for (int r = 0; r < c.k2; ++r) col[r] = f.u_inv[r][i];
    out.basis.push_back(from_vector(act, c, mul(basis, col)));
  }
  return out;
}

// ---------------------------------------------------------------------------

LiftedCocycle lift_transformation_cocycle(const Cocycle2& phi, const RightSpace& x) {
  const auto& act = phi.action;
  LiftedCocycle out;
  out.groupoid = transformation_groupoid(act.groupoid(), x);
  const auto& h = *out.groupoid.groupoid;
  std::vector<AbelianGroup> fibers;
  for (int p = 0; p < x.num_points(); ++p) fibers.push_back(act.bundle().fiber(x.anchor[p]));
  std::vector<ExponentMatrix> ms;
  for (int a = 0; a < h.num_arrows(); ++a) ms.push_back(act.matrix(out.groupoid.base_arrow_of[a]));
  const GroupoidAction lifted(out.groupoid.groupoid, GroupBundle(h.unit_ids(), std::move(fibers)), std::move(ms));
  out.cocycle = Cocycle2::zero(lifted);
  for (int a = 0; a < h.num_arrows(); ++a)
    for (int b : h.arrows_into(h.src(a)))
      out.cocycle.at(a, b) = phi(out.groupoid.base_arrow_of[a], out.groupoid.base_arrow_of[b]);
  return out;
}

Report verify_lift_isomorphism(const Cocycle2& phi, const RightSpace& x) {
  const LiftedCocycle lift = lift_transformation_cocycle(phi, x);
  const Extension left = extension_from_cocycle(lift.cocycle);
  const Extension sigma = extension_from_cocycle(phi);
  // X x| Sigma_phi with Sigma_phi acting through its projection
  const auto& s = *sigma.total;
  const int ns = s.num_arrows();
  const int ng = phi.action.groupoid()->num_arrows();
  RightSpace xs{x.points, x.anchor, std::vector<int>(static_cast<std::size_t>(x.num_points()) * ns, kNone)};
  for (int p = 0; p < x.num_points(); ++p)
    for (int t : s.arrows_into(x.anchor[p])) xs.act[at(p, t, ns)] = x.apply(p, sigma.proj[t], ng);
  const ActionGroupoid right = transformation_groupoid(sigma.total, xs);
  // V((x,a),(x,gamma)) = (x,(a,gamma)): both sides number a within A(anchor x)
  const auto back = iota_inverse(left);
  GroupoidHom v{left.total, right.groupoid, {}, {}};
  const auto tau = canonical_section(left);
  const auto sigma_back = iota_inverse(sigma);
  for (int y = 0; y < left.total->num_arrows(); ++y) {
    const int arrow = left.proj[y];  // (p, gamma) in X x| G
    const int p = lift.groupoid.point_of[arrow];
    const int gamma = lift.groupoid.base_arrow_of[arrow];
    const auto [u, a] = back[left.total->comp(y, left.total->inv(tau[arrow]))];
    (void)u;
    // (a, gamma) in Sigma_phi: iota(a) (0, gamma)
    const int zero_lift = canonical_section(sigma)[gamma];
    const int sig = s.comp(sigma.iota[s.tgt(zero_lift)][a], zero_lift);
    v.arrow_map.push_back(right.lookup(p, sig));
  }
  (void)sigma_back;
  v.unit_map.resize(left.total->num_units());
  std::iota(v.unit_map.begin(), v.unit_map.end(), 0);
  Report r = validate_hom(v);
  if (r.ok() && !is_bijective(v)) r.add("bijective", "V is not a bijection");
  return r;
}

HatCocycle hat_cocycle(const Cocycle2& phi, long long modulus) {
  require_finite(phi.action, "hat_cocycle");
  HatCocycle out;
  const long long n = modulus == 0 ? phi.action.bundle().exponent() : modulus;
  out.data = dual_data(phi.action, n);
  const auto& base = out.data.base;
  const auto& h = base.groupoid;
  const GroupoidAction act = GroupoidAction::trivial(h, root_of_unity_bundle(*h, n));
  out.cocycle = Cocycle2::zero(act);
  for (int a = 0; a < h->num_arrows(); ++a)
    for (int b : h->arrows_into(h->src(a))) {
      const int p = base.point_of[a];
      const auto z = pairing(out.data.dual.characters, out.data.dual.point_unit[p],
                             out.data.dual.point_character[p], phi(base.base_arrow_of[a], base.base_arrow_of[b]));
      out.cocycle.at(a, b) = {z.exponent};
    }
  return out;
}

long long rotation_s(int n, long long m) {
  if (n < 2) throw Error("rotation cocycle: n must be at least 2");
  if (std::gcd(static_cast<long long>(n), m) != 1) throw Error("rotation cocycle: m must be coprime to n");
  const long long mm = mod_floor(m, n);
  for (long long s = 1; s < n; ++s)
    if (s * mm % n == 1) return s;
  throw Error("rotation cocycle: no inverse");
}

Cocycle2 rotation_cocycle(int n, long long m) {
  const long long s = rotation_s(n, m);
  auto g = share(cyclic_group(n));
  const GroupoidAction act = GroupoidAction::trivial(g, GroupBundle::constant(*g, AbelianGroup({0})));
  Cocycle2 omega = Cocycle2::zero(act);
  for (int k1 = 0; k1 < n; ++k1)
    for (int k2 = 0; k2 < n; ++k2) omega.at(k1, k2) = {k1 + k2 >= n ? n * s : 0};
  return omega;
}

}  // namespace gext
