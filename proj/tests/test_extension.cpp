#include "doctest.h"

#include <random>

#include "gext/cohomology.hpp"
#include "gext/extension.hpp"
#include "oracles.hpp"
#include "samples.hpp"

using namespace gext;
using samples::trivial_on;

namespace {

bool iso(const Extension& a, const Extension& b, IsoStrategy s = IsoStrategy::Auto) {
  IsoOptions o;
  o.strategy = s;
  const IsoResult r = properly_isomorphic(a, b, o);
  REQUIRE(r.status != IsoStatus::Unknown);
  if (r.status == IsoStatus::Isomorphic) {
    REQUIRE(r.witness.has_value());
    CHECK(verify_proper_isomorphism(a, b, *r.witness).ok());
  }
  return r.status == IsoStatus::Isomorphic;
}

// the extensions in the small corpus: a few random classes per action
std::vector<Extension> corpus_for(const GroupoidAction& a, std::mt19937& rng, int count) {
  const CohomologyGroup h = h2(a);
  std::vector<Extension> out;
  for (int i = 0; i < count; ++i) out.push_back(extension_from_cocycle(samples::random_cocycle(a, h, rng)));
  return out;
}

Extension z4_over_z2() {
  const auto act = trivial_on(cyclic_group(2), {2});
  return Extension{share(cyclic_group(4)), act, {{0, 2}}, {0, 1, 0, 1}};
}

}  // namespace

TEST_CASE("validate_extension") {
  const auto act = trivial_on(cyclic_group(2), {2});
  CHECK(validate_extension(semidirect(act)).ok());
  CHECK(validate_extension(z4_over_z2()).ok());

  Extension bad = z4_over_z2();
  bad.iota = {{0, 1}};
  const Report r = validate_extension(bad);
  CHECK(r.has("exactness"));
  CHECK_FALSE(r.ok());

  Extension wrong_proj = z4_over_z2();
  wrong_proj.proj = {0, 0, 0, 0};
  CHECK(validate_extension(wrong_proj).has("proj.surjective"));

  // Z3 x| Z2 with the trivial action presented as if Z2 acted by negation
  const Extension sd_triv = semidirect(trivial_on(cyclic_group(2), {3}));
  Extension mismatched{sd_triv.total, samples::sign_action(3), sd_triv.iota, sd_triv.proj};
  CHECK(validate_extension(mismatched).has("compatibility"));
}

TEST_CASE("semidirect products") {
  const Extension triv = semidirect(trivial_on(cyclic_group(1), {2}));
  CHECK(oracle::isomorphic(*triv.total, cyclic_group(2)));

  const Extension s3 = semidirect(samples::sign_action(3));
  CHECK(validate_extension(s3).ok());
  CHECK(oracle::isomorphic(*s3.total, symmetric_group3()));
  CHECK_FALSE(oracle::isomorphic(*semidirect(trivial_on(cyclic_group(2), {3})).total, symmetric_group3()));

  for (const auto& a : samples::small_actions()) {
    const Extension sd = semidirect(a);
    CHECK(validate_extension(sd).ok());
    long long n = 0;
    const auto& g = *a.groupoid();
    for (int x = 0; x < g.num_arrows(); ++x) n += a.bundle().fiber(g.tgt(x)).order();
    CHECK(sd.total->num_arrows() == n);
    CHECK(sd.total->unit_ids() == g.unit_ids());
  }
  const Extension tw = semidirect(samples::twisted_pair_action());
  CHECK(validate_extension(tw).ok());
  CHECK(tw.total->num_arrows() == 32);
}

TEST_CASE("twisted semidirect products are valid extensions") {
  std::mt19937 rng(5);
  for (const auto& a : samples::small_actions())
    for (const auto& e : corpus_for(a, rng, 3)) CHECK(validate_extension(e).ok());
}

TEST_CASE("pushout along identity and zero") {
  std::mt19937 rng(13);
  for (const auto& a : samples::small_actions())
    for (const auto& e : corpus_for(a, rng, 2)) {
      const PushoutResult id = pushout(identity_bundle_hom(a.bundle()), a, e);
      CHECK(validate_extension(id.extension).ok());
      CHECK(validate_hom(id.map).ok());
      CHECK(iso(id.extension, e));
      CHECK(iso(id.extension, e, IsoStrategy::Backtrack));
      const PushoutResult z = pushout(zero_bundle_hom(a.bundle(), a.bundle()), a, e);
      CHECK(validate_extension(z.extension).ok());
      CHECK(iso(z.extension, semidirect(a), IsoStrategy::Backtrack));
    }
}

TEST_CASE("pushout along an inclusion") {
  const Extension e = z4_over_z2();
  const auto b = trivial_on(cyclic_group(2), {4});
  const BundleHom inc{e.kernel(), b.bundle(), {{{2}}}};
  const PushoutResult p = pushout(inc, b, e);
  CHECK(validate_extension(p.extension).ok());
  CHECK(p.extension.total->num_arrows() == 8);
  CHECK(oracle::isomorphic(*p.extension.total, abelian_group({4, 2})));
  CHECK_FALSE(oracle::isomorphic(*p.extension.total, cyclic_group(8)));
  const Cocycle2 pushed = pushforward_cocycle(inc, b, cocycle_from_extension(e));
  CHECK(iso(p.extension, extension_from_cocycle(pushed), IsoStrategy::Backtrack));

  // the map f_* commutes with the projections and restricts to f on the kernel
  const auto& f = p.map;
  for (int x = 0; x < e.total->num_arrows(); ++x) CHECK(p.extension.proj[f(x)] == e.proj[x]);
  for (long long i = 0; i < 2; ++i)
    CHECK(f(e.iota[0][i]) == p.extension.iota_of(0, inc.apply(0, e.kernel().fiber(0).element(i))));

  const BundleHom bad{b.bundle(), e.kernel(), {{{1}}}};
  CHECK_THROWS_AS(pushout(bad, b, e), Error);
}

TEST_CASE("pushout agrees with cocycle pushforward") {
  std::mt19937 rng(17);
  struct Case {
    GroupoidAction from, to;
    ExponentMatrix m;
  };
  std::vector<Case> cases = {
      {trivial_on(cyclic_group(2), {2}), trivial_on(cyclic_group(2), {4}), {{2}}},
      {trivial_on(cyclic_group(2), {4}), trivial_on(cyclic_group(2), {2}), {{1}}},
      {trivial_on(cyclic_group(2), {2, 2}), trivial_on(cyclic_group(2), {2}), {{1, 1}}},
      {trivial_on(abelian_group({2, 2}), {2}), trivial_on(abelian_group({2, 2}), {2, 2}), {{1}, {1}}},
      {samples::sign_action(4), samples::sign_action(4), {{3}}},
      {samples::sign_action(4), samples::sign_action(2), {{1}}},
  };
  for (const auto& c : cases) {
    std::vector<ExponentMatrix> ms(c.from.bundle().num_units(), c.m);
    const BundleHom f{c.from.bundle(), c.to.bundle(), ms};
    for (const auto& e : corpus_for(c.from, rng, 3)) {
      const PushoutResult p = pushout(f, c.to, e);
      CHECK(validate_extension(p.extension).ok());
      const Cocycle2 pushed = pushforward_cocycle(f, c.to, cocycle_from_extension(e));
      CHECK(iso(p.extension, extension_from_cocycle(pushed)));
      CHECK(iso(p.extension, extension_from_cocycle(pushed), IsoStrategy::Backtrack));
    }
  }
}

TEST_CASE("pushout functoriality") {
  std::mt19937 rng(19);
  const auto a = trivial_on(cyclic_group(2), {4});
  const auto b = trivial_on(cyclic_group(2), {4});
  const auto c = trivial_on(cyclic_group(2), {2});
  const BundleHom f{a.bundle(), b.bundle(), {{{3}}}};
  const BundleHom g{b.bundle(), c.bundle(), {{{1}}}};
  for (const auto& e : corpus_for(a, rng, 4)) {
    const Extension direct = pushout(compose(g, f), c, e).extension;
    const Extension stepwise = pushout(g, c, pushout(f, b, e).extension).extension;
    CHECK(iso(direct, stepwise, IsoStrategy::Backtrack));
  }
}

TEST_CASE("Baer sum group laws") {
  std::mt19937 rng(23);
  for (const auto& a : samples::small_actions()) {
    if (semidirect(a).total->num_arrows() > 8) continue;  // sums live in |Sigma|^2 / |A|
    const auto es = corpus_for(a, rng, 3);
    const Extension sd = semidirect(a);
    for (const auto& e : es) {
      CHECK(iso(baer_sum(sd, e), e));
      CHECK(iso(baer_sum(e, inverse_ext(e)), sd));
      CHECK(iso(baer_sum(e, inverse_ext(e)), sd, IsoStrategy::Backtrack));
    }
    CHECK(iso(baer_sum(es[0], es[1]), baer_sum(es[1], es[0])));
    CHECK(iso(baer_sum(baer_sum(es[0], es[1]), es[2]), baer_sum(es[0], baer_sum(es[1], es[2]))));
    // sums correspond to cocycle addition
    const Cocycle2 p0 = cocycle_from_extension(es[0]), p1 = cocycle_from_extension(es[1]);
    CHECK(iso(baer_sum(es[0], es[1]), extension_from_cocycle(add(p0, p1)), IsoStrategy::Backtrack));
  }
  const auto other = trivial_on(cyclic_group(2), {4});
  CHECK_THROWS_AS(baer_sum(z4_over_z2(), semidirect(other)), Error);
}

TEST_CASE("inverse extensions") {
  const Extension e = z4_over_z2();
  const Extension inv = inverse_ext(e);
  CHECK(inverse_ext(inv).iota == e.iota);
  CHECK(*inverse_ext(inv).total == *e.total);
  CHECK(validate_extension(inv).ok());
  // the class of Z4 has order 2
  CHECK(iso(inv, e, IsoStrategy::Backtrack));

  // SD: (a, gamma) -> (-a, gamma) is a proper isomorphism onto the inverse
  const auto act = samples::sign_action(3);
  const Extension sd = semidirect(act);
  const Extension sdi = inverse_ext(sd);
  const auto back = iota_inverse(sd);
  const auto tau = canonical_section(sd);
  GroupoidHom w{sd.total, sdi.total, {}, {0}};
  const auto& s = *sd.total;
  for (int x = 0; x < s.num_arrows(); ++x) {
    const int g = sd.proj[x];
    const auto [u, i] = back[s.comp(x, s.inv(tau[g]))];
    const auto& f = act.bundle().fiber(u);
    w.arrow_map.push_back(s.comp(sd.iota_of(u, f.neg(f.element(i))), tau[g]));
  }
  CHECK(verify_proper_isomorphism(sd, sdi, w).ok());

  // inverse equals the pushout along negation
  std::mt19937 rng(29);
  for (const auto& a : samples::small_actions())
    for (const auto& x : corpus_for(a, rng, 2)) {
      const Extension neg = pushout(multiplication_hom(a.bundle(), -1), a, x).extension;
      CHECK(iso(inverse_ext(x), neg));
    }
}

TEST_CASE("proper isomorphism") {
  const Extension e = z4_over_z2();
  const IsoResult self = properly_isomorphic(e, e);
  CHECK(self.status == IsoStatus::Isomorphic);
  REQUIRE(self.witness.has_value());
  for (int x = 0; x < 4; ++x) CHECK((*self.witness)(x) == x);

  const Extension klein = semidirect(e.action);
  CHECK(properly_isomorphic(e, klein).status == IsoStatus::NotIsomorphic);
  IsoOptions bt;
  bt.strategy = IsoStrategy::Backtrack;
  CHECK(properly_isomorphic(e, klein, bt).status == IsoStatus::NotIsomorphic);
  CHECK_FALSE(oracle::isomorphic(*e.total, *klein.total));

  // a node budget too small to finish reports unknown
  const Extension big = extension_from_cocycle(coboundary(Cochain1::zero(trivial_on(abelian_group({2, 2}), {2}))));
  IsoOptions tiny;
  tiny.strategy = IsoStrategy::Backtrack;
  tiny.max_nodes = 1;
  std::mt19937 rng(31);
  const Extension other =
      extension_from_cocycle(samples::random_cocycle(big.action, h2(big.action), rng));
  const IsoResult u = properly_isomorphic(big, other, tiny);
  CHECK((u.status == IsoStatus::Unknown || u.nodes <= 1));

  CHECK_THROWS_AS(properly_isomorphic(e, semidirect(trivial_on(cyclic_group(2), {4}))), Error);
}

TEST_CASE("backtracking agrees with the cohomology test") {
  std::mt19937 rng(37);
  std::vector<GroupoidAction> acts = samples::small_actions();
  acts.push_back(trivial_on(abelian_group({2, 2}), {4}));
  for (const auto& a : acts) {
    if (semidirect(a).total->num_arrows() > 16) continue;
    const auto es = corpus_for(a, rng, 4);
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t j = 0; j < es.size(); ++j) {
        const bool by_search = iso(es[i], es[j], IsoStrategy::Backtrack);
        const bool by_cocycle = iso(es[i], es[j], IsoStrategy::Cohomology);
        CHECK(by_search == by_cocycle);
        CHECK(by_cocycle ==
              cohomologous(cocycle_from_extension(es[i]), cocycle_from_extension(es[j])).has_value());
      }
  }
}

TEST_CASE("every class of the Klein four-group base") {
  // all 8 classes of H^2(Z2 x Z2, Z2) are pairwise non-isomorphic extensions
  const auto a = trivial_on(abelian_group({2, 2}), {2});
  const CohomologyGroup h = h2(a);
  REQUIRE(h.invariant_factors == std::vector<long long>{2, 2, 2});
  std::vector<Extension> es;
  for (int mask = 0; mask < 8; ++mask) {
    Cocycle2 phi = Cocycle2::zero(a);
    for (int i = 0; i < 3; ++i)
      if (mask >> i & 1) phi = add(phi, h.basis[i]);
    es.push_back(extension_from_cocycle(phi));
  }
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(iso(es[i], es[j], IsoStrategy::Backtrack) == (i == j));
}

TEST_CASE("restriction to invariant units") {
  const auto a = trivial_on(disjoint_union(cyclic_group(2, "a"), cyclic_group(2, "b")), {2});
  std::mt19937 rng(41);
  for (const auto& e : corpus_for(a, rng, 3)) {
    for (int u = 0; u < 2; ++u) {
      const Extension r = restrict_extension(e, {u});
      CHECK(validate_extension(r).ok());
      CHECK(r.total->num_arrows() == 4);
    }
  }
  CHECK_THROWS_AS(restrict_extension(semidirect(trivial_on(pair_groupoid(2), {2})), {0}), Error);
}

TEST_CASE("action extension") {
  const Extension e = z4_over_z2();
  const DualData d = dual_data(e.action);
  const Extension ae = action_extension(e, d);
  CHECK(validate_extension(ae).ok());
  CHECK(ae.kernel().num_units() == 2);
  for (int p = 0; p < 2; ++p) CHECK(ae.kernel().fiber(p) == AbelianGroup({2}));
  CHECK(ae.total->num_arrows() == 2 * 4);

  // trivial kernel: one dual point, base is G
  const Extension t = semidirect(trivial_on(cyclic_group(3), {}));
  const DualData dt = dual_data(t.action);
  CHECK(dt.dual.num_points() == 1);
  CHECK(oracle::isomorphic(*dt.base.groupoid, cyclic_group(3)));
  CHECK(validate_extension(action_extension(t, dt)).ok());

  // cardinality over a non-trivial action
  const Extension s3 = semidirect(samples::sign_action(3));
  const DualData ds = dual_data(s3.action);
  CHECK(action_extension(s3, ds).total->num_arrows() == 3 * 6);
}

TEST_CASE("t-groupoids") {
  const Extension e = z4_over_z2();
  const TGroupoid t = t_groupoid(e);
  CHECK(t.modulus == 2);
  CHECK(validate_extension(t.extension).ok());
  CHECK(iso(t.extension, t_groupoid_quotient_model(e).extension));
  for (int p = 0; p < 2; ++p) {
    const Extension r = restrict_extension(t.extension, {p});
    const bool split = iso(r, semidirect(r.action), IsoStrategy::Backtrack);
    CHECK(split == (t.data.dual.point_character[p] == Element{0}));
  }

  // split extensions have split twists
  for (const auto& a : samples::small_actions()) {
    const Extension sd = semidirect(a);
    const TGroupoid ts = t_groupoid(sd);
    CHECK(iso(ts.extension, semidirect(ts.extension.action)));
  }

  std::mt19937 rng(43);
  for (const auto& a : samples::small_actions())
    for (const auto& x : corpus_for(a, rng, 2)) {
      const TGroupoid tx = t_groupoid(x);
      CHECK(validate_extension(tx.extension).ok());
      const TGroupoid q = t_groupoid_quotient_model(x);
      CHECK(validate_extension(q.extension).ok());
      CHECK(iso(tx.extension, q.extension));
      // agrees with the twist built from the hat cocycle
      const HatCocycle h = hat_cocycle(cocycle_from_extension(x));
      CHECK(iso(tx.extension, extension_from_cocycle(h.cocycle)));
      // the fibre over the trivial character is the pushout along it
      const auto& g = *a.groupoid();
      if (g.num_units() == 1 && a.is_trivial()) {
        const int p0 = tx.data.dual.point(0, a.bundle().fiber(0).zero());
        const Extension r = restrict_extension(tx.extension, {p0});
        CHECK(iso(r, semidirect(r.action), IsoStrategy::Backtrack));
      }
    }
}

TEST_CASE("power characters give Baer multiples") {
  // mu_N twists of Z2 x Z2 and Z4, pushed along z -> z^n
  std::mt19937 rng(47);
  for (const auto& a : {trivial_on(abelian_group({2, 2}), {4}), trivial_on(cyclic_group(4), {4})})
    for (const auto& e : corpus_for(a, rng, 2))
      for (long long n = 0; n <= 3; ++n) {
        const Extension pushed = pushout(multiplication_hom(a.bundle(), n), a, e).extension;
        Extension sum = semidirect(a);
        for (long long k = 0; k < n; ++k) sum = baer_sum(sum, e);
        CHECK(iso(pushed, sum));
      }
}
