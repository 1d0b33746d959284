#include "gext/extension.hpp"

#include <algorithm>
#include <numeric>

#include "gext/cohomology.hpp"

namespace gext {

namespace {

constexpr int kNone = FiniteGroupoid::kNone;

std::size_t at(int a, int b, int n) { return static_cast<std::size_t>(a) * n + b; }

bool same_groupoid(const GroupoidPtr& a, const GroupoidPtr& b) { return a == b || *a == *b; }

// addition and negation tables per fibre, on element indices
struct FibreTables {
  std::vector<long long> order;
  std::vector<std::vector<long long>> add, neg;

  explicit FibreTables(const GroupBundle& b) {
    for (const auto& f : b.fibers()) {
      const long long n = f.order();
      order.push_back(n);
      std::vector<long long> sum(n * n), minus(n);
      for (long long i = 0; i < n; ++i) {
        const Element x = f.element(i);
        minus[i] = f.index_of(f.neg(x));
        for (long long j = 0; j < n; ++j) sum[i * n + j] = f.index_of(f.add(x, f.element(j)));
      }
      add.push_back(std::move(sum));
      neg.push_back(std::move(minus));
    }
  }
  long long plus(int u, long long i, long long j) const { return add[u][i * order[u] + j]; }
};

// first arrow of each twisted_semidirect block: arrow (a, gamma) = offset[gamma] + index(a)
std::vector<int> sd_offsets(const GroupoidAction& act) {
  const auto& g = *act.groupoid();
  std::vector<int> off(g.num_arrows() + 1, 0);
  for (int a = 0; a < g.num_arrows(); ++a)
    off[a + 1] = off[a] + static_cast<int>(act.bundle().fiber(g.tgt(a)).order());
  return off;
}

}  // namespace

std::vector<std::pair<int, long long>> iota_inverse(const Extension& e) {
  std::vector<std::pair<int, long long>> out(e.total->num_arrows(), {kNone, 0});
  for (std::size_t u = 0; u < e.iota.size(); ++u)
    for (std::size_t i = 0; i < e.iota[u].size(); ++i) {
      const int s = e.iota[u][i];
      if (s >= 0 && s < e.total->num_arrows()) out[s] = {static_cast<int>(u), static_cast<long long>(i)};
    }
  return out;
}

GroupoidHom projection_hom(const Extension& e) {
  GroupoidHom h{e.total, e.base(), e.proj, {}};
  h.unit_map.resize(e.total->num_units());
  std::iota(h.unit_map.begin(), h.unit_map.end(), 0);
  return h;
}

Report validate_extension(const Extension& e) {
  Report r;
  const auto& s = *e.total;
  const auto& g = *e.base();
  r.merge(validate_groupoid(s), "total.");
  r.merge(validate_groupoid(g), "base.");
  if (!e.kernel().is_finite()) r.add("kernel", "fibres must be finite");
  if (r.ok()) r.merge(validate_action(e.action), "action.");
  if (!r.ok()) return r;
  if (s.unit_ids() != g.unit_ids()) r.add("units", "total and base unit spaces differ");
  if (static_cast<int>(e.proj.size()) != s.num_arrows()) r.add("shape", "proj needs one entry per arrow");
  if (static_cast<int>(e.iota.size()) != g.num_units()) r.add("shape", "iota needs one table per unit");
  for (int u = 0; u < g.num_units() && r.ok(); ++u)
    if (static_cast<long long>(e.iota[u].size()) != e.kernel().fiber(u).order())
      r.add("shape", "iota table size at unit " + g.unit_id(u));
  if (!r.ok()) return r;

  r.merge(validate_hom(projection_hom(e)), "proj.");
  std::vector<char> hit(g.num_arrows(), 0);
  for (int p : e.proj)
    if (p >= 0 && p < g.num_arrows()) hit[p] = 1;
  for (int a = 0; a < g.num_arrows(); ++a)
    if (!hit[a]) r.add("proj.surjective", g.arrow_id(a));

  std::vector<char> image(s.num_arrows(), 0);
  for (int u = 0; u < g.num_units(); ++u) {
    const auto& f = e.kernel().fiber(u);
    for (long long i = 0; i < f.order(); ++i) {
      const int x = e.iota[u][i];
      if (x < 0 || x >= s.num_arrows()) {
        r.add("iota.range", g.unit_id(u) + ":" + f.format(f.element(i)));
        continue;
      }
      if (image[x]) r.add("iota.injective", s.arrow_id(x));
      image[x] = 1;
      if (s.src(x) != u || s.tgt(x) != u) r.add("iota.endpoints", s.arrow_id(x));
    }
  }
  if (!r.ok()) return r;
  for (int u = 0; u < g.num_units(); ++u) {
    const auto& f = e.kernel().fiber(u);
    for (long long i = 0; i < f.order(); ++i)
      for (long long j = 0; j < f.order(); ++j) {
        const long long k = f.index_of(f.add(f.element(i), f.element(j)));
        if (s.comp(e.iota[u][i], e.iota[u][j]) != e.iota[u][k])
          r.add("iota.hom", pair_id(s.arrow_id(e.iota[u][i]), s.arrow_id(e.iota[u][j])));
      }
  }
  for (int x = 0; x < s.num_arrows(); ++x)
    if (static_cast<bool>(image[x]) != g.is_unit_arrow(e.proj[x])) r.add("exactness", s.arrow_id(x));
  if (!r.ok()) return r;

  for (int x = 0; x < s.num_arrows(); ++x) {
    const auto& f = e.kernel().fiber(s.src(x));
    for (long long i = 0; i < f.order(); ++i) {
      const int conj = s.comp(s.comp(x, e.iota[s.src(x)][i]), s.inv(x));
      if (conj != e.iota_of(s.tgt(x), e.action.apply(e.proj[x], f.element(i))))
        r.add("compatibility", pair_id(s.arrow_id(x), f.format(f.element(i))));
    }
  }
  return r;
}

Extension twisted_semidirect(const GroupoidAction& act, const PairFunction& phi) {
  const auto& g = *act.groupoid();
  const auto& bundle = act.bundle();
  if (!bundle.is_finite()) throw Error("extension tables need finite fibres");
  const FibreTables tab(bundle);
  const int na = g.num_arrows();
  const auto off = sd_offsets(act);
  const int n = off[na];

  std::vector<long long> ph(static_cast<std::size_t>(na) * na, 0);
  if (phi)
    for (int a = 0; a < na; ++a)
      for (int b : g.arrows_into(g.src(a))) {
        const auto& f = bundle.fiber(g.tgt(a));
        const Element v = phi(a, b);
        if (!f.contains(v)) throw Error("cocycle value outside the fibre at " + pair_id(g.arrow_id(a), g.arrow_id(b)));
        ph[at(a, b, na)] = f.index_of(v);
      }

  std::vector<std::string> ids(n);
  std::vector<int> src(n), tgt(n), inv(n), comp(static_cast<std::size_t>(n) * n, kNone);
  Extension e;
  e.proj.resize(n);
  for (int a = 0; a < na; ++a) {
    const auto& f = bundle.fiber(g.tgt(a));
    for (long long i = 0; i < f.order(); ++i) {
      const int x = off[a] + static_cast<int>(i);
      ids[x] = "(" + f.format(f.element(i)) + "," + g.arrow_id(a) + ")";
      src[x] = g.src(a);
      tgt[x] = g.tgt(a);
      e.proj[x] = a;
    }
  }
  for (int a = 0; a < na; ++a) {
    const int r = g.tgt(a);
    const int ai = g.inv(a);
    for (long long i = 0; i < tab.order[r]; ++i) {
      const int x = off[a] + static_cast<int>(i);
      // (a_i, a)^-1 = (-(a^-1 . a_i) - phi(a^-1, a), a^-1)
      const long long moved = act.apply_index(ai, i);
      inv[x] = off[ai] + static_cast<int>(tab.neg[g.src(a)][tab.plus(g.src(a), moved, ph[at(ai, a, na)])]);
      for (int b : g.arrows_into(g.src(a))) {
        const int ab = g.comp(a, b);
        for (long long j = 0; j < tab.order[g.tgt(b)]; ++j) {
          const long long k = tab.plus(r, tab.plus(r, i, act.apply_index(a, j)), ph[at(a, b, na)]);
          comp[at(x, off[b] + static_cast<int>(j), n)] = off[ab] + static_cast<int>(k);
        }
      }
    }
  }
  e.total = share(FiniteGroupoid::from_tables(g.unit_ids(), std::move(ids), std::move(src),
                                              std::move(tgt), std::move(comp), std::move(inv)));
  e.action = act;
  e.iota.resize(g.num_units());
  for (int u = 0; u < g.num_units(); ++u)
    for (long long i = 0; i < tab.order[u]; ++i) e.iota[u].push_back(off[g.unit_arrow(u)] + static_cast<int>(i));
  return e;
}

Extension semidirect(const GroupoidAction& act) {
  const Report r = validate_action(act);
  if (!r.ok()) throw Error("semidirect: invalid action: " + r.violations().front().check + " at " +
                           r.violations().front().witness);
  return twisted_semidirect(act, nullptr);
}

std::vector<int> canonical_section(const Extension& e) {
  const auto& s = *e.total;
  const auto& g = *e.base();
  std::vector<int> tau(g.num_arrows(), kNone);
  for (int x = 0; x < s.num_arrows(); ++x) {
    const int a = e.proj[x];
    if (tau[a] == kNone || s.arrow_id(x) < s.arrow_id(tau[a])) tau[a] = x;
  }
  for (int u = 0; u < g.num_units(); ++u) tau[g.unit_arrow(u)] = s.unit_arrow(u);
  return tau;
}

// ---------------------------------------------------------------------------

PushoutResult pushout(const BundleHom& f, const GroupoidAction& target, const Extension& e) {
  if (!(f.source == e.kernel()) || !(f.target == target.bundle()))
    throw Error("pushout: hom does not match the kernel and target bundles");
  if (!same_groupoid(target.groupoid(), e.base())) throw Error("pushout: target action over a different groupoid");
  {
    const Report r = validate_bundle_hom(f, e.action, target);
    if (!r.ok())
      throw Error("pushout: hom is not equivariant: " + r.violations().front().check + " at " +
                  r.violations().front().witness);
    const Report v = validate_extension(e);
    if (!v.ok())
      throw Error("pushout: invalid extension: " + v.violations().front().check + " at " +
                  v.violations().front().witness);
  }
  const Extension sd = semidirect(target);
  const auto fp = fibered_product(projection_hom(sd), projection_hom(e));
  const auto& g = *e.base();
  const auto& s = *e.total;

  // theta(a) = ((-f(a), u), iota(a))
  std::vector<int> theta;
  for (int u = 0; u < g.num_units(); ++u) {
    const auto& a = e.kernel().fiber(u);
    const auto& b = target.bundle().fiber(u);
    for (long long i = 0; i < a.order(); ++i) {
      const Element fa = f.apply(u, a.element(i));
      theta.push_back(fp.lookup(sd.iota_of(u, b.neg(fa)), e.iota[u][i]));
    }
  }
  const Quotient q = quotient_by_normal_subgroupoid(fp.groupoid, theta);

  PushoutResult out;
  Extension& x = out.extension;
  x.total = q.groupoid;
  x.action = target;
  x.iota.resize(g.num_units());
  for (int u = 0; u < g.num_units(); ++u)
    for (int b : sd.iota[u]) x.iota[u].push_back(q.projection(fp.lookup(b, s.unit_arrow(u))));
  x.proj.assign(q.groupoid->num_arrows(), kNone);
  for (int d = 0; d < fp.groupoid->num_arrows(); ++d)
    x.proj[q.projection(d)] = sd.proj[fp.components[d].first];

  const auto off = sd_offsets(target);  // (0, gamma) is the first arrow of each block
  out.map = GroupoidHom{e.total, q.groupoid, {}, {}};
  for (int sigma = 0; sigma < s.num_arrows(); ++sigma)
    out.map.arrow_map.push_back(q.projection(fp.lookup(off[e.proj[sigma]], sigma)));
  out.map.unit_map.resize(g.num_units());
  std::iota(out.map.unit_map.begin(), out.map.unit_map.end(), 0);

  // the diagram f_* iota = iota_* f, p_* f_* = p
  for (int u = 0; u < g.num_units(); ++u) {
    const auto& a = e.kernel().fiber(u);
    for (long long i = 0; i < a.order(); ++i)
      if (out.map(e.iota[u][i]) != x.iota_of(u, f.apply(u, a.element(i))))
        throw Error("pushout: left square does not commute");
  }
  for (int sigma = 0; sigma < s.num_arrows(); ++sigma)
    if (x.proj[out.map(sigma)] != e.proj[sigma]) throw Error("pushout: right square does not commute");
  return out;
}

Extension fibered_product_extension(const Extension& e1, const Extension& e2) {
  if (!same_groupoid(e1.base(), e2.base())) throw Error("fibred product: extensions over different groupoids");
  const auto fp = fibered_product(projection_hom(e1), projection_hom(e2));
  Extension e;
  e.total = fp.groupoid;
  e.action = fibered_product_action(e1.action, e2.action);
  const auto& g = *e1.base();
  e.iota.resize(g.num_units());
  for (int u = 0; u < g.num_units(); ++u)
    for (int a1 : e1.iota[u])
      for (int a2 : e2.iota[u]) e.iota[u].push_back(fp.lookup(a1, a2));
  for (const auto& [a1, a2] : fp.components) e.proj.push_back(e1.proj[a1]);
  return e;
}

Extension baer_sum(const Extension& e1, const Extension& e2) {
  if (!same_extension_data(e1, e2)) throw Error("baer sum: extensions over different data");
  const Extension fp = fibered_product_extension(e1, e2);
  return pushout(nabla(e1.kernel()), e1.action, fp).extension;
}

Extension inverse_ext(const Extension& e) {
  Extension out = e;
  for (int u = 0; u < e.base()->num_units(); ++u) {
    const auto& f = e.kernel().fiber(u);
    for (long long i = 0; i < f.order(); ++i) out.iota[u][i] = e.iota_of(u, f.neg(f.element(i)));
  }
  return out;
}

Extension restrict_extension(const Extension& e, const std::vector<int>& units_in) {
  const auto& g = *e.base();
  std::vector<int> units = units_in;
  std::sort(units.begin(), units.end());
  units.erase(std::unique(units.begin(), units.end()), units.end());
  if (!is_invariant(g, units)) throw Error("restriction to a non-invariant set of units");
  const Reduction rs = restrict_indexed(*e.total, units);
  const Reduction rg = restrict_indexed(g, units);
  std::vector<int> s_new(e.total->num_arrows(), kNone), g_new(g.num_arrows(), kNone);
  for (std::size_t i = 0; i < rs.arrow_to_parent.size(); ++i) s_new[rs.arrow_to_parent[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < rg.arrow_to_parent.size(); ++i) g_new[rg.arrow_to_parent[i]] = static_cast<int>(i);

  std::vector<AbelianGroup> fibers;
  for (int u : units) fibers.push_back(e.kernel().fiber(u));
  std::vector<ExponentMatrix> ms;
  for (int a : rg.arrow_to_parent) ms.push_back(e.action.matrix(a));
  Extension out;
  out.total = rs.groupoid;
  out.action = GroupoidAction(rg.groupoid, GroupBundle(rg.groupoid->unit_ids(), fibers), ms);
  for (int u : units) {
    out.iota.emplace_back();
    for (int x : e.iota[u]) out.iota.back().push_back(s_new[x]);
  }
  for (int x : rs.arrow_to_parent) out.proj.push_back(g_new[e.proj[x]]);
  return out;
}

// ---------------------------------------------------------------------------

bool same_extension_data(const Extension& e1, const Extension& e2) {
  return e1.action.same_as(e2.action);
}

Report verify_proper_isomorphism(const Extension& e1, const Extension& e2, const GroupoidHom& f) {
  Report r = validate_hom(f);
  if (!r.ok()) return r;
  if (!is_bijective(f)) r.add("bijective", "map is not a bijection");
  for (std::size_t u = 0; u < e1.iota.size(); ++u)
    for (std::size_t i = 0; i < e1.iota[u].size(); ++i)
      if (f(e1.iota[u][i]) != e2.iota[u][i]) r.add("iota", e1.total->arrow_id(e1.iota[u][i]));
  for (int x = 0; x < e1.total->num_arrows(); ++x)
    if (e2.proj[f(x)] != e1.proj[x]) r.add("proj", e1.total->arrow_id(x));
  return r;
}

namespace {

GroupoidHom unit_fixing_hom(const Extension& e1, const Extension& e2, std::vector<int> arrows) {
  GroupoidHom h{e1.total, e2.total, std::move(arrows), {}};
  h.unit_map.resize(e1.total->num_units());
  std::iota(h.unit_map.begin(), h.unit_map.end(), 0);
  return h;
}

// f(iota1(a) tau1(gamma)) = iota2(a) t(gamma)
GroupoidHom extend_from_lifts(const Extension& e1, const Extension& e2, const std::vector<int>& tau1,
                              const std::vector<int>& t, const std::vector<int>& shift) {
  const auto& s1 = *e1.total;
  const auto& s2 = *e2.total;
  const auto inv1 = iota_inverse(e1);
  const FibreTables tab(e1.kernel());
  std::vector<int> arrows(s1.num_arrows());
  for (int x = 0; x < s1.num_arrows(); ++x) {
    const int gamma = e1.proj[x];
    const auto [u, a] = inv1[s1.comp(x, s1.inv(tau1[gamma]))];
    const long long b = shift.empty() ? a : tab.plus(u, a, shift[gamma]);
    arrows[x] = s2.comp(e2.iota[u][b], t[gamma]);
  }
  return unit_fixing_hom(e1, e2, std::move(arrows));
}

class LiftSearch {
 public:
  LiftSearch(const Extension& e1, const Extension& e2, long long cap)
      : e1_(e1), e2_(e2), g_(*e1.base()), cap_(cap), tab_(e1.kernel()) {
    const auto& s1 = *e1.total;
    const auto& s2 = *e2.total;
    tau1_ = canonical_section(e1);
    const auto inv1 = iota_inverse(e1);
    const int na = g_.num_arrows();
    // iota2(-c1(g1,g2)) where tau1(g1) tau1(g2) = iota1(c1) tau1(g1 g2)
    fix_.assign(static_cast<std::size_t>(na) * na, kNone);
    for (int a = 0; a < na; ++a)
      for (int b : g_.arrows_into(g_.src(a))) {
        const int k = s1.comp(s1.comp(tau1_[a], tau1_[b]), s1.inv(tau1_[g_.comp(a, b)]));
        const auto [u, c] = inv1[k];
        fix_[at(a, b, na)] = e2.iota[u][tab_.neg[u][c]];
      }
    fibre_.resize(na);
    for (int x = 0; x < s2.num_arrows(); ++x) fibre_[e2.proj[x]].push_back(x);
    t_.assign(na, kNone);
    order_.resize(na);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](int a, int b) {
      return std::pair{g_.src(a), g_.tgt(a)} < std::pair{g_.src(b), g_.tgt(b)};
    });
  }

  IsoStatus run() {
    for (int u = 0; u < g_.num_units(); ++u)
      if (!assign(g_.unit_arrow(u), e2_.total->unit_arrow(u))) return IsoStatus::NotIsomorphic;
    const IsoStatus st = dfs(0);
    return st;
  }

  long long nodes() const { return nodes_; }
  const std::vector<int>& lifts() const { return t_; }
  const std::vector<int>& section() const { return tau1_; }

 private:
  bool derive(int a, int b, std::vector<int>& queue) {
    const auto& s2 = *e2_.total;
    const int na = g_.num_arrows();
    const int ab = g_.comp(a, b);
    const int want = s2.comp(fix_[at(a, b, na)], s2.comp(t_[a], t_[b]));
    if (t_[ab] == kNone) {
      t_[ab] = want;
      trail_.push_back(ab);
      queue.push_back(ab);
      return true;
    }
    return t_[ab] == want;
  }

  bool assign(int a, int lift) {
    if (t_[a] != kNone) return t_[a] == lift;
    t_[a] = lift;
    trail_.push_back(a);
    std::vector<int> queue{a};
    while (!queue.empty()) {
      const int x = queue.back();
      queue.pop_back();
      for (int y = 0; y < g_.num_arrows(); ++y) {
        if (t_[y] == kNone) continue;
        if (g_.composable(x, y) && !derive(x, y, queue)) return false;
        if (y != x && g_.composable(y, x) && !derive(y, x, queue)) return false;
      }
    }
    return true;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      t_[trail_.back()] = kNone;
      trail_.pop_back();
    }
  }

  IsoStatus dfs(std::size_t pos) {
    while (pos < order_.size() && t_[order_[pos]] != kNone) ++pos;
    if (pos == order_.size()) return IsoStatus::Isomorphic;
    const int a = order_[pos];
    for (int lift : fibre_[a]) {
      if (++nodes_ > cap_) return IsoStatus::Unknown;
      const std::size_t mark = trail_.size();
      if (assign(a, lift)) {
        const IsoStatus st = dfs(pos + 1);
        if (st != IsoStatus::NotIsomorphic) return st;
      }
      undo(mark);
    }
    return IsoStatus::NotIsomorphic;
  }

  const Extension& e1_;
  const Extension& e2_;
  const FiniteGroupoid& g_;
  long long cap_;
  long long nodes_ = 0;
  FibreTables tab_;
  std::vector<int> tau1_, fix_, t_, order_, trail_;
  std::vector<std::vector<int>> fibre_;
};

}  // namespace

IsoResult properly_isomorphic(const Extension& e1, const Extension& e2, const IsoOptions& opts) {
  if (!same_extension_data(e1, e2)) throw Error("properly_isomorphic: extensions over different data");
  IsoResult res;
  if (e1.total->num_arrows() != e2.total->num_arrows()) {
    res.status = IsoStatus::NotIsomorphic;
    res.method = "cardinality";
    return res;
  }
  if (opts.strategy == IsoStrategy::Auto && *e1.total == *e2.total && e1.iota == e2.iota &&
      e1.proj == e2.proj) {
    std::vector<int> id(e1.total->num_arrows());
    std::iota(id.begin(), id.end(), 0);
    res.status = IsoStatus::Isomorphic;
    res.witness = unit_fixing_hom(e1, e2, std::move(id));
    res.method = "table-equality";
    return res;
  }
  if (opts.strategy != IsoStrategy::Backtrack) {
    const Section tau1 = canonical_section(e1);
    const Section tau2 = canonical_section(e2);
    const auto c = cohomologous(cocycle_from_extension(e1, tau1), cocycle_from_extension(e2, tau2));
    res.method = "cohomology";
    if (!c) {
      res.status = IsoStatus::NotIsomorphic;
      return res;
    }
    std::vector<int> shift;
    for (int a = 0; a < e1.base()->num_arrows(); ++a)
      shift.push_back(e1.kernel().fiber(e1.base()->tgt(a)).index_of(c->values[a]));
    GroupoidHom f = extend_from_lifts(e1, e2, tau1, tau2, shift);
    if (verify_proper_isomorphism(e1, e2, f).ok()) {
      res.status = IsoStatus::Isomorphic;
      res.witness = std::move(f);
      return res;
    }
    if (opts.strategy == IsoStrategy::Cohomology)
      throw Error("properly_isomorphic: cohomology witness failed verification");
  }
  LiftSearch search(e1, e2, opts.max_nodes);
  res.status = search.run();
  res.nodes = search.nodes();
  res.method = "backtracking";
  if (res.status == IsoStatus::Isomorphic) {
    GroupoidHom f = extend_from_lifts(e1, e2, search.section(), search.lifts(), {});
    const Report r = verify_proper_isomorphism(e1, e2, f);
    if (!r.ok()) throw Error("properly_isomorphic: search witness failed verification: " + r.to_string());
    res.witness = std::move(f);
  }
  return res;
}

// ---------------------------------------------------------------------------

DualData dual_data(const GroupoidAction& act, long long modulus) {
  DualData d;
  d.dual = dual_bundle(act, modulus);
  d.base = transformation_groupoid(act.groupoid(), d.dual.space);
  const auto& h = *d.base.groupoid;
  std::vector<AbelianGroup> fibers;
  for (int p = 0; p < d.dual.num_points(); ++p) fibers.push_back(act.bundle().fiber(d.dual.point_unit[p]));
  std::vector<ExponentMatrix> ms;
  for (int x = 0; x < h.num_arrows(); ++x) ms.push_back(act.matrix(d.base.base_arrow_of[x]));
  d.kernel_action = GroupoidAction(d.base.groupoid, GroupBundle(h.unit_ids(), std::move(fibers)), std::move(ms));
  return d;
}

Extension action_extension(const Extension& e, const DualData& d) {
  if (!(d.dual.characters.bundle == e.kernel()) || !same_groupoid(d.base.groupoid, d.kernel_action.groupoid()))
    throw Error("action extension: dual data does not belong to this extension");
  const auto& s = *e.total;
  const int ns = s.num_arrows();
  const int ng = e.base()->num_arrows();
  RightSpace xs;
  xs.points = d.dual.space.points;
  xs.anchor = d.dual.space.anchor;
  xs.act.assign(static_cast<std::size_t>(xs.num_points()) * ns, kNone);
  for (int p = 0; p < xs.num_points(); ++p)
    for (int x : s.arrows_into(xs.anchor[p])) xs.act[at(p, x, ns)] = d.dual.space.apply(p, e.proj[x], ng);
  const ActionGroupoid ag = transformation_groupoid(e.total, xs);
  Extension out;
  out.total = ag.groupoid;
  out.action = d.kernel_action;
  for (int p = 0; p < xs.num_points(); ++p) {
    out.iota.emplace_back();
    for (int x : e.iota[xs.anchor[p]]) out.iota.back().push_back(ag.lookup(p, x));
  }
  for (int x = 0; x < ag.groupoid->num_arrows(); ++x)
    out.proj.push_back(d.base.lookup(ag.point_of[x], e.proj[ag.base_arrow_of[x]]));
  return out;
}

namespace {

long long t_modulus(const Extension& e, long long modulus) {
  return modulus == 0 ? e.kernel().exponent() : modulus;
}

}  // namespace

TGroupoid t_groupoid(const Extension& e, long long modulus) {
  TGroupoid t;
  t.modulus = t_modulus(e, modulus);
  t.data = dual_data(e.action, t.modulus);
  const Extension ae = action_extension(e, t.data);
  const auto& h = t.data.base.groupoid;
  const GroupBundle mu = root_of_unity_bundle(*h, t.modulus);
  const GroupoidAction target = GroupoidAction::trivial(h, mu);
  BundleHom f{ae.kernel(), mu, {}};
  for (int p = 0; p < t.data.dual.num_points(); ++p) {
    const auto& fib = ae.kernel().fiber(p);
    const Element& chi = t.data.dual.point_character[p];
    ExponentMatrix row(1, std::vector<long long>(fib.rank()));
    for (int i = 0; i < fib.rank(); ++i) row[0][i] = (t.modulus / fib.factors()[i]) * chi[i];
    f.matrices.push_back(std::move(row));
  }
  t.extension = pushout(f, target, ae).extension;
  return t;
}

TGroupoid t_groupoid_quotient_model(const Extension& e, long long modulus) {
  TGroupoid t;
  t.modulus = t_modulus(e, modulus);
  t.data = dual_data(e.action, t.modulus);
  const Extension ae = action_extension(e, t.data);
  const auto& total = ae.total;
  // D = mu_N x (Ahat x| Sigma), a central product
  const GroupoidAction on_total =
      GroupoidAction::trivial(total, root_of_unity_bundle(*total, t.modulus));
  const Extension d = twisted_semidirect(on_total, nullptr);
  const auto off = sd_offsets(on_total);
  const AbelianGroup zn({t.modulus});

  std::vector<int> h;
  for (int p = 0; p < t.data.dual.num_points(); ++p) {
    const auto& fib = ae.kernel().fiber(p);
    for (long long i = 0; i < fib.order(); ++i) {
      const long long z = pairing(t.data.dual.characters, t.data.dual.point_unit[p],
                                  t.data.dual.point_character[p], fib.element(i))
                              .exponent;
      h.push_back(off[ae.iota[p][i]] + static_cast<int>(mod_floor(-z, t.modulus)));
    }
  }
  const Quotient q = quotient_by_normal_subgroupoid(d.total, h);
  const auto& base = t.data.base.groupoid;
  t.extension.total = q.groupoid;
  t.extension.action = GroupoidAction::trivial(base, root_of_unity_bundle(*base, t.modulus));
  for (int p = 0; p < t.data.dual.num_points(); ++p) {
    t.extension.iota.emplace_back();
    for (long long z = 0; z < t.modulus; ++z)
      t.extension.iota.back().push_back(q.projection(off[total->unit_arrow(p)] + static_cast<int>(z)));
  }
  t.extension.proj.assign(q.groupoid->num_arrows(), kNone);
  for (int x = 0; x < d.total->num_arrows(); ++x)
    t.extension.proj[q.projection(x)] = ae.proj[d.proj[x]];
  return t;
}

}  // namespace gext
