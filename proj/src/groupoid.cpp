#include "gext/groupoid.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace gext {

namespace {

constexpr int kNone = FiniteGroupoid::kNone;

std::size_t at(int a, int b, int n) { return static_cast<std::size_t>(a) * n + b; }

}  // namespace

std::string pair_id(std::string_view a, std::string_view b) {
  std::string s;
  s.reserve(a.size() + b.size() + 3);
  s += '(';
  s += a;
  s += ',';
  s += b;
  s += ')';
  return s;
}

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> units, const std::vector<ArrowSpec>& arrows,
                               const std::vector<std::array<std::string, 3>>& comp,
                               const std::vector<std::pair<std::string, std::string>>& inv)
    : unit_ids_(std::move(units)) {
  for (int u = 0; u < num_units(); ++u)
    if (!unit_lookup_.emplace(unit_ids_[u], u).second)
      throw Error("duplicate unit identifier '" + unit_ids_[u] + "'");
  for (const auto& spec : arrows) {
    const int a = static_cast<int>(arrow_ids_.size());
    if (!arrow_lookup_.emplace(spec.id, a).second)
      throw Error("duplicate arrow identifier '" + spec.id + "'");
    arrow_ids_.push_back(spec.id);
    src_.push_back(unit_index(spec.src));
    tgt_.push_back(unit_index(spec.tgt));
  }
  const int n = num_arrows();
  comp_.assign(static_cast<std::size_t>(n) * n, kNone);
  for (const auto& [a, b, ab] : comp) {
    auto& slot = comp_[at(arrow_index(a), arrow_index(b), n)];
    if (slot != kNone) throw Error("composition of (" + a + "," + b + ") given twice");
    slot = arrow_index(ab);
  }
  inv_.assign(n, kNone);
  for (const auto& [a, ai] : inv) {
    auto& slot = inv_[arrow_index(a)];
    if (slot != kNone) throw Error("inverse of '" + a + "' given twice");
    slot = arrow_index(ai);
  }
  unit_lookup_.clear();
  arrow_lookup_.clear();
  build_index();
}

FiniteGroupoid FiniteGroupoid::from_tables(std::vector<std::string> unit_ids,
                                           std::vector<std::string> arrow_ids, std::vector<int> src,
                                           std::vector<int> tgt, std::vector<int> comp,
                                           std::vector<int> inv) {
  FiniteGroupoid g;
  g.unit_ids_ = std::move(unit_ids);
  g.arrow_ids_ = std::move(arrow_ids);
  g.src_ = std::move(src);
  g.tgt_ = std::move(tgt);
  g.comp_ = std::move(comp);
  g.inv_ = std::move(inv);
  g.build_index();
  return g;
}

void FiniteGroupoid::build_index() {
  for (int u = 0; u < num_units(); ++u)
    if (!unit_lookup_.emplace(unit_ids_[u], u).second)
      throw Error("duplicate unit identifier '" + unit_ids_[u] + "'");
  for (int a = 0; a < num_arrows(); ++a)
    if (!arrow_lookup_.emplace(arrow_ids_[a], a).second)
      throw Error("duplicate arrow identifier '" + arrow_ids_[a] + "'");
  unit_arrow_.assign(num_units(), kNone);
  into_.assign(num_units(), {});
  for (int a = 0; a < num_arrows(); ++a) {
    into_[tgt_[a]].push_back(a);
    if (src_[a] == tgt_[a] && comp(a, a) == a && unit_arrow_[src_[a]] == kNone)
      unit_arrow_[src_[a]] = a;
  }
}

std::optional<int> FiniteGroupoid::find_unit(std::string_view id) const {
  auto it = unit_lookup_.find(std::string(id));
  if (it == unit_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FiniteGroupoid::find_arrow(std::string_view id) const {
  auto it = arrow_lookup_.find(std::string(id));
  if (it == arrow_lookup_.end()) return std::nullopt;
  return it->second;
}

int FiniteGroupoid::unit_index(std::string_view id) const {
  if (auto u = find_unit(id)) return *u;
  throw Error("unknown unit identifier '" + std::string(id) + "'");
}

int FiniteGroupoid::arrow_index(std::string_view id) const {
  if (auto a = find_arrow(id)) return *a;
  throw Error("unknown arrow identifier '" + std::string(id) + "'");
}

bool FiniteGroupoid::operator==(const FiniteGroupoid& o) const {
  return unit_ids_ == o.unit_ids_ && arrow_ids_ == o.arrow_ids_ && src_ == o.src_ &&
         tgt_ == o.tgt_ && comp_ == o.comp_ && inv_ == o.inv_;
}

// ---------------------------------------------------------------------------

GroupoidHom identity_hom(const GroupoidPtr& g) {
  GroupoidHom h{g, g, {}, {}};
  h.arrow_map.resize(g->num_arrows());
  std::iota(h.arrow_map.begin(), h.arrow_map.end(), 0);
  h.unit_map.resize(g->num_units());
  std::iota(h.unit_map.begin(), h.unit_map.end(), 0);
  return h;
}

GroupoidHom compose(const GroupoidHom& second, const GroupoidHom& first) {
  GroupoidHom h{first.domain, second.codomain, {}, {}};
  for (int a : first.arrow_map) h.arrow_map.push_back(second.arrow_map[a]);
  for (int u : first.unit_map) h.unit_map.push_back(second.unit_map[u]);
  return h;
}

Report validate_hom(const GroupoidHom& h) {
  Report r;
  const auto& d = *h.domain;
  const auto& c = *h.codomain;
  if (static_cast<int>(h.arrow_map.size()) != d.num_arrows() ||
      static_cast<int>(h.unit_map.size()) != d.num_units()) {
    r.add("shape", "map sizes do not match the domain");
    return r;
  }
  for (int a = 0; a < d.num_arrows(); ++a) {
    const int fa = h.arrow_map[a];
    if (fa < 0 || fa >= c.num_arrows()) {
      r.add("total", d.arrow_id(a));
      continue;
    }
    if (c.src(fa) != h.unit_map[d.src(a)] || c.tgt(fa) != h.unit_map[d.tgt(a)])
      r.add("endpoints", d.arrow_id(a));
    if (d.inv(a) != kNone && c.inv(fa) != h.arrow_map[d.inv(a)]) r.add("inverse", d.arrow_id(a));
  }
  if (!r.ok()) return r;
  for (int u = 0; u < d.num_units(); ++u)
    if (h.arrow_map[d.unit_arrow(u)] != c.unit_arrow(h.unit_map[u])) r.add("units", d.unit_id(u));
  for (int a = 0; a < d.num_arrows(); ++a)
    for (int b = 0; b < d.num_arrows(); ++b) {
      const int ab = d.comp(a, b);
      if (ab == kNone) continue;
      if (c.comp(h.arrow_map[a], h.arrow_map[b]) != h.arrow_map[ab])
        r.add("composition", pair_id(d.arrow_id(a), d.arrow_id(b)));
    }
  return r;
}

bool is_bijective(const GroupoidHom& h) {
  if (h.domain->num_arrows() != h.codomain->num_arrows()) return false;
  std::vector<char> hit(h.codomain->num_arrows(), 0);
  for (int fa : h.arrow_map) {
    if (fa < 0 || hit[fa]) return false;
    hit[fa] = 1;
  }
  return true;
}

// ---------------------------------------------------------------------------

Report validate_groupoid(const FiniteGroupoid& g) {
  Report r;
  const int n = g.num_arrows();
  for (int u = 0; u < g.num_units(); ++u) {
    int idempotents = 0;
    for (int a : g.arrows_into(u))
      if (g.src(a) == u && g.comp(a, a) == a) ++idempotents;
    if (idempotents != 1)
      r.add("identity", "unit '" + g.unit_id(u) + "' has " + std::to_string(idempotents) +
                            " idempotent arrows");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = g.comp(a, b);
      const bool should = g.src(a) == g.tgt(b);
      if ((ab != kNone) != should) {
        r.add("composability", pair_id(g.arrow_id(a), g.arrow_id(b)) +
                                   (should ? " missing" : " defined for non-composable pair"));
        continue;
      }
      if (ab != kNone && (g.src(ab) != g.src(b) || g.tgt(ab) != g.tgt(a)))
        r.add("endpoints", pair_id(g.arrow_id(a), g.arrow_id(b)));
    }
  if (!r.ok()) return r;  // the remaining checks assume well-formed composition
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = g.comp(a, b);
      if (ab == kNone) continue;
      for (int c = 0; c < n; ++c) {
        const int bc = g.comp(b, c);
        if (bc == kNone) continue;
        if (g.comp(ab, c) != g.comp(a, bc))
          r.add("associativity",
                "(" + g.arrow_id(a) + "," + g.arrow_id(b) + "," + g.arrow_id(c) + ")");
      }
    }
  for (int a = 0; a < n; ++a) {
    const int ut = g.unit_arrow(g.tgt(a));
    const int us = g.unit_arrow(g.src(a));
    if (ut == kNone || us == kNone) continue;
    if (g.comp(ut, a) != a || g.comp(a, us) != a) r.add("identity", g.arrow_id(a));
    const int ai = g.inv(a);
    if (ai == kNone) {
      r.add("inverse", g.arrow_id(a) + " has no inverse");
      continue;
    }
    if (g.comp(a, ai) != ut || g.comp(ai, a) != us) r.add("inverse", g.arrow_id(a));
    if (g.inv(ai) != a) r.add("involution", g.arrow_id(a));
  }
  return r;
}

Reduction restrict_indexed(const FiniteGroupoid& g, const std::vector<int>& units) {
  std::vector<int> unit_new(g.num_units(), kNone);
  Reduction red;
  std::vector<std::string> unit_ids;
  for (int u : units) {
    if (u < 0 || u >= g.num_units()) throw Error("unit index out of range");
    if (unit_new[u] != kNone) continue;
    unit_new[u] = static_cast<int>(unit_ids.size());
    unit_ids.push_back(g.unit_id(u));
    red.unit_to_parent.push_back(u);
  }
  std::vector<int> arrow_new(g.num_arrows(), kNone);
  std::vector<std::string> ids;
  std::vector<int> src, tgt;
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (unit_new[g.src(a)] == kNone || unit_new[g.tgt(a)] == kNone) continue;
    arrow_new[a] = static_cast<int>(ids.size());
    ids.push_back(g.arrow_id(a));
    src.push_back(unit_new[g.src(a)]);
    tgt.push_back(unit_new[g.tgt(a)]);
    red.arrow_to_parent.push_back(a);
  }
  const int m = static_cast<int>(ids.size());
  std::vector<int> comp(static_cast<std::size_t>(m) * m, kNone), inv(m, kNone);
  for (int i = 0; i < m; ++i) {
    const int a = red.arrow_to_parent[i];
    if (g.inv(a) != kNone) inv[i] = arrow_new[g.inv(a)];
    for (int j = 0; j < m; ++j) {
      const int ab = g.comp(a, red.arrow_to_parent[j]);
      if (ab != kNone) comp[at(i, j, m)] = arrow_new[ab];
    }
  }
  red.groupoid = share(FiniteGroupoid::from_tables(std::move(unit_ids), std::move(ids),
                                                   std::move(src), std::move(tgt),
                                                   std::move(comp), std::move(inv)));
  return red;
}

FiniteGroupoid restrict(const FiniteGroupoid& g, const std::vector<std::string>& unit_ids) {
  std::vector<int> units;
  for (const auto& id : unit_ids) units.push_back(g.unit_index(id));
  return *restrict_indexed(g, units).groupoid;
}

Quotient quotient_by_normal_subgroupoid(const GroupoidPtr& gp, const std::vector<int>& normal) {
  const auto& g = *gp;
  const int n = g.num_arrows();
  std::vector<char> in(n, 0);
  for (int a : normal) {
    if (a < 0 || a >= n) throw Error("subgroupoid arrow index out of range");
    in[a] = 1;
  }
  for (int u = 0; u < g.num_units(); ++u)
    if (!in[g.unit_arrow(u)]) throw Error("subgroupoid is not wide: missing unit " + g.unit_id(u));
  std::vector<std::vector<int>> at_unit(g.num_units());
  for (int a = 0; a < n; ++a) {
    if (!in[a]) continue;
    if (g.src(a) != g.tgt(a)) throw Error("subgroupoid not contained in isotropy: " + g.arrow_id(a));
    if (!in[g.inv(a)]) throw Error("subgroupoid not closed under inverses: " + g.arrow_id(a));
    at_unit[g.src(a)].push_back(a);
  }
  for (int u = 0; u < g.num_units(); ++u)
    for (int a : at_unit[u])
      for (int b : at_unit[u])
        if (!in[g.comp(a, b)])
          throw Error("subgroupoid not closed under composition: " +
                      pair_id(g.arrow_id(a), g.arrow_id(b)));
  // normality d N(s(d)) = N(r(d)) d, with a witness pair on failure
  for (int d = 0; d < n; ++d) {
    std::set<int> left, right;
    for (int x : at_unit[g.src(d)]) left.insert(g.comp(d, x));
    for (int y : at_unit[g.tgt(d)]) right.insert(g.comp(y, d));
    if (left != right) {
      int witness = *left.begin();
      for (int l : left)
        if (!right.count(l)) witness = l;
      throw Error("subgroupoid not normal: " + g.arrow_id(d) + " N contains " +
                  g.arrow_id(witness) + " which is not in N " + g.arrow_id(d));
    }
  }

  std::vector<int> coset(n, kNone);
  std::vector<std::string> names;
  std::vector<int> rep;
  for (int d = 0; d < n; ++d) {
    if (coset[d] != kNone) continue;
    const int c = static_cast<int>(rep.size());
    const std::string* best = &g.arrow_id(d);
    for (int x : at_unit[g.src(d)]) {
      const int dx = g.comp(d, x);
      coset[dx] = c;
      if (g.arrow_id(dx) < *best) best = &g.arrow_id(dx);
    }
    names.push_back(*best);
    rep.push_back(d);
  }
  const int m = static_cast<int>(rep.size());
  std::vector<int> src(m), tgt(m), inv(m), comp(static_cast<std::size_t>(m) * m, kNone);
  for (int i = 0; i < m; ++i) {
    src[i] = g.src(rep[i]);
    tgt[i] = g.tgt(rep[i]);
    inv[i] = coset[g.inv(rep[i])];
    for (int j = 0; j < m; ++j) {
      const int ab = g.comp(rep[i], rep[j]);
      if (ab != kNone) comp[at(i, j, m)] = coset[ab];
    }
  }
  auto q = share(FiniteGroupoid::from_tables(g.unit_ids(), std::move(names), std::move(src),
                                             std::move(tgt), std::move(comp), std::move(inv)));
  GroupoidHom pi{gp, q, coset, {}};
  pi.unit_map.resize(g.num_units());
  std::iota(pi.unit_map.begin(), pi.unit_map.end(), 0);
  return {q, std::move(pi)};
}

FiberedProduct fibered_product(const GroupoidHom& p1, const GroupoidHom& p2) {
  if (p1.codomain != p2.codomain && !(*p1.codomain == *p2.codomain))
    throw Error("fibred product: codomain mismatch");
  const auto& g1 = *p1.domain;
  const auto& g2 = *p2.domain;
  const bool unit_fixing = [&] {
    const int k = p1.codomain->num_units();
    if (g1.num_units() != k || g2.num_units() != k) return false;
    std::vector<int> s1(p1.unit_map), s2(p2.unit_map);
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    for (int i = 0; i < k; ++i)
      if (s1[i] != i || s2[i] != i) return false;
    return true;
  }();

  std::vector<int> unit_index(static_cast<std::size_t>(g1.num_units()) * g2.num_units(), kNone);
  std::vector<std::string> unit_ids;
  if (unit_fixing) {
    unit_ids = p1.codomain->unit_ids();
    for (int u1 = 0; u1 < g1.num_units(); ++u1)
      for (int u2 = 0; u2 < g2.num_units(); ++u2)
        if (p1.unit_map[u1] == p2.unit_map[u2])
          unit_index[at(u1, u2, g2.num_units())] = p1.unit_map[u1];
  } else {
    for (int u1 = 0; u1 < g1.num_units(); ++u1)
      for (int u2 = 0; u2 < g2.num_units(); ++u2)
        if (p1.unit_map[u1] == p2.unit_map[u2]) {
          unit_index[at(u1, u2, g2.num_units())] = static_cast<int>(unit_ids.size());
          unit_ids.push_back(pair_id(g1.unit_id(u1), g2.unit_id(u2)));
        }
  }

  FiberedProduct fp;
  fp.right_arrows = g2.num_arrows();
  fp.index.assign(static_cast<std::size_t>(g1.num_arrows()) * g2.num_arrows(), kNone);
  // bucket g2 arrows by image for a linear pass
  std::vector<std::vector<int>> by_image(p1.codomain->num_arrows());
  for (int a2 = 0; a2 < g2.num_arrows(); ++a2) by_image[p2.arrow_map[a2]].push_back(a2);
  std::vector<std::string> ids;
  std::vector<int> src, tgt;
  for (int a1 = 0; a1 < g1.num_arrows(); ++a1)
    for (int a2 : by_image[p1.arrow_map[a1]]) {
      fp.index[at(a1, a2, fp.right_arrows)] = static_cast<int>(ids.size());
      fp.components.emplace_back(a1, a2);
      ids.push_back(pair_id(g1.arrow_id(a1), g2.arrow_id(a2)));
      src.push_back(unit_index[at(g1.src(a1), g2.src(a2), g2.num_units())]);
      tgt.push_back(unit_index[at(g1.tgt(a1), g2.tgt(a2), g2.num_units())]);
    }
  const int m = static_cast<int>(ids.size());
  std::vector<int> comp(static_cast<std::size_t>(m) * m, kNone), inv(m);
  for (int i = 0; i < m; ++i) {
    const auto [a1, a2] = fp.components[i];
    inv[i] = fp.lookup(g1.inv(a1), g2.inv(a2));
    for (int j = 0; j < m; ++j) {
      const auto [b1, b2] = fp.components[j];
      const int c1 = g1.comp(a1, b1);
      const int c2 = g2.comp(a2, b2);
      if (c1 != kNone && c2 != kNone) comp[at(i, j, m)] = fp.lookup(c1, c2);
    }
  }
  fp.groupoid = share(FiniteGroupoid::from_tables(std::move(unit_ids), std::move(ids),
                                                  std::move(src), std::move(tgt),
                                                  std::move(comp), std::move(inv)));
  return fp;
}

Report validate_space(const FiniteGroupoid& g, const RightSpace& x) {
  Report r;
  const int na = g.num_arrows();
  if (x.anchor.size() != x.points.size() ||
      x.act.size() != static_cast<std::size_t>(x.num_points()) * na) {
    r.add("shape", "anchor/action table sizes do not match");
    return r;
  }
  for (int p = 0; p < x.num_points(); ++p) {
    if (x.anchor[p] < 0 || x.anchor[p] >= g.num_units()) {
      r.add("anchor", x.points[p]);
      return r;
    }
  }
  for (int p = 0; p < x.num_points(); ++p)
    for (int a = 0; a < na; ++a) {
      const int q = x.apply(p, a, na);
      const bool should = x.anchor[p] == g.tgt(a);
      if ((q != kNone) != should) {
        r.add("domain", pair_id(x.points[p], g.arrow_id(a)));
        continue;
      }
      if (q == kNone) continue;
      if (q < 0 || q >= x.num_points()) {
        r.add("range", pair_id(x.points[p], g.arrow_id(a)));
        continue;
      }
      if (x.anchor[q] != g.src(a)) r.add("anchor", pair_id(x.points[p], g.arrow_id(a)));
    }
  if (!r.ok()) return r;
  for (int p = 0; p < x.num_points(); ++p) {
    if (x.apply(p, g.unit_arrow(x.anchor[p]), na) != p) r.add("unit law", x.points[p]);
    for (int a : g.arrows_into(x.anchor[p])) {
      const int q = x.apply(p, a, na);
      for (int b : g.arrows_into(g.src(a)))
        if (x.apply(q, b, na) != x.apply(p, g.comp(a, b), na))
          r.add("composition law",
                "(" + x.points[p] + "," + g.arrow_id(a) + "," + g.arrow_id(b) + ")");
    }
  }
  return r;
}

ActionGroupoid transformation_groupoid(const GroupoidPtr& gp, const RightSpace& x) {
  const auto& g = *gp;
  const Report rep = validate_space(g, x);
  if (!rep.ok()) throw Error("action law violation: " + rep.violations().front().check + " at " +
                             rep.violations().front().witness);
  const int na = g.num_arrows();
  ActionGroupoid ag;
  ag.base_arrows = na;
  ag.index.assign(static_cast<std::size_t>(x.num_points()) * na, kNone);
  std::vector<std::string> ids;
  std::vector<int> src, tgt;
  for (int p = 0; p < x.num_points(); ++p)
    for (int a : g.arrows_into(x.anchor[p])) {
      ag.index[at(p, a, na)] = static_cast<int>(ids.size());
      ag.point_of.push_back(p);
      ag.base_arrow_of.push_back(a);
      ids.push_back(pair_id(x.points[p], g.arrow_id(a)));
      tgt.push_back(p);
      src.push_back(x.apply(p, a, na));
    }
  const int m = static_cast<int>(ids.size());
  std::vector<int> comp(static_cast<std::size_t>(m) * m, kNone), inv(m);
  for (int i = 0; i < m; ++i) {
    const int p = ag.point_of[i], a = ag.base_arrow_of[i];
    inv[i] = ag.lookup(src[i], g.inv(a));
    for (int b : g.arrows_into(g.src(a))) {
      const int j = ag.lookup(src[i], b);
      comp[at(i, j, m)] = ag.lookup(p, g.comp(a, b));
    }
  }
  ag.groupoid = share(FiniteGroupoid::from_tables(x.points, std::move(ids), std::move(src),
                                                  std::move(tgt), std::move(comp), std::move(inv)));
  return ag;
}

Report validate_partition(const FiniteGroupoid& g, const InvariantPartition& p) {
  Report r;
  if (static_cast<int>(p.label.size()) != g.num_units()) {
    r.add("shape", "one label per unit required");
    return r;
  }
  for (int a = 0; a < g.num_arrows(); ++a)
    if (p.label[g.src(a)] != p.label[g.tgt(a)]) r.add("invariance", g.arrow_id(a));
  return r;
}

std::vector<Reduction> invariant_partition_fibers(const FiniteGroupoid& g,
                                                  const InvariantPartition& p) {
  const Report rep = validate_partition(g, p);
  if (!rep.ok()) throw Error("non-invariant labelling at arrow " + rep.violations().front().witness);
  std::map<int, std::vector<int>> classes;
  for (int u = 0; u < g.num_units(); ++u) classes[p.label[u]].push_back(u);
  std::vector<Reduction> out;
  for (const auto& [label, units] : classes) out.push_back(restrict_indexed(g, units));
  return out;
}

InvariantPartition orbit_partition(const FiniteGroupoid& g) {
  std::vector<int> parent(g.num_units());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int u) { return parent[u] == u ? u : parent[u] = find(parent[u]); };
  for (int a = 0; a < g.num_arrows(); ++a) {
    const int x = find(g.src(a)), y = find(g.tgt(a));
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  }
  InvariantPartition p;
  std::map<int, int> number;
  for (int u = 0; u < g.num_units(); ++u) {
    const int root = find(u);
    auto it = number.emplace(root, static_cast<int>(number.size())).first;
    p.label.push_back(it->second);
  }
  return p;
}

bool is_invariant(const FiniteGroupoid& g, const std::vector<int>& units) {
  std::vector<char> in(g.num_units(), 0);
  for (int u : units) in[u] = 1;
  for (int a = 0; a < g.num_arrows(); ++a)
    if (in[g.src(a)] != in[g.tgt(a)]) return false;
  return true;
}

// ---------------------------------------------------------------------------

FiniteGroupoid group_from_table(const std::string& unit, std::vector<std::string> elements,
                                const std::vector<std::vector<int>>& mult) {
  const int n = static_cast<int>(elements.size());
  std::vector<int> comp(static_cast<std::size_t>(n) * n), inv(n, kNone);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      comp[at(a, b, n)] = mult[a][b];
      if (mult[a][b] == 0) inv[a] = b;
    }
  return FiniteGroupoid::from_tables({unit}, std::move(elements), std::vector<int>(n, 0),
                                     std::vector<int>(n, 0), std::move(comp), std::move(inv));
}

FiniteGroupoid abelian_group(const std::vector<int>& factors, const std::string& prefix) {
  int n = 1;
  for (int d : factors) {
    if (d < 1) throw Error("group factors must be positive");
    n *= d;
  }
  auto digits = [&](int x) {
    std::vector<int> v(factors.size());
    for (int i = static_cast<int>(factors.size()) - 1; i >= 0; --i) {
      v[i] = x % factors[i];
      x /= factors[i];
    }
    return v;
  };
  auto index = [&](const std::vector<int>& v) {
    int x = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) x = x * factors[i] + v[i];
    return x;
  };
  std::vector<std::string> names;
  for (int x = 0; x < n; ++x) {
    std::string s = prefix;
    const auto v = digits(x);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += '.';
      s += std::to_string(v[i]);
    }
    if (v.empty()) s += '0';
    names.push_back(s);
  }
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      auto va = digits(a);
      const auto vb = digits(b);
      for (std::size_t i = 0; i < va.size(); ++i) va[i] = (va[i] + vb[i]) % factors[i];
      mult[a][b] = index(va);
    }
  return group_from_table(prefix + "u", std::move(names), mult);
}

FiniteGroupoid cyclic_group(int n, const std::string& prefix) { return abelian_group({n}, prefix); }

FiniteGroupoid symmetric_group3(const std::string& prefix) {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::string> names;
  for (const auto& q : perms)
    names.push_back(prefix + std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  std::vector<std::vector<int>> mult(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];  // a after b
      mult[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return group_from_table(prefix + "u", std::move(names), mult);
}

FiniteGroupoid pair_groupoid(int k, const std::string& prefix) {
  std::vector<std::string> units, ids;
  std::vector<int> src, tgt;
  for (int i = 0; i < k; ++i) units.push_back(prefix + std::to_string(i));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      ids.push_back(prefix + "(" + std::to_string(i) + "," + std::to_string(j) + ")");
      tgt.push_back(i);
      src.push_back(j);
    }
  const int n = k * k;
  std::vector<int> comp(static_cast<std::size_t>(n) * n, kNone), inv(n);
  for (int a = 0; a < n; ++a) {
    inv[a] = src[a] * k + tgt[a];
    for (int b = 0; b < n; ++b)
      if (src[a] == tgt[b]) comp[at(a, b, n)] = tgt[a] * k + src[b];
  }
  return FiniteGroupoid::from_tables(std::move(units), std::move(ids), std::move(src),
                                     std::move(tgt), std::move(comp), std::move(inv));
}

FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  std::vector<std::string> units = a.unit_ids(), ids = a.arrow_ids();
  units.insert(units.end(), b.unit_ids().begin(), b.unit_ids().end());
  ids.insert(ids.end(), b.arrow_ids().begin(), b.arrow_ids().end());
  const int na = a.num_arrows(), nb = b.num_arrows(), n = na + nb, ua = a.num_units();
  std::vector<int> src(n), tgt(n), inv(n), comp(static_cast<std::size_t>(n) * n, kNone);
  for (int x = 0; x < na; ++x) {
    src[x] = a.src(x);
    tgt[x] = a.tgt(x);
    inv[x] = a.inv(x);
    for (int y = 0; y < na; ++y) comp[at(x, y, n)] = a.comp(x, y);
  }
  for (int x = 0; x < nb; ++x) {
    src[na + x] = ua + b.src(x);
    tgt[na + x] = ua + b.tgt(x);
    inv[na + x] = na + b.inv(x);
    for (int y = 0; y < nb; ++y) {
      const int c = b.comp(x, y);
      comp[at(na + x, na + y, n)] = c == kNone ? kNone : na + c;
    }
  }
  return FiniteGroupoid::from_tables(std::move(units), std::move(ids), std::move(src),
                                     std::move(tgt), std::move(comp), std::move(inv));
}

FiniteGroupoid permute_arrows(const FiniteGroupoid& g, const std::vector<int>& perm) {
  const int n = g.num_arrows();
  std::vector<int> back(n);
  for (int i = 0; i < n; ++i) back[perm[i]] = i;
  std::vector<std::string> ids(n);
  std::vector<int> src(n), tgt(n), inv(n), comp(static_cast<std::size_t>(n) * n, kNone);
  for (int i = 0; i < n; ++i) {
    const int a = perm[i];
    ids[i] = g.arrow_id(a);
    src[i] = g.src(a);
    tgt[i] = g.tgt(a);
    inv[i] = back[g.inv(a)];
    for (int j = 0; j < n; ++j) {
      const int c = g.comp(a, perm[j]);
      if (c != kNone) comp[at(i, j, n)] = back[c];
    }
  }
  return FiniteGroupoid::from_tables(g.unit_ids(), std::move(ids), std::move(src), std::move(tgt),
                                     std::move(comp), std::move(inv));
}

}  // namespace gext
