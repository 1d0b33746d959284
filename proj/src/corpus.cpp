#include "gext/corpus.hpp"

#include "gext/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>

namespace gext {

namespace {

bool wanted(const CorpusOptions& opts, const std::string& family) {
  return opts.families.empty() ||
         std::find(opts.families.begin(), opts.families.end(), family) != opts.families.end();
}

std::vector<long long> element_permutation(const ExponentMatrix& m, const AbelianGroup& a) {
  std::vector<long long> p(static_cast<std::size_t>(a.order()));
  for (long long i = 0; i < a.order(); ++i) p[i] = a.index_of(apply_matrix(m, a.element(i), a));
  return p;
}

struct Fibres {
  std::string name;
  std::vector<AbelianGroup> per_orbit;  // one entry per orbit; shorter lists repeat the last
};

GroupBundle bundle_over(const FiniteGroupoid& g, const Fibres& f) {
  const InvariantPartition orbits = orbit_partition(g);
  std::vector<AbelianGroup> fibers;
  for (int u = 0; u < g.num_units(); ++u) {
    const auto k = std::min<std::size_t>(orbits.label[u], f.per_orbit.size() - 1);
    fibers.push_back(f.per_orbit[k]);
  }
  return GroupBundle(g.unit_ids(), std::move(fibers));
}

std::string group_name(const AbelianGroup& a) {
  std::string s;
  for (auto d : a.factors()) s += (s.empty() ? "Z" : "xZ") + std::to_string(d);
  return s.empty() ? "0" : s;
}

Cocycle2 class_representative(const CohomologyGroup& h, const std::vector<long long>& coords,
                              const GroupoidAction& act) {
  Cocycle2 phi = Cocycle2::zero(act);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] != 0) phi = add(phi, scale(h.basis[i], coords[i]));
  return phi;
}

Cochain1 random_cochain(const GroupoidAction& act, std::mt19937_64& rng) {
  Cochain1 c = Cochain1::zero(act);
  const auto& g = *act.groupoid();
  for (int a = 0; a < g.num_arrows(); ++a) {
    if (g.is_unit_arrow(a)) continue;
    const auto& f = act.bundle().fiber(g.tgt(a));
    c.values[a] = f.element(std::uniform_int_distribution<long long>(0, f.order() - 1)(rng));
  }
  return c;
}

Extension scrambled(const Cocycle2& phi, std::mt19937_64& rng) {
  const Cocycle2 psi = add(phi, coboundary(random_cochain(phi.action, rng)));
  Extension e = extension_from_cocycle(psi);
  std::vector<int> perm(e.total->num_arrows());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return relabel(e, perm);
}

}  // namespace

std::vector<ExponentMatrix> homomorphisms(const AbelianGroup& a, const AbelianGroup& b) {
  if (!a.is_finite() || !b.is_finite()) throw Error("homomorphisms: finite groups only");
  const int rows = b.rank(), cols = a.rank();
  std::vector<ExponentMatrix> out;
  ExponentMatrix m(rows, std::vector<long long>(cols, 0));
  std::function<void(int)> rec = [&](int pos) {
    if (pos == rows * cols) {
      if (well_defined(m, a, b)) out.push_back(m);
      return;
    }
    const int i = pos / cols, j = pos % cols;
    for (long long v = 0; v < b.factors()[i]; ++v) {
      m[i][j] = v;
      rec(pos + 1);
    }
    m[i][j] = 0;
  };
  rec(0);
  return out;
}

std::vector<ExponentMatrix> automorphisms(const AbelianGroup& a) {
  std::vector<ExponentMatrix> out;
  for (auto& m : homomorphisms(a, a)) {
    auto p = element_permutation(m, a);
    std::sort(p.begin(), p.end());
    if (std::adjacent_find(p.begin(), p.end()) == p.end()) out.push_back(std::move(m));
  }
  return out;
}

std::vector<GroupoidAction> all_actions(const GroupoidPtr& gp, const GroupBundle& bundle, int cap) {
  const auto& g = *gp;
  if (!bundle.is_finite()) throw Error("all_actions: finite bundles only");
  const int n = g.num_arrows();
  std::vector<std::vector<ExponentMatrix>> cand(n);
  std::vector<std::vector<std::vector<long long>>> perms(n);
  for (int a = 0; a < n; ++a) {
    const auto& s = bundle.fiber(g.src(a));
    const auto& t = bundle.fiber(g.tgt(a));
    if (!(s == t)) return {};
    if (g.is_unit_arrow(a)) {
      cand[a] = {identity_matrix(s.rank())};
    } else {
      cand[a] = automorphisms(s);
    }
    for (const auto& m : cand[a]) perms[a].push_back(element_permutation(m, s));
  }
  // composable triples checked once all three arrows are assigned
  std::vector<std::vector<std::array<int, 3>>> due(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int ab = g.comp(a, b);
      if (ab == FiniteGroupoid::kNone) continue;
      due[std::max({a, b, ab})].push_back({a, b, ab});
    }
  std::vector<int> choice(n, 0);
  std::vector<GroupoidAction> out;
  std::function<void(int)> rec = [&](int x) {
    if (cap > 0 && static_cast<int>(out.size()) >= cap) return;
    if (x == n) {
      std::vector<ExponentMatrix> ms;
      for (int a = 0; a < n; ++a) ms.push_back(cand[a][choice[a]]);
      out.emplace_back(gp, bundle, std::move(ms));
      return;
    }
    for (std::size_t c = 0; c < cand[x].size(); ++c) {
      choice[x] = static_cast<int>(c);
      bool ok = true;
      for (const auto& [a, b, ab] : due[x]) {
        const auto& pa = perms[a][choice[a]];
        const auto& pb = perms[b][choice[b]];
        const auto& pab = perms[ab][choice[ab]];
        for (std::size_t i = 0; i < pab.size() && ok; ++i) ok = pa[pb[i]] == pab[i];
        if (!ok) break;
      }
      if (ok) rec(x + 1);
    }
  };
  rec(0);
  return out;
}

Extension relabel(const Extension& e, const std::vector<int>& perm) {
  const int n = e.total->num_arrows();
  if (static_cast<int>(perm.size()) != n) throw Error("relabel: permutation has the wrong size");
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i) pos.at(perm[i]) = i;
  Extension out;
  out.action = e.action;
  out.total = share(permute_arrows(*e.total, perm));
  out.iota = e.iota;
  for (auto& row : out.iota)
    for (auto& s : row) s = pos[s];
  out.proj.resize(n);
  for (int i = 0; i < n; ++i) out.proj[i] = e.proj[perm[i]];
  return out;
}

std::vector<std::vector<int>> set_partitions(int k, long long cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(k, 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == k) {
      if (static_cast<long long>(out.size()) >= cap)
        throw Error("set_partitions: more than " + std::to_string(cap) + " partitions of " + std::to_string(k));
      out.push_back(rgs);
      return;
    }
    for (int b = 0; b <= blocks; ++b) {
      rgs[i] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

std::vector<NamedGroupoid> corpus_bases(const CorpusOptions& opts) {
  std::vector<NamedGroupoid> all;
  if (wanted(opts, "cyclic"))
    for (int n = 1; n <= 6; ++n) all.push_back({"cyclic", "Z" + std::to_string(n), cyclic_group(n)});
  if (wanted(opts, "klein")) all.push_back({"klein", "Z2xZ2", abelian_group({2, 2})});
  if (wanted(opts, "s3")) all.push_back({"s3", "S3", symmetric_group3()});
  if (wanted(opts, "pair")) {
    all.push_back({"pair", "P2", pair_groupoid(2)});
    all.push_back({"pair", "P2+Z1", disjoint_union(pair_groupoid(2, "p"), cyclic_group(1, "q"))});
  }
  if (wanted(opts, "union")) {
    const std::vector<std::pair<int, int>> sizes = {{1, 1}, {2, 2}, {2, 3}, {3, 3}, {2, 4}};
    for (auto [a, b] : sizes)
      all.push_back({"union", "Z" + std::to_string(a) + "+Z" + std::to_string(b),
                     disjoint_union(cyclic_group(a, "a"), cyclic_group(b, "b"))});
  }
  std::vector<NamedGroupoid> out;
  for (auto& b : all)
    if (b.groupoid.num_arrows() <= opts.max_arrows) out.push_back(std::move(b));
  return out;
}

Corpus builtin_corpus(const CorpusOptions& opts) {
  Corpus corpus;
  std::mt19937_64 rng(0x5eed0000ULL + opts.seed);

  std::vector<Fibres> fibres;
  for (const std::vector<long long>& f : std::vector<std::vector<long long>>{{2}, {3}, {4}, {2, 2}}) {
    const AbelianGroup a(f);
    if (a.exponent() <= opts.max_exponent) fibres.push_back({group_name(a), {a}});
  }
  std::vector<Fibres> mixed;
  if (opts.max_exponent >= 4) mixed.push_back({"Z2|Z4", {AbelianGroup({2}), AbelianGroup({4})}});
  if (opts.max_exponent >= 4) mixed.push_back({"Z2xZ2|Z4", {AbelianGroup({2, 2}), AbelianGroup({4})}});

  auto add_data = [&](const std::string& name, const GroupoidAction& act) {
    CorpusData d;
    d.name = name;
    d.action = act;
    d.h2 = h2(act);
    const int di = static_cast<int>(corpus.data.size());
    long long total = 1;
    for (auto f : d.h2.invariant_factors) total *= f;
    const long long count = std::min<long long>(total, opts.max_classes);
    for (long long c = 0; c < count; ++c) {
      std::vector<long long> coords(d.h2.invariant_factors.size());
      long long rest = c;
      for (std::size_t i = coords.size(); i-- > 0;) {
        coords[i] = rest % d.h2.invariant_factors[i];
        rest /= d.h2.invariant_factors[i];
      }
      std::string label = "[";
      for (std::size_t i = 0; i < coords.size(); ++i) label += (i ? "," : "") + std::to_string(coords[i]);
      label += "]";
      CorpusItem item;
      item.name = name + "/" + label;
      item.data = di;
      item.coords = coords;
      item.extension = scrambled(class_representative(d.h2, coords, act), rng);
      corpus.items.push_back(std::move(item));
    }
    d.classes = static_cast<int>(count);
    corpus.data.push_back(std::move(d));
  };

  for (const auto& base : corpus_bases(opts)) {
    auto g = share(base.groupoid);
    std::vector<Fibres> fs = fibres;
    const auto orbits = orbit_partition(*g).label;
    if (std::any_of(orbits.begin(), orbits.end(), [](int l) { return l > 0; }))
      fs.insert(fs.end(), mixed.begin(), mixed.end());
    for (const auto& f : fs) {
      const GroupBundle bundle = bundle_over(*g, f);
      const auto actions = all_actions(g, bundle, opts.max_actions);
      int k = 0;
      for (const auto& act : actions) {
        const std::string label = act.is_trivial() ? "trivial" : "a" + std::to_string(k);
        ++k;
        add_data(base.name + "/" + f.name + "/" + label, act);
      }
    }
  }

  if (wanted(opts, "heisenberg")) {
    for (int n : {2, 3}) {
      const Extension h = heisenberg_extension(n);
      CorpusData d;
      d.name = "heisenberg-" + std::to_string(n);
      d.action = h.action;
      d.h2 = h2(h.action);
      d.classes = 1;
      std::vector<int> perm(h.total->num_arrows());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      CorpusItem item;
      item.name = d.name;
      item.data = static_cast<int>(corpus.data.size());
      item.extension = relabel(h, perm);
      corpus.data.push_back(std::move(d));
      corpus.items.push_back(std::move(item));
    }
  }
  return corpus;
}

}  // namespace gext
