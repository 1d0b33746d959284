#include "gext/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "gext/cohomology.hpp"

namespace gext {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

std::size_t VerificationReport::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [s](const CheckResult& c) { return c.status == s; }));
}

Status VerificationReport::overall() const {
  if (count(Status::Fail)) return Status::Fail;
  if (count(Status::Unknown)) return Status::Unknown;
  return Status::Pass;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "ext-group-axioms",     "pushout-functoriality", "pushout-theorem", "compact-decomposition",
      "power-decomposition",  "bundle-decomposition",  "masa",            "cocycle-roundtrip"};
  return names;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  Status status = Status::Pass;
  std::string witness;
};

// A unit of work producing one or more checks, run on the pool.
using Task = std::function<std::vector<CheckResult>()>;

CheckResult timed(const std::string& name, const std::function<Outcome()>& f) {
  const auto t0 = Clock::now();
  CheckResult r;
  r.name = name;
  try {
    Outcome o = f();
    r.status = o.status;
    r.witness = std::move(o.witness);
  } catch (const std::exception& ex) {
    r.status = Status::Fail;
    r.witness = std::string("error: ") + ex.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

std::vector<CheckResult> run_tasks(const std::vector<Task>& tasks, int threads) {
  std::vector<std::vector<CheckResult>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        slots[i] = tasks[i]();
      } catch (const std::exception& ex) {
        slots[i] = {CheckResult{"task " + std::to_string(i), Status::Fail, std::string("error: ") + ex.what(), 0}};
      }
    }
  };
  int n = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  n = std::min<int>(n, static_cast<int>(std::max<std::size_t>(1, tasks.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<CheckResult> out;
  for (auto& s : slots)
    for (auto& c : s) out.push_back(std::move(c));
  return out;
}

Outcome expect_iso(const Extension& a, const Extension& b, long long max_nodes) {
  const IsoResult r = properly_isomorphic(a, b, {IsoStrategy::Backtrack, max_nodes});
  switch (r.status) {
    case IsoStatus::Isomorphic: return {Status::Pass, "isomorphic, " + std::to_string(r.nodes) + " nodes"};
    case IsoStatus::NotIsomorphic:
      return {Status::Fail, "no proper isomorphism (search exhausted, " + std::to_string(r.nodes) + " nodes)"};
    case IsoStatus::Unknown: break;
  }
  return {Status::Unknown, "node cap " + std::to_string(max_nodes) + " reached"};
}

std::string label_of(const CorpusItem& it) {
  const auto p = it.name.rfind('/');
  return p == std::string::npos ? it.name : it.name.substr(p + 1);
}

std::vector<std::vector<int>> items_by_data(const Corpus& c) {
  std::vector<std::vector<int>> by(c.data.size());
  for (int i = 0; i < static_cast<int>(c.items.size()); ++i) by[c.items[i].data].push_back(i);
  return by;
}

Fingerprint union_of(const std::vector<Fingerprint>& fs) {
  Fingerprint out;
  for (const auto& f : fs) out = merge(out, f);
  return out;
}

Outcome compare(const Fingerprint& whole, const Fingerprint& parts, const std::string& what) {
  if (whole == parts) return {Status::Pass, format(whole)};
  return {Status::Fail, "whole " + format(whole) + " vs " + what + " " + format(parts)};
}

std::string format_name(const AbelianGroup& a) {
  std::string s;
  for (auto d : a.factors()) s += (s.empty() ? "Z" : "xZ") + std::to_string(d);
  return s.empty() ? "0" : s;
}

bool trivial_constant(const Extension& e) {
  return e.kernel().is_constant() && e.action.is_trivial();
}

// ---------------------------------------------------------------------------

std::vector<Task> ext_group_axioms(const Corpus& c, const VerifyOptions& o) {
  std::vector<Task> tasks;
  const auto by = items_by_data(c);
  for (std::size_t d = 0; d < by.size(); ++d) {
    if (by[d].empty()) continue;
    tasks.push_back([&c, &o, ids = by[d], d] {
      std::vector<CheckResult> out;
      const Extension sd = semidirect(c.data[d].action);
      const std::string dn = c.data[d].name;
      const int k = static_cast<int>(ids.size());
      std::vector<const Extension*> e;
      for (int i : ids) e.push_back(&c.items[i].extension);
      std::vector<std::string> lab;
      for (int i : ids) lab.push_back(label_of(c.items[i]));
      for (int i = 0; i < k; ++i) {
        out.push_back(timed(dn + ": identity " + lab[i],
                            [&] { return expect_iso(baer_sum(*e[i], sd), *e[i], o.max_nodes); }));
        out.push_back(timed(dn + ": inverse " + lab[i],
                            [&] { return expect_iso(baer_sum(*e[i], inverse_ext(*e[i])), sd, o.max_nodes); }));
      }
      std::vector<std::vector<Extension>> sum(k, std::vector<Extension>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sum[i][j] = baer_sum(*e[i], *e[j]);
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          out.push_back(timed(dn + ": commutativity " + lab[i] + " " + lab[j],
                              [&] { return expect_iso(sum[i][j], sum[j][i], o.max_nodes); }));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          for (int l = 0; l < k; ++l)
            out.push_back(timed(dn + ": associativity " + lab[i] + " " + lab[j] + " " + lab[l], [&] {
              return expect_iso(baer_sum(sum[i][j], *e[l]), baer_sum(*e[i], sum[j][l]), o.max_nodes);
            }));
      return out;
    });
  }
  return tasks;
}

BundleHom constant_hom(const GroupBundle& a, const GroupBundle& b, const ExponentMatrix& m) {
  BundleHom f{a, b, std::vector<ExponentMatrix>(a.num_units(), m)};
  return f;
}

std::vector<Task> pushout_functoriality(const Corpus& c, const VerifyOptions& o) {
  std::vector<Task> tasks;
  const auto by = items_by_data(c);
  const std::vector<AbelianGroup> targets = {AbelianGroup({2}), AbelianGroup({4}), AbelianGroup({2, 2})};
  for (std::size_t d = 0; d < by.size(); ++d) {
    if (by[d].empty()) continue;
    const int item = by[d].back();
    tasks.push_back([&c, &o, targets, item] {
      std::vector<CheckResult> out;
      const CorpusItem& it = c.items[item];
      const Extension& e = it.extension;
      const GroupoidAction& act = e.action;
      auto check = [&](const std::string& what, const BundleHom& f, const GroupoidAction& bact, const BundleHom& g,
                       const GroupoidAction& cact) {
        out.push_back(timed(it.name + ": " + what, [&]() -> Outcome {
          Report r = validate_bundle_hom(f, act, bact);
          r.merge(validate_bundle_hom(g, bact, cact), "g: ");
          if (!r.ok()) return {Status::Fail, "non-equivariant hom: " + r.to_string()};
          const Extension lhs = pushout(compose(g, f), cact, e).extension;
          const Extension rhs = pushout(g, cact, pushout(f, bact, e).extension).extension;
          return expect_iso(lhs, rhs, o.max_nodes);
        }));
      };
      const GroupBundle& a = act.bundle();
      check("(2*3*) vs (6)*", multiplication_hom(a, 2), act, multiplication_hom(a, 3), act);
      check("(id id) vs id", identity_bundle_hom(a), act, identity_bundle_hom(a), act);
      out.push_back(timed(it.name + ": id_* = id", [&] {
        return expect_iso(pushout(identity_bundle_hom(a), act, e).extension, e, o.max_nodes);
      }));
      if (!trivial_constant(e)) return out;
      const auto& g0 = *e.base();
      const AbelianGroup& fa = a.fiber(0);
      for (const auto& fb : targets)
        for (const auto& fc : targets) {
          const auto hab = homomorphisms(fa, fb);
          const auto hbc = homomorphisms(fb, fc);
          const GroupBundle b = GroupBundle::constant(g0, fb), cc = GroupBundle::constant(g0, fc);
          const GroupoidAction bact = GroupoidAction::trivial(e.base(), b);
          const GroupoidAction cact = GroupoidAction::trivial(e.base(), cc);
          // the last homomorphism in enumeration order is the one with the largest entries
          check("via " + format_name(fb) + " to " + format_name(fc), constant_hom(a, b, hab.back()), bact,
                constant_hom(b, cc, hbc.back()), cact);
        }
      return out;
    });
  }
  return tasks;
}


std::vector<Task> pushout_theorem(const Corpus& c, const VerifyOptions& o) {
  std::vector<Task> tasks;
  for (const auto& it : c.items)
    tasks.push_back([&it, &o] {
      return std::vector<CheckResult>{timed(it.name, [&]() -> Outcome {
        const auto r = verify_pushout_theorem(it.extension, o.numeric);
        const std::string w = "total " + format(r.total) + ", twisted " + format(r.twisted);
        if (r.report.ok()) return {Status::Pass, w};
        return {Status::Fail, w + "; " + r.report.to_string()};
      })};
    });
  return tasks;
}

std::vector<Task> compact_decomposition(const Corpus& c, const VerifyOptions& o) {
  std::vector<Task> tasks;
  for (const auto& it : c.items) {
    if (!trivial_constant(it.extension)) continue;
    tasks.push_back([&it, &o] {
      return std::vector<CheckResult>{timed(it.name, [&]() -> Outcome {
        const auto parts = decompose_over_characters(it.extension);
        std::vector<Fingerprint> fs;
        for (const auto& s : parts) fs.push_back(fingerprint(s.algebra, o.numeric));
        return compare(fingerprint(groupoid_algebra(*it.extension.total), o.numeric), union_of(fs),
                       std::to_string(parts.size()) + " character summands");
      })};
    });
  }
  return tasks;
}

std::vector<Task> power_decomposition(const Corpus& c, const VerifyOptions& o) {
  std::vector<Task> tasks;
  for (const auto& it : c.items) {
    const auto& e = it.extension;
    if (!trivial_constant(e) || e.kernel().num_units() == 0 || e.kernel().fiber(0).rank() != 1) continue;
    tasks.push_back([&it, &o] {
      return std::vector<CheckResult>{timed(it.name, [&]() -> Outcome {
        const auto parts = power_twist_decomposition(it.extension);
        std::vector<Fingerprint> fs;
        for (const auto& s : parts) fs.push_back(fingerprint(s.algebra, o.numeric));
        return compare(fingerprint(groupoid_algebra(*it.extension.total), o.numeric), union_of(fs),
                       std::to_string(parts.size()) + " power summands");
      })};
    });
  }
  return tasks;
}

// Union over the blocks of every orbit partition against the whole, with the
// summand of each union of orbits computed once.
Outcome partitions_add_up(const FiniteGroupoid& units_of, const Fingerprint& whole,
                          const std::function<Fingerprint(const std::vector<int>&)>& summand, long long cap) {
  const InvariantPartition orbits = orbit_partition(units_of);
  const int k = orbits.label.empty() ? 0 : *std::max_element(orbits.label.begin(), orbits.label.end()) + 1;
  if (k > 20) return {Status::Unknown, std::to_string(k) + " orbits exceed the subset table"};
  std::vector<std::vector<int>> partitions;
  try {
    partitions = set_partitions(k, cap);
  } catch (const Error& ex) {
    return {Status::Unknown, ex.what()};
  }
  std::map<unsigned, Fingerprint> cache;
  auto block = [&](unsigned mask) -> const Fingerprint& {
    auto it = cache.find(mask);
    if (it != cache.end()) return it->second;
    std::vector<int> units;
    for (int u = 0; u < units_of.num_units(); ++u)
      if (mask >> orbits.label[u] & 1u) units.push_back(u);
    return cache.emplace(mask, summand(units)).first->second;
  };
  for (const auto& p : partitions) {
    const int blocks = p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
    std::vector<unsigned> masks(blocks, 0);
    for (int i = 0; i < k; ++i) masks[p[i]] |= 1u << i;
    Fingerprint sum;
    for (unsigned m : masks) sum = merge(sum, block(m));
    if (!(sum == whole)) {
      std::string rgs;
      for (int x : p) rgs += std::to_string(x);
      return {Status::Fail, "partition " + rgs + ": whole " + format(whole) + " vs " + format(sum)};
    }
  }
  return {Status::Pass, std::to_string(k) + " orbits, " + std::to_string(partitions.size()) + " partitions, " +
                            format(whole)};
}

std::vector<Task> bundle_decomposition(const Corpus& c, const VerifyOptions& o) {
  std::vector<Task> tasks;
  for (const auto& it : c.items)
    tasks.push_back([&it, &o] {
      std::vector<CheckResult> out;
      const auto& g = *it.extension.total;
      out.push_back(timed(it.name + ": over units", [&] {
        return partitions_add_up(
            g, fingerprint(groupoid_algebra(g), o.numeric),
            [&](const std::vector<int>& units) { return fingerprint(restrict_summand(g, units), o.numeric); },
            o.max_partitions);
      }));
      out.push_back(timed(it.name + ": over characters", [&] {
        const TGroupoid t = t_groupoid(it.extension);
        const auto& h = *t.extension.base();
        return partitions_add_up(
            h, fingerprint(twisted_algebra(t.extension, 1), o.numeric),
            [&](const std::vector<int>& units) {
              return fingerprint(restrict_summand(t.extension, 1, units), o.numeric);
            },
            o.max_partitions);
      }));
      out.push_back(timed(it.name + ": orbit fibres", [&] {
        std::vector<Fingerprint> fs;
        for (const auto& a : decompose_over_base(g, orbit_partition(g))) fs.push_back(fingerprint(a, o.numeric));
        return compare(fingerprint(groupoid_algebra(g), o.numeric), union_of(fs), "orbit fibres");
      }));
      return out;
    });
  return tasks;
}

Outcome masa_outcome(const ConvolutionAlgebra& a, const std::vector<int>& sub, const FiniteGroupoid* weyl,
                     double tol) {
  const MasaResult r = masa_check(a, sub, weyl, tol);
  const std::string w = "subalgebra " + std::to_string(r.sub_dimension) + ", commutant " +
                        std::to_string(r.commutant_dimension);
  if (r.report.ok() && r.sub_dimension == r.commutant_dimension) return {Status::Pass, w};
  return {Status::Fail, w + (r.report.ok() ? "" : "; " + r.report.to_string())};
}

std::vector<Task> masa(const VerifyOptions& o) {
  std::vector<Task> tasks;
  for (int n : o.masa_sizes)
    tasks.push_back([n, &o] {
      return std::vector<CheckResult>{timed("heisenberg-" + std::to_string(n), [&] {
        const HeisenbergMasa h = heisenberg_masa(n);
        return masa_outcome(h.algebra, h.sub, &h.weyl, o.numeric.tolerance);
      })};
    });
  for (int k = 2; k <= 4; ++k)
    tasks.push_back([k, &o] {
      return std::vector<CheckResult>{timed("pair-" + std::to_string(k) + " diagonal", [&] {
        const FiniteGroupoid p = pair_groupoid(k);
        std::vector<int> diag;
        for (int u = 0; u < p.num_units(); ++u) diag.push_back(p.unit_arrow(u));
        return masa_outcome(groupoid_algebra(p), diag, &p, o.numeric.tolerance);
      })};
    });
  tasks.push_back([&o] {
    return std::vector<CheckResult>{timed("Z4 inside itself", [&] {
      const ConvolutionAlgebra a = groupoid_algebra(cyclic_group(4));
      std::vector<int> all(a.dimension());
      std::iota(all.begin(), all.end(), 0);
      return masa_outcome(a, all, nullptr, o.numeric.tolerance);
    })};
  });
  return tasks;
}

Outcome cross_check(const Cocycle2& p1, const Cocycle2& p2, const Extension& e1, const Extension& e2,
                    std::optional<bool> expected, long long max_nodes) {
  const bool coh = cohomologous(p1, p2).has_value();
  const IsoResult r = properly_isomorphic(e1, e2, {IsoStrategy::Backtrack, max_nodes});
  if (r.status == IsoStatus::Unknown) return {Status::Unknown, "node cap " + std::to_string(max_nodes) + " reached"};
  const bool iso = r.status == IsoStatus::Isomorphic;
  const std::string w = std::string(coh ? "cohomologous" : "not cohomologous") + ", " +
                        (iso ? "properly isomorphic" : "not properly isomorphic") + " (" + std::to_string(r.nodes) +
                        " nodes)";
  if (coh != iso) return {Status::Fail, w};
  if (expected && *expected != coh) return {Status::Fail, w + "; class coordinates say otherwise"};
  return {Status::Pass, w};
}

std::vector<Task> cocycle_roundtrip(const Corpus& c, const VerifyOptions& o) {
  std::vector<Task> tasks;
  const auto by = items_by_data(c);
  for (std::size_t d = 0; d < by.size(); ++d) {
    if (by[d].empty()) continue;
    tasks.push_back([&c, &o, ids = by[d], d] {
      std::vector<CheckResult> out;
      std::mt19937_64 rng(o.corpus.seed * 0x9e3779b97f4a7c15ULL + 7919 * d + 1);
      const int k = static_cast<int>(ids.size());
      std::vector<Cocycle2> phi(k);
      for (int i = 0; i < k; ++i) {
        const CorpusItem& it = c.items[ids[i]];
        out.push_back(timed(it.name + ": round trip", [&]() -> Outcome {
          phi[i] = cocycle_from_extension(it.extension);
          const Report v = validate_cocycle(phi[i]);
          if (!v.ok()) return {Status::Fail, "extracted cocycle invalid: " + v.to_string()};
          const Extension back = extension_from_cocycle(phi[i]);
          if (!cohomologous(cocycle_from_extension(back), phi[i]))
            return {Status::Fail, "cocycle of the rebuilt extension is not cohomologous"};
          return expect_iso(it.extension, back, o.max_nodes);
        }));
        // a second representative of the same class with shuffled arrows
        out.push_back(timed(it.name + ": twin", [&]() -> Outcome {
          if (phi[i].values.empty()) phi[i] = cocycle_from_extension(it.extension);
          Cochain1 ch = Cochain1::zero(phi[i].action);
          const auto& g = *phi[i].action.groupoid();
          for (int a = 0; a < g.num_arrows(); ++a) {
            if (g.is_unit_arrow(a)) continue;
            const auto& f = phi[i].action.bundle().fiber(g.tgt(a));
            ch.values[a] = f.element(std::uniform_int_distribution<long long>(0, f.order() - 1)(rng));
          }
          const Cocycle2 psi = add(phi[i], coboundary(ch));
          Extension twin = extension_from_cocycle(psi);
          std::vector<int> perm(twin.total->num_arrows());
          std::iota(perm.begin(), perm.end(), 0);
          std::shuffle(perm.begin(), perm.end(), rng);
          twin = relabel(twin, perm);
          return cross_check(phi[i], cocycle_from_extension(twin), it.extension, twin, true, o.max_nodes);
        }));
      }
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
          const CorpusItem& a = c.items[ids[i]];
          const CorpusItem& b = c.items[ids[j]];
          out.push_back(timed(a.name + " vs " + label_of(b), [&] {
            const std::optional<bool> expected =
                a.coords.empty() && b.coords.empty() ? std::nullopt : std::optional<bool>(a.coords == b.coords);
            return cross_check(phi[i], phi[j], a.extension, b.extension, expected, o.max_nodes);
          }));
        }
      return out;
    });
  }
  return tasks;
}

}  // namespace

VerificationReport run_suite(const std::string& suite, const Corpus& corpus, const VerifyOptions& opts) {
  std::vector<Task> tasks;
  if (suite == "ext-group-axioms") tasks = ext_group_axioms(corpus, opts);
  else if (suite == "pushout-functoriality") tasks = pushout_functoriality(corpus, opts);
  else if (suite == "pushout-theorem") tasks = pushout_theorem(corpus, opts);
  else if (suite == "compact-decomposition") tasks = compact_decomposition(corpus, opts);
  else if (suite == "power-decomposition") tasks = power_decomposition(corpus, opts);
  else if (suite == "bundle-decomposition") tasks = bundle_decomposition(corpus, opts);
  else if (suite == "masa") tasks = masa(opts);
  else if (suite == "cocycle-roundtrip") tasks = cocycle_roundtrip(corpus, opts);
  else throw Error("unknown suite: " + suite);
  VerificationReport rep;
  rep.suite = suite;
  rep.corpus = suite == "masa" ? std::string("heisenberg") : corpus.version;
  rep.checks = run_tasks(tasks, opts.threads);
  return rep;
}

VerificationReport run_suite(const std::string& suite, const VerifyOptions& opts) {
  if (suite == "masa") return run_suite(suite, Corpus{}, opts);
  return run_suite(suite, builtin_corpus(opts.corpus), opts);
}

}  // namespace gext
