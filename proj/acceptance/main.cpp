// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "cocycle_oracle.hpp"

#include "gext/algebra.hpp"
#include "gext/cohomology.hpp"
#include "gext/corpus.hpp"
#include "gext/verify.hpp"

using namespace gext;

namespace {

// Pinned limits.
constexpr double kTolerance = 1e-9;
constexpr int kMinCorpus = 20;
constexpr int kMinFunctoriality = 10;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;
  std::function<Verdict()> run;
};

VerifyOptions options() {
  VerifyOptions o;
  o.numeric.tolerance = kTolerance;
  return o;
}

std::string counts(const VerificationReport& r) {
  std::string s = std::to_string(r.checks.size()) + " checks, " + std::to_string(r.count(Status::Fail)) +
                  " fail, " + std::to_string(r.count(Status::Unknown)) + " unknown";
  for (const auto& c : r.checks)
    if (c.status != Status::Pass) {
      s += "; first: " + c.name + ": " + c.witness;
      break;
    }
  return s;
}

bool clean(const VerificationReport& r) { return !r.checks.empty() && r.overall() == Status::Pass; }

const Corpus& corpus() {
  static const Corpus c = builtin_corpus(options().corpus);
  return c;
}

Verdict rotation() {
  const Cocycle2 w = rotation_cocycle(3, 2);
  const auto& g = *w.action.groupoid();
  if (rotation_s(3, 2) != 2) return {false, "s != 2"};
  for (int k1 = 0; k1 < 3; ++k1)
    for (int k2 = 0; k2 < 3; ++k2) {
      const long long expected = k1 + k2 >= 3 ? 6 : 0;
      const Element& v = w(g.arrow_index(std::to_string(k1)), g.arrow_index(std::to_string(k2)));
      if (v != Element{expected})
        return {false, "omega(" + std::to_string(k1) + "," + std::to_string(k2) + ") = " + std::to_string(v[0])};
    }
  const Report r = validate_cocycle(w);
  if (!r.ok()) return {false, r.to_string()};
  return {true, "omega = 6 exactly when k1 + k2 >= 3; cocycle identity holds"};
}

Verdict suite(const std::string& name, std::size_t min_checks = 1) {
  const VerificationReport r = run_suite(name, corpus(), options());
  return {clean(r) && r.checks.size() >= min_checks, counts(r)};
}

Verdict ext_group() {
  if (static_cast<int>(corpus().items.size()) < kMinCorpus) return {false, "corpus too small"};
  Verdict v = suite("ext-group-axioms");
  v.detail = std::to_string(corpus().items.size()) + " extensions; " + v.detail;
  return v;
}

Verdict pushout_theorem() {
  const auto expect = [](const Extension& e, const std::vector<int>& blocks) -> std::string {
    const auto r = verify_pushout_theorem(e, {kTolerance});
    if (!r.report.ok() || r.total.blocks != blocks || r.twisted.blocks != blocks)
      return "total " + format(r.total) + " twisted " + format(r.twisted);
    return {};
  };
  const auto z2 = share(cyclic_group(2));
  const GroupoidAction triv = GroupoidAction::trivial(z2, GroupBundle::constant(*z2, AbelianGroup({2})));
  Cocycle2 z4 = Cocycle2::zero(triv);
  z4.at(1, 1) = {1};
  std::vector<int> heis(9, 1);
  heis.push_back(3);
  heis.push_back(3);
  for (const auto& [name, msg] : std::vector<std::pair<std::string, std::string>>{
           {"SD(Z2,Z2)", expect(semidirect(triv), {1, 1, 1, 1})},
           {"Z4 over Z2", expect(extension_from_cocycle(z4), {1, 1, 1, 1})},
           {"Heisenberg Z3", expect(heisenberg_extension(3), heis)}})
    if (!msg.empty()) return {false, name + ": " + msg};
  Verdict v = suite("pushout-theorem", corpus().items.size());
  v.detail = "SD, Z4 and Heisenberg-Z3 as expected; " + v.detail;
  return v;
}

Verdict h2_oracle() {
  int cases = 0;
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 6; ++m) {
      const auto zn = share(cyclic_group(n));
      const GroupoidAction act = GroupoidAction::trivial(zn, GroupBundle::constant(*zn, AbelianGroup({m})));
      const CohomologyGroup h = h2(act);
      const auto census = oracle::h2_census(act);
      const long long g = std::gcd(n, m);
      const std::vector<long long> expected = g > 1 ? std::vector<long long>{g} : std::vector<long long>{};
      if (h.invariant_factors != expected || census.order() != g ||
          oracle::order_profile(h.invariant_factors) != census.order_profile)
        return {false, "Z" + std::to_string(n) + " with Z" + std::to_string(m)};
      ++cases;
    }
  for (int k = 1; k <= 3; ++k)
    for (long long m : {2, 3, 4}) {
      const auto p = share(pair_groupoid(k));
      const GroupoidAction act = GroupoidAction::trivial(p, GroupBundle::constant(*p, AbelianGroup({m})));
      if (!h2(act).invariant_factors.empty() || oracle::h2_census(act).order() != 1)
        return {false, "pair groupoid on " + std::to_string(k) + " points with Z" + std::to_string(m)};
      ++cases;
    }
  return {true, std::to_string(cases) + " cases agree with brute-force enumeration"};
}

Verdict masa() {
  VerifyOptions o = options();
  o.masa_sizes = {2, 3, 5};
  const VerificationReport r = run_suite("masa", Corpus{}, o);
  int heis = 0;
  for (const auto& c : r.checks) heis += c.name.rfind("heisenberg-", 0) == 0 && c.status == Status::Pass;
  return {clean(r) && heis == 3, counts(r)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "rotation cocycle", 1, rotation},
      {2, "extension group axioms", 120, ext_group},
      {3, "pushout functoriality", 60,
       [] { return suite("pushout-functoriality", kMinFunctoriality); }},
      {4, "pushout theorem fingerprints", 300, pushout_theorem},
      {5, "character direct sum", 120, [] { return suite("compact-decomposition"); }},
      {6, "H2 against brute force", 60, h2_oracle},
      {7, "cocycle round trip and cross-validation", 120, [] { return suite("cocycle-roundtrip"); }},
      {8, "masa for Heisenberg n = 2, 3, 5", 60, masa},
      {9, "decomposition over invariant partitions", 60, [] { return suite("bundle-decomposition"); }},
  };
  // the corpus is shared; build it outside the timed sections
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t items = corpus().items.size();
  std::printf("corpus %s: %zu extensions over %zu data (%.2fs)\n", corpus().version.c_str(), items,
              corpus().data.size(), std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& ex) {
      v = {false, std::string("error: ") + ex.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = v.pass && s < c.limit_seconds;
    failed += !ok;
    std::printf("%s  %d. %s: %s [%.2fs, limit %.0fs]\n", ok ? "PASS" : "FAIL", c.number, c.name.c_str(),
                v.detail.c_str(), s, c.limit_seconds);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
