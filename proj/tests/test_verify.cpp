#include "doctest.h"
#include "oracles.hpp"

#include <set>

#include "gext/corpus.hpp"
#include "gext/verify.hpp"

using namespace gext;

namespace {

// automorphisms by brute force: bijections of the group that respect addition
long long brute_automorphisms(const AbelianGroup& a) {
  const long long n = a.order();
  std::vector<long long> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  long long count = 0;
  do {
    bool ok = true;
    for (long long x = 0; x < n && ok; ++x)
      for (long long y = 0; y < n && ok; ++y)
        ok = perm[a.index_of(a.add(a.element(x), a.element(y)))] ==
             a.index_of(a.add(a.element(perm[x]), a.element(perm[y])));
    count += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

CorpusOptions small_corpus() {
  CorpusOptions o;
  o.families = {"cyclic", "pair"};
  o.max_arrows = 4;
  o.max_classes = 4;
  return o;
}

}  // namespace

TEST_CASE("automorphism and homomorphism counts") {
  for (const std::vector<long long>& f : std::vector<std::vector<long long>>{{2}, {3}, {4}, {2, 2}, {6}, {2, 4}})
    CHECK(static_cast<long long>(automorphisms(AbelianGroup(f)).size()) == brute_automorphisms(AbelianGroup(f)));
  CHECK(automorphisms(AbelianGroup({2, 2})).size() == 6);
  // |Hom(Z_m, Z_n)| = gcd(m, n)
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n)
      CHECK(homomorphisms(AbelianGroup({m}), AbelianGroup({n})).size() == static_cast<std::size_t>(std::gcd(m, n)));
  CHECK(homomorphisms(AbelianGroup({2, 2}), AbelianGroup({4})).size() == 4);
}

TEST_CASE("all actions are actions, and are counted correctly") {
  // actions of a group G on A are homomorphisms G -> Aut(A)
  auto s3 = share(symmetric_group3());
  const auto klein = GroupBundle::constant(*s3, AbelianGroup({2, 2}));
  const auto acts = all_actions(s3, klein);
  CHECK(acts.size() == 10);  // trivial, 3 with image of order 2, 6 automorphisms
  for (const auto& a : acts) CHECK(validate_action(a).ok());

  auto z6 = share(cyclic_group(6));
  CHECK(all_actions(z6, GroupBundle::constant(*z6, AbelianGroup({2, 2}))).size() == 6);
  CHECK(all_actions(z6, GroupBundle::constant(*z6, AbelianGroup({3}))).size() == 2);
  auto z3 = share(cyclic_group(3));
  CHECK(all_actions(z3, GroupBundle::constant(*z3, AbelianGroup({4}))).size() == 1);
  // pair groupoid: an action is fixed by the arrow (0,1), so |Aut(A)| of them
  auto p2 = share(pair_groupoid(2));
  CHECK(all_actions(p2, GroupBundle::constant(*p2, AbelianGroup({2, 2}))).size() == 6);
  CHECK(all_actions(p2, GroupBundle::constant(*p2, AbelianGroup({2, 2})), 4).size() == 4);
}

TEST_CASE("set partitions are counted by the Bell numbers") {
  const std::vector<std::size_t> bell = {1, 1, 2, 5, 15, 52, 203, 877};
  for (int k = 0; k < 8; ++k) CHECK(set_partitions(k).size() == bell[k]);
  CHECK_THROWS_AS(set_partitions(7, 100), Error);
}

TEST_CASE("relabelled extensions stay valid and properly isomorphic") {
  const Extension e = heisenberg_extension(2);
  std::vector<int> perm(e.total->num_arrows());
  std::iota(perm.rbegin(), perm.rend(), 0);
  const Extension r = relabel(e, perm);
  CHECK(validate_extension(r).ok());
  CHECK(properly_isomorphic(e, r, {IsoStrategy::Backtrack}).status == IsoStatus::Isomorphic);
}

TEST_CASE("the built-in corpus") {
  const Corpus c = builtin_corpus();
  CHECK(c.version == std::string("builtin-v1"));
  CHECK(c.items.size() >= 20);
  std::set<std::string> names;
  for (const auto& it : c.items) {
    names.insert(it.name);
    const auto& e = it.extension;
    CHECK(validate_extension(e).ok());
    if (it.name.rfind("heisenberg", 0) != 0) CHECK(e.base()->num_arrows() <= 6);
    CHECK(e.kernel().exponent() <= 4);
    long long size = 0;
    for (int a = 0; a < e.base()->num_arrows(); ++a) size += e.kernel().fiber(e.base()->tgt(a)).order();
    CHECK(e.total->num_arrows() == size);
  }
  CHECK(names.size() == c.items.size());
  // every class of a data entry is represented unless capped
  for (const auto& d : c.data)
    if (d.name.rfind("heisenberg", 0) != 0) CHECK(d.classes == std::min<long long>(d.h2.order(), 8));
  // deterministic in the seed
  const Corpus again = builtin_corpus();
  REQUIRE(again.items.size() == c.items.size());
  for (std::size_t i = 0; i < c.items.size(); ++i) CHECK(*again.items[i].extension.total == *c.items[i].extension.total);
}

TEST_CASE("every suite passes on a small corpus") {
  VerifyOptions o;
  o.corpus = small_corpus();
  o.masa_sizes = {2, 3};
  const Corpus c = builtin_corpus(o.corpus);
  for (const auto& s : suite_names()) {
    CAPTURE(s);
    const VerificationReport r = run_suite(s, c, o);
    CHECK(!r.checks.empty());
    CHECK(r.overall() == Status::Pass);
    for (const auto& ch : r.checks)
      if (ch.status != Status::Pass) MESSAGE(ch.name << ": " << ch.witness);
  }
}

TEST_CASE("suite reports are independent of the thread count") {
  VerifyOptions o;
  o.corpus = small_corpus();
  const Corpus c = builtin_corpus(o.corpus);
  o.threads = 1;
  const auto a = run_suite("cocycle-roundtrip", c, o);
  o.threads = 4;
  const auto b = run_suite("cocycle-roundtrip", c, o);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].name == b.checks[i].name);
    CHECK(a.checks[i].witness == b.checks[i].witness);
  }
}

TEST_CASE("a mislabelled corpus item is caught by the cross-validation") {
  VerifyOptions o;
  o.corpus = small_corpus();
  Corpus c = builtin_corpus(o.corpus);
  // find a data entry with two classes and give the second item the first one's coordinates
  bool planted = false;
  for (std::size_t i = 0; i + 1 < c.items.size() && !planted; ++i)
    if (c.items[i].data == c.items[i + 1].data) {
      c.items[i + 1].coords = c.items[i].coords;
      planted = true;
    }
  REQUIRE(planted);
  const auto r = run_suite("cocycle-roundtrip", c, o);
  CHECK(r.overall() == Status::Fail);
  bool seen = false;
  for (const auto& ch : r.checks)
    if (ch.status == Status::Fail) seen = seen || ch.witness.find("class coordinates") != std::string::npos;
  CHECK(seen);
}

TEST_CASE("a node cap too small for the search gives unknown, not fail") {
  VerifyOptions o;
  o.corpus = small_corpus();
  o.corpus.families = {"cyclic"};
  o.max_nodes = 1;
  const auto r = run_suite("ext-group-axioms", o);
  CHECK(r.count(Status::Fail) == 0);
  CHECK(r.count(Status::Unknown) > 0);
  CHECK(r.overall() == Status::Unknown);
  CHECK_THROWS_AS(run_suite("no-such-suite", o), Error);
}
