#include "doctest.h"
#include "samples.hpp"

#include <filesystem>
#include <fstream>

#include "gext/corpus.hpp"
#include "gext/serialize.hpp"

using namespace gext;
using io::json;

namespace {

io::Document inline_doc(json j) { return {std::move(j), "."}; }

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() / ("gext-serialize-" + tag);
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
};

}  // namespace

TEST_CASE("groupoid documents round trip") {
  for (const auto& g : {cyclic_group(3), symmetric_group3(), pair_groupoid(3),
                        disjoint_union(cyclic_group(2, "a"), pair_groupoid(2, "b"))}) {
    const json j = io::to_json(g);
    CHECK(io::document_kind(j) == "groupoid");
    const FiniteGroupoid back = io::groupoid_from_json(inline_doc(j));
    CHECK(back == g);
    CHECK(io::to_json(back) == j);
  }
}

TEST_CASE("groupoid document fields") {
  const json j = json::parse(R"({"units":["u"],"arrows":[{"id":"e","src":"u","tgt":"u"},{"id":"g","src":"u","tgt":"u"}],
    "comp":[["e","e","e"],["e","g","g"],["g","e","g"],["g","g","e"]],"inv":[["g","g"],["e","e"]]})");
  const auto d = inline_doc(j);
  CHECK(io::document_kind(j) == "groupoid");
  const FiniteGroupoid g = io::groupoid_from_json(d);
  CHECK(validate_groupoid(g).ok());
  CHECK(g.num_arrows() == 2);
  CHECK(g.comp(1, 1) == 0);

  json bad = j;
  bad["comp"].push_back({"g", "x", "e"});
  CHECK_THROWS_AS(io::groupoid_from_json(inline_doc(bad)), Error);
  bad = j;
  bad["arrows"][0].erase("src");
  CHECK_THROWS_AS(io::groupoid_from_json(inline_doc(bad)), Error);
  // identifiers are case-sensitive
  bad = j;
  bad["inv"][0] = {"G", "G"};
  CHECK_THROWS_AS(io::groupoid_from_json(inline_doc(bad)), Error);
}

TEST_CASE("bundles align with the unit order of the groupoid") {
  const json j = {{"fibers", {{"b", {2, 4}}, {"a", {3}}}}};
  const GroupBundle sorted = io::bundle_from_json(inline_doc(j));
  CHECK(sorted.unit_ids() == std::vector<std::string>{"a", "b"});
  const GroupBundle aligned = io::bundle_from_json(inline_doc(j), {"b", "a"});
  CHECK(aligned.fiber(0) == AbelianGroup({2, 4}));
  CHECK(aligned.fiber(1) == AbelianGroup({3}));
  CHECK_THROWS_AS(io::bundle_from_json(inline_doc(j), {"a"}), Error);
  CHECK_THROWS_AS(io::bundle_from_json(inline_doc(j), {"a", "b", "c"}), Error);
}

TEST_CASE("actions round trip and default to the identity") {
  for (const auto& act : samples::small_actions()) {
    const json j = io::to_json(act);
    CHECK(io::document_kind(j) == "action");
    const GroupoidAction back = io::action_from_json(inline_doc(j));
    CHECK(back.same_as(act));
  }
  const auto sign = samples::sign_action(3);
  json j = io::to_json(sign);
  CHECK(j["matrices"].size() == 1);  // only the non-identity arrow is written
  j["matrices"] = json::object();
  CHECK(io::action_from_json(inline_doc(j)).is_trivial());
  j["matrices"] = {{"1", {{1, 0}}}};
  CHECK_THROWS_AS(io::action_from_json(inline_doc(j)), Error);
}

TEST_CASE("extensions round trip through documents") {
  CorpusOptions o;
  o.max_arrows = 4;
  o.max_classes = 2;
  const Corpus c = builtin_corpus(o);
  REQUIRE(c.items.size() > 10);
  for (const auto& it : c.items) {
    const json j = io::to_json(it.extension);
    CHECK(io::document_kind(j) == "extension");
    const Extension back = io::extension_from_json(inline_doc(j));
    CHECK(*back.total == *it.extension.total);
    CHECK(back.iota == it.extension.iota);
    CHECK(back.proj == it.extension.proj);
    CHECK(back.action.same_as(it.extension.action));
    CHECK(io::to_json(back) == j);
  }
}

TEST_CASE("broken extension documents are rejected with a reason") {
  const Extension e = semidirect(samples::trivial_on(cyclic_group(2), {2}));
  const json good = io::to_json(e);
  json j = good;
  j["iota"].erase(1);
  CHECK_THROWS_WITH_AS(io::extension_from_json(inline_doc(j)), doctest::Contains("iota missing"), Error);
  j = good;
  j["proj"].erase(0);
  CHECK_THROWS_WITH_AS(io::extension_from_json(inline_doc(j)), doctest::Contains("proj missing"), Error);
  j = good;
  j["iota"][0][0][1] = {0, 0};
  CHECK_THROWS_WITH_AS(io::extension_from_json(inline_doc(j)), doctest::Contains("wrong length"), Error);
  j = good;
  j["total"]["units"] = {"v"};
  CHECK_THROWS_AS(io::extension_from_json(inline_doc(j)), Error);
}

TEST_CASE("cocycles round trip; omitted pairs are zero") {
  const Cocycle2 z4 = samples::z4_cocycle();
  const json j = io::to_json(z4);
  CHECK(j["values"].size() == 1);
  CHECK(io::cocycle_from_json(inline_doc(j)) == z4);

  std::mt19937 rng(5);
  for (const auto& act : samples::small_actions()) {
    const Cocycle2 phi = samples::random_cocycle(act, h2(act), rng);
    CHECK(io::cocycle_from_json(inline_doc(io::to_json(phi))) == phi);
  }
  json bad = j;
  bad["values"].push_back({"0", "x", {1}});
  CHECK_THROWS_AS(io::cocycle_from_json(inline_doc(bad)), Error);
}

TEST_CASE("right spaces and bundle homs") {
  const FiniteGroupoid p = pair_groupoid(2);
  RightSpace x;
  x.points = {"x0", "x1"};
  x.anchor = {0, 1};
  x.act.assign(2 * p.num_arrows(), FiniteGroupoid::kNone);
  for (int a = 0; a < p.num_arrows(); ++a) x.act[p.tgt(a) * p.num_arrows() + a] = p.src(a);
  REQUIRE(validate_space(p, x).ok());
  const RightSpace back = io::space_from_json(inline_doc(io::to_json(x, p)), p);
  CHECK(back.points == x.points);
  CHECK(back.anchor == x.anchor);
  CHECK(back.act == x.act);

  const BundleHom f = multiplication_hom(GroupBundle::constant(p, AbelianGroup({4})), 2);
  const BundleHom g = io::hom_from_json(inline_doc(io::to_json(f)), p);
  CHECK(g.matrices == f.matrices);
  CHECK(g.target == f.target);
}

TEST_CASE("references resolve relative to the referencing file") {
  TempDir dir("refs");
  std::filesystem::create_directories(dir.path / "sub");
  dir.write("sub/z2.json", io::to_json(cyclic_group(2)).dump());
  dir.write("sub/bundle.json", R"({"fibers": {"u": [2]}})");
  dir.write("cocycle.json", R"({"base": "sub/z2.json", "bundle": "sub/bundle.json", "values": [["1", "1", [1]]]})");
  const Cocycle2 phi = io::cocycle_from_json(io::read_document(dir.path / "cocycle.json"));
  CHECK(phi == samples::z4_cocycle());

  dir.write("broken.json", "{\"units\": [");
  CHECK_THROWS_AS(io::read_document(dir.path / "broken.json"), IoError);
  CHECK_THROWS_AS(io::read_document(dir.path / "nope.json"), IoError);
  dir.write("dangling.json", R"({"base": "sub/missing.json", "bundle": "sub/bundle.json", "values": []})");
  CHECK_THROWS_AS(io::cocycle_from_json(io::read_document(dir.path / "dangling.json")), IoError);
}

TEST_CASE("fingerprint documents") {
  Report r;
  r.add("associativity", "(a,b,c)");
  const json j = io::to_json(Fingerprint{6, {1, 1, 2}}, r);
  CHECK(j["dimension"] == 6);
  CHECK(j["blocks"] == json({1, 1, 2}));
  REQUIRE(j["checks"].size() == 1);
  CHECK(j["checks"][0]["status"] == "fail");
  CHECK(j["checks"][0]["witness"] == "(a,b,c)");
}
