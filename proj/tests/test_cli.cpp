#include "doctest.h"
#include "samples.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gext/cli.hpp"
#include "gext/serialize.hpp"

using namespace gext;
using io::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "gext");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct Workspace {
  std::filesystem::path dir;
  Workspace() {
    dir = std::filesystem::temp_directory_path() / "gext-cli-test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
  }
  ~Workspace() { std::filesystem::remove_all(dir); }
  std::string put(const std::string& name, const json& j) const {
    std::ofstream(dir / name) << j.dump(1);
    return (dir / name).string();
  }
  std::string put_text(const std::string& name, const std::string& text) const {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
  json read(const std::string& name) const {
    std::ifstream in(dir / name);
    return json::parse(in);
  }
};

const char* kZ2 = R"({"units":["u"],"arrows":[{"id":"e","src":"u","tgt":"u"},{"id":"g","src":"u","tgt":"u"}],
  "comp":[["e","e","e"],["e","g","g"],["g","e","g"],["g","g","e"]],"inv":[["e","e"],["g","g"]]})";

}  // namespace

TEST_CASE("validate") {
  Workspace w;
  const auto z2 = w.put_text("z2.json", kZ2);
  auto r = run({"validate", z2});
  CHECK(r.code == kExitPass);
  CHECK(json::parse(r.out)["status"] == "pass");

  json broken = json::parse(kZ2);
  broken["comp"][3] = {"g", "g", "g"};
  r = run({"validate", w.put("broken.json", broken)});
  CHECK(r.code == kExitFail);
  const json rep = json::parse(r.out);
  CHECK(rep["status"] == "fail");
  REQUIRE(!rep["checks"].empty());
  CHECK(rep["checks"][0]["status"] == "fail");
  CHECK(!rep["checks"][0]["witness"].get<std::string>().empty());

  r = run({"validate", (w.dir / "missing.json").string()});
  CHECK(r.code == kExitIo);
  CHECK(r.err.find("cannot open") != std::string::npos);
  r = run({"validate", w.put_text("garbage.json", "{units")});
  CHECK(r.code == kExitIo);
  r = run({"validate", w.put_text("nothing.json", "{\"hello\": 1}")});
  CHECK(r.code == kExitFail);

  r = run({"--format", "text", "validate", z2});
  CHECK(r.out == "pass groupoid\n");
}

TEST_CASE("validate dispatches on the document kind") {
  Workspace w;
  w.put_text("z2.json", kZ2);
  CHECK(run({"validate", w.put("b.json", {{"fibers", {{"u", {2}}}}})}).code == kExitPass);
  CHECK(run({"validate", w.put("a.json", {{"base", "z2.json"}, {"bundle", "b.json"}})}).code == kExitPass);
  // g acting by 2 on Z4 is not invertible
  auto r = run({"validate", w.put("bad-a.json", {{"base", "z2.json"}, {"bundle", {{"fibers", {{"u", {4}}}}}},
                                                  {"matrices", {{"g", {{2}}}}}})});
  CHECK(r.code == kExitFail);
  r = run({"validate", w.put("c.json", {{"base", "z2.json"}, {"bundle", "b.json"}, {"values", {{"g", "g", {1}}}}})});
  CHECK(r.code == kExitPass);
  // not normalised
  r = run({"validate", w.put("bad-c.json", {{"base", "z2.json"}, {"bundle", "b.json"}, {"values", {{"e", "g", {1}}}}})});
  CHECK(r.code == kExitFail);
  CHECK(r.out.find("normal") != std::string::npos);
  r = run({"validate", w.put("s.json", {{"groupoid", "z2.json"},
                                         {"points", {{{"id", "p"}, {"anchor", "u"}}}},
                                         {"act", {{"p", "e", "p"}, {"p", "g", "p"}}}})});
  CHECK(r.code == kExitPass);
  r = run({"validate", w.put("h.json", {{"source", "b.json"}, {"target", {{"fibers", {{"u", {4}}}}}},
                                         {"matrices", {{"u", {{2}}}}}})});
  CHECK(r.code == kExitPass);
  r = run({"validate", w.put("h3.json", {{"source", {{"fibers", {{"u", {4}}}}}}, {"target", "b.json"},
                                             {"matrices", {{"u", {{3}}}}}})});
  CHECK(r.code == kExitPass);  // Z4 -> Z2, x -> 3x is well defined
  r = run({"validate", w.put("bad-h.json", {{"source", "b.json"}, {"target", {{"fibers", {{"u", {4}}}}}},
                                              {"matrices", {{"u", {{1}}}}}})});
  CHECK(r.code == kExitFail);  // Z2 -> Z4, x -> x is not
}

TEST_CASE("build") {
  Workspace w;
  w.put_text("z2.json", kZ2);
  const auto act = w.put("act.json", {{"base", "z2.json"}, {"bundle", {{"fibers", {{"u", {2}}}}}}});

  auto r = run({"build", "semidirect", act, "-o", (w.dir / "sd.json").string()});
  REQUIRE(r.code == kExitPass);
  CHECK(w.read("sd.json")["total"]["arrows"].size() == 4);
  CHECK(run({"validate", (w.dir / "sd.json").string()}).code == kExitPass);

  const auto coc = w.put("z4c.json", {{"base", "z2.json"}, {"bundle", {{"fibers", {{"u", {2}}}}}},
                                       {"values", {{"g", "g", {1}}}}});
  REQUIRE(run({"build", "from-cocycle", coc, "-o", (w.dir / "z4.json").string()}).code == kExitPass);
  const auto z4 = (w.dir / "z4.json").string();

  r = run({"build", "t-groupoid", z4});
  REQUIRE(r.code == kExitPass);
  CHECK(json::parse(r.out)["total"]["arrows"].size() == 8);  // |Ahat| |Sigma| = 2 * 4

  REQUIRE(run({"build", "baer-sum", z4, z4, "-o", (w.dir / "sum.json").string()}).code == kExitPass);
  REQUIRE(run({"build", "inverse", z4, "-o", (w.dir / "inv.json").string()}).code == kExitPass);
  for (const char* f : {"sum.json", "inv.json"})
    CHECK(run({"validate", (w.dir / f).string()}).code == kExitPass);
  // [Z4] + [Z4] is the split class
  const Extension sum = io::extension_from_json(io::read_document(w.dir / "sum.json"));
  const Extension sd = io::extension_from_json(io::read_document(w.dir / "sd.json"));
  CHECK(properly_isomorphic(sum, sd, {IsoStrategy::Backtrack}).status == IsoStatus::Isomorphic);

  // pushout along Z2 -> Z4, x -> 2x turns Z4 into a Z4-extension of Z2 of order 8
  const auto hom = w.put("hom.json", {{"source", {{"fibers", {{"u", {2}}}}}},
                                       {"target", {{"fibers", {{"u", {4}}}}}},
                                       {"matrices", {{"u", {{2}}}}}});
  r = run({"build", "pushout", z4, hom});
  REQUIRE(r.code == kExitPass);
  CHECK(json::parse(r.out)["total"]["arrows"].size() == 8);

  const auto space = w.put("x.json", {{"points", {{{"id", "p"}, {"anchor", "u"}}, {{"id", "q"}, {"anchor", "u"}}}},
                                       {"act", {{"p", "e", "p"}, {"q", "e", "q"}, {"p", "g", "q"}, {"q", "g", "p"}}}});
  r = run({"build", "transformation", (w.dir / "z2.json").string(), space});
  REQUIRE(r.code == kExitPass);
  CHECK(json::parse(r.out)["arrows"].size() == 4);

  CHECK(run({"build", "baer-sum", z4}).code == kExitFail);
  CHECK(run({"build", "bogus", z4}).code == kExitIo);
}

TEST_CASE("pushout along a non-equivariant hom fails with exit 1") {
  Workspace w;
  // Z2 acting on Z3 by negation; the identity onto Z3 with the trivial action is not equivariant
  const Extension e = semidirect(samples::sign_action(3));
  const auto ext = w.put("e.json", io::to_json(e));
  const auto hom = w.put("f.json", {{"source", {{"fibers", {{"u", {3}}}}}},
                                     {"target", {{"fibers", {{"u", {3}}}}}}});
  const Run r = run({"build", "pushout", ext, hom});
  CHECK(r.code == kExitFail);
  CHECK(r.err.find("equivariant") != std::string::npos);
  // with the sign action on the target it goes through
  const auto tgt = w.put("t.json", io::to_json(samples::sign_action(3)));
  CHECK(run({"build", "pushout", ext, hom, tgt}).code == kExitPass);
}

TEST_CASE("h2") {
  Workspace w;
  CHECK(run({"--format", "text", "h2", w.put("a.json", io::to_json(samples::trivial_on(cyclic_group(2), {2})))}).out ==
        "2\n");
  CHECK(run({"--format", "text", "h2", w.put("p.json", io::to_json(samples::trivial_on(pair_groupoid(3), {2})))}).out ==
        "trivial\n");
  CHECK(run({"--format", "text", "h2", w.put("b.json", io::to_json(samples::trivial_on(cyclic_group(4), {2})))}).out ==
        "2\n");
  const auto r = run({"h2", w.put("k.json", io::to_json(samples::trivial_on(abelian_group({2, 2}), {2})))});
  CHECK(json::parse(r.out)["invariant_factors"] == json({2, 2, 2}));
  CHECK(json::parse(r.out)["order"] == 8);
}

TEST_CASE("fingerprint") {
  Workspace w;
  const auto g = w.put("s3.json", io::to_json(symmetric_group3()));
  auto r = run({"fingerprint", g});
  REQUIRE(r.code == kExitPass);
  const json j = json::parse(r.out);
  CHECK(j["dimension"] == 6);
  CHECK(j["blocks"] == json({1, 1, 2}));
  CHECK(j["checks"].empty());
  const auto h = w.put("h.json", io::to_json(heisenberg_extension(3)));
  CHECK(run({"--format", "text", "fingerprint", h, "--k", "1"}).out == "[3]\n");
}

TEST_CASE("verify") {
  auto r = run({"verify", "ext-group-axioms", "--families", "cyclic", "--max-arrows", "2"});
  CHECK(r.code == kExitPass);
  const json j = json::parse(r.out);
  CHECK(j["status"] == "pass");
  CHECK(j["corpus"] == "builtin-v1");
  CHECK(j["counts"]["fail"] == 0);
  CHECK(!j["checks"][0].contains("seconds"));

  r = run({"--format", "text", "verify", "masa", "--masa-sizes", "3"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("pass  heisenberg-3") != std::string::npos);

  r = run({"--max-nodes", "1", "verify", "ext-group-axioms", "--families", "cyclic", "--max-arrows", "3"});
  CHECK(r.code == kExitUnknown);
  CHECK(json::parse(r.out)["status"] == "unknown");

  r = run({"--timings", "verify", "power-decomposition", "--families", "cyclic", "--max-arrows", "3"});
  CHECK(json::parse(r.out)["checks"][0].contains("seconds"));

  CHECK(run({"verify", "no-such-suite"}).code == kExitIo);
}

TEST_CASE("reports are byte-identical across runs") {
  const std::vector<std::string> args = {"--seed", "7", "verify", "cocycle-roundtrip", "--families", "cyclic,pair",
                                         "--max-arrows", "4"};
  auto one = args, two = args;
  two.insert(two.begin(), {"--threads", "3"});
  const Run a = run(one), b = run(two);
  CHECK(a.code == kExitPass);
  CHECK(a.out == b.out);
  const Run c = run({"--seed", "8", "verify", "cocycle-roundtrip", "--families", "cyclic,pair", "--max-arrows", "4"});
  CHECK(c.code == kExitPass);
}

TEST_CASE("global options may follow the subcommand") {
  Workspace w;
  const auto z2 = w.put_text("z2.json", kZ2);
  const auto c = w.put("c.json", json{{"base", "z2.json"}, {"bundle", {{"fibers", {{"u", {2}}}}}},
                                      {"values", {{"g", "g", {1}}}}});
  const Run before = run({"--format", "text", "h2", c});
  const Run after = run({"h2", c, "--format", "text"});
  CHECK(before.code == kExitPass);
  CHECK(after.code == kExitPass);
  CHECK(after.out == before.out);
  CHECK(after.out == "2\n");
}
