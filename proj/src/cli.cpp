#include "gext/cli.hpp"

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "gext/algebra.hpp"
#include "gext/cohomology.hpp"
#include "gext/corpus.hpp"
#include "gext/serialize.hpp"
#include "gext/verify.hpp"

namespace gext {

namespace {

using io::json;

struct Global {
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  long long max_nodes = 1000000;
  std::string format = "json";
  bool timings = false;
  int threads = 0;

  NumericOptions numeric() const {
    NumericOptions o;
    o.tolerance = tolerance;
    o.seed += seed;
    return o;
  }
};

std::string seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", s);
  return buf;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::string group_text(const std::vector<long long>& factors) {
  if (factors.empty()) return "trivial";
  std::string s;
  for (auto f : factors) s += (s.empty() ? "" : " ") + std::to_string(f);
  return s;
}

// ---------------------------------------------------------------------------

Report validate_document(const io::Document& d, const std::string& kind) {
  Report r;
  if (kind == "groupoid") return validate_groupoid(io::groupoid_from_json(d));
  if (kind == "bundle") {
    io::bundle_from_json(d);
    return r;
  }
  if (kind == "action") {
    const GroupoidAction act = io::action_from_json(d);
    r.merge(validate_groupoid(*act.groupoid()), "base: ");
    if (r.ok()) r.merge(validate_action(act));
    return r;
  }
  if (kind == "extension") {
    const Extension e = io::extension_from_json(d);
    r.merge(validate_groupoid(*e.base()), "base: ");
    r.merge(validate_groupoid(*e.total), "total: ");
    if (r.ok()) r.merge(validate_action(e.action));
    if (r.ok()) r.merge(validate_extension(e));
    return r;
  }
  if (kind == "cocycle") {
    const Cocycle2 phi = io::cocycle_from_json(d);
    r.merge(validate_groupoid(*phi.action.groupoid()), "base: ");
    if (r.ok()) r.merge(validate_action(phi.action));
    if (r.ok()) r.merge(validate_cocycle(phi));
    return r;
  }
  if (kind == "space") {
    const FiniteGroupoid g = io::groupoid_from_json(io::field(d, "groupoid"));
    r.merge(validate_groupoid(g), "groupoid: ");
    if (r.ok()) r.merge(validate_space(g, io::space_from_json(d, g)));
    return r;
  }
  if (kind == "hom") {
    const io::Document src = io::field(d, "source");
    const GroupBundle a = io::bundle_from_json(src);
    std::vector<ArrowSpec> arrows;
    for (const auto& u : a.unit_ids()) arrows.push_back({u, u, u});
    std::vector<std::array<std::string, 3>> comp;
    std::vector<std::pair<std::string, std::string>> inv;
    for (const auto& u : a.unit_ids()) {
      comp.push_back({u, u, u});
      inv.emplace_back(u, u);
    }
    const FiniteGroupoid units(a.unit_ids(), arrows, comp, inv);
    const BundleHom f = io::hom_from_json(d, units);
    for (int u = 0; u < units.num_units(); ++u)
      if (!well_defined(f.matrices[u], f.source.fiber(u), f.target.fiber(u)))
        r.add("well-defined", units.unit_id(u));
    return r;
  }
  throw Error("validate: unsupported document kind " + kind);
}

int cmd_validate(const Global& gl, const std::string& path, std::ostream& out) {
  const io::Document d = io::read_document(path);
  const std::string kind = io::document_kind(d.doc);
  const Report r = validate_document(d, kind);
  if (gl.format == "json") {
    emit(out, {{"kind", kind}, {"status", r.ok() ? "pass" : "fail"}, {"checks", io::report_checks(r)}});
  } else {
    out << (r.ok() ? "pass " : "fail ") << kind << "\n";
    for (const auto& v : r.violations()) out << "  " << v.check << ": " << v.witness << "\n";
  }
  return r.ok() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------

Extension load_extension(const std::string& path) { return io::extension_from_json(io::read_document(path)); }

json build(const std::string& kind, const std::vector<std::string>& in, long long modulus) {
  auto need = [&](std::size_t lo, std::size_t hi, const char* usage) {
    if (in.size() < lo || in.size() > hi) throw Error(std::string("build ") + kind + ": usage: " + usage);
  };
  if (kind == "semidirect") {
    need(1, 1, "semidirect ACTION");
    const GroupoidAction act = io::action_from_json(io::read_document(in[0]));
    const Report r = validate_action(act);
    if (!r.ok()) throw Error("semidirect: invalid action: " + r.to_string());
    return io::to_json(semidirect(act));
  }
  if (kind == "from-cocycle") {
    need(1, 1, "from-cocycle COCYCLE");
    return io::to_json(extension_from_cocycle(io::cocycle_from_json(io::read_document(in[0]))));
  }
  if (kind == "pushout") {
    need(2, 3, "pushout EXTENSION HOM [TARGET-ACTION]");
    const Extension e = load_extension(in[0]);
    const BundleHom f = io::hom_from_json(io::read_document(in[1]), *e.base());
    GroupoidAction target;
    if (in.size() == 3) {
      target = io::action_from_json(io::read_document(in[2]));
      if (!(*target.groupoid() == *e.base())) throw Error("pushout: target action is over a different groupoid");
      target = GroupoidAction(e.base(), target.bundle(), target.matrices());
    } else {
      target = GroupoidAction::trivial(e.base(), f.target);
    }
    return io::to_json(pushout(f, target, e).extension);
  }
  if (kind == "baer-sum") {
    need(2, 2, "baer-sum EXTENSION EXTENSION");
    const Extension e1 = load_extension(in[0]);
    Extension e2 = load_extension(in[1]);
    if (!same_extension_data(e1, e2)) throw Error("baer-sum: extensions over different data");
    e2.action = e1.action;  // share the base pointer
    return io::to_json(baer_sum(e1, e2));
  }
  if (kind == "inverse") {
    need(1, 1, "inverse EXTENSION");
    return io::to_json(inverse_ext(load_extension(in[0])));
  }
  if (kind == "t-groupoid") {
    need(1, 1, "t-groupoid EXTENSION");
    return io::to_json(t_groupoid(load_extension(in[0]), modulus).extension);
  }
  if (kind == "transformation") {
    need(2, 2, "transformation GROUPOID SPACE");
    auto g = share(io::groupoid_from_json(io::read_document(in[0])));
    const RightSpace x = io::space_from_json(io::read_document(in[1]), *g);
    const Report r = validate_space(*g, x);
    if (!r.ok()) throw Error("transformation: invalid space: " + r.to_string());
    return io::to_json(*transformation_groupoid(g, x).groupoid);
  }
  throw Error("build: unknown kind " + kind);
}

// ---------------------------------------------------------------------------

GroupoidAction load_action_any(const std::string& path) {
  const io::Document d = io::read_document(path);
  const std::string kind = io::document_kind(d.doc);
  if (kind == "action" || kind == "cocycle") return io::action_from_json(d);
  if (kind == "extension") return io::extension_from_json(d).action;
  throw Error("h2: expected an action, cocycle or extension document, got " + kind);
}

int cmd_h2(const Global& gl, const std::string& path, std::ostream& out) {
  const GroupoidAction act = load_action_any(path);
  Report r = validate_groupoid(*act.groupoid());
  if (r.ok()) r.merge(validate_action(act));
  if (!r.ok()) throw Error("h2: invalid action: " + r.to_string());
  const CohomologyGroup h = h2(act);
  if (gl.format == "json") {
    json basis = json::array();
    for (const auto& b : h.basis) basis.push_back(io::to_json(b)["values"]);
    emit(out, {{"invariant_factors", h.invariant_factors}, {"order", h.order()}, {"representatives", basis}});
  } else {
    out << group_text(h.invariant_factors) << "\n";
  }
  return kExitPass;
}

int cmd_fingerprint(const Global& gl, const std::string& path, std::optional<long long> k, std::ostream& out) {
  const io::Document d = io::read_document(path);
  const std::string kind = io::document_kind(d.doc);
  ConvolutionAlgebra a;
  if (kind == "groupoid") {
    a = groupoid_algebra(io::groupoid_from_json(d));
  } else if (kind == "extension") {
    const Extension e = io::extension_from_json(d);
    a = k ? twisted_algebra(e, *k) : groupoid_algebra(*e.total);
  } else {
    throw Error("fingerprint: expected a groupoid or extension document, got " + kind);
  }
  const Report r = validate_algebra(a);
  const Fingerprint f = fingerprint(a, gl.numeric());
  if (gl.format == "json") {
    emit(out, io::to_json(f, r));
  } else {
    out << format(f) << "\n";
    for (const auto& v : r.violations()) out << "  fail " << v.check << ": " << v.witness << "\n";
  }
  return r.ok() ? kExitPass : kExitFail;
}

// ---------------------------------------------------------------------------

int cmd_verify(const Global& gl, const std::string& suite, VerifyOptions vo, std::ostream& out) {
  vo.numeric = gl.numeric();
  vo.max_nodes = gl.max_nodes;
  vo.threads = gl.threads;
  vo.corpus.seed = gl.seed;
  const auto t0 = std::chrono::steady_clock::now();
  const VerificationReport rep = run_suite(suite, vo);
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const Status st = rep.overall();
  if (gl.format == "json") {
    json checks = json::array();
    for (const auto& c : rep.checks) {
      json j = {{"name", c.name}, {"status", to_string(c.status)}, {"witness", c.witness}};
      if (gl.timings) j["seconds"] = std::stod(seconds(c.seconds));
      checks.push_back(j);
    }
    json j = {{"suite", rep.suite},
              {"corpus", rep.corpus},
              {"seed", gl.seed},
              {"status", to_string(st)},
              {"counts",
               {{"pass", rep.count(Status::Pass)}, {"fail", rep.count(Status::Fail)}, {"unknown", rep.count(Status::Unknown)}}},
              {"checks", checks}};
    if (gl.timings) j["seconds"] = std::stod(seconds(total));
    emit(out, j);
  } else {
    for (const auto& c : rep.checks) {
      out << to_string(c.status) << "  " << c.name;
      if (!c.witness.empty()) out << ": " << c.witness;
      if (gl.timings) out << " [" << seconds(c.seconds) << "s]";
      out << "\n";
    }
    out << rep.suite << ": " << to_string(st) << " (" << rep.count(Status::Pass) << " pass, "
        << rep.count(Status::Fail) << " fail, " << rep.count(Status::Unknown) << " unknown)";
    if (gl.timings) out << " in " << seconds(total) << "s";
    out << "\n";
  }
  if (st == Status::Fail) return kExitFail;
  if (st == Status::Unknown) return kExitUnknown;
  return kExitPass;
}

int cmd_corpus(const Global& gl, CorpusOptions co, std::ostream& out) {
  co.seed = gl.seed;
  const Corpus c = builtin_corpus(co);
  if (gl.format == "json") {
    json items = json::array();
    for (const auto& it : c.items) items.push_back({{"name", it.name}, {"arrows", it.extension.total->num_arrows()}});
    json data = json::array();
    for (const auto& d : c.data)
      data.push_back({{"name", d.name}, {"h2", d.h2.invariant_factors}, {"classes", d.classes}});
    emit(out, {{"version", c.version}, {"data", data}, {"items", items}});
  } else {
    out << c.version << ": " << c.data.size() << " data, " << c.items.size() << " extensions\n";
    for (const auto& it : c.items) out << it.name << "  |Sigma| = " << it.extension.total->num_arrows() << "\n";
  }
  return kExitPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite groupoid extensions, H^2 and twisted convolution algebras"};
  app.require_subcommand(1);
  app.fallthrough();
  Global gl;
  app.add_option("--seed", gl.seed, "Seed for every randomized step")->capture_default_str();
  app.add_option("--tolerance", gl.tolerance, "Numerical tolerance for eigenvalue clustering")->capture_default_str();
  app.add_option("--max-nodes", gl.max_nodes, "Node cap for the isomorphism search")->capture_default_str();
  app.add_option("--format", gl.format, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_flag("--timings", gl.timings, "Include wall times in reports");
  app.add_option("--threads", gl.threads, "Worker threads for verify (0 = all cores)")->capture_default_str();

  std::string path;
  auto* validate = app.add_subcommand("validate", "Validate a groupoid, bundle, action, extension, cocycle, space or hom file");
  validate->add_option("file", path, "Document to validate")->required();

  std::string kind;
  std::vector<std::string> inputs;
  std::string output;
  long long modulus = 0;
  auto* build_cmd = app.add_subcommand("build", "Run a construction and write the result");
  build_cmd->add_option("kind", kind, "Construction")
      ->required()
      ->check(CLI::IsMember({"semidirect", "from-cocycle", "pushout", "baer-sum", "inverse", "t-groupoid",
                             "transformation"}));
  build_cmd->add_option("inputs", inputs, "Input files");
  build_cmd->add_option("-o,--output", output, "Output file (default stdout)");
  build_cmd->add_option("--modulus", modulus, "Root-of-unity modulus for t-groupoid (0 = lcm of fibre exponents)");

  auto* h2_cmd = app.add_subcommand("h2", "Invariant factors of H^2 for an action (or the action of a cocycle/extension)");
  h2_cmd->add_option("file", path, "Action document")->required();

  std::optional<long long> k;
  auto* fp_cmd = app.add_subcommand("fingerprint", "Wedderburn block sizes of a groupoid or twisted algebra");
  fp_cmd->add_option("file", path, "Groupoid or extension document")->required();
  fp_cmd->add_option("--k", k, "Use the k-th twisted algebra of a cyclic central extension");

  std::string suite;
  VerifyOptions vo;
  auto add_corpus_options = [&](CLI::App* sub) {
    sub->add_option("--families", vo.corpus.families, "Corpus families (cyclic, klein, s3, pair, union, heisenberg)")
        ->delimiter(',');
    sub->add_option("--max-arrows", vo.corpus.max_arrows, "Largest base groupoid")->capture_default_str();
    sub->add_option("--max-exponent", vo.corpus.max_exponent, "Largest fibre exponent")->capture_default_str();
    sub->add_option("--max-classes", vo.corpus.max_classes, "Extensions per (base, bundle, action)")
        ->capture_default_str();
    sub->add_option("--max-actions", vo.corpus.max_actions, "Actions per (base, bundle), 0 = all")
        ->capture_default_str();
  };
  auto* verify = app.add_subcommand("verify", "Run a verification suite on the built-in corpus");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  add_corpus_options(verify);
  verify->add_option("--masa-sizes", vo.masa_sizes, "Heisenberg sizes for the masa suite")->delimiter(',');
  verify->add_option("--max-partitions", vo.max_partitions, "Cap on invariant partitions per algebra")
      ->capture_default_str();

  auto* corpus = app.add_subcommand("corpus", "List the built-in corpus");
  add_corpus_options(corpus);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitIo;
  }

  try {
    if (*validate) return cmd_validate(gl, path, out);
    if (*build_cmd) {
      const json j = build(kind, inputs, modulus);
      if (output.empty())
        emit(out, j);
      else
        io::write_file(output, j.dump(2) + "\n");
      return kExitPass;
    }
    if (*h2_cmd) return cmd_h2(gl, path, out);
    if (*fp_cmd) return cmd_fingerprint(gl, path, k, out);
    if (*verify) return cmd_verify(gl, suite, vo, out);
    if (*corpus) return cmd_corpus(gl, vo.corpus, out);
  } catch (const IoError& ex) {
    err << "gext: " << ex.what() << "\n";
    return kExitIo;
  } catch (const gext::Error& ex) {
    err << "gext: " << ex.what() << "\n";
    return kExitFail;
  } catch (const nlohmann::json::exception& ex) {
    err << "gext: malformed document: " << ex.what() << "\n";
    return kExitFail;
  }
  return kExitFail;
}

}  // namespace gext
