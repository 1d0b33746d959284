#include "gext/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gext::io {

namespace fs = std::filesystem;

namespace {

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    throw Error(std::string(what) + ": missing field \"" + key + "\"");
  return j.at(key);
}

std::string as_string(const json& j, const char* what) {
  if (!j.is_string()) throw Error(std::string(what) + ": expected a string, got " + j.dump());
  return j.get<std::string>();
}

long long as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw Error(std::string(what) + ": expected an integer, got " + j.dump());
  return j.get<long long>();
}

Element element_from(const json& j, const AbelianGroup& fibre, const char* what) {
  if (!j.is_array()) throw Error(std::string(what) + ": element must be an array, got " + j.dump());
  if (static_cast<int>(j.size()) != fibre.rank())
    throw Error(std::string(what) + ": element " + j.dump() + " has wrong length for fibre of rank " +
                std::to_string(fibre.rank()));
  Element a;
  for (const auto& x : j) a.push_back(as_int(x, what));
  return fibre.reduce(std::move(a));
}

json element_to(const Element& a) { return json(a); }

ExponentMatrix matrix_from(const json& j, int rows, int cols, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw Error(std::string(what) + ": matrix must have " + std::to_string(rows) + " rows, got " + j.dump());
  ExponentMatrix m;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      throw Error(std::string(what) + ": matrix row must have " + std::to_string(cols) + " entries, got " +
                  row.dump());
    std::vector<long long> r;
    for (const auto& x : row) r.push_back(as_int(x, what));
    m.push_back(std::move(r));
  }
  return m;
}

bool is_identity(const ExponentMatrix& m, const AbelianGroup& a, const AbelianGroup& b) {
  return a == b && same_hom(m, identity_matrix(a.rank()), a, b);
}

std::vector<std::string> sorted_keys(const json& obj) {
  std::vector<std::string> keys;
  for (auto it = obj.begin(); it != obj.end(); ++it) keys.push_back(it.key());
  return keys;  // nlohmann objects iterate in key order
}

json action_fields(const GroupoidAction& act) {
  const auto& g = *act.groupoid();
  json ms = json::object();
  for (int a = 0; a < g.num_arrows(); ++a) {
    const auto& src = act.bundle().fiber(g.src(a));
    const auto& tgt = act.bundle().fiber(g.tgt(a));
    if (is_identity(act.matrix(a), src, tgt)) continue;
    ms[g.arrow_id(a)] = act.matrix(a);
  }
  json j;
  j["base"] = to_json(g);
  j["bundle"] = to_json(act.bundle());
  j["matrices"] = ms;
  return j;
}

GroupoidAction action_fields_from(const Document& d) {
  auto base = share(groupoid_from_json(field(d, "base")));
  GroupBundle bundle = bundle_from_json(field(d, "bundle"), base->unit_ids());
  std::vector<ExponentMatrix> ms(base->num_arrows());
  std::vector<bool> given(base->num_arrows(), false);
  if (d.doc.contains("matrices")) {
    const json& mj = d.doc.at("matrices");
    if (!mj.is_object()) throw Error("action: \"matrices\" must map arrow identifiers to matrices");
    for (auto it = mj.begin(); it != mj.end(); ++it) {
      const int a = base->arrow_index(it.key());
      ms[a] = matrix_from(it.value(), bundle.fiber(base->tgt(a)).rank(), bundle.fiber(base->src(a)).rank(),
                          "action");
      given[a] = true;
    }
  }
  for (int a = 0; a < base->num_arrows(); ++a) {
    if (given[a]) continue;
    const auto& src = bundle.fiber(base->src(a));
    const auto& tgt = bundle.fiber(base->tgt(a));
    if (!(src == tgt))
      throw Error("action: arrow " + base->arrow_id(a) + " joins fibres of different shape and has no matrix");
    ms[a] = identity_matrix(src.rank());
  }
  return GroupoidAction(base, std::move(bundle), std::move(ms));
}

}  // namespace

Document read_document(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  Document d;
  try {
    d.doc = json::parse(in);
  } catch (const json::parse_error& ex) {
    throw IoError("cannot parse " + path.string() + ": " + ex.what());
  }
  d.dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  return d;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

Document field(const Document& d, const std::string& key) {
  const json& j = require(d.doc, key.c_str(), "document");
  if (j.is_string()) {
    fs::path p = j.get<std::string>();
    if (p.is_relative()) p = d.dir / p;
    return read_document(p);
  }
  if (!j.is_object()) throw Error("field \"" + key + "\" must be an object or a file path");
  return {j, d.dir};
}

std::string document_kind(const json& doc) {
  if (!doc.is_object()) throw Error("document must be a JSON object");
  if (doc.contains("kind")) return as_string(doc.at("kind"), "kind");
  if (doc.contains("iota")) return "extension";
  if (doc.contains("values")) return "cocycle";
  if (doc.contains("points")) return "space";
  if (doc.contains("source") && doc.contains("target")) return "hom";
  if (doc.contains("base") && doc.contains("bundle")) return "action";
  if (doc.contains("units") && doc.contains("arrows")) return "groupoid";
  if (doc.contains("fibers")) return "bundle";
  throw Error("cannot tell what kind of document this is");
}

// ---------------------------------------------------------------------------

json to_json(const FiniteGroupoid& g) {
  json j;
  j["kind"] = "groupoid";
  j["units"] = g.unit_ids();
  json arrows = json::array();
  for (int a = 0; a < g.num_arrows(); ++a)
    arrows.push_back({{"id", g.arrow_id(a)}, {"src", g.unit_id(g.src(a))}, {"tgt", g.unit_id(g.tgt(a))}});
  j["arrows"] = arrows;
  json comp = json::array();
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int b = 0; b < g.num_arrows(); ++b) {
      const int ab = g.comp(a, b);
      if (ab != FiniteGroupoid::kNone) comp.push_back({g.arrow_id(a), g.arrow_id(b), g.arrow_id(ab)});
    }
  j["comp"] = comp;
  json inv = json::array();
  for (int a = 0; a < g.num_arrows(); ++a)
    if (g.inv(a) != FiniteGroupoid::kNone) inv.push_back({g.arrow_id(a), g.arrow_id(g.inv(a))});
  j["inv"] = inv;
  return j;
}

FiniteGroupoid groupoid_from_json(const Document& d, const std::vector<std::string>* unit_order) {
  const json& j = d.doc;
  std::vector<std::string> units;
  for (const auto& u : require(j, "units", "groupoid")) units.push_back(as_string(u, "groupoid unit"));
  if (unit_order) {
    std::vector<std::string> a = units, b = *unit_order;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw Error("groupoid: unit set differs from the expected one");
    units = *unit_order;
  }
  std::vector<ArrowSpec> arrows;
  for (const auto& a : require(j, "arrows", "groupoid"))
    arrows.push_back({as_string(require(a, "id", "arrow"), "arrow id"), as_string(require(a, "src", "arrow"), "src"),
                      as_string(require(a, "tgt", "arrow"), "tgt")});
  std::vector<std::array<std::string, 3>> comp;
  if (j.contains("comp"))
    for (const auto& t : j.at("comp")) {
      if (!t.is_array() || t.size() != 3) throw Error("groupoid: comp entries are [a, b, ab], got " + t.dump());
      comp.push_back({as_string(t[0], "comp"), as_string(t[1], "comp"), as_string(t[2], "comp")});
    }
  std::vector<std::pair<std::string, std::string>> inv;
  if (j.contains("inv"))
    for (const auto& t : j.at("inv")) {
      if (!t.is_array() || t.size() != 2) throw Error("groupoid: inv entries are [a, a_inv], got " + t.dump());
      inv.emplace_back(as_string(t[0], "inv"), as_string(t[1], "inv"));
    }
  return FiniteGroupoid(std::move(units), arrows, comp, inv);
}

json to_json(const GroupBundle& b) {
  json fibers = json::object();
  for (int u = 0; u < b.num_units(); ++u) fibers[b.unit_ids()[u]] = b.fiber(u).factors();
  return {{"kind", "bundle"}, {"fibers", fibers}};
}

namespace {
AbelianGroup fibre_from(const json& j, const std::string& unit) {
  if (!j.is_array()) throw Error("bundle: fibre of " + unit + " must be a list of cyclic orders");
  std::vector<long long> f;
  for (const auto& x : j) {
    const long long d = as_int(x, "bundle");
    if (d < 0) throw Error("bundle: negative cyclic order at " + unit);
    f.push_back(d);
  }
  return AbelianGroup(std::move(f));
}
}  // namespace

GroupBundle bundle_from_json(const Document& d, const std::vector<std::string>& units) {
  const json& f = require(d.doc, "fibers", "bundle");
  if (!f.is_object()) throw Error("bundle: \"fibers\" must map unit identifiers to orders");
  std::set<std::string> known(units.begin(), units.end());
  for (auto it = f.begin(); it != f.end(); ++it)
    if (!known.count(it.key())) throw Error("bundle: unknown unit " + it.key());
  std::vector<AbelianGroup> fibers;
  for (const auto& u : units) {
    if (!f.contains(u)) throw Error("bundle: no fibre over unit " + u);
    fibers.push_back(fibre_from(f.at(u), u));
  }
  return GroupBundle(units, std::move(fibers));
}

GroupBundle bundle_from_json(const Document& d) {
  const json& f = require(d.doc, "fibers", "bundle");
  if (!f.is_object()) throw Error("bundle: \"fibers\" must map unit identifiers to orders");
  return bundle_from_json(d, sorted_keys(f));
}

json to_json(const GroupoidAction& act) {
  json j = action_fields(act);
  j["kind"] = "action";
  return j;
}

GroupoidAction action_from_json(const Document& d) { return action_fields_from(d); }

json to_json(const Extension& e) {
  json j = action_fields(e.action);
  j["kind"] = "extension";
  j["total"] = to_json(*e.total);
  const auto& g = *e.base();
  json iota = json::array();
  for (int u = 0; u < g.num_units(); ++u) {
    const auto& f = e.kernel().fiber(u);
    for (long long i = 0; i < f.order(); ++i)
      iota.push_back({{g.unit_id(u), element_to(f.element(i))}, e.total->arrow_id(e.iota[u][i])});
  }
  j["iota"] = iota;
  json proj = json::array();
  for (int s = 0; s < e.total->num_arrows(); ++s)
    proj.push_back({e.total->arrow_id(s), g.arrow_id(e.proj[s])});
  j["proj"] = proj;
  return j;
}

Extension extension_from_json(const Document& d) {
  Extension e;
  e.action = action_fields_from(d);
  const auto& g = *e.base();
  e.total = share(groupoid_from_json(field(d, "total"), &g.unit_ids()));
  if (!e.kernel().is_finite()) throw Error("extension: kernel fibres must be finite");
  e.iota.resize(g.num_units());
  for (int u = 0; u < g.num_units(); ++u)
    e.iota[u].assign(static_cast<std::size_t>(e.kernel().fiber(u).order()), FiniteGroupoid::kNone);
  for (const auto& t : require(d.doc, "iota", "extension")) {
    if (!t.is_array() || t.size() != 2 || !t[0].is_array() || t[0].size() != 2)
      throw Error("extension: iota entries are [[unit, element], arrow], got " + t.dump());
    const int u = g.unit_index(as_string(t[0][0], "iota unit"));
    const Element a = element_from(t[0][1], e.kernel().fiber(u), "iota");
    auto& slot = e.iota[u][e.kernel().fiber(u).index_of(a)];
    if (slot != FiniteGroupoid::kNone) throw Error("extension: iota given twice for " + t[0].dump());
    slot = e.total->arrow_index(as_string(t[1], "iota arrow"));
  }
  for (int u = 0; u < g.num_units(); ++u)
    for (std::size_t i = 0; i < e.iota[u].size(); ++i)
      if (e.iota[u][i] == FiniteGroupoid::kNone)
        throw Error("extension: iota missing for " + g.unit_id(u) + " " +
                    e.kernel().fiber(u).format(e.kernel().fiber(u).element(static_cast<long long>(i))));
  e.proj.assign(e.total->num_arrows(), FiniteGroupoid::kNone);
  for (const auto& t : require(d.doc, "proj", "extension")) {
    if (!t.is_array() || t.size() != 2) throw Error("extension: proj entries are [arrow, base arrow], got " + t.dump());
    const int s = e.total->arrow_index(as_string(t[0], "proj"));
    if (e.proj[s] != FiniteGroupoid::kNone) throw Error("extension: proj given twice for " + e.total->arrow_id(s));
    e.proj[s] = g.arrow_index(as_string(t[1], "proj"));
  }
  for (int s = 0; s < e.total->num_arrows(); ++s)
    if (e.proj[s] == FiniteGroupoid::kNone) throw Error("extension: proj missing for " + e.total->arrow_id(s));
  return e;
}

json to_json(const Cocycle2& phi) {
  json j = action_fields(phi.action);
  j["kind"] = "cocycle";
  const auto& g = *phi.action.groupoid();
  json values = json::array();
  for (int a = 0; a < g.num_arrows(); ++a)
    for (int b = 0; b < g.num_arrows(); ++b) {
      if (!g.composable(a, b)) continue;
      const Element& v = phi(a, b);
      if (v.empty() || phi.action.bundle().fiber(g.tgt(a)).is_zero(v)) continue;
      values.push_back({g.arrow_id(a), g.arrow_id(b), element_to(v)});
    }
  j["values"] = values;
  return j;
}

Cocycle2 cocycle_from_json(const Document& d) {
  Cocycle2 phi = Cocycle2::zero(action_fields_from(d));
  const auto& g = *phi.action.groupoid();
  for (const auto& t : require(d.doc, "values", "cocycle")) {
    if (!t.is_array() || t.size() != 3) throw Error("cocycle: values are [arrow1, arrow2, element], got " + t.dump());
    const int a = g.arrow_index(as_string(t[0], "cocycle"));
    const int b = g.arrow_index(as_string(t[1], "cocycle"));
    if (!g.composable(a, b))
      throw Error("cocycle: pair (" + g.arrow_id(a) + ", " + g.arrow_id(b) + ") is not composable");
    phi.at(a, b) = element_from(t[2], phi.action.bundle().fiber(g.tgt(a)), "cocycle");
  }
  return phi;
}

json to_json(const RightSpace& x, const FiniteGroupoid& g) {
  json j;
  j["kind"] = "space";
  json points = json::array();
  for (int p = 0; p < x.num_points(); ++p) points.push_back({{"id", x.points[p]}, {"anchor", g.unit_id(x.anchor[p])}});
  j["points"] = points;
  json act = json::array();
  for (int p = 0; p < x.num_points(); ++p)
    for (int a = 0; a < g.num_arrows(); ++a) {
      const int q = x.apply(p, a, g.num_arrows());
      if (q != FiniteGroupoid::kNone) act.push_back({x.points[p], g.arrow_id(a), x.points[q]});
    }
  j["act"] = act;
  return j;
}

RightSpace space_from_json(const Document& d, const FiniteGroupoid& g) {
  RightSpace x;
  std::map<std::string, int> index;
  for (const auto& p : require(d.doc, "points", "space")) {
    const std::string id = as_string(require(p, "id", "point"), "point id");
    if (!index.emplace(id, x.num_points()).second) throw Error("space: duplicate point " + id);
    x.points.push_back(id);
    x.anchor.push_back(g.unit_index(as_string(require(p, "anchor", "point"), "anchor")));
  }
  x.act.assign(static_cast<std::size_t>(x.num_points()) * g.num_arrows(), FiniteGroupoid::kNone);
  auto point = [&](const json& j) {
    const std::string id = as_string(j, "space");
    auto it = index.find(id);
    if (it == index.end()) throw Error("space: unknown point " + id);
    return it->second;
  };
  for (const auto& t : require(d.doc, "act", "space")) {
    if (!t.is_array() || t.size() != 3) throw Error("space: act entries are [point, arrow, point], got " + t.dump());
    const int p = point(t[0]);
    const int a = g.arrow_index(as_string(t[1], "space"));
    x.act[static_cast<std::size_t>(p) * g.num_arrows() + a] = point(t[2]);
  }
  return x;
}

json to_json(const BundleHom& f) {
  json ms = json::object();
  for (int u = 0; u < f.source.num_units(); ++u) ms[f.source.unit_ids()[u]] = f.matrices[u];
  return {{"kind", "hom"}, {"source", to_json(f.source)}, {"target", to_json(f.target)}, {"matrices", ms}};
}

BundleHom hom_from_json(const Document& d, const FiniteGroupoid& g) {
  BundleHom f;
  f.source = bundle_from_json(field(d, "source"), g.unit_ids());
  f.target = bundle_from_json(field(d, "target"), g.unit_ids());
  f.matrices.resize(g.num_units());
  std::vector<bool> given(g.num_units(), false);
  if (d.doc.contains("matrices")) {
    const json& mj = d.doc.at("matrices");
    if (!mj.is_object()) throw Error("hom: \"matrices\" must map unit identifiers to matrices");
    for (auto it = mj.begin(); it != mj.end(); ++it) {
      const int u = g.unit_index(it.key());
      f.matrices[u] = matrix_from(it.value(), f.target.fiber(u).rank(), f.source.fiber(u).rank(), "hom");
      given[u] = true;
    }
  }
  for (int u = 0; u < g.num_units(); ++u) {
    if (given[u]) continue;
    if (!(f.source.fiber(u) == f.target.fiber(u)))
      throw Error("hom: no matrix over " + g.unit_id(u) + " and the fibres differ");
    f.matrices[u] = identity_matrix(f.source.fiber(u).rank());
  }
  return f;
}

json report_checks(const Report& r) {
  json checks = json::array();
  for (const auto& v : r.violations()) checks.push_back({{"name", v.check}, {"status", "fail"}, {"witness", v.witness}});
  return checks;
}

json to_json(const Fingerprint& f, const Report& checks) {
  return {{"dimension", f.dimension}, {"blocks", f.blocks}, {"checks", report_checks(checks)}};
}

}  // namespace gext::io
