#pragma once

// JSON documents for the file-level objects.
//
// Any field that holds a groupoid, bundle, action or extension accepts either
// an inline object or a string path, resolved against the directory of the
// referencing file. Writers always inline, so output files are self-contained.

#include <filesystem>
#include <string>

#include "json.hpp"

#include "gext/abelian.hpp"
#include "gext/algebra.hpp"
#include "gext/cohomology.hpp"
#include "gext/extension.hpp"
#include "gext/groupoid.hpp"
#include "gext/report.hpp"

namespace gext::io {

using json = nlohmann::json;

/// A parsed document and the directory its relative references resolve against.
struct Document {
  json doc;
  std::filesystem::path dir;
};

/// Throws IoError when the file is missing or not valid JSON.
Document read_document(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

/// "groupoid", "bundle", "action", "extension", "cocycle", "space" or "hom":
/// the "kind" field when present, otherwise inferred from the keys.
std::string document_kind(const json& doc);

json to_json(const FiniteGroupoid& g);
json to_json(const GroupBundle& b);
json to_json(const GroupoidAction& act);
json to_json(const Extension& e);
json to_json(const Cocycle2& phi);
json to_json(const RightSpace& x, const FiniteGroupoid& g);
json to_json(const BundleHom& f);
json to_json(const Fingerprint& f, const Report& checks = {});

/// `unit_order`, when given, must be a permutation of the file's units and
/// fixes the unit numbering of the result.
FiniteGroupoid groupoid_from_json(const Document& d, const std::vector<std::string>* unit_order = nullptr);
/// Fibres are ordered by `units`; every unit must be present.
GroupBundle bundle_from_json(const Document& d, const std::vector<std::string>& units);
/// Standalone bundle: units in identifier order.
GroupBundle bundle_from_json(const Document& d);
/// {"base", "bundle", "matrices"}; arrows without a matrix act by the identity.
GroupoidAction action_from_json(const Document& d);
Extension extension_from_json(const Document& d);
Cocycle2 cocycle_from_json(const Document& d);
RightSpace space_from_json(const Document& d, const FiniteGroupoid& g);
/// Homomorphism between two bundles over the units of `g`; units without a
/// matrix get the identity (same presentation required).
BundleHom hom_from_json(const Document& d, const FiniteGroupoid& g);

/// Resolves field `key` of `d` (inline object or path).
Document field(const Document& d, const std::string& key);

json report_checks(const Report& r);

}  // namespace gext::io
