#pragma once

// Built-in corpus of extensions used by the verification suites.
//
// Data = (base groupoid, bundle, action). For every base in the selected
// families, every bundle in the fibre list and every action of the base on it,
// one extension is generated per class of H^2, up to `max_classes` classes in
// mixed-radix order of the class coordinates. Each extension is built from a
// class representative plus a random coboundary and then has its arrows
// shuffled, so tables differ from the plain cocycle model.

#include <cstdint>
#include <string>
#include <vector>

#include "gext/abelian.hpp"
#include "gext/cohomology.hpp"
#include "gext/extension.hpp"
#include "gext/groupoid.hpp"

namespace gext {

inline constexpr const char* kCorpusVersion = "builtin-v1";

struct CorpusOptions {
  int max_arrows = 6;
  long long max_exponent = 4;
  int max_classes = 8;   // per (base, bundle, action)
  int max_actions = 0;   // per (base, bundle); 0 = no cap
  std::uint64_t seed = 0;
  /// Subset of {"cyclic", "klein", "s3", "pair", "union", "heisenberg"}; empty = all.
  std::vector<std::string> families;
};

struct CorpusData {
  std::string name;
  GroupoidAction action;
  CohomologyGroup h2;
  int classes = 0;  // number of classes generated (capped)
};

struct CorpusItem {
  std::string name;
  int data = 0;                  // index into Corpus::data
  std::vector<long long> coords; // class coordinates against data.h2.basis
  Extension extension;
};

struct Corpus {
  std::string version = kCorpusVersion;
  std::vector<CorpusData> data;
  std::vector<CorpusItem> items;
};

struct NamedGroupoid {
  std::string family;
  std::string name;
  FiniteGroupoid groupoid;
};

/// Bases of the selected families with at most `max_arrows` arrows.
std::vector<NamedGroupoid> corpus_bases(const CorpusOptions& opts);

Corpus builtin_corpus(const CorpusOptions& opts = {});

/// Automorphisms of a finite group, as exponent matrices.
std::vector<ExponentMatrix> automorphisms(const AbelianGroup& a);
/// Every homomorphism a -> b.
std::vector<ExponentMatrix> homomorphisms(const AbelianGroup& a, const AbelianGroup& b);

/// Every action of g on the bundle (fibres joined by an arrow must share a
/// presentation). `cap` 0 means no cap.
std::vector<GroupoidAction> all_actions(const GroupoidPtr& g, const GroupBundle& bundle, int cap = 0);

/// Same extension with arrow i of the new total equal to arrow perm[i] of the old one.
Extension relabel(const Extension& e, const std::vector<int>& perm);

/// Set partitions of {0, ..., k-1} as restricted growth strings. Throws when
/// there are more than `cap` of them.
std::vector<std::vector<int>> set_partitions(int k, long long cap = 200000);

}  // namespace gext
