#pragma once

// Named verification suites over the built-in corpus.

#include <string>
#include <vector>

#include "gext/algebra.hpp"
#include "gext/corpus.hpp"

namespace gext {

enum class Status { Pass, Fail, Unknown };

const char* to_string(Status s);

struct CheckResult {
  std::string name;
  Status status = Status::Pass;
  std::string witness;  // counterexample for fail, cap note for unknown
  double seconds = 0;
};

struct VerificationReport {
  std::string suite;
  std::string corpus;
  std::vector<CheckResult> checks;

  std::size_t count(Status s) const;
  /// Fail if anything failed, else Unknown if anything is unknown, else Pass.
  Status overall() const;
};

struct VerifyOptions {
  NumericOptions numeric;
  long long max_nodes = 1000000;
  CorpusOptions corpus;
  std::vector<int> masa_sizes = {2, 3, 4, 5};
  long long max_partitions = 200000;
  int threads = 0;  // 0 = hardware concurrency
};

const std::vector<std::string>& suite_names();

/// Throws Error for an unknown suite name.
VerificationReport run_suite(const std::string& suite, const VerifyOptions& opts = {});
VerificationReport run_suite(const std::string& suite, const Corpus& corpus, const VerifyOptions& opts);

}  // namespace gext
