#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gext {

/// Raised when a construction's preconditions fail (invalid or mismatched input).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a file cannot be opened or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

struct Violation {
  std::string check;
  std::string witness;
};

/// Report-style validation result: every violated axiom is collected with a
/// witness. At most kMaxWitnesses witnesses are stored per check name; the
/// rest are only counted.
class Report {
 public:
  static constexpr std::size_t kMaxWitnesses = 16;

  void add(const std::string& check, std::string witness);
  void merge(const Report& other, const std::string& prefix = {});

  bool ok() const noexcept { return total_ == 0; }
  std::size_t total() const noexcept { return total_; }
  const std::vector<Violation>& violations() const noexcept { return violations_; }
  std::size_t count(const std::string& check) const;
  bool has(const std::string& check) const { return count(check) > 0; }

  std::string to_string() const;

 private:
  std::vector<Violation> violations_;
  std::map<std::string, std::size_t> counts_;
  std::size_t total_ = 0;
};

}  // namespace gext
