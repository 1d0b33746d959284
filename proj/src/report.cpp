#include "gext/report.hpp"

#include <sstream>

namespace gext {

void Report::add(const std::string& check, std::string witness) {
  auto& n = counts_[check];
  if (n < kMaxWitnesses) violations_.push_back({check, std::move(witness)});
  ++n;
  ++total_;
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& [check, n] : other.counts_) {
    std::size_t stored = 0;
    for (const auto& v : other.violations_) {
      if (v.check != check) continue;
      add(prefix + check, v.witness);
      ++stored;
    }
    // carry over the suppressed tail as plain counts
    for (std::size_t i = stored; i < n; ++i) {
      ++counts_[prefix + check];
      ++total_;
    }
  }
}

std::size_t Report::count(const std::string& check) const {
  auto it = counts_.find(check);
  return it == counts_.end() ? 0 : it->second;
}

std::string Report::to_string() const {
  if (ok()) return "ok\n";
  std::ostringstream os;
  for (const auto& v : violations_) os << v.check << ": " << v.witness << '\n';
  for (const auto& [check, n] : counts_)
    if (n > kMaxWitnesses) os << check << ": ... " << (n - kMaxWitnesses) << " more\n";
  return os.str();
}

}  // namespace gext
