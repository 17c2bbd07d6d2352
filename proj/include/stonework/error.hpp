#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace stonework {

// Structured failure: a stable machine-readable code plus the witness data
// (element/arrow indices) that triggered it.
class Error : public std::runtime_error {
public:
  Error(std::string code, std::string detail, std::vector<long long> witness = {})
      : std::runtime_error(code + (detail.empty() ? "" : ": " + detail)),
        code_(std::move(code)),
        detail_(std::move(detail)),
        witness_(std::move(witness)) {}

  const std::string& code() const { return code_; }
  const std::string& detail() const { return detail_; }
  const std::vector<long long>& witness() const { return witness_; }

private:
  std::string code_;
  std::string detail_;
  std::vector<long long> witness_;
};

}  // namespace stonework
