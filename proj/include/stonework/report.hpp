#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace stonework {

// One verifiable statement in a command's output. The anchor is the stable
// identifier documented in docs/checks.md.
struct Check {
  std::string name;
  std::string anchor;
  bool pass = false;
  std::string witness;
};

struct Report {
  std::string command;
  std::vector<std::string> input_digests;
  std::vector<Check> checks;
  long long timing_ms = 0;

  void add(const std::string& name, const std::string& anchor, bool pass,
           const std::string& witness = "");
  int passed() const;
  int failed() const;
  bool all_pass() const { return failed() == 0; }

  // Machine format: deterministic for identical inputs and seeds (timing is
  // emitted as null). Text format carries the measured timing.
  nlohmann::json to_json() const;
  std::string to_text() const;
};

std::string fnv1a_digest(const std::string& bytes);
std::string digest_file(const std::string& path);

}  // namespace stonework
