#include "stonework/report.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "stonework/error.hpp"

namespace stonework {

void Report::add(const std::string& name, const std::string& anchor, bool pass,
                 const std::string& witness) {
  checks.push_back(Check{name, anchor, pass, witness});
}

int Report::passed() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass ? 1 : 0;
  return n;
}

int Report::failed() const { return static_cast<int>(checks.size()) - passed(); }

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["format"] = "stonework/report";
  j["version"] = 1;
  j["command"] = command;
  j["inputs"] = input_digests;
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["anchor"] = c.anchor;
    cj["pass"] = c.pass;
    cj["witness"] = c.witness;
    cs.push_back(cj);
  }
  j["checks"] = cs;
  j["passed"] = passed();
  j["failed"] = failed();
  j["timing_ms"] = nullptr;
  return j;
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "stonework " << command << "\n";
  for (const auto& d : input_digests) os << "input " << d << "\n";
  for (const auto& c : checks) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " (" << c.anchor << ")";
    if (!c.witness.empty()) os << ": " << c.witness;
    os << "\n";
  }
  os << "summary: " << passed() << "/" << checks.size() << " passed, " << timing_ms
     << " ms\n";
  return os.str();
}

std::string fnv1a_digest(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("ParseError", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return fnv1a_digest(ss.str());
}

}  // namespace stonework
