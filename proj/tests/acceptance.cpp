// Acceptance runner: executes every named suite at its documented case count
// and prints one pass/fail line per criterion. Exit code 0 only if all pass.

#include <cstdio>
#include <string>
#include <vector>

#include "stonework/suites.hpp"

using namespace stonework;

int main() {
  struct Criterion {
    const char* label;
    const char* suite;
    uint64_t seed;
    int count;
  };
  // Case counts pinned to the documented acceptance configuration.
  const std::vector<Criterion> criteria = {
      {"1 stone round trips (200 random Boolean groupoids)", "stone-roundtrip", 1001, 200},
      {"2 twisted round trip (100 random (G,sigma), m in 1..4)", "twisted-roundtrip", 1002,
       100},
      {"3 combinatorial constants (34 / 7 / 17)", "constants", 1003, 1},
      {"4 delta homomorphism (500 random bisection pairs)", "delta-hom", 1004, 500},
      {"5 expectation laws (200 random elements)", "expectation", 1005, 200},
      {"6 principal iff masa (100 random measured groupoids)", "principal-masa", 1006, 100},
      {"7 separating / masa / effective dictionary", "char2-dictionary", 1007, 100},
      {"8 representation bijection (50 random elements)", "rep-bijection", 1008, 50},
      {"9 atoms refinement (200 random families)", "atoms-refinement", 1009, 200},
      {"10 Cartan recovery fixtures and random pipelines", "cartan-recovery", 1010, 10},
      {"11 twisted group algebra dimensions", "twisted-group-algebra", 1011, 1},
      {"12 modular function multiplicativity", "modular", 1012, 100},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Report rep;
    bool pass = false;
    std::string detail;
    try {
      rep = run_suite(c.suite, c.seed, c.count);
      pass = rep.all_pass();
      for (const auto& ch : rep.checks) {
        if (!ch.pass) detail += " [" + ch.name + ": " + ch.witness + "]";
        if (ch.pass && ch.name.find(".cases") != std::string::npos)
          detail += " " + ch.witness;
      }
    } catch (const std::exception& e) {
      detail = std::string(" exception: ") + e.what();
    }
    std::printf("[%s] criterion %s%s (%lld ms)\n", pass ? "PASS" : "FAIL", c.label,
                detail.c_str(), static_cast<long long>(rep.timing_ms));
    if (!pass) ++failures;
  }
  if (failures) std::printf("ACCEPTANCE: %d criterion(s) failed\n", failures);
  else std::printf("ACCEPTANCE: all 12 criteria passed\n");
  return failures == 0 ? 0 : 1;
}
