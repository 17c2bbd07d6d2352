#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace stonework {

// One linear equation sum_j coef[j]*x[cols[j]] = rhs over Z/m.
struct ZmodEq {
  std::vector<int> cols;
  std::vector<long long> coef;
  long long rhs = 0;
};

// Solves the system over Z/m (m >= 1, composite allowed) via CRT over prime
// powers with valuation-pivot elimination. Returns one solution in [0, m) per
// unknown, or nullopt when the system is inconsistent.
std::optional<std::vector<long long>> zmod_solve(const std::vector<ZmodEq>& eqs,
                                                 int unknowns, long long m);

}  // namespace stonework
