#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

#include "stonework/inverse_semigroup.hpp"

// Oracle constructions built directly on partial injections, independent of
// the groupoid/bisection code paths they are used to check.
namespace oracle {

using PartialMap = std::vector<int>;  // image per point, -1 undefined

inline std::vector<PartialMap> all_partial_injections(int n) {
  std::vector<PartialMap> out;
  PartialMap cur(n, -1);
  std::vector<char> used(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    cur[i] = -1;
    rec(i + 1);
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      used[j] = 1;
      cur[i] = j;
      rec(i + 1);
      cur[i] = -1;
      used[j] = 0;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

inline PartialMap compose(const PartialMap& f, const PartialMap& g) {
  PartialMap r(f.size(), -1);
  for (size_t x = 0; x < g.size(); ++x)
    if (g[x] >= 0 && f[g[x]] >= 0) r[x] = f[g[x]];
  return r;
}

// Symmetric inverse monoid I_n as a raw multiplication table.
inline std::vector<int> symmetric_inverse_monoid_table(int n, int* size_out) {
  auto elems = all_partial_injections(n);
  std::map<PartialMap, int> index;
  for (size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  int q = static_cast<int>(elems.size());
  std::vector<int> table(static_cast<size_t>(q) * q);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      table[static_cast<size_t>(a) * q + b] = index.at(compose(elems[a], elems[b]));
  *size_out = q;
  return table;
}

// A finite group with an adjoined zero (element 0).
inline std::vector<int> group_with_zero(const std::vector<int>& group, int order) {
  int n = order + 1;
  std::vector<int> t(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      t[static_cast<size_t>(a + 1) * n + (b + 1)] = group[a * order + b] + 1;
  return t;
}

}  // namespace oracle
