#include "stonework/groupoid.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace stonework {

namespace {

Gpd finish(Gpd g) {
  // comp table from src/tgt and the construction-provided product rule is
  // filled by callers; here we only size-check.
  if (g.comp.size() != static_cast<size_t>(g.n_arrows()) * g.n_arrows())
    throw Error("BadTable", "composition table size mismatch");
  return g;
}

}  // namespace

Gpd pair_groupoid(int n) {
  Gpd g;
  for (int i = 0; i < n; ++i) g.unit_labels.push_back(std::to_string(i + 1));
  // arrow (i,j): j -> i, id = i*n + j
  g.src.resize(static_cast<size_t>(n) * n);
  g.tgt.resize(static_cast<size_t>(n) * n);
  g.inv.resize(static_cast<size_t>(n) * n);
  g.unit_arrow.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int a = i * n + j;
      g.src[a] = j;
      g.tgt[a] = i;
      g.inv[a] = j * n + i;
      if (i == j) g.unit_arrow[i] = a;
    }
  int na = n * n;
  g.comp.assign(static_cast<size_t>(na) * na, -1);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b)
      if (g.src[a] == g.tgt[b]) g.comp[static_cast<size_t>(a) * na + b] = (a / n) * n + (b % n);
  return finish(g);
}

Gpd discrete_units(int n) {
  Gpd g;
  for (int i = 0; i < n; ++i) g.unit_labels.push_back(std::to_string(i + 1));
  g.src.resize(n);
  g.tgt.resize(n);
  g.inv.resize(n);
  g.unit_arrow.resize(n);
  for (int i = 0; i < n; ++i) {
    g.src[i] = g.tgt[i] = i;
    g.inv[i] = i;
    g.unit_arrow[i] = i;
  }
  g.comp.assign(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) g.comp[static_cast<size_t>(i) * n + i] = i;
  return finish(g);
}

Gpd orbit_groupoid(int orbit, int group_order, const std::vector<int>& table) {
  if (static_cast<size_t>(group_order) * group_order != table.size())
    throw Error("BadTable", "group table size mismatch");
  Gpd g;
  for (int i = 0; i < orbit; ++i) g.unit_labels.push_back(std::to_string(i + 1));
  // arrow (i, j, h): j -> i, id = (i*orbit + j)*group_order + h
  int na = orbit * orbit * group_order;
  g.src.resize(na);
  g.tgt.resize(na);
  g.inv.resize(na);
  g.unit_arrow.assign(orbit, -1);
  auto id_of = [&](int i, int j, int h) { return (i * orbit + j) * group_order + h; };
  std::vector<int> ginv(group_order, -1);
  for (int a = 0; a < group_order; ++a)
    for (int b = 0; b < group_order; ++b)
      if (table[a * group_order + b] == 0) ginv[a] = b;
  for (int a = 0; a < group_order; ++a)
    if (ginv[a] < 0) throw Error("BadTable", "group table has no inverse", {a});
  for (int i = 0; i < orbit; ++i)
    for (int j = 0; j < orbit; ++j)
      for (int h = 0; h < group_order; ++h) {
        int a = id_of(i, j, h);
        g.src[a] = j;
        g.tgt[a] = i;
        g.inv[a] = id_of(j, i, ginv[h]);
        if (i == j && h == 0) g.unit_arrow[i] = a;
      }
  g.comp.assign(static_cast<size_t>(na) * na, -1);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (g.src[a] != g.tgt[b]) continue;
      int ih = a % group_order, jh = b % group_order;
      int i = g.tgt[a], j = g.src[b];
      g.comp[static_cast<size_t>(a) * na + b] = id_of(i, j, table[ih * group_order + jh]);
    }
  return finish(g);
}

Gpd disjoint_union(const Gpd& a, const Gpd& b) {
  Gpd g;
  g.unit_labels = a.unit_labels;
  for (const auto& l : b.unit_labels) g.unit_labels.push_back(l + "'");
  int ou = a.n_units(), oa = a.n_arrows();
  g.src = a.src;
  g.tgt = a.tgt;
  g.inv = a.inv;
  for (int i = 0; i < b.n_arrows(); ++i) {
    g.src.push_back(b.src[i] + ou);
    g.tgt.push_back(b.tgt[i] + ou);
    g.inv.push_back(b.inv[i] + oa);
  }
  g.unit_arrow = a.unit_arrow;
  for (int u = 0; u < b.n_units(); ++u) g.unit_arrow.push_back(b.unit_arrow[u] + oa);
  int na = g.n_arrows();
  g.comp.assign(static_cast<size_t>(na) * na, -1);
  for (int x = 0; x < a.n_arrows(); ++x)
    for (int y = 0; y < a.n_arrows(); ++y)
      g.comp[static_cast<size_t>(x) * na + y] = a.at(x, y);
  for (int x = 0; x < b.n_arrows(); ++x)
    for (int y = 0; y < b.n_arrows(); ++y) {
      int v = b.at(x, y);
      g.comp[static_cast<size_t>(x + oa) * na + (y + oa)] = v < 0 ? -1 : v + oa;
    }
  return finish(g);
}

Gpd relabel(const Gpd& g, const std::vector<int>& up, const std::vector<int>& ap) {
  Gpd h;
  h.unit_labels.resize(g.n_units());
  for (int u = 0; u < g.n_units(); ++u) h.unit_labels[up[u]] = g.unit_labels[u];
  int na = g.n_arrows();
  h.src.resize(na);
  h.tgt.resize(na);
  h.inv.resize(na);
  h.unit_arrow.resize(g.n_units());
  for (int a = 0; a < na; ++a) {
    h.src[ap[a]] = up[g.src[a]];
    h.tgt[ap[a]] = up[g.tgt[a]];
    h.inv[ap[a]] = ap[g.inv[a]];
  }
  for (int u = 0; u < g.n_units(); ++u) h.unit_arrow[up[u]] = ap[g.unit_arrow[u]];
  h.comp.assign(static_cast<size_t>(na) * na, -1);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      int v = g.at(a, b);
      if (v >= 0) h.comp[static_cast<size_t>(ap[a]) * na + ap[b]] = ap[v];
    }
  return finish(h);
}

std::vector<int> cyclic_group_table(int k) {
  std::vector<int> t(static_cast<size_t>(k) * k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) t[a * k + b] = (a + b) % k;
  return t;
}

std::vector<int> klein_four_table() {
  // elements are bit pairs, product = xor
  std::vector<int> t(16);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[a * 4 + b] = a ^ b;
  return t;
}

std::vector<int> symmetric3_table() {
  // permutations of {0,1,2} in lexicographic oneyline order
  std::vector<std::vector<int>> perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                         {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto find = [&](const std::vector<int>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    return -1;
  };
  std::vector<int> t(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::vector<int> c(3);
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      t[a * 6 + b] = find(c);
    }
  return t;
}

void validate_groupoid(const Gpd& g) {
  int na = g.n_arrows(), nu = g.n_units();
  if (g.tgt.size() != g.src.size() || g.inv.size() != g.src.size())
    throw Error("BadTable", "arrow table sizes differ");
  if (static_cast<int>(g.unit_arrow.size()) != nu)
    throw Error("BadTable", "unit arrow list size mismatch");
  if (g.comp.size() != static_cast<size_t>(na) * na)
    throw Error("BadTable", "composition table size mismatch");
  for (int a = 0; a < na; ++a) {
    if (g.src[a] < 0 || g.src[a] >= nu || g.tgt[a] < 0 || g.tgt[a] >= nu)
      throw Error("BadTable", "arrow endpoint out of range", {a});
    if (g.inv[a] < 0 || g.inv[a] >= na) throw Error("BadInverse", "out of range", {a});
  }
  for (int u = 0; u < nu; ++u) {
    int e = g.unit_arrow[u];
    if (e < 0 || e >= na || g.src[e] != u || g.tgt[e] != u)
      throw Error("BadUnit", "unit arrow has wrong endpoints", {u});
  }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      int c = g.at(a, b);
      bool comp = g.composable(a, b);
      if (comp != (c >= 0))
        throw Error("BadUnit", "composition defined iff src(a)=tgt(b) fails", {a, b});
      if (c >= 0 && (g.tgt[c] != g.tgt[a] || g.src[c] != g.src[b]))
        throw Error("BadTable", "product endpoints inconsistent", {a, b});
    }
  for (int u = 0; u < nu; ++u) {
    int e = g.unit_arrow[u];
    for (int a = 0; a < na; ++a) {
      if (g.tgt[a] == u && g.at(e, a) != a) throw Error("BadUnit", "not left neutral", {u, a});
      if (g.src[a] == u && g.at(a, e) != a) throw Error("BadUnit", "not right neutral", {u, a});
    }
  }
  for (int a = 0; a < na; ++a) {
    if (g.inv[g.inv[a]] != a) throw Error("BadInverse", "involution fails", {a});
    if (g.src[g.inv[a]] != g.tgt[a] || g.tgt[g.inv[a]] != g.src[a])
      throw Error("BadInverse", "endpoint swap fails", {a});
    if (g.at(a, g.inv[a]) != g.unit_arrow[g.tgt[a]] ||
        g.at(g.inv[a], a) != g.unit_arrow[g.src[a]])
      throw Error("BadInverse", "a a^-1 is not a unit", {a});
  }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (!g.composable(a, b)) continue;
      int ab = g.at(a, b);
      for (int c = 0; c < na; ++c) {
        if (!g.composable(b, c)) continue;
        if (g.at(ab, c) != g.at(a, g.at(b, c)))
          throw Error("NotAssociative", "", {a, b, c});
      }
    }
}

bool is_bisection(const Gpd& g, const Bisection& s) {
  std::vector<char> su(g.n_units(), 0), tu(g.n_units(), 0);
  for (int a : s) {
    if (a < 0 || a >= g.n_arrows()) return false;
    if (su[g.src[a]]++ || tu[g.tgt[a]]++) return false;
  }
  return true;
}

Bisection compose_bisections(const Gpd& g, const Bisection& s, const Bisection& t) {
  Bisection r;
  for (int a : s)
    for (int b : t)
      if (g.composable(a, b)) r.push_back(g.at(a, b));
  std::sort(r.begin(), r.end());
  return r;
}

Bisection invert_bisection(const Gpd& g, const Bisection& s) {
  Bisection r;
  for (int a : s) r.push_back(g.inv[a]);
  std::sort(r.begin(), r.end());
  return r;
}

namespace {

void enumerate_bisections(const Gpd& g, size_t cap, std::vector<Bisection>& out) {
  int na = g.n_arrows();
  Bisection cur;
  uint64_t used_src = 0, used_tgt = 0;
  if (g.n_units() > 64) throw Error("TooLarge", "more than 64 units");
  // DFS over arrow indices; every subset with injective src/tgt appears once.
  out.push_back({});  // empty bisection
  std::function<void(int)> rec = [&](int from) {
    for (int a = from; a < na; ++a) {
      uint64_t sm = uint64_t(1) << g.src[a], tm = uint64_t(1) << g.tgt[a];
      if ((used_src & sm) || (used_tgt & tm)) continue;
      used_src |= sm;
      used_tgt |= tm;
      cur.push_back(a);
      if (out.size() >= cap)
        throw Error("TooLarge", "bisection count exceeds cap " + std::to_string(cap));
      out.push_back(cur);
      rec(a + 1);
      cur.pop_back();
      used_src &= ~sm;
      used_tgt &= ~tm;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const Bisection& x, const Bisection& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
}

}  // namespace

size_t count_bisections(const Gpd& g, size_t cap) {
  std::vector<Bisection> all;
  enumerate_bisections(g, cap, all);
  return all.size();
}

int BisSemigroup::index_of(const Bisection& b) const {
  auto it = index.find(b);
  if (it == index.end()) throw Error("Internal", "bisection not in semigroup");
  return it->second;
}

BisSemigroup bis_semigroup(const Gpd& g, size_t cap) {
  BisSemigroup B;
  B.base = g;
  enumerate_bisections(g, cap, B.elems);
  size_t n = B.elems.size();
  if (n > 25000)
    throw Error("TooLarge",
                "multiplication table would need " + std::to_string(n * n) + " entries");
  for (size_t i = 0; i < n; ++i) B.index[B.elems[i]] = static_cast<int>(i);
  std::vector<int> table(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      table[i * n + j] = B.index.at(compose_bisections(g, B.elems[i], B.elems[j]));
  B.sgp = inverse_semigroup_unchecked(static_cast<int>(n), std::move(table));
  return B;
}

bool is_effective(const Gpd& g) {
  for (int a = 0; a < g.n_arrows(); ++a)
    if (g.is_isotropy(a) && !g.is_unit(a)) return false;
  return true;
}

bool is_principal(const Gpd& g) { return is_effective(g); }

bool is_group_bundle(const Gpd& g) {
  for (int a = 0; a < g.n_arrows(); ++a)
    if (g.src[a] != g.tgt[a]) return false;
  return true;
}

}  // namespace stonework
