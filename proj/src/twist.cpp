#include "stonework/twist.hpp"

#include <algorithm>
#include <map>

#include "stonework/zmod.hpp"

namespace stonework {

namespace {

int mod(int a, int m) {
  a %= m;
  return a < 0 ? a + m : a;
}

}  // namespace

Cocycle Cocycle::trivial(const Gpd& g, int m) {
  Cocycle c;
  c.m = m;
  c.n_arrows = g.n_arrows();
  c.table.assign(static_cast<size_t>(c.n_arrows) * c.n_arrows, -1);
  for (int a = 0; a < c.n_arrows; ++a)
    for (int b = 0; b < c.n_arrows; ++b)
      if (g.composable(a, b)) c.table[static_cast<size_t>(a) * c.n_arrows + b] = 0;
  return c;
}

Cocycle validate_cocycle(const Gpd& g, int m, const std::vector<int>& raw) {
  if (m < 1) throw Error("BadModulus", "cocycle modulus must be >= 1");
  int n = g.n_arrows();
  if (raw.size() != static_cast<size_t>(n) * n)
    throw Error("BadTable", "cocycle table size mismatch");
  Cocycle c;
  c.m = m;
  c.n_arrows = n;
  c.table = raw;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int v = c.at(a, b);
      if (g.composable(a, b)) {
        if (v < 0 || v >= m)
          throw Error("BadTable", "missing or out-of-range cocycle entry", {a, b});
      } else if (v != -1) {
        throw Error("BadTable", "cocycle entry on non-composable pair", {a, b});
      }
    }
  for (int gamma = 0; gamma < n; ++gamma) {
    if (c.at(g.unit_arrow[g.tgt[gamma]], gamma) != 0 ||
        c.at(gamma, g.unit_arrow[g.src[gamma]]) != 0)
      throw Error("NotNormalized", "", {gamma});
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.composable(a, b)) continue;
      int ab = g.at(a, b);
      for (int d = 0; d < n; ++d) {
        if (!g.composable(b, d)) continue;
        int lhs = mod(c.at(a, b) + c.at(ab, d), m);
        int rhs = mod(c.at(b, d) + c.at(a, g.at(b, d)), m);
        if (lhs != rhs) throw Error("CocycleIdentityFails", "", {a, b, d});
      }
    }
  return c;
}

TwistedGpd twisted_extension(const Gpd& g, const Cocycle& sigma) {
  TwistedGpd t;
  t.base = g;
  t.sigma = sigma;
  int m = sigma.m, n = g.n_arrows();
  Gpd& e = t.total;
  e.unit_labels = g.unit_labels;
  int na = n * m;
  e.src.resize(na);
  e.tgt.resize(na);
  e.inv.resize(na);
  e.unit_arrow.resize(g.n_units());
  for (int gamma = 0; gamma < n; ++gamma)
    for (int k = 0; k < m; ++k) {
      int a = gamma * m + k;
      e.src[a] = g.src[gamma];
      e.tgt[a] = g.tgt[gamma];
      e.inv[a] = g.inv[gamma] * m + mod(-k - sigma.at(gamma, g.inv[gamma]), m);
    }
  for (int u = 0; u < g.n_units(); ++u) e.unit_arrow[u] = g.unit_arrow[u] * m + 0;
  e.comp.assign(static_cast<size_t>(na) * na, -1);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      int ga = a / m, gb = b / m;
      if (!g.composable(ga, gb)) continue;
      int k = mod(a % m + b % m + sigma.at(ga, gb), m);
      e.comp[static_cast<size_t>(a) * na + b] = g.at(ga, gb) * m + k;
    }
  // The extension is a groupoid exactly because sigma satisfies the cocycle
  // identity; check it outright.
  validate_groupoid(e);
  return t;
}

TBis tbis_mul(const Gpd& g, const Cocycle& sigma, const TBis& a, const TBis& b) {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < a.arrows.size(); ++i)
    for (size_t j = 0; j < b.arrows.size(); ++j) {
      int x = a.arrows[i], y = b.arrows[j];
      if (!g.composable(x, y)) continue;
      out.emplace_back(g.at(x, y), mod(a.phase[i] + b.phase[j] + sigma.at(x, y), sigma.m));
    }
  std::sort(out.begin(), out.end());
  TBis r;
  for (auto& [arr, ph] : out) {
    r.arrows.push_back(arr);
    r.phase.push_back(ph);
  }
  return r;
}

TBis tbis_star(const Gpd& g, const Cocycle& sigma, const TBis& a) {
  std::vector<std::pair<int, int>> out;
  for (size_t i = 0; i < a.arrows.size(); ++i) {
    int x = a.arrows[i];
    out.emplace_back(g.inv[x], mod(-a.phase[i] - sigma.at(x, g.inv[x]), sigma.m));
  }
  std::sort(out.begin(), out.end());
  TBis r;
  for (auto& [arr, ph] : out) {
    r.arrows.push_back(arr);
    r.phase.push_back(ph);
  }
  return r;
}

TBis TwistedIsg::mul(const TBis& a, const TBis& b) const {
  return tbis_mul(bis.base, sigma, a, b);
}

TBis TwistedIsg::star(const TBis& a) const { return tbis_star(bis.base, sigma, a); }

TBis TwistedIsg::unit_element() const {
  TBis r;
  for (int u = 0; u < bis.base.n_units(); ++u) r.arrows.push_back(bis.base.unit_arrow[u]);
  std::sort(r.arrows.begin(), r.arrows.end());
  r.phase.assign(r.arrows.size(), 0);
  return r;
}

size_t TwistedIsg::element_count(size_t cap) const {
  size_t total = 0;
  for (const auto& s : bis.elems) {
    size_t w = 1;
    for (size_t i = 0; i < s.size(); ++i) {
      w *= static_cast<size_t>(m);
      if (w > cap) throw Error("CapExceeded", "twisted element count exceeds cap");
    }
    total += w;
    if (total > cap) throw Error("CapExceeded", "twisted element count exceeds cap");
  }
  return total;
}

std::vector<TBis> TwistedIsg::enumerate_elements(size_t cap) const {
  element_count(cap);
  std::vector<TBis> out;
  for (const auto& s : bis.elems) {
    std::vector<int> ph(s.size(), 0);
    while (true) {
      out.push_back(TBis{s, ph});
      // increment base-m counter
      size_t i = 0;
      for (; i < ph.size(); ++i) {
        if (++ph[i] < m) break;
        ph[i] = 0;
      }
      if (i == ph.size()) break;
      if (ph.empty()) break;
    }
  }
  return out;
}

TwistedIsg::Materialized TwistedIsg::materialize(size_t cap) const {
  Materialized mat;
  mat.elems = enumerate_elements(cap);
  std::map<TBis, int> index;
  for (size_t i = 0; i < mat.elems.size(); ++i) index[mat.elems[i]] = static_cast<int>(i);
  int n = static_cast<int>(mat.elems.size());
  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[static_cast<size_t>(i) * n + j] = index.at(mul(mat.elems[i], mat.elems[j]));
  mat.sgp = inverse_semigroup_unchecked(n, std::move(table));
  for (int i = 0; i < n; ++i) {
    bool kernel = true;
    for (int a : mat.elems[i].arrows)
      if (!bis.base.is_unit(a)) kernel = false;
    if (kernel) mat.kernel.push_back(i);
  }
  return mat;
}

TwistedIsg bis_of_twisted(const TwistedGpd& t, size_t cap) {
  TwistedIsg s;
  s.bis = bis_semigroup(t.base, cap);
  s.sigma = t.sigma;
  s.m = t.sigma.m;
  return s;
}

namespace {

// tau of a pointlike twisted element at its source atom: the phase of its
// single arrow plus the phase acquired against the unit kernel element.
int tau_at(const TwistedIsg& S, const TBis& t, int unit) {
  const Gpd& g = S.bis.base;
  for (size_t i = 0; i < t.arrows.size(); ++i)
    if (g.src[t.arrows[i]] == unit)
      return mod(t.phase[i] + S.sigma.at(t.arrows[i], g.unit_arrow[unit]), S.m);
  throw Error("Internal", "tau: no arrow at unit", {unit});
}

}  // namespace

TwistedGermResult twisted_germ(const TwistedIsg& s) {
  BooleanCert cert = is_boolean(s.bis.sgp);
  if (!cert.boolean) throw Error("NotBoolean", cert.reason);
  TwistedGermResult res;
  res.germ = germ_groupoid(s.bis.sgp, cert);
  const Gpd& gg = res.germ.gpd;
  int n = gg.n_arrows();

  // Raw cocycle from the canonical (phase-0 representative) section, via
  // actual twisted products; then the unit-value coboundary normalization.
  std::vector<int> raw(static_cast<size_t>(n) * n, -1);
  auto rep_tbis = [&](int germ_arrow) {
    const Bisection& b = s.bis.elems[res.germ.rep[germ_arrow]];
    return TBis{b, std::vector<int>(b.size(), 0)};
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (gg.src[a] != gg.tgt[b]) continue;
      int x = res.germ.atom_of_unit[gg.src[b]];
      // x is an atom element of Bis(G): a singleton unit bisection of the base
      int unit = s.bis.base.tgt[s.bis.elems[x][0]];
      TBis prod = s.mul(rep_tbis(a), rep_tbis(b));
      TBis canon = rep_tbis(gg.at(a, b));
      raw[static_cast<size_t>(a) * n + b] =
          mod(tau_at(s, prod, unit) - tau_at(s, canon, unit), s.m);
    }
  std::vector<int> cob(n, 0);
  for (int gamma = 0; gamma < n; ++gamma) {
    int u = gg.unit_arrow[gg.tgt[gamma]];
    cob[gamma] = raw[static_cast<size_t>(u) * n + u];
  }
  std::vector<int> normalized(raw);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (normalized[static_cast<size_t>(a) * n + b] < 0) continue;
      int ab = gg.at(a, b);
      normalized[static_cast<size_t>(a) * n + b] =
          mod(raw[static_cast<size_t>(a) * n + b] - cob[a] - cob[b] + cob[ab], s.m);
    }
  res.extracted = validate_cocycle(gg, s.m, normalized);

  // Kernel of Sigma -> G: classes over germ units are (atom, tau) pairs.
  std::map<std::pair<int, int>, int> kernel_classes;
  for (int u = 0; u < gg.n_units(); ++u) {
    int atom = res.germ.atom_of_unit[u];
    const Bisection& ab = s.bis.elems[atom];
    for (int k = 0; k < s.m; ++k) {
      TBis t{ab, std::vector<int>(1, k)};
      int unit = s.bis.base.tgt[ab[0]];
      kernel_classes[{u, tau_at(s, t, unit)}]++;
    }
  }
  res.kernel_size = static_cast<int>(kernel_classes.size());
  if (res.kernel_size != s.m * gg.n_units())
    throw Error("KernelMismatch",
                "kernel has " + std::to_string(res.kernel_size) + " classes, expected " +
                    std::to_string(s.m * gg.n_units()));
  return res;
}

Cocycle extract_cocycle(const TwistedGpd& t, const std::vector<int>& section) {
  const Gpd& g = t.base;
  int n = g.n_arrows(), m = t.sigma.m;
  if (static_cast<int>(section.size()) != n)
    throw Error("BadSection", "section size mismatch");
  for (int gamma = 0; gamma < n; ++gamma) {
    if (section[gamma] < 0 || section[gamma] >= m)
      throw Error("BadSection", "phase out of range", {gamma});
    if (g.is_unit(gamma) && section[gamma] != 0)
      throw Error("BadSection", "unit not sent to phase 0", {gamma});
  }
  std::vector<int> table(static_cast<size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.composable(a, b)) continue;
      table[static_cast<size_t>(a) * n + b] =
          mod(section[a] + section[b] + t.sigma.at(a, b) - section[g.at(a, b)], m);
    }
  return validate_cocycle(g, m, table);
}

std::optional<std::vector<int>> coboundary_test(const Gpd& g, const Cocycle& s1,
                                                const Cocycle& s2) {
  if (s1.m != s2.m || s1.n_arrows != s2.n_arrows || s1.n_arrows != g.n_arrows())
    throw Error("BadTable", "cocycles live on different data");
  int n = s1.n_arrows, m = s1.m;
  std::vector<ZmodEq> eqs;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int v1 = s1.table[static_cast<size_t>(a) * n + b];
      int v2 = s2.table[static_cast<size_t>(a) * n + b];
      if ((v1 < 0) != (v2 < 0) || (v1 >= 0) != g.composable(a, b))
        throw Error("BadTable", "composability patterns differ");
      if (v1 < 0) continue;
      ZmodEq eq;
      eq.cols = {a, b, g.at(a, b)};
      eq.coef = {1, 1, -1};
      eq.rhs = mod(v1 - v2, m);
      eqs.push_back(eq);
    }
  for (int u = 0; u < g.n_units(); ++u) {
    ZmodEq eq;
    eq.cols = {g.unit_arrow[u]};
    eq.coef = {1};
    eq.rhs = 0;
    eqs.push_back(eq);
  }
  auto sol = zmod_solve(eqs, n, m);
  if (!sol) return std::nullopt;
  std::vector<int> c(n);
  for (int i = 0; i < n; ++i) c[i] = static_cast<int>((*sol)[i]);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!g.composable(a, b)) continue;
      int want = mod(s1.at(a, b) - s2.at(a, b), m);
      if (mod(c[a] + c[b] - c[g.at(a, b)], m) != want)
        throw Error("Internal", "coboundary certificate failed verification", {a, b});
    }
  return c;
}

Cocycle transport_cocycle(const Cocycle& sigma, const GpdIso& iso, const Gpd& target) {
  int n = sigma.n_arrows;
  Cocycle r;
  r.m = sigma.m;
  r.n_arrows = target.n_arrows();
  r.table.assign(static_cast<size_t>(r.n_arrows) * r.n_arrows, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int v = sigma.table[static_cast<size_t>(a) * n + b];
      if (v < 0) continue;
      r.table[static_cast<size_t>(iso.arrow_map[a]) * r.n_arrows + iso.arrow_map[b]] = v;
    }
  return r;
}

}  // namespace stonework
