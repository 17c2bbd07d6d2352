#include "stonework/generators.hpp"

#include <algorithm>
#include <numeric>

namespace stonework {

namespace {

int mod(int a, int m) {
  a %= m;
  return a < 0 ? a + m : a;
}

struct GroupPick {
  int order;
  std::vector<int> table;
};

GroupPick pick_group(DetRng& rng, bool allow_nontrivial) {
  if (!allow_nontrivial) return {1, {0}};
  switch (rng.below(8)) {
    case 0: return {2, cyclic_group_table(2)};
    case 1: return {3, cyclic_group_table(3)};
    case 2: return {4, cyclic_group_table(4)};
    case 3: return {4, klein_four_table()};
    case 4: return {6, symmetric3_table()};
    default: return {1, {0}};
  }
}

struct Component {
  int orbit;
  GroupPick grp;
};

size_t component_bis_count(const Component& c, size_t cap) {
  // sum_k C(o,k)^2 k! |G|^k
  size_t total = 0;
  int o = c.orbit;
  for (int k = 0; k <= o; ++k) {
    // C(o,k)^2 * k! * g^k
    unsigned long long v = 1;
    for (int i = 0; i < k; ++i) v = v * (o - i) / (i + 1);
    unsigned long long ck = v;
    unsigned long long term = ck * ck;
    for (int i = 1; i <= k; ++i) term *= i;
    for (int i = 0; i < k; ++i) term *= c.grp.order;
    total += term;
    if (total > cap) return cap + 1;
  }
  return total;
}

std::vector<Component> sample_components(DetRng& rng, const GenOpts& opts, int m_for_bis) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    int ncomp = 1 + rng.below(3);
    std::vector<Component> comps;
    int units = 0, arrows = 0;
    bool ok = true;
    for (int i = 0; i < ncomp; ++i) {
      Component c;
      c.orbit = 1 + rng.below(3);
      c.grp = pick_group(rng, opts.allow_isotropy);
      units += c.orbit;
      arrows += c.orbit * c.orbit * c.grp.order;
      comps.push_back(c);
    }
    if (units > opts.max_units || arrows > opts.max_arrows) continue;
    if (opts.force_isotropy) {
      bool has = false;
      for (const auto& c : comps) has |= c.grp.order > 1;
      if (!has) {
        // turn one component into a plain group bundle
        comps[0].orbit = 1;
        comps[0].grp = {2, cyclic_group_table(2)};
        units = 0;
        arrows = 0;
        for (const auto& c : comps) {
          units += c.orbit;
          arrows += c.orbit * c.orbit * c.grp.order;
        }
        if (units > opts.max_units || arrows > opts.max_arrows) continue;
      }
    }
    // twisted element counts scale by m per arrow in a bisection; bound the
    // base bisection count only
    size_t bis = 1;
    for (const auto& c : comps) {
      size_t cb = component_bis_count(c, opts.bis_bound);
      if (cb > opts.bis_bound || bis > opts.bis_bound / std::max<size_t>(cb, 1)) {
        ok = false;
        break;
      }
      bis *= cb;
    }
    (void)m_for_bis;
    if (!ok || bis > opts.bis_bound) continue;
    return comps;
  }
  return {Component{2, {1, {0}}}};  // fallback: pair groupoid on 2
}

Gpd build_structured(const std::vector<Component>& comps) {
  Gpd g = orbit_groupoid(comps[0].orbit, comps[0].grp.order, comps[0].grp.table);
  for (size_t i = 1; i < comps.size(); ++i)
    g = disjoint_union(g, orbit_groupoid(comps[i].orbit, comps[i].grp.order, comps[i].grp.table));
  return g;
}

std::vector<int> random_perm(DetRng& rng, int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(p[i], p[rng.below(i + 1)]);
  return p;
}

// Normalized group 2-cocycle with values in Z/m, from a small catalog.
std::vector<int> group_cocycle(DetRng& rng, const GroupPick& grp, int m) {
  int n = grp.order;
  std::vector<int> sigma(static_cast<size_t>(n) * n, 0);
  if (m == 1 || n == 1) return sigma;
  int kind = rng.below(3);
  if (kind == 0) return sigma;  // trivial
  if (grp.table == klein_four_table() && m % 2 == 0) {
    // sigma((a,b),(c,d)) = b*c * (m/2)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) sigma[a * 4 + b] = ((a & 1) * (b >> 1)) * (m / 2);
    return sigma;
  }
  // cyclic carry cocycle sigma(a,b) = t * floor((a+b)/k) for Z/k
  bool cyclic = grp.table == cyclic_group_table(n);
  if (cyclic) {
    int t = rng.below(m);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) sigma[a * n + b] = mod(t * ((a + b) / n), m);
    return sigma;
  }
  return sigma;
}

}  // namespace

Gpd random_groupoid(DetRng& rng, const GenOpts& opts) {
  auto comps = sample_components(rng, opts, 1);
  Gpd g = build_structured(comps);
  return relabel(g, random_perm(rng, g.n_units()), random_perm(rng, g.n_arrows()));
}

RandomTwisted random_twisted_groupoid(DetRng& rng, int m, const GenOpts& opts) {
  auto comps = sample_components(rng, opts, m);
  Gpd g0 = build_structured(comps);
  int na = g0.n_arrows();
  std::vector<int> table(static_cast<size_t>(na) * na, -1);

  // component-wise pullback of group cocycles: arrows of build_structured are
  // grouped per component in construction order, each (i,j,h) with h the
  // group part (fastest index)
  int arrow_off = 0;
  for (const auto& c : comps) {
    int comp_arrows = c.orbit * c.orbit * c.grp.order;
    auto gsig = group_cocycle(rng, c.grp, m);
    for (int a = 0; a < comp_arrows; ++a)
      for (int b = 0; b < comp_arrows; ++b) {
        int aa = arrow_off + a, bb = arrow_off + b;
        if (!g0.composable(aa, bb)) continue;
        int ga = a % c.grp.order, gb = b % c.grp.order;
        table[static_cast<size_t>(aa) * na + bb] = gsig[ga * c.grp.order + gb];
      }
    arrow_off += comp_arrows;
  }
  // cross-component pairs are never composable; fill stray composables (none)
  // then add a random coboundary vanishing on units
  std::vector<int> c1(na, 0);
  for (int a = 0; a < na; ++a)
    if (!g0.is_unit(a)) c1[a] = rng.below(m);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (!g0.composable(a, b)) continue;
      int& v = table[static_cast<size_t>(a) * na + b];
      if (v < 0) v = 0;
      v = mod(v + c1[a] + c1[b] - c1[g0.at(a, b)], m);
    }
  Cocycle sigma0 = validate_cocycle(g0, m, table);

  auto up = random_perm(rng, g0.n_units());
  auto ap = random_perm(rng, g0.n_arrows());
  RandomTwisted rt;
  rt.g = relabel(g0, up, ap);
  GpdIso iso{ap, up};
  rt.sigma = transport_cocycle(sigma0, iso, rt.g);
  rt.sigma = validate_cocycle(rt.g, m, rt.sigma.table);
  return rt;
}

Measure random_measure(DetRng& rng, const Gpd& g) {
  Measure mu;
  for (int u = 0; u < g.n_units(); ++u) {
    (void)u;
    mu.w.push_back(rat(1 + rng.below(6), 1 + rng.below(6)));
  }
  return mu;
}

Bisection random_bisection(DetRng& rng, const Gpd& g) {
  Bisection b;
  std::vector<char> used_src(g.n_units(), 0), used_tgt(g.n_units(), 0);
  auto order = random_perm(rng, g.n_arrows());
  for (int a : order) {
    if (rng.below(3) == 0) continue;
    if (used_src[g.src[a]] || used_tgt[g.tgt[a]]) continue;
    used_src[g.src[a]] = 1;
    used_tgt[g.tgt[a]] = 1;
    b.push_back(a);
  }
  std::sort(b.begin(), b.end());
  return b;
}

TBis random_tbis(DetRng& rng, const Gpd& g, int m) {
  TBis t;
  t.arrows = random_bisection(rng, g);
  for (size_t i = 0; i < t.arrows.size(); ++i) t.phase.push_back(rng.below(m));
  return t;
}

AlgElem random_algelem(DetRng& rng, const ConvCtx& ctx) {
  AlgElem f = AlgElem::zero(ctx);
  int deg = CycField::get(ctx.m).degree();
  for (int a = 0; a < ctx.g.n_arrows(); ++a) {
    if (rng.below(3) == 0) continue;  // sparse-ish
    Cyc v = Cyc::zero(ctx.m);
    for (int i = 0; i < deg; ++i)
      v += Cyc::zeta(i, ctx.m) * rat(rng.below(7) - 3, 1 + rng.below(3));
    f.c[a] = v;
  }
  return f;
}

RandomCartan random_cartan(DetRng& rng, int max_blocks, int max_block_size) {
  RandomCartan rc;
  rc.alg.m = 1;
  int nb = 1 + rng.below(max_blocks);
  int atoms = 0;
  for (int i = 0; i < nb; ++i) {
    int sz = 1 + rng.below(max_block_size);
    if (atoms + sz > 5) sz = 1;
    rc.alg.blocks.push_back(sz);
    atoms += sz;
  }
  for (int p = 0; p < rc.alg.dim(); ++p) rc.masa.atoms.push_back({p});
  for (int k = 0; k < rc.alg.dim(); ++k)
    rc.state.w.push_back(rat(1 + rng.below(5), 1 + rng.below(5)));
  return rc;
}

}  // namespace stonework
