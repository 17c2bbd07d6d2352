#include "stonework/germ.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace stonework {

int GermGpd::arrow_of(const InvSgp& S, int s, int atom) const {
  auto it = arrow_of_rep.find(S.at(s, atom));
  if (it == arrow_of_rep.end()) throw Error("Internal", "missing germ class", {s, atom});
  return it->second;
}

GermGpd germ_groupoid(const InvSgp& S, const BooleanCert& cert) {
  if (!cert.boolean) throw Error("NotBoolean", cert.reason);
  GermGpd G;
  const auto& atoms = cert.atoms;
  int nu = static_cast<int>(atoms.size());
  std::vector<int> atom_pos(S.n, -1);
  for (int i = 0; i < nu; ++i) atom_pos[atoms[i]] = i;

  // Germ classes of pairs (s, x): the class representative is the pointlike
  // restriction s*x; distinct representatives are distinct classes.
  std::set<int> reps;
  for (int s = 0; s < S.n; ++s) {
    if (S.zero >= 0 && s == S.zero) continue;
    int ds = S.d(s);
    for (int x : atoms)
      if (S.at(x, ds) == x) reps.insert(S.at(s, x));
  }
  std::vector<int> rep(reps.begin(), reps.end());
  int na = static_cast<int>(rep.size());

  G.gpd.unit_labels.resize(nu);
  for (int i = 0; i < nu; ++i) G.gpd.unit_labels[i] = "a" + std::to_string(atoms[i]);
  G.atom_of_unit = atoms;
  G.unit_of_atom_pos.resize(nu);
  for (int i = 0; i < nu; ++i) G.unit_of_atom_pos[i] = i;
  G.rep = rep;
  G.gpd.src.resize(na);
  G.gpd.tgt.resize(na);
  G.gpd.inv.resize(na);
  G.gpd.unit_arrow.assign(nu, -1);
  for (int a = 0; a < na; ++a) {
    int u = rep[a];
    G.arrow_of_rep[u] = a;
    int sx = atom_pos[S.d(u)], tx = atom_pos[S.r(u)];
    if (sx < 0 || tx < 0) throw Error("Internal", "germ endpoint is not an atom", {u});
    G.gpd.src[a] = sx;
    G.gpd.tgt[a] = tx;
  }
  for (int a = 0; a < na; ++a) {
    G.gpd.inv[a] = G.arrow_of_rep.at(S.star[rep[a]]);
    if (atom_pos[rep[a]] >= 0) G.gpd.unit_arrow[atom_pos[rep[a]]] = a;
  }
  for (int i = 0; i < nu; ++i)
    if (G.gpd.unit_arrow[i] < 0) throw Error("Internal", "missing germ unit", {atoms[i]});
  G.gpd.comp.assign(static_cast<size_t>(na) * na, -1);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (G.gpd.src[a] != G.gpd.tgt[b]) continue;
      G.gpd.comp[static_cast<size_t>(a) * na + b] = G.arrow_of_rep.at(S.at(rep[a], rep[b]));
    }
  validate_groupoid(G.gpd);
  return G;
}

void validate_gpd_iso(const Gpd& a, const Gpd& b, const GpdIso& iso) {
  if (a.n_arrows() != b.n_arrows() || a.n_units() != b.n_units())
    throw Error("NotAnIso", "size mismatch");
  std::vector<char> hit(b.n_arrows(), 0);
  for (int x : iso.arrow_map) {
    if (x < 0 || x >= b.n_arrows() || hit[x]) throw Error("NotAnIso", "arrow map not bijective");
    hit[x] = 1;
  }
  std::vector<char> uhit(b.n_units(), 0);
  for (int x : iso.unit_map) {
    if (x < 0 || x >= b.n_units() || uhit[x]) throw Error("NotAnIso", "unit map not bijective");
    uhit[x] = 1;
  }
  for (int g = 0; g < a.n_arrows(); ++g) {
    int h = iso.arrow_map[g];
    if (b.src[h] != iso.unit_map[a.src[g]] || b.tgt[h] != iso.unit_map[a.tgt[g]])
      throw Error("NotAnIso", "endpoints not preserved", {g});
    if (iso.arrow_map[a.inv[g]] != b.inv[h]) throw Error("NotAnIso", "inverse not preserved", {g});
  }
  for (int u = 0; u < a.n_units(); ++u)
    if (iso.arrow_map[a.unit_arrow[u]] != b.unit_arrow[iso.unit_map[u]])
      throw Error("NotAnIso", "units not preserved", {u});
  for (int g = 0; g < a.n_arrows(); ++g)
    for (int h = 0; h < a.n_arrows(); ++h) {
      int p = a.at(g, h);
      if (p < 0) continue;
      if (b.at(iso.arrow_map[g], iso.arrow_map[h]) != iso.arrow_map[p])
        throw Error("NotAnIso", "composition not preserved", {g, h});
    }
}

namespace {

// Unit colors refined by in/out profiles against neighbor colors. Color ids
// are assigned in sorted signature order so they are comparable across
// different groupoids.
std::vector<int> unit_colors(const Gpd& g) {
  int nu = g.n_units();
  std::vector<int> color(nu, 0);
  for (int it = 0; it < nu + 1; ++it) {
    std::vector<std::vector<long long>> sig(nu);
    for (int u = 0; u < nu; ++u) sig[u].push_back(color[u]);
    for (int a = 0; a < g.n_arrows(); ++a) {
      sig[g.src[a]].push_back(1000 + color[g.tgt[a]]);
      sig[g.tgt[a]].push_back(2000000 + color[g.src[a]]);
    }
    std::map<std::vector<long long>, int> remap;
    for (int u = 0; u < nu; ++u) {
      std::sort(sig[u].begin() + 1, sig[u].end());
      remap[sig[u]] = 0;
    }
    int next = 0;
    for (auto& [key, id] : remap) id = next++;
    for (int u = 0; u < nu; ++u) color[u] = remap.at(sig[u]);
  }
  return color;
}

struct IsoSearcher {
  const Gpd& a;
  const Gpd& b;
  std::vector<int> umap, amap;
  std::vector<char> aused;

  bool arrows(int next) {
    if (next == a.n_arrows()) return true;
    for (int cand = 0; cand < b.n_arrows(); ++cand) {
      if (aused[cand]) continue;
      if (b.src[cand] != umap[a.src[next]] || b.tgt[cand] != umap[a.tgt[next]]) continue;
      if (a.is_unit(next) != b.is_unit(cand)) continue;
      int ainv = a.inv[next];
      if (ainv < next && amap[ainv] != b.inv[cand]) continue;
      bool ok = true;
      for (int p = 0; p < next && ok; ++p) {
        int q1 = a.at(next, p);
        if (q1 >= 0 && q1 < next && b.at(cand, amap[p]) != amap[q1]) ok = false;
        if (!ok) break;
        int q2 = a.at(p, next);
        if (q2 >= 0 && q2 < next && b.at(amap[p], cand) != amap[q2]) ok = false;
      }
      int self = a.at(next, next);
      if (ok && self >= 0 && self < next && b.at(cand, cand) != amap[self]) ok = false;
      if (!ok) continue;
      amap[next] = cand;
      aused[cand] = 1;
      if (arrows(next + 1)) {
        // full composition check at the leaf
        if (next + 1 == a.n_arrows()) {
          bool good = true;
          for (int x = 0; x < a.n_arrows() && good; ++x)
            for (int y = 0; y < a.n_arrows() && good; ++y) {
              int p = a.at(x, y);
              if (p >= 0 && b.at(amap[x], amap[y]) != amap[p]) good = false;
            }
          if (good) return true;
        } else {
          return true;
        }
      }
      aused[cand] = 0;
      amap[next] = -1;
    }
    return false;
  }

  bool units(int next, const std::vector<int>& ca, const std::vector<int>& cb,
             std::vector<char>& bused) {
    if (next == a.n_units()) {
      amap.assign(a.n_arrows(), -1);
      aused.assign(b.n_arrows(), 0);
      return arrows(0);
    }
    for (int cand = 0; cand < b.n_units(); ++cand) {
      if (bused[cand] || ca[next] != cb[cand]) continue;
      umap[next] = cand;
      bused[cand] = 1;
      if (units(next + 1, ca, cb, bused)) return true;
      bused[cand] = 0;
      umap[next] = -1;
    }
    return false;
  }
};

}  // namespace

std::optional<GpdIso> iso_search(const Gpd& a, const Gpd& b) {
  if (a.n_arrows() != b.n_arrows() || a.n_units() != b.n_units()) return std::nullopt;
  auto ca = unit_colors(a), cb = unit_colors(b);
  {
    auto sa = ca, sb = cb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  IsoSearcher s{a, b, std::vector<int>(a.n_units(), -1), {}, {}};
  std::vector<char> bused(b.n_units(), 0);
  if (!s.units(0, ca, cb, bused)) return std::nullopt;
  GpdIso iso{s.amap, s.umap};
  validate_gpd_iso(a, b, iso);
  return iso;
}

GpdIso singleton_iso(const GermGpd& germ, const BisSemigroup& bis, const Gpd& base) {
  GpdIso iso;
  iso.arrow_map.resize(germ.gpd.n_arrows());
  for (int a = 0; a < germ.gpd.n_arrows(); ++a) {
    const Bisection& bs = bis.elems[germ.rep[a]];
    if (bs.size() != 1) throw Error("Internal", "pointlike bisection not a singleton");
    iso.arrow_map[a] = bs[0];
  }
  iso.unit_map.resize(germ.gpd.n_units());
  for (int u = 0; u < germ.gpd.n_units(); ++u) {
    const Bisection& bs = bis.elems[germ.atom_of_unit[u]];
    if (bs.size() != 1) throw Error("Internal", "atom not a unit singleton");
    iso.unit_map[u] = base.tgt[bs[0]];
  }
  validate_gpd_iso(germ.gpd, base, iso);
  return iso;
}

GpdRoundtrip roundtrip_gpd(const Gpd& g, size_t cap) {
  GpdRoundtrip rt;
  rt.bis = bis_semigroup(g, cap);
  BooleanCert cert = is_boolean(rt.bis.sgp);
  if (!cert.boolean) throw Error("Internal", "ample semigroup not Boolean: " + cert.reason);
  rt.germ = germ_groupoid(rt.bis.sgp, cert);
  // f([S,x]) = Sx
  rt.iso = singleton_iso(rt.germ, rt.bis, g);
  return rt;
}

IsgRoundtrip roundtrip_isg(const InvSgp& S, const BooleanCert& cert, int pair_check_limit,
                           uint64_t sample_seed) {
  IsgRoundtrip rt;
  rt.germ = germ_groupoid(S, cert);
  rt.bis2 = bis_semigroup(rt.germ.gpd);

  std::vector<int> atom_pos(S.n, -1);
  for (size_t i = 0; i < cert.atoms.size(); ++i) atom_pos[cert.atoms[i]] = static_cast<int>(i);

  rt.map.resize(S.n);
  for (int s = 0; s < S.n; ++s) {
    Bisection bs;
    int ds = S.d(s);
    for (int x : cert.atoms)
      if (S.at(x, ds) == x) bs.push_back(rt.germ.arrow_of(S, s, x));
    std::sort(bs.begin(), bs.end());
    rt.map[s] = rt.bis2.index_of(bs);
  }

  // injective + same size = bijective
  std::vector<char> hit(rt.bis2.sgp.n, 0);
  rt.bijective = S.n == rt.bis2.sgp.n;
  for (int v : rt.map) {
    if (hit[v]) rt.bijective = false;
    hit[v] = 1;
  }
  if (!rt.bijective) throw Error("NotBoolean", "s -> S(s) failed to be bijective");

  // hom checks: star and zero always, products exhaustively below the limit
  for (int s = 0; s < S.n; ++s)
    if (rt.map[S.star[s]] != rt.bis2.sgp.star[rt.map[s]])
      throw Error("NotAHom", "star not preserved by s -> S(s)", {s});
  if (S.zero >= 0 && rt.map[S.zero] != rt.bis2.sgp.zero)
    throw Error("NotAHom", "zero not preserved by s -> S(s)");
  if (S.n <= pair_check_limit) {
    for (int s = 0; s < S.n; ++s)
      for (int t = 0; t < S.n; ++t)
        if (rt.map[S.at(s, t)] != rt.bis2.sgp.at(rt.map[s], rt.map[t]))
          throw Error("NotAHom", "product not preserved by s -> S(s)", {s, t});
  } else {
    std::mt19937_64 rng(sample_seed);
    for (int it = 0; it < 4 * S.n; ++it) {
      int s = static_cast<int>(rng() % S.n), t = static_cast<int>(rng() % S.n);
      if (rt.map[S.at(s, t)] != rt.bis2.sgp.at(rt.map[s], rt.map[t]))
        throw Error("NotAHom", "product not preserved by s -> S(s)", {s, t});
    }
  }
  return rt;
}

void validate_mult_action(const MultAction& a) {
  const Gpd& H = a.h;
  const Gpd& G = a.g;
  if (static_cast<int>(a.anchor.size()) != G.n_units())
    throw Error("NotAnAction", "anchor size mismatch");
  for (int v : a.anchor)
    if (v < 0 || v >= H.n_units()) throw Error("NotAnAction", "anchor out of range");
  if (a.f.size() != static_cast<size_t>(H.n_arrows()) * G.n_units())
    throw Error("NotAnAction", "action table size mismatch");
  for (int e = 0; e < H.n_arrows(); ++e)
    for (int x = 0; x < G.n_units(); ++x) {
      int v = a.f_at(e, x);
      bool dom = H.src[e] == a.anchor[x];
      if (dom != (v >= 0))
        throw Error("NotAnAction", "action defined iff d(eta)=anchor(x) fails", {e, x});
      if (v < 0) continue;
      if (G.src[v] != x) throw Error("NotAnAction", "F(eta,x) must start at x", {e, x});
      if (a.anchor[G.tgt[v]] != H.tgt[e])
        throw Error("NotAnAction", "anchor equivariance fails", {e, x});
    }
  for (int x = 0; x < G.n_units(); ++x) {
    int e = H.unit_arrow[a.anchor[x]];
    if (a.f_at(e, x) != G.unit_arrow[x])
      throw Error("NotAnAction", "unit acts nontrivially", {x});
  }
  for (int e1 = 0; e1 < H.n_arrows(); ++e1)
    for (int e2 = 0; e2 < H.n_arrows(); ++e2) {
      int p = H.at(e1, e2);
      if (p < 0) continue;
      for (int x = 0; x < G.n_units(); ++x) {
        if (H.src[e2] != a.anchor[x]) continue;
        int first = a.f_at(e2, x);
        int second = a.f_at(e1, G.tgt[first]);
        if (G.at(second, first) != a.f_at(p, x))
          throw Error("NotAnAction", "(eta eta')x = eta(eta' x) fails", {e1, e2, x});
      }
    }
}

namespace {

// Unit-subset bisection positions of a bis semigroup, one per unit.
std::vector<int> unit_singletons(const BisSemigroup& b) {
  std::vector<int> r(b.base.n_units());
  for (int u = 0; u < b.base.n_units(); ++u)
    r[u] = b.index_of(Bisection{b.base.unit_arrow[u]});
  return r;
}

}  // namespace

MultAction multiplier_from_hom(const BisSemigroup& bh, const BisSemigroup& bg,
                               const std::vector<int>& hom) {
  IsgHom h{&bh.sgp, &bg.sgp, hom};
  validate_isg_hom(h);
  // idempotents must land on idempotents, the unit on the unit, and disjoint
  // unions must be preserved (Boolean algebra morphism on the idempotent part)
  for (int e : bh.sgp.idem)
    if (!bg.sgp.is_idempotent(hom[e])) throw Error("NotAHom", "idempotent image", {e});
  Bisection full_h, full_g;
  for (int u = 0; u < bh.base.n_units(); ++u) full_h.push_back(bh.base.unit_arrow[u]);
  for (int u = 0; u < bg.base.n_units(); ++u) full_g.push_back(bg.base.unit_arrow[u]);
  std::sort(full_h.begin(), full_h.end());
  std::sort(full_g.begin(), full_g.end());
  if (hom[bh.index_of(full_h)] != bg.index_of(full_g))
    throw Error("NotAHom", "idempotent part is not unital");
  for (int e : bh.sgp.idem)
    for (int f : bh.sgp.idem) {
      if (bh.sgp.at(e, f) != bh.sgp.zero) continue;
      auto join = orthogonal_join(bh.sgp, e, f);
      if (!join.ok) continue;
      auto jg = orthogonal_join(bg.sgp, hom[e], hom[f]);
      if (!jg.ok || hom[join.join] != jg.join)
        throw Error("NotAHom", "disjoint union not preserved", {e, f});
    }

  MultAction a;
  a.h = bh.base;
  a.g = bg.base;
  a.anchor.assign(bg.base.n_units(), -1);
  auto sing_h = unit_singletons(bh);
  for (int y = 0; y < bh.base.n_units(); ++y) {
    const Bisection& img = bg.elems[hom[sing_h[y]]];
    for (int arr : img) {
      if (!bg.base.is_unit(arr)) throw Error("NotAHom", "unit image not a unit set", {y});
      int x = bg.base.tgt[arr];
      if (a.anchor[x] >= 0) throw Error("NotAHom", "unit images overlap", {y, x});
      a.anchor[x] = y;
    }
  }
  for (int x = 0; x < bg.base.n_units(); ++x)
    if (a.anchor[x] < 0) throw Error("NotAHom", "unit images do not cover");

  a.f.assign(static_cast<size_t>(bh.base.n_arrows()) * bg.base.n_units(), -1);
  for (int e = 0; e < bh.base.n_arrows(); ++e) {
    const Bisection& img = bg.elems[hom[bh.index_of(Bisection{e})]];
    for (int x = 0; x < bg.base.n_units(); ++x) {
      if (a.anchor[x] != bh.base.src[e]) continue;
      int pick = -1;
      for (int arr : img)
        if (bg.base.src[arr] == x) pick = arr;
      if (pick < 0) throw Error("NotAHom", "image bisection misses anchor fibre", {e, x});
      a.f[static_cast<size_t>(e) * bg.base.n_units() + x] = pick;
    }
  }
  validate_mult_action(a);
  return a;
}

std::vector<int> hom_from_multiplier(const MultAction& a, const BisSemigroup& bh,
                                     const BisSemigroup& bg) {
  std::vector<int> hom(bh.sgp.n);
  for (int s = 0; s < bh.sgp.n; ++s) {
    Bisection img;
    for (int e : bh.elems[s])
      for (int x = 0; x < a.g.n_units(); ++x)
        if (a.anchor[x] == a.h.src[e]) img.push_back(a.f_at(e, x));
    std::sort(img.begin(), img.end());
    if (!is_bisection(a.g, img)) throw Error("NotAnAction", "S G^0 is not a bisection", {s});
    hom[s] = bg.index_of(img);
  }
  IsgHom h{&bh.sgp, &bg.sgp, hom};
  validate_isg_hom(h);
  return hom;
}

MultAction identity_action(const Gpd& g) {
  MultAction a;
  a.h = g;
  a.g = g;
  a.anchor.resize(g.n_units());
  for (int u = 0; u < g.n_units(); ++u) a.anchor[u] = u;
  a.f.assign(static_cast<size_t>(g.n_arrows()) * g.n_units(), -1);
  for (int e = 0; e < g.n_arrows(); ++e)
    a.f[static_cast<size_t>(e) * g.n_units() + g.src[e]] = e;
  return a;
}

MultAction compose_actions(const MultAction& kh, const MultAction& hg) {
  MultAction a;
  a.h = kh.h;
  a.g = hg.g;
  a.anchor.resize(hg.g.n_units());
  for (int x = 0; x < hg.g.n_units(); ++x) a.anchor[x] = kh.anchor[hg.anchor[x]];
  a.f.assign(static_cast<size_t>(kh.h.n_arrows()) * hg.g.n_units(), -1);
  for (int k = 0; k < kh.h.n_arrows(); ++k)
    for (int x = 0; x < hg.g.n_units(); ++x) {
      if (kh.h.src[k] != a.anchor[x]) continue;
      int eta = kh.f_at(k, hg.anchor[x]);
      a.f[static_cast<size_t>(k) * hg.g.n_units() + x] = hg.f_at(eta, x);
    }
  validate_mult_action(a);
  return a;
}

}  // namespace stonework
