#include "stonework/convolution.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace stonework {

ConvCtx ConvCtx::untwisted(const Gpd& g, int m) {
  ConvCtx c{g, Cocycle::trivial(g, m), m};
  return c;
}

ConvCtx ConvCtx::twisted(const Gpd& g, const Cocycle& sigma) {
  ConvCtx c{g, sigma, sigma.m};
  return c;
}

AlgElem AlgElem::zero(const ConvCtx& ctx) {
  AlgElem f;
  f.m = ctx.m;
  f.c.assign(ctx.g.n_arrows(), Cyc::zero(ctx.m));
  return f;
}

AlgElem embed_elem(const AlgElem& f, int m2) {
  AlgElem r;
  r.m = m2;
  for (const auto& c : f.c) r.c.push_back(c.embed(m2));
  return r;
}

ConvCtx lift_ctx(const ConvCtx& ctx, int m2) {
  if (m2 % ctx.m != 0) throw Error("ModulusMismatch", "lift target must be a multiple");
  ConvCtx r = ctx;
  r.m = m2;
  r.sigma.m = m2;
  int f = m2 / ctx.m;
  for (auto& v : r.sigma.table)
    if (v >= 0) v *= f;
  return r;
}

bool AlgElem::is_zero() const {
  for (const auto& x : c)
    if (!x.is_zero()) return false;
  return true;
}

AlgElem convolve(const ConvCtx& ctx, const AlgElem& f, const AlgElem& g) {
  if (f.m != ctx.m || g.m != ctx.m) throw Error("ModulusMismatch", "convolve");
  AlgElem r = AlgElem::zero(ctx);
  int n = ctx.g.n_arrows();
  for (int a = 0; a < n; ++a) {
    if (f.c[a].is_zero()) continue;
    for (int b = 0; b < n; ++b) {
      if (g.c[b].is_zero() || !ctx.g.composable(a, b)) continue;
      r.c[ctx.g.at(a, b)] += f.c[a] * g.c[b] * Cyc::zeta(ctx.sigma.at(a, b), ctx.m);
    }
  }
  return r;
}

AlgElem star(const ConvCtx& ctx, const AlgElem& f) {
  if (f.m != ctx.m) throw Error("ModulusMismatch", "star");
  AlgElem r = AlgElem::zero(ctx);
  for (int gamma = 0; gamma < ctx.g.n_arrows(); ++gamma) {
    int gi = ctx.g.inv[gamma];
    r.c[gamma] = f.c[gi].conj() * Cyc::zeta(-ctx.sigma.at(gamma, gi), ctx.m);
  }
  return r;
}

AlgElem add(const AlgElem& f, const AlgElem& g) {
  if (f.m != g.m || f.c.size() != g.c.size()) throw Error("ModulusMismatch", "add");
  AlgElem r = f;
  for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += g.c[i];
  return r;
}

AlgElem scale(const AlgElem& f, const Cyc& c) {
  AlgElem r = f;
  for (auto& x : r.c) x *= c;
  return r;
}

AlgElem delta(const ConvCtx& ctx, const TBis& s) {
  AlgElem f = AlgElem::zero(ctx);
  for (size_t i = 0; i < s.arrows.size(); ++i)
    f.c[s.arrows[i]] = Cyc::zeta(s.phase[i], ctx.m);
  return f;
}

AlgElem delta(const ConvCtx& ctx, const Bisection& s) {
  return delta(ctx, TBis{s, std::vector<int>(s.size(), 0)});
}

AlgElem delta_arrow(const ConvCtx& ctx, int gamma) {
  AlgElem f = AlgElem::zero(ctx);
  f.c[gamma] = Cyc::one(ctx.m);
  return f;
}

AlgElem algebra_unit(const ConvCtx& ctx) {
  AlgElem f = AlgElem::zero(ctx);
  for (int u = 0; u < ctx.g.n_units(); ++u) f.c[ctx.g.unit_arrow[u]] = Cyc::one(ctx.m);
  return f;
}

std::vector<Cyc> expectation_q(const ConvCtx& ctx, const AlgElem& f) {
  std::vector<Cyc> q(ctx.g.n_units(), Cyc::zero(ctx.m));
  for (int u = 0; u < ctx.g.n_units(); ++u) q[u] = f.c[ctx.g.unit_arrow[u]];
  return q;
}

Measure Measure::uniform(const Gpd& g) {
  Measure mu;
  mu.w.assign(g.n_units(), Rat(1, std::max(g.n_units(), 1)));
  return mu;
}

void Measure::require_faithful() const {
  for (const auto& x : w)
    if (x <= 0) throw Error("NotFaithful", "measure must be strictly positive");
}

Rat Measure::total() const {
  Rat t(0);
  for (const auto& x : w) t += x;
  return t;
}

Measure Measure::normalized() const {
  Measure r = *this;
  Rat t = total();
  if (t == 0) throw Error("NotFaithful", "zero total mass");
  for (auto& x : r.w) x /= t;
  return r;
}

std::vector<Rat> modular_function(const Gpd& g, const Measure& mu) {
  mu.require_faithful();
  std::vector<Rat> d(g.n_arrows());
  for (int a = 0; a < g.n_arrows(); ++a) d[a] = mu.w[g.tgt[a]] / mu.w[g.src[a]];
  return d;
}

Mat reg_matrix(const ConvCtx& ctx, const AlgElem& f) {
  int n = ctx.g.n_arrows();
  Mat M = Mat::zero(n, n, ctx.m);
  // (f * delta_beta)(gamma) = f(gamma beta^{-1}) zeta^sigma(gamma beta^{-1}, beta)
  for (int beta = 0; beta < n; ++beta)
    for (int alpha = 0; alpha < n; ++alpha) {
      if (f.c[alpha].is_zero() || !ctx.g.composable(alpha, beta)) continue;
      int gamma = ctx.g.at(alpha, beta);
      M.at(gamma, beta) += f.c[alpha] * Cyc::zeta(ctx.sigma.at(alpha, beta), ctx.m);
    }
  return M;
}

Cyc reg_inner(const ConvCtx& ctx, const Measure& mu, const AlgElem& x, const AlgElem& y) {
  Cyc s = Cyc::zero(ctx.m);
  for (int gamma = 0; gamma < ctx.g.n_arrows(); ++gamma)
    s += x.c[gamma].conj() * y.c[gamma] * Cyc::rational(mu.w[ctx.g.src[gamma]], ctx.m);
  return s;
}

WStar wstar_algebra(const ConvCtx& ctx, const Measure& mu, int dim_cap) {
  mu.require_faithful();
  WStar w{ctx, mu, {}};
  std::vector<Mat> gens;
  for (int gamma = 0; gamma < ctx.g.n_arrows(); ++gamma)
    gens.push_back(reg_matrix(ctx, delta_arrow(ctx, gamma)));
  // The generator family is already product-closed up to phases, so the
  // saturation loop stabilizes immediately; run it anyway.
  w.basis = span_saturate(gens, dim_cap);
  // Reg is injective on the finite-dimensional algebra: the span dimension
  // must equal the arrow count.
  if (w.dim() != ctx.g.n_arrows())
    throw Error("Internal", "regular representation failed to be injective");
  return w;
}

std::vector<AlgElem> algebra_commutant(const ConvCtx& ctx,
                                       const std::vector<AlgElem>& gens) {
  int n = ctx.g.n_arrows();
  std::vector<std::vector<Cyc>> eqs;
  for (const auto& gelem : gens) {
    // unknown f = sum_gamma c_gamma delta_gamma; equation f*g - g*f = 0
    for (int out = 0; out < n; ++out) {
      std::vector<Cyc> row(n, Cyc::zero(ctx.m));
      bool nonzero = false;
      for (int a = 0; a < n; ++a) {
        // contribution of c_a via a*b = out and b*a = out
        for (int b = 0; b < n; ++b) {
          if (ctx.g.composable(a, b) && ctx.g.at(a, b) == out && !gelem.c[b].is_zero()) {
            row[a] += gelem.c[b] * Cyc::zeta(ctx.sigma.at(a, b), ctx.m);
            nonzero = true;
          }
          if (ctx.g.composable(b, a) && ctx.g.at(b, a) == out && !gelem.c[b].is_zero()) {
            row[a] -= gelem.c[b] * Cyc::zeta(ctx.sigma.at(b, a), ctx.m);
            nonzero = true;
          }
        }
      }
      if (nonzero) eqs.push_back(std::move(row));
    }
  }
  std::vector<AlgElem> out;
  for (auto& v : nullspace(eqs, n, ctx.m)) {
    AlgElem f;
    f.m = ctx.m;
    f.c = std::move(v);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<AlgElem> algebra_center(const ConvCtx& ctx) {
  std::vector<AlgElem> gens;
  for (int gamma = 0; gamma < ctx.g.n_arrows(); ++gamma)
    gens.push_back(delta_arrow(ctx, gamma));
  return algebra_commutant(ctx, gens);
}

std::vector<AlgElem> diagonal_commutant(const ConvCtx& ctx) {
  std::vector<AlgElem> gens;
  for (int u = 0; u < ctx.g.n_units(); ++u)
    gens.push_back(delta_arrow(ctx, ctx.g.unit_arrow[u]));
  return algebra_commutant(ctx, gens);
}

bool diagonal_is_masa(const ConvCtx& ctx) {
  return static_cast<int>(diagonal_commutant(ctx).size()) == ctx.g.n_units();
}

SeparatingReport q_separating(const ConvCtx& ctx, const Measure& mu) {
  mu.require_faithful();
  SeparatingReport rep;
  for (int u = 0; u < ctx.g.n_units(); ++u) {
    int e_arrow = ctx.g.unit_arrow[u];
    int g1 = -1;
    for (int a = 0; a < ctx.g.n_arrows(); ++a)
      if (ctx.g.src[a] == u && ctx.g.tgt[a] == u && a != e_arrow) {
        g1 = a;
        break;
      }
    if (g1 < 0) continue;  // trivial isotropy here

    // Order of g1 in the isotropy group.
    int k = 1, cur = g1;
    while (cur != e_arrow) {
      cur = ctx.g.at(g1, cur);
      ++k;
    }
    // Work in Q(zeta_m2) where the cyclic subgroup's twist trivializes and a
    // fourth root of unity is available.
    int m2 = static_cast<int>(std::lcm(static_cast<long long>(4),
                                       static_cast<long long>(ctx.m) * k));
    rep.extended_modulus = m2;
    ConvCtx cx = lift_ctx(ctx, m2);

    // Accumulated phase of delta_g^k = zeta^c delta_e in the lifted context.
    AlgElem pw = delta_arrow(cx, g1);
    for (int j = 1; j < k; ++j) pw = convolve(cx, pw, delta_arrow(cx, g1));
    // pw = zeta^c delta_e; read off c and pick t with t*k = -c (mod m2).
    int c = -1;
    for (int t = 0; t < m2; ++t)
      if (pw.c[e_arrow] == Cyc::zeta(t, m2)) c = t;
    if (c < 0) throw Error("Internal", "cyclic power is not a phase", {u, g1});
    if (c % std::gcd(k, m2) != 0) throw Error("Internal", "untrivializable cyclic twist", {u});
    int t = -1;
    for (int cand = 0; cand < m2 && t < 0; ++cand)
      if ((cand * k) % m2 == (m2 - c) % m2) t = cand;
    if (t < 0) throw Error("Internal", "no k-th root for cyclic trivialization", {u});

    AlgElem v = scale(delta_arrow(cx, g1), Cyc::zeta(t, m2));
    AlgElem cand = AlgElem::zero(cx);
    if (k == 2) {
      Cyc i = Cyc::zeta(m2 / 4, m2);
      cand = add(scale(delta_arrow(cx, e_arrow), (Cyc::one(m2) + i) * Rat(1, 2)),
                 scale(v, (Cyc::one(m2) - i) * Rat(1, 2)));
    } else {
      // 2p - 1 with p = (1/k) sum v^j, a self-adjoint unitary
      AlgElem p = delta_arrow(cx, e_arrow);
      AlgElem vj = delta_arrow(cx, e_arrow);
      for (int j = 1; j < k; ++j) {
        vj = convolve(cx, vj, v);
        p = add(p, vj);
      }
      p = scale(p, Cyc::rational(Rat(1, k), m2));
      cand = add(scale(p, Cyc::rational(Rat(2), m2)),
                 scale(delta_arrow(cx, e_arrow), Cyc::rational(Rat(-1), m2)));
    }

    // Exact verification: partial isometry with unit support, normalizes the
    // diagonal, nontrivial germ, nonzero unit value.
    AlgElem cs = star(cx, cand);
    AlgElem eu = delta_arrow(cx, e_arrow);
    bool unitary = convolve(cx, cs, cand) == eu && convolve(cx, cand, cs) == eu;
    bool normalizes = true;
    for (int x = 0; x < ctx.g.n_units(); ++x) {
      AlgElem t1 = convolve(cx, convolve(cx, cand, delta_arrow(cx, ctx.g.unit_arrow[x])), cs);
      for (int a = 0; a < ctx.g.n_arrows(); ++a)
        if (!ctx.g.is_unit(a) && !t1.c[a].is_zero()) normalizes = false;
    }
    int support = 0;
    for (int a = 0; a < ctx.g.n_arrows(); ++a)
      if (!cand.c[a].is_zero()) ++support;
    bool q_nonzero = !cand.c[e_arrow].is_zero();
    if (!(unitary && normalizes && support >= 2 && q_nonzero))
      throw Error("Internal", "isotropy witness failed verification", {u, g1});
    rep.separating = false;
    rep.witness_unit = u;
    rep.witness = reg_matrix(cx, cand);
    return rep;
  }
  return rep;
}

Refinement atoms_refinement(const Gpd& g, const std::vector<Bisection>& family) {
  std::map<std::vector<int>, Bisection> classes;
  std::vector<char> in_any(g.n_arrows(), 0);
  for (const auto& s : family)
    for (int a : s) in_any[a] = 1;
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (!in_any[a]) continue;
    std::vector<int> pattern;
    for (size_t i = 0; i < family.size(); ++i)
      if (std::binary_search(family[i].begin(), family[i].end(), a))
        pattern.push_back(static_cast<int>(i));
    classes[pattern].push_back(a);
  }
  Refinement r;
  for (auto& [pat, part] : classes) {
    Bisection p = part;
    std::sort(p.begin(), p.end());
    if (!is_bisection(g, p)) throw Error("Internal", "refinement part is not a bisection");
    r.parts.push_back(std::move(p));
    r.pattern.push_back(pat);
  }
  return r;
}

Mat IsgRep::of(const TBis& t) const {
  Mat r = Mat::zero(dim, dim, arrow_mat.empty() ? 1 : arrow_mat[0].m);
  for (size_t i = 0; i < t.arrows.size(); ++i)
    r = r + arrow_mat[t.arrows[i]] * Cyc::zeta(t.phase[i], r.m);
  return r;
}

Mat IsgRep::unit_fn(const std::vector<Cyc>& b) const {
  int mm = arrow_mat.empty() ? 1 : arrow_mat[0].m;
  Mat r = Mat::zero(dim, dim, mm);
  for (int u = 0; u < ctx.g.n_units(); ++u)
    r = r + arrow_mat[ctx.g.unit_arrow[u]] * b[u];
  return r;
}

IsgRep reg_isg_rep(const ConvCtx& ctx, const Measure& mu) {
  mu.require_faithful();
  IsgRep rep;
  rep.ctx = ctx;
  rep.dim = ctx.g.n_arrows();
  for (int gamma = 0; gamma < ctx.g.n_arrows(); ++gamma)
    rep.arrow_mat.push_back(reg_matrix(ctx, delta_arrow(ctx, gamma)));
  return rep;
}

IsgRepViolation validate_isg_rep(const TwistedIsg& s, const TwistedIsg::Materialized& mat,
                                 const std::vector<Mat>& images) {
  IsgRepViolation v;
  int n = mat.sgp.n;
  if (static_cast<int>(images.size()) != n) {
    v.ok = false;
    v.axiom = "size";
    return v;
  }
  const int dim = images[0].rows;
  const int mm = images[0].m;
  // (iv) pi(0) = 0
  if (mat.sgp.zero >= 0 && !images[mat.sgp.zero].is_zero()) {
    v.ok = false;
    v.axiom = "zero";
    v.witness = {mat.sgp.zero};
    return v;
  }
  // (i) multiplicative
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (images[a] * images[b] != images[mat.sgp.at(a, b)]) {
        v.ok = false;
        v.axiom = "multiplicative";
        v.witness = {a, b};
        return v;
      }
  // (ii) star
  for (int a = 0; a < n; ++a)
    if (images[mat.sgp.star[a]] != images[a].conj_transpose()) {
      v.ok = false;
      v.axiom = "star";
      v.witness = {a};
      return v;
    }
  // (iii) additive on orthogonal pairs
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (mat.sgp.zero < 0) break;
      if (mat.sgp.at(mat.sgp.star[a], b) != mat.sgp.zero ||
          mat.sgp.at(a, mat.sgp.star[b]) != mat.sgp.zero)
        continue;
      auto join = orthogonal_join(mat.sgp, a, b);
      if (!join.ok) continue;
      if (images[join.join] != images[a] + images[b]) {
        v.ok = false;
        v.axiom = "additive";
        v.witness = {a, b};
        return v;
      }
    }
  // (v) kernel compatibility: on (E, c) the image equals sum zeta^c pi(atom)
  for (int k : mat.kernel) {
    const TBis& t = mat.elems[k];
    Mat want = Mat::zero(dim, dim, mm);
    for (size_t i = 0; i < t.arrows.size(); ++i) {
      TBis single{{t.arrows[i]}, {0}};
      auto it = std::find(mat.elems.begin(), mat.elems.end(), single);
      if (it == mat.elems.end()) continue;
      want = want + images[it - mat.elems.begin()] * Cyc::zeta(t.phase[i], mm);
    }
    if (images[k] != want) {
      v.ok = false;
      v.axiom = "kernel";
      v.witness = {k};
      return v;
    }
  }
  (void)s;
  return v;
}

AlgElem expr_value(const ConvCtx& ctx, const std::vector<ExprTerm>& expr) {
  AlgElem f = AlgElem::zero(ctx);
  for (const auto& t : expr) {
    for (size_t i = 0; i < t.s.arrows.size(); ++i) {
      int gamma = t.s.arrows[i];
      f.c[gamma] += Cyc::zeta(t.s.phase[i], ctx.m) * t.b[ctx.g.src[gamma]];
    }
  }
  return f;
}

Mat apply_isg_rep(const IsgRep& rep, const std::vector<ExprTerm>& expr) {
  int mm = rep.arrow_mat.empty() ? 1 : rep.arrow_mat[0].m;
  Mat r = Mat::zero(rep.dim, rep.dim, mm);
  for (const auto& t : expr) r = r + rep.of(t.s) * rep.unit_fn(t.b);
  return r;
}

Mat apply_isg_rep_refined(const IsgRep& rep, const std::vector<ExprTerm>& expr) {
  const ConvCtx& ctx = rep.ctx;
  std::vector<Bisection> family;
  for (const auto& t : expr) family.push_back(t.s.arrows);
  Refinement ref = atoms_refinement(ctx.g, family);
  AlgElem f = expr_value(ctx, expr);
  int mm = rep.arrow_mat.empty() ? 1 : rep.arrow_mat[0].m;
  Mat r = Mat::zero(rep.dim, rep.dim, mm);
  for (size_t p = 0; p < ref.parts.size(); ++p) {
    // phase data from the first containing term, coefficients from f
    const Bisection& part = ref.parts[p];
    int owner = ref.pattern[p][0];
    TBis tb;
    tb.arrows = part;
    for (int a : part) {
      const TBis& os = expr[owner].s;
      size_t pos = std::lower_bound(os.arrows.begin(), os.arrows.end(), a) - os.arrows.begin();
      tb.phase.push_back(os.phase[pos]);
    }
    std::vector<Cyc> b(ctx.g.n_units(), Cyc::zero(ctx.m));
    for (size_t i = 0; i < part.size(); ++i)
      b[ctx.g.src[part[i]]] = Cyc::zeta(-tb.phase[i], ctx.m) * f.c[part[i]];
    r = r + rep.of(tb) * rep.unit_fn(b);
  }
  return r;
}

Mat rep_of_elem(const IsgRep& rep, const AlgElem& f) {
  int mm = rep.arrow_mat.empty() ? 1 : rep.arrow_mat[0].m;
  Mat r = Mat::zero(rep.dim, rep.dim, mm);
  for (int gamma = 0; gamma < rep.ctx.g.n_arrows(); ++gamma) {
    if (f.c[gamma].is_zero()) continue;
    r = r + rep.arrow_mat[gamma] * f.c[gamma];
  }
  return r;
}

IsgRep isg_rep_from_rep(const ConvCtx& ctx, const std::vector<Mat>& delta_images) {
  IsgRep rep;
  rep.ctx = ctx;
  if (static_cast<int>(delta_images.size()) != ctx.g.n_arrows())
    throw Error("InvalidRep", "need one image per arrow");
  rep.dim = delta_images.empty() ? 0 : delta_images[0].rows;
  rep.arrow_mat = delta_images;
  return rep;
}

AlgElem induced_hom(const MultAction& a, const ConvCtx& ctx_h, const ConvCtx& ctx_g,
                    const AlgElem& f) {
  for (int x = 0; x < ctx_h.g.n_arrows(); ++x)
    for (int y = 0; y < ctx_h.g.n_arrows(); ++y)
      if (ctx_h.g.composable(x, y) && ctx_h.sigma.at(x, y) != 0)
        throw Error("ActionMismatch", "induced hom requires a trivial twist");
  for (int x = 0; x < ctx_g.g.n_arrows(); ++x)
    for (int y = 0; y < ctx_g.g.n_arrows(); ++y)
      if (ctx_g.g.composable(x, y) && ctx_g.sigma.at(x, y) != 0)
        throw Error("ActionMismatch", "induced hom requires a trivial twist");
  if (ctx_h.m != ctx_g.m) throw Error("ModulusMismatch", "induced hom");
  AlgElem r = AlgElem::zero(ctx_g);
  for (int gamma = 0; gamma < ctx_g.g.n_arrows(); ++gamma) {
    int x = ctx_g.g.src[gamma];
    for (int eta = 0; eta < ctx_h.g.n_arrows(); ++eta) {
      if (ctx_h.g.src[eta] != a.anchor[x]) continue;
      if (a.f_at(eta, x) == gamma) r.c[gamma] += f.c[eta];
    }
  }
  return r;
}

}  // namespace stonework
