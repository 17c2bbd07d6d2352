#include "doctest.h"
#include "stonework/convolution.hpp"
#include "stonework/generators.hpp"

using namespace stonework;

namespace {

int arrow_of(const Gpd& g, int tgt, int src, int k = 0, int group_order = 1) {
  for (int a = 0; a < g.n_arrows(); ++a)
    if (g.tgt[a] == tgt && g.src[a] == src && a % group_order == k) return a;
  return -1;
}

std::pair<Gpd, Cocycle> klein_twist() {
  Gpd g = orbit_groupoid(1, 4, klein_four_table());
  int n = g.n_arrows();
  std::vector<int> table(static_cast<size_t>(n) * n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) table[static_cast<size_t>(x) * n + y] = ((x >> 1) & 1) * (y & 1);
  return {g, validate_cocycle(g, 2, table)};
}

}  // namespace

TEST_CASE("delta is a semigroup morphism into the algebra") {
  Gpd g = pair_groupoid(3);
  ConvCtx ctx = ConvCtx::untwisted(g, 1);
  DetRng rng(2);
  for (int it = 0; it < 50; ++it) {
    Bisection s = random_bisection(rng, g), t = random_bisection(rng, g);
    CHECK(convolve(ctx, delta(ctx, s), delta(ctx, t)) ==
          delta(ctx, compose_bisections(g, s, t)));
    CHECK(star(ctx, delta(ctx, s)) == delta(ctx, invert_bisection(g, s)));
  }
  // unit of the algebra
  AlgElem f = random_algelem(rng, ctx);
  CHECK(convolve(ctx, f, algebra_unit(ctx)) == f);
  CHECK(convolve(ctx, algebra_unit(ctx), f) == f);
}

TEST_CASE("twisted group algebra of the Klein group is noncommutative") {
  auto [g, sigma] = klein_twist();
  ConvCtx ctx = ConvCtx::twisted(g, sigma);
  AlgElem da = delta_arrow(ctx, 1);  // (1,0)
  AlgElem db = delta_arrow(ctx, 2);  // (0,1)
  AlgElem ab = convolve(ctx, da, db);
  AlgElem ba = convolve(ctx, db, da);
  CHECK(!(ab == ba));
  // uv = -vu for this twist
  CHECK(ab == scale(ba, Cyc::rational(Rat(-1), 2)));
}

TEST_CASE("expectation restricts to units") {
  Gpd g = pair_groupoid(3);
  ConvCtx ctx = ConvCtx::untwisted(g, 1);
  // S = {(1,1),(2,3)} -> Q(Delta_S) = (1,0,0)
  Bisection s = {arrow_of(g, 0, 0), arrow_of(g, 1, 2)};
  std::sort(s.begin(), s.end());
  auto q = expectation_q(ctx, delta(ctx, s));
  CHECK(q[0] == Cyc::one(1));
  CHECK(q[1] == Cyc::zero(1));
  CHECK(q[2] == Cyc::zero(1));
  // Q(Delta_S Delta_S^*) = indicator of r(S)
  AlgElem p = convolve(ctx, delta(ctx, s), star(ctx, delta(ctx, s)));
  auto qp = expectation_q(ctx, p);
  CHECK(qp[0] == Cyc::one(1));
  CHECK(qp[1] == Cyc::one(1));
  CHECK(qp[2] == Cyc::zero(1));
  // Q(0) = 0
  auto qz = expectation_q(ctx, AlgElem::zero(ctx));
  for (const auto& c : qz) CHECK(c.is_zero());
}

TEST_CASE("modular function values and laws") {
  Gpd g = pair_groupoid(3);
  Measure mu;
  mu.w = {rat(1, 2), rat(1, 4), rat(1, 4)};
  auto d = modular_function(g, mu);
  CHECK(d[arrow_of(g, 0, 1)] == 2);       // D((1,2)) = mu(1)/mu(2)
  CHECK(d[arrow_of(g, 1, 2)] == 1);       // D((2,3)) = mu(2)/mu(3)
  for (int a = 0; a < g.n_arrows(); ++a) CHECK(d[g.inv[a]] == 1 / d[a]);
  auto du = modular_function(g, Measure::uniform(g));
  for (int a = 0; a < g.n_arrows(); ++a) CHECK(du[a] == 1);
}

TEST_CASE("regular representation on the pair groupoid") {
  // one unit, trivial group: Reg is 1x1 multiplication
  Gpd one = discrete_units(1);
  ConvCtx c1 = ConvCtx::untwisted(one, 1);
  AlgElem f1 = scale(delta_arrow(c1, 0), Cyc::rational(rat(3, 2), 1));
  Mat m1 = reg_matrix(c1, f1);
  CHECK(m1.rows == 1);
  CHECK(m1.at(0, 0) == Cyc::rational(rat(3, 2), 1));

  Gpd g = pair_groupoid(2);
  ConvCtx ctx = ConvCtx::untwisted(g, 1);
  int a12 = arrow_of(g, 0, 1);
  Mat m = reg_matrix(ctx, delta_arrow(ctx, a12));
  // one nonzero entry per column with r(beta) = 2
  int nonzero = 0;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!m.at(i, j).is_zero()) ++nonzero;
  CHECK(nonzero == 2);
  // Reg(f) Reg(f*) = Reg(Delta over unit 1)
  Mat prod = m * reg_matrix(ctx, star(ctx, delta_arrow(ctx, a12)));
  CHECK(prod == reg_matrix(ctx, delta_arrow(ctx, g.unit_arrow[0])));
  // star compatibility as matrices
  DetRng rng(3);
  AlgElem f = random_algelem(rng, ctx);
  CHECK(reg_matrix(ctx, star(ctx, f)) == reg_matrix(ctx, f).conj_transpose());
  // Reg is multiplicative
  AlgElem h = random_algelem(rng, ctx);
  CHECK(reg_matrix(ctx, convolve(ctx, f, h)) == reg_matrix(ctx, f) * reg_matrix(ctx, h));
}

TEST_CASE("the inner product is the state composed with the expectation") {
  // (x|y) = mu(Q(x^* * y)); the regular representation is the GNS picture
  DetRng rng(19);
  for (int it = 0; it < 10; ++it) {
    int m = 1 + rng.below(4);
    RandomTwisted rt = random_twisted_groupoid(rng, m);
    ConvCtx ctx = ConvCtx::twisted(rt.g, rt.sigma);
    Measure mu = random_measure(rng, rt.g).normalized();
    CHECK(mu.total() == 1);
    AlgElem x = random_algelem(rng, ctx), y = random_algelem(rng, ctx);
    auto q = expectation_q(ctx, convolve(ctx, star(ctx, x), y));
    Cyc want = Cyc::zero(m);
    for (int u = 0; u < rt.g.n_units(); ++u)
      want += q[u] * Cyc::rational(mu.w[u], m);
    CHECK(reg_inner(ctx, mu, x, y) == want);
    // positivity and faithfulness of the form
    Cyc norm = reg_inner(ctx, mu, x, x);
    if (x.is_zero())
      CHECK(norm.is_zero());
    else
      CHECK(!norm.is_zero());
  }
}

TEST_CASE("wstar dimensions and centers") {
  Gpd p3 = pair_groupoid(3);
  ConvCtx ctx = ConvCtx::untwisted(p3, 1);
  WStar w = wstar_algebra(ctx, Measure::uniform(p3));
  CHECK(w.dim() == 9);
  CHECK(algebra_center(ctx).size() == 1);

  Gpd d2 = discrete_units(2);
  ConvCtx cd = ConvCtx::untwisted(d2, 1);
  CHECK(wstar_algebra(cd, Measure::uniform(d2)).dim() == 2);

  auto [k4, sigma] = klein_twist();
  ConvCtx ct = ConvCtx::twisted(k4, sigma);
  CHECK(wstar_algebra(ct, Measure::uniform(k4)).dim() == 4);
  CHECK(algebra_center(ct).size() == 1);
  ConvCtx cu = ConvCtx::untwisted(k4, 2);
  CHECK(algebra_center(cu).size() == 4);
}

TEST_CASE("matrix commutant examples") {
  // full matrix algebra: commutant is the scalars
  std::vector<Mat> full;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat e = Mat::zero(2, 2, 1);
      e.at(i, j) = Cyc::one(1);
      full.push_back(e);
    }
  auto c = matrix_commutant(full, 2, 1);
  CHECK(c.size() == 1);

  // diagonal inside W* of the pair groupoid: a masa
  Gpd p3 = pair_groupoid(3);
  ConvCtx ctx = ConvCtx::untwisted(p3, 1);
  CHECK(diagonal_is_masa(ctx));
  CHECK(diagonal_commutant(ctx).size() == 3);

  // Z/2 bundle: the commutant contains delta_g
  Gpd z2b = orbit_groupoid(1, 2, cyclic_group_table(2));
  ConvCtx cz = ConvCtx::untwisted(z2b, 1);
  CHECK(!diagonal_is_masa(cz));
  auto com = diagonal_commutant(cz);
  CHECK(com.size() == 2);
  int garrow = z2b.is_unit(0) ? 1 : 0;
  bool has_g = false;
  for (const auto& f : com) has_g |= !f.c[garrow].is_zero();
  CHECK(has_g);
}

TEST_CASE("q separating matches effectiveness, including the Z/2 bundle at m=1") {
  Gpd z2b = orbit_groupoid(1, 2, cyclic_group_table(2));
  ConvCtx ctx = ConvCtx::untwisted(z2b, 1);
  SeparatingReport rep = q_separating(ctx, Measure::uniform(z2b));
  CHECK(!rep.separating);
  CHECK(rep.extended_modulus % 4 == 0);
  CHECK(rep.witness_unit == 0);

  Gpd p3 = pair_groupoid(3);
  ConvCtx c2 = ConvCtx::untwisted(p3, 1);
  CHECK(q_separating(c2, Measure::uniform(p3)).separating);

  // Z/3 bundle: rational witness
  Gpd z3b = orbit_groupoid(1, 3, cyclic_group_table(3));
  ConvCtx c3 = ConvCtx::untwisted(z3b, 1);
  CHECK(!q_separating(c3, Measure::uniform(z3b)).separating);
}

TEST_CASE("q separating with twisted isotropy") {
  // Klein twist: effective fails, separating must fail too (twisted witness)
  auto [k4, sigma] = klein_twist();
  ConvCtx ctx = ConvCtx::twisted(k4, sigma);
  SeparatingReport rep = q_separating(ctx, Measure::uniform(k4));
  CHECK(!rep.separating);
}

TEST_CASE("atoms refinement example") {
  Gpd g = pair_groupoid(3);
  Bisection s1 = {arrow_of(g, 0, 0), arrow_of(g, 1, 1)};
  Bisection s2 = {arrow_of(g, 0, 0), arrow_of(g, 1, 2)};
  std::sort(s1.begin(), s1.end());
  std::sort(s2.begin(), s2.end());
  Refinement r = atoms_refinement(g, {s1, s2});
  REQUIRE(r.parts.size() == 3);
  // T_{12} = {(1,1)}, T_{1} = {(2,2)}, T_{2} = {(2,3)}
  bool t12 = false, t1 = false, t2 = false;
  for (size_t p = 0; p < r.parts.size(); ++p) {
    if (r.pattern[p] == std::vector<int>{0, 1})
      t12 = r.parts[p] == Bisection{arrow_of(g, 0, 0)};
    if (r.pattern[p] == std::vector<int>{0}) t1 = r.parts[p] == Bisection{arrow_of(g, 1, 1)};
    if (r.pattern[p] == std::vector<int>{1}) t2 = r.parts[p] == Bisection{arrow_of(g, 1, 2)};
  }
  CHECK(t12);
  CHECK(t1);
  CHECK(t2);
  // single and disjoint families refine to themselves
  CHECK(atoms_refinement(g, {s1}).parts == std::vector<Bisection>{s1});
  Bisection d1 = {arrow_of(g, 0, 0)}, d2 = {arrow_of(g, 1, 1)};
  auto rr = atoms_refinement(g, {d1, d2});
  CHECK(rr.parts.size() == 2);
}

TEST_CASE("validate_isg_rep accepts Reg and rejects the constant-identity map") {
  Gpd g = pair_groupoid(2);
  TwistedGpd ext = twisted_extension(g, Cocycle::trivial(g, 2));
  TwistedIsg s = bis_of_twisted(ext);
  auto mat = s.materialize(100);
  ConvCtx ctx = ConvCtx::twisted(g, ext.sigma);
  IsgRep reg = reg_isg_rep(ctx, Measure::uniform(g));
  std::vector<Mat> images;
  for (const auto& e : mat.elems) images.push_back(reg.of(e));
  auto ok = validate_isg_rep(s, mat, images);
  CHECK(ok.ok);

  std::vector<Mat> ident(mat.elems.size(), Mat::identity(4, 2));
  auto bad = validate_isg_rep(s, mat, ident);
  CHECK(!bad.ok);
  CHECK((bad.axiom == "zero" || bad.axiom == "additive" || bad.axiom == "multiplicative"));

  // direct sums of valid representations stay valid
  std::vector<Mat> doubled;
  for (const auto& mimg : images) {
    Mat d = Mat::zero(2 * mimg.rows, 2 * mimg.cols, mimg.m);
    for (int i = 0; i < mimg.rows; ++i)
      for (int j = 0; j < mimg.cols; ++j) {
        d.at(i, j) = mimg.at(i, j);
        d.at(i + mimg.rows, j + mimg.cols) = mimg.at(i, j);
      }
    doubled.push_back(d);
  }
  CHECK(validate_isg_rep(s, mat, doubled).ok);
}

TEST_CASE("representation round trip equals Reg entrywise") {
  DetRng rng(31);
  for (int it = 0; it < 8; ++it) {
    int m = 1 + rng.below(4);
    RandomTwisted rt = random_twisted_groupoid(rng, m);
    ConvCtx ctx = ConvCtx::twisted(rt.g, rt.sigma);
    Measure mu = random_measure(rng, rt.g);
    IsgRep reg = reg_isg_rep(ctx, mu);
    IsgRep rebuilt = isg_rep_from_rep(ctx, reg.arrow_mat);
    AlgElem f = random_algelem(rng, ctx);
    CHECK(rep_of_elem(rebuilt, f) == reg_matrix(ctx, f));
    TBis s = random_tbis(rng, rt.g, m);
    CHECK(reg.of(s) == reg_matrix(ctx, delta(ctx, s)));
  }
}

TEST_CASE("induced homomorphism of multiplier actions") {
  // identity action: identity map
  Gpd g = pair_groupoid(2);
  MultAction ida = identity_action(g);
  ConvCtx ctx = ConvCtx::untwisted(g, 1);
  DetRng rng(8);
  AlgElem f = random_algelem(rng, ctx);
  CHECK(induced_hom(ida, ctx, ctx, f) == f);

  // discrete units acting through an anchor: diagonal pullback
  Gpd h = discrete_units(2);
  BisSemigroup bh = bis_semigroup(h), bg = bis_semigroup(g);
  std::vector<int> inc(bh.sgp.n);
  for (int i = 0; i < bh.sgp.n; ++i) {
    Bisection img;
    for (int arr : bh.elems[i]) img.push_back(g.unit_arrow[h.tgt[arr]]);
    std::sort(img.begin(), img.end());
    inc[i] = bg.index_of(img);
  }
  MultAction act = multiplier_from_hom(bh, bg, inc);
  ConvCtx ch = ConvCtx::untwisted(h, 1);
  AlgElem fh = random_algelem(rng, ch);
  AlgElem img = induced_hom(act, ch, ctx, fh);
  for (int a = 0; a < g.n_arrows(); ++a) {
    if (g.is_unit(a))
      CHECK(img.c[a] == fh.c[h.unit_arrow[act.anchor[g.tgt[a]]]]);
    else
      CHECK(img.c[a].is_zero());
  }

  // j~ is a *-homomorphism, and j~(Delta_S) = Delta_{j(S)}
  for (int it = 0; it < 10; ++it) {
    AlgElem x = random_algelem(rng, ch), y = random_algelem(rng, ch);
    CHECK(induced_hom(act, ch, ctx, convolve(ch, x, y)) ==
          convolve(ctx, induced_hom(act, ch, ctx, x), induced_hom(act, ch, ctx, y)));
    CHECK(induced_hom(act, ch, ctx, star(ch, x)) == star(ctx, induced_hom(act, ch, ctx, x)));
  }
  for (int s = 0; s < bh.sgp.n; ++s) {
    AlgElem lhs = induced_hom(act, ch, ctx, delta(ch, bh.elems[s]));
    CHECK(lhs == delta(ctx, bg.elems[inc[s]]));
  }
}
