#include "doctest.h"
#include "stonework/cartan.hpp"
#include "stonework/generators.hpp"
#include "test_helpers.hpp"

using namespace stonework;

namespace {

StarAlg m3() {
  StarAlg a;
  a.m = 1;
  a.blocks = {3};
  return a;
}

DiagMasa rank_one_atoms(int n) {
  DiagMasa b;
  for (int i = 0; i < n; ++i) b.atoms.push_back({i});
  return b;
}

Measure uniform_state(int n) {
  Measure s;
  for (int i = 0; i < n; ++i) s.w.push_back(rat(1, n));
  return s;
}

}  // namespace

TEST_CASE("validate_cartan accepts diagonal masas and rejects coarse ones") {
  CartanReport r1 = validate_cartan(m3(), rank_one_atoms(3), uniform_state(3));
  CHECK(r1.ok);
  CHECK(r1.commutant_dim == 3);
  CHECK(r1.pin_span_dim == 9);

  StarAlg m2;
  m2.m = 1;
  m2.blocks = {2};
  DiagMasa scalars;
  scalars.atoms = {{0, 1}};
  Measure st;
  st.w = {rat(1)};
  CartanReport r2 = validate_cartan(m2, scalars, st);
  CHECK(!r2.ok);
  CHECK(r2.error == "NotMasa");

  StarAlg m22;
  m22.m = 1;
  m22.blocks = {2, 2};
  CHECK(validate_cartan(m22, rank_one_atoms(4), uniform_state(4)).ok);
}

TEST_CASE("diagonal expectation is idempotent, bimodule and faithful") {
  StarAlg a = m3();
  DiagMasa b = rank_one_atoms(3);
  DetRng rng(5);
  for (int it = 0; it < 10; ++it) {
    Mat x = Mat::zero(3, 3, 1);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        x.at(i, j) = Cyc::rational(rat(rng.below(7) - 3, 1 + rng.below(3)), 1);
    Mat px = diag_expectation(a, b, x);
    CHECK(diag_expectation(a, b, px) == px);
    // P(a* a) = 0 implies a = 0
    Mat pos = diag_expectation(a, b, x.conj_transpose() * x);
    if (pos.is_zero()) CHECK(x.is_zero());
  }
}

TEST_CASE("pin quotient sizes") {
  CHECK(pin_quotient(m3(), rank_one_atoms(3)).h.n == 34);

  StarAlg m21;
  m21.m = 1;
  m21.blocks = {2, 1};
  CHECK(pin_quotient(m21, rank_one_atoms(3)).h.n == 14);

  StarAlg c3;
  c3.m = 1;
  c3.blocks = {1, 1, 1};
  PinQuotient pq = pin_quotient(c3, rank_one_atoms(3));
  CHECK(pq.h.n == 8);
  // only idempotent moves in the diagonal algebra
  for (int s = 0; s < pq.h.n; ++s) CHECK(pq.h.is_idempotent(s));

  // H(B) of the full 3x3 algebra is the symmetric inverse monoid I3
  int q = 0;
  auto i3 = oracle::symmetric_inverse_monoid_table(3, &q);
  REQUIRE(q == 34);
  InvSgp i3s = validate_inverse_semigroup(q, i3);
  CHECK(isg_iso_search(pin_quotient(m3(), rank_one_atoms(3)).h, i3s).has_value());
}

TEST_CASE("pin quotient output is Boolean and fundamental") {
  for (auto blocks : {std::vector<int>{3}, std::vector<int>{2, 1}, std::vector<int>{2, 2}}) {
    StarAlg a;
    a.m = 1;
    a.blocks = blocks;
    PinQuotient pq = pin_quotient(a, rank_one_atoms(a.dim()));
    BooleanCert cert = is_boolean(pq.h);
    CHECK(cert.boolean);
    CHECK(is_fundamental(pq.h));
  }
}

TEST_CASE("weyl twist of block algebras") {
  WeylTwist w = weyl_twist(m3(), rank_one_atoms(3));
  CHECK(iso_search(w.germ.gpd, pair_groupoid(3)).has_value());
  CHECK(is_principal(w.germ.gpd));
  REQUIRE(w.trivialization.has_value());

  StarAlg c3;
  c3.m = 1;
  c3.blocks = {1, 1, 1};
  WeylTwist wd = weyl_twist(c3, rank_one_atoms(3));
  CHECK(wd.germ.gpd.n_arrows() == 3);
  CHECK(wd.germ.gpd.n_units() == 3);

  StarAlg m22;
  m22.m = 1;
  m22.blocks = {2, 2};
  WeylTwist w2 = weyl_twist(m22, rank_one_atoms(4));
  CHECK(iso_search(w2.germ.gpd, disjoint_union(pair_groupoid(2), pair_groupoid(2)))
            .has_value());
}

TEST_CASE("reconstruction sends matrix units to arrow deltas") {
  StarAlg a = m3();
  DiagMasa b = rank_one_atoms(3);
  Reconstruction rec = reconstruct(a, b, uniform_state(3));
  CHECK(rec.multiplicative);
  CHECK(rec.star_compatible);
  CHECK(rec.bijective);
  CHECK(rec.diagonal_onto_diagonal);
  CHECK(rec.states_match);
  // each matrix unit lands on a single arrow with coefficient 1
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      AlgElem f = rec.phi_coeffs(a, b, a.matrix_unit(i, j));
      int nonzero = 0, where = -1;
      for (int arr = 0; arr < rec.ctx.g.n_arrows(); ++arr)
        if (!f.c[arr].is_zero()) {
          ++nonzero;
          where = arr;
        }
      CHECK(nonzero == 1);
      CHECK(f.c[where] == Cyc::one(1));
      CHECK(rec.weyl.arrow_src_atom[where] == j);
      CHECK(rec.weyl.arrow_tgt_atom[where] == i);
    }
}

TEST_CASE("reconstruction of the diagonal algebra is the identity picture") {
  StarAlg c2;
  c2.m = 1;
  c2.blocks = {1, 1};
  Reconstruction rec = reconstruct(c2, rank_one_atoms(2), uniform_state(2));
  CHECK(rec.ctx.g.n_arrows() == 2);
  CHECK(rec.bijective);
  CHECK(rec.diagonal_onto_diagonal);
}

TEST_CASE("full pipeline certificates") {
  StarAlg m21;
  m21.m = 1;
  m21.blocks = {2, 1};
  Measure st;
  st.w = {rat(1, 4), rat(1, 4), rat(1, 2)};
  CartanCertificate cert = cartan_pipeline(m21, rank_one_atoms(3), st);
  CHECK(cert.validation.ok);
  CHECK(cert.h_boolean);
  CHECK(cert.h_fundamental);
  CHECK(cert.weyl_principal);
  CHECK(cert.cocycle_trivial);
  CHECK(cert.diagonal_masa_in_wstar);
  CHECK(cert.rec.states_match);
  CHECK(iso_search(cert.rec.weyl.germ.gpd,
                   disjoint_union(pair_groupoid(2), discrete_units(1)))
            .has_value());

  // scalars in M2 are rejected before any construction
  StarAlg m2;
  m2.m = 1;
  m2.blocks = {2};
  DiagMasa scalars;
  scalars.atoms = {{0, 1}};
  Measure s1;
  s1.w = {rat(1)};
  CHECK_THROWS_WITH_AS(cartan_pipeline(m2, scalars, s1), doctest::Contains("NotMasa"), Error);
}

TEST_CASE("pipeline works over a nontrivial cyclotomic scalar field") {
  StarAlg a;
  a.m = 4;
  a.blocks = {2};
  CartanCertificate cert = cartan_pipeline(a, rank_one_atoms(2), uniform_state(2));
  CHECK(cert.validation.ok);
  CHECK(cert.rec.bijective);
  CHECK(cert.rec.star_compatible);
  CHECK(cert.cocycle_trivial);
}

TEST_CASE("random cartan instances pass the pipeline") {
  DetRng rng(77);
  for (int it = 0; it < 6; ++it) {
    RandomCartan rc = random_cartan(rng);
    CartanCertificate cert = cartan_pipeline(rc.alg, rc.masa, rc.state);
    CHECK(cert.validation.ok);
    CHECK(cert.rec.multiplicative);
    CHECK(cert.rec.bijective);
    CHECK(cert.rec.states_match);
    CHECK(cert.weyl_principal);
  }
}
