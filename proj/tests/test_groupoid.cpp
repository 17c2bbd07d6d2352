#include "doctest.h"
#include "stonework/generators.hpp"
#include "stonework/groupoid.hpp"

using namespace stonework;

TEST_CASE("canonical constructions validate") {
  for (int n : {1, 2, 3}) CHECK_NOTHROW(validate_groupoid(pair_groupoid(n)));
  CHECK_NOTHROW(validate_groupoid(discrete_units(4)));
  CHECK_NOTHROW(validate_groupoid(orbit_groupoid(1, 2, cyclic_group_table(2))));
  CHECK_NOTHROW(validate_groupoid(orbit_groupoid(2, 3, cyclic_group_table(3))));
  CHECK_NOTHROW(validate_groupoid(orbit_groupoid(1, 6, symmetric3_table())));
  CHECK_NOTHROW(validate_groupoid(
      disjoint_union(pair_groupoid(2), orbit_groupoid(1, 2, cyclic_group_table(2)))));
}

TEST_CASE("corrupted composition tables are rejected") {
  Gpd g = pair_groupoid(2);
  // define a product on a non-composable pair
  int bad_a = -1, bad_b = -1;
  for (int a = 0; a < g.n_arrows() && bad_a < 0; ++a)
    for (int b = 0; b < g.n_arrows(); ++b)
      if (!g.composable(a, b)) {
        bad_a = a;
        bad_b = b;
        break;
      }
  REQUIRE(bad_a >= 0);
  Gpd h = g;
  h.comp[static_cast<size_t>(bad_a) * g.n_arrows() + bad_b] = 0;
  CHECK_THROWS_AS(validate_groupoid(h), Error);
  // break a unit
  Gpd k = g;
  k.unit_arrow[0] = k.unit_arrow[1];
  CHECK_THROWS_WITH_AS(validate_groupoid(k), doctest::Contains("BadUnit"), Error);
}

TEST_CASE("bisection composition on the pair groupoid") {
  Gpd g = pair_groupoid(3);
  auto arrow = [&](int tgt, int src) {
    for (int a = 0; a < g.n_arrows(); ++a)
      if (g.tgt[a] == tgt && g.src[a] == src) return a;
    return -1;
  };
  // {(1,2)} . {(2,3)} = {(1,3)} in 1-based labels
  Bisection s = {arrow(0, 1)}, t = {arrow(1, 2)};
  CHECK(compose_bisections(g, s, t) == Bisection{arrow(0, 2)});
  // S S^-1 = units over the targets of S
  Bisection swap = {arrow(0, 1), arrow(1, 0)};
  CHECK(compose_bisections(g, swap, invert_bisection(g, swap)) ==
        Bisection{arrow(0, 0), arrow(1, 1)});
  CHECK(compose_bisections(g, swap, swap) == Bisection{arrow(0, 0), arrow(1, 1)});
}

TEST_CASE("bisection counts") {
  CHECK(count_bisections(pair_groupoid(3)) == 34);
  CHECK(count_bisections(pair_groupoid(2)) == 7);
  CHECK(count_bisections(orbit_groupoid(1, 2, cyclic_group_table(2))) == 3);
  CHECK(count_bisections(discrete_units(2)) == 4);
  CHECK_THROWS_WITH_AS(count_bisections(pair_groupoid(4), 10), doctest::Contains("TooLarge"),
                       Error);
}

TEST_CASE("ample semigroup is Boolean with unit-subset idempotents") {
  for (const Gpd& g : {pair_groupoid(3), orbit_groupoid(1, 2, cyclic_group_table(2)),
                       disjoint_union(pair_groupoid(2), discrete_units(1))}) {
    BisSemigroup b = bis_semigroup(g);
    BooleanCert cert = is_boolean(b.sgp);
    CHECK(cert.boolean);
    // idempotents are exactly the subsets of unit arrows
    for (int e : b.sgp.idem) {
      for (int a : b.elems[e]) CHECK(g.is_unit(a));
    }
    size_t unit_subsets = size_t(1) << g.n_units();
    CHECK(b.sgp.idem.size() == unit_subsets);
    // every arrow lies in a singleton bisection
    for (int a = 0; a < g.n_arrows(); ++a) CHECK(b.index.count({a}) == 1);
  }
}

TEST_CASE("(ST)^-1 = T^-1 S^-1 on random bisection pairs") {
  DetRng rng(17);
  Gpd g = random_groupoid(rng);
  for (int it = 0; it < 120; ++it) {
    Bisection s = random_bisection(rng, g), t = random_bisection(rng, g);
    CHECK(invert_bisection(g, compose_bisections(g, s, t)) ==
          compose_bisections(g, invert_bisection(g, t), invert_bisection(g, s)));
  }
}

TEST_CASE("structural predicates") {
  CHECK(is_effective(pair_groupoid(3)));
  CHECK(is_principal(pair_groupoid(3)));
  CHECK(!is_group_bundle(pair_groupoid(2)));
  Gpd z2b = orbit_groupoid(1, 2, cyclic_group_table(2));
  CHECK(!is_effective(z2b));
  CHECK(is_group_bundle(z2b));
  Gpd mix = disjoint_union(pair_groupoid(2), z2b);
  CHECK(!is_effective(mix));
  CHECK(!is_group_bundle(mix));
}

TEST_CASE("effective iff the ample semigroup is fundamental") {
  DetRng rng(23);
  for (int it = 0; it < 20; ++it) {
    GenOpts opts;
    opts.bis_bound = 250;
    Gpd g = random_groupoid(rng, opts);
    BisSemigroup b = bis_semigroup(g);
    CHECK(is_effective(g) == is_fundamental(b.sgp));
  }
}
