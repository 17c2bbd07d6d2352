#include "doctest.h"
#include "stonework/generators.hpp"
#include "stonework/io.hpp"

using namespace stonework;

TEST_CASE("groupoid files round trip byte-identically") {
  DetRng rng(13);
  for (int it = 0; it < 10; ++it) {
    Gpd g = random_groupoid(rng);
    std::string text = serialize(groupoid_to_json(g));
    Manifest m = parse_manifest_text(text);
    CHECK(m.kind == "groupoid");
    Gpd g2 = groupoid_from_json(m.payload);
    CHECK(serialize(groupoid_to_json(g2)) == text);
  }
}

TEST_CASE("semigroup, measure, cocycle and element round trips") {
  DetRng rng(14);
  Gpd g = pair_groupoid(2);
  BisSemigroup b = bis_semigroup(g);
  std::string st = serialize(semigroup_to_json(b.sgp));
  InvSgp s2 = semigroup_from_json(parse_manifest_text(st).payload);
  CHECK(s2.n == b.sgp.n);
  CHECK(serialize(semigroup_to_json(s2)) == st);

  Measure mu = random_measure(rng, g);
  std::string mt = serialize(measure_to_json(mu));
  Measure mu2 = measure_from_json(parse_manifest_text(mt).payload);
  CHECK(mu2.w == mu.w);

  RandomTwisted rt = random_twisted_groupoid(rng, 4);
  std::string ct = serialize(cocycle_to_json(rt.sigma));
  Cocycle c2 = cocycle_from_json(parse_manifest_text(ct).payload, rt.g);
  CHECK(c2.table == rt.sigma.table);

  ConvCtx ctx = ConvCtx::twisted(rt.g, rt.sigma);
  AlgElem f = random_algelem(rng, ctx);
  std::string ft = serialize(element_to_json(f));
  AlgElem f2 = element_from_json(parse_manifest_text(ft).payload, rt.g);
  CHECK(f2 == f);
}

TEST_CASE("parse errors carry line and column") {
  try {
    parse_manifest_text("{\n  \"format\": \"stonework/groupoid\",\n  broken\n}");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "ParseError");
    CHECK(e.witness().size() == 2);
    CHECK(e.witness()[0] == 3);  // line of the bad token
  }
}

TEST_CASE("version and kind guards") {
  CHECK_THROWS_WITH_AS(parse_manifest_text("{\"format\":\"stonework/groupoid\",\"version\":9}"),
                       doctest::Contains("VersionUnsupported"), Error);
  CHECK_THROWS_AS(parse_manifest_text("{\"format\":\"other/groupoid\",\"version\":1}"), Error);
  CHECK_THROWS_AS(parse_manifest_text("[1,2,3]"), Error);
}

TEST_CASE("zero-weight measures are rejected") {
  CHECK_THROWS_WITH_AS(
      measure_from_json(
          parse_manifest_text(
              "{\"format\":\"stonework/measure\",\"version\":1,\"weights\":[\"1/2\",\"0\"]}")
              .payload),
      doctest::Contains("NotFaithful"), Error);
}

TEST_CASE("corrupted cocycle files surface the failing triple") {
  Gpd g = pair_groupoid(2);
  Json j = cocycle_to_json(Cocycle::trivial(g, 2));
  // flip one non-unit entry; with everything else zero the identity must fail
  for (auto& e : j["entries"]) {
    int a = e[0].get<int>(), b = e[1].get<int>();
    if (!g.is_unit(a) && !g.is_unit(b)) {
      e[2] = 1;
      break;
    }
  }
  CHECK_THROWS_AS(cocycle_from_json(parse_manifest_text(serialize(j)).payload, g), Error);
}

TEST_CASE("action files round trip through validation") {
  Gpd g = pair_groupoid(2);
  MultAction a = identity_action(g);
  std::string t = serialize(action_to_json(a));
  MultAction a2 = action_from_json(parse_manifest_text(t).payload, g, g);
  CHECK(a2.anchor == a.anchor);
  CHECK(a2.f == a.f);
  // corrupting the table must fail the action axioms
  Json j = action_to_json(a);
  j["map"][0][2] = (j["map"][0][2].get<int>() + 1) % g.n_arrows();
  CHECK_THROWS_WITH_AS(action_from_json(parse_manifest_text(serialize(j)).payload, g, g),
                       doctest::Contains("NotAnAction"), Error);
}

TEST_CASE("algebra files round trip") {
  AlgebraFile a;
  a.alg.m = 1;
  a.alg.blocks = {2, 1};
  a.masa.atoms = {{0}, {1}, {2}};
  a.state.w = {rat(1, 4), rat(1, 4), rat(1, 2)};
  std::string t = serialize(algebra_to_json(a));
  AlgebraFile a2 = algebra_from_json(parse_manifest_text(t).payload);
  CHECK(a2.alg.blocks == a.alg.blocks);
  CHECK(a2.masa.atoms == a.masa.atoms);
  CHECK(a2.state.w == a.state.w);
  CHECK(serialize(algebra_to_json(a2)) == t);
}
