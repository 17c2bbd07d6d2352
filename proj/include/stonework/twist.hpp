#pragma once

#include <optional>
#include <vector>

#include "stonework/germ.hpp"
#include "stonework/groupoid.hpp"

namespace stonework {

// Normalized 2-cocycle on composable arrow pairs with values in Z/m.
// Convention used throughout: products pick up sigma(alpha,beta), the
// involution picks up -sigma(gamma,gamma^{-1}).
struct Cocycle {
  int m = 1;
  int n_arrows = 0;
  std::vector<int> table;  // n*n row-major, value in [0,m) when composable, -1 otherwise

  int at(int a, int b) const { return table[static_cast<size_t>(a) * n_arrows + b]; }
  static Cocycle trivial(const Gpd& g, int m);
};

// Checks coverage, normalization and the cocycle identity.
// Throws CocycleIdentityFails(a,b,c) / NotNormalized(gamma) / BadTable.
Cocycle validate_cocycle(const Gpd& g, int m, const std::vector<int>& raw);

// Central extension Sigma of the base by Z/m: arrows (gamma, k) with
// (a,j)(b,k) = (ab, j+k+sigma(a,b)) and (g,k)^{-1} = (g^{-1}, -k-sigma(g,g^{-1})).
struct TwistedGpd {
  Gpd base;
  Cocycle sigma;
  Gpd total;  // the extension, arrow (gamma,k) has index gamma*m + k

  int ext_arrow(int gamma, int k) const { return gamma * sigma.m + k; }
  int proj(int ext) const { return ext / sigma.m; }
  int phase(int ext) const { return ext % sigma.m; }
};
TwistedGpd twisted_extension(const Gpd& g, const Cocycle& sigma);

// Twisted bisection: base arrow set with one phase per arrow (aligned lists).
struct TBis {
  Bisection arrows;
  std::vector<int> phase;

  bool operator==(const TBis& o) const { return arrows == o.arrows && phase == o.phase; }
  bool operator<(const TBis& o) const {
    return arrows != o.arrows ? arrows < o.arrows : phase < o.phase;
  }
};

TBis tbis_mul(const Gpd& g, const Cocycle& sigma, const TBis& a, const TBis& b);
TBis tbis_star(const Gpd& g, const Cocycle& sigma, const TBis& a);

// Ample semigroup of a twisted groupoid: the base ample semigroup Bis(G)
// together with the twist data. Elements are pairs (bisection, phase
// function); the full element set is only enumerated on demand.
struct TwistedIsg {
  BisSemigroup bis;
  Cocycle sigma;
  int m = 1;

  TBis mul(const TBis& a, const TBis& b) const;
  TBis star(const TBis& a) const;
  TBis unit_element() const;        // all unit arrows, phase 0
  // Total number of elements (sum over bisections of m^|S|), capped.
  size_t element_count(size_t cap) const;
  std::vector<TBis> enumerate_elements(size_t cap) const;
  // Materialize as an abstract inverse semigroup (small instances).
  struct Materialized {
    InvSgp sgp;
    std::vector<TBis> elems;
    std::vector<int> kernel;  // indices of elements over idempotent bisections
  };
  Materialized materialize(size_t cap) const;
};

TwistedIsg bis_of_twisted(const TwistedGpd& t, size_t cap = 1000000);

// Germ of the twisted ample semigroup: recovers the base germ groupoid, the
// extracted cocycle (computed through twisted products of pointlike
// representatives, then normalized), and the kernel size check.
struct TwistedGermResult {
  GermGpd germ;
  Cocycle extracted;
  int kernel_size = 0;  // elements of Sigma over germ units; must be m * |units|
};
TwistedGermResult twisted_germ(const TwistedIsg& s);

// Cocycle from a set-theoretic section of the extension. The section maps
// arrow gamma to phase k meaning (gamma, k); units must map to phase 0.
Cocycle extract_cocycle(const TwistedGpd& t, const std::vector<int>& section);

// One 1-cochain c with sigma1 - sigma2 = delta c (c vanishing on units), or
// nullopt when the classes differ. delta c(a,b) = c(a) + c(b) - c(ab).
std::optional<std::vector<int>> coboundary_test(const Gpd& g, const Cocycle& s1,
                                                const Cocycle& s2);

// Transport a cocycle along an isomorphism: result(f(a), f(b)) = sigma(a, b).
Cocycle transport_cocycle(const Cocycle& sigma, const GpdIso& iso, const Gpd& target);

}  // namespace stonework
