#pragma once

#include <optional>
#include <vector>

#include "stonework/germ.hpp"
#include "stonework/matrix.hpp"
#include "stonework/rational.hpp"
#include "stonework/twist.hpp"

namespace stonework {

// Twisted convolution context: a finite groupoid with a normalized cocycle.
// Elements of the algebra are arrow-indexed vectors over Q(zeta_m), the
// trivialization of homogeneous functions on the extension by the canonical
// phase-0 section.
struct ConvCtx {
  Gpd g;
  Cocycle sigma;
  int m = 1;

  static ConvCtx untwisted(const Gpd& g, int m = 1);
  static ConvCtx twisted(const Gpd& g, const Cocycle& sigma);
};

// Arrow-indexed element of C_c(G, Sigma).
struct AlgElem {
  int m = 1;
  std::vector<Cyc> c;  // per arrow

  static AlgElem zero(const ConvCtx& ctx);
  bool operator==(const AlgElem& o) const { return m == o.m && c == o.c; }
  bool is_zero() const;
};

// Scalar extension Q(zeta_m) -> Q(zeta_m2), phases rescaled; m must divide m2.
AlgElem embed_elem(const AlgElem& f, int m2);
ConvCtx lift_ctx(const ConvCtx& ctx, int m2);

// (f*g)(gamma) = sum_{ab=gamma} f(a) g(b) zeta^sigma(a,b)
AlgElem convolve(const ConvCtx& ctx, const AlgElem& f, const AlgElem& g);
// f*(gamma) = conj(f(gamma^{-1})) zeta^{-sigma(gamma, gamma^{-1})}
AlgElem star(const ConvCtx& ctx, const AlgElem& f);
AlgElem add(const AlgElem& f, const AlgElem& g);
AlgElem scale(const AlgElem& f, const Cyc& c);

AlgElem delta(const ConvCtx& ctx, const TBis& s);
AlgElem delta(const ConvCtx& ctx, const Bisection& s);  // phase 0
AlgElem delta_arrow(const ConvCtx& ctx, int gamma);
AlgElem algebra_unit(const ConvCtx& ctx);  // indicator of all unit arrows

// Q(f): restriction to the unit arrows, indexed by units.
std::vector<Cyc> expectation_q(const ConvCtx& ctx, const AlgElem& f);

// Faithful weight on units; quasi-invariance is automatic (all weights > 0).
struct Measure {
  std::vector<Rat> w;

  static Measure uniform(const Gpd& g);
  void require_faithful() const;
  Rat total() const;
  Measure normalized() const;
};

// D(gamma) = mu(r(gamma)) / mu(d(gamma)), a groupoid homomorphism into the
// positive rationals.
std::vector<Rat> modular_function(const Gpd& g, const Measure& mu);

// Matrix of Reg(f) acting by left twisted convolution on the arrow-indexed
// space with inner product (xi|eta) = sum conj(xi) eta mu(d(gamma)).
Mat reg_matrix(const ConvCtx& ctx, const AlgElem& f);

// mu-weighted inner product of arrow vectors.
Cyc reg_inner(const ConvCtx& ctx, const Measure& mu, const AlgElem& x, const AlgElem& y);

// Finite-dimensional W*(G, Sigma, mu): basis of the image of Reg, saturated
// under products (the weak closure of a finite-dimensional *-algebra is its
// linear span).
struct WStar {
  ConvCtx ctx;
  Measure mu;
  std::vector<Mat> basis;  // image basis as matrices
  int dim() const { return static_cast<int>(basis.size()); }
};
WStar wstar_algebra(const ConvCtx& ctx, const Measure& mu, int dim_cap = 10000);

// Commutant computed in convolution coordinates: elements of span{delta_gamma}
// commuting with every generator (Reg is injective, so this is the commutant
// inside W*). Returns a coefficient-space basis.
std::vector<AlgElem> algebra_commutant(const ConvCtx& ctx,
                                       const std::vector<AlgElem>& gens);
std::vector<AlgElem> algebra_center(const ConvCtx& ctx);
// Diagonal subalgebra tests.
bool diagonal_is_masa(const ConvCtx& ctx);
std::vector<AlgElem> diagonal_commutant(const ConvCtx& ctx);

// Q-separating predicate with an exact witness search over isotropy-supported
// unitaries; phases are extended to lcm(m, 4) so the two-element isotropy
// witness exists, matching the circle-valued setting.
struct SeparatingReport {
  bool separating = true;
  int witness_unit = -1;         // unit with the violating normalizer
  Mat witness;                   // the normalizer, in the extended field
  int extended_modulus = 0;
};
SeparatingReport q_separating(const ConvCtx& ctx, const Measure& mu);

// Lemma-style refinement of a finite family of bisections: T_w = arrows with
// membership pattern w; disjoint, refines the family, preserves the union.
struct Refinement {
  std::vector<Bisection> parts;
  std::vector<std::vector<int>> pattern;  // per part: the sorted member indices
};
Refinement atoms_refinement(const Gpd& g, const std::vector<Bisection>& family);

// Representation data of the twisted ample semigroup: one matrix per arrow
// (the image of the phase-0 singleton); pi(S,c) = sum zeta^c pi_gamma.
struct IsgRep {
  ConvCtx ctx;
  int dim = 0;
  std::vector<Mat> arrow_mat;

  Mat of(const TBis& t) const;
  Mat unit_fn(const std::vector<Cyc>& b) const;  // pi^0 extended to functions
};

IsgRep reg_isg_rep(const ConvCtx& ctx, const Measure& mu);

// Axiom check over an explicitly materialized twisted semigroup (small
// instances): multiplicative, star, additive on orthogonal pairs, zero,
// kernel compatibility. Returns the first failing axiom.
struct IsgRepViolation {
  bool ok = true;
  std::string axiom;
  std::vector<long long> witness;
};
IsgRepViolation validate_isg_rep(const TwistedIsg& s, const TwistedIsg::Materialized& mat,
                                 const std::vector<Mat>& images);

// Expressions sum_i Delta_{S_i} b_i with b_i a unit-indexed coefficient vector.
struct ExprTerm {
  TBis s;
  std::vector<Cyc> b;
};
AlgElem expr_value(const ConvCtx& ctx, const std::vector<ExprTerm>& expr);
// Naive evaluation sum pi(S_i) pi^0(b_i).
Mat apply_isg_rep(const IsgRep& rep, const std::vector<ExprTerm>& expr);
// Same value computed through a disjoint refinement of the family.
Mat apply_isg_rep_refined(const IsgRep& rep, const std::vector<ExprTerm>& expr);

// Algebra representation from semigroup data and back.
Mat rep_of_elem(const IsgRep& rep, const AlgElem& f);     // pi~(f)
IsgRep isg_rep_from_rep(const ConvCtx& ctx, const std::vector<Mat>& delta_images);

// j~ of a multiplier action (untwisted): j~(f)(gamma) = sum over eta with
// eta d(gamma) = gamma of f(eta). A *-homomorphism C_c(H) -> C_c(G).
AlgElem induced_hom(const MultAction& a, const ConvCtx& ctx_h, const ConvCtx& ctx_g,
                    const AlgElem& f);

}  // namespace stonework
