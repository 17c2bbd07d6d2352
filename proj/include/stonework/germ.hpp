#pragma once

#include <map>
#include <optional>
#include <vector>

#include "stonework/groupoid.hpp"

namespace stonework {

// Germ groupoid of a Boolean inverse semigroup. Arrows are germ classes
// [s,x] of pairs (element, atom of the idempotent algebra); two pairs at the
// same atom are identified iff some idempotent through x equates them, which
// at atomic scale reduces to equality of the restrictions s*x. The canonical
// class representative is that restriction (a "pointlike" element).
struct GermGpd {
  Gpd gpd;
  std::vector<int> atom_of_unit;      // germ unit -> atom element index in S
  std::vector<int> unit_of_atom_pos;  // position in cert.atoms -> germ unit
  std::vector<int> rep;               // germ arrow -> pointlike element of S
  std::map<int, int> arrow_of_rep;    // pointlike element -> germ arrow

  // Germ class of (s, x) where x is an atom element index.
  int arrow_of(const InvSgp& S, int s, int atom) const;
};

GermGpd germ_groupoid(const InvSgp& S, const BooleanCert& cert);

// Arrow bijection preserving all structure; unit map induced.
struct GpdIso {
  std::vector<int> arrow_map;
  std::vector<int> unit_map;
};

// Throws NotAnIso with a witness if the maps fail to be an isomorphism.
void validate_gpd_iso(const Gpd& a, const Gpd& b, const GpdIso& iso);

std::optional<GpdIso> iso_search(const Gpd& a, const Gpd& b);

// The explicit map sending the germ class of (S, x) to the unique arrow of S
// with source x; defined whenever the semigroup is an ample semigroup of the
// base (class representatives are then singleton bisections).
GpdIso singleton_iso(const GermGpd& germ, const BisSemigroup& bis, const Gpd& base);

// Stone round trip on the groupoid side.
struct GpdRoundtrip {
  BisSemigroup bis;
  GermGpd germ;
  GpdIso iso;  // germ.gpd -> original groupoid
};
GpdRoundtrip roundtrip_gpd(const Gpd& g, size_t cap = 1000000);

// Stone round trip on the semigroup side: s -> S(s), verified bijective; the
// multiplicativity check is exhaustive up to pair_check_limit^2 products and
// sampled beyond.
struct IsgRoundtrip {
  GermGpd germ;
  BisSemigroup bis2;       // Bis(Germ(S))
  std::vector<int> map;    // S -> bis2 element
  bool bijective = false;
};
IsgRoundtrip roundtrip_isg(const InvSgp& S, const BooleanCert& cert,
                           int pair_check_limit = 400, uint64_t sample_seed = 1);

// Multiplier action of H on G: anchor on units plus the action map F sending
// composable (arrow of H, unit of G) pairs to arrows of G.
struct MultAction {
  Gpd h, g;
  std::vector<int> anchor;  // units(G) -> units(H)
  std::vector<int> f;       // (eta * n_units(G) + x) -> arrow of G, -1 off domain

  int f_at(int eta, int x) const { return f[static_cast<size_t>(eta) * g.n_units() + x]; }
  int act_unit(int eta, int x) const { return g.tgt[f_at(eta, x)]; }
  // eta . gamma = F(eta, r(gamma)) gamma
  int act_arrow(int eta, int gamma) const { return g.at(f_at(eta, g.tgt[gamma]), gamma); }
};

// Throws NotAnAction naming the failing axiom.
void validate_mult_action(const MultAction& a);

// Translation between Boolean inverse semigroup homs Bis(H) -> Bis(G) and
// multiplier actions of H on G. Throws NotAHom / NotAnAction.
MultAction multiplier_from_hom(const BisSemigroup& bh, const BisSemigroup& bg,
                               const std::vector<int>& hom);
std::vector<int> hom_from_multiplier(const MultAction& a, const BisSemigroup& bh,
                                     const BisSemigroup& bg);

MultAction identity_action(const Gpd& g);
MultAction compose_actions(const MultAction& kh, const MultAction& hg);

}  // namespace stonework
