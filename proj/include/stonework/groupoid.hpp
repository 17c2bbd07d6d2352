#pragma once

#include <map>
#include <string>
#include <vector>

#include "stonework/inverse_semigroup.hpp"

namespace stonework {

// Finite groupoid. Arrows carry source and target unit indices; comp[a][b] is
// defined exactly when src(a) == tgt(b) (function-composition order), -1
// otherwise. Units are identified with their identity arrows via unit_arrow.
struct Gpd {
  std::vector<std::string> unit_labels;
  std::vector<int> src, tgt;       // per arrow
  std::vector<int> unit_arrow;     // per unit
  std::vector<int> inv;            // per arrow
  std::vector<int> comp;           // n*n row-major, -1 when not composable

  int n_units() const { return static_cast<int>(unit_labels.size()); }
  int n_arrows() const { return static_cast<int>(src.size()); }
  bool composable(int a, int b) const { return src[a] == tgt[b]; }
  int at(int a, int b) const { return comp[static_cast<size_t>(a) * n_arrows() + b]; }
  bool is_unit(int a) const { return unit_arrow[tgt[a]] == a && src[a] == tgt[a]; }
  bool is_isotropy(int a) const { return src[a] == tgt[a]; }
};

// Canonical constructions.
Gpd pair_groupoid(int n);
Gpd discrete_units(int n);
// One orbit of the given size whose isotropy is the group with the given
// table (identity must be element 0); arrows = (i, j, g): j -> i.
Gpd orbit_groupoid(int orbit, int group_order, const std::vector<int>& group_table);
Gpd disjoint_union(const Gpd& a, const Gpd& b);
// Relabel arrows/units by permutations (perm[i] = new index of old i).
Gpd relabel(const Gpd& g, const std::vector<int>& unit_perm,
            const std::vector<int>& arrow_perm);

// Small group tables for bundle constructions (identity = 0).
std::vector<int> cyclic_group_table(int k);
std::vector<int> klein_four_table();
std::vector<int> symmetric3_table();

// Full axiom check; throws BadUnit / BadInverse / NotAssociative / BadTable.
void validate_groupoid(const Gpd& g);

// A bisection is a sorted arrow-index set on which src and tgt are injective.
using Bisection = std::vector<int>;

bool is_bisection(const Gpd& g, const Bisection& s);
Bisection compose_bisections(const Gpd& g, const Bisection& s, const Bisection& t);
Bisection invert_bisection(const Gpd& g, const Bisection& s);

// The ample semigroup Bis(G), materialized with its element labels.
struct BisSemigroup {
  InvSgp sgp;
  std::vector<Bisection> elems;      // index -> arrow set, enumeration order
  std::map<Bisection, int> index;    // arrow set -> index
  Gpd base;

  int index_of(const Bisection& b) const;
};
// Enumerates all bisections (cap on their number; TooLarge beyond) and builds
// the multiplication table. Deterministic order: by size, then lexicographic.
BisSemigroup bis_semigroup(const Gpd& g, size_t cap = 1000000);

// Number of bisections without materializing the semigroup (same cap).
size_t count_bisections(const Gpd& g, size_t cap = 1000000);

bool is_effective(const Gpd& g);
bool is_principal(const Gpd& g);
bool is_group_bundle(const Gpd& g);

}  // namespace stonework
