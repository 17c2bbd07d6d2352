#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stonework/error.hpp"

namespace stonework {

// Finite inverse semigroup as a multiplication table. Immutable after
// construction; star and the idempotent list are derived once.
struct InvSgp {
  int n = 0;
  std::vector<int> mul;    // n*n row-major
  std::vector<int> star;   // unique inverse per element
  int zero = -1;           // index of the zero element, -1 when absent
  std::vector<int> idem;   // idempotent indices, increasing

  int at(int a, int b) const { return mul[static_cast<size_t>(a) * n + b]; }
  int d(int s) const { return at(star[s], s); }  // s*s
  int r(int s) const { return at(s, star[s]); }  // ss*
  bool is_idempotent(int e) const { return at(e, e) == e; }
  // natural order: s <= t iff t*d(s) == s
  bool leq(int s, int t) const { return at(t, d(s)) == s; }
};

// Multiplicative star/zero-preserving map between inverse semigroups.
struct IsgHom {
  const InvSgp* src = nullptr;
  const InvSgp* dst = nullptr;
  std::vector<int> map;
};

// Builds star, locates the zero and checks the inverse-semigroup axioms.
// Throws Error with codes NotAssociative(a,b,c), NoUniqueInverse(s),
// IdempotentsDontCommute(e,f), BadTable.
InvSgp validate_inverse_semigroup(int n, const std::vector<int>& table);

// Same derivation but trusting the table (used for semigroups built by
// construction); axiom checks are skipped except star uniqueness.
InvSgp inverse_semigroup_unchecked(int n, std::vector<int> table);

bool natural_order(const InvSgp& S, int s, int t);

struct JoinResult {
  bool ok = false;
  int join = -1;
  std::string error;  // "NotOrthogonal", "NoJoin", "NoZero"
};
JoinResult orthogonal_join(const InvSgp& S, int s, int t);

// Certificate for is_boolean: atom decomposition of the idempotent algebra
// plus a witness pair on failure.
struct BooleanCert {
  bool boolean = false;
  std::string reason;
  int witness_s = -1, witness_t = -1;
  std::vector<int> atoms;               // idempotent element indices
  std::vector<uint64_t> idem_atom_set;  // per idempotent list position, bitset over atoms
};
BooleanCert is_boolean(const InvSgp& S);

bool is_fundamental(const InvSgp& S);

struct QuotientResult {
  InvSgp quotient;
  std::vector<int> cls;  // element -> class index; the quotient map S -> quotient
};
// Quotient by a normal inverse subsemigroup N (given as element indices).
// Throws NotNormal with the failing condition index (1: idempotents, 2:
// closure under mul/star, 3: commutes with idempotents, 4: conjugation).
QuotientResult quotient_by_normal(const InvSgp& S, const std::vector<int>& N);

// Hom checks (multiplicative, star, zero); throws NotAHom on failure.
void validate_isg_hom(const IsgHom& h);

// Backtracking isomorphism search between small inverse semigroups.
std::optional<std::vector<int>> isg_iso_search(const InvSgp& A, const InvSgp& B);

}  // namespace stonework
