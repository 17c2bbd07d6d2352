#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stonework/convolution.hpp"
#include "stonework/matrix.hpp"

namespace stonework {

// Finite-dimensional *-algebra in block form: the direct sum of full matrix
// algebras M_{n_1} + ... + M_{n_r} over Q(zeta_m), involution = conjugate
// transpose. Elements are dim x dim matrices supported on the diagonal blocks.
struct StarAlg {
  int m = 1;
  std::vector<int> blocks;

  int dim() const;
  int block_of(int pos) const;        // diagonal position -> block index
  bool block_supported(const Mat& x) const;
  Mat matrix_unit(int i, int j) const;  // E_ij, requires same block
};

// Diagonal subalgebra given by its atom partition of the diagonal positions.
// A masa has one position per atom.
struct DiagMasa {
  std::vector<std::vector<int>> atoms;

  int n_atoms() const { return static_cast<int>(atoms.size()); }
  Mat projection(const StarAlg& a, int atom) const;
};

struct CartanReport {
  bool ok = false;
  std::string error;               // "NotMasa" / "NotRegular" / ""
  int commutant_dim = 0;           // of B inside A
  int pin_span_dim = 0;            // span of normalizer-class representatives times B
  bool expectation_ok = false;     // P idempotent + bimodule over a basis
};

// P(a) = sum_k P_k a P_k, the diagonal compression.
Mat diag_expectation(const StarAlg& a, const DiagMasa& b, const Mat& x);

CartanReport validate_cartan(const StarAlg& a, const DiagMasa& b, const Measure& state);

// H(B): block-preserving partial injections on atoms, with one canonical
// matrix-unit representative per class.
struct PinQuotient {
  InvSgp h;
  std::vector<std::vector<int>> moves;  // element -> atom map (-1 undefined)
  std::vector<Mat> rep;                 // canonical representative per class
};
PinQuotient pin_quotient(const StarAlg& a, const DiagMasa& b);

// Weyl twist: germ groupoid of H(B) plus the cocycle extracted from the
// representative section, with a triviality certificate when one exists.
struct WeylTwist {
  PinQuotient pin;
  GermGpd germ;
  Cocycle sigma;
  std::vector<Mat> arrow_rep;            // compressed representative per germ arrow
  std::vector<int> arrow_src_atom;       // atom index (position in masa) per arrow
  std::vector<int> arrow_tgt_atom;
  std::optional<std::vector<int>> trivialization;  // coboundary certificate vs 0
};
WeylTwist weyl_twist(const StarAlg& a, const DiagMasa& b);

// The reconstruction isomorphism Phi: A -> W*(G, Sigma, mu) with
// Phi = Reg of j~, j~(a)(gamma) = P(u_gamma^* a)(src atom).
struct Reconstruction {
  WeylTwist weyl;
  ConvCtx ctx;
  Measure mu;
  WStar wstar;
  bool multiplicative = false;
  bool star_compatible = false;
  bool bijective = false;
  bool diagonal_onto_diagonal = false;
  bool states_match = false;  // m(P(a)) = mu(Q(Phi(a))) on a basis
  bool separating_ok = false; // P vanishes where the class germ moves the atom

  AlgElem phi_coeffs(const StarAlg& a, const DiagMasa& b, const Mat& x) const;
  Mat phi(const StarAlg& a, const DiagMasa& b, const Mat& x) const;
};
Reconstruction reconstruct(const StarAlg& a, const DiagMasa& b, const Measure& state);

// End-to-end pipeline: validate, quotient, twist, reconstruct, and the final
// principality / masa assertions. Throws on structural failures; returns the
// full certificate.
struct CartanCertificate {
  CartanReport validation;
  Reconstruction rec;
  bool h_boolean = false;
  bool h_fundamental = false;
  bool weyl_principal = false;
  bool cocycle_trivial = false;
  bool diagonal_masa_in_wstar = false;
};
CartanCertificate cartan_pipeline(const StarAlg& a, const DiagMasa& b, const Measure& state);

}  // namespace stonework
