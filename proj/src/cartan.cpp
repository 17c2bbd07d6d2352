#include "stonework/cartan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace stonework {

int StarAlg::dim() const { return std::accumulate(blocks.begin(), blocks.end(), 0); }

int StarAlg::block_of(int pos) const {
  int off = 0;
  for (size_t b = 0; b < blocks.size(); ++b) {
    if (pos < off + blocks[b]) return static_cast<int>(b);
    off += blocks[b];
  }
  throw Error("BadTable", "position outside algebra", {pos});
}

bool StarAlg::block_supported(const Mat& x) const {
  if (x.rows != dim() || x.cols != dim()) return false;
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (!x.at(i, j).is_zero() && block_of(i) != block_of(j)) return false;
  return true;
}

Mat StarAlg::matrix_unit(int i, int j) const {
  if (block_of(i) != block_of(j))
    throw Error("BadTable", "matrix unit across blocks", {i, j});
  Mat e = Mat::zero(dim(), dim(), m);
  e.at(i, j) = Cyc::one(m);
  return e;
}

Mat DiagMasa::projection(const StarAlg& a, int atom) const {
  Mat p = Mat::zero(a.dim(), a.dim(), a.m);
  for (int pos : atoms[atom]) p.at(pos, pos) = Cyc::one(a.m);
  return p;
}

Mat diag_expectation(const StarAlg& a, const DiagMasa& b, const Mat& x) {
  Mat r = Mat::zero(a.dim(), a.dim(), a.m);
  for (int k = 0; k < b.n_atoms(); ++k) {
    Mat p = b.projection(a, k);
    r = r + p * x * p;
  }
  return r;
}

namespace {

// Every diagonal position must appear in exactly one atom.
void check_partition(const StarAlg& a, const DiagMasa& b) {
  std::vector<int> seen(a.dim(), 0);
  for (const auto& atom : b.atoms) {
    if (atom.empty()) throw Error("BadTable", "empty masa atom");
    for (int p : atom) {
      if (p < 0 || p >= a.dim()) throw Error("BadTable", "atom position out of range", {p});
      ++seen[p];
    }
  }
  for (int p = 0; p < a.dim(); ++p)
    if (seen[p] != 1) throw Error("BadTable", "masa atoms do not partition the diagonal", {p});
}

std::vector<Mat> algebra_basis(const StarAlg& a) {
  std::vector<Mat> basis;
  int off = 0;
  for (int nb : a.blocks) {
    for (int i = 0; i < nb; ++i)
      for (int j = 0; j < nb; ++j) basis.push_back(a.matrix_unit(off + i, off + j));
    off += nb;
  }
  return basis;
}

}  // namespace

CartanReport validate_cartan(const StarAlg& a, const DiagMasa& b, const Measure& state) {
  check_partition(a, b);
  if (static_cast<int>(state.w.size()) != b.n_atoms())
    throw Error("BadTable", "state size must match atom count");
  state.require_faithful();

  CartanReport rep;
  // masa: commutant of span{P_k} within A, solved with the block-support
  // constraint rows added so the count is the intersection dimension.
  std::vector<Mat> gens;
  for (int k = 0; k < b.n_atoms(); ++k) gens.push_back(b.projection(a, k));
  {
    int n = a.dim(), n2 = n * n;
    std::vector<std::vector<Cyc>> eqs;
    for (const auto& g : gens)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          std::vector<Cyc> row(n2, Cyc::zero(a.m));
          for (int k2 = 0; k2 < n; ++k2) {
            row[i * n + k2] += g.at(k2, j);
            row[k2 * n + j] -= g.at(i, k2);
          }
          bool nz = false;
          for (auto& c : row)
            if (!c.is_zero()) nz = true;
          if (nz) eqs.push_back(std::move(row));
        }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (a.block_of(i) != a.block_of(j)) {
          std::vector<Cyc> row(n2, Cyc::zero(a.m));
          row[i * n + j] = Cyc::one(a.m);
          eqs.push_back(std::move(row));
        }
    rep.commutant_dim = static_cast<int>(nullspace(eqs, n2, a.m).size());
  }
  if (rep.commutant_dim != b.n_atoms()) {
    rep.error = "NotMasa";
    return rep;
  }

  // regularity: normalizer classes times B span A
  PinQuotient pq = pin_quotient(a, b);
  std::vector<Mat> span_gens;
  for (int s = 0; s < pq.h.n; ++s)
    for (int k = 0; k < b.n_atoms(); ++k) span_gens.push_back(pq.rep[s] * b.projection(a, k));
  Span span(a.dim() * a.dim());
  for (const auto& gmat : span_gens) span.add(flatten(gmat));
  rep.pin_span_dim = span.dim();
  int full = 0;
  for (int nb : a.blocks) full += nb * nb;
  if (rep.pin_span_dim != full) {
    rep.error = "NotRegular";
    return rep;
  }

  // expectation: idempotent + bimodule + unit-preserving over the basis
  rep.expectation_ok = true;
  auto basis = algebra_basis(a);
  for (const auto& x : basis) {
    Mat px = diag_expectation(a, b, x);
    if (diag_expectation(a, b, px) != px) rep.expectation_ok = false;
    for (int k = 0; k < b.n_atoms(); ++k) {
      Mat p = b.projection(a, k);
      if (diag_expectation(a, b, p * x) != p * px) rep.expectation_ok = false;
      if (diag_expectation(a, b, x * p) != px * p) rep.expectation_ok = false;
    }
  }
  if (!rep.expectation_ok) {
    rep.error = "NotExpectation";
    return rep;
  }
  rep.ok = true;
  return rep;
}

PinQuotient pin_quotient(const StarAlg& a, const DiagMasa& b) {
  check_partition(a, b);
  // Admissible single moves: atoms whose blocks agree (e_j A e_i != 0). With
  // a diagonal masa every atom is one position, so the block test is on the
  // positions; coarser atoms are rejected upstream by the masa check.
  for (const auto& atom : b.atoms)
    if (atom.size() != 1) throw Error("NotCartan", "masa atoms must be rank one");
  int n = b.n_atoms();
  std::vector<int> pos(n), blk(n);
  for (int i = 0; i < n; ++i) {
    pos[i] = b.atoms[i][0];
    blk[i] = a.block_of(pos[i]);
  }

  // Enumerate block-preserving partial injections of the atom set.
  std::vector<std::vector<int>> moves;
  std::vector<int> cur(n, -1);
  std::vector<char> used(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      moves.push_back(cur);
      return;
    }
    cur[i] = -1;
    rec(i + 1);
    for (int j = 0; j < n; ++j) {
      if (used[j] || blk[j] != blk[i]) continue;
      used[j] = 1;
      cur[i] = j;
      rec(i + 1);
      cur[i] = -1;
      used[j] = 0;
    }
  };
  rec(0);
  std::sort(moves.begin(), moves.end());

  std::map<std::vector<int>, int> index;
  for (size_t i = 0; i < moves.size(); ++i) index[moves[i]] = static_cast<int>(i);
  int q = static_cast<int>(moves.size());
  std::vector<int> table(static_cast<size_t>(q) * q);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      std::vector<int> comp(n, -1);
      for (int i = 0; i < n; ++i)
        if (moves[y][i] >= 0 && moves[x][moves[y][i]] >= 0) comp[i] = moves[x][moves[y][i]];
      table[static_cast<size_t>(x) * q + y] = index.at(comp);
    }

  PinQuotient pq;
  pq.h = inverse_semigroup_unchecked(q, std::move(table));
  pq.moves = std::move(moves);
  for (int s = 0; s < q; ++s) {
    Mat u = Mat::zero(a.dim(), a.dim(), a.m);
    for (int i = 0; i < n; ++i)
      if (pq.moves[s][i] >= 0) u.at(pos[pq.moves[s][i]], pos[i]) = Cyc::one(a.m);
    pq.rep.push_back(std::move(u));
  }
  return pq;
}

WeylTwist weyl_twist(const StarAlg& a, const DiagMasa& b) {
  WeylTwist w;
  w.pin = pin_quotient(a, b);
  BooleanCert cert = is_boolean(w.pin.h);
  if (!cert.boolean) throw Error("NotCartan", "H(B) failed to be Boolean: " + cert.reason);
  if (!is_fundamental(w.pin.h)) throw Error("NotCartan", "H(B) failed to be fundamental");
  w.germ = germ_groupoid(w.pin.h, cert);
  if (!is_principal(w.germ.gpd))
    throw Error("NotCartan", "Weyl groupoid failed to be principal");

  int n_atoms = b.n_atoms();
  int na = w.germ.gpd.n_arrows();
  w.arrow_rep.resize(na, Mat::zero(a.dim(), a.dim(), a.m));
  w.arrow_src_atom.resize(na);
  w.arrow_tgt_atom.resize(na);
  for (int arr = 0; arr < na; ++arr) {
    int elem = w.germ.rep[arr];  // pointlike: one defined move
    const auto& mv = w.pin.moves[elem];
    int src = -1;
    for (int i = 0; i < n_atoms; ++i)
      if (mv[i] >= 0) src = i;
    if (src < 0) throw Error("Internal", "pointlike class with empty move");
    w.arrow_src_atom[arr] = src;
    w.arrow_tgt_atom[arr] = mv[src];
    w.arrow_rep[arr] = w.pin.rep[elem];
  }

  // Cocycle of the representative section: u_a u_b = zeta^t u_{ab} inside the
  // one-dimensional corner e_tgt A e_src.
  std::vector<int> table(static_cast<size_t>(na) * na, -1);
  for (int x = 0; x < na; ++x)
    for (int y = 0; y < na; ++y) {
      if (w.germ.gpd.src[x] != w.germ.gpd.tgt[y]) continue;
      int xy = w.germ.gpd.at(x, y);
      Mat prod = w.arrow_rep[x] * w.arrow_rep[y];
      int pi = b.atoms[w.arrow_tgt_atom[xy]][0], pj = b.atoms[w.arrow_src_atom[xy]][0];
      const Cyc& lhs = prod.at(pi, pj);
      const Cyc& rhs = w.arrow_rep[xy].at(pi, pj);
      int t = -1;
      for (int k = 0; k < a.m && t < 0; ++k)
        if (lhs == rhs * Cyc::zeta(k, a.m)) t = k;
      if (t < 0)
        throw Error("NotCartan", "representative phases do not lie in the phase group",
                    {x, y});
      table[static_cast<size_t>(x) * na + y] = t;
    }
  w.sigma = validate_cocycle(w.germ.gpd, a.m, table);
  w.trivialization = coboundary_test(w.germ.gpd, w.sigma, Cocycle::trivial(w.germ.gpd, a.m));
  return w;
}

AlgElem Reconstruction::phi_coeffs(const StarAlg& a, const DiagMasa& b, const Mat& x) const {
  AlgElem f = AlgElem::zero(ctx);
  for (int arr = 0; arr < ctx.g.n_arrows(); ++arr) {
    Mat ua = weyl.arrow_rep[arr].conj_transpose() * x;
    int p = b.atoms[weyl.arrow_src_atom[arr]][0];
    f.c[arr] = ua.at(p, p);
  }
  (void)a;
  return f;
}

Mat Reconstruction::phi(const StarAlg& a, const DiagMasa& b, const Mat& x) const {
  return reg_matrix(ctx, phi_coeffs(a, b, x));
}

Reconstruction reconstruct(const StarAlg& a, const DiagMasa& b, const Measure& state) {
  CartanReport val = validate_cartan(a, b, state);
  if (!val.ok) throw Error(val.error.empty() ? "NotCartan" : val.error, "not a Cartan pair");
  Reconstruction rec;
  rec.weyl = weyl_twist(a, b);
  rec.ctx = ConvCtx::twisted(rec.weyl.germ.gpd, rec.weyl.sigma);
  rec.mu.w.resize(b.n_atoms());
  // germ unit order: unit u corresponds to masa atom arrow_src_atom of its unit arrow
  rec.mu.w.assign(rec.weyl.germ.gpd.n_units(), Rat(0));
  for (int u = 0; u < rec.weyl.germ.gpd.n_units(); ++u)
    rec.mu.w[u] = state.w[rec.weyl.arrow_src_atom[rec.weyl.germ.gpd.unit_arrow[u]]];
  rec.wstar = wstar_algebra(rec.ctx, rec.mu);

  // separating: representatives vanish on atoms their class moves
  rec.separating_ok = true;
  for (int s = 0; s < rec.weyl.pin.h.n; ++s) {
    const auto& mv = rec.weyl.pin.moves[s];
    for (int i = 0; i < b.n_atoms(); ++i) {
      if (mv[i] < 0 || mv[i] == i) continue;
      Mat pu = diag_expectation(a, b, rec.weyl.pin.rep[s]);
      if (!pu.at(b.atoms[i][0], b.atoms[i][0]).is_zero()) rec.separating_ok = false;
    }
  }
  if (!rec.separating_ok)
    throw Error("SeparatingFails", "P fails condition (c) on a masa; this is a bug");

  auto basis = algebra_basis(a);
  // bijectivity via rank of the coefficient images
  Span span(rec.ctx.g.n_arrows());
  int rank = 0;
  for (const auto& x : basis)
    if (span.add(rec.phi_coeffs(a, b, x).c)) ++rank;
  rec.bijective = rank == static_cast<int>(basis.size()) &&
                  rank == rec.ctx.g.n_arrows();

  rec.multiplicative = true;
  rec.star_compatible = true;
  for (const auto& x : basis) {
    AlgElem fx = rec.phi_coeffs(a, b, x);
    if (star(rec.ctx, fx) != rec.phi_coeffs(a, b, x.conj_transpose()))
      rec.star_compatible = false;
    for (const auto& y : basis) {
      AlgElem fy = rec.phi_coeffs(a, b, y);
      if (convolve(rec.ctx, fx, fy) != rec.phi_coeffs(a, b, x * y))
        rec.multiplicative = false;
    }
  }

  // B lands on the diagonal
  rec.diagonal_onto_diagonal = true;
  for (int k = 0; k < b.n_atoms(); ++k) {
    AlgElem f = rec.phi_coeffs(a, b, b.projection(a, k));
    for (int arr = 0; arr < rec.ctx.g.n_arrows(); ++arr)
      if (!rec.ctx.g.is_unit(arr) && !f.c[arr].is_zero()) rec.diagonal_onto_diagonal = false;
  }

  // state matching m(P(a)) = mu(Q(Phi(a)))
  rec.states_match = true;
  for (const auto& x : basis) {
    Cyc lhs = Cyc::zero(a.m);
    Mat px = diag_expectation(a, b, x);
    for (int k = 0; k < b.n_atoms(); ++k) {
      Cyc diag = Cyc::zero(a.m);
      for (int p : b.atoms[k]) diag += px.at(p, p);
      lhs += diag * Cyc::rational(state.w[k], a.m);
    }
    Cyc rhs = Cyc::zero(a.m);
    auto q = expectation_q(rec.ctx, rec.phi_coeffs(a, b, x));
    for (int u = 0; u < rec.ctx.g.n_units(); ++u)
      rhs += q[u] * Cyc::rational(rec.mu.w[u], a.m);
    if (lhs != rhs) rec.states_match = false;
  }

  if (!rec.bijective) throw Error("NotBijective", "reconstruction map is not bijective");
  return rec;
}

CartanCertificate cartan_pipeline(const StarAlg& a, const DiagMasa& b, const Measure& state) {
  CartanCertificate cert;
  cert.validation = validate_cartan(a, b, state);
  if (!cert.validation.ok)
    throw Error(cert.validation.error, "Cartan validation failed");
  cert.rec = reconstruct(a, b, state);
  BooleanCert bc = is_boolean(cert.rec.weyl.pin.h);
  cert.h_boolean = bc.boolean;
  cert.h_fundamental = is_fundamental(cert.rec.weyl.pin.h);
  cert.weyl_principal = is_principal(cert.rec.weyl.germ.gpd);
  cert.cocycle_trivial = cert.rec.weyl.trivialization.has_value();
  cert.diagonal_masa_in_wstar = diagonal_is_masa(cert.rec.ctx);
  return cert;
}

}  // namespace stonework
