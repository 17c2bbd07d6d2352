#include "stonework/zmod.hpp"

#include <algorithm>
#include <numeric>

#include "stonework/error.hpp"

namespace stonework {

namespace {

long long mod_pos(long long a, long long m) {
  a %= m;
  if (a < 0) a += m;
  return a;
}

long long egcd(long long a, long long b, long long& x, long long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long long x1, y1;
  long long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

long long inv_mod(long long a, long long m) {
  long long x, y;
  long long g = egcd(mod_pos(a, m), m, x, y);
  if (g != 1) throw Error("Internal", "non-invertible pivot in zmod solve");
  return mod_pos(x, m);
}

// Solve dense system over Z/p^e by diagonalizing with row and column
// operations (a Smith reduction). The pivot is a global minimal-valuation
// entry of the remaining submatrix, so all clearing multipliers are integral
// and valuations never drop below the pivot's; after diagonalization the
// system decouples and solvability is a divisibility check per diagonal.
std::optional<std::vector<long long>> solve_prime_power(
    std::vector<std::vector<long long>> a, std::vector<long long> b, int unknowns,
    long long p, long long q /* = p^e */) {
  auto val = [&](long long x) {
    if (x == 0) return 64;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };
  int rows = static_cast<int>(a.size());
  // x = V y; column ops on a are mirrored on V.
  std::vector<std::vector<long long>> vmat(unknowns, std::vector<long long>(unknowns, 0));
  for (int i = 0; i < unknowns; ++i) vmat[i][i] = 1;

  int rank = 0;
  int maxr = std::min(rows, unknowns);
  for (; rank < maxr; ++rank) {
    int pr = -1, pc = -1, pv_val = 64;
    for (int r = rank; r < rows; ++r)
      for (int c = rank; c < unknowns; ++c) {
        int v = val(a[r][c]);
        if (v < pv_val) {
          pv_val = v;
          pr = r;
          pc = c;
        }
      }
    if (pr < 0 || pv_val >= 64) break;
    std::swap(a[rank], a[pr]);
    std::swap(b[rank], b[pr]);
    if (pc != rank) {
      for (int r = 0; r < rows; ++r) std::swap(a[r][rank], a[r][pc]);
      for (int i = 0; i < unknowns; ++i) std::swap(vmat[i][rank], vmat[i][pc]);
    }
    long long pw = 1;
    for (int i = 0; i < pv_val; ++i) pw *= p;
    long long uinv = inv_mod(a[rank][rank] / pw, q);
    for (int c = 0; c < unknowns; ++c) a[rank][c] = mod_pos(a[rank][c] * uinv, q);
    b[rank] = mod_pos(b[rank] * uinv, q);
    // clear the pivot column with row ops
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][rank] == 0) continue;
      long long t = a[r][rank] / pw;
      for (int c = 0; c < unknowns; ++c) a[r][c] = mod_pos(a[r][c] - t * a[rank][c], q);
      b[r] = mod_pos(b[r] - t * b[rank], q);
    }
    // clear the pivot row with column ops (the pivot column elsewhere is 0
    // already, so these do not disturb it)
    for (int c = 0; c < unknowns; ++c) {
      if (c == rank || a[rank][c] == 0) continue;
      long long t = a[rank][c] / pw;
      for (int r = 0; r < rows; ++r) a[r][c] = mod_pos(a[r][c] - t * a[r][rank], q);
      for (int i = 0; i < unknowns; ++i)
        vmat[i][c] = mod_pos(vmat[i][c] - t * vmat[i][rank], q);
    }
  }
  for (int r = rank; r < rows; ++r)
    if (b[r] % q != 0) return std::nullopt;
  std::vector<long long> y(unknowns, 0);
  for (int i = 0; i < rank; ++i) {
    long long d = a[i][i];
    if (d == 0) {
      if (b[i] % q != 0) return std::nullopt;
      continue;
    }
    if (b[i] % d != 0) return std::nullopt;
    y[i] = b[i] / d;
  }
  std::vector<long long> x(unknowns, 0);
  for (int i = 0; i < unknowns; ++i) {
    long long acc = 0;
    for (int j = 0; j < unknowns; ++j) acc = mod_pos(acc + vmat[i][j] * y[j], q);
    x[i] = acc;
  }
  return x;
}

}  // namespace

std::optional<std::vector<long long>> zmod_solve(const std::vector<ZmodEq>& eqs,
                                                 int unknowns, long long m) {
  if (m < 1) throw Error("BadModulus", "zmod modulus must be >= 1");
  if (m == 1) return std::vector<long long>(unknowns, 0);

  // Factor m into prime powers.
  std::vector<std::pair<long long, long long>> pps;  // (p, p^e)
  long long rest = m;
  for (long long p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    long long q = 1;
    while (rest % p == 0) {
      rest /= p;
      q *= p;
    }
    pps.emplace_back(p, q);
  }
  if (rest > 1) pps.emplace_back(rest, rest);

  std::vector<std::vector<long long>> sols;
  for (auto [p, q] : pps) {
    std::vector<std::vector<long long>> a(eqs.size(),
                                          std::vector<long long>(unknowns, 0));
    std::vector<long long> b(eqs.size(), 0);
    for (size_t r = 0; r < eqs.size(); ++r) {
      for (size_t j = 0; j < eqs[r].cols.size(); ++j) {
        int c = eqs[r].cols[j];
        a[r][c] = mod_pos(a[r][c] + eqs[r].coef[j], q);
      }
      b[r] = mod_pos(eqs[r].rhs, q);
    }
    auto s = solve_prime_power(std::move(a), std::move(b), unknowns, p, q);
    if (!s) return std::nullopt;
    sols.push_back(std::move(*s));
  }

  // CRT combine.
  std::vector<long long> x(unknowns, 0);
  for (int j = 0; j < unknowns; ++j) {
    long long cur = 0, mod = 1;
    for (size_t i = 0; i < pps.size(); ++i) {
      long long q = pps[i].second, r = sols[i][j];
      long long inv = inv_mod(mod % q, q);
      long long t = mod_pos((r - cur) % q * inv, q);
      cur += mod * t;
      mod *= q;
    }
    x[j] = mod_pos(cur, m);
  }
  return x;
}

}  // namespace stonework
