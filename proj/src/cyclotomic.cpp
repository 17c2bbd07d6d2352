#include "stonework/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

namespace stonework {

namespace {

using Poly = std::vector<Rat>;  // coefficient list, index = degree

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division, remainder must vanish.
Poly divide(Poly num, const Poly& den) {
  Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
  while (num.size() >= den.size() && !num.empty()) {
    Rat c = num.back() / den.back();
    size_t off = num.size() - den.size();
    q[off] = c;
    for (size_t i = 0; i < den.size(); ++i) num[off + i] -= c * den[i];
    trim(num);
  }
  if (!num.empty()) throw Error("Internal", "non-exact cyclotomic division");
  return q;
}

Poly cyclotomic_poly(int m) {
  // Phi_m = (x^m - 1) / prod_{d|m, d<m} Phi_d
  Poly num(m + 1, Rat(0));
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    num = divide(std::move(num), cyclotomic_poly(d));
  }
  return num;
}

}  // namespace

int euler_phi(int m) {
  int r = m;
  for (int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r -= r / p;
    }
  }
  if (m > 1) r -= r / m;
  return r;
}

CycField::CycField(int m) : m_(m) {
  if (m < 1) throw Error("BadModulus", "phase modulus must be >= 1");
  phi_ = cyclotomic_poly(m);
  deg_ = static_cast<int>(phi_.size()) - 1;
  // x^k mod Phi for k up to max(2*deg-2, deg): products and zeta powers.
  x_pows_.resize(std::max(2 * deg_ - 1, deg_ + 1));
  for (int k = 0; k < static_cast<int>(x_pows_.size()); ++k) {
    std::vector<Rat> v(deg_, Rat(0));
    if (k < deg_) {
      v[k] = 1;
    } else {
      // x^k = x * x^(k-1) reduced
      const auto& prev = x_pows_[k - 1];
      std::vector<Rat> shifted(deg_ + 1, Rat(0));
      for (int i = 0; i < deg_; ++i) shifted[i + 1] = prev[i];
      Rat lead = shifted[deg_];
      for (int i = 0; i < deg_; ++i) v[i] = shifted[i] - lead * phi_[i];
    }
    x_pows_[k] = std::move(v);
  }
  zeta_pows_.resize(m_);
  // zeta = x; zeta^k reduced via repeated x-multiplication.
  std::vector<Rat> cur(deg_, Rat(0));
  cur[0] = 1;
  zeta_pows_[0] = cur;
  for (int k = 1; k < m_; ++k) {
    std::vector<Rat> next(deg_, Rat(0));
    for (int i = 0; i < deg_; ++i) {
      if (cur[i] == 0) continue;
      const auto& xp = x_pows_[i + 1];
      for (int j = 0; j < deg_; ++j) next[j] += cur[i] * xp[j];
    }
    cur = next;
    zeta_pows_[k] = cur;
  }
}

const CycField& CycField::get(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CycField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end())
    it = cache.emplace(m, std::unique_ptr<CycField>(new CycField(m))).first;
  return *it->second;
}

const std::vector<Rat>& CycField::zeta_pow(int k) const {
  k %= m_;
  if (k < 0) k += m_;
  return zeta_pows_[k];
}

const std::vector<Rat>& CycField::x_pow(int k) const { return x_pows_[k]; }

Cyc Cyc::zero(int m) {
  return Cyc(m, std::vector<Rat>(CycField::get(m).degree(), Rat(0)));
}

Cyc Cyc::one(int m) { return rational(Rat(1), m); }

Cyc Cyc::rational(const Rat& r, int m) {
  std::vector<Rat> c(CycField::get(m).degree(), Rat(0));
  c[0] = r;
  c[0].canonicalize();
  return Cyc(m, std::move(c));
}

Cyc Cyc::zeta(int k, int m) { return Cyc(m, CycField::get(m).zeta_pow(k)); }

bool Cyc::is_zero() const {
  for (const auto& c : coef_)
    if (c != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < coef_.size(); ++i)
    if (coef_[i] != 0) return false;
  return true;
}

Rat Cyc::rational_part() const {
  if (!is_rational()) throw Error("NotRational", "element is not in Q");
  return coef_[0];
}

void Cyc::check_same(const Cyc& o) const {
  if (m_ != o.m_)
    throw Error("ModulusMismatch",
                "cyclotomic moduli differ: " + std::to_string(m_) + " vs " +
                    std::to_string(o.m_));
}

Cyc Cyc::operator+(const Cyc& o) const {
  check_same(o);
  std::vector<Rat> c(coef_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.coef_[i];
  return Cyc(m_, std::move(c));
}

Cyc Cyc::operator-(const Cyc& o) const {
  check_same(o);
  std::vector<Rat> c(coef_);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coef_[i];
  return Cyc(m_, std::move(c));
}

Cyc Cyc::operator-() const {
  std::vector<Rat> c(coef_);
  for (auto& x : c) x = -x;
  return Cyc(m_, std::move(c));
}

Cyc Cyc::operator*(const Cyc& o) const {
  check_same(o);
  const auto& F = CycField::get(m_);
  int d = F.degree();
  std::vector<Rat> prod(2 * d - 1, Rat(0));
  for (int i = 0; i < d; ++i) {
    if (coef_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (o.coef_[j] == 0) continue;
      prod[i + j] += coef_[i] * o.coef_[j];
    }
  }
  std::vector<Rat> c(d, Rat(0));
  for (int k = 0; k < 2 * d - 1; ++k) {
    if (prod[k] == 0) continue;
    const auto& xp = F.x_pow(k);
    for (int i = 0; i < d; ++i) c[i] += prod[k] * xp[i];
  }
  return Cyc(m_, std::move(c));
}

Cyc Cyc::operator*(const Rat& r) const {
  std::vector<Rat> c(coef_);
  for (auto& x : c) x *= r;
  return Cyc(m_, std::move(c));
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw Error("DivisionByZero", "inverse of 0 in Q(zeta)");
  const auto& F = CycField::get(m_);
  // Extended Euclid in Q[x]: a*phi + b*this = gcd = const.
  std::vector<Rat> r0(F.phi()), r1(coef_);
  while (!r1.empty() && r1.back() == 0) r1.pop_back();
  std::vector<Rat> t0, t1{Rat(1)};
  while (true) {
    // r0 = q*r1 + r2
    std::vector<Rat> r2(r0), q;
    if (r2.size() >= r1.size()) q.assign(r2.size() - r1.size() + 1, Rat(0));
    while (r2.size() >= r1.size() && !r2.empty()) {
      Rat c = r2.back() / r1.back();
      size_t off = r2.size() - r1.size();
      q[off] = c;
      for (size_t i = 0; i < r1.size(); ++i) r2[off + i] -= c * r1[i];
      while (!r2.empty() && r2.back() == 0) r2.pop_back();
    }
    // t2 = t0 - q*t1
    std::vector<Rat> qt;
    if (!q.empty() && !t1.empty()) {
      qt.assign(q.size() + t1.size() - 1, Rat(0));
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < t1.size(); ++j) qt[i + j] += q[i] * t1[j];
    }
    std::vector<Rat> t2(std::max(t0.size(), qt.size()), Rat(0));
    for (size_t i = 0; i < t0.size(); ++i) t2[i] += t0[i];
    for (size_t i = 0; i < qt.size(); ++i) t2[i] -= qt[i];
    if (r2.empty()) {
      // r1 is the gcd; it must be a nonzero constant since Phi_m is irreducible.
      if (r1.size() != 1) throw Error("Internal", "non-unit gcd in Q(zeta) inverse");
      std::vector<Rat> inv(F.degree(), Rat(0));
      for (size_t i = 0; i < t1.size() && i < inv.size(); ++i) inv[i] = t1[i] / r1[0];
      return Cyc(m_, std::move(inv));
    }
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
}

Cyc Cyc::conj() const {
  const auto& F = CycField::get(m_);
  int d = F.degree();
  std::vector<Rat> c(d, Rat(0));
  for (int i = 0; i < d; ++i) {
    if (coef_[i] == 0) continue;
    const auto& zp = F.zeta_pow((static_cast<long long>(m_ - 1) * i) % m_);
    for (int j = 0; j < d; ++j) c[j] += coef_[i] * zp[j];
  }
  return Cyc(m_, std::move(c));
}

bool Cyc::operator==(const Cyc& o) const {
  if (m_ != o.m_) return false;
  return coef_ == o.coef_;
}

Cyc Cyc::embed(int m2) const {
  if (m2 % m_ != 0)
    throw Error("BadModulus", "cannot embed Q(zeta_" + std::to_string(m_) +
                                  ") into Q(zeta_" + std::to_string(m2) + ")");
  int step = m2 / m_;
  Cyc r = Cyc::zero(m2);
  for (size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i] == 0) continue;
    r += Cyc::zeta(static_cast<int>(i) * step, m2) * coef_[i];
  }
  return r;
}

std::string Cyc::to_string() const {
  std::string s;
  for (size_t i = 0; i < coef_.size(); ++i) {
    if (coef_[i] == 0) continue;
    Rat c = coef_[i];
    bool neg = c < 0;
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    Rat a = neg ? Rat(-c) : c;
    std::string cs = rat_to_string(a);
    if (i == 0) {
      s += cs;
    } else {
      if (cs != "1") s += cs + "*";
      s += "z";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

}  // namespace stonework
