#pragma once

#include <string>
#include <vector>

#include "stonework/rational.hpp"

namespace stonework {

// Q(zeta_m) presented as Q[x]/Phi_m(x). Contexts are cached per modulus and
// immutable after construction, so elements only carry their modulus.
class CycField {
public:
  static const CycField& get(int m);

  int modulus() const { return m_; }
  int degree() const { return deg_; }

  // zeta^k reduced mod Phi_m, k taken mod m.
  const std::vector<Rat>& zeta_pow(int k) const;
  // x^k reduced mod Phi_m for k in [0, 2*deg-2].
  const std::vector<Rat>& x_pow(int k) const;
  const std::vector<Rat>& phi() const { return phi_; }

private:
  explicit CycField(int m);

  int m_;
  int deg_;
  std::vector<Rat> phi_;                      // monic, length deg_+1
  std::vector<std::vector<Rat>> x_pows_;      // x^k for k in [0, 2*deg_-2]
  std::vector<std::vector<Rat>> zeta_pows_;   // zeta^k for k in [0, m)
};

int euler_phi(int m);

// Field element. Invariant: coef.size() == phi(m); equality is coefficient-wise
// since representatives are reduced mod Phi_m.
class Cyc {
public:
  Cyc() : m_(1), coef_(1, Rat(0)) {}
  static Cyc zero(int m);
  static Cyc one(int m);
  static Cyc rational(const Rat& r, int m);
  static Cyc zeta(int k, int m);  // zeta_m^k

  int modulus() const { return m_; }
  const std::vector<Rat>& coef() const { return coef_; }

  bool is_zero() const;
  bool is_rational() const;  // lies in Q
  Rat rational_part() const; // requires is_rational()

  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator-() const;
  Cyc operator*(const Cyc& o) const;
  Cyc operator*(const Rat& r) const;
  Cyc inverse() const;       // throws DivisionByZero on 0
  Cyc conj() const;          // complex conjugation, zeta -> zeta^(m-1)

  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  // Image under Q(zeta_m) -> Q(zeta_m2), zeta_m -> zeta_m2^(m2/m); m must divide m2.
  Cyc embed(int m2) const;

  std::string to_string() const;  // polynomial in z, e.g. "1/2 - z^2"

private:
  Cyc(int m, std::vector<Rat> c) : m_(m), coef_(std::move(c)) {}
  void check_same(const Cyc& o) const;

  int m_;
  std::vector<Rat> coef_;
};

}  // namespace stonework
