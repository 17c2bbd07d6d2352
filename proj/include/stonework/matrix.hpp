#pragma once

#include <vector>

#include "stonework/cyclotomic.hpp"

namespace stonework {

// Dense matrix over Q(zeta_m).
struct Mat {
  int rows = 0, cols = 0, m = 1;
  std::vector<Cyc> a;

  static Mat zero(int r, int c, int m);
  static Mat identity(int n, int m);

  Cyc& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Cyc& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Cyc& c) const;
  bool operator==(const Mat& o) const;
  bool operator!=(const Mat& o) const { return !(*this == o); }
  Mat conj_transpose() const;
  bool is_zero() const;
};

// Row-reduced linear span with exact arithmetic; vectors of fixed length.
class Span {
public:
  explicit Span(int len) : len_(len) {}

  int dim() const { return static_cast<int>(rows_.size()); }
  // Reduces v against the span; returns true (and grows) if independent.
  bool add(std::vector<Cyc> v);
  bool contains(std::vector<Cyc> v) const;
  const std::vector<std::vector<Cyc>>& basis() const { return rows_; }

private:
  void reduce(std::vector<Cyc>& v) const;
  int len_;
  std::vector<std::vector<Cyc>> rows_;
  std::vector<int> pivot_;
};

std::vector<Cyc> flatten(const Mat& x);
Mat unflatten(const std::vector<Cyc>& v, int rows, int cols, int m);

// Nullspace basis of the system rows*x = 0 (rows are length-n vectors).
std::vector<std::vector<Cyc>> nullspace(const std::vector<std::vector<Cyc>>& rows, int n,
                                        int m);

// Basis of {x in M_dim : x g = g x for all g in gens}.
std::vector<Mat> matrix_commutant(const std::vector<Mat>& gens, int dim, int m);

// Product-saturated span of the generators (a finite-dimensional algebra's
// weak closure); throws CapExceeded past dim_cap.
std::vector<Mat> span_saturate(const std::vector<Mat>& gens, int dim_cap = 10000);

}  // namespace stonework
