#include "stonework/matrix.hpp"

#include <algorithm>

namespace stonework {

Mat Mat::zero(int r, int c, int m) {
  Mat x;
  x.rows = r;
  x.cols = c;
  x.m = m;
  x.a.assign(static_cast<size_t>(r) * c, Cyc::zero(m));
  return x;
}

Mat Mat::identity(int n, int m) {
  Mat x = zero(n, n, m);
  for (int i = 0; i < n; ++i) x.at(i, i) = Cyc::one(m);
  return x;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols != o.rows || m != o.m) throw Error("DimensionMismatch", "matrix product");
  Mat r = zero(rows, o.cols, m);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += at(i, k) * o.at(k, j);
      }
    }
  return r;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows != o.rows || cols != o.cols || m != o.m)
    throw Error("DimensionMismatch", "matrix sum");
  Mat r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows != o.rows || cols != o.cols || m != o.m)
    throw Error("DimensionMismatch", "matrix difference");
  Mat r = *this;
  for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
  return r;
}

Mat Mat::operator*(const Cyc& c) const {
  Mat r = *this;
  for (auto& x : r.a) x *= c;
  return r;
}

bool Mat::operator==(const Mat& o) const {
  return rows == o.rows && cols == o.cols && m == o.m && a == o.a;
}

Mat Mat::conj_transpose() const {
  Mat r = zero(cols, rows, m);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j).conj();
  return r;
}

bool Mat::is_zero() const {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

void Span::reduce(std::vector<Cyc>& v) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    const Cyc& c = v[pivot_[r]];
    if (c.is_zero()) continue;
    Cyc f = c;  // rows are normalized with pivot 1
    for (int j = 0; j < len_; ++j) {
      if (rows_[r][j].is_zero()) continue;
      v[j] -= rows_[r][j] * f;
    }
  }
}

bool Span::add(std::vector<Cyc> v) {
  reduce(v);
  int p = -1;
  for (int j = 0; j < len_; ++j)
    if (!v[j].is_zero()) {
      p = j;
      break;
    }
  if (p < 0) return false;
  Cyc inv = v[p].inverse();
  for (int j = 0; j < len_; ++j)
    if (!v[j].is_zero()) v[j] *= inv;
  // keep previous rows reduced against the new one
  for (size_t r = 0; r < rows_.size(); ++r) {
    Cyc c = rows_[r][p];
    if (c.is_zero()) continue;
    for (int j = 0; j < len_; ++j)
      if (!v[j].is_zero()) rows_[r][j] -= v[j] * c;
  }
  rows_.push_back(std::move(v));
  pivot_.push_back(p);
  return true;
}

bool Span::contains(std::vector<Cyc> v) const {
  reduce(v);
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

std::vector<Cyc> flatten(const Mat& x) { return x.a; }

Mat unflatten(const std::vector<Cyc>& v, int rows, int cols, int m) {
  Mat x = Mat::zero(rows, cols, m);
  x.a = v;
  return x;
}

std::vector<std::vector<Cyc>> nullspace(const std::vector<std::vector<Cyc>>& rows_in,
                                        int n, int m) {
  // Gauss-Jordan; track pivot columns, then read off one basis vector per
  // free column.
  std::vector<std::vector<Cyc>> rows;
  std::vector<int> pivot_col;
  for (auto v : rows_in) {
    for (size_t r = 0; r < rows.size(); ++r) {
      const Cyc& c = v[pivot_col[r]];
      if (c.is_zero()) continue;
      Cyc f = c;
      for (int j = 0; j < n; ++j)
        if (!rows[r][j].is_zero()) v[j] -= rows[r][j] * f;
    }
    int p = -1;
    for (int j = 0; j < n; ++j)
      if (!v[j].is_zero()) {
        p = j;
        break;
      }
    if (p < 0) continue;
    Cyc inv = v[p].inverse();
    for (int j = 0; j < n; ++j)
      if (!v[j].is_zero()) v[j] *= inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      Cyc c = rows[r][p];
      if (c.is_zero()) continue;
      for (int j = 0; j < n; ++j)
        if (!v[j].is_zero()) rows[r][j] -= v[j] * c;
    }
    rows.push_back(std::move(v));
    pivot_col.push_back(p);
  }
  std::vector<char> is_pivot(n, 0);
  for (int p : pivot_col) is_pivot[p] = 1;
  std::vector<std::vector<Cyc>> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Cyc> v(n, Cyc::zero(m));
    v[f] = Cyc::one(m);
    for (size_t r = 0; r < rows.size(); ++r) v[pivot_col[r]] = -rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Mat> matrix_commutant(const std::vector<Mat>& gens, int dim, int m) {
  for (const auto& g : gens)
    if (g.rows != dim || g.cols != dim || g.m != m)
      throw Error("DimensionMismatch", "commutant generators");
  // unknown X, equations X g - g X = 0 entrywise
  std::vector<std::vector<Cyc>> eqs;
  int n2 = dim * dim;
  for (const auto& g : gens) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        std::vector<Cyc> row(n2, Cyc::zero(m));
        // (Xg)_{ij} = sum_k X_{ik} g_{kj}; (gX)_{ij} = sum_k g_{ik} X_{kj}
        for (int k = 0; k < dim; ++k) {
          row[i * dim + k] += g.at(k, j);
          row[k * dim + j] -= g.at(i, k);
        }
        bool nonzero = false;
        for (const auto& c : row)
          if (!c.is_zero()) nonzero = true;
        if (nonzero) eqs.push_back(std::move(row));
      }
  }
  std::vector<Mat> out;
  for (auto& v : nullspace(eqs, n2, m)) out.push_back(unflatten(v, dim, dim, m));
  return out;
}

std::vector<Mat> span_saturate(const std::vector<Mat>& gens, int dim_cap) {
  if (gens.empty()) return {};
  int dim = gens[0].rows;
  Span span(dim * dim);
  std::vector<Mat> basis;
  std::vector<Mat> fresh;
  for (const auto& g : gens)
    if (span.add(flatten(g))) {
      basis.push_back(g);
      fresh.push_back(g);
    }
  while (!fresh.empty()) {
    if (span.dim() > dim_cap) throw Error("CapExceeded", "span dimension exceeds cap");
    std::vector<Mat> next;
    for (const auto& f : fresh)
      for (const auto& b : basis) {
        for (const Mat& p : {f * b, b * f}) {
          if (span.add(flatten(p))) next.push_back(p);
        }
      }
    for (const auto& x : next) basis.push_back(x);
    fresh = std::move(next);
  }
  return basis;
}

}  // namespace stonework
