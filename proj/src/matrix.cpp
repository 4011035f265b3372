#include "vsep/matrix.hpp"

#include <algorithm>

namespace vsep {

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = IntPoly::constant(1);
  return m;
}

PolyMatrix PolyMatrix::select_rows(const std::vector<std::size_t>& rows) const {
  PolyMatrix m(rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(rows[i], j);
  return m;
}

PolyMatrix PolyMatrix::minor_matrix(std::size_t drop_row, std::size_t drop_col) const {
  PolyMatrix m(rows_ - 1, cols_ - 1);
  for (std::size_t i = 0, mi = 0; i < rows_; ++i) {
    if (i == drop_row) continue;
    for (std::size_t j = 0, mj = 0; j < cols_; ++j) {
      if (j == drop_col) continue;
      m.at(mi, mj) = at(i, j);
      ++mj;
    }
    ++mi;
  }
  return m;
}

std::size_t PolyMatrix::max_degree() const {
  std::size_t d = 0;
  for (const auto& p : entries_) d = std::max(d, p.degree());
  return d;
}

Int PolyMatrix::max_coeff() const {
  Int m = 1;
  for (const auto& p : entries_) {
    if (p.is_zero()) continue;
    Int c = p.max_coeff();
    if (c > m) m = c;
  }
  return m;
}

std::vector<IntPoly> PolyMatrix::apply(const std::vector<IntPoly>& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::Arity, "matrix-vector size mismatch");
  std::vector<IntPoly> r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    IntPoly acc;
    for (std::size_t j = 0; j < cols_; ++j) acc = acc + at(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

namespace {

IntPoly det_cofactor(const PolyMatrix& m) {
  std::size_t n = m.rows();
  if (n == 0) return IntPoly::constant(1);
  if (n == 1) return m.at(0, 0);
  if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  IntPoly acc;
  for (std::size_t j = 0; j < n; ++j) {
    if (m.at(0, j).is_zero()) continue;
    IntPoly term = m.at(0, j) * det_cofactor(m.minor_matrix(0, j));
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

// Bareiss: fraction-free elimination; every division is exact over Z[x].
IntPoly det_bareiss(PolyMatrix m) {
  std::size_t n = m.rows();
  IntPoly prev = IntPoly::constant(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m.at(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return IntPoly();  // zero column below: singular
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(pivot, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        IntPoly num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
        m.at(i, j) = num.divide_exact(prev);
      }
      m.at(i, k) = IntPoly();
    }
    prev = m.at(k, k);
    if (prev.is_zero()) return IntPoly();
  }
  IntPoly d = m.at(n - 1, n - 1);
  return sign < 0 ? -d : d;
}

}  // namespace

IntPoly det(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "determinant of non-square matrix");
  if (m.rows() <= 4) return det_cofactor(m);
  return det_bareiss(m);
}

PolyMatrix adjugate(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NotSquare, "adjugate of non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) throw Error(ErrorCode::NotSquare, "adjugate of empty matrix");
  PolyMatrix a(n, n);
  if (n == 1) {
    a.at(0, 0) = IntPoly::constant(1);
    return a;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      IntPoly c = det(m.minor_matrix(i, j));
      a.at(j, i) = ((i + j) % 2 == 0) ? c : -c;
    }
  }
  return a;
}

Rational rat_det(const RatMatrix& m) {
  std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorCode::NotSquare, "rational determinant");
  RatMatrix a = m;
  Rational d(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && a[pivot][k].is_zero()) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      d = -d;
    }
    d = d * a[k][k];
    Rational inv = Rational(1) / a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k].is_zero()) continue;
      Rational f = a[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) a[i][j] = a[i][j] - f * a[k][j];
    }
  }
  return d;
}

RatMatrix rat_adjugate(const RatMatrix& m) {
  std::size_t n = m.size();
  if (n == 1) return RatMatrix{{Rational(1)}};
  RatMatrix a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      RatMatrix minor(n - 1, std::vector<Rational>(n - 1));
      for (std::size_t r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor[mr][mc] = m[r][c];
          ++mc;
        }
        ++mr;
      }
      Rational d = rat_det(minor);
      a[j][i] = ((i + j) % 2 == 0) ? d : -d;
    }
  }
  return a;
}

}  // namespace vsep
