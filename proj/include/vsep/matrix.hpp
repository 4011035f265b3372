#pragma once

#include <cstddef>
#include <vector>

#include "vsep/poly.hpp"

namespace vsep {

/// Dense matrix over Z[x], row-major.
class PolyMatrix {
 public:
  PolyMatrix() : rows_(0), cols_(0) {}
  PolyMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const IntPoly& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  IntPoly& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

  static PolyMatrix identity(std::size_t n);
  PolyMatrix select_rows(const std::vector<std::size_t>& rows) const;
  PolyMatrix minor_matrix(std::size_t drop_row, std::size_t drop_col) const;

  std::size_t max_degree() const;  // 0 for an all-zero matrix (deg convention)
  Int max_coeff() const;           // 1 for an all-zero matrix

  /// Matrix * vector over Z[x].
  std::vector<IntPoly> apply(const std::vector<IntPoly>& v) const;

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<IntPoly> entries_;
};

/// Exact determinant. Cofactor expansion up to 4x4, fraction-free Bareiss
/// elimination with exact division above that.
IntPoly det(const PolyMatrix& m);

/// adj(M) with M * adj(M) = det(M) * I as a polynomial identity.
/// adj of a 1x1 matrix is [[1]].
PolyMatrix adjugate(const PolyMatrix& m);

/// Dense rational matrix helpers used by the per-t solvers.
using RatMatrix = std::vector<std::vector<Rational>>;

Rational rat_det(const RatMatrix& m);
RatMatrix rat_adjugate(const RatMatrix& m);

}  // namespace vsep
