#pragma once

#include <utility>
#include <vector>

#include "crepant/exact.hpp"

namespace crepant {

// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Int(0)) {}

  static IntMatrix identity(int n);
  static IntMatrix from_rows(const std::vector<IntVec>& rows);
  static IntMatrix from_cols(const std::vector<IntVec>& cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Int& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  IntVec row(int r) const;
  IntVec col(int c) const;
  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& o) const;
  IntVec apply(const IntVec& v) const;  // this * v

  Int det() const;    // Bareiss, square matrices only
  int rank() const;   // fraction-free elimination

  bool operator==(const IntMatrix& o) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

struct HnfResult {
  IntMatrix h;  // row-style Hermite normal form, u * m == h
  IntMatrix u;  // unimodular
};

// Row-style HNF: pivots positive, entries above each pivot reduced into
// [0, pivot), zero rows at the bottom. u is unimodular with u*m == h.
HnfResult hermite_normal_form(const IntMatrix& m);

// Invariant factors d1 | d2 | ... | dk, k = min(rows, cols), nonnegative,
// trailing zeros for rank deficiency.
std::vector<Int> smith_normal_form(const IntMatrix& m);

// Basis of {x : m * x = 0} as columns; HNF-canonical, primitive rows of the
// transposed kernel. Size cols x (cols - rank).
std::vector<IntVec> integer_kernel_basis(const IntMatrix& m);

// Exact solve m * x = b over the rationals. Returns false if inconsistent;
// requires unique solution when consistent (rank == cols) else throws.
bool solve_rational(const IntMatrix& m, const RatVec& b, RatVec& x);

// Inverse of a square rational-invertible integer matrix, as rational matrix
// stored row-major.
std::vector<RatVec> rational_inverse(const IntMatrix& m);

}  // namespace crepant
