#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "f1kgw/ints.hpp"

namespace f1kgw {

/// Dense matrix over arbitrary-precision integers, row major.
class IntMatrix {
 public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

  static IntMatrix identity(size_t n);
  static IntMatrix from_rows(const std::vector<Vec>& rows);
  static IntMatrix from_cols(const std::vector<Vec>& cols);
  static IntMatrix diagonal(const Vec& d);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Int& at(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const Int& at(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  Vec row(size_t i) const;
  Vec col(size_t j) const;

  IntMatrix transpose() const;
  IntMatrix mul(const IntMatrix& other) const;
  Vec apply(const Vec& v) const;  // matrix * column vector

  IntMatrix hconcat(const IntMatrix& right) const;
  IntMatrix vconcat(const IntMatrix& below) const;
  IntMatrix submatrix_cols(const std::vector<size_t>& idx) const;
  IntMatrix submatrix_rows(const std::vector<size_t>& idx) const;

  bool is_zero() const;
  bool operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

  void swap_rows(size_t a, size_t b);
  void swap_cols(size_t a, size_t b);
  void add_row_multiple(size_t dst, size_t src, const Int& c);  // row dst += c * row src
  void add_col_multiple(size_t dst, size_t src, const Int& c);
  void negate_row(size_t i);
  void negate_col(size_t j);

  std::string to_string() const;

 private:
  size_t rows_, cols_;
  std::vector<Int> data_;
};

/// U * m * V = S with U, V unimodular and S diagonal satisfying the
/// divisibility chain d1 | d2 | ... (diagonal entries nonnegative).
/// The inverses are tracked during the reduction so callers get them
/// without a separate inversion pass.
struct SnfResult {
  IntMatrix u, s, v;
  IntMatrix u_inv, v_inv;
  size_t rank = 0;  // number of nonzero diagonal entries
};

SnfResult smith_normal_form(const IntMatrix& m);

/// Exact determinant (Bareiss); square matrices only.
Int determinant(const IntMatrix& m);

/// Integer solution of A x = b, if one exists.
std::optional<Vec> solve_linear(const IntMatrix& a, const Vec& b);

/// Basis of the integer kernel lattice {x : A x = 0}, as matrix columns.
IntMatrix integer_kernel(const IntMatrix& a);

/// Independent columns spanning the same lattice as the columns of B.
IntMatrix lattice_column_basis(const IntMatrix& b);

}  // namespace f1kgw
