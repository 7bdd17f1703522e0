#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "ebc/field.hpp"

namespace ebc {

// Dense row-major matrix over GF(q).
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);

  static Matrix identity(Field field, std::size_t n);
  // Every row must have `cols` entries; throws DimensionMismatch otherwise.
  static Matrix from_rows(Field field, std::size_t cols, const std::vector<Vec>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const Field& field() const noexcept { return field_; }

  Elem& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  Elem operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<Elem> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const Elem> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
  Vec row_vec(std::size_t i) const { return {row(i).begin(), row(i).end()}; }
  std::vector<Vec> row_list() const;

  void append_row(std::span<const Elem> r);
  void swap_rows(std::size_t a, std::size_t b) noexcept;
  void truncate_rows(std::size_t n);

  Matrix transpose() const;
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;

  // Matrix-vector product M·x.
  Vec apply(std::span<const Elem> x) const;
  Matrix operator*(const Matrix& rhs) const;

  bool is_zero() const noexcept;
  bool row_is_zero(std::size_t i) const noexcept;

  friend bool operator==(const Matrix& a, const Matrix& b) noexcept {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

std::size_t hamming_weight(std::span<const Elem> v) noexcept;
std::vector<std::size_t> support(std::span<const Elem> v);
Elem inner(const Field& f, std::span<const Elem> a, std::span<const Elem> b);

struct RrefResult {
  Matrix rref;                          // same shape as the input, zero rows last
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;  // strictly increasing
  // Pivot columns first, then the free columns, both ascending: reordering
  // the columns of `rref` by col_perm gives [I | A] on the top rank rows.
  std::vector<std::size_t> col_perm;
};

// Reduced row echelon form. Pivot choice: leftmost nonzero column, then the
// lowest row index holding a nonzero entry in it.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// Rows of the input that increase the rank, in their original order.
Matrix independent_rows(const Matrix& m);

// (N-r)×N matrix B = [-A^T | I]·P built from the RREF of c; c·B^T = 0.
Matrix null_space_basis(const Matrix& c);

// Membership of x in the row space of c, by rank comparison.
bool in_row_space(std::span<const Elem> x, const Matrix& c);
// Same question answered as null_space_basis(c)·x == 0.
bool in_row_space_dual(std::span<const Elem> x, const Matrix& c);

struct LinearSolution {
  Matrix x;                             // a.cols() × rhs.cols(), free variables zero
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

// Solves a·x = rhs (rhs has one column per right-hand side). Returns nullopt
// when the system is inconsistent.
std::optional<LinearSolution> solve_dense(const Matrix& a, const Matrix& rhs);

// Same contract as solve_dense, but elimination walks only the stored
// nonzeros of each row. Throws DimensionMismatch if a row of `a` is heavier
// than weight_bound.
std::optional<LinearSolution> solve_sparse(const Matrix& a, const Matrix& rhs, std::size_t weight_bound);

// Text format: "rows cols q [poly=<hex>]" then one row per line.
Matrix read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const Matrix& m);

}  // namespace ebc
