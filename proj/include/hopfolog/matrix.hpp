#pragma once

#include <optional>

#include "hopfolog/scalar.hpp"

namespace hopfolog {

/// Dense matrix over a single Field. Row-major, immutable-by-convention:
/// operations return fresh matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldPtr f, long rows, long cols);  // zero-filled

  static Matrix identity(const FieldPtr& f, long n);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  const FieldPtr& field() const { return field_; }

  const Scalar& at(long r, long c) const { return data_[r * cols_ + c]; }
  void set(long r, long c, Scalar v);

  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator-() const;
  Matrix scaled(const Scalar& s) const;
  bool operator==(const Matrix& o) const;
  bool is_zero() const;

  Matrix transpose() const;
  Matrix pow(long e) const;  // square matrices

  /// Rows [r0, r1) and columns [c0, c1).
  Matrix submatrix(long r0, long r1, long c0, long c1) const;
  Matrix select_columns(const std::vector<long>& idx) const;
  Matrix select_rows(const std::vector<long>& idx) const;
  static Matrix hstack(const Matrix& a, const Matrix& b);
  static Matrix vstack(const Matrix& a, const Matrix& b);
  static Matrix block_diag(const Matrix& a, const Matrix& b);

  long rank() const;
  long nullity() const { return cols_ - rank(); }
  /// Columns form a basis of {x : Ax = 0}.
  Matrix kernel_basis() const;
  /// Columns form a basis of the column span.
  Matrix column_space_basis() const;
  /// Inverse of a square invertible matrix.
  Matrix inverse() const;

  std::string to_string() const;

 private:
  FieldPtr field_;
  long rows_ = 0, cols_ = 0;
  std::vector<Scalar> data_;
};

/// Result of solving AX = B over an exact field.
struct LinearSolution {
  bool consistent = false;
  Matrix particular;  // any X0 with A X0 = B (cols(B) columns), valid iff consistent
  Matrix nullspace;   // basis of ker A as columns (shared by all right-hand sides)
};

/// Exact Gaussian elimination with first-nonzero pivoting.
/// In debug builds the solution is re-verified by back-substitution.
LinearSolution solve_linear_system(const Matrix& A, const Matrix& B);

/// dim(colspan(A) \cap colspan(B)); both over the same field, equal row counts.
long intersection_dim(const Matrix& A, const Matrix& B);

/// Pivot column indices of the reduced row echelon form (deterministic).
std::vector<long> pivot_columns(const Matrix& A);

}  // namespace hopfolog
