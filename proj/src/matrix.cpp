#include "hopfolog/matrix.hpp"

#include <cassert>
#include <sstream>

namespace hopfolog {

namespace {

void check_fields(const Matrix& a, const Matrix& b) {
  if (!a.field() || !b.field() || !a.field()->same(*b.field()))
    throw FieldMismatch("matrices over different fields");
}

// Row echelon data: reduced matrix and pivot column per pivot row.
struct Echelon {
  Matrix m;                  // RREF
  std::vector<long> pivots;  // pivot column of each pivot row
};

}  // namespace

Matrix::Matrix(FieldPtr f, long rows, long cols)
    : field_(std::move(f)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  data_.assign(size_t(rows) * size_t(cols), Scalar::zero(field_));
}

Matrix Matrix::identity(const FieldPtr& f, long n) {
  Matrix m(f, n, n);
  for (long i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
  return m;
}

void Matrix::set(long r, long c, Scalar v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("matrix index out of range");
  data_[r * cols_ + c] = std::move(v);
}

Matrix Matrix::operator+(const Matrix& o) const {
  check_fields(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch in +");
  Matrix r(field_, rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const { return *this + (-o); }

Matrix Matrix::operator-() const {
  Matrix r(field_, rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
  return r;
}

Matrix Matrix::scaled(const Scalar& s) const {
  Matrix r(field_, rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * s;
  return r;
}

Matrix Matrix::operator*(const Matrix& o) const {
  check_fields(*this, o);
  if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in *");
  Matrix r(field_, rows_, o.cols_);
  for (long i = 0; i < rows_; ++i) {
    for (long k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (a.is_zero()) continue;
      for (long j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (b.is_zero()) continue;
        r.data_[i * o.cols_ + j] = r.data_[i * o.cols_ + j] + a * b;
      }
    }
  }
  return r;
}

bool Matrix::operator==(const Matrix& o) const {
  check_fields(*this, o);
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < data_.size(); ++i)
    if (data_[i] != o.data_[i]) return false;
  return true;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_)
    if (!s.is_zero()) return false;
  return true;
}

Matrix Matrix::transpose() const {
  Matrix r(field_, cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

Matrix Matrix::pow(long e) const {
  if (rows_ != cols_) throw std::invalid_argument("pow of non-square matrix");
  Matrix acc = identity(field_, rows_), base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

Matrix Matrix::submatrix(long r0, long r1, long c0, long c1) const {
  Matrix r(field_, r1 - r0, c1 - c0);
  for (long i = r0; i < r1; ++i)
    for (long j = c0; j < c1; ++j) r.set(i - r0, j - c0, at(i, j));
  return r;
}

Matrix Matrix::select_columns(const std::vector<long>& idx) const {
  Matrix r(field_, rows_, long(idx.size()));
  for (long i = 0; i < rows_; ++i)
    for (size_t j = 0; j < idx.size(); ++j) r.set(i, long(j), at(i, idx[j]));
  return r;
}

Matrix Matrix::select_rows(const std::vector<long>& idx) const {
  Matrix r(field_, long(idx.size()), cols_);
  for (size_t i = 0; i < idx.size(); ++i)
    for (long j = 0; j < cols_; ++j) r.set(long(i), j, at(idx[i], j));
  return r;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
  check_fields(a, b);
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Matrix r(a.field(), a.rows(), a.cols() + b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
    for (long j = 0; j < b.cols(); ++j) r.set(i, a.cols() + j, b.at(i, j));
  }
  return r;
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
  check_fields(a, b);
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack col mismatch");
  Matrix r(a.field(), a.rows() + b.rows(), a.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
  for (long i = 0; i < b.rows(); ++i)
    for (long j = 0; j < b.cols(); ++j) r.set(a.rows() + i, j, b.at(i, j));
  return r;
}

Matrix Matrix::block_diag(const Matrix& a, const Matrix& b) {
  check_fields(a, b);
  Matrix r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) r.set(i, j, a.at(i, j));
  for (long i = 0; i < b.rows(); ++i)
    for (long j = 0; j < b.cols(); ++j) r.set(a.rows() + i, a.cols() + j, b.at(i, j));
  return r;
}

namespace {

// Reduced row echelon form with first-nonzero pivoting; deterministic.
Echelon rref(Matrix m) {
  std::vector<long> pivots;
  long rows = m.rows(), cols = m.cols();
  long prow = 0;
  // work on a mutable copy of the data via set/at
  for (long col = 0; col < cols && prow < rows; ++col) {
    long sel = -1;
    for (long r = prow; r < rows; ++r) {
      if (!m.at(r, col).is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != prow) {
      for (long j = 0; j < cols; ++j) {
        Scalar t = m.at(prow, j);
        m.set(prow, j, m.at(sel, j));
        m.set(sel, j, std::move(t));
      }
    }
    Scalar inv = m.at(prow, col).inverse();
    for (long j = col; j < cols; ++j) m.set(prow, j, m.at(prow, j) * inv);
    for (long r = 0; r < rows; ++r) {
      if (r == prow) continue;
      const Scalar& factor = m.at(r, col);
      if (factor.is_zero()) continue;
      Scalar f = factor;
      for (long j = col; j < cols; ++j) m.set(r, j, m.at(r, j) - f * m.at(prow, j));
    }
    pivots.push_back(col);
    ++prow;
  }
  return {std::move(m), std::move(pivots)};
}

}  // namespace

long Matrix::rank() const { return long(rref(*this).pivots.size()); }

std::vector<long> pivot_columns(const Matrix& A) { return rref(A).pivots; }

Matrix Matrix::kernel_basis() const {
  Echelon e = rref(*this);
  std::vector<bool> is_pivot(cols_, false);
  for (long c : e.pivots) is_pivot[c] = true;
  std::vector<long> free_cols;
  for (long c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(field_, cols_, long(free_cols.size()));
  for (size_t fi = 0; fi < free_cols.size(); ++fi) {
    long fc = free_cols[fi];
    k.set(fc, long(fi), Scalar::one(field_));
    for (size_t pr = 0; pr < e.pivots.size(); ++pr)
      k.set(e.pivots[pr], long(fi), -e.m.at(long(pr), fc));
  }
#ifndef NDEBUG
  assert((*this * k).is_zero());
#endif
  return k;
}

Matrix Matrix::column_space_basis() const {
  Echelon e = rref(*this);
  return select_columns(e.pivots);
}

Matrix Matrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  LinearSolution s = solve_linear_system(*this, identity(field_, rows_));
  if (!s.consistent || s.nullspace.cols() != 0)
    throw std::domain_error("matrix not invertible");
  return s.particular;
}

LinearSolution solve_linear_system(const Matrix& A, const Matrix& B) {
  check_fields(A, B);
  if (A.rows() != B.rows()) throw std::invalid_argument("solve: row count mismatch");
  Echelon e = rref(Matrix::hstack(A, B));
  long n = A.cols();
  LinearSolution out;
  out.nullspace = A.kernel_basis();
  // Inconsistent iff some pivot lands in the B block.
  for (long c : e.pivots)
    if (c >= n) {
      out.consistent = false;
      out.particular = Matrix(A.field(), n, B.cols());
      return out;
    }
  out.consistent = true;
  Matrix x(A.field(), n, B.cols());
  for (size_t pr = 0; pr < e.pivots.size(); ++pr)
    for (long j = 0; j < B.cols(); ++j) x.set(e.pivots[pr], j, e.m.at(long(pr), n + j));
  out.particular = std::move(x);
#ifndef NDEBUG
  assert(A * out.particular == B);
#endif
  return out;
}

long intersection_dim(const Matrix& A, const Matrix& B) {
  check_fields(A, B);
  if (A.rows() != B.rows()) throw std::invalid_argument("intersection_dim: row mismatch");
  long ra = A.rank(), rb = B.rank();
  long rab = Matrix::hstack(A, B).rank();
  return ra + rb - rab;
}

std::string Matrix::to_string() const {
  std::ostringstream out;
  for (long i = 0; i < rows_; ++i) {
    out << "[";
    for (long j = 0; j < cols_; ++j) {
      if (j) out << ", ";
      out << at(i, j).to_string();
    }
    out << "]\n";
  }
  return out.str();
}

}  // namespace hopfolog
