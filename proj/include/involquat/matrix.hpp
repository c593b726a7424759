#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "involquat/error.hpp"
#include "involquat/field.hpp"

namespace involquat {

/// Dense rows x cols matrix over one field. Square matrices are the elements
/// of the ambient algebra M_n(F); rectangular ones appear as linear systems
/// and as bases of column spaces.
template <FieldScalar K>
class Matrix {
 public:
  using scalar_type = K;
  using field_type = FieldOf<K>;

  Matrix(const field_type& field, std::size_t rows, std::size_t cols)
      : field_(&field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix zero(const field_type& field, std::size_t n) { return Matrix(field, n, n); }

  static Matrix identity(const field_type& field, std::size_t n) { return scalar(field.one(), n); }

  static Matrix scalar(const K& a, std::size_t n) {
    Matrix m(a.field(), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = a;
    return m;
  }

  /// Matrix unit E_ij (zero-based).
  static Matrix unit(const field_type& field, std::size_t n, std::size_t i, std::size_t j) {
    Matrix m(field, n, n);
    m(i, j) = field.one();
    return m;
  }

  /// Integer entries reduced into the field.
  static Matrix from_ints(const field_type& field, std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<long long>> v;
    for (const auto& r : rows) v.emplace_back(r);
    return from_ints(field, v);
  }

  static Matrix from_ints(const field_type& field, const std::vector<std::vector<long long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    Matrix m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
      require(rows[i].size() == c, ErrorCode::SizeMismatch, "ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }

  /// Column matrix from a vector of scalars.
  static Matrix column(const field_type& field, const std::vector<K>& v) {
    Matrix m(field, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length `height`).
  static Matrix from_columns(const field_type& field, std::size_t height, const std::vector<std::vector<K>>& columns) {
    Matrix m(field, height, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      require(columns[j].size() == height, ErrorCode::SizeMismatch, "column length");
      for (std::size_t i = 0; i < height; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  const field_type& field() const { return *field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  /// Side length of a square matrix.
  std::size_t n() const { return rows_; }

  K& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const K& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<K>& entries() const { return data_; }

  std::vector<K> column_vector(std::size_t j) const {
    std::vector<K> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  std::vector<K> row_vector(std::size_t i) const {
    return std::vector<K>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix c(a);
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] += b.data_[k];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.check_same_shape(b);
    Matrix c(a);
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] -= b.data_[k];
    return c;
  }

  Matrix operator-() const {
    Matrix c(*this);
    for (auto& x : c.data_) x = -x;
    return c;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, ErrorCode::SizeMismatch, "product shape");
    Matrix c(*a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const K& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator*(const K& s, const Matrix& a) {
    Matrix c(a);
    for (auto& x : c.data_) x = s * x;
    return c;
  }

  /// a + s*1 for square a.
  friend Matrix operator+(const Matrix& a, const K& s) { return a + scalar(s, a.rows_); }
  friend Matrix operator+(const K& s, const Matrix& a) { return scalar(s, a.rows_) + a; }
  friend Matrix operator-(const Matrix& a, const K& s) { return a - scalar(s, a.rows_); }
  friend Matrix operator-(const K& s, const Matrix& a) { return scalar(s, a.rows_) - a; }

  Matrix& operator+=(const Matrix& b) { return *this = *this + b; }
  Matrix& operator-=(const Matrix& b) { return *this = *this - b; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix transpose() const {
    Matrix t(*field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Entrywise unitary conjugation.
  Matrix conj() const {
    Matrix c(*this);
    for (auto& x : c.data_) x = x.conj();
    return c;
  }

  Matrix conj_transpose() const { return conj().transpose(); }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  /// The scalar s when this equals s*1, nullopt otherwise.
  std::optional<K> as_scalar() const {
    if (!is_square() || rows_ == 0) return std::nullopt;
    const K s = (*this)(0, 0);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!((*this)(i, j) == (i == j ? s : field_->zero()))) return std::nullopt;
    return s;
  }

  bool is_identity() const {
    auto s = as_scalar();
    return s && *s == field_->one();
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
    Matrix b(*field_, nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
      for (std::size_t j = 0; j < ncols; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  /// Horizontal concatenation.
  friend Matrix hcat(const Matrix& a, const Matrix& b) {
    require(a.rows_ == b.rows_, ErrorCode::SizeMismatch, "hcat");
    Matrix c(*a.field_, a.rows_, a.cols_ + b.cols_);
    c.set_block(0, 0, a);
    c.set_block(0, a.cols_, b);
    return c;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      s += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) s += ", ";
        s += (*this)(i, j).to_string();
      }
      s += "]";
    }
    return s + "]";
  }

 private:
  void check_same_shape(const Matrix& b) const {
    require(rows_ == b.rows_ && cols_ == b.cols_, ErrorCode::SizeMismatch, "shape");
  }

  const field_type* field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<K> data_;
};

/// Block diagonal matrix diag(blocks...).
template <FieldScalar K>
Matrix<K> block_diagonal(const FieldOf<K>& field, const std::vector<Matrix<K>>& blocks) {
  std::size_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix<K> m(field, n, n);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    m.set_block(offset, offset, b);
    offset += b.rows();
  }
  return m;
}

}  // namespace involquat
