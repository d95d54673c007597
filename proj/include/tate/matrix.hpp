#pragma once

#include "tate/error.hpp"
#include "tate/integer.hpp"

#include <algorithm>
#include <cassert>
#include <initializer_list>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace tate {

/// Dense integer matrix, row-major. Vectors are columns throughout the
/// library: a map Z^n -> Z^m is an m x n matrix acting on the left.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("IntMatrix: ragged initializer");
      for (long long x : row) data_.emplace_back(x);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(std::span<const Integer> d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  /// Columns given as vectors of equal length `rows`.
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols) {
    IntMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      assert(cols[j].size() == rows);
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw InputError("matrix rows have unequal lengths");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  void set_column(std::size_t j, const IntVector& v) {
    assert(v.size() == rows_);
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix columns(std::size_t first, std::size_t count) const {
    IntMatrix m(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
    return m;
  }

  IntMatrix row_block(std::size_t first, std::size_t count) const {
    IntMatrix m(count, cols_);
    std::copy(data_.begin() + first * cols_, data_.begin() + (first + count) * cols_, m.data_.begin());
    return m;
  }

  IntVector operator*(const IntVector& v) const {
    assert(v.size() == cols_);
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Integer acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) {
        const Integer& a = (*this)(i, j);
        if (a != 0 && v[j] != 0) acc += a * v[j];
      }
      out[i] = std::move(acc);
    }
    return out;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Integer& y = b(k, j);
          if (y != 0) c(i, j) += x * y;
        }
      }
    return c;
  }

  friend IntMatrix operator+(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  friend IntMatrix operator-(IntMatrix a, const IntMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: shape mismatch");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  friend IntMatrix operator*(const Integer& s, IntMatrix a) {
    for (auto& x : a.data_) x *= s;
    return a;
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  // Elementary operations used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += q * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(src, j) != 0) (*this)(dst, j) += q * (*this)(src, j);
  }
  /// col[dst] += q * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, src) != 0) (*this)(i, dst) += q * (*this)(i, src);
  }
  void negate_row(std::size_t r) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
  }
  void negate_col(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// [a | b]
inline IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hconcat: row mismatch");
  IntMatrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

inline IntMatrix vconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vconcat: column mismatch");
  IntMatrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

inline IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

/// `copies` copies of `a` along the diagonal.
inline IntMatrix block_diagonal_power(const IntMatrix& a, std::size_t copies) {
  IntMatrix m(a.rows() * copies, a.cols() * copies);
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) m(c * a.rows() + i, c * a.cols() + j) = a(i, j);
  return m;
}

/// Kronecker product; index (i, k) of the result corresponds to i * b.rows() + k.
inline IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Integer& x = a(i, j);
      if (x == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          if (b(k, l) != 0) m(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
    }
  return m;
}

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m(i, j);
    os << ']';
  }
  return os << ']';
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntMatrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

}  // namespace tate
