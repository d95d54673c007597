#pragma once

#include "tate/matrix.hpp"

#include <optional>

namespace tate {

/// Result of a Smith normal form computation: left * input * right == diagonal.
struct SmithForm {
  IntMatrix left;          ///< U, unimodular, rows x rows
  IntMatrix left_inverse;  ///< U^{-1}
  IntMatrix diagonal;      ///< D, same shape as the input
  IntMatrix right;         ///< V, unimodular, cols x cols

  /// Diagonal entries d_0 | d_1 | ... (length min(rows, cols)), all >= 0.
  IntVector invariants() const {
    const std::size_t k = std::min(diagonal.rows(), diagonal.cols());
    IntVector d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = diagonal(i, i);
    return d;
  }
};

struct SmithOptions {
  bool track_left = true;
  bool track_right = true;
};

namespace detail {

inline bool find_min_pivot(const IntMatrix& d, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < d.rows(); ++i)
    for (std::size_t j = t; j < d.cols(); ++j) {
      const Integer& x = d(i, j);
      if (x == 0) continue;
      Integer ax = abs(x);
      if (!found || ax < best) {
        best = std::move(ax);
        pi = i;
        pj = j;
        found = true;
        if (best == 1) return true;
      }
    }
  return found;
}

}  // namespace detail

/// Smith normal form by unimodular row and column operations. The pivot is
/// always the entry of smallest absolute value in the active block; a pivot
/// that fails to divide the rest of the block absorbs the offending row.
inline SmithForm smith_normal_form(const IntMatrix& m, SmithOptions opts = {}) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithForm f;
  f.diagonal = m;
  if (opts.track_left) {
    f.left = IntMatrix::identity(rows);
    f.left_inverse = IntMatrix::identity(rows);
  }
  if (opts.track_right) f.right = IntMatrix::identity(cols);
  IntMatrix& d = f.diagonal;

  auto row_swap = [&](std::size_t a, std::size_t b) {
    d.swap_rows(a, b);
    if (opts.track_left) {
      f.left.swap_rows(a, b);
      f.left_inverse.swap_cols(a, b);
    }
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    d.swap_cols(a, b);
    if (opts.track_right) f.right.swap_cols(a, b);
  };
  // row[dst] += q * row[src]
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    d.add_row(dst, src, q);
    if (opts.track_left) {
      f.left.add_row(dst, src, q);
      f.left_inverse.add_col(src, dst, -q);
    }
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& q) {
    d.add_col(dst, src, q);
    if (opts.track_right) f.right.add_col(dst, src, q);
  };

  const std::size_t k = std::min(rows, cols);
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t pi = 0, pj = 0;
    if (!detail::find_min_pivot(d, t, pi, pj)) break;
    row_swap(t, pi);
    col_swap(t, pj);
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        Integer q = d(i, t) / d(t, t);
        row_add(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        Integer q = d(t, j) / d(t, t);
        col_add(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Move the smallest remainder in row t / column t onto the pivot.
        Integer best = abs(d(t, t));
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < rows; ++i)
          if (d(i, t) != 0 && abs(d(i, t)) < best) {
            best = abs(d(i, t));
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < cols; ++j)
          if (d(t, j) != 0 && abs(d(t, j)) < best) {
            best = abs(d(t, j));
            bi = t;
            bj = j;
          }
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      // Row and column are clear; enforce divisibility of the remaining block.
      bool divides = true;
      const Integer& p = d(t, t);
      if (abs(p) != 1) {
        for (std::size_t i = t + 1; i < rows && divides; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (d(i, j) != 0 && d(i, j) % p != 0) {
              row_add(t, i, 1);
              divides = false;
              break;
            }
      }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      if (opts.track_left) {
        f.left.negate_row(t);
        f.left_inverse.negate_col(t);
      }
    }
  }
  return f;
}

/// Invariant diagonal only (no transforms).
inline IntVector smith_invariants(const IntMatrix& m) {
  return smith_normal_form(m, {.track_left = false, .track_right = false}).invariants();
}

/// A sublattice of Z^n stored as a row-echelon basis: each basis vector has a
/// positive pivot, pivots strictly increase, and every vector is zero before
/// its pivot. `normalize()` reduces entries above pivots (Hermite form).
class Lattice {
 public:
  explicit Lattice(std::size_t ambient_dim = 0) : dim_(ambient_dim) {}

  static Lattice span(std::size_t dim, const std::vector<IntVector>& gens) {
    Lattice l(dim);
    for (const auto& g : gens) l.insert(g);
    l.normalize();
    return l;
  }

  /// Span of the columns of m.
  static Lattice column_span(const IntMatrix& m) {
    Lattice l(m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) l.insert(m.column(j));
    l.normalize();
    return l;
  }

  std::size_t ambient_dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return basis_.size(); }
  const std::vector<IntVector>& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Basis vectors as the columns of a dim x rank matrix.
  IntMatrix basis_matrix() const { return IntMatrix::from_columns(dim_, basis_); }

  /// Adds v to the generating set; returns true if the lattice grew.
  bool insert(IntVector v) {
    assert(v.size() == dim_);
    bool grew = false;
    std::size_t k = 0;
    for (;;) {
      std::size_t c = 0;
      while (c < dim_ && v[c] == 0) ++c;
      if (c == dim_) return grew;
      while (k < pivots_.size() && pivots_[k] < c) ++k;
      if (k == pivots_.size() || pivots_[k] != c) {
        if (v[c] < 0)
          for (auto& x : v) x = -x;
        basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(k), std::move(v));
        pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(k), c);
        return true;
      }
      IntVector& b = basis_[k];
      const Integer bp = b[c];
      const Integer vp = v[c];
      if (vp % bp == 0) {
        const Integer q = vp / bp;
        for (std::size_t j = c; j < dim_; ++j)
          if (b[j] != 0) v[j] -= q * b[j];
        continue;
      }
      // Replace (b, v) by a unimodular combination putting gcd on the pivot.
      Integer x, y;
      const Integer g = extended_gcd(bp, vp, x, y);
      const Integer bq = bp / g;
      const Integer vq = vp / g;
      for (std::size_t j = c; j < dim_; ++j) {
        Integer nb = x * b[j] + y * v[j];
        Integer nv = bq * v[j] - vq * b[j];
        b[j] = std::move(nb);
        v[j] = std::move(nv);
      }
      if (b[c] < 0)
        for (auto& e : b) e = -e;
      grew = true;
    }
  }

  /// Reduces each entry above a pivot into [0, pivot).
  void normalize() {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const std::size_t p = pivots_[k];
      const Integer& piv = basis_[k][p];
      for (std::size_t r = 0; r < k; ++r) {
        Integer q = floor_div(basis_[r][p], piv);
        if (q == 0) continue;
        for (std::size_t j = p; j < dim_; ++j)
          if (basis_[k][j] != 0) basis_[r][j] -= q * basis_[k][j];
      }
    }
  }

  /// Coordinates of v in the basis, or nullopt if v is not in the lattice.
  std::optional<IntVector> coordinates(IntVector v) const {
    assert(v.size() == dim_);
    IntVector coords(basis_.size());
    std::size_t k = 0;
    for (std::size_t c = 0; c < dim_; ++c) {
      if (v[c] == 0) continue;
      while (k < pivots_.size() && pivots_[k] < c) ++k;
      if (k == pivots_.size() || pivots_[k] != c) return std::nullopt;
      const IntVector& b = basis_[k];
      if (v[c] % b[c] != 0) return std::nullopt;
      const Integer q = v[c] / b[c];
      coords[k] = q;
      for (std::size_t j = c; j < dim_; ++j)
        if (b[j] != 0) v[j] -= q * b[j];
    }
    return coords;
  }

  bool contains(const IntVector& v) const { return coordinates(v).has_value(); }

  bool contains(const Lattice& other) const {
    for (const auto& b : other.basis_)
      if (!contains(b)) return false;
    return true;
  }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.dim_ == b.dim_ && a.rank() == b.rank() && a.contains(b) && b.contains(a);
  }

  static Integer extended_gcd(const Integer& a, const Integer& b, Integer& x, Integer& y) {
    Integer old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      Integer q = old_r / r;
      Integer tmp = old_r - q * r;
      old_r = std::move(r);
      r = std::move(tmp);
      tmp = old_s - q * s;
      old_s = std::move(s);
      s = std::move(tmp);
      tmp = old_t - q * t;
      old_t = std::move(t);
      t = std::move(tmp);
    }
    if (old_r < 0) {
      old_r = -old_r;
      old_s = -old_s;
      old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
  }

 private:
  std::size_t dim_;
  std::vector<IntVector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Basis (as columns) of {x : m x = 0}, in Hermite form.
inline IntMatrix kernel_basis(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t n = m.cols();
  Lattice aug(rows + n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVector v(rows + n);
    for (std::size_t i = 0; i < rows; ++i) v[i] = m(i, j);
    v[rows + j] = 1;
    aug.insert(std::move(v));
  }
  std::vector<IntVector> ker;
  for (std::size_t k = 0; k < aug.rank(); ++k) {
    if (aug.pivots()[k] < rows) continue;
    const IntVector& b = aug.basis()[k];
    ker.emplace_back(b.begin() + static_cast<std::ptrdiff_t>(rows), b.end());
  }
  return Lattice::span(n, ker).basis_matrix();
}

/// Some integer solution of a x = b, or nullopt when none exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  assert(b.size() == a.rows());
  const SmithForm f = smith_normal_form(a);
  const IntVector ub = f.left * b;
  IntVector y(a.cols());
  const std::size_t k = std::min(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const Integer di = i < k ? f.diagonal(i, i) : Integer(0);
    if (di == 0) {
      if (ub[i] != 0) return std::nullopt;
      continue;
    }
    if (ub[i] % di != 0) return std::nullopt;
    y[i] = ub[i] / di;
  }
  return f.right * y;
}

}  // namespace tate
