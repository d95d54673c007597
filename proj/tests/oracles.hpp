#pragma once

// Reference computations used only by the tests. They work straight from the
// definitions (inhomogeneous bar complexes, norm formulas) and share nothing
// with the library beyond Smith normal form and lattice primitives.

#include "tate/cohomology.hpp"

namespace oracle {

using namespace tate;

inline std::vector<int> unpack(std::size_t idx, std::size_t n, std::size_t len) {
  std::vector<int> t(len);
  for (std::size_t i = len; i-- > 0;) {
    t[i] = static_cast<int>(idx % n);
    idx /= n;
  }
  return t;
}

inline std::size_t pack(const std::vector<int>& t, std::size_t n) {
  std::size_t idx = 0;
  for (int g : t) idx = idx * n + static_cast<std::size_t>(g);
  return idx;
}

inline std::size_t power(std::size_t n, std::size_t k) {
  std::size_t p = 1;
  while (k--) p *= n;
  return p;
}

// Inhomogeneous d : C^q -> C^{q+1}, C^q = M^{n^q}.
inline IntMatrix bar_cochain_differential(const GModule& m, std::size_t q) {
  const FiniteGroup& g = m.group();
  const std::size_t n = g.order(), k = m.rank();
  IntMatrix d(power(n, q + 1) * k, power(n, q) * k);
  auto add = [&](std::size_t row_tuple, std::size_t col_tuple, const IntMatrix& a, int sign) {
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y) d(row_tuple * k + x, col_tuple * k + y) += sign * a(x, y);
  };
  const IntMatrix id = IntMatrix::identity(k);
  for (std::size_t idx = 0; idx < power(n, q + 1); ++idx) {
    const auto t = unpack(idx, n, q + 1);
    add(idx, pack(std::vector<int>(t.begin() + 1, t.end()), n), m.action(t[0]), 1);
    for (std::size_t i = 0; i < q; ++i) {
      std::vector<int> s;
      for (std::size_t j = 0; j <= q; ++j) {
        if (j == i) {
          s.push_back(g.mul(t[j], t[j + 1]));
          ++j;
        } else {
          s.push_back(t[j]);
        }
      }
      add(idx, pack(s, n), id, i % 2 == 0 ? -1 : 1);
    }
    add(idx, pack(std::vector<int>(t.begin(), t.end() - 1), n), id, q % 2 == 0 ? -1 : 1);
  }
  return d;
}

// Inhomogeneous boundary C_q -> C_{q-1} for M viewed as a right module via g^{-1}.
inline IntMatrix bar_chain_boundary(const GModule& m, std::size_t q) {
  const FiniteGroup& g = m.group();
  const std::size_t n = g.order(), k = m.rank();
  IntMatrix d(power(n, q - 1) * k, power(n, q) * k);
  auto add = [&](std::size_t row_tuple, std::size_t col_tuple, const IntMatrix& a, int sign) {
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y) d(row_tuple * k + x, col_tuple * k + y) += sign * a(x, y);
  };
  const IntMatrix id = IntMatrix::identity(k);
  for (std::size_t idx = 0; idx < power(n, q); ++idx) {
    const auto t = unpack(idx, n, q);
    add(pack(std::vector<int>(t.begin() + 1, t.end()), n), idx, m.action(g.inv(t[0])), 1);
    for (std::size_t i = 0; i + 1 < q; ++i) {
      std::vector<int> s;
      for (std::size_t j = 0; j < q; ++j) {
        if (j == i) {
          s.push_back(g.mul(t[j], t[j + 1]));
          ++j;
        } else {
          s.push_back(t[j]);
        }
      }
      add(pack(s, n), idx, id, i % 2 == 0 ? -1 : 1);
    }
    add(pack(std::vector<int>(t.begin(), t.end() - 1), n), idx, id, q % 2 == 0 ? 1 : -1);
  }
  return d;
}

inline FgAbGroup torsion_of_cokernel(const IntMatrix& m) {
  std::vector<long long> f;
  for (const auto& d : smith_invariants(m))
    if (d > 1) f.push_back(static_cast<long long>(d));
  return FgAbGroup::from_invariants(f);
}

inline FgAbGroup cokernel_of(const IntMatrix& m) {
  return FgAbGroup(m.rows(), m);
}

inline IntMatrix columns_to_matrix(std::size_t rows, const std::vector<IntVector>& cols) {
  IntMatrix out(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) out.set_column(j, cols[j]);
  return out;
}

// sub is a basis (columns) of a saturated sublattice; gens span a sublattice of it.
inline FgAbGroup quotient_in_basis(const IntMatrix& sub, const std::vector<IntVector>& gens) {
  std::vector<IntVector> coords;
  for (const auto& v : gens) {
    auto c = solve_integer(sub, v);
    if (!c) throw std::logic_error("oracle: generator outside the sublattice");
    coords.push_back(*c);
  }
  return cokernel_of(columns_to_matrix(sub.cols(), coords));
}

inline IntMatrix norm_matrix(const GModule& m) {
  IntMatrix nm(m.rank(), m.rank());
  for (std::size_t g = 0; g < m.group().order(); ++g) nm = nm + m.action(int(g));
  return nm;
}

// For a module whose underlying group is free.
inline FgAbGroup tate(const GModule& m, int r) {
  const std::size_t n = m.group().order(), k = m.rank();
  if (!m.underlying().relations().is_zero() && m.underlying().relations().cols() > 0)
    throw std::logic_error("oracle: module is not Z-free");
  if (r >= 1) return torsion_of_cokernel(bar_cochain_differential(m, std::size_t(r - 1)));
  if (r <= -2) return torsion_of_cokernel(bar_chain_boundary(m, std::size_t(-r)));
  const IntMatrix nm = norm_matrix(m);
  if (r == 0) {
    IntMatrix stacked(n * k, k);
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y)
          stacked(g * k + x, y) = m.action(int(g))(x, y) - (x == y ? 1 : 0);
    const IntMatrix inv = kernel_basis(stacked);
    std::vector<IntVector> norms;
    for (std::size_t j = 0; j < k; ++j) norms.push_back(nm.column(j));
    return quotient_in_basis(inv, norms);
  }
  const IntMatrix ker = kernel_basis(nm);
  std::vector<IntVector> aug;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t j = 0; j < k; ++j) {
      IntVector v = m.action(int(g)).column(j);
      v[j] -= 1;
      aug.push_back(v);
    }
  return quotient_in_basis(ker, aug);
}

// Augmentation ideal tensored with M, built from scratch: basis (h - 1) (x) e_i
// for h != 1, with g.(h - 1) = (gh - 1) - (g - 1).
inline GModule augmentation_shift(const GModule& m) {
  const FiniteGroup& g = m.group();
  const std::size_t n = g.order(), k = m.rank();
  std::vector<int> others;
  for (std::size_t h = 0; h < n; ++h)
    if (int(h) != g.identity()) others.push_back(int(h));
  auto slot = [&](int h) { return std::size_t(std::find(others.begin(), others.end(), h) - others.begin()); };
  std::vector<IntMatrix> act;
  for (std::size_t x = 0; x < n; ++x) {
    IntMatrix a(others.size() * k, others.size() * k);
    for (std::size_t c = 0; c < others.size(); ++c) {
      const int gh = g.mul(int(x), others[c]);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
          const Integer v = m.action(int(x))(i, j);
          if (v == 0) continue;
          if (gh != g.identity()) a(slot(gh) * k + i, c * k + j) += v;
          if (int(x) != g.identity()) a(slot(int(x)) * k + i, c * k + j) -= v;
        }
    }
    act.push_back(a);
  }
  return GModule(g, FgAbGroup::free(others.size() * k), act);
}

}  // namespace oracle
