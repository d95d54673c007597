#pragma once

#include "tate/resolution.hpp"

#include <functional>

namespace tate {

/// Supported range of Tate degrees, plus the group-order size guard.
struct DegreeWindow {
  int lo = -3;
  int hi = 3;

  bool contains(int r) const noexcept { return lo <= r && r <= hi; }
};

inline constexpr int kMaxSupportedDegree = 8;

struct TateOptions {
  DegreeWindow window{};
  std::size_t max_group_order = kDefaultMaxGroupOrder;
};

inline void check_degree(int r, const TateOptions& opts) {
  if (!opts.window.contains(r))
    throw UnsupportedDegreeError("degree " + std::to_string(r) + " outside the window [" +
                                 std::to_string(opts.window.lo) + ", " + std::to_string(opts.window.hi) + "]");
  if (r > kMaxSupportedDegree || r < -kMaxSupportedDegree)
    throw UnsupportedDegreeError("degree " + std::to_string(r) + " exceeds the hard limit " +
                                 std::to_string(kMaxSupportedDegree));
}

inline void check_group_size(const FiniteGroup& g, const TateOptions& opts) {
  if (g.order() > opts.max_group_order)
    throw SizeGuardError("group of order " + std::to_string(g.order()) + " exceeds the size guard " +
                         std::to_string(opts.max_group_order));
}

/// L / S for lattices S <= L <= Z^n, with maps between ambient vectors and
/// canonical coordinates of the quotient.
class Subquotient {
 public:
  Subquotient(Lattice l, const IntMatrix& extra) : lattice_(std::move(l)), group_(subquotient(lattice_, extra)) {}

  const FgAbGroup& group() const noexcept { return group_; }
  const Lattice& lattice() const noexcept { return lattice_; }

  /// Canonical coordinates of the class of an ambient vector lying in L.
  IntVector class_of(const IntVector& x) const {
    auto c = lattice_.coordinates(x);
    if (!c) throw InternalError("class_of: vector is not a cycle");
    return group_.to_canonical(*c);
  }

  /// An ambient vector representing canonical coordinates c.
  IntVector representative(const IntVector& c) const {
    const IntVector coords = group_.from_canonical(c);
    IntVector x(lattice_.ambient_dim());
    for (std::size_t k = 0; k < coords.size(); ++k) {
      if (coords[k] == 0) continue;
      const IntVector& b = lattice_.basis()[k];
      for (std::size_t i = 0; i < x.size(); ++i)
        if (b[i] != 0) x[i] += coords[k] * b[i];
    }
    return x;
  }

 private:
  Lattice lattice_;
  FgAbGroup group_;
};

/// H = ker(out) / (relations of the middle term + image of incoming).
inline Subquotient homology_at(const AbHom& out, const IntMatrix& incoming) {
  return Subquotient(preimage_of_zero(out), hconcat(out.source().relations(), incoming));
}

/// Cochains Hom_G(P_r, M) = M^{rank r}; index j * |gens M| + i.
inline FgAbGroup cochain_group(const FreeResolution& p, const GModule& m, std::size_t r) {
  return FgAbGroup(m.rank() * p.rank(r), block_diagonal_power(m.underlying().relations(), p.rank(r)));
}

/// d^r : Hom_G(P_r, M) -> Hom_G(P_{r+1}, M), (d f)(e_j) = f(d e_j).
inline IntMatrix cochain_differential(const FreeResolution& p, const GModule& m, std::size_t r) {
  const std::size_t n = p.group().order();
  const std::size_t k = m.rank();
  IntMatrix d(k * p.rank(r + 1), k * p.rank(r));
  for (std::size_t j = 0; j < p.rank(r + 1); ++j) {
    const IntVector& v = p.boundary_of_generator(r + 1, j);
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
      if (v[idx] == 0) continue;
      const std::size_t i = idx / n;
      const IntMatrix& a = m.action(int(idx % n));
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y)
          if (a(x, y) != 0) d(j * k + x, i * k + y) += v[idx] * a(x, y);
    }
  }
  return d;
}

/// Chains P_r (x)_G M = M^{rank r}; g e_i (x) m = e_i (x) g^{-1} m.
inline IntMatrix chain_differential(const FreeResolution& p, const GModule& m, std::size_t r) {
  const std::size_t n = p.group().order();
  const std::size_t k = m.rank();
  const FiniteGroup& g = p.group();
  IntMatrix d(k * p.rank(r - 1), k * p.rank(r));
  for (std::size_t j = 0; j < p.rank(r); ++j) {
    const IntVector& v = p.boundary_of_generator(r, j);
    for (std::size_t idx = 0; idx < v.size(); ++idx) {
      if (v[idx] == 0) continue;
      const std::size_t i = idx / n;
      const IntMatrix& a = m.action(g.inv(int(idx % n)));
      for (std::size_t x = 0; x < k; ++x)
        for (std::size_t y = 0; y < k; ++y)
          if (a(x, y) != 0) d(i * k + x, j * k + y) += v[idx] * a(x, y);
    }
  }
  return d;
}

/// A Tate cohomology group together with the cycles that realize it.
///
/// For r >= 1 the ambient space is Hom_G(P_r, M); for r = 0 it is M (classes
/// of invariants modulo norms); for r = -1 it is M (norm kernel modulo the
/// augmentation submodule); for r <= -2 it is P_{-r-1} (x)_G M.
struct TateGroup {
  int degree = 0;
  GModule module;
  std::shared_ptr<const FreeResolution> resolution;
  Subquotient cycles;

  const FgAbGroup& group() const noexcept { return cycles.group(); }
};

inline TateGroup tate_group(const GModule& m, int r, const TateOptions& opts = {}) {
  check_degree(r, opts);
  check_group_size(m.group(), opts);
  const std::size_t need = r >= 1 ? static_cast<std::size_t>(r + 1) : static_cast<std::size_t>(r <= -2 ? -r : 1);
  auto p = resolution_for(m.group(), need);
  if (r == 0) {
    const AbHom diff = stacked_differences(m);
    return {r, m, p, homology_at(diff, norm_endomorphism(m).matrix())};
  }
  if (r == -1) {
    return {r, m, p, homology_at(norm_endomorphism(m), augmentation_span(m))};
  }
  if (r >= 1) {
    const std::size_t d = static_cast<std::size_t>(r);
    AbHom out(cochain_group(*p, m, d), cochain_group(*p, m, d + 1), cochain_differential(*p, m, d));
    return {r, m, p, homology_at(out, cochain_differential(*p, m, d - 1))};
  }
  const std::size_t d = static_cast<std::size_t>(-r - 1);  // homology degree >= 1
  AbHom out(cochain_group(*p, m, d), cochain_group(*p, m, d - 1), chain_differential(*p, m, d));
  return {r, m, p, homology_at(out, chain_differential(*p, m, d + 1))};
}

/// Tate cohomology group in canonical form.
inline FgAbGroup tate_cohomology(const GModule& m, int r, const TateOptions& opts = {}) {
  return tate_group(m, r, opts).group();
}

/// An inhomogeneous bar cochain: values[t] is the value on the tuple with
/// index t = sum g_i |G|^{r-i}, written on the generators of the module.
struct Cochain {
  int degree = 0;
  IntMatrix values;  ///< |G|^degree rows, one column per module generator

  static std::size_t tuple_count(std::size_t order, int degree) {
    std::size_t c = 1;
    for (int i = 0; i < degree; ++i) c *= order;
    return c;
  }

  static std::size_t index(std::size_t order, std::span<const int> tuple) {
    std::size_t t = 0;
    for (int g : tuple) t = t * order + static_cast<std::size_t>(g);
    return t;
  }

  IntVector value(std::size_t order, std::span<const int> tuple) const { return values.row(index(order, tuple)); }
};

/// Inhomogeneous coboundary of a bar cochain.
inline Cochain coboundary(const GModule& m, const Cochain& f) {
  const FiniteGroup& g = m.group();
  const std::size_t n = g.order();
  const int r = f.degree;
  const std::size_t count = Cochain::tuple_count(n, r + 1);
  Cochain out{r + 1, IntMatrix(count, m.rank())};
  std::vector<int> t(static_cast<std::size_t>(r + 1)), s(static_cast<std::size_t>(r));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rem = idx;
    for (int i = r; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = static_cast<int>(rem % n);
      rem /= n;
    }
    IntVector acc(m.rank());
    // g_1 . f(g_2, ..., g_{r+1})
    for (int i = 0; i < r; ++i) s[i] = t[i + 1];
    acc = m.action(t[0]) * f.value(n, s);
    for (int i = 0; i < r; ++i) {
      for (int k = 0, w = 0; k <= r; ++k) {
        if (k == i) {
          s[w++] = g.mul(t[k], t[k + 1]);
          ++k;
        } else {
          s[w++] = t[k];
        }
      }
      const IntVector v = f.value(n, s);
      for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += (i % 2 == 0 ? -v[c] : v[c]);
    }
    for (int i = 0; i < r; ++i) s[i] = t[i];
    const IntVector v = f.value(n, s);
    for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += ((r + 1) % 2 == 0 ? v[c] : -v[c]);
    for (std::size_t c = 0; c < acc.size(); ++c) out.values(idx, c) = acc[c];
  }
  return out;
}

/// A 2-cochain with values in Hom(X, A), stored as one |gens A| x |gens X|
/// matrix per pair (g, h) at index g * |G| + h.
struct PairingCocycle {
  std::vector<IntMatrix> values;

  const IntMatrix& at(std::size_t order, int g, int h) const { return values[static_cast<std::size_t>(g) * order + h]; }

  /// id_E (x) alpha for a module E placed on the left of X and A.
  PairingCocycle tensor_left(std::size_t rank_e) const {
    PairingCocycle out;
    out.values.reserve(values.size());
    const IntMatrix id = IntMatrix::identity(rank_e);
    for (const auto& v : values) out.values.push_back(kronecker(id, v));
    return out;
  }
};

/// Builds the pairing cocycle from a cochain valued in the Hom(X, A) module.
inline PairingCocycle pairing_from_cochain(const HomModule& hm, const Cochain& alpha) {
  PairingCocycle p;
  p.values.reserve(alpha.values.rows());
  for (std::size_t t = 0; t < alpha.values.rows(); ++t) p.values.push_back(hm.hom.to_matrix(alpha.values.row(t)));
  return p;
}

/// Cochain restricted to a subgroup (tuples of subgroup elements).
inline Cochain restrict_cochain(const Cochain& c, std::size_t parent_order, const std::vector<int>& embedding) {
  const std::size_t n = embedding.size();
  const std::size_t count = Cochain::tuple_count(n, c.degree);
  Cochain out{c.degree, IntMatrix(count, c.values.cols())};
  std::vector<int> t(static_cast<std::size_t>(c.degree));
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rem = idx;
    for (int i = c.degree - 1; i >= 0; --i) {
      t[static_cast<std::size_t>(i)] = embedding[rem % n];
      rem /= n;
    }
    const std::size_t src = Cochain::index(parent_order, t);
    for (std::size_t col = 0; col < c.values.cols(); ++col) out.values(idx, col) = c.values(src, col);
  }
  return out;
}

/// Verifies the 2-cocycle identity for a Hom(X, A)-valued cochain; throws
/// InputError naming the first failing triple.
inline void verify_2cocycle(const HomModule& hm, const Cochain& alpha) {
  if (alpha.degree != 2) throw InputError("cup product class must have degree 2");
  const std::size_t n = hm.module.group().order();
  if (alpha.values.rows() != n * n || alpha.values.cols() != hm.module.rank())
    throw InputError("2-cochain has wrong shape");
  const Cochain d = coboundary(hm.module, alpha);
  for (std::size_t idx = 0; idx < d.values.rows(); ++idx)
    if (!hm.module.underlying().is_zero_element(d.values.row(idx))) {
      const std::size_t g = idx / (n * n), h = (idx / n) % n, k = idx % n;
      throw InputError("alpha is not a 2-cocycle: identity fails at (" + std::to_string(g) + "," +
                       std::to_string(h) + "," + std::to_string(k) + ")");
    }
}

/// Pulls back an inhomogeneous bar r-cochain to Hom_G(P_r, A); `value`
/// returns the cochain on a tuple of length r.
inline IntVector pull_back_to_resolution(const FreeResolution& p, const GModule& a, std::size_t r,
                                         const std::function<IntVector(std::span<const int>)>& value) {
  const FiniteGroup& g = p.group();
  const std::size_t k = a.rank();
  IntVector out(k * p.rank(r));
  std::vector<int> inh(r);
  for (std::size_t j = 0; j < p.rank(r); ++j) {
    for (const auto& [tuple, coeff] : p.to_bar(r, j)) {
      // Homogeneous F(x_0..x_r) = x_0 . f(x_0^{-1} x_1, ..., x_{r-1}^{-1} x_r).
      for (std::size_t i = 0; i < r; ++i) inh[i] = g.mul(g.inv(tuple[i]), tuple[i + 1]);
      const IntVector v = a.action(tuple[0]) * value(inh);
      for (std::size_t c = 0; c < k; ++c)
        if (v[c] != 0) out[j * k + c] += coeff * v[c];
    }
  }
  return out;
}

/// Cup product with alpha as a homomorphism between canonical forms.
struct CupMap {
  int degree = 0;
  int evaluated_degree = 0;  ///< degree after dimension shifting (0 or 1)
  FgAbGroup source;          ///< H^r(G, X) in canonical form
  FgAbGroup target;          ///< H^{r+2}(G, A) in canonical form
  AbHom map;                 ///< canonical coordinates on both sides
};

namespace detail {

inline FgAbGroup canonical_copy(const FgAbGroup& g) {
  IntMatrix rel(g.canonical_rank(), g.invariant_factors().size());
  for (std::size_t i = 0; i < g.invariant_factors().size(); ++i) rel(i, i) = g.invariant_factors()[i];
  return FgAbGroup(g.canonical_rank(), std::move(rel));
}

inline void check_pairing_shape(const GModule& x, const GModule& a, const PairingCocycle& alpha) {
  const std::size_t n = x.group().order();
  if (alpha.values.size() != n * n) throw InputError("pairing cocycle has the wrong number of values");
  for (const auto& v : alpha.values)
    if (v.rows() != a.rank() || v.cols() != x.rank()) throw InputError("pairing cocycle value has wrong shape");
}

/// Degree 0 -> 2 and degree 1 -> 3 cup products, evaluated on cocycles.
inline CupMap cup_low_degree(const GModule& x, const GModule& a, const PairingCocycle& alpha, int r,
                             const TateOptions& opts) {
  TateOptions wide = opts;
  wide.window = {-kMaxSupportedDegree, kMaxSupportedDegree};
  const TateGroup src = tate_group(x, r, wide);
  const TateGroup tgt = tate_group(a, r + 2, wide);
  const FiniteGroup& g = x.group();
  const std::size_t n = g.order();
  const FreeResolution& p = *tgt.resolution;
  const FgAbGroup& sg = src.group();
  IntMatrix mat(tgt.group().canonical_rank(), sg.canonical_rank());
  for (std::size_t c = 0; c < sg.canonical_rank(); ++c) {
    IntVector unit(sg.canonical_rank());
    unit[c] = 1;
    const IntVector rep = src.cycles.representative(unit);
    IntVector pulled;
    if (r == 0) {
      pulled = pull_back_to_resolution(p, a, 2, [&](std::span<const int> t) {
        return alpha.at(n, t[0], t[1]) * (x.action(g.mul(t[0], t[1])) * rep);
      });
    } else {
      // Bar 1-cocycle f(h) = f_P(y_h) with d y_h = h - 1.
      const FreeResolution& ps = *src.resolution;
      const std::size_t k = x.rank();
      std::vector<IntVector> bar1(n);
      for (std::size_t h = 0; h < n; ++h) {
        const IntVector& y = ps.from_bar_degree1(int(h));
        IntVector acc(k);
        for (std::size_t idx = 0; idx < y.size(); ++idx) {
          if (y[idx] == 0) continue;
          const std::size_t i = idx / n;
          IntVector fe(rep.begin() + static_cast<std::ptrdiff_t>(i * k),
                       rep.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
          const IntVector v = x.action(int(idx % n)) * fe;
          for (std::size_t e = 0; e < k; ++e) acc[e] += y[idx] * v[e];
        }
        bar1[h] = std::move(acc);
      }
      pulled = pull_back_to_resolution(p, a, 3, [&](std::span<const int> t) {
        return alpha.at(n, t[0], t[1]) * (x.action(g.mul(t[0], t[1])) * bar1[t[2]]);
      });
    }
    mat.set_column(c, tgt.cycles.class_of(pulled));
  }
  FgAbGroup s = canonical_copy(sg);
  FgAbGroup t = canonical_copy(tgt.group());
  return {r, r, sg, tgt.group(), AbHom(s, t, std::move(mat))};
}

}  // namespace detail

/// Cup product with a 2-cocycle alpha in Hom(X, A): H^r(G, X) -> H^{r+2}(G, A).
///
/// Degrees 0 and 1 are evaluated with the cocycle formula. Other degrees are
/// moved there by dimension shifting along I_G (x) - (r < 0) or J_G (x) -
/// (r > 1), with alpha replaced by id (x) alpha; canonical generators of the
/// shifted groups are transported along the connecting isomorphisms.
inline CupMap cup_with_2cocycle(const GModule& x, const GModule& a, const PairingCocycle& alpha, int r,
                                const TateOptions& opts = {}, std::size_t max_shifted_rank = 4096) {
  check_degree(r, opts);
  check_group_size(x.group(), opts);
  if (!(x.group() == a.group())) throw std::invalid_argument("cup product of modules over different groups");
  detail::check_pairing_shape(x, a, alpha);
  GModule xs = x, as = a;
  PairingCocycle al = alpha;
  const int target_degree = r < 0 ? 0 : (r > 1 ? 1 : r);
  const int shifts = r < 0 ? -r : r - target_degree;
  if (shifts > 0) {
    const GModule e = r < 0 ? augmentation_ideal(x.group()) : coaugmentation_quotient(x.group());
    GModule ek = GModule::trivial(x.group(), FgAbGroup::free(1));
    for (int i = 0; i < shifts; ++i) ek = tensor(e, ek);
    if (ek.rank() * std::max(x.rank(), a.rank()) > max_shifted_rank)
      throw SizeGuardError("dimension shift to degree " + std::to_string(target_degree) + " needs a module of rank " +
                           std::to_string(ek.rank() * std::max(x.rank(), a.rank())));
    xs = tensor(ek, x);
    as = tensor(ek, a);
    al = alpha.tensor_left(ek.rank());
  }
  CupMap m = detail::cup_low_degree(xs, as, al, target_degree, opts);
  m.degree = r;
  return m;
}

}  // namespace tate
