#pragma once

#include "tate/normal_form.hpp"

#include <memory>
#include <sstream>
#include <string>

namespace tate {

/// A finitely generated abelian group Z^n / (column span of relations).
///
/// The canonical form (invariant factors d_1 | ... | d_k with d_i >= 2, plus
/// the free rank) is computed once at construction together with the change
/// of coordinates to canonical generators. Canonical generators come in the
/// order: torsion factors ascending, then the free part.
class FgAbGroup {
 public:
  FgAbGroup() : FgAbGroup(0, IntMatrix(0, 0)) {}

  FgAbGroup(std::size_t generators, IntMatrix relations) {
    if (relations.rows() != generators)
      throw std::invalid_argument("FgAbGroup: relation matrix must have one row per generator");
    auto impl = std::make_shared<Impl>();
    impl->generators = generators;
    impl->relations = std::move(relations);
    canonicalize(*impl);
    impl_ = std::move(impl);
  }

  static FgAbGroup free(std::size_t rank) { return FgAbGroup(rank, IntMatrix(rank, 0)); }

  /// Z/d_1 + ... + Z/d_k + Z^free_rank; entries of 0 give free summands, 1 is trivial.
  static FgAbGroup from_invariants(const std::vector<long long>& factors, std::size_t free_rank = 0) {
    const std::size_t n = factors.size() + free_rank;
    IntMatrix rel(n, factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) rel(i, i) = factors[i];
    return FgAbGroup(n, std::move(rel));
  }

  std::size_t generator_count() const noexcept { return impl_->generators; }
  const IntMatrix& relations() const noexcept { return impl_->relations; }

  const IntVector& invariant_factors() const noexcept { return impl_->factors; }
  std::size_t free_rank() const noexcept { return impl_->free_rank; }
  std::size_t canonical_rank() const noexcept { return impl_->factors.size() + impl_->free_rank; }

  bool is_trivial() const noexcept { return canonical_rank() == 0; }
  bool is_finite() const noexcept { return impl_->free_rank == 0; }

  /// Order of the group; 0 when infinite.
  Integer order() const {
    if (!is_finite()) return 0;
    Integer o = 1;
    for (const auto& d : impl_->factors) o *= d;
    return o;
  }

  /// Exponent of the torsion subgroup (1 for torsion-free groups).
  Integer torsion_exponent() const { return impl_->factors.empty() ? Integer(1) : impl_->factors.back(); }

  /// Modulus of canonical coordinate i (0 for free coordinates).
  Integer canonical_modulus(std::size_t i) const {
    return i < impl_->factors.size() ? impl_->factors[i] : Integer(0);
  }

  /// Canonical coordinates of an element given on the generators; torsion
  /// coordinates are reduced into [0, d).
  IntVector to_canonical(const IntVector& x) const {
    assert(x.size() == impl_->generators);
    const Impl& p = *impl_;
    IntVector c(canonical_rank());
    for (std::size_t k = 0; k < c.size(); ++k) {
      const std::size_t row = p.canonical_rows[k];
      Integer acc = 0;
      for (std::size_t j = 0; j < p.generators; ++j)
        if (p.left(row, j) != 0 && x[j] != 0) acc += p.left(row, j) * x[j];
      const Integer m = canonical_modulus(k);
      c[k] = m == 0 ? acc : mod_nonneg(acc, m);
    }
    return c;
  }

  /// Element on the generators representing canonical coordinates c.
  IntVector from_canonical(const IntVector& c) const {
    assert(c.size() == canonical_rank());
    const Impl& p = *impl_;
    IntVector x(p.generators);
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      const std::size_t col = p.canonical_rows[k];
      for (std::size_t i = 0; i < p.generators; ++i)
        if (p.left_inverse(i, col) != 0) x[i] += p.left_inverse(i, col) * c[k];
    }
    return x;
  }

  /// Representative on the generators of the k-th canonical generator.
  IntVector canonical_generator(std::size_t k) const {
    IntVector c(canonical_rank());
    c[k] = 1;
    return from_canonical(c);
  }

  bool is_zero_element(const IntVector& x) const { return tate::is_zero(to_canonical(x)); }

  /// Compact description such as "Z/2 + Z/6 + Z^2" or "0".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& d : impl_->factors) {
      os << (first ? "" : " + ") << "Z/" << d;
      first = false;
    }
    if (impl_->free_rank == 1) {
      os << (first ? "" : " + ") << "Z";
      first = false;
    } else if (impl_->free_rank > 1) {
      os << (first ? "" : " + ") << "Z^" << impl_->free_rank;
      first = false;
    }
    return first ? "0" : os.str();
  }

  /// Isomorphism test via canonical forms.
  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.impl_->free_rank == b.impl_->free_rank && a.impl_->factors == b.impl_->factors;
  }

  /// Same presentation (generators and relation matrix), not merely isomorphic.
  bool same_presentation(const FgAbGroup& other) const {
    return impl_ == other.impl_ ||
           (impl_->generators == other.impl_->generators && impl_->relations == other.impl_->relations);
  }

 private:
  struct Impl {
    std::size_t generators = 0;
    IntMatrix relations;
    IntVector factors;
    std::size_t free_rank = 0;
    IntMatrix left;          // U with U R V = D
    IntMatrix left_inverse;  // U^{-1}
    std::vector<std::size_t> canonical_rows;  // rows of U giving canonical coordinates
  };

  static void canonicalize(Impl& p) {
    const SmithForm f = smith_normal_form(p.relations, {.track_left = true, .track_right = false});
    p.left = f.left;
    p.left_inverse = f.left_inverse;
    const std::size_t k = std::min(p.relations.rows(), p.relations.cols());
    std::vector<std::size_t> torsion_rows, free_rows;
    for (std::size_t i = 0; i < p.generators; ++i) {
      const Integer d = i < k ? f.diagonal(i, i) : Integer(0);
      if (d == 1) continue;
      if (d == 0) {
        free_rows.push_back(i);
      } else {
        torsion_rows.push_back(i);
        p.factors.push_back(d);
      }
    }
    p.free_rank = free_rows.size();
    p.canonical_rows = torsion_rows;
    p.canonical_rows.insert(p.canonical_rows.end(), free_rows.begin(), free_rows.end());
  }

  std::shared_ptr<const Impl> impl_;
};

inline std::ostream& operator<<(std::ostream& os, const FgAbGroup& g) { return os << g.to_string(); }

/// A homomorphism given by its matrix on the chosen generators. The matrix is
/// checked at construction to map source relations into target relations.
class AbHom {
 public:
  AbHom(FgAbGroup source, FgAbGroup target, IntMatrix matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count())
      throw std::invalid_argument("AbHom: matrix shape does not match source/target generators");
    const IntMatrix& rel = source_.relations();
    for (std::size_t j = 0; j < rel.cols(); ++j)
      if (!target_.is_zero_element(matrix_ * rel.column(j)))
        throw std::invalid_argument("AbHom: matrix does not respect source relation " + std::to_string(j));
  }

  static AbHom identity(const FgAbGroup& g) {
    return AbHom(g, g, IntMatrix::identity(g.generator_count()));
  }
  static AbHom zero(const FgAbGroup& s, const FgAbGroup& t) {
    return AbHom(s, t, IntMatrix(t.generator_count(), s.generator_count()));
  }

  const FgAbGroup& source() const noexcept { return source_; }
  const FgAbGroup& target() const noexcept { return target_; }
  const IntMatrix& matrix() const noexcept { return matrix_; }

  IntVector apply(const IntVector& x) const { return matrix_ * x; }

  /// The map in canonical coordinates: column j is the canonical image of
  /// the j-th canonical generator of the source.
  IntMatrix canonical_matrix() const {
    IntMatrix m(target_.canonical_rank(), source_.canonical_rank());
    for (std::size_t j = 0; j < source_.canonical_rank(); ++j)
      m.set_column(j, target_.to_canonical(matrix_ * source_.canonical_generator(j)));
    return m;
  }

  /// g after f; requires f.target and g.source to share a presentation.
  friend AbHom compose(const AbHom& g, const AbHom& f) {
    if (!f.target_.same_presentation(g.source_))
      throw std::invalid_argument("compose: target of inner map is not the source of outer map");
    return AbHom(f.source_, g.target_, g.matrix_ * f.matrix_);
  }

  /// Equality as homomorphisms between the same presented groups.
  bool equals(const AbHom& other) const {
    if (!source_.same_presentation(other.source_) || !target_.same_presentation(other.target_)) return false;
    for (std::size_t j = 0; j < source_.generator_count(); ++j) {
      IntVector d = matrix_.column(j);
      const IntVector e = other.matrix_.column(j);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= e[i];
      if (!target_.is_zero_element(d)) return false;
    }
    return true;
  }

  bool is_zero() const {
    for (std::size_t j = 0; j < source_.generator_count(); ++j)
      if (!target_.is_zero_element(matrix_.column(j))) return false;
    return true;
  }

  bool is_injective() const;
  bool is_surjective() const;
  bool is_isomorphism() const { return is_injective() && is_surjective(); }

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  IntMatrix matrix_;
};

/// A group together with its structure map to/from another group.
struct GroupWithMap {
  FgAbGroup group;
  AbHom map;
};

/// Sublattice {x : f(x) = 0 in target} of Z^{source generators}.
inline Lattice preimage_of_zero(const AbHom& f) {
  const IntMatrix& m = f.matrix();
  const IntMatrix& rt = f.target().relations();
  const IntMatrix k = kernel_basis(hconcat(m, rt));
  std::vector<IntVector> gens;
  gens.reserve(k.cols());
  for (std::size_t j = 0; j < k.cols(); ++j) {
    IntVector v(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) v[i] = k(i, j);
    gens.push_back(std::move(v));
  }
  return Lattice::span(m.cols(), gens);
}

/// A subquotient L / S of Z^n where S <= L: generators are the basis of L,
/// relations are S expressed in that basis. `extra` spans S.
inline FgAbGroup subquotient(const Lattice& l, const IntMatrix& extra) {
  IntMatrix rel(l.rank(), extra.cols());
  for (std::size_t j = 0; j < extra.cols(); ++j) {
    auto c = l.coordinates(extra.column(j));
    if (!c) throw InternalError("subquotient: relation is not in the lattice");
    rel.set_column(j, *c);
  }
  return FgAbGroup(l.rank(), std::move(rel));
}

/// Cokernel target / f(source) with the quotient projection.
inline GroupWithMap cokernel(const AbHom& f) {
  FgAbGroup q(f.target().generator_count(), hconcat(f.target().relations(), f.matrix()));
  AbHom proj(f.target(), q, IntMatrix::identity(q.generator_count()));
  return {q, proj};
}

/// Kernel of f with its inclusion into the source.
inline GroupWithMap kernel(const AbHom& f) {
  const Lattice k = preimage_of_zero(f);
  FgAbGroup g = subquotient(k, f.source().relations());
  return {g, AbHom(g, f.source(), k.basis_matrix())};
}

/// Image of f (presented as source / kernel) with its inclusion into the target.
inline GroupWithMap image(const AbHom& f) {
  const Lattice k = preimage_of_zero(f);
  FgAbGroup g(f.source().generator_count(), k.basis_matrix());
  return {g, AbHom(g, f.target(), f.matrix())};
}

/// Torsion subgroup in canonical form with its inclusion.
inline GroupWithMap torsion_subgroup(const FgAbGroup& a) {
  const auto& fac = a.invariant_factors();
  IntMatrix rel = IntMatrix::diagonal(fac);
  FgAbGroup t(fac.size(), std::move(rel));
  IntMatrix incl(a.generator_count(), fac.size());
  for (std::size_t k = 0; k < fac.size(); ++k) incl.set_column(k, a.canonical_generator(k));
  return {t, AbHom(t, a, std::move(incl))};
}

inline bool AbHom::is_injective() const { return kernel(*this).group.is_trivial(); }
inline bool AbHom::is_surjective() const { return cokernel(*this).group.is_trivial(); }

/// Direct sum with the two inclusions' block layout (generators of a first).
inline FgAbGroup direct_sum(const FgAbGroup& a, const FgAbGroup& b) {
  return FgAbGroup(a.generator_count() + b.generator_count(), block_diagonal(a.relations(), b.relations()));
}

/// A (x) B: generators e_i (x) f_k at index i * |gens B| + k.
inline FgAbGroup tensor(const FgAbGroup& a, const FgAbGroup& b) {
  const std::size_t na = a.generator_count();
  const std::size_t nb = b.generator_count();
  const IntMatrix rel = hconcat(kronecker(a.relations(), IntMatrix::identity(nb)),
                                kronecker(IntMatrix::identity(na), b.relations()));
  return FgAbGroup(na * nb, rel);
}

/// Induced map f (x) g on tensor products of the presented groups.
inline AbHom tensor(const AbHom& f, const AbHom& g) {
  return AbHom(tensor(f.source(), g.source()), tensor(f.target(), g.target()),
               kronecker(f.matrix(), g.matrix()));
}

/// Hom(A, B) realized concretely: generators are integer matrices
/// (|gens B| x |gens A|) that respect relations, taken modulo matrices with
/// columns in the relation span of B.
class HomGroup {
 public:
  HomGroup(FgAbGroup a, FgAbGroup b) : source_(std::move(a)), target_(std::move(b)) {
    const std::size_t p = source_.generator_count();
    const std::size_t q = target_.generator_count();
    const IntMatrix& ra = source_.relations();
    const IntMatrix& rb = target_.relations();
    const std::size_t s = ra.cols();
    const std::size_t t = rb.cols();
    // Unknowns: vec(H) (H is q x p, index i*p + j) and Y (t x s); H ra - rb Y = 0.
    IntMatrix sys(q * s, q * p + t * s);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t c = 0; c < s; ++c) {
        const std::size_t row = i * s + c;
        for (std::size_t j = 0; j < p; ++j) sys(row, i * p + j) = ra(j, c);
        for (std::size_t k = 0; k < t; ++k) sys(row, q * p + k * s + c) = -rb(i, k);
      }
    const IntMatrix ker = kernel_basis(sys);
    std::vector<IntVector> gens;
    for (std::size_t j = 0; j < ker.cols(); ++j) {
      IntVector v(q * p);
      for (std::size_t i = 0; i < q * p; ++i) v[i] = ker(i, j);
      gens.push_back(std::move(v));
    }
    valid_ = Lattice::span(q * p, gens);
    // Trivial homomorphisms: columns in span(rb).
    std::vector<IntVector> triv;
    for (std::size_t k = 0; k < t; ++k)
      for (std::size_t j = 0; j < p; ++j) {
        IntVector v(q * p);
        for (std::size_t i = 0; i < q; ++i) v[i * p + j] = rb(i, k);
        triv.push_back(std::move(v));
      }
    group_ = subquotient(valid_, IntMatrix::from_columns(q * p, triv));
  }

  const FgAbGroup& group() const noexcept { return group_; }
  const FgAbGroup& source() const noexcept { return source_; }
  const FgAbGroup& target() const noexcept { return target_; }

  /// Matrix of the homomorphism with coordinates c on the generators of group().
  IntMatrix to_matrix(const IntVector& c) const {
    const std::size_t p = source_.generator_count();
    const std::size_t q = target_.generator_count();
    IntMatrix h(q, p);
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (c[k] == 0) continue;
      const IntVector& b = valid_.basis()[k];
      for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < p; ++j) h(i, j) += c[k] * b[i * p + j];
    }
    return h;
  }

  /// Coordinates on the generators of group() of a valid homomorphism matrix.
  IntVector from_matrix(const IntMatrix& h) const {
    const std::size_t p = source_.generator_count();
    IntVector v(h.rows() * p);
    for (std::size_t i = 0; i < h.rows(); ++i)
      for (std::size_t j = 0; j < p; ++j) v[i * p + j] = h(i, j);
    auto c = valid_.coordinates(v);
    if (!c) throw std::invalid_argument("HomGroup: matrix does not define a homomorphism");
    return *c;
  }

 private:
  FgAbGroup source_;
  FgAbGroup target_;
  Lattice valid_;
  FgAbGroup group_;
};

inline FgAbGroup hom(const FgAbGroup& a, const FgAbGroup& b) { return HomGroup(a, b).group(); }

}  // namespace tate
