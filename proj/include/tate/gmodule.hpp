#pragma once

#include "tate/abelian_group.hpp"
#include "tate/finite_group.hpp"

#include <optional>

namespace tate {

/// A finite set with an action of a finite group: `perm(g)[x]` is g.x.
class GSet {
 public:
  GSet(FiniteGroup group, std::size_t points, std::vector<std::vector<int>> perms)
      : group_(std::move(group)), points_(points), perms_(std::move(perms)) {
    validate();
  }

  /// Extends images of the group's generators to the whole group.
  static GSet from_generator_images(const FiniteGroup& group, std::size_t points,
                                    const std::vector<std::vector<int>>& images) {
    if (images.size() != group.generators().size())
      throw InputError("expected " + std::to_string(group.generators().size()) +
                       " generator images, got " + std::to_string(images.size()));
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (images[i].size() != points)
        throw InputError("generator image " + std::to_string(i) + " has wrong length");
      for (int x : images[i])
        if (x < 0 || static_cast<std::size_t>(x) >= points)
          throw InputError("generator image " + std::to_string(i) + " has an out-of-range point");
    }
    std::vector<std::vector<int>> perms(group.order());
    std::vector<int> id(points);
    std::iota(id.begin(), id.end(), 0);
    perms[group.identity()] = id;
    std::vector<int> order{group.identity()};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t s = 0; s < images.size(); ++s) {
        const int y = group.mul(group.generators()[s], order[i]);
        std::vector<int> p(points);
        for (std::size_t x = 0; x < points; ++x) p[x] = images[s][perms[order[i]][x]];
        if (perms[y].empty()) {
          perms[y] = std::move(p);
          order.push_back(y);
        } else if (perms[y] != p) {
          throw InputError("generator images are inconsistent with the group law (element " +
                           std::to_string(y) + ")");
        }
      }
    return GSet(group, points, std::move(perms));
  }

  /// Left cosets G/H, ordered by their smallest element.
  static GSet cosets(const FiniteGroup& group, const Subgroup& h) {
    std::vector<int> label(group.order(), -1);
    std::vector<int> reps;
    for (std::size_t g = 0; g < group.order(); ++g) {
      if (label[g] >= 0) continue;
      for (int x : h.elements) label[group.mul(int(g), x)] = static_cast<int>(reps.size());
      reps.push_back(int(g));
    }
    std::vector<std::vector<int>> perms(group.order(), std::vector<int>(reps.size()));
    for (std::size_t g = 0; g < group.order(); ++g)
      for (std::size_t c = 0; c < reps.size(); ++c) perms[g][c] = label[group.mul(int(g), reps[c])];
    return GSet(group, reps.size(), std::move(perms));
  }

  /// Disjoint union; points of b are shifted by a.size().
  static GSet disjoint_union(const GSet& a, const GSet& b) {
    if (!(a.group_ == b.group_)) throw std::invalid_argument("GSet union over different groups");
    std::vector<std::vector<int>> perms(a.group_.order());
    for (std::size_t g = 0; g < perms.size(); ++g) {
      perms[g] = a.perms_[g];
      for (int x : b.perms_[g]) perms[g].push_back(x + static_cast<int>(a.points_));
    }
    return GSet(a.group_, a.points_ + b.points_, std::move(perms));
  }

  const FiniteGroup& group() const noexcept { return group_; }
  std::size_t size() const noexcept { return points_; }
  int act(int g, int x) const { return perms_[g][x]; }
  const std::vector<int>& perm(int g) const { return perms_[g]; }

  /// Orbits as sorted point lists, ordered by smallest point.
  std::vector<std::vector<int>> orbits() const {
    std::vector<int> seen(points_, 0);
    std::vector<std::vector<int>> out;
    for (std::size_t x = 0; x < points_; ++x) {
      if (seen[x]) continue;
      std::vector<int> orb;
      for (std::size_t g = 0; g < group_.order(); ++g) {
        const int y = perms_[g][x];
        if (!seen[y]) {
          seen[y] = 1;
          orb.push_back(y);
        }
      }
      std::sort(orb.begin(), orb.end());
      out.push_back(std::move(orb));
    }
    return out;
  }

  Subgroup stabilizer(int x) const {
    std::vector<int> s;
    for (std::size_t g = 0; g < group_.order(); ++g)
      if (perms_[g][x] == x) s.push_back(int(g));
    return group_.make_subgroup(std::move(s));
  }

  /// Some g with g.from == to, if one exists (smallest index).
  std::optional<int> transporter(int from, int to) const {
    for (std::size_t g = 0; g < group_.order(); ++g)
      if (perms_[g][from] == to) return int(g);
    return std::nullopt;
  }

 private:
  void validate() const {
    if (perms_.size() != group_.order()) throw InputError("G-set needs one permutation per group element");
    for (std::size_t g = 0; g < perms_.size(); ++g) {
      if (perms_[g].size() != points_) throw InputError("G-set permutation has wrong length");
      std::vector<int> s = perms_[g];
      std::sort(s.begin(), s.end());
      for (std::size_t i = 0; i < points_; ++i)
        if (s[i] != static_cast<int>(i))
          throw InputError("G-set map for element " + std::to_string(g) + " is not a permutation");
    }
    for (std::size_t x = 0; x < points_; ++x)
      if (perms_[group_.identity()][x] != static_cast<int>(x)) throw InputError("identity does not act trivially on the G-set");
    for (std::size_t g = 0; g < perms_.size(); ++g)
      for (std::size_t h = 0; h < perms_.size(); ++h) {
        const auto& gh = perms_[group_.mul(int(g), int(h))];
        for (std::size_t x = 0; x < points_; ++x)
          if (gh[x] != perms_[g][perms_[h][x]])
            throw InputError("G-set action is not compatible with the group law at (" + std::to_string(g) + "," +
                             std::to_string(h) + ")");
      }
  }

  FiniteGroup group_;
  std::size_t points_;
  std::vector<std::vector<int>> perms_;
};

/// A finitely generated abelian group with an action of a finite group,
/// stored as one matrix per group element on the chosen generators.
class GModule {
 public:
  struct Unchecked {};

  /// Validates that every matrix respects the relations, that the identity
  /// acts trivially, and that the action is multiplicative.
  GModule(FiniteGroup group, FgAbGroup underlying, std::vector<IntMatrix> action)
      : group_(std::move(group)), underlying_(std::move(underlying)), action_(std::move(action)) {
    validate();
  }

  /// For constructions that are valid by design (tensor products, shifts).
  GModule(Unchecked, FiniteGroup group, FgAbGroup underlying, std::vector<IntMatrix> action)
      : group_(std::move(group)), underlying_(std::move(underlying)), action_(std::move(action)) {}

  /// Extends matrices given for the group's generators to the whole group.
  static GModule from_generator_action(FiniteGroup group, FgAbGroup underlying,
                                       const std::vector<IntMatrix>& gen_action) {
    if (gen_action.size() != group.generators().size())
      throw InputError("expected " + std::to_string(group.generators().size()) + " generator matrices, got " +
                       std::to_string(gen_action.size()));
    const std::size_t n = underlying.generator_count();
    for (std::size_t s = 0; s < gen_action.size(); ++s)
      if (gen_action[s].rows() != n || gen_action[s].cols() != n)
        throw InputError("action matrix for generator " + std::to_string(s) + " has wrong shape");
    std::vector<IntMatrix> act(group.order());
    std::vector<char> have(group.order(), 0);
    act[group.identity()] = IntMatrix::identity(n);
    have[group.identity()] = 1;
    std::vector<int> order{group.identity()};
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t s = 0; s < gen_action.size(); ++s) {
        const int y = group.mul(group.generators()[s], order[i]);
        if (have[y]) continue;
        act[y] = gen_action[s] * act[order[i]];
        have[y] = 1;
        order.push_back(y);
      }
    return GModule(std::move(group), std::move(underlying), std::move(act));
  }

  static GModule trivial(FiniteGroup group, FgAbGroup underlying) {
    std::vector<IntMatrix> act(group.order(), IntMatrix::identity(underlying.generator_count()));
    return GModule(Unchecked{}, std::move(group), std::move(underlying), std::move(act));
  }

  const FiniteGroup& group() const noexcept { return group_; }
  const FgAbGroup& underlying() const noexcept { return underlying_; }
  std::size_t rank() const noexcept { return underlying_.generator_count(); }
  const IntMatrix& action(int g) const { return action_[g]; }
  const std::vector<IntMatrix>& actions() const noexcept { return action_; }
  AbHom action_hom(int g) const { return AbHom(underlying_, underlying_, action_[g]); }

  /// Same module after an automorphism of the underlying presentation:
  /// new generators are basis * old, with inverse given.
  GModule change_basis(const IntMatrix& basis, const IntMatrix& inverse) const {
    FgAbGroup u(rank(), inverse * underlying_.relations());
    std::vector<IntMatrix> act;
    act.reserve(action_.size());
    for (const auto& a : action_) act.push_back(inverse * a * basis);
    return GModule(Unchecked{}, group_, std::move(u), std::move(act));
  }

 private:
  bool equal_as_maps(const IntMatrix& a, const IntMatrix& b) const {
    for (std::size_t j = 0; j < rank(); ++j) {
      IntVector d = a.column(j);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b(i, j);
      if (!underlying_.is_zero_element(d)) return false;
    }
    return true;
  }

  void validate() const {
    const std::size_t n = rank();
    if (action_.size() != group_.order()) throw InputError("G-module needs one action matrix per group element");
    for (std::size_t g = 0; g < action_.size(); ++g) {
      if (action_[g].rows() != n || action_[g].cols() != n)
        throw InputError("action matrix for element " + std::to_string(g) + " has wrong shape");
      try {
        AbHom check(underlying_, underlying_, action_[g]);
      } catch (const std::invalid_argument&) {
        throw InputError("action of element " + std::to_string(g) + " does not respect the relations");
      }
    }
    if (!equal_as_maps(action_[group_.identity()], IntMatrix::identity(n)))
      throw InputError("identity element does not act trivially");
    for (std::size_t g = 0; g < action_.size(); ++g)
      for (std::size_t h = 0; h < action_.size(); ++h)
        if (!equal_as_maps(action_[group_.mul(int(g), int(h))], action_[g] * action_[h]))
          throw InputError("action is not multiplicative at (" + std::to_string(g) + "," + std::to_string(h) + ")");
  }

  FiniteGroup group_;
  FgAbGroup underlying_;
  std::vector<IntMatrix> action_;
};

/// Stacked map M -> M^k, x -> ((s - 1) x)_s over the group generators.
inline AbHom stacked_differences(const GModule& m) {
  const auto& gens = m.group().generators();
  const std::size_t n = m.rank();
  FgAbGroup target(n * gens.size(), block_diagonal_power(m.underlying().relations(), gens.size()));
  IntMatrix mat(n * gens.size(), n);
  for (std::size_t s = 0; s < gens.size(); ++s) {
    const IntMatrix& a = m.action(gens[s]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mat(s * n + i, j) = a(i, j) - (i == j ? 1 : 0);
  }
  return AbHom(m.underlying(), target, std::move(mat));
}

/// M^G with its inclusion into M.
inline GroupWithMap invariants_part(const GModule& m) { return kernel(stacked_differences(m)); }

/// Augmentation submodule sum_g (g - 1) M, as columns spanning it.
inline IntMatrix augmentation_span(const GModule& m) {
  const auto& gens = m.group().generators();
  const std::size_t n = m.rank();
  IntMatrix mat(n, n * gens.size());
  for (std::size_t s = 0; s < gens.size(); ++s) {
    const IntMatrix& a = m.action(gens[s]);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) mat(i, s * n + j) = a(i, j) - (i == j ? 1 : 0);
  }
  return mat;
}

/// M_G = M / sum_g (g - 1) M with the projection.
inline GroupWithMap coinvariants(const GModule& m) {
  FgAbGroup q(m.rank(), hconcat(m.underlying().relations(), augmentation_span(m)));
  return {q, AbHom(m.underlying(), q, IntMatrix::identity(m.rank()))};
}

/// N = sum over g of the action of g.
inline AbHom norm_endomorphism(const GModule& m) {
  IntMatrix n(m.rank(), m.rank());
  for (const auto& a : m.actions()) n = n + a;
  return AbHom(m.underlying(), m.underlying(), std::move(n));
}

/// Restriction to a subgroup; the result lives over the subgroup as a group.
inline GModule restriction(const GModule& m, const Subgroup& h) {
  auto emb = m.group().as_group(h);
  std::vector<IntMatrix> act;
  act.reserve(emb.embedding.size());
  for (int x : emb.embedding) act.push_back(m.action(x));
  return GModule(GModule::Unchecked{}, std::move(emb.group), m.underlying(), std::move(act));
}

/// Z[S] for a G-set S, basis the points.
inline GModule permutation_module(const GSet& s) {
  const std::size_t n = s.size();
  std::vector<IntMatrix> act(s.group().order(), IntMatrix(n, n));
  for (std::size_t g = 0; g < act.size(); ++g)
    for (std::size_t x = 0; x < n; ++x) act[g](s.act(int(g), int(x)), x) = 1;
  return GModule(GModule::Unchecked{}, s.group(), FgAbGroup::free(n), std::move(act));
}

/// Z[G] with left multiplication; basis the group elements.
inline GModule regular_module(const FiniteGroup& g) {
  std::vector<std::vector<int>> perms(g.order(), std::vector<int>(g.order()));
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t x = 0; x < g.order(); ++x) perms[a][x] = g.mul(int(a), int(x));
  return permutation_module(GSet(g, g.order(), std::move(perms)));
}

/// M (x) N with the diagonal action.
inline GModule tensor(const GModule& m, const GModule& n) {
  if (!(m.group() == n.group())) throw std::invalid_argument("tensor of modules over different groups");
  std::vector<IntMatrix> act;
  act.reserve(m.group().order());
  for (std::size_t g = 0; g < m.group().order(); ++g) act.push_back(kronecker(m.action(int(g)), n.action(int(g))));
  return GModule(GModule::Unchecked{}, m.group(), tensor(m.underlying(), n.underlying()), std::move(act));
}

inline GModule direct_sum(const GModule& m, const GModule& n) {
  if (!(m.group() == n.group())) throw std::invalid_argument("direct sum of modules over different groups");
  std::vector<IntMatrix> act;
  for (std::size_t g = 0; g < m.group().order(); ++g) act.push_back(block_diagonal(m.action(int(g)), n.action(int(g))));
  return GModule(GModule::Unchecked{}, m.group(), direct_sum(m.underlying(), n.underlying()), std::move(act));
}

/// Hom(X, A) as a module, (g.phi)(x) = g phi(g^{-1} x), with explicit matrices.
struct HomModule {
  HomGroup hom;
  GModule module;
};

inline HomModule hom_module(const GModule& x, const GModule& a) {
  if (!(x.group() == a.group())) throw std::invalid_argument("Hom of modules over different groups");
  HomGroup hg(x.underlying(), a.underlying());
  const std::size_t k = hg.group().generator_count();
  std::vector<IntMatrix> act;
  const FiniteGroup& g = x.group();
  for (std::size_t e = 0; e < g.order(); ++e) {
    IntMatrix m(k, k);
    for (std::size_t c = 0; c < k; ++c) {
      IntVector unit(k);
      unit[c] = 1;
      const IntMatrix h = a.action(int(e)) * hg.to_matrix(unit) * x.action(g.inv(int(e)));
      m.set_column(c, hg.from_matrix(h));
    }
    act.push_back(std::move(m));
  }
  GModule mod(GModule::Unchecked{}, g, hg.group(), std::move(act));
  return {std::move(hg), std::move(mod)};
}

/// Augmentation ideal I_G with basis (h - 1), h != 1, in element order.
inline GModule augmentation_ideal(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<int> pos(n, -1);
  int k = 0;
  for (std::size_t h = 0; h < n; ++h)
    if (int(h) != g.identity()) pos[h] = k++;
  std::vector<IntMatrix> act(n, IntMatrix(n - 1, n - 1));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t h = 0; h < n; ++h) {
      if (pos[h] < 0) continue;
      // a (h - 1) = (ah - 1) - (a - 1)
      const int ah = g.mul(int(a), int(h));
      if (pos[ah] >= 0) act[a](pos[ah], pos[h]) += 1;
      if (pos[a] >= 0) act[a](pos[a], pos[h]) -= 1;
    }
  return GModule(GModule::Unchecked{}, g, FgAbGroup::free(n - 1), std::move(act));
}

/// J_G = Z[G] / Z.N with basis the classes of h != 1 (class of 1 is -sum).
inline GModule coaugmentation_quotient(const FiniteGroup& g) {
  const std::size_t n = g.order();
  std::vector<int> pos(n, -1);
  int k = 0;
  for (std::size_t h = 0; h < n; ++h)
    if (int(h) != g.identity()) pos[h] = k++;
  std::vector<IntMatrix> act(n, IntMatrix(n - 1, n - 1));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t h = 0; h < n; ++h) {
      if (pos[h] < 0) continue;
      const int ah = g.mul(int(a), int(h));
      if (pos[ah] >= 0) {
        act[a](pos[ah], pos[h]) = 1;
      } else {
        for (std::size_t r = 0; r + 1 < n; ++r) act[a](r, pos[h]) = -1;
      }
    }
  return GModule(GModule::Unchecked{}, g, FgAbGroup::free(n - 1), std::move(act));
}

/// 0 -> shifted -> free_part -> M -> 0 with shifted = I_G (x) M and
/// free_part = Z[G] (x) M (a sum of copies of Z[G] when M is torsion-free).
struct SyzygyShift {
  GModule shifted;
  GModule free_part;
  AbHom inclusion;   ///< shifted -> free_part
  AbHom projection;  ///< free_part -> M
};

inline SyzygyShift syzygy_shift(const GModule& m) {
  const FiniteGroup& g = m.group();
  const std::size_t n = g.order();
  const std::size_t r = m.rank();
  GModule shifted = tensor(augmentation_ideal(g), m);
  GModule free_part = tensor(regular_module(g), m);
  // (h - 1) (x) v  ->  h (x) v - 1 (x) v
  IntMatrix incl(n * r, (n - 1) * r);
  int k = 0;
  for (std::size_t h = 0; h < n; ++h) {
    if (int(h) == g.identity()) continue;
    for (std::size_t i = 0; i < r; ++i) {
      incl(h * r + i, k * r + i) += 1;
      incl(g.identity() * r + i, k * r + i) -= 1;
    }
    ++k;
  }
  // h (x) v -> v (augmentation on the first factor).
  IntMatrix proj(r, n * r);
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t i = 0; i < r; ++i) proj(i, h * r + i) = 1;
  AbHom inc(shifted.underlying(), free_part.underlying(), std::move(incl));
  AbHom pr(free_part.underlying(), m.underlying(), std::move(proj));
  return {std::move(shifted), std::move(free_part), std::move(inc), std::move(pr)};
}

/// The dual shift: 0 -> M -> Z[G] (x) M -> J_G (x) M -> 0.
inline GModule cosyzygy_module(const GModule& m) { return tensor(coaugmentation_quotient(m.group()), m); }

}  // namespace tate
