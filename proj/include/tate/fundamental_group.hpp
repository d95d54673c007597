#pragma once

#include "tate/gmodule.hpp"

namespace tate {

/// Cocharacter lattice Z^rank, its coroots, and the action of each group
/// generator on the lattice.
struct RootDatumInput {
  std::size_t cocharacter_rank = 0;
  std::vector<IntVector> coroots;
  std::vector<IntMatrix> galois_action;  ///< one per generator of the group
};

/// Cocharacters modulo coroots, with the induced action.
struct FundamentalGroup {
  GModule module;
  std::string label = "custom";
};

inline FundamentalGroup fundamental_group(const RootDatumInput& rd, const FiniteGroup& g, std::string label = "custom") {
  const std::size_t n = rd.cocharacter_rank;
  for (std::size_t i = 0; i < rd.coroots.size(); ++i)
    if (rd.coroots[i].size() != n) throw InputError("coroot " + std::to_string(i) + " has the wrong length");
  if (rd.galois_action.size() != g.generators().size())
    throw InputError("expected " + std::to_string(g.generators().size()) + " action matrices, got " +
                     std::to_string(rd.galois_action.size()));
  const Lattice span = Lattice::span(n, rd.coroots);
  std::vector<IntVector> sorted_roots = rd.coroots;
  std::sort(sorted_roots.begin(), sorted_roots.end());
  for (std::size_t s = 0; s < rd.galois_action.size(); ++s) {
    const IntMatrix& a = rd.galois_action[s];
    const std::string who = "generator " + std::to_string(s);
    if (a.rows() != n || a.cols() != n) throw InputError("action matrix of " + who + " has the wrong shape");
    if (abs(determinant(a)) != 1) throw InputError("action matrix of " + who + " is not invertible over Z");
    std::vector<IntVector> images;
    for (const auto& c : rd.coroots) {
      images.push_back(a * c);
      if (!span.contains(images.back())) throw InputError("action of " + who + " does not preserve the coroot span");
    }
    std::sort(images.begin(), images.end());
    if (images != sorted_roots) throw InputError("action of " + who + " does not permute the coroots");
  }
  FgAbGroup lattice(n, IntMatrix::from_columns(n, rd.coroots));
  return {GModule::from_generator_action(g, std::move(lattice), rd.galois_action), std::move(label)};
}

namespace catalog {

namespace detail {

inline RootDatumInput trivial_action(std::size_t rank, std::vector<IntVector> coroots, const FiniteGroup& g) {
  return {rank, std::move(coroots), std::vector<IntMatrix>(g.generators().size(), IntMatrix::identity(rank))};
}

inline IntVector unit(std::size_t n, std::size_t i, long long c = 1) {
  IntVector v(n);
  v[i] = c;
  return v;
}

}  // namespace detail

/// Split torus of the given rank: Z^rank, trivial action.
inline FundamentalGroup split_torus(std::size_t rank, const FiniteGroup& g = FiniteGroup()) {
  return fundamental_group(detail::trivial_action(rank, {}, g), g, "split_torus(" + std::to_string(rank) + ")");
}

/// GL_n: Z^n modulo the coroots e_i - e_{i+1}, which is Z.
inline FundamentalGroup gl(std::size_t n, const FiniteGroup& g = FiniteGroup()) {
  if (n == 0) throw InputError("gl(n) needs n >= 1");
  std::vector<IntVector> roots;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    IntVector v = detail::unit(n, i);
    v[i + 1] = -1;
    roots.push_back(std::move(v));
  }
  return fundamental_group(detail::trivial_action(n, std::move(roots), g), g, "gl(" + std::to_string(n) + ")");
}

/// SL_n: the coroot lattice itself (basis the simple coroots), quotient 0.
inline FundamentalGroup sl(std::size_t n, const FiniteGroup& g = FiniteGroup()) {
  if (n < 2) throw InputError("sl(n) needs n >= 2");
  std::vector<IntVector> roots;
  for (std::size_t i = 0; i + 1 < n; ++i) roots.push_back(detail::unit(n - 1, i));
  return fundamental_group(detail::trivial_action(n - 1, std::move(roots), g), g, "sl(" + std::to_string(n) + ")");
}

/// PGL_n: coweight lattice (basis the fundamental coweights) modulo simple
/// coroots, which are the rows of the type A Cartan matrix. Quotient Z/n.
inline FundamentalGroup pgl(std::size_t n, const FiniteGroup& g = FiniteGroup()) {
  if (n < 2) throw InputError("pgl(n) needs n >= 2");
  const std::size_t r = n - 1;
  std::vector<IntVector> roots;
  for (std::size_t i = 0; i < r; ++i) {
    IntVector v = detail::unit(r, i, 2);
    if (i > 0) v[i - 1] = -1;
    if (i + 1 < r) v[i + 1] = -1;
    roots.push_back(std::move(v));
  }
  return fundamental_group(detail::trivial_action(r, std::move(roots), g), g, "pgl(" + std::to_string(n) + ")");
}

/// Norm-one torus of a quadratic extension: Z with the elements outside an
/// index-2 subgroup acting by -1. The subgroup defaults to the first one found.
inline FundamentalGroup norm_one_torus(const FiniteGroup& g = groups::cyclic(2),
                                       std::optional<Subgroup> kernel = std::nullopt) {
  if (!kernel) {
    for (const auto& h : g.subgroups())
      if (2 * h.order() == g.order()) {
        kernel = h;
        break;
      }
    if (!kernel) throw InputError("norm_one_torus needs a group with a subgroup of index 2");
  }
  if (2 * kernel->order() != g.order()) throw InputError("norm_one_torus kernel must have index 2");
  std::vector<IntMatrix> act;
  for (int s : g.generators()) act.push_back(IntMatrix{{kernel->contains(s) ? 1 : -1}});
  return fundamental_group({1, {}, act}, g, "norm_one_torus");
}

/// Catalog lookup by name; `param` is the rank or n where relevant.
inline FundamentalGroup by_name(const std::string& name, std::size_t param, const FiniteGroup& g) {
  if (name == "split_torus") return split_torus(param, g);
  if (name == "gl") return gl(param, g);
  if (name == "sl") return sl(param, g);
  if (name == "pgl") return pgl(param, g);
  if (name == "norm_one_torus") return norm_one_torus(g);
  throw InputError("unknown catalog entry '" + name + "'");
}

}  // namespace catalog

/// (Lambda)_Gamma.
inline FgAbGroup local_basic_classes(const FundamentalGroup& l) { return coinvariants(l.module).group; }

/// (Lambda)_{Gamma, tors}.
inline FgAbGroup local_h1(const FundamentalGroup& l) { return torsion_subgroup(local_basic_classes(l)).group; }

}  // namespace tate
