#pragma once

#include "tate/cohomology.hpp"

namespace tate {

/// A finite group, modules X and A, and a 2-cocycle alpha valued in Hom(X, A)
/// (coordinates on the generators of the Hom module).
struct TNTripleCandidate {
  FiniteGroup group;
  GModule x;
  GModule a;
  HomModule hom;
  Cochain alpha;

  PairingCocycle pairing() const { return pairing_from_cochain(hom, alpha); }
};

/// Validates and assembles a candidate from a cochain in Hom-module coordinates.
inline TNTripleCandidate make_triple(const GModule& x, const GModule& a, Cochain alpha) {
  if (!(x.group() == a.group())) throw InputError("X and A are modules over different groups");
  HomModule hm = hom_module(x, a);
  verify_2cocycle(hm, alpha);
  return {x.group(), x, a, std::move(hm), std::move(alpha)};
}

/// Same, with alpha given as one |gens A| x |gens X| matrix per pair (g, h).
inline TNTripleCandidate make_triple(const GModule& x, const GModule& a, const PairingCocycle& alpha) {
  if (!(x.group() == a.group())) throw InputError("X and A are modules over different groups");
  detail::check_pairing_shape(x, a, alpha);
  const HomModule hm = hom_module(x, a);
  Cochain c{2, IntMatrix(alpha.values.size(), hm.module.rank())};
  for (std::size_t t = 0; t < alpha.values.size(); ++t) {
    IntVector coords;
    try {
      coords = hm.hom.from_matrix(alpha.values[t]);
    } catch (const std::exception&) {
      const std::size_t n = x.group().order();
      throw InputError("alpha(" + std::to_string(t / n) + "," + std::to_string(t % n) +
                       ") is not a homomorphism X -> A");
    }
    for (std::size_t k = 0; k < coords.size(); ++k) c.values(t, k) = coords[k];
  }
  return make_triple(x, a, std::move(c));
}

/// Z/n acting trivially on X = A = Z with alpha = multiple * carry cocycle,
/// carry(i, j) = floor((i + j) / n). multiple = 1 is a generator of H^2.
inline TNTripleCandidate cyclic_carry_triple(std::size_t n, long long multiple = 1) {
  const FiniteGroup g = groups::cyclic(n);
  const GModule z = GModule::trivial(g, FgAbGroup::free(1));
  PairingCocycle p;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p.values.push_back(IntMatrix{{multiple * static_cast<long long>((i + j) / n)}});
  return make_triple(z, z, p);
}

struct TNRow {
  std::vector<int> subgroup;             ///< element indices in the parent group
  std::vector<int> subgroup_generators;
  int degree = 0;
  FgAbGroup source;
  FgAbGroup target;
  IntMatrix matrix;
  bool is_isomorphism = false;
};

struct RigidityRow {
  std::vector<int> subgroup;
  std::vector<int> subgroup_generators;
  FgAbGroup h1;
  bool is_trivial = false;
};

struct Omission {
  std::vector<int> subgroup;
  std::optional<int> degree;
  std::string reason;
};

struct TNReport {
  DegreeWindow window;
  std::vector<TNRow> rows;
  std::vector<RigidityRow> rigidity;
  std::vector<Omission> omissions;
  bool weak_tn = true;  ///< conjunction of the computed is_isomorphism flags
  bool rigid = true;    ///< conjunction of the computed is_trivial flags

  bool complete() const noexcept { return omissions.empty(); }
};

namespace detail {

struct RestrictedTriple {
  GModule x;
  GModule a;
  HomModule hom;
  PairingCocycle pairing;
};

inline RestrictedTriple restrict_triple(const TNTripleCandidate& t, const Subgroup& h) {
  const auto emb = t.group.as_group(h);
  GModule x = restriction(t.x, h);
  GModule a = restriction(t.a, h);
  HomModule hm = hom_module(x, a);
  const Cochain alpha = restrict_cochain(t.alpha, t.group.order(), emb.embedding);
  PairingCocycle p = pairing_from_cochain(hm, alpha);
  return {std::move(x), std::move(a), std::move(hm), std::move(p)};
}

}  // namespace detail

/// Cup product with the restriction of alpha, for every subgroup and every
/// degree of the window, tested for bijectivity.
inline TNReport check_weak_tn(const TNTripleCandidate& t, DegreeWindow window, const TateOptions& opts = {},
                              std::size_t max_shifted_rank = 4096) {
  if (window.lo > window.hi) throw InputError("empty degree window");
  TateOptions inner = opts;
  inner.window = {std::min(window.lo, opts.window.lo), std::max(window.hi, opts.window.hi)};
  for (int r : {window.lo, window.hi}) check_degree(r, inner);
  if (window.hi + 2 > kMaxSupportedDegree) throw UnsupportedDegreeError("cup product target degree exceeds the hard limit");
  TNReport report;
  report.window = window;
  for (const auto& h : t.group.subgroups()) {
    if (h.order() > opts.max_group_order) {
      report.omissions.push_back({h.elements, std::nullopt, "subgroup order exceeds the size guard"});
      continue;
    }
    const auto rt = detail::restrict_triple(t, h);
    for (int r = window.lo; r <= window.hi; ++r) {
      try {
        const CupMap cup = cup_with_2cocycle(rt.x, rt.a, rt.pairing, r, inner, max_shifted_rank);
        TNRow row{h.elements, h.generators, r, cup.source, cup.target, cup.map.matrix(), cup.map.is_isomorphism()};
        report.weak_tn = report.weak_tn && row.is_isomorphism;
        report.rows.push_back(std::move(row));
      } catch (const SizeGuardError& e) {
        report.omissions.push_back({h.elements, r, e.what()});
      }
    }
  }
  return report;
}

/// H^1(G', Hom(X, A)) for every subgroup G'.
inline TNReport check_rigidity(const TNTripleCandidate& t, const TateOptions& opts = {}) {
  TNReport report;
  report.window = {1, 1};
  for (const auto& h : t.group.subgroups()) {
    if (h.order() > opts.max_group_order) {
      report.omissions.push_back({h.elements, 1, "subgroup order exceeds the size guard"});
      continue;
    }
    TateOptions inner = opts;
    inner.window = {-kMaxSupportedDegree, kMaxSupportedDegree};
    FgAbGroup h1 = tate_cohomology(restriction(t.hom.module, h), 1, inner);
    const bool trivial = h1.is_trivial();
    report.rigid = report.rigid && trivial;
    report.rigidity.push_back({h.elements, h.generators, std::move(h1), trivial});
  }
  return report;
}

}  // namespace tate
