#pragma once

#include "tate/local_global.hpp"

#include <random>

namespace tate::random {

struct ScenarioLimits {
  std::size_t max_group_order = 8;
  std::size_t max_points = 6;
  std::size_t max_lambda_rank = 3;
  long long max_invariant_factor = 6;
};

inline std::vector<FiniteGroup> groups_up_to(std::size_t order) {
  std::vector<FiniteGroup> out;
  for (const auto& g : groups::small_catalog())
    if (g.order() <= order) out.push_back(g);
  return out;
}

template <class Rng>
std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

/// Disjoint union of coset spaces G/H for random subgroups H, at most
/// max_points points and at least one.
template <class Rng>
GSet random_places(Rng& rng, const FiniteGroup& g, std::size_t max_points) {
  const auto& subs = g.subgroups();
  std::optional<GSet> acc;
  const std::size_t orbits = 1 + uniform_index(rng, 3);
  for (std::size_t o = 0; o < orbits; ++o) {
    std::vector<const Subgroup*> fit;
    const std::size_t used = acc ? acc->size() : 0;
    for (const auto& h : subs)
      if (used + g.order() / h.order() <= max_points) fit.push_back(&h);
    if (fit.empty()) break;
    const GSet piece = GSet::cosets(g, *fit[uniform_index(rng, fit.size())]);
    acc = acc ? GSet::disjoint_union(*acc, piece) : piece;
  }
  if (!acc) acc = GSet::cosets(g, g.whole());
  return *acc;
}

/// Lambda as a direct sum of pieces: trivial cyclic summands, sign twists
/// through an index-2 subgroup, and permutation modules Z[G/H] or (Z/d)[G/H].
template <class Rng>
FundamentalGroup random_lambda(Rng& rng, const FiniteGroup& g, const ScenarioLimits& lim) {
  const std::size_t rank = 1 + uniform_index(rng, lim.max_lambda_rank);
  std::optional<GModule> acc;
  std::size_t have = 0;
  const Subgroup* index2 = nullptr;
  for (const auto& h : g.subgroups())
    if (2 * h.order() == g.order()) index2 = &h;
  while (have < rank) {
    const long long d = static_cast<long long>(uniform_index(rng, static_cast<std::size_t>(lim.max_invariant_factor) + 1));
    // d = 0 or 1 gives a free summand.
    const FgAbGroup cyc = d <= 1 ? FgAbGroup::free(1) : FgAbGroup::from_invariants({d});
    GModule piece = GModule::trivial(g, cyc);
    const std::size_t kind = uniform_index(rng, 3);
    if (kind == 1 && index2) {
      std::vector<IntMatrix> act;
      for (std::size_t x = 0; x < g.order(); ++x) act.push_back(IntMatrix{{index2->contains(int(x)) ? 1 : -1}});
      piece = GModule(g, cyc, act);
    } else if (kind == 2) {
      std::vector<const Subgroup*> fit;
      for (const auto& h : g.subgroups())
        if (g.order() / h.order() <= rank - have) fit.push_back(&h);
      const Subgroup& h = *fit[uniform_index(rng, fit.size())];
      const GModule perm = permutation_module(GSet::cosets(g, h));
      const std::size_t n = perm.rank();
      IntMatrix rel(n, d <= 1 ? 0 : n);
      for (std::size_t i = 0; d > 1 && i < n; ++i) rel(i, i) = d;
      piece = GModule(g, FgAbGroup(n, rel), perm.actions());
    }
    have += piece.rank();
    acc = acc ? direct_sum(*acc, piece) : piece;
  }
  return {*acc, "random"};
}

template <class Rng>
GlobalScenario random_scenario(Rng& rng, const ScenarioLimits& lim = {}) {
  const auto gs = groups_up_to(lim.max_group_order);
  const FiniteGroup& g = gs[uniform_index(rng, gs.size())];
  return GlobalScenario(PlaceSet(random_places(rng, g, lim.max_points)), random_lambda(rng, g, lim));
}

/// Random tower: Gamma(L/F) from the catalog, Gamma(L/K) a random normal
/// subgroup, L-places a union of coset spaces, K-places their images, Lambda
/// a random module over Gamma(K/F).
template <class Rng>
Tower random_tower(Rng& rng, const ScenarioLimits& lim = {}) {
  const auto gs = groups_up_to(lim.max_group_order);
  const FiniteGroup& g = gs[uniform_index(rng, gs.size())];
  std::vector<const Subgroup*> normals;
  for (const auto& h : g.subgroups())
    if (g.is_normal(h)) normals.push_back(&h);
  const Subgroup& n = *normals[uniform_index(rng, normals.size())];
  const auto q = g.quotient(n);
  const GSet upper = random_places(rng, g, lim.max_points);
  // K-points: orbits of Gamma(L/K) on the L-points, indexed by smallest member.
  std::vector<int> label(upper.size(), -1);
  std::vector<int> reps;
  for (std::size_t w = 0; w < upper.size(); ++w) {
    if (label[w] >= 0) continue;
    for (int x : n.elements) label[upper.act(x, int(w))] = static_cast<int>(reps.size());
    reps.push_back(int(w));
  }
  std::vector<std::vector<int>> perms(q.group.order(), std::vector<int>(reps.size()));
  for (std::size_t x = 0; x < g.order(); ++x)
    for (std::size_t v = 0; v < reps.size(); ++v) perms[q.projection[x]][v] = label[upper.act(int(x), reps[v])];
  const GSet lower_points(q.group, reps.size(), std::move(perms));
  GlobalScenario lower(PlaceSet(lower_points), random_lambda(rng, q.group, lim));
  return make_tower(lower, PlaceSet(upper), q.projection, label);
}

}  // namespace tate::random
