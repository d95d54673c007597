#pragma once

#include "tate/cohomology.hpp"
#include "tate/fundamental_group.hpp"

namespace tate {

/// Places of K as a G-set for G = Gamma(K/F). Orbits are the places of F;
/// the stabilizer of a point is its decomposition group.
class PlaceSet {
 public:
  explicit PlaceSet(GSet points, std::vector<std::optional<long long>> residue_degrees = {})
      : points_(std::move(points)), orbits_(points_.orbits()), degrees_(std::move(residue_degrees)) {
    if (points_.size() == 0) throw InputError("a place set needs at least one point");
    if (!degrees_.empty() && degrees_.size() != orbits_.size())
      throw InputError("expected one residue degree per place of F (" + std::to_string(orbits_.size()) + "), got " +
                       std::to_string(degrees_.size()));
    orbit_of_.assign(points_.size(), 0);
    for (std::size_t u = 0; u < orbits_.size(); ++u)
      for (int x : orbits_[u]) orbit_of_[x] = u;
  }

  const FiniteGroup& group() const noexcept { return points_.group(); }
  const GSet& gset() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const std::vector<std::vector<int>>& orbits() const noexcept { return orbits_; }
  std::size_t orbit_of(int x) const { return orbit_of_.at(x); }
  /// Smallest point of the orbit.
  int representative(std::size_t u) const { return orbits_.at(u).front(); }
  Subgroup decomposition_group(int x) const { return points_.stabilizer(x); }
  std::size_t local_degree(int x) const { return decomposition_group(x).order(); }
  /// Residue-field degree of each F-place; carried as metadata only.
  const std::vector<std::optional<long long>>& residue_degrees() const noexcept { return degrees_; }

 private:
  GSet points_;
  std::vector<std::vector<int>> orbits_;
  std::vector<std::size_t> orbit_of_;
  std::vector<std::optional<long long>> degrees_;
};

struct GlobalScenario {
  PlaceSet places;
  FundamentalGroup lambda;

  GlobalScenario(PlaceSet p, FundamentalGroup l) : places(std::move(p)), lambda(std::move(l)) {
    if (!(places.group() == lambda.module.group())) throw InputError("places and lambda are over different groups");
  }

  const FiniteGroup& group() const noexcept { return places.group(); }
  const GModule& lambda_module() const noexcept { return lambda.module; }
};

/// Z[V].
inline GModule divisor_module(const PlaceSet& p) { return permutation_module(p.gset()); }

/// Z[V]_0 with basis e_i = x_i - x_{i+1}, and its inclusion into Z[V].
struct DegreeZero {
  GModule module;
  AbHom inclusion;
};

/// Coordinates of a degree-zero vector of Z^m in the basis x_i - x_{i+1}.
inline IntVector degree_zero_coordinates(const IntVector& v) {
  IntVector c(v.size() - 1);
  Integer run = 0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    run += v[i];
    c[i] = run;
  }
  if (run + v.back() != 0) throw InternalError("vector does not have degree zero");
  return c;
}

inline DegreeZero degree_zero_module(const PlaceSet& p) {
  const std::size_t m = p.size();
  IntMatrix incl(m, m - 1);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    incl(i, i) = 1;
    incl(i + 1, i) = -1;
  }
  const GModule zv = divisor_module(p);
  std::vector<IntMatrix> act;
  for (std::size_t g = 0; g < p.group().order(); ++g) {
    IntMatrix a(m - 1, m - 1);
    const IntMatrix moved = zv.action(int(g)) * incl;
    for (std::size_t j = 0; j + 1 < m; ++j) a.set_column(j, degree_zero_coordinates(moved.column(j)));
    act.push_back(std::move(a));
  }
  GModule mod(GModule::Unchecked{}, p.group(), FgAbGroup::free(m - 1), std::move(act));
  AbHom inclusion(mod.underlying(), zv.underlying(), std::move(incl));
  return {std::move(mod), std::move(inclusion)};
}

/// A(F, G) = (Lambda (x) Z[V]_0)_Gamma, presented on the generators
/// lambda_i (x) e_j (index i * (|V| - 1) + j).
struct GlobalA {
  GModule tensor_module;
  GroupWithMap coinvariants;

  const FgAbGroup& group() const noexcept { return coinvariants.group; }
};

inline GlobalA global_A(const GlobalScenario& s) {
  GModule t = tensor(s.lambda_module(), degree_zero_module(s.places).module);
  GroupWithMap c = coinvariants(t);
  return {std::move(t), std::move(c)};
}

/// A(F, G)_tors.
inline FgAbGroup global_h1(const GlobalScenario& s) { return torsion_subgroup(global_A(s).group()).group; }

/// (Lambda)_{Gamma_w} for the decomposition group of the point w, presented
/// on the generators of Lambda.
inline FgAbGroup local_coinvariants(const GlobalScenario& s, int w) {
  return coinvariants(restriction(s.lambda_module(), s.places.decomposition_group(w))).group;
}

namespace detail {

/// Column of the Shapiro map for lambda_i (x) x_P, P in the orbit of w:
/// with P = g w, the class of g^{-1} lambda_i.
inline IntVector shapiro_column(const GlobalScenario& s, int w, int point, std::size_t i) {
  const auto g = s.places.gset().transporter(w, point);
  if (!g) throw InternalError("point is not in the orbit of the representative");
  return s.lambda_module().action(s.group().inv(*g)).column(i);
}

inline void check_orbit(const GlobalScenario& s, std::size_t u) {
  if (u >= s.places.orbits().size())
    throw InputError("place " + std::to_string(u) + " is not an orbit (there are " +
                     std::to_string(s.places.orbits().size()) + " places of F)");
}

}  // namespace detail

/// Localization A(F, G) -> (Lambda)_{Gamma_w} at the place u of F, through
/// Z[V]_0 -> Z[V] -> Z[V_u] and the Shapiro identification at w.
struct Localization {
  std::size_t place = 0;
  int representative = 0;
  Subgroup decomposition;
  FgAbGroup local_group;
  AbHom map;  ///< on generators: A(F, G) presentation -> local_group presentation
};

inline Localization localize(const GlobalScenario& s, const GlobalA& a, std::size_t u,
                             std::optional<int> representative = std::nullopt) {
  detail::check_orbit(s, u);
  const int w = representative.value_or(s.places.representative(u));
  if (s.places.orbit_of(w) != u) throw InputError("representative " + std::to_string(w) + " is not over place " + std::to_string(u));
  const std::size_t k = s.lambda_module().rank();
  const std::size_t m = s.places.size();
  IntMatrix mat(k, k * (m - 1));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j + 1 < m; ++j) {
      IntVector col(k);
      for (int point : {int(j), int(j + 1)}) {
        if (s.places.orbit_of(point) != u) continue;
        const IntVector c = detail::shapiro_column(s, w, point, i);
        const int sign = point == int(j) ? 1 : -1;
        for (std::size_t x = 0; x < k; ++x) col[x] += sign * c[x];
      }
      mat.set_column(i * (m - 1) + j, col);
    }
  FgAbGroup local = local_coinvariants(s, w);
  AbHom map(a.group(), local, std::move(mat));
  return {u, w, s.places.decomposition_group(w), std::move(local), std::move(map)};
}

inline Localization localize(const GlobalScenario& s, std::size_t u, std::optional<int> representative = std::nullopt) {
  return localize(s, global_A(s), u, representative);
}

/// (Lambda (x) Z[V_u])_Gamma with generators lambda_i (x) x_P over the points
/// of the orbit (index i * |orbit| + p).
inline FgAbGroup induced_coinvariants(const GlobalScenario& s, std::size_t u) {
  detail::check_orbit(s, u);
  const auto& orbit = s.places.orbits()[u];
  std::vector<std::vector<int>> perms(s.group().order(), std::vector<int>(orbit.size()));
  for (std::size_t g = 0; g < s.group().order(); ++g)
    for (std::size_t p = 0; p < orbit.size(); ++p) {
      const int y = s.places.gset().act(int(g), orbit[p]);
      perms[g][p] = static_cast<int>(std::find(orbit.begin(), orbit.end(), y) - orbit.begin());
    }
  const GModule zu = permutation_module(GSet(s.group(), orbit.size(), std::move(perms)));
  return coinvariants(tensor(s.lambda_module(), zu)).group;
}

/// Shapiro map (Lambda (x) Z[V_u])_Gamma -> (Lambda)_{Gamma_w}.
inline AbHom shapiro_map(const GlobalScenario& s, std::size_t u, int w) {
  detail::check_orbit(s, u);
  if (s.places.orbit_of(w) != u) throw InputError("representative is not over the place");
  const auto& orbit = s.places.orbits()[u];
  const std::size_t k = s.lambda_module().rank();
  IntMatrix mat(k, k * orbit.size());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t p = 0; p < orbit.size(); ++p) mat.set_column(i * orbit.size() + p, detail::shapiro_column(s, w, orbit[p], i));
  return AbHom(induced_coinvariants(s, u), local_coinvariants(s, w), std::move(mat));
}

/// Identification (Lambda)_{Gamma_w} -> (Lambda)_{Gamma_w2} for w2 = g w,
/// the class of lambda going to the class of g lambda.
inline AbHom change_of_representative(const GlobalScenario& s, int w, int w2) {
  const auto g = s.places.gset().transporter(w, w2);
  if (!g) throw InputError("points " + std::to_string(w) + " and " + std::to_string(w2) + " lie over different places");
  return AbHom(local_coinvariants(s, w), local_coinvariants(s, w2), s.lambda_module().action(*g));
}

/// (Lambda)_Gamma.
inline FgAbGroup global_coinvariants(const GlobalScenario& s) { return coinvariants(s.lambda_module()).group; }

/// Sum over places of the projections (Lambda)_{Gamma_u} -> (Lambda)_Gamma.
/// Locals are canonical coordinates; a missing or empty entry means zero.
inline IntVector sum_to_global(const GlobalScenario& s, const std::vector<IntVector>& locals) {
  if (locals.size() > s.places.orbits().size())
    throw InputError("got " + std::to_string(locals.size()) + " local classes for " +
                     std::to_string(s.places.orbits().size()) + " places");
  const FgAbGroup global = global_coinvariants(s);
  IntVector total(s.lambda_module().rank());
  for (std::size_t u = 0; u < locals.size(); ++u) {
    if (locals[u].empty()) continue;
    const FgAbGroup local = local_coinvariants(s, s.places.representative(u));
    if (locals[u].size() != local.canonical_rank())
      throw InputError("local class at place " + std::to_string(u) + " needs " +
                       std::to_string(local.canonical_rank()) + " coordinates for " + local.to_string());
    for (std::size_t c = 0; c < locals[u].size(); ++c) {
      const Integer mod = local.canonical_modulus(c);
      if (mod != 0 && (locals[u][c] < 0 || locals[u][c] >= mod))
        throw InputError("coordinate " + std::to_string(c) + " of the local class at place " + std::to_string(u) +
                         " is out of range for " + local.to_string());
    }
    const IntVector x = local.from_canonical(locals[u]);
    for (std::size_t i = 0; i < x.size(); ++i) total[i] += x[i];
  }
  return global.to_canonical(total);
}

struct ObstructionReport {
  std::vector<IntVector> locals;           ///< canonical coordinates per place
  std::vector<int> representatives;        ///< chosen point over each place
  std::vector<FgAbGroup> local_groups;
  FgAbGroup global_group;                  ///< (Lambda)_Gamma
  IntVector sum;                           ///< canonical coordinates in (Lambda)_Gamma
  bool in_image = false;
  std::optional<IntVector> certificate;    ///< canonical coordinates in A(F, G)
  std::optional<IntVector> obstruction;    ///< nonzero element of (Lambda)_Gamma
};

namespace detail {

struct StackedLocalization {
  GlobalA a;
  std::vector<Localization> locs;
  IntMatrix stacked;    ///< A generators -> concatenated local generators
  IntMatrix relations;  ///< block diagonal relations of the local groups
};

inline StackedLocalization stack_localizations(const GlobalScenario& s) {
  StackedLocalization out{global_A(s), {}, IntMatrix(), IntMatrix()};
  std::vector<IntMatrix> blocks;
  IntMatrix rel(0, 0);
  for (std::size_t u = 0; u < s.places.orbits().size(); ++u) {
    out.locs.push_back(localize(s, out.a, u));
    blocks.push_back(out.locs.back().map.matrix());
    rel = block_diagonal(rel, out.locs.back().local_group.relations());
  }
  IntMatrix st = blocks.front();
  for (std::size_t b = 1; b < blocks.size(); ++b) st = vconcat(st, blocks[b]);
  out.stacked = std::move(st);
  out.relations = std::move(rel);
  return out;
}

}  // namespace detail

/// Decides whether a family of local classes comes from A(F, G): (a) by the
/// vanishing of its sum in (Lambda)_Gamma, (b) by solving for a preimage.
inline ObstructionReport check_in_image(const GlobalScenario& s, std::vector<IntVector> locals) {
  const std::size_t places = s.places.orbits().size();
  const IntVector sum = sum_to_global(s, locals);  // validates the input
  const auto st = detail::stack_localizations(s);
  locals.resize(places);
  IntVector target;
  for (std::size_t u = 0; u < places; ++u) {
    const FgAbGroup& lg = st.locs[u].local_group;
    if (locals[u].empty()) locals[u].assign(lg.canonical_rank(), 0);
    const IntVector x = lg.from_canonical(locals[u]);
    target.insert(target.end(), x.begin(), x.end());
  }
  ObstructionReport rep;
  rep.locals = locals;
  for (const auto& l : st.locs) {
    rep.representatives.push_back(l.representative);
    rep.local_groups.push_back(l.local_group);
  }
  rep.global_group = global_coinvariants(s);
  rep.sum = sum;
  const bool by_sum = is_zero(sum);
  const auto sol = solve_integer(hconcat(st.stacked, st.relations), target);
  const bool by_lattice = sol.has_value();
  if (by_sum != by_lattice)
    throw InternalError("image criterion disagrees with direct lattice membership");
  rep.in_image = by_sum;
  if (by_lattice) {
    IntVector pre(sol->begin(), sol->begin() + static_cast<std::ptrdiff_t>(st.stacked.cols()));
    for (std::size_t u = 0; u < places; ++u) {
      const IntVector got = st.locs[u].local_group.to_canonical(st.locs[u].map.matrix() * pre);
      if (got != locals[u]) throw InternalError("certificate does not localize to the given classes");
    }
    rep.certificate = st.a.group().to_canonical(pre);
  } else {
    rep.obstruction = sum;
  }
  return rep;
}

/// Image of the stacked localizations equals the kernel of the sum map, both
/// as lattices of local generator vectors (each containing the relations).
inline bool verify_exactness(const GlobalScenario& s) {
  const auto st = detail::stack_localizations(s);
  const std::size_t dim = st.stacked.rows();
  std::vector<IntVector> img;
  for (std::size_t j = 0; j < st.stacked.cols(); ++j) img.push_back(st.stacked.column(j));
  for (std::size_t j = 0; j < st.relations.cols(); ++j) img.push_back(st.relations.column(j));
  const Lattice image = Lattice::span(dim, img);
  const std::size_t k = s.lambda_module().rank();
  IntMatrix sum(k, dim);
  for (std::size_t b = 0; b < st.locs.size(); ++b)
    for (std::size_t i = 0; i < k; ++i) sum(i, b * k + i) = 1;
  const FgAbGroup source(dim, st.relations);
  const Lattice ker = preimage_of_zero(AbHom(source, global_coinvariants(s), sum));
  return image.contains(ker) && ker.contains(image);
}

// ---------------------------------------------------------------------------
// Towers L / K / F.

/// Scenario for K over Gamma(K/F), places of L over Gamma(L/F), the quotient
/// map Gamma(L/F) -> Gamma(K/F) and the covering map of points. Lambda over L
/// is the inflation of Lambda over K.
struct Tower {
  GlobalScenario lower;
  GlobalScenario upper;
  std::vector<int> projection;
  std::vector<int> cover;
  Subgroup kernel;  ///< Gamma(L/K)

  std::size_t degree() const { return kernel.order(); }
};

inline Tower make_tower(const GlobalScenario& lower, const PlaceSet& upper_places, std::vector<int> projection,
                        std::vector<int> cover) {
  const FiniteGroup& gl = upper_places.group();
  const FiniteGroup& gk = lower.group();
  if (projection.size() != gl.order()) throw InputError("tower projection needs one image per element of the upper group");
  for (int x : projection)
    if (x < 0 || static_cast<std::size_t>(x) >= gk.order()) throw InputError("tower projection value out of range");
  for (std::size_t a = 0; a < gl.order(); ++a)
    for (std::size_t b = 0; b < gl.order(); ++b)
      if (projection[gl.mul(int(a), int(b))] != gk.mul(projection[a], projection[b]))
        throw InputError("tower projection is not a homomorphism at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  std::vector<char> hit(gk.order(), 0);
  for (int x : projection) hit[x] = 1;
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) throw InputError("tower projection is not surjective");
  std::vector<int> ker;
  for (std::size_t g = 0; g < gl.order(); ++g)
    if (projection[g] == gk.identity()) ker.push_back(int(g));
  Subgroup kernel = gl.make_subgroup(ker);

  if (cover.size() != upper_places.size()) throw InputError("cover needs one K-point per L-point");
  std::vector<char> covered(lower.places.size(), 0);
  for (std::size_t w = 0; w < cover.size(); ++w) {
    if (cover[w] < 0 || static_cast<std::size_t>(cover[w]) >= lower.places.size())
      throw InputError("cover value for L-point " + std::to_string(w) + " out of range");
    covered[cover[w]] = 1;
    for (std::size_t g = 0; g < gl.order(); ++g)
      if (cover[upper_places.gset().act(int(g), int(w))] != lower.places.gset().act(projection[g], cover[w]))
        throw InputError("cover is not equivariant at L-point " + std::to_string(w) + " and element " + std::to_string(g));
  }
  for (std::size_t v = 0; v < covered.size(); ++v)
    if (!covered[v]) throw InputError("K-point " + std::to_string(v) + " has no L-point over it");
  // Gamma(L/K) permutes the points over each v transitively.
  for (std::size_t w = 0; w < cover.size(); ++w)
    for (std::size_t w2 = 0; w2 < cover.size(); ++w2) {
      if (cover[w] != cover[w2]) continue;
      bool found = false;
      for (int n : ker) found = found || upper_places.gset().act(n, int(w)) == int(w2);
      if (!found)
        throw InputError("L-points " + std::to_string(w) + " and " + std::to_string(w2) + " over K-point " +
                         std::to_string(cover[w]) + " are not conjugate under Gamma(L/K)");
    }
  std::vector<IntMatrix> act;
  for (std::size_t g = 0; g < gl.order(); ++g) act.push_back(lower.lambda_module().action(projection[g]));
  FundamentalGroup inflated{GModule(GModule::Unchecked{}, gl, lower.lambda_module().underlying(), std::move(act)),
                            lower.lambda.label};
  return {lower, GlobalScenario(upper_places, std::move(inflated)), std::move(projection), std::move(cover),
          std::move(kernel)};
}

/// p : Z[V_K] -> Z[V_L], v -> sum over w | v of [L_w : K_v] w, and its
/// restriction to degree-zero parts (in the bases x_i - x_{i+1}).
struct Transition {
  std::vector<long long> local_degrees;  ///< [L_w : K_v] per L-point
  IntMatrix full;
  IntMatrix degree_zero;
};

inline Transition transition_p(const Tower& t, const std::vector<long long>& given_degrees = {}) {
  const std::size_t ml = t.upper.places.size(), mk = t.lower.places.size();
  Transition out;
  for (std::size_t w = 0; w < ml; ++w) {
    const Subgroup st = t.upper.places.decomposition_group(int(w));
    long long d = 0;
    for (int x : st.elements) d += t.kernel.contains(x) ? 1 : 0;
    out.local_degrees.push_back(d);
  }
  if (!given_degrees.empty()) {
    if (given_degrees.size() != ml) throw InputError("expected one local degree per L-point");
    out.local_degrees = given_degrees;
  }
  const long long lk = static_cast<long long>(t.degree());
  for (std::size_t v = 0; v < mk; ++v) {
    long long total = 0;
    for (std::size_t w = 0; w < ml; ++w)
      if (t.cover[w] == int(v)) total += out.local_degrees[w];
    if (total != lk)
      throw InputError("local degrees over K-point " + std::to_string(v) + " sum to " + std::to_string(total) +
                       ", expected [L:K] = " + std::to_string(lk));
  }
  out.full = IntMatrix(ml, mk);
  for (std::size_t w = 0; w < ml; ++w) out.full(w, t.cover[w]) = out.local_degrees[w];
  const GModule zk = divisor_module(t.lower.places), zl = divisor_module(t.upper.places);
  for (std::size_t g = 0; g < t.projection.size(); ++g)
    if (!(out.full * zk.action(t.projection[g]) == zl.action(int(g)) * out.full))
      throw InputError("transition map is not equivariant for element " + std::to_string(g) +
                       " (local degrees inconsistent with the decomposition groups)");
  out.degree_zero = IntMatrix(ml - 1, mk - 1);
  for (std::size_t j = 0; j + 1 < mk; ++j) {
    IntVector e(mk);
    e[j] = 1;
    e[j + 1] = -1;
    out.degree_zero.set_column(j, degree_zero_coordinates(out.full * e));
  }
  return out;
}

struct SquareCheck {
  std::size_t place = 0;
  int lower_representative = 0;
  int upper_representative = 0;
  bool commutes = false;         ///< with the natural map on local coinvariants
  bool commutes_scaled = false;  ///< with [L:K] times the natural map
};

struct TowerReport {
  std::size_t degree = 1;  ///< [L:K]
  FgAbGroup lower_A;
  FgAbGroup upper_A;
  AbHom map;  ///< canonical coordinates on both sides
  bool injective = false;
  bool surjective = false;
  bool bijective = false;
  bool groups_isomorphic = false;
  bool torsion_bijective = false;
  std::vector<SquareCheck> squares;
  bool squares_commute = false;
};

inline TowerReport tower_compare(const Tower& t, const std::vector<long long>& given_degrees = {}) {
  const Transition p = transition_p(t, given_degrees);
  const GlobalA ak = global_A(t.lower), al = global_A(t.upper);
  const std::size_t k = t.lower.lambda_module().rank();
  const AbHom induced(ak.group(), al.group(), kronecker(IntMatrix::identity(k), p.degree_zero));
  TowerReport rep{t.degree(), ak.group(), al.group(), induced, false, false, false, false, false, {}, true};
  rep.map = AbHom(detail::canonical_copy(ak.group()), detail::canonical_copy(al.group()), induced.canonical_matrix());
  rep.injective = induced.is_injective();
  rep.surjective = induced.is_surjective();
  rep.bijective = rep.injective && rep.surjective;
  rep.groups_isomorphic = ak.group() == al.group();
  {
    const auto tk = torsion_subgroup(ak.group());
    const auto tl = torsion_subgroup(al.group());
    const AbHom into(tk.group, al.group(), induced.matrix() * tk.map.matrix());
    // The image of torsion lies in torsion; compare orders after checking injectivity.
    rep.torsion_bijective = into.is_injective() && tk.group.order() == tl.group.order();
  }
  for (std::size_t u = 0; u < t.lower.places.orbits().size(); ++u) {
    const int v0 = t.lower.places.representative(u);
    std::size_t uu = t.upper.places.orbits().size();
    for (std::size_t w = 0; w < t.cover.size(); ++w)
      if (t.cover[w] == v0) uu = t.upper.places.orbit_of(int(w));
    const int w0 = t.upper.places.representative(uu);
    const auto s = t.lower.places.gset().transporter(v0, t.cover[w0]);
    const Localization lk = localize(t.lower, ak, u);
    const Localization ll = localize(t.upper, al, uu);
    const IntMatrix natural = t.lower.lambda_module().action(*s);
    const AbHom vertical(lk.local_group, ll.local_group, natural);
    const AbHom scaled(lk.local_group, ll.local_group, Integer(t.degree()) * natural);
    SquareCheck sq{u, v0, w0, false, false};
    const AbHom down_right = compose(ll.map, induced);
    sq.commutes = down_right.equals(compose(vertical, lk.map));
    sq.commutes_scaled = down_right.equals(compose(scaled, lk.map));
    rep.squares_commute = rep.squares_commute && sq.commutes;
    rep.squares.push_back(sq);
  }
  return rep;
}

}  // namespace tate
