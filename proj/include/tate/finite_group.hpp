#pragma once

#include "tate/error.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

namespace tate {

class FreeResolution;

/// Default cap on group orders; cochain spaces grow like |G|^r.
inline constexpr std::size_t kDefaultMaxGroupOrder = 24;

/// A subgroup as a sorted element list plus a generating set.
struct Subgroup {
  std::vector<int> elements;
  std::vector<int> generators;

  std::size_t order() const noexcept { return elements.size(); }
  bool contains(int g) const { return std::binary_search(elements.begin(), elements.end(), g); }
};

/// A finite group given by its multiplication table. Elements are indices
/// 0 .. order-1; the law, identity and inverses are verified on construction.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(trivial_table(), {}, "1") {}

  /// `table[a][b]` is the index of a*b.
  FiniteGroup(std::vector<std::vector<int>> table, std::vector<int> generators, std::string name = "custom") {
    auto impl = std::make_shared<Impl>();
    impl->name = std::move(name);
    build(*impl, table);
    for (int g : generators)
      if (g < 0 || static_cast<std::size_t>(g) >= impl->order)
        throw InputError("group generator index " + std::to_string(g) + " out of range");
    if (generators.empty() || closure_of(*impl, generators).size() != impl->order)
      generators = greedy_generators(*impl, all_elements(impl->order));
    impl->generators = std::move(generators);
    impl_ = std::move(impl);
  }

  /// Closure of the given permutations of {0..n-1}. Elements are sorted
  /// lexicographically as permutations, so the identity gets index 0.
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                       std::size_t max_order = kDefaultMaxGroupOrder,
                                       std::string name = "custom") {
    if (gens.empty()) return FiniteGroup(trivial_table(), {}, std::move(name));
    const std::size_t n = gens.front().size();
    for (const auto& p : gens) {
      if (p.size() != n) throw InputError("permutation generators act on sets of different sizes");
      std::vector<int> s = p;
      std::sort(s.begin(), s.end());
      for (std::size_t i = 0; i < n; ++i)
        if (s[i] != static_cast<int>(i)) throw InputError("generator is not a permutation of 0..n-1");
    }
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<int>> seen{id};
    std::queue<std::vector<int>> todo;
    todo.push(id);
    while (!todo.empty()) {
      auto x = todo.front();
      todo.pop();
      for (const auto& g : gens) {
        std::vector<int> y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = g[x[i]];  // g after x
        if (seen.insert(y).second) {
          if (seen.size() > max_order)
            throw SizeGuardError("group generated by permutations exceeds the maximum order " +
                                 std::to_string(max_order));
          todo.push(std::move(y));
        }
      }
    }
    std::vector<std::vector<int>> elems(seen.begin(), seen.end());
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
    for (std::size_t a = 0; a < elems.size(); ++a)
      for (std::size_t b = 0; b < elems.size(); ++b) {
        std::vector<int> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = elems[a][elems[b][i]];  // a after b
        table[a][b] = index.at(c);
      }
    std::vector<int> gen_idx;
    for (const auto& g : gens) gen_idx.push_back(index.at(g));
    return FiniteGroup(std::move(table), std::move(gen_idx), std::move(name));
  }

  std::size_t order() const noexcept { return impl_->order; }
  int identity() const noexcept { return impl_->identity; }
  int mul(int a, int b) const { return impl_->table[static_cast<std::size_t>(a) * impl_->order + b]; }
  int inv(int a) const { return impl_->inverse[a]; }
  const std::vector<int>& generators() const noexcept { return impl_->generators; }
  const std::string& name() const noexcept { return impl_->name; }

  int power(int a, long long k) const {
    if (k < 0) return power(inv(a), -k);
    int r = identity();
    for (long long i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  std::size_t element_order(int a) const {
    std::size_t k = 1;
    for (int x = a; x != identity(); x = mul(x, a)) ++k;
    return k;
  }

  std::vector<std::vector<int>> table() const {
    std::vector<std::vector<int>> t(order(), std::vector<int>(order()));
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < order(); ++b) t[a][b] = mul(static_cast<int>(a), static_cast<int>(b));
    return t;
  }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (mul(int(a), int(b)) != mul(int(b), int(a))) return false;
    return true;
  }

  /// Sorted elements of the subgroup generated by gens.
  std::vector<int> closure(const std::vector<int>& gens) const { return closure_of(*impl_, gens); }

  bool is_subgroup(std::vector<int> elements) const {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || !std::binary_search(elements.begin(), elements.end(), identity())) return false;
    for (int a : elements)
      for (int b : elements)
        if (!std::binary_search(elements.begin(), elements.end(), mul(a, b))) return false;
    return true;
  }

  /// Verified subgroup from an element list (any order, duplicates allowed).
  Subgroup make_subgroup(std::vector<int> elements) const {
    for (int g : elements)
      if (g < 0 || static_cast<std::size_t>(g) >= order())
        throw InputError("subgroup element " + std::to_string(g) + " out of range");
    if (!is_subgroup(elements)) throw InputError("element set is not closed under the group law");
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    Subgroup s;
    s.generators = greedy_generators(*impl_, elements);
    s.elements = std::move(elements);
    return s;
  }

  Subgroup whole() const { return make_subgroup(all_elements(order())); }

  /// Every subgroup exactly once, sorted by (order, elements). Built by
  /// joining cyclic subgroups until no new subgroup appears.
  const std::vector<Subgroup>& subgroups() const {
    std::call_once(impl_->subgroups_once, [this] { impl_->subgroups = enumerate_subgroups(); });
    return impl_->subgroups;
  }

  bool is_normal(const Subgroup& h) const {
    for (std::size_t g = 0; g < order(); ++g)
      for (int x : h.elements)
        if (!h.contains(mul(mul(int(g), x), inv(int(g))))) return false;
    return true;
  }

  /// Subgroup as a group in its own right; embedding[i] is the parent index of
  /// element i. The identity is element 0.
  struct Embedded;
  Embedded as_group(const Subgroup& h) const;

  /// Quotient by a normal subgroup; projection[g] is the coset index of g.
  struct Quotient;
  Quotient quotient(const Subgroup& n) const;

  /// Shared state for lazily built resolutions (see resolution.hpp).
  std::mutex& cache_mutex() const { return impl_->cache_mutex; }
  std::shared_ptr<const FreeResolution>& resolution_cache() const { return impl_->resolution; }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.impl_ == b.impl_ || (a.impl_->order == b.impl_->order && a.impl_->table == b.impl_->table);
  }

 private:
  struct Impl {
    std::string name;
    std::size_t order = 0;
    int identity = 0;
    std::vector<int> table;
    std::vector<int> inverse;
    std::vector<int> generators;
    mutable std::once_flag subgroups_once;
    mutable std::vector<Subgroup> subgroups;
    mutable std::mutex cache_mutex;
    mutable std::shared_ptr<const FreeResolution> resolution;
  };

  static std::vector<std::vector<int>> trivial_table() { return {{0}}; }

  static std::vector<int> all_elements(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
  }

  static void build(Impl& p, const std::vector<std::vector<int>>& table) {
    const std::size_t n = table.size();
    if (n == 0) throw InputError("multiplication table is empty");
    p.order = n;
    p.table.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      if (table[a].size() != n) throw InputError("multiplication table row " + std::to_string(a) + " has wrong length");
      for (std::size_t b = 0; b < n; ++b) {
        const int c = table[a][b];
        if (c < 0 || static_cast<std::size_t>(c) >= n)
          throw InputError("multiplication table entry (" + std::to_string(a) + "," + std::to_string(b) +
                           ") out of range");
        p.table[a * n + b] = c;
      }
    }
    auto mul = [&](std::size_t a, std::size_t b) { return static_cast<std::size_t>(p.table[a * n + b]); };
    std::size_t e = n;
    for (std::size_t a = 0; a < n && e == n; ++a) {
      bool ok = true;
      for (std::size_t b = 0; b < n && ok; ++b) ok = mul(a, b) == b && mul(b, a) == b;
      if (ok) e = a;
    }
    if (e == n) throw InputError("multiplication table has no identity element");
    p.identity = static_cast<int>(e);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw InputError("multiplication table is not associative at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ")");
    p.inverse.assign(n, -1);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b)
        if (mul(a, b) == e && mul(b, a) == e) {
          p.inverse[a] = static_cast<int>(b);
          break;
        }
      if (p.inverse[a] < 0) throw InputError("element " + std::to_string(a) + " has no inverse");
    }
  }

  static std::vector<int> closure_of(const Impl& p, const std::vector<int>& gens) {
    std::vector<char> in(p.order, 0);
    std::vector<int> elems{p.identity};
    in[p.identity] = 1;
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (int g : gens) {
        const int y = p.table[static_cast<std::size_t>(elems[i]) * p.order + g];
        if (!in[y]) {
          in[y] = 1;
          elems.push_back(y);
        }
      }
    std::sort(elems.begin(), elems.end());
    return elems;
  }

  static std::vector<int> greedy_generators(const Impl& p, const std::vector<int>& elements) {
    std::vector<int> gens;
    std::vector<int> span = closure_of(p, gens);
    for (int g : elements) {
      if (std::binary_search(span.begin(), span.end(), g)) continue;
      gens.push_back(g);
      span = closure_of(p, gens);
      if (span.size() == elements.size()) break;
    }
    return gens;
  }

  std::vector<Subgroup> enumerate_subgroups() const {
    std::set<std::vector<int>> cyclic;
    for (std::size_t g = 0; g < order(); ++g) cyclic.insert(closure({int(g)}));
    std::set<std::vector<int>> found(cyclic.begin(), cyclic.end());
    std::vector<std::vector<int>> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (const auto& h : frontier)
        for (const auto& c : cyclic) {
          if (std::includes(h.begin(), h.end(), c.begin(), c.end())) continue;
          std::vector<int> gens = h;
          gens.insert(gens.end(), c.begin(), c.end());
          auto j = closure(gens);
          if (found.insert(j).second) next.push_back(std::move(j));
        }
      frontier = std::move(next);
    }
    std::vector<Subgroup> out;
    for (const auto& e : found) out.push_back(make_subgroup(e));
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
      return a.order() != b.order() ? a.order() < b.order() : a.elements < b.elements;
    });
    return out;
  }

  std::shared_ptr<Impl> impl_;
};

struct FiniteGroup::Embedded {
  FiniteGroup group;
  std::vector<int> embedding;
};

struct FiniteGroup::Quotient {
  FiniteGroup group;
  std::vector<int> projection;
};

inline FiniteGroup::Embedded FiniteGroup::as_group(const Subgroup& h) const {
  // Identity first, then the rest in parent order.
  std::vector<int> emb{identity()};
  for (int x : h.elements)
    if (x != identity()) emb.push_back(x);
  std::map<int, int> local;
  for (std::size_t i = 0; i < emb.size(); ++i) local[emb[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> t(emb.size(), std::vector<int>(emb.size()));
  for (std::size_t a = 0; a < emb.size(); ++a)
    for (std::size_t b = 0; b < emb.size(); ++b) {
      auto it = local.find(mul(emb[a], emb[b]));
      if (it == local.end()) throw InputError("element set is not closed under the group law");
      t[a][b] = it->second;
    }
  std::vector<int> gens;
  for (int g : h.generators) gens.push_back(local.at(g));
  return {FiniteGroup(std::move(t), std::move(gens), name() + "|sub" + std::to_string(h.order())), std::move(emb)};
}

inline FiniteGroup::Quotient FiniteGroup::quotient(const Subgroup& n) const {
  if (!is_normal(n)) throw InputError("quotient by a subgroup that is not normal");
  std::vector<int> proj(order(), -1);
  std::vector<int> reps;
  for (std::size_t g = 0; g < order(); ++g) {
    if (proj[g] >= 0) continue;
    const int idx = static_cast<int>(reps.size());
    reps.push_back(int(g));
    for (int x : n.elements) proj[mul(int(g), x)] = idx;
  }
  std::vector<std::vector<int>> t(reps.size(), std::vector<int>(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) t[a][b] = proj[mul(reps[a], reps[b])];
  std::vector<int> gens;
  for (int g : generators())
    if (proj[g] != 0) gens.push_back(proj[g]);
  return {FiniteGroup(std::move(t), std::move(gens), name() + "/N" + std::to_string(n.order())), std::move(proj)};
}

/// Built-in groups.
namespace groups {

inline FiniteGroup cyclic(std::size_t n) {
  if (n == 0) throw InputError("cyclic group of order 0");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<int>((a + b) % n);
  return FiniteGroup(std::move(t), n > 1 ? std::vector<int>{1} : std::vector<int>{}, "C" + std::to_string(n));
}

/// Elements (a, b) at index a * |B| + b.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order();
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (std::size_t x = 0; x < na * nb; ++x)
    for (std::size_t y = 0; y < na * nb; ++y)
      t[x][y] = a.mul(int(x / nb), int(y / nb)) * static_cast<int>(nb) + b.mul(int(x % nb), int(y % nb));
  std::vector<int> gens;
  for (int g : a.generators()) gens.push_back(g * static_cast<int>(nb) + b.identity());
  for (int g : b.generators()) gens.push_back(a.identity() * static_cast<int>(nb) + g);
  return FiniteGroup(std::move(t), std::move(gens), a.name() + "x" + b.name());
}

/// Dihedral group of order 2n as symmetries of an n-gon.
inline FiniteGroup dihedral(std::size_t n) {
  if (n < 3) {
    if (n == 1) return cyclic(2);
    return direct_product(cyclic(2), cyclic(2));
  }
  std::vector<int> rot(n), refl(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = static_cast<int>((i + 1) % n);
    refl[i] = static_cast<int>((n - i) % n);
  }
  return FiniteGroup::from_permutations({rot, refl}, 2 * n, "D" + std::to_string(2 * n));
}

inline FiniteGroup symmetric(std::size_t n) {
  if (n <= 1) return FiniteGroup();
  std::vector<int> cyc(n), tr(n);
  for (std::size_t i = 0; i < n; ++i) {
    cyc[i] = static_cast<int>((i + 1) % n);
    tr[i] = static_cast<int>(i);
  }
  std::swap(tr[0], tr[1]);
  std::size_t fact = 1;
  for (std::size_t i = 2; i <= n; ++i) fact *= i;
  return FiniteGroup::from_permutations({cyc, tr}, fact, "S" + std::to_string(n));
}

/// Quaternion group Q8 via its regular representation on {±1, ±i, ±j, ±k}.
inline FiniteGroup quaternion() {
  // Index encoding: 0:1 1:i 2:j 3:k 4:-1 5:-i 6:-j 7:-k.
  const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 4, 3, 6}, {2, 7, 4, 1}, {3, 2, 5, 4}};
  auto mul = [&](int a, int b) {
    int r = unit_mul[a % 4][b % 4];
    if ((a >= 4) != (b >= 4)) r = (r + 4) % 8;
    return r;
  };
  std::vector<int> li(8), lj(8);
  for (int x = 0; x < 8; ++x) {
    li[x] = mul(1, x);
    lj[x] = mul(2, x);
  }
  return FiniteGroup::from_permutations({li, lj}, 8, "Q8");
}

inline FiniteGroup alternating4() {
  return FiniteGroup::from_permutations({{1, 2, 0, 3}, {1, 0, 3, 2}}, 12, "A4");
}

inline FiniteGroup klein() { return direct_product(cyclic(2), cyclic(2)); }

/// Groups of order <= 12 used by the induced-module checks.
inline std::vector<FiniteGroup> small_catalog() {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 1; n <= 12; ++n) out.push_back(cyclic(n));
  out.push_back(klein());
  out.push_back(symmetric(3));
  out.push_back(dihedral(4));
  out.push_back(quaternion());
  out.push_back(alternating4());
  return out;
}

}  // namespace groups

}  // namespace tate
