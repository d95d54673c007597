#pragma once

#include "tate/local_global.hpp"
#include "tate/tn_triple.hpp"

#include <nlohmann/json.hpp>

namespace tatecalc {

using json = nlohmann::json;
using namespace tate;

/// Input error with the location of the offending field (a JSON pointer).
inline InputError at(const std::string& path, const std::string& msg) { return InputError(path + ": " + msg); }

// ---------------------------------------------------------------------------
// Reading.

inline const json& field(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) throw at(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw at(path, std::string("missing field '") + key + "'");
  return *it;
}

inline long long read_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw at(path, "expected an integer");
  return j.get<long long>();
}

inline std::size_t read_count(const json& j, const std::string& path) {
  const long long v = read_int(j, path);
  if (v < 0) throw at(path, "expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

inline Integer read_integer(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw at(path, "expected an integer");
}

inline IntVector read_vector(const json& j, const std::string& path) {
  if (!j.is_array()) throw at(path, "expected an array of integers");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(read_integer(j[i], path + "/" + std::to_string(i)));
  return v;
}

inline std::vector<int> read_indices(const json& j, const std::string& path) {
  if (!j.is_array()) throw at(path, "expected an array of indices");
  std::vector<int> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(static_cast<int>(read_count(j[i], path + "/" + std::to_string(i))));
  return v;
}

inline IntMatrix read_matrix(const json& j, const std::string& path, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows) throw at(path, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const IntVector r = read_vector(j[i], path + "/" + std::to_string(i));
    if (r.size() != cols) throw at(path + "/" + std::to_string(i), "expected " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = r[c];
  }
  return m;
}

/// Runs f, prefixing any library input error with the path.
template <class F>
auto located(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SizeGuardError&) {
    throw;
  } catch (const UnsupportedDegreeError& e) {
    throw UnsupportedDegreeError(path + ": " + e.what());
  } catch (const InputError& e) {
    if (std::string(e.what()).rfind(path, 0) == 0) throw;
    throw at(path, e.what());
  }
}

inline FiniteGroup read_group(const json& j, const std::string& path, std::size_t max_order) {
  FiniteGroup g = located(path, [&]() -> FiniteGroup {
    if (j.contains("catalog")) {
      const std::string name = field(j, path, "catalog").get<std::string>();
      auto param = [&] { return read_count(field(j, path, "n"), path + "/n"); };
      if (name == "trivial") return FiniteGroup();
      if (name == "cyclic") {
        const std::size_t n = param();
        if (n == 0) throw at(path + "/n", "order must be positive");
        if (n > max_order) throw SizeGuardError(path + ": group of order " + std::to_string(n) + " exceeds the size guard");
        return groups::cyclic(n);
      }
      if (name == "klein") return groups::klein();
      if (name == "quaternion") return groups::quaternion();
      if (name == "alternating4") return groups::alternating4();
      if (name == "dihedral") {
        const std::size_t n = param();
        if (n == 0) throw at(path + "/n", "dihedral needs n >= 1");
        if (2 * n > max_order) throw SizeGuardError(path + ": group of order " + std::to_string(2 * n) + " exceeds the size guard");
        return groups::dihedral(n);
      }
      if (name == "symmetric") {
        const std::size_t n = param();
        std::size_t order = 1;
        for (std::size_t i = 2; i <= n; ++i) {
          order *= i;
          if (order > max_order) throw SizeGuardError(path + ": symmetric group exceeds the size guard");
        }
        return groups::symmetric(n);
      }
      throw at(path + "/catalog", "unknown group '" + name + "'");
    }
    if (j.contains("permutations")) {
      const json& p = j["permutations"];
      if (!p.is_array()) throw at(path + "/permutations", "expected an array of permutations");
      std::vector<std::vector<int>> gens;
      for (std::size_t i = 0; i < p.size(); ++i) gens.push_back(read_indices(p[i], path + "/permutations/" + std::to_string(i)));
      return FiniteGroup::from_permutations(gens, max_order);
    }
    const json& t = field(j, path, "table");
    if (!t.is_array()) throw at(path + "/table", "expected an array of rows");
    if (t.size() > max_order) throw SizeGuardError(path + ": group of order " + std::to_string(t.size()) + " exceeds the size guard");
    std::vector<std::vector<int>> table;
    for (std::size_t i = 0; i < t.size(); ++i) table.push_back(read_indices(t[i], path + "/table/" + std::to_string(i)));
    std::vector<int> gens;
    if (j.contains("generators")) gens = read_indices(j["generators"], path + "/generators");
    return FiniteGroup(table, gens);
  });
  if (g.order() > max_order)
    throw SizeGuardError(path + ": group of order " + std::to_string(g.order()) + " exceeds the size guard");
  return g;
}

inline std::vector<IntMatrix> read_generator_action(const json& j, const std::string& path, const FiniteGroup& g,
                                                    std::size_t rank) {
  if (!j.contains("action")) return std::vector<IntMatrix>(g.generators().size(), IntMatrix::identity(rank));
  const json& a = j["action"];
  if (!a.is_array() || a.size() != g.generators().size())
    throw at(path + "/action", "expected one matrix per group generator (" + std::to_string(g.generators().size()) + ")");
  std::vector<IntMatrix> out;
  for (std::size_t s = 0; s < a.size(); ++s) out.push_back(read_matrix(a[s], path + "/action/" + std::to_string(s), rank, rank));
  return out;
}

inline GModule read_module(const json& j, const std::string& path, const FiniteGroup& g) {
  FgAbGroup u;
  if (j.contains("relations")) {
    const std::size_t n = read_count(field(j, path, "generators"), path + "/generators");
    const json& r = j["relations"];
    if (!r.is_array()) throw at(path + "/relations", "expected a list of relation vectors");
    std::vector<IntVector> cols;
    for (std::size_t i = 0; i < r.size(); ++i) {
      cols.push_back(read_vector(r[i], path + "/relations/" + std::to_string(i)));
      if (cols.back().size() != n) throw at(path + "/relations/" + std::to_string(i), "relation has the wrong length");
    }
    u = FgAbGroup(n, IntMatrix::from_columns(n, cols));
  } else {
    std::vector<long long> inv;
    if (j.contains("invariants"))
      for (const auto& x : read_vector(j["invariants"], path + "/invariants")) {
        if (x < 0 || !fits_int64(x)) throw at(path + "/invariants", "invariant factors must be nonnegative");
        inv.push_back(static_cast<long long>(x));
      }
    const std::size_t free = j.contains("free_rank") ? read_count(j["free_rank"], path + "/free_rank") : 0;
    // Keep one generator per listed factor so action matrices match the listing.
    IntMatrix rel(inv.size() + free, inv.size());
    for (std::size_t i = 0; i < inv.size(); ++i) rel(i, i) = inv[i];
    u = FgAbGroup(inv.size() + free, rel);
  }
  const auto act = read_generator_action(j, path, g, u.generator_count());
  return located(path, [&] { return GModule::from_generator_action(g, u, act); });
}

inline FundamentalGroup read_lambda(const json& j, const std::string& path, const FiniteGroup& g) {
  return located(path, [&]() -> FundamentalGroup {
    if (j.contains("catalog")) {
      const std::string name = j["catalog"].get<std::string>();
      std::size_t param = 0;
      if (j.contains("n")) param = read_count(j["n"], path + "/n");
      else if (j.contains("rank")) param = read_count(j["rank"], path + "/rank");
      else if (name != "norm_one_torus") throw at(path, "catalog entry needs 'n' or 'rank'");
      if (name == "norm_one_torus" && j.contains("kernel")) {
        const auto ker = read_indices(j["kernel"], path + "/kernel");
        return catalog::norm_one_torus(g, g.make_subgroup(ker));
      }
      return catalog::by_name(name, param, g);
    }
    const std::size_t rank = read_count(field(j, path, "rank"), path + "/rank");
    std::vector<IntVector> coroots;
    if (j.contains("coroots")) {
      const json& c = j["coroots"];
      if (!c.is_array()) throw at(path + "/coroots", "expected a list of vectors");
      for (std::size_t i = 0; i < c.size(); ++i) coroots.push_back(read_vector(c[i], path + "/coroots/" + std::to_string(i)));
    }
    return fundamental_group({rank, coroots, read_generator_action(j, path, g, rank)}, g);
  });
}

inline PlaceSet read_places(const json& j, const std::string& path, const FiniteGroup& g) {
  const std::size_t n = read_count(field(j, path, "points"), path + "/points");
  const json& im = field(j, path, "images");
  if (!im.is_array()) throw at(path + "/images", "expected one permutation per group generator");
  std::vector<std::vector<int>> images;
  for (std::size_t i = 0; i < im.size(); ++i) images.push_back(read_indices(im[i], path + "/images/" + std::to_string(i)));
  std::vector<std::optional<long long>> degrees;
  if (j.contains("degrees")) {
    const json& d = j["degrees"];
    if (!d.is_array()) throw at(path + "/degrees", "expected a list");
    for (std::size_t i = 0; i < d.size(); ++i)
      degrees.push_back(d[i].is_null() ? std::nullopt : std::optional<long long>(read_int(d[i], path + "/degrees/" + std::to_string(i))));
  }
  return located(path, [&] { return PlaceSet(GSet::from_generator_images(g, n, images), degrees); });
}

inline std::vector<IntVector> read_locals(const json& j, const std::string& path) {
  if (!j.is_array()) throw at(path, "expected one coordinate list per place");
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(j[i].is_null() ? IntVector{} : read_vector(j[i], path + "/" + std::to_string(i)));
  return out;
}

inline TNTripleCandidate read_triple(const json& j, const std::string& path, const json& root, std::size_t max_order) {
  if (j.contains("builtin")) {
    const std::string name = j["builtin"].get<std::string>();
    if (name != "cyclic_carry") throw at(path + "/builtin", "unknown triple '" + name + "'");
    const std::size_t n = read_count(field(j, path, "n"), path + "/n");
    if (n == 0) throw at(path + "/n", "order must be positive");
    if (n > max_order) throw SizeGuardError(path + ": group of order " + std::to_string(n) + " exceeds the size guard");
    const long long mult = j.contains("multiple") ? read_int(j["multiple"], path + "/multiple") : 1;
    return cyclic_carry_triple(n, mult);
  }
  const FiniteGroup g = read_group(field(root, "", "group"), "/group", max_order);
  const GModule x = read_module(field(j, path, "x"), path + "/x", g);
  const GModule a = read_module(field(j, path, "a"), path + "/a", g);
  const json& al = field(j, path, "alpha");
  const std::size_t n = g.order();
  if (!al.is_array() || al.size() != n * n)
    throw at(path + "/alpha", "expected " + std::to_string(n * n) + " matrices (index g*|G|+h)");
  PairingCocycle p;
  for (std::size_t t = 0; t < al.size(); ++t)
    p.values.push_back(read_matrix(al[t], path + "/alpha/" + std::to_string(t), a.rank(), x.rank()));
  return located(path + "/alpha", [&] { return make_triple(x, a, p); });
}

// ---------------------------------------------------------------------------
// Writing.

inline json to_json(const Integer& x) {
  if (fits_int64(x)) return json(static_cast<long long>(x));
  return json(to_string(x));
}

inline json to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline json to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline json to_json(const FgAbGroup& g) {
  json inv = json::array();
  for (const auto& d : g.invariant_factors()) inv.push_back(to_json(d));
  return {{"invariants", inv}, {"free_rank", g.free_rank()}, {"text", g.to_string()}};
}

/// A homomorphism written in canonical coordinates on both sides.
inline json map_json(const AbHom& f) {
  return {{"source", to_json(f.source())},
          {"target", to_json(f.target())},
          {"basis", "canonical"},
          {"matrix", to_json(f.canonical_matrix())}};
}

inline json indices_json(const std::vector<int>& v) { return json(v); }

}  // namespace tatecalc
