#include "scenario_io.hpp"

#include "tate/random_scenarios.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace tatecalc;

namespace {

constexpr const char* kVersion = "1.0.0";

enum ExitCode { kOk = 0, kInput = 2, kSizeGuard = 3, kInternal = 4 };

struct Settings {
  std::string input;
  bool json_out = false;
  std::vector<int> window;  // empty: take it from the input, else [-3, 3]
  std::size_t max_group_order = kDefaultMaxGroupOrder;
  std::optional<int> degree;
  unsigned seed = 1;
  std::size_t count = 20;
};

json load_input(const std::string& path) {
  if (path.empty()) throw InputError("--input: a scenario file is required");
  std::ifstream in(path);
  if (!in) throw InputError("--input: cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

DegreeWindow window_of(const Settings& s, const json& in) {
  std::vector<int> w = s.window.empty() ? std::vector<int>{-3, 3} : s.window;
  if (s.window.empty() && in.contains("window")) {
    const IntVector v = read_vector(in["window"], "/window");
    if (v.size() != 2 || !fits_int64(v[0]) || !fits_int64(v[1])) throw at("/window", "expected [lo, hi]");
    w = {static_cast<int>(static_cast<long long>(v[0])), static_cast<int>(static_cast<long long>(v[1]))};
  }
  if (w[0] > w[1]) throw InputError("window: lo must not exceed hi");
  return {w[0], w[1]};
}

TateOptions options_of(const Settings& s, DegreeWindow w) { return {w, s.max_group_order}; }

json subgroup_json(const Subgroup& h) { return {{"elements", h.elements}, {"order", h.order()}}; }

GlobalScenario read_scenario(const json& in, const Settings& s) {
  const FiniteGroup g = read_group(field(in, "", "group"), "/group", s.max_group_order);
  PlaceSet places = read_places(field(in, "", "places"), "/places", g);
  FundamentalGroup lambda = read_lambda(field(in, "", "lambda"), "/lambda", g);
  return GlobalScenario(std::move(places), std::move(lambda));
}

json cmd_local(const json& in, const Settings& s) {
  const FiniteGroup g = read_group(field(in, "", "group"), "/group", s.max_group_order);
  const FundamentalGroup l = read_lambda(field(in, "", "lambda"), "/lambda", g);
  return {{"lambda", to_json(l.module.underlying())},
          {"label", l.label},
          {"basic_classes", to_json(local_basic_classes(l))},
          {"h1", to_json(local_h1(l))}};
}

json cmd_global(const json& in, const Settings& s) {
  const GlobalScenario sc = read_scenario(in, s);
  const GlobalA a = global_A(sc);
  json places = json::array();
  const auto& deg = sc.places.residue_degrees();
  for (std::size_t u = 0; u < sc.places.orbits().size(); ++u) {
    const Localization loc = localize(sc, a, u);
    places.push_back({{"place", u},
                      {"points", sc.places.orbits()[u]},
                      {"representative", loc.representative},
                      {"decomposition_group", subgroup_json(loc.decomposition)},
                      {"local_degree", sc.places.local_degree(loc.representative)},
                      {"residue_degree", deg.empty() || !deg[u] ? json(nullptr) : json(*deg[u])},
                      {"local_group", to_json(loc.local_group)},
                      {"localization", map_json(loc.map)}});
  }
  return {{"A", to_json(a.group())},
          {"h1", to_json(global_h1(sc))},
          {"global_coinvariants", to_json(global_coinvariants(sc))},
          {"places", places},
          {"exact", verify_exactness(sc)}};
}

json cmd_obstruction(const json& in, const Settings& s) {
  const GlobalScenario sc = read_scenario(in, s);
  const auto locals = read_locals(field(in, "", "locals"), "/locals");
  const ObstructionReport r = located("/locals", [&] { return check_in_image(sc, locals); });
  json groups = json::array();
  for (const auto& g : r.local_groups) groups.push_back(to_json(g));
  json loc = json::array();
  for (const auto& v : r.locals) loc.push_back(to_json(v));
  return {{"locals", loc},
          {"representatives", r.representatives},
          {"local_groups", groups},
          {"global_coinvariants", to_json(r.global_group)},
          {"sum", to_json(r.sum)},
          {"in_image", r.in_image},
          {"certificate", r.certificate ? to_json(*r.certificate) : json(nullptr)},
          {"obstruction", r.obstruction ? to_json(*r.obstruction) : json(nullptr)}};
}

json cmd_tate(const json& in, const Settings& s, DegreeWindow w) {
  const FiniteGroup g = read_group(field(in, "", "group"), "/group", s.max_group_order);
  const GModule m = read_module(field(in, "", "module"), "/module", g);
  int r = 0;
  if (s.degree) r = *s.degree;
  else {
    const long long d = read_int(field(in, "", "degree"), "/degree");
    if (d < -kMaxSupportedDegree || d > kMaxSupportedDegree) throw UnsupportedDegreeError("/degree: out of range");
    r = static_cast<int>(d);
  }
  return {{"degree", r}, {"module", to_json(m.underlying())}, {"group", to_json(tate_cohomology(m, r, options_of(s, w)))}};
}

json cmd_tn(const json& in, const Settings& s, DegreeWindow w, bool& complete) {
  const TNTripleCandidate t = read_triple(field(in, "", "triple"), "/triple", in, s.max_group_order);
  const TateOptions opts = options_of(s, w);
  const TNReport tn = check_weak_tn(t, w, opts);
  const TNReport rg = check_rigidity(t, opts);
  json rows = json::array();
  for (const auto& r : tn.rows)
    rows.push_back({{"subgroup", r.subgroup},
                    {"subgroup_generators", r.subgroup_generators},
                    {"degree", r.degree},
                    {"source", to_json(r.source)},
                    {"target", to_json(r.target)},
                    {"matrix", to_json(r.matrix)},
                    {"is_isomorphism", r.is_isomorphism}});
  json rig = json::array();
  for (const auto& r : rg.rigidity)
    rig.push_back({{"subgroup", r.subgroup},
                   {"subgroup_generators", r.subgroup_generators},
                   {"h1", to_json(r.h1)},
                   {"is_trivial", r.is_trivial}});
  json om = json::array();
  for (const auto* rep : {&tn, &rg})
    for (const auto& o : rep->omissions)
      om.push_back({{"subgroup", o.subgroup}, {"degree", o.degree ? json(*o.degree) : json(nullptr)}, {"reason", o.reason}});
  complete = tn.complete() && rg.complete();
  return {{"group_order", t.group.order()},
          {"rows", rows},
          {"rigidity", rig},
          {"omissions", om},
          {"weak_tn", tn.weak_tn},
          {"rigid", rg.rigid},
          {"complete", complete}};
}

json cmd_tower(const json& in, const Settings& s) {
  const GlobalScenario lower = read_scenario(in, s);
  const json& t = field(in, "", "tower");
  const FiniteGroup gl = read_group(field(t, "/tower", "group"), "/tower/group", s.max_group_order);
  const PlaceSet upper = read_places(field(t, "/tower", "places"), "/tower/places", gl);
  const auto proj = read_indices(field(t, "/tower", "projection"), "/tower/projection");
  const auto cover = read_indices(field(t, "/tower", "cover"), "/tower/cover");
  std::vector<long long> degrees;
  if (t.contains("local_degrees"))
    for (const auto& d : read_vector(t["local_degrees"], "/tower/local_degrees")) {
      if (!fits_int64(d)) throw at("/tower/local_degrees", "degree out of range");
      degrees.push_back(static_cast<long long>(d));
    }
  const Tower tw = located("/tower", [&] { return make_tower(lower, upper, proj, cover); });
  const Transition p = located("/tower/local_degrees", [&] { return transition_p(tw, degrees); });
  const TowerReport r = tower_compare(tw, degrees);
  json sq = json::array();
  for (const auto& q : r.squares)
    sq.push_back({{"place", q.place},
                  {"lower_representative", q.lower_representative},
                  {"upper_representative", q.upper_representative},
                  {"commutes", q.commutes},
                  {"commutes_scaled", q.commutes_scaled}});
  return {{"degree", r.degree},
          {"local_degrees", p.local_degrees},
          {"divisor_map", to_json(p.full)},
          {"lower_A", to_json(r.lower_A)},
          {"upper_A", to_json(r.upper_A)},
          {"map", map_json(r.map)},
          {"injective", r.injective},
          {"surjective", r.surjective},
          {"bijective", r.bijective},
          {"groups_isomorphic", r.groups_isomorphic},
          {"torsion_bijective", r.torsion_bijective},
          {"squares", sq},
          {"squares_commute", r.squares_commute}};
}

json cmd_selftest(const Settings& s) {
  std::mt19937 rng(s.seed);
  random::ScenarioLimits lim;
  lim.max_group_order = std::min<std::size_t>(lim.max_group_order, s.max_group_order);
  std::size_t exact = 0, shapiro = 0, decided = 0;
  for (std::size_t i = 0; i < s.count; ++i) {
    const GlobalScenario sc = random::random_scenario(rng, lim);
    if (verify_exactness(sc)) ++exact;
    bool ok = true;
    for (std::size_t u = 0; u < sc.places.orbits().size(); ++u)
      ok = ok && shapiro_map(sc, u, sc.places.representative(u)).is_isomorphism();
    if (ok) ++shapiro;
    std::vector<IntVector> locals;
    for (std::size_t u = 0; u < sc.places.orbits().size(); ++u) {
      const FgAbGroup lg = local_coinvariants(sc, sc.places.representative(u));
      IntVector c(lg.canonical_rank());
      for (std::size_t k = 0; k < c.size(); ++k) {
        const Integer mod = lg.canonical_modulus(k);
        c[k] = static_cast<long long>(rng() % 5) % (mod == 0 ? Integer(5) : mod);
      }
      locals.push_back(c);
    }
    check_in_image(sc, locals);  // throws on disagreement
    ++decided;
  }
  return {{"seed", s.seed},
          {"scenarios", s.count},
          {"exact", exact},
          {"shapiro_isomorphisms", shapiro},
          {"membership_decided", decided},
          {"passed", exact == s.count && shapiro == s.count && decided == s.count}};
}

// Plain-text rendering of a result document.
bool is_group(const json& j) { return j.is_object() && j.contains("text") && j.contains("invariants"); }

bool is_flat(const json& j) {
  if (!j.is_array()) return !j.is_object();
  for (const auto& x : j)
    if (x.is_object() || (x.is_array() && !is_flat(x))) return false;
  return true;
}

void render(std::ostream& os, const json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (is_group(v)) {
        os << pad << k << ": " << v["text"].get<std::string>() << "\n";
      } else if (is_flat(v)) {
        os << pad << k << ": " << v.dump() << "\n";
      } else {
        os << pad << k << ":\n";
        render(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (is_group(j[i])) {
        os << pad << "- " << j[i]["text"].get<std::string>() << "\n";
      } else if (is_flat(j[i])) {
        os << pad << "- " << j[i].dump() << "\n";
      } else {
        os << pad << "- [" << i << "]\n";
        render(os, j[i], indent + 4);
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

json error_document(const std::string& kind, const std::string& msg) {
  return {{"error", {{"kind", kind}, {"message", msg}}}, {"tool", {{"name", "tatecalc"}, {"version", kVersion}}}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tate cohomology and local-global computations for finite Galois modules"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Settings s;
  auto add_common = [&](CLI::App* c, bool needs_input) {
    auto* o = c->add_option("--input,-i", s.input, "scenario JSON file");
    if (needs_input) o->required()->check(CLI::ExistingFile);
    c->add_flag("--json", s.json_out, "print a JSON document instead of a table");
    c->add_option("--window", s.window, "degree window lo hi")->expected(2);
    c->add_option("--max-group-order", s.max_group_order, "size guard on group orders")->capture_default_str();
  };
  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {{"local", "local targets (Lambda)_Gamma and its torsion"},
                      {"global", "A(F, G), its torsion and the localization maps"},
                      {"obstruction", "decide whether a family of local classes comes from A(F, G)"},
                      {"tn", "weak Tate-Nakayama and rigidity report for a triple"},
                      {"tate", "a single Tate cohomology group"},
                      {"tower", "compare A along a tower of extensions"},
                      {"selftest", "randomized consistency checks"}};
  std::map<std::string, CLI::App*> cmds;
  for (const auto& sub : subs) {
    CLI::App* c = app.add_subcommand(sub.name, sub.help);
    add_common(c, std::string(sub.name) != "selftest");
    cmds[sub.name] = c;
  }
  int degree = 0;
  auto* deg_opt = cmds["tate"]->add_option("--degree,-r", degree, "cohomological degree");
  cmds["selftest"]->add_option("--seed", s.seed, "random seed")->capture_default_str();
  cmds["selftest"]->add_option("--count", s.count, "number of random scenarios")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }
  if (deg_opt->count() > 0) s.degree = degree;

  std::string name;
  for (const auto& [n, c] : cmds)
    if (c->parsed()) name = n;

  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    if (s.json_out) std::cerr << error_document(kind, msg).dump(2) << "\n";
    else std::cerr << "tatecalc: " << kind << ": " << msg << "\n";
    return code;
  };

  int code = kOk;
  json doc;
  try {
    const json in = name == "selftest" ? json::object() : load_input(s.input);
    const DegreeWindow w = window_of(s, in);
    json result;
    if (name == "local") result = cmd_local(in, s);
    else if (name == "global") result = cmd_global(in, s);
    else if (name == "obstruction") result = cmd_obstruction(in, s);
    else if (name == "tate") result = cmd_tate(in, s, w);
    else if (name == "tower") result = cmd_tower(in, s);
    else if (name == "selftest") result = cmd_selftest(s);
    else {
      bool complete = true;
      result = cmd_tn(in, s, w, complete);
      if (!complete) code = kSizeGuard;
    }
    if (name == "selftest" && !result["passed"].get<bool>()) code = kInternal;
    doc = {{"tool", {{"name", "tatecalc"}, {"version", kVersion}}},
           {"command", name},
           {"window", {w.lo, w.hi}},
           {"max_group_order", s.max_group_order},
           {"input", in},
           {"result", result}};
  } catch (const SizeGuardError& e) {
    return fail(kSizeGuard, "size_guard", e.what());
  } catch (const UnsupportedDegreeError& e) {
    return fail(kInput, "unsupported_degree", e.what());
  } catch (const InputError& e) {
    return fail(kInput, "input", e.what());
  } catch (const InternalError& e) {
    return fail(kInternal, "internal", e.what());
  } catch (const json::exception& e) {
    return fail(kInput, "input", e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, "internal", e.what());
  }

  if (s.json_out) {
    std::cout << doc.dump(2) << "\n";
  } else {
    std::ostringstream os;
    os << "tatecalc " << kVersion << "  " << name << "  window [" << doc["window"][0] << ", " << doc["window"][1] << "]\n";
    render(os, doc["result"], 0);
    std::cout << os.str();
  }
  return code;
}
