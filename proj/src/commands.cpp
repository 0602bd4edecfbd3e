#include "ftopos/commands.hpp"

#include <algorithm>
#include <chrono>

#include "ftopos/corpus.hpp"
#include "ftopos/errors.hpp"
#include "ftopos/topos.hpp"
#include "ftopos/univalence.hpp"

namespace ftopos {

namespace {

using Clock = std::chrono::steady_clock;

json sizes(const Presheaf& x) {
  json a = json::array();
  for (const auto& s : x.levels()) a.push_back(s.size());
  return a;
}

void render(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && (j[0].is_object())) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      render(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out += prefix + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

CommandResult finish(json report, bool holds, const CommandOptions& opts, Clock::time_point start) {
  if (opts.timings) {
    report["seconds"] = std::chrono::duration<double>(Clock::now() - start).count();
  }
  CommandResult r;
  r.exit_code = holds ? 0 : 1;
  render(report, "", r.text);
  r.report = std::move(report);
  return r;
}

json univalence_json(const UnivalenceReport& r) {
  json j{{"univalent", r.univalent},
         {"mono", r.mono},
         {"complete", r.completeness.complete},
         {"s0_iso", r.completeness.s0_iso},
         {"pullback_square", r.completeness.pullback_square},
         {"u_mono", r.completeness.u_mono},
         {"x0_size", r.completeness.x0_size},
         {"hoequiv_size", r.completeness.hoequiv_size},
         {"exponential_route_agrees", r.exponential_route_agrees},
         {"oracle_agrees", r.oracle_agrees},
         {"level_sizes", r.level_sizes},
         {"morphism_object_size", r.morphism_object_size}};
  j["fiber_oracle"] = r.fiber_oracle ? json(*r.fiber_oracle) : json(nullptr);
  return j;
}

json arrow_json(const NatTrans& p) {
  return json{{"E", presheaf_to_json(p.dom())},
              {"B", presheaf_to_json(p.cod())},
              {"p", nat_trans_to_json(p, "E", "B")["at"]}};
}

const TruncatedSimplicialObject& simplicial(const Workspace& w, const std::string& name,
                                            TruncatedSimplicialObject& storage) {
  if (auto it = w.simplicial_objects.find(name); it != w.simplicial_objects.end()) {
    return it->second;
  }
  if (auto it = w.category_objects.find(name); it != w.category_objects.end()) {
    storage = nerve_truncation(it->second);
    return storage;
  }
  throw ValidationError("unknown simplicial object " + name);
}

}  // namespace

CommandResult cmd_validate(const Workspace& w, const CommandOptions& opts) {
  const auto start = Clock::now();
  const auto& index = w.topos.index();
  json report;
  report["index"] = {{"objects", index.object_count()}, {"morphisms", index.morphism_count()}};
  json cats = json::object();
  for (const auto& [name, c] : w.categories) {
    cats[name] = {{"objects", c.object_count()},
                  {"morphisms", c.morphism_count()},
                  {"checked", w.category_checked.at(name)},
                  {"valid", validate_category(c).ok()}};
  }
  report["categories"] = cats;
  json ps = json::object();
  for (const auto& [name, x] : w.presheaves) ps[name] = {{"sizes", sizes(x)}};
  report["presheaves"] = ps;
  json ms = json::object();
  for (const auto& [name, f] : w.morphisms) {
    ms[name] = {{"dom_sizes", sizes(f.dom())},
                {"cod_sizes", sizes(f.cod())},
                {"mono", is_mono(f)},
                {"epi", is_epi(f)}};
  }
  report["morphisms"] = ms;
  json cos = json::object();
  for (const auto& [name, c] : w.category_objects) {
    cos[name] = {{"objects", sizes(c.c0)}, {"morphisms", sizes(c.c1)}};
  }
  report["category_objects"] = cos;
  json ss = json::object();
  for (const auto& [name, x] : w.simplicial_objects) {
    json levels = json::array();
    for (const auto& l : x.level) levels.push_back(sizes(l));
    ss[name] = {{"levels", levels}, {"simplicial", validate_simplicial(x).ok()}};
  }
  report["simplicial_objects"] = ss;
  report["maps"] = w.maps;
  report["valid"] = true;
  return finish(std::move(report), true, opts, start);
}

CommandResult cmd_check_segal(const Workspace& w, const std::string& name,
                              const CommandOptions& opts) {
  const auto start = Clock::now();
  TruncatedSimplicialObject storage;
  const auto& x = simplicial(w, name, storage);
  const SegalReport r = check_segal(x);
  json report{{"name", name},
              {"simplicial", r.simplicial},
              {"segal", r.segal},
              {"violations", r.identities.violations},
              {"witnesses", r.witnesses}};
  return finish(std::move(report), r.segal, opts, start);
}

CommandResult cmd_check_complete(const Workspace& w, const std::string& name,
                                 const CommandOptions& opts) {
  const auto start = Clock::now();
  TruncatedSimplicialObject storage;
  const auto& x = simplicial(w, name, storage);
  const SegalReport sr = check_segal(x);
  json report{{"name", name}, {"segal", sr.segal}};
  if (!sr.segal) {
    report["complete"] = false;
    report["reason"] = "not a Segal object";
    return finish(std::move(report), false, opts, start);
  }
  const CompletenessReport r = check_complete(SegalObject(x));
  report["complete"] = r.complete;
  report["s0_iso"] = r.s0_iso;
  report["pullback_square"] = r.pullback_square;
  report["u_mono"] = r.u_mono;
  report["x0_size"] = r.x0_size;
  report["hoequiv_size"] = r.hoequiv_size;
  return finish(std::move(report), r.complete, opts, start);
}

CommandResult cmd_nerve(const Workspace& w, const std::string& map_name,
                        const CommandOptions& opts) {
  const auto start = Clock::now();
  const NerveOfMap n = nerve_of_map(w.morphism(map_name));
  json levels = json::array();
  for (const auto& l : n.trunc.level) levels.push_back(sizes(l));
  json report{{"map", map_name},
              {"level_sizes", levels},
              {"objects", presheaf_to_json(n.cat.c0)},
              {"morphisms", presheaf_to_json(n.cat.c1)},
              {"s", nat_trans_to_json(n.cat.s, "morphisms", "objects")},
              {"t", nat_trans_to_json(n.cat.t, "morphisms", "objects")},
              {"e", nat_trans_to_json(n.cat.e, "objects", "morphisms")},
              {"m", nat_trans_to_json(n.cat.m, "pairs", "morphisms")},
              {"category_object", validate_category_object(n.cat).ok()}};
  return finish(std::move(report), true, opts, start);
}

CommandResult cmd_check_univalent(const Workspace& w, const std::string& map_name,
                                  const CommandOptions& opts) {
  const auto start = Clock::now();
  std::vector<std::string> names;
  if (map_name.empty()) {
    names = w.maps;
  } else {
    names.push_back(map_name);
  }
  if (names.empty()) throw ValidationError("workspace lists no maps to check");
  json maps = json::array();
  bool all = true;
  for (const auto& name : names) {
    json j = univalence_json(is_univalent(w.morphism(name)));
    all = all && j["univalent"].get<bool>();
    j["map"] = name;
    maps.push_back(std::move(j));
  }
  json report{{"maps", maps}, {"univalent", all}};
  return finish(std::move(report), all, opts, start);
}

CommandResult cmd_enumerate_univalent(const Workspace& w, std::size_t max_total,
                                      std::size_t max_base, const CommandOptions& opts) {
  const auto start = Clock::now();
  const UnivalentEnumeration en = enumerate_univalent(w.topos, {max_total, max_base});
  std::size_t disagreements = 0, non_mono = 0;
  for (const auto& r : en.reports) {
    if (!r.oracle_agrees) ++disagreements;
  }
  json found = json::array();
  for (std::size_t i : en.univalent) {
    if (!en.reports[i].mono) ++non_mono;
    json a = arrow_json(en.arrows[i]);
    a["mono"] = en.reports[i].mono;
    found.push_back(std::move(a));
  }
  json report{{"bounds", {{"max_total", max_total}, {"max_base", max_base}}},
              {"arrows", en.arrows.size()},
              {"univalent_count", en.univalent.size()},
              {"univalent", found},
              {"oracle_disagreements", disagreements},
              {"oracle", is_finset(w.topos)},
              {"non_mono_univalent", non_mono}};
  return finish(std::move(report), disagreements == 0, opts, start);
}

CommandResult cmd_poset(const Workspace& w, std::size_t max_total, std::size_t max_base,
                        const CommandOptions& opts) {
  const auto start = Clock::now();
  const UnivalentEnumeration en = enumerate_univalent(w.topos, {max_total, max_base});
  std::size_t pairs = 0, max_squares = 0, violations = 0;
  json counts = json::array();
  for (std::size_t i : en.univalent) {
    json row = json::array();
    for (std::size_t j : en.univalent) {
      const std::size_t n = pullback_square_homs(en.arrows[i], en.arrows[j]).size();
      ++pairs;
      max_squares = std::max(max_squares, n);
      if (n > 1) ++violations;
      row.push_back(n);
    }
    counts.push_back(std::move(row));
  }
  json report{{"bounds", {{"max_total", max_total}, {"max_base", max_base}}},
              {"univalent_count", en.univalent.size()},
              {"ordered_pairs", pairs},
              {"square_counts", counts},
              {"max_squares", max_squares},
              {"violations", violations},
              {"poset", violations == 0}};
  return finish(std::move(report), violations == 0, opts, start);
}

CommandResult cmd_classify(const Workspace& w, const std::string& mono_name,
                           const CommandOptions& opts) {
  const auto start = Clock::now();
  const MonoClassificationVerdict v = check_mono_classification(w.morphism(mono_name));
  json report{{"map", mono_name},
              {"univalent", v.univalent},
              {"chi_mono", v.chi_mono},
              {"agree", v.agree},
              {"chi", nat_trans_to_json(v.chi, "codomain", "omega")}};
  return finish(std::move(report), v.agree, opts, start);
}

namespace {

json named_category(const FiniteCategory& c) { return category_to_json(c); }

json finset_workspace() {
  json ps{{"empty", {{"builtin", "initial"}}},
          {"one", {{"builtin", "terminal"}}},
          {"two", {{"discrete", 2}}},
          {"three", {{"discrete", 3}}},
          {"omega", {{"builtin", "omega"}}}};
  json ms{{"empty_to_empty", {{"identity", "empty"}}},
          {"empty_to_one", {{"from_initial", "one"}}},
          {"one_to_one", {{"identity", "one"}}},
          {"one_to_two", {{"dom", "one"}, {"cod", "two"}, {"at", json::parse(R"([["*", [["*", "1"]]]])")}}},
          {"two_to_one", {{"to_terminal", "two"}}},
          {"two_to_two", {{"identity", "two"}}},
          {"three_to_two",
           {{"dom", "three"},
            {"cod", "two"},
            {"at", json::parse(R"([["*", [["0", "0"], ["1", "0"], ["2", "1"]]]])")}}},
          {"one_to_three",
           {{"dom", "one"}, {"cod", "three"}, {"at", json::parse(R"([["*", [["*", "2"]]]])")}}},
          {"truth", {{"builtin", "truth"}}}};
  return json{{"format", 1},
              {"description", "Maps of finite sets; the first four are the univalent ones."},
              {"index", "terminal"},
              {"presheaves", ps},
              {"morphisms", ms},
              {"maps", json::array({"empty_to_empty", "empty_to_one", "one_to_one", "one_to_two",
                        "two_to_one", "two_to_two", "three_to_two", "one_to_three", "truth"})}};
}

json c2_workspace() {
  json ps{{"free", {{"representable", "*"}}},
          {"point", {{"builtin", "terminal"}}},
          {"empty", {{"builtin", "initial"}}},
          {"two_points", {{"discrete", 2}}},
          {"omega", {{"builtin", "omega"}}}};
  json ms{{"truth", {{"builtin", "truth"}}},
          {"free_to_point", {{"to_terminal", "free"}}},
          {"point_to_point", {{"identity", "point"}}},
          {"free_to_free", {{"identity", "free"}}},
          {"empty_to_point", {{"from_initial", "point"}}},
          {"two_points_to_point", {{"to_terminal", "two_points"}}}};
  return json{{"format", 1},
              {"description", "Right C2-sets."},
              {"index", "cyclic:2"},
              {"presheaves", ps},
              {"morphisms", ms},
              {"maps", json::array({"truth", "free_to_point", "point_to_point", "free_to_free",
                        "empty_to_point", "two_points_to_point"})}};
}

json s3_workspace() {
  json ps{{"S", presheaf_to_json(corpus::s3_natural_action())},
          {"point", {{"builtin", "terminal"}}},
          {"free", {{"representable", "*"}}},
          {"omega", {{"builtin", "omega"}}}};
  json ms{{"S_to_point", {{"to_terminal", "S"}}},
          {"point_to_point", {{"identity", "point"}}},
          {"truth", {{"builtin", "truth"}}}};
  return json{{"format", 1},
              {"description", "Right S3-sets; S is the natural action on three letters."},
              {"index", "symmetric:3"},
              {"presheaves", ps},
              {"morphisms", ms},
              {"maps", json::array({"S_to_point", "point_to_point", "truth"})}};
}

json sierpinski_workspace() {
  json ps{{"y0", {{"representable", "0"}}},
          {"y1", {{"representable", "1"}}},
          {"point", {{"builtin", "terminal"}}},
          {"omega", {{"builtin", "omega"}}}};
  json ms{{"truth", {{"builtin", "truth"}}},
          {"y0_to_point", {{"to_terminal", "y0"}}},
          {"y1_to_point", {{"to_terminal", "y1"}}},
          {"point_to_point", {{"identity", "point"}}},
          {"omega_to_point", {{"to_terminal", "omega"}}}};
  return json{{"format", 1},
              {"description", "Presheaves on the arrow 0 -> 1."},
              {"index", "chain:2"},
              {"presheaves", ps},
              {"morphisms", ms},
              {"maps", json::array({"truth", "y0_to_point", "y1_to_point", "point_to_point", "omega_to_point"})}};
}

json nerves_workspace() {
  json cats = json::object(), cos = json::object(), ss = json::object();
  for (const auto& [name, c] : corpus::finite_categories()) {
    cats[name] = named_category(c);
    cos[name] = {{"of_category", name}};
    ss[name] = {{"nerve_of", name}};
  }
  return json{{"format", 1},
              {"description", "Nerves of small finite categories, as category objects in sets."},
              {"index", "terminal"},
              {"categories", cats},
              {"category_objects", cos},
              {"simplicial_objects", ss}};
}

json broken_nerve_workspace() {
  json c = named_category(monoid_category({"r0", "r1", "r2"}, {{0, 1, 2}, {1, 1, 0}, {2, 0, 1}}));
  c["check"] = false;
  return json{{"format", 1},
              {"description", "C3 with r1 after r1 changed to r1; composition is not associative."},
              {"index", "terminal"},
              {"categories", {{"broken_c3", c}, {"c3", named_category(cyclic_group_category(3))}}},
              {"simplicial_objects",
               {{"broken", {{"nerve_of_category", "broken_c3"}}},
                {"c3", {{"nerve_of_category", "c3"}}}}}};
}

}  // namespace

std::map<std::string, json> bundled_corpus() {
  return {{"finset.json", finset_workspace()},
          {"c2_sets.json", c2_workspace()},
          {"s3_sets.json", s3_workspace()},
          {"sierpinski.json", sierpinski_workspace()},
          {"nerves.json", nerves_workspace()},
          {"broken_nerve.json", broken_nerve_workspace()}};
}

}  // namespace ftopos
