#include "ftopos/workspace.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ftopos/corpus.hpp"
#include "ftopos/errors.hpp"
#include "ftopos/topos.hpp"

namespace ftopos {

json element_to_json(const Element& e) {
  switch (e.kind()) {
    case Element::Kind::Atom:
      return e.name();
    case Element::Kind::Tuple: {
      json a = json::array();
      for (const auto& x : e.items()) a.push_back(element_to_json(x));
      return a;
    }
    case Element::Kind::Fam: {
      json a = json::array();
      for (const auto& [k, v] : e.entries()) {
        a.push_back(json::array({element_to_json(k), element_to_json(v)}));
      }
      return json{{"fam", a}};
    }
  }
  throw InternalError("unknown element kind");
}

Element element_from_json(const json& j) {
  if (j.is_string()) return atom(j.get<std::string>());
  if (j.is_number_unsigned()) return atom(j.get<std::size_t>());
  if (j.is_array()) {
    std::vector<Element> items;
    for (const auto& x : j) items.push_back(element_from_json(x));
    return Element::tuple(std::move(items));
  }
  if (j.is_object() && j.size() == 1 && j.contains("fam") && j["fam"].is_array()) {
    std::vector<Element::Entry> entries;
    for (const auto& kv : j["fam"]) {
      if (!kv.is_array() || kv.size() != 2) {
        throw ValidationError("family entry must be a [key, value] pair");
      }
      entries.emplace_back(element_from_json(kv[0]), element_from_json(kv[1]));
    }
    return Element::fam(std::move(entries));
  }
  throw ValidationError("not an element: " + j.dump());
}

namespace {

// Reads a field, reporting its absence in terms of the entry path.
const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(where + ": missing \"" + key + "\"");
  }
  return j[key];
}

const json& array_field(const json& j, const char* key, const std::string& where) {
  const json& a = field(j, key, where);
  if (!a.is_array()) throw ValidationError(where + ": \"" + key + "\" must be an array");
  return a;
}

std::string name_of(const json& j, const std::string& where) {
  if (!j.is_string()) throw ValidationError(where + ": expected a name, got " + j.dump());
  return j.get<std::string>();
}

std::size_t parse_count(const std::string& s, const std::string& name) {
  std::size_t pos = 0;
  unsigned long n = 0;
  try {
    n = std::stoul(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != s.size()) {
    throw ValidationError("bad size in builtin category " + name);
  }
  return n;
}

// 1-based line and column of a byte offset.
std::pair<std::size_t, std::size_t> position(const std::string& text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

FiniteCategory builtin_category(const std::string& name) {
  if (name == "terminal") return terminal_category();
  if (name == "empty") return empty_category();
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string kind = name.substr(0, colon);
    const std::size_t n = parse_count(name.substr(colon + 1), name);
    if (kind == "discrete") return discrete_category(n);
    if (kind == "chain") return chain_category(n);
    if (kind == "cyclic" && n > 0) return cyclic_group_category(n);
    if (kind == "symmetric" && n > 0 && n <= 5) return symmetric_group_category(n);
  }
  throw ValidationError("unknown builtin category " + name);
}

json category_to_json(const FiniteCategory& c) {
  json objects = json::array(), morphisms = json::array(), identities = json::array(),
       composition = json::array();
  for (const auto& o : c.objects()) objects.push_back(element_to_json(o));
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    identities.push_back(json::array(
        {element_to_json(c.objects()[o]), element_to_json(c.morphisms()[c.identity(o)])}));
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) continue;
    morphisms.push_back(json::array({element_to_json(c.morphisms()[m]),
                                     element_to_json(c.objects()[c.src(m)]),
                                     element_to_json(c.objects()[c.tgt(m)])}));
  }
  for (const auto& [g, f, h] : c.comp_entries()) {
    if (c.is_identity(g) || c.is_identity(f)) continue;
    composition.push_back(json::array({element_to_json(c.morphisms()[g]),
                                       element_to_json(c.morphisms()[f]),
                                       element_to_json(c.morphisms()[h])}));
  }
  return json{{"objects", objects},
              {"morphisms", morphisms},
              {"identities", identities},
              {"composition", composition}};
}

namespace {

FiniteCategory category_from_json_at(const json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return builtin_category(j.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError(where + ": " + e.what());
    }
  }
  if (!j.is_object()) throw ValidationError(where + ": category must be a name or an object");
  CategoryBuilder b;
  try {
    for (const auto& o : array_field(j, "objects", where)) b.object(element_from_json(o));
    if (j.contains("identities")) {
      for (const auto& p : array_field(j, "identities", where)) {
        if (!p.is_array() || p.size() != 2) {
          throw ValidationError("identity entries are [object, morphism]");
        }
        b.identity(element_from_json(p[0]), element_from_json(p[1]));
      }
    }
    if (j.contains("morphisms")) {
      for (const auto& m : array_field(j, "morphisms", where)) {
        if (!m.is_array() || m.size() != 3) {
          throw ValidationError("morphism entries are [name, source, target]");
        }
        b.morphism(element_from_json(m[0]), element_from_json(m[1]), element_from_json(m[2]));
      }
    }
    if (j.contains("composition")) {
      for (const auto& t : array_field(j, "composition", where)) {
        if (!t.is_array() || t.size() != 3) {
          throw ValidationError("composition entries are [g, f, g after f]");
        }
        b.comp(element_from_json(t[0]), element_from_json(t[1]), element_from_json(t[2]));
      }
    }
    return b.build();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    if (msg.rfind(where, 0) == 0) throw;
    throw ValidationError(where + ": " + msg);
  }
}

}  // namespace

FiniteCategory category_from_json(const json& j) { return category_from_json_at(j, "category"); }

json presheaf_to_json(const Presheaf& x) {
  const auto& c = x.index();
  json at = json::array(), restrict = json::array();
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    json es = json::array();
    for (const auto& e : x.at(o)) es.push_back(element_to_json(e));
    at.push_back(json::array({element_to_json(c.objects()[o]), es}));
  }
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    if (c.is_identity(u)) continue;
    const FinFunction& r = x.restrict(u);
    json pairs = json::array();
    for (std::size_t i = 0; i < r.dom().size(); ++i) {
      pairs.push_back(json::array({element_to_json(r.dom()[i]),
                                   element_to_json(r.cod()[r.at(i)])}));
    }
    restrict.push_back(json::array({element_to_json(c.morphisms()[u]), pairs}));
  }
  return json{{"at", at}, {"restrict", restrict}};
}

json nat_trans_to_json(const NatTrans& f, const std::string& dom, const std::string& cod) {
  const auto& c = f.dom().index();
  json at = json::array();
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    const FinFunction& g = f.at(o);
    json pairs = json::array();
    for (std::size_t i = 0; i < g.dom().size(); ++i) {
      pairs.push_back(json::array({element_to_json(g.dom()[i]),
                                   element_to_json(g.cod()[g.at(i)])}));
    }
    at.push_back(json::array({element_to_json(c.objects()[o]), pairs}));
  }
  return json{{"dom", dom}, {"cod", cod}, {"at", at}};
}

const Presheaf& Workspace::presheaf(const std::string& name) const {
  auto it = presheaves.find(name);
  if (it == presheaves.end()) throw ValidationError("unknown presheaf " + name);
  return it->second;
}

const NatTrans& Workspace::morphism(const std::string& name) const {
  auto it = morphisms.find(name);
  if (it == morphisms.end()) throw ValidationError("unknown morphism " + name);
  return it->second;
}

namespace {

class Resolver {
 public:
  explicit Resolver(Workspace& w) : w_(w) {}

  void run() {
    const json& spec = w_.spec;
    if (!spec.is_object()) throw ValidationError("workspace must be a JSON object");
    const json& format = field(spec, "format", "workspace");
    if (format != 1) throw ValidationError("workspace: unsupported format " + format.dump());
    for (const auto& [key, _] : spec.items()) {
      static const char* known[] = {"format",   "index",           "categories",
                                    "presheaves", "morphisms",     "category_objects",
                                    "simplicial_objects", "maps", "description"};
      bool ok = false;
      for (const char* k : known) ok = ok || key == k;
      if (!ok) throw ValidationError("workspace: unknown section \"" + key + "\"");
    }
    w_.topos = Topos(spec.contains("index") ? category_from_json_at(spec["index"], "index")
                                            : terminal_category());
    for (const auto& [name, j] : section("categories").items()) category(name, j);
    for (const auto& [name, _] : section("presheaves").items()) presheaf(name);
    for (const auto& [name, _] : section("morphisms").items()) morphism(name);
    for (const auto& [name, j] : section("category_objects").items()) category_object(name, j);
    for (const auto& [name, j] : section("simplicial_objects").items()) simplicial_object(name, j);
    if (spec.contains("maps")) {
      for (const auto& m : array_field(spec, "maps", "workspace")) {
        const std::string name = name_of(m, "maps");
        morphism(name);
        w_.maps.push_back(name);
      }
    }
  }

 private:
  const json& section(const char* key) const {
    static const json empty = json::object();
    if (!w_.spec.contains(key)) return empty;
    const json& s = w_.spec[key];
    if (!s.is_object()) throw ValidationError(std::string(key) + " must be an object");
    return s;
  }

  void category(const std::string& name, const json& j) {
    const std::string where = "categories." + name;
    bool check = true;
    json body = j;
    if (j.is_object() && j.contains("check")) {
      if (!j["check"].is_boolean()) throw ValidationError(where + ": \"check\" must be boolean");
      check = j["check"].get<bool>();
      body.erase("check");
    }
    FiniteCategory c = category_from_json_at(body, where);
    if (check) validate_category(c).require(where);
    w_.categories.emplace(name, std::move(c));
    w_.category_checked.emplace(name, check);
  }

  const FiniteCategory& checked_category(const std::string& name, const std::string& where) {
    auto it = w_.categories.find(name);
    if (it == w_.categories.end()) throw ValidationError(where + ": unknown category " + name);
    return it->second;
  }

  std::size_t object_index(const json& j, const std::string& where) {
    const Element e = element_from_json(j);
    auto i = w_.topos.index().objects().index_of(e);
    if (!i) throw ValidationError(where + ": unknown index object " + e.str());
    return *i;
  }

  const Presheaf& presheaf(const std::string& name) {
    if (auto it = w_.presheaves.find(name); it != w_.presheaves.end()) return it->second;
    const std::string where = "presheaves." + name;
    const json& presheaves = section("presheaves");
    if (!presheaves.contains(name)) throw ValidationError("unknown presheaf " + name);
    if (!visiting_.insert(where).second) throw ValidationError(where + ": cyclic definition");
    Presheaf x = build_presheaf(presheaves[name], where);
    validate_presheaf(x).require(where);
    visiting_.erase(where);
    return w_.presheaves.emplace(name, std::move(x)).first->second;
  }

  Presheaf build_presheaf(const json& j, const std::string& where) {
    const Topos& t = w_.topos;
    if (!j.is_object()) throw ValidationError(where + ": presheaf must be an object");
    try {
      if (j.contains("builtin")) {
        const std::string b = name_of(j["builtin"], where);
        if (b == "terminal") return terminal(t);
        if (b == "initial") return initial(t);
        if (b == "omega") return subobject_classifier(t).omega;
        throw ValidationError("unknown builtin presheaf " + b);
      }
      if (j.contains("representable")) {
        return corpus::representable(t, object_index(j["representable"], where));
      }
      if (j.contains("discrete")) {
        const json& n = j["discrete"];
        if (!n.is_number_unsigned()) throw ValidationError("\"discrete\" takes a count");
        return corpus::discrete(t, n.get<std::size_t>());
      }
      const auto& c = t.index();
      std::vector<std::vector<Element>> at(c.object_count());
      std::vector<bool> seen(c.object_count(), false);
      for (const auto& entry : array_field(j, "at", where)) {
        if (!entry.is_array() || entry.size() != 2 || !entry[1].is_array()) {
          throw ValidationError("\"at\" entries are [object, [elements]]");
        }
        const std::size_t o = object_index(entry[0], where);
        if (seen[o]) throw ValidationError("repeated object in \"at\"");
        seen[o] = true;
        for (const auto& e : entry[1]) at[o].push_back(element_from_json(e));
        if (FinSet(at[o]).size() != at[o].size()) {
          throw ValidationError("repeated element at " + c.objects()[o].str());
        }
      }
      for (std::size_t o = 0; o < c.object_count(); ++o) {
        if (!seen[o]) throw ValidationError("no set given at " + c.objects()[o].str());
      }
      std::vector<std::pair<Element, std::vector<std::pair<Element, Element>>>> restrict;
      if (j.contains("restrict")) {
        for (const auto& entry : array_field(j, "restrict", where)) {
          if (!entry.is_array() || entry.size() != 2 || !entry[1].is_array()) {
            throw ValidationError("\"restrict\" entries are [morphism, [[x, y], ...]]");
          }
          restrict.emplace_back(element_from_json(entry[0]), pairs(entry[1]));
        }
      }
      return make_presheaf(t, at, restrict);
    } catch (const ValidationError& e) {
      throw located(where, e);
    }
  }

  static std::vector<std::pair<Element, Element>> pairs(const json& a) {
    std::vector<std::pair<Element, Element>> out;
    for (const auto& p : a) {
      if (!p.is_array() || p.size() != 2) throw ValidationError("map entries are [x, y] pairs");
      out.emplace_back(element_from_json(p[0]), element_from_json(p[1]));
    }
    return out;
  }

  static ValidationError located(const std::string& where, const ValidationError& e) {
    const std::string msg = e.what();
    for (const char* p : {"presheaves.", "morphisms.", "categories.", "category_objects.",
                          "simplicial_objects.", "index"}) {
      if (msg.rfind(p, 0) == 0) return e;
    }
    return ValidationError(where + ": " + msg);
  }

  const NatTrans& morphism(const std::string& name) {
    if (auto it = w_.morphisms.find(name); it != w_.morphisms.end()) return it->second;
    const std::string where = "morphisms." + name;
    const json& morphisms = section("morphisms");
    if (!morphisms.contains(name)) throw ValidationError("unknown morphism " + name);
    if (!visiting_.insert(where).second) throw ValidationError(where + ": cyclic definition");
    NatTrans f = build_morphism(morphisms[name], where);
    validate_nat_trans(f).require(where);
    visiting_.erase(where);
    return w_.morphisms.emplace(name, std::move(f)).first->second;
  }

  NatTrans build_morphism(const json& j, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": morphism must be an object");
    try {
      if (j.contains("identity")) return identity(presheaf(name_of(j["identity"], where)));
      if (j.contains("to_terminal")) return to_terminal(presheaf(name_of(j["to_terminal"], where)));
      if (j.contains("from_initial")) {
        return from_initial(presheaf(name_of(j["from_initial"], where)));
      }
      if (j.contains("builtin")) {
        const std::string b = name_of(j["builtin"], where);
        if (b == "truth") return subobject_classifier(w_.topos).truth;
        throw ValidationError("unknown builtin morphism " + b);
      }
      if (j.contains("compose")) {
        const json& gf = j["compose"];
        if (!gf.is_array() || gf.size() != 2) throw ValidationError("\"compose\" takes [g, f]");
        const NatTrans& g = morphism(name_of(gf[0], where));
        const NatTrans& f = morphism(name_of(gf[1], where));
        if (!(f.cod() == g.dom())) throw ValidationError("composite does not typecheck");
        return compose(g, f);
      }
      const Presheaf& dom = presheaf(name_of(field(j, "dom", where), where));
      const Presheaf& cod = presheaf(name_of(field(j, "cod", where), where));
      const auto& c = w_.topos.index();
      std::vector<FinFunction> comps(c.object_count());
      std::vector<bool> seen(c.object_count(), false);
      for (const auto& entry : array_field(j, "at", where)) {
        if (!entry.is_array() || entry.size() != 2 || !entry[1].is_array()) {
          throw ValidationError("\"at\" entries are [object, [[x, y], ...]]");
        }
        const std::size_t o = object_index(entry[0], where);
        if (seen[o]) throw ValidationError("repeated object in \"at\"");
        seen[o] = true;
        comps[o] = FinFunction::from_pairs(dom.at(o), cod.at(o), pairs(entry[1]));
      }
      for (std::size_t o = 0; o < c.object_count(); ++o) {
        if (!seen[o]) throw ValidationError("no component at " + c.objects()[o].str());
      }
      return NatTrans(dom, cod, std::move(comps));
    } catch (const ValidationError& e) {
      throw located(where, e);
    }
  }

  void category_object(const std::string& name, const json& j) {
    const std::string where = "category_objects." + name;
    w_.category_objects.emplace(name, build_category_object(j, where));
  }

  CategoryObject build_category_object(const json& j, const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": category object must be an object");
    if (j.contains("of_category")) {
      const std::string cname = name_of(j["of_category"], where);
      const FiniteCategory& c = checked_category(cname, where);
      if (!w_.category_checked.at(cname)) {
        throw ValidationError(where + ": category " + cname + " is unchecked");
      }
      if (!(w_.topos == Topos::sets())) {
        throw ValidationError(where + ": of_category needs the terminal index");
      }
      CategoryObject cat = set_category_object(c);
      validate_category_object(cat).require(where);
      return cat;
    }
    CategoryObject cat;
    try {
      cat.c0 = presheaf(name_of(field(j, "c0", where), where));
      cat.c1 = presheaf(name_of(field(j, "c1", where), where));
      cat.s = morphism(name_of(field(j, "s", where), where));
      cat.t = morphism(name_of(field(j, "t", where), where));
      cat.e = morphism(name_of(field(j, "e", where), where));
      cat.pairs = composable_pairs(cat.s, cat.t);
      // m entries [object, [[f, g, g after f], ...]]
      const auto& c = w_.topos.index();
      std::vector<std::map<std::pair<Element, Element>, Element>> table(c.object_count());
      for (const auto& entry : array_field(j, "m", where)) {
        if (!entry.is_array() || entry.size() != 2 || !entry[1].is_array()) {
          throw ValidationError("\"m\" entries are [object, [[f, g, h], ...]]");
        }
        const std::size_t o = object_index(entry[0], where);
        for (const auto& t : entry[1]) {
          if (!t.is_array() || t.size() != 3) throw ValidationError("m rows are [f, g, h]");
          table[o][{element_from_json(t[0]), element_from_json(t[1])}] = element_from_json(t[2]);
        }
      }
      cat.m = natural_map(cat.pairs.apex, cat.c1, [&](std::size_t o, const Element& fg) {
        auto it = table[o].find({fg[0], fg[1]});
        if (it == table[o].end()) {
          throw ValidationError("no composite for " + fg[0].str() + ", " + fg[1].str() + " at " +
                                c.objects()[o].str());
        }
        return it->second;
      });
    } catch (const ValidationError& e) {
      throw located(where, e);
    }
    validate_category_object(cat).require(where);
    return cat;
  }

  void simplicial_object(const std::string& name, const json& j) {
    const std::string where = "simplicial_objects." + name;
    if (!j.is_object()) throw ValidationError(where + ": simplicial object must be an object");
    if (j.contains("nerve_of_category")) {
      if (!(w_.topos == Topos::sets())) {
        throw ValidationError(where + ": nerve_of_category needs the terminal index");
      }
      const std::string cname = name_of(j["nerve_of_category"], where);
      w_.simplicial_objects.emplace(name, category_nerve(checked_category(cname, where)));
      return;
    }
    if (j.contains("nerve_of")) {
      const std::string cname = name_of(j["nerve_of"], where);
      auto it = w_.category_objects.find(cname);
      if (it == w_.category_objects.end()) {
        throw ValidationError(where + ": unknown category object " + cname);
      }
      w_.simplicial_objects.emplace(name, nerve_truncation(it->second));
      return;
    }
    if (j.contains("constant")) {
      w_.simplicial_objects.emplace(name,
                                    constant_simplicial(presheaf(name_of(j["constant"], where))));
      return;
    }
    TruncatedSimplicialObject x;
    try {
      const json& levels = array_field(j, "levels", where);
      if (levels.size() != 4) throw ValidationError("\"levels\" needs X0..X3");
      for (std::size_t n = 0; n < 4; ++n) x.level[n] = presheaf(name_of(levels[n], where));
      const json& faces = array_field(j, "faces", where);
      if (faces.size() != 3) throw ValidationError("\"faces\" needs rows for X1..X3");
      for (std::size_t n = 1; n <= 3; ++n) {
        if (!faces[n - 1].is_array() || faces[n - 1].size() != n + 1) {
          throw ValidationError("X" + std::to_string(n) + " needs " + std::to_string(n + 1) +
                                " faces");
        }
        for (const auto& f : faces[n - 1]) x.faces[n].push_back(morphism(name_of(f, where)));
      }
      const json& degs = array_field(j, "degeneracies", where);
      if (degs.size() != 3) throw ValidationError("\"degeneracies\" needs rows for X0..X2");
      for (std::size_t n = 0; n < 3; ++n) {
        if (!degs[n].is_array() || degs[n].size() != n + 1) {
          throw ValidationError("X" + std::to_string(n) + " needs " + std::to_string(n + 1) +
                                " degeneracies");
        }
        for (const auto& s : degs[n]) x.degeneracies[n].push_back(morphism(name_of(s, where)));
      }
    } catch (const ValidationError& e) {
      throw located(where, e);
    }
    const bool check = !j.contains("check") || j["check"] == true;
    if (check) validate_simplicial(x).require(where);
    w_.simplicial_objects.emplace(name, std::move(x));
  }

  Workspace& w_;
  std::set<std::string> visiting_;
};

}  // namespace

Workspace load_workspace(const json& spec) {
  Workspace w;
  w.spec = spec;
  Resolver(w).run();
  return w;
}

Workspace load_workspace(const std::string& text) {
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = position(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    // Drop the library's "[json.exception.parse_error.101] parse error at line L, column C: "
    if (auto p = what.find(": "); p != std::string::npos) what = what.substr(p + 2);
    throw ParseError(what, line, column);
  }
  return load_workspace(spec);
}

Workspace load_workspace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_workspace(ss.str());
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

std::string dump_workspace(const Workspace& w) { return dump_json(w.spec); }

}  // namespace ftopos
