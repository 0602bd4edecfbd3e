#include "ftopos/category.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>

#include "ftopos/errors.hpp"

namespace ftopos {

void ValidationReport::merge(const ValidationReport& other,
                             const std::string& prefix) {
  for (const auto& v : other.violations) violations.push_back(prefix + v);
}

void ValidationReport::require(const std::string& what) const {
  if (ok()) return;
  std::string msg = what + ": " + violations.front();
  if (violations.size() > 1) {
    msg += " (and " + std::to_string(violations.size() - 1) + " more)";
  }
  throw ValidationError(msg);
}

FiniteCategory::FiniteCategory()
    : FiniteCategory(FinSet(), FinSet(), FinFunction(), FinFunction(),
                     FinFunction(), {}) {}

FiniteCategory::FiniteCategory(
    FinSet objects, FinSet morphisms, FinFunction src, FinFunction tgt,
    FinFunction identity,
    const std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>& comp)
    : objects_(std::move(objects)),
      morphisms_(std::move(morphisms)),
      src_(std::move(src)),
      tgt_(std::move(tgt)),
      identity_(std::move(identity)) {
  if (!(src_.dom() == morphisms_) || !(src_.cod() == objects_) ||
      !(tgt_.dom() == morphisms_) || !(tgt_.cod() == objects_) ||
      !(identity_.dom() == objects_) || !(identity_.cod() == morphisms_)) {
    throw ValidationError("category tables do not match object/morphism sets");
  }
  const std::size_t n = morphisms_.size();
  comp_.assign(n * n, std::nullopt);
  for (const auto& [g, f, h] : comp) {
    if (g >= n || f >= n || h >= n) {
      throw ValidationError("composition entry out of range");
    }
    auto& slot = comp_[g * n + f];
    if (slot && *slot != h) {
      throw ValidationError("composition defined twice for (" +
                            morphisms_[g].str() + ", " + morphisms_[f].str() +
                            ")");
    }
    slot = h;
  }
  incoming_.assign(objects_.size(), {});
  for (std::size_t m = 0; m < n; ++m) incoming_[tgt_.at(m)].push_back(m);
}

std::optional<std::size_t> FiniteCategory::compose(std::size_t g,
                                                   std::size_t f) const {
  return comp_[g * morphisms_.size() + f];
}

std::size_t FiniteCategory::comp(std::size_t g, std::size_t f) const {
  if (auto h = compose(g, f)) return *h;
  throw ValidationError("composite " + morphisms_[g].str() + " after " +
                        morphisms_[f].str() + " is undefined");
}

std::vector<std::size_t> FiniteCategory::hom(std::size_t a,
                                             std::size_t b) const {
  std::vector<std::size_t> out;
  for (std::size_t m : incoming_[b]) {
    if (src(m) == a) out.push_back(m);
  }
  return out;
}

std::vector<std::tuple<std::size_t, std::size_t, std::size_t>>
FiniteCategory::comp_entries() const {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> out;
  const std::size_t n = morphisms_.size();
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      if (auto h = comp_[g * n + f]) out.emplace_back(g, f, *h);
    }
  }
  return out;
}

bool operator==(const FiniteCategory& a, const FiniteCategory& b) {
  return a.objects_ == b.objects_ && a.morphisms_ == b.morphisms_ &&
         a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.identity_ == b.identity_ &&
         a.comp_ == b.comp_;
}

ValidationReport validate_category(const FiniteCategory& c) {
  ValidationReport r;
  const auto& mors = c.morphisms();
  const auto name = [&](std::size_t m) { return mors[m].str(); };
  for (std::size_t x = 0; x < c.object_count(); ++x) {
    const std::size_t i = c.identity(x);
    if (c.src(i) != x || c.tgt(i) != x) {
      r.add("identity " + name(i) + " of " + c.objects()[x].str() +
            " has wrong source or target");
    }
  }
  const std::size_t n = c.morphism_count();
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t f = 0; f < n; ++f) {
      const bool composable = c.tgt(f) == c.src(g);
      const auto h = c.compose(g, f);
      if (composable && !h) {
        r.add("composite " + name(g) + " after " + name(f) + " is missing");
      } else if (!composable && h) {
        r.add("composite " + name(g) + " after " + name(f) +
              " is defined but the pair is not composable");
      } else if (h && (c.src(*h) != c.src(f) || c.tgt(*h) != c.tgt(g))) {
        r.add("composite " + name(g) + " after " + name(f) +
              " has wrong source or target");
      }
    }
  }
  if (!r.ok()) return r;
  for (std::size_t f = 0; f < n; ++f) {
    if (c.comp(c.identity(c.tgt(f)), f) != f) {
      r.add("left unit law fails at " + name(f));
    }
    if (c.comp(f, c.identity(c.src(f))) != f) {
      r.add("right unit law fails at " + name(f));
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) {
      if (c.src(g) != c.tgt(f)) continue;
      for (std::size_t h = 0; h < n; ++h) {
        if (c.src(h) != c.tgt(g)) continue;
        const std::size_t left = c.comp(h, c.comp(g, f));
        const std::size_t right = c.comp(c.comp(h, g), f);
        if (left != right) {
          r.add("associativity fails for (" + name(h) + ", " + name(g) +
                ", " + name(f) + "): " + name(left) + " != " + name(right));
        }
      }
    }
  }
  return r;
}

CategoryBuilder& CategoryBuilder::object(const Element& obj) {
  objects_.push_back(obj);
  return *this;
}

CategoryBuilder& CategoryBuilder::identity(const Element& obj,
                                           const Element& mor) {
  identities_.emplace_back(obj, mor);
  return *this;
}

CategoryBuilder& CategoryBuilder::morphism(const Element& name,
                                           const Element& src,
                                           const Element& tgt) {
  morphisms_.push_back({name, src, tgt});
  return *this;
}

CategoryBuilder& CategoryBuilder::comp(const Element& g, const Element& f,
                                       const Element& h) {
  comp_.emplace_back(g, f, h);
  return *this;
}

FiniteCategory CategoryBuilder::build() const {
  FinSet objects(objects_);
  std::map<Element, Element> ids;
  for (const auto& [o, m] : identities_) ids.emplace(o, m);
  std::vector<Mor> mors = morphisms_;
  for (const auto& o : objects) {
    auto it = ids.find(o);
    if (it == ids.end()) {
      it = ids.emplace(o, Element::atom("id_" + o.str())).first;
    }
    mors.push_back({it->second, o, o});
  }
  std::vector<Element> names;
  for (const auto& m : mors) names.push_back(m.name);
  FinSet morphisms(names);
  if (morphisms.size() != mors.size()) {
    throw ValidationError("repeated morphism name");
  }
  std::vector<std::pair<Element, Element>> src, tgt, id;
  for (const auto& m : mors) {
    src.emplace_back(m.name, m.src);
    tgt.emplace_back(m.name, m.tgt);
  }
  for (const auto& [o, m] : ids) id.emplace_back(o, m);
  auto src_fn = FinFunction::from_pairs(morphisms, objects, src);
  auto tgt_fn = FinFunction::from_pairs(morphisms, objects, tgt);
  auto id_fn = FinFunction::from_pairs(objects, morphisms, id);

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> table;
  for (const auto& [g, f, h] : comp_) {
    table[{morphisms.require(g, "composite"), morphisms.require(f, "composite")}] =
        morphisms.require(h, "composite");
  }
  for (std::size_t f = 0; f < morphisms.size(); ++f) {
    table.try_emplace({id_fn.at(tgt_fn.at(f)), f}, f);
    table.try_emplace({f, id_fn.at(src_fn.at(f))}, f);
  }
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> entries;
  for (const auto& [gf, h] : table) entries.emplace_back(gf.first, gf.second, h);
  return FiniteCategory(objects, morphisms, src_fn, tgt_fn, id_fn, entries);
}

FiniteCategory terminal_category() {
  return CategoryBuilder().identity(atom("*"), atom("id")).object(atom("*")).build();
}

FiniteCategory empty_category() { return CategoryBuilder().build(); }

FiniteCategory discrete_category(std::size_t n) {
  CategoryBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.object(atom(i));
  return b.build();
}

FiniteCategory chain_category(std::size_t n) {
  CategoryBuilder b;
  const auto arrow = [](std::size_t i, std::size_t j) {
    return Element::atom(std::to_string(i) + "<" + std::to_string(j));
  };
  for (std::size_t i = 0; i < n; ++i) b.object(atom(i));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) b.morphism(arrow(i, j), atom(i), atom(j));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        b.comp(arrow(j, k), arrow(i, j), arrow(i, k));
      }
    }
  }
  return b.build();
}

FiniteCategory monoid_category(const std::vector<std::string>& names,
                               const std::vector<std::vector<std::size_t>>& table) {
  if (names.empty() || table.size() != names.size()) {
    throw ValidationError("monoid table does not match element names");
  }
  CategoryBuilder b;
  b.object(atom("*")).identity(atom("*"), atom(names[0]));
  for (std::size_t i = 1; i < names.size(); ++i) b.morphism(names[i], "*", "*");
  for (std::size_t g = 0; g < names.size(); ++g) {
    if (table[g].size() != names.size()) {
      throw ValidationError("monoid table is not square");
    }
    for (std::size_t f = 0; f < names.size(); ++f) {
      b.comp(atom(names[g]), atom(names[f]), atom(names[table[g][f]]));
    }
  }
  return b.build();
}

FiniteCategory cyclic_group_category(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back("r" + std::to_string(i));
    for (std::size_t j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  }
  return monoid_category(names, table);
}

FiniteCategory symmetric_group_category(std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<std::size_t>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<std::string> names;
  for (const auto& p : perms) {
    std::string s;
    for (std::size_t v : p) s += std::to_string(v);
    names.push_back(s);
  }
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  // (g·f)(x) = g(f(x))
  std::vector<std::vector<std::size_t>> table(perms.size(),
                                              std::vector<std::size_t>(perms.size()));
  for (std::size_t g = 0; g < perms.size(); ++g) {
    for (std::size_t f = 0; f < perms.size(); ++f) {
      std::vector<std::size_t> h(n);
      for (std::size_t x = 0; x < n; ++x) h[x] = perms[g][perms[f][x]];
      table[g][f] = index.at(h);
    }
  }
  return monoid_category(names, table);
}

Shape diagram_shape(std::size_t objects,
                    const std::vector<std::pair<std::size_t, std::size_t>>& arrows) {
  const auto obj_name = [](std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "o%03zu", i);
    return Element::atom(buf);
  };
  const auto arrow_name = [](std::size_t k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "a%03zu", k);
    return Element::atom(buf);
  };
  CategoryBuilder b;
  for (std::size_t i = 0; i < objects; ++i) b.object(obj_name(i));
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const auto [s, t] = arrows[k];
    if (s >= objects || t >= objects) {
      throw ValidationError("diagram arrow endpoint out of range");
    }
    for (std::size_t j = 0; j < arrows.size(); ++j) {
      if (arrows[j].second == s) {
        throw ValidationError("diagram shape has composable arrows");
      }
    }
    b.morphism(arrow_name(k), obj_name(s), obj_name(t));
  }
  Shape shape{b.build(), {}};
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    shape.arrows.push_back(shape.category.morphism_index(arrow_name(k)));
  }
  return shape;
}

}  // namespace ftopos
