#include "ftopos/corpus.hpp"

#include <algorithm>

#include "ftopos/errors.hpp"

namespace ftopos::corpus {

Topos c2_sets() {
  static const Topos t(cyclic_group_category(2));
  return t;
}

Topos s3_sets() {
  static const Topos t(symmetric_group_category(3));
  return t;
}

Topos sierpinski() {
  static const Topos t(chain_category(2));
  return t;
}

Presheaf representable(const Topos& t, std::size_t object) {
  const auto& c = t.index();
  std::vector<FinSet> at;
  for (std::size_t d = 0; d < c.object_count(); ++d) {
    std::vector<Element> es;
    for (std::size_t m : c.hom(d, object)) es.push_back(c.morphisms()[m]);
    at.emplace_back(std::move(es));
  }
  std::vector<FinFunction> restrict;
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    std::vector<std::size_t> table;
    for (const auto& v : at[c.tgt(u)]) {
      const std::size_t vu = c.comp(c.morphism_index(v), u);
      table.push_back(at[c.src(u)].require(c.morphisms()[vu], "representable"));
    }
    restrict.emplace_back(at[c.tgt(u)], at[c.src(u)], std::move(table));
  }
  return Presheaf(t, std::move(at), std::move(restrict));
}

Presheaf discrete(const Topos& t, std::size_t n) {
  const auto& c = t.index();
  const FinSet s = FinSet::range(n);
  return Presheaf(t, std::vector<FinSet>(c.object_count(), s),
                  std::vector<FinFunction>(c.morphism_count(), FinFunction::identity(s)));
}

Presheaf copies(const Presheaf& x, std::size_t count) {
  const auto& c = x.index();
  std::vector<FinSet> at;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    std::vector<Element> es;
    for (std::size_t k = 0; k < count; ++k) {
      for (const auto& e : x.at(o)) es.push_back(Element::tuple({atom(k), e}));
    }
    at.emplace_back(std::move(es));
  }
  std::vector<FinFunction> restrict;
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    std::vector<std::size_t> table;
    for (const auto& e : at[c.tgt(u)]) {
      table.push_back(at[c.src(u)].require(
          Element::tuple({e[0], x.restrict(u)(e[1])}), "copies"));
    }
    restrict.emplace_back(at[c.tgt(u)], at[c.src(u)], std::move(table));
  }
  return Presheaf(x.topos(), std::move(at), std::move(restrict));
}

Presheaf s3_natural_action() {
  const Topos t = s3_sets();
  const auto& c = t.index();
  const FinSet s = FinSet::range(3);
  std::vector<FinFunction> restrict;
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    // Morphism names are one-line notation g(0)g(1)g(2); x·g = g^{-1}(x).
    const std::string& name = c.morphisms()[u].name();
    std::vector<std::size_t> table(3);
    for (std::size_t i = 0; i < 3; ++i) {
      table[static_cast<std::size_t>(name[i] - '0')] = i;
    }
    restrict.emplace_back(s, s, std::move(table));
  }
  return Presheaf(t, {s}, std::move(restrict));
}

std::vector<std::pair<std::string, FiniteCategory>> finite_categories() {
  std::vector<std::pair<std::string, FiniteCategory>> out;
  out.emplace_back("empty", empty_category());
  out.emplace_back("terminal", terminal_category());
  out.emplace_back("discrete2", discrete_category(2));
  out.emplace_back("arrow", chain_category(2));
  out.emplace_back("chain3", chain_category(3));
  out.emplace_back("C2", cyclic_group_category(2));
  out.emplace_back("C3", cyclic_group_category(3));
  out.emplace_back("S3", symmetric_group_category(3));
  out.emplace_back("walking_iso", CategoryBuilder()
                                      .object("a")
                                      .object("b")
                                      .morphism("f", "a", "b")
                                      .morphism("g", "b", "a")
                                      .comp("g", "f", "id_a")
                                      .comp("f", "g", "id_b")
                                      .build());
  out.emplace_back("idempotent", monoid_category({"1", "e"}, {{0, 1}, {1, 1}}));
  out.emplace_back("span", CategoryBuilder()
                               .object("a")
                               .object("b")
                               .object("c")
                               .morphism("l", "c", "a")
                               .morphism("r", "c", "b")
                               .build());
  // An object with a non-trivial automorphism plus an arrow out of it.
  out.emplace_back("iso_with_tail", CategoryBuilder()
                                        .object("x")
                                        .object("y")
                                        .morphism("s", "x", "x")
                                        .morphism("f", "x", "y")
                                        .comp("s", "s", "id_x")
                                        .comp("f", "s", "f")
                                        .build());
  for (const auto& [name, c] : out) validate_category(c).require("corpus category " + name);
  return out;
}

}  // namespace ftopos::corpus
