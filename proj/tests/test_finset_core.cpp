#include <catch_amalgamated.hpp>

#include "ftopos/category.hpp"
#include "ftopos/errors.hpp"
#include "ftopos/finset.hpp"
#include "ftopos/guard.hpp"
#include "ftopos/limit.hpp"

using namespace ftopos;

namespace {

// Brute-force associativity/unit oracle, written against the raw table
// independent of validate_category.
bool oracle_is_category(const FiniteCategory& c) {
  const std::size_t n = c.morphism_count();
  for (std::size_t f = 0; f < n; ++f) {
    for (std::size_t g = 0; g < n; ++g) {
      if ((c.tgt(f) == c.src(g)) != c.compose(g, f).has_value()) return false;
    }
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (c.compose(c.identity(c.tgt(f)), f) != f) return false;
    if (c.compose(f, c.identity(c.src(f))) != f) return false;
    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t h = 0; h < n; ++h) {
        auto gf = c.compose(g, f);
        auto hg = c.compose(h, g);
        if (!gf || !hg) continue;
        if (c.compose(h, *gf) != c.compose(*hg, f)) return false;
      }
    }
  }
  return true;
}

FiniteCategory c2_table(const char* gg) {
  return CategoryBuilder()
      .object("*")
      .identity(atom("*"), atom("e"))
      .morphism("g", "*", "*")
      .comp("g", "g", gg)
      .build();
}

}  // namespace

TEST_CASE("element ordering is by kind then contents", "[element]") {
  const auto a = atom("a");
  const auto b = atom("b");
  CHECK(a < b);
  CHECK(b < Element::tuple({a}));
  CHECK(Element::tuple({a, b}) < Element::tuple({b, a}));
  CHECK(Element::tuple({a}) < Element::fam({{a, b}}));
  CHECK(Element::tuple({a, b}) == Element::tuple({atom("a"), atom("b")}));
  CHECK(Element::fam({{b, a}, {a, b}}) == Element::fam({{a, b}, {b, a}}));
  CHECK_THROWS_AS(Element::fam({{a, a}, {a, b}}), ValidationError);
  CHECK(Element::tuple({a, Element::fam({{b, a}})}).str() == "(a, {b: a})");
}

TEST_CASE("finite sets are sorted and duplicate-free", "[finset]") {
  FinSet s{atom("b"), atom("a"), atom("b")};
  REQUIRE(s.size() == 2);
  CHECK(s[0] == atom("a"));
  CHECK(s.index_of(atom("b")) == 1);
  CHECK_FALSE(s.contains(atom("c")));
}

TEST_CASE("finite functions check totality", "[finset]") {
  const auto dom = FinSet::atoms({"a", "b"});
  const auto cod = FinSet::atoms({"x"});
  CHECK_THROWS_AS(FinFunction::from_pairs(dom, cod, {{atom("a"), atom("x")}}),
                  ValidationError);
  CHECK_THROWS_AS(FinFunction::from_pairs(dom, cod, {{atom("a"), atom("y")}}),
                  ValidationError);
  const auto f = FinFunction::from_pairs(dom, cod, {{atom("a"), atom("x")}, {atom("b"), atom("x")}});
  CHECK(f(atom("b")) == atom("x"));
  CHECK(f.is_surjective());
  CHECK_FALSE(f.is_injective());
  CHECK(all_functions(FinSet::range(2), FinSet::range(3)).size() == 9);
  CHECK(all_functions(FinSet(), FinSet()).size() == 1);
  CHECK(all_functions(FinSet::range(1), FinSet()).empty());
}

TEST_CASE("validate_category", "[category]") {
  SECTION("terminal category is valid") {
    CHECK(validate_category(terminal_category()).ok());
  }
  SECTION("the group C2 is valid") {
    const auto c = c2_table("e");
    CHECK(oracle_is_category(c));
    CHECK(validate_category(c).ok());
  }
  SECTION("C2 with g∘g = g is the idempotent monoid, which is associative") {
    const auto c = c2_table("g");
    const bool oracle = oracle_is_category(c);
    CHECK(oracle);
    CHECK(validate_category(c).ok() == oracle);
  }
  SECTION("C3 with r1∘r1 = r1 breaks associativity") {
    std::vector<std::vector<std::size_t>> table{{0, 1, 2}, {1, 1, 0}, {2, 0, 1}};
    const auto c = monoid_category({"r0", "r1", "r2"}, table);
    CHECK_FALSE(oracle_is_category(c));
    const auto report = validate_category(c);
    REQUIRE_FALSE(report.ok());
    bool mentions_assoc = false;
    for (const auto& v : report.violations) {
      if (v.find("associativity") != std::string::npos) mentions_assoc = true;
    }
    CHECK(mentions_assoc);
  }
  SECTION("a missing composite is reported") {
    const auto c = CategoryBuilder().object("0").object("1").object("2")
                       .morphism("f", "0", "1").morphism("g", "1", "2").build();
    CHECK_FALSE(validate_category(c).ok());
  }
  SECTION("standard constructions agree with the oracle") {
    for (const auto& c : {empty_category(), discrete_category(3), chain_category(4),
                          cyclic_group_category(3), symmetric_group_category(3)}) {
      CHECK(oracle_is_category(c));
      CHECK(validate_category(c).ok());
    }
  }
}

TEST_CASE("fin_product", "[limit]") {
  SECTION("empty product is a singleton") {
    const auto p = fin_product({});
    REQUIRE(p.apex.size() == 1);
    CHECK(p.apex[0] == Element::tuple({}));
  }
  SECTION("{a,b} x {c}") {
    const std::vector<FinSet> fs{FinSet::atoms({"a", "b"}), FinSet::atoms({"c"})};
    const auto p = fin_product(fs);
    CHECK(p.apex == FinSet({Element::tuple({atom("a"), atom("c")}),
                            Element::tuple({atom("b"), atom("c")})}));
  }
  SECTION("{0,1} squared") {
    const std::vector<FinSet> fs{FinSet::range(2), FinSet::range(2)};
    const auto p = fin_product(fs);
    CHECK(p.apex.size() == 4);
    for (std::size_t i = 0; i < 2; ++i) CHECK(p.legs[i].is_surjective());
  }
}

TEST_CASE("fin_limit", "[limit]") {
  SECTION("pullback over a singleton is a product") {
    const auto shape = diagram_shape(3, {{0, 2}, {1, 2}});
    const auto x = FinSet::atoms({"x"});
    const auto f = FinFunction(FinSet::atoms({"a", "b"}), x, {0, 0});
    const auto g = FinFunction(FinSet::atoms({"c"}), x, {0});
    const auto l = fin_limit(make_set_diagram(shape, {f.dom(), g.dom(), x}, {f, g}));
    CHECK(l.apex.size() == 2);
  }
  SECTION("equalizer of id and swap is empty") {
    const auto shape = diagram_shape(2, {{0, 1}, {0, 1}});
    const auto s = FinSet::range(2);
    const auto id = FinFunction::identity(s);
    const auto swap = FinFunction(s, s, {1, 0});
    // Oracle: fixed points of swap.
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < 2; ++i) fixed += swap.at(i) == i;
    const auto l = fin_limit(make_set_diagram(shape, {s, s}, {id, swap}));
    CHECK(l.apex.size() == fixed);
    CHECK(l.apex.empty());
  }
  SECTION("g(3) wide pullback for the nerve of C2 has 8 elements") {
    const auto t1 = FinSet::atoms({"e", "g"});
    const auto t0 = FinSet::atoms({"*"});
    const FinFunction st(t1, t0, {0, 0});
    const auto shape = diagram_shape(5, {{0, 1}, {2, 1}, {2, 3}, {4, 3}});
    const auto l = fin_limit(make_set_diagram(shape, {t1, t0, t1, t0, t1}, {st, st, st, st}));
    CHECK(l.apex.size() == 8);
  }
  SECTION("non-functorial diagrams are rejected") {
    const auto shape = chain_category(3);
    SetDiagram d{shape, {FinSet::range(2), FinSet::range(2), FinSet::range(2)}, {}};
    d.arrows.resize(shape.morphism_count());
    const auto s = FinSet::range(2);
    for (std::size_t m = 0; m < shape.morphism_count(); ++m) {
      d.arrows[m] = FinFunction::identity(s);
    }
    d.arrows[shape.morphism_index(atom("0<2"))] = FinFunction(s, s, {1, 0});
    CHECK_THROWS_AS(fin_limit(d), ValidationError);
  }
  SECTION("limit over the terminal shape wraps elements in tuples") {
    const auto s = FinSet::atoms({"p", "q", "r"});
    const SetDiagram d{terminal_category(), {s}, {FinFunction::identity(s)}};
    const auto l = fin_limit(d);
    REQUIRE(l.apex.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(l.apex[i] == Element::tuple({s[i]}));
      CHECK(l.legs[0].at(i) == i);
    }
  }
  SECTION("the size guard fires") {
    ScopedSizeBound bound(10);
    const std::vector<FinSet> fs{FinSet::range(4), FinSet::range(4)};
    CHECK_THROWS_AS(fin_product(fs), ResourceError);
  }
}

TEST_CASE("limits satisfy the universal property on small cones", "[limit][property]") {
  // Pullback of f: {0,1,2} -> {0,1}, g: {0,1} -> {0,1}.
  const auto a = FinSet::range(3);
  const auto b = FinSet::range(2);
  const auto c = FinSet::range(2);
  const FinFunction f(a, c, {0, 1, 1});
  const FinFunction g(b, c, {1, 1});
  const auto shape = diagram_shape(3, {{0, 2}, {1, 2}});
  const auto lim = fin_limit(make_set_diagram(shape, {a, b, c}, {f, g}));
  for (std::size_t k = 0; k <= 2; ++k) {
    const auto K = FinSet::range(k);
    for (const auto& ka : all_functions(K, a)) {
      for (const auto& kb : all_functions(K, b)) {
        if (!(compose(f, ka) == compose(g, kb))) continue;
        const auto kc = compose(f, ka);
        std::size_t mediators = 0;
        for (const auto& m : all_functions(K, lim.apex)) {
          if (compose(lim.legs[0], m) == ka && compose(lim.legs[1], m) == kb &&
              compose(lim.legs[2], m) == kc) {
            ++mediators;
          }
        }
        CHECK(mediators == 1);
        const std::vector<FinFunction> cone{ka, kb, kc};
        CHECK(compose(lim.legs[0], mediate(lim, K, cone)) == ka);
      }
    }
  }
}
