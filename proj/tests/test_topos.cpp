#include <catch_amalgamated.hpp>

#include <random>

#include "ftopos/corpus.hpp"
#include "ftopos/enumerate.hpp"
#include "ftopos/errors.hpp"
#include "ftopos/presheaf.hpp"
#include "ftopos/topos.hpp"
#include "oracles.hpp"

using namespace ftopos;

namespace {

std::size_t level_total(const Presheaf& x) {
  std::size_t n = 0;
  for (const auto& s : x.levels()) n += s.size();
  return n;
}

NatTrans set_fn(const FinSet& dom, const FinSet& cod,
                std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<std::pair<Element, Element>> ps;
  for (const auto& [a, b] : pairs) ps.emplace_back(atom(a), atom(b));
  return set_map(dom, cod, ps);
}

std::vector<Topos> small_toposes() {
  return {Topos::sets(), corpus::c2_sets(), corpus::sierpinski()};
}

}  // namespace

TEST_CASE("terminal and initial objects are universal") {
  for (const auto& t : small_toposes()) {
    const Presheaf one = terminal(t);
    const Presheaf zero = initial(t);
    for (const auto& x : enumerate_presheaves(t, 2)) {
      CHECK(count_homs(x, one) == 1);
      CHECK(count_homs(zero, x) == 1);
      CHECK(validate_nat_trans(to_terminal(x)).ok());
      CHECK(validate_nat_trans(from_initial(x)).ok());
    }
  }
}

TEST_CASE("hom enumeration agrees with brute force") {
  for (const auto& t : small_toposes()) {
    const auto xs = enumerate_presheaves(t, 2);
    for (const auto& x : xs) {
      for (const auto& y : xs) {
        CHECK(count_homs(x, y) == oracle::count_homs(x, y));
      }
    }
  }
}

TEST_CASE("presheaf enumeration counts isomorphism classes") {
  // FinSet: sets of size 0..3.
  CHECK(enumerate_presheaves(Topos::sets(), 3).size() == 4);
  // C2-sets of size <= 2: empty, 1, 2 fixed points, one free orbit.
  CHECK(enumerate_presheaves(corpus::c2_sets(), 2).size() == 4);
  // Arrow presheaves X(1) -> X(0) with sizes <= 1: the map is forced when
  // X(0) is nonempty and impossible from 1 to 0.
  CHECK(enumerate_presheaves(corpus::sierpinski(), 1).size() == 3);
}

TEST_CASE("pointwise limits") {
  const Topos t = corpus::c2_sets();
  const Presheaf orbit = corpus::representable(t, 0);
  const Presheaf two = corpus::discrete(t, 2);

  SECTION("product of free orbits splits into free orbits") {
    const auto p = product(orbit, orbit);
    CHECK(p.apex.at(0).size() == 4);
    CHECK(validate_presheaf(p.apex).ok());
    CHECK(find_iso(p.apex, corpus::copies(orbit, 2)).has_value());
  }
  SECTION("pullback along an identity is the other leg") {
    const auto pb = pullback(to_terminal(orbit), identity(terminal(t)));
    CHECK(is_iso(pb.legs[0]));
  }
  SECTION("no equivariant map from a free orbit to a point set is injective") {
    for (const auto& h : enumerate_homs(orbit, two)) CHECK_FALSE(is_mono(h));
  }
  SECTION("mediating map recovers pairing") {
    const auto p = product(orbit, two);
    const auto homs = enumerate_homs(orbit, two);
    REQUIRE_FALSE(homs.empty());
    const NatTrans m = pair(p, identity(orbit), homs.front());
    CHECK(compose(p.legs[0], m) == identity(orbit));
    CHECK(compose(p.legs[1], m) == homs.front());
  }
}

TEST_CASE("mono, epi and iso") {
  const Topos t = corpus::c2_sets();
  const Presheaf orbit = corpus::representable(t, 0);
  const Presheaf both = corpus::copies(orbit, 2);

  std::size_t monos = 0;
  for (const auto& h : enumerate_homs(orbit, both)) {
    if (is_mono(h)) ++monos;
    CHECK_FALSE(is_epi(h));
  }
  // Each of the two orbits, reached in two ways.
  CHECK(monos == 4);
  CHECK(is_epi(to_terminal(orbit)));
  CHECK_FALSE(is_mono(to_terminal(orbit)));

  for (const auto& tt : small_toposes()) {
    const auto xs = enumerate_presheaves(tt, 2);
    for (const auto& x : xs) {
      for (const auto& y : xs) {
        for (const auto& h : enumerate_homs(x, y)) {
          CHECK(is_iso(h) == (is_mono(h) && is_epi(h)));
          if (is_iso(h)) {
            CHECK(compose(inverse(h), h) == identity(x));
          }
        }
      }
    }
  }
}

TEST_CASE("subterminal objects") {
  CHECK(is_minus1_truncated(initial(Topos::sets())));
  CHECK(is_minus1_truncated(terminal(Topos::sets())));
  CHECK_FALSE(is_minus1_truncated(set_presheaf(FinSet::range(2))));
  const Topos s = corpus::sierpinski();
  for (const auto& x : enumerate_presheaves(s, 2)) {
    bool oracle = true;
    for (const auto& level : x.levels()) oracle = oracle && level.size() <= 1;
    CHECK(is_minus1_truncated(x) == oracle);
  }
}

TEST_CASE("exponentials") {
  SECTION("FinSet") {
    const auto e = exponential(set_presheaf(FinSet::range(2)), set_presheaf(FinSet::range(3)));
    CHECK(e.object.at(0).size() == 9);
  }
  SECTION("free C2 orbit to itself") {
    const Topos t = corpus::c2_sets();
    const Presheaf x = corpus::representable(t, 0);
    const auto e = exponential(x, x);
    const Presheaf yx = product(corpus::representable(t, 0), x).apex;
    CHECK(e.object.at(0).size() == oracle::count_homs(yx, x));
    CHECK(e.object.at(0).size() == 4);
  }
  SECTION("G^1 is G") {
    for (const auto& t : small_toposes()) {
      for (const auto& g : enumerate_presheaves(t, 2)) {
        const auto e = exponential(terminal(t), g);
        CHECK(find_iso(e.object, g).has_value());
      }
    }
  }
  SECTION("hom counts match the exponential adjunction") {
    for (const auto& t : small_toposes()) {
      const auto xs = enumerate_presheaves(t, 2);
      std::mt19937 rng(7);
      std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
      for (int round = 0; round < 12; ++round) {
        const auto& a = xs[pick(rng)];
        const auto& f = xs[pick(rng)];
        const auto& g = xs[pick(rng)];
        const auto e = exponential(f, g);
        CHECK(count_homs(product(a, f).apex, g) == count_homs(a, e.object));
      }
    }
  }
  SECTION("transpose inverts evaluation") {
    const Topos t = corpus::sierpinski();
    const auto xs = enumerate_presheaves(t, 2);
    const Presheaf& a = xs[3];
    const Presheaf& f = xs[4];
    const Presheaf& g = xs[5];
    const auto e = exponential(f, g);
    const auto af = product(a, f);
    for (const auto& h : enumerate_homs(af.apex, g, 20)) {
      const NatTrans ht = transpose(e, af, h);
      CHECK(compose(e.eval, product_map(af, e.product, ht, identity(f))) == h);
    }
  }
}

TEST_CASE("subobject classifier") {
  CHECK(subobject_classifier(Topos::sets()).omega.at(0).size() == 2);
  const auto c2 = subobject_classifier(corpus::c2_sets());
  CHECK(c2.omega.at(0).size() == 2);
  for (std::size_t u = 0; u < 2; ++u) {
    CHECK(c2.omega.restrict(u) == FinFunction::identity(c2.omega.at(0)));
  }
  const auto s = subobject_classifier(corpus::sierpinski());
  CHECK(s.omega.at(0).size() == 2);
  CHECK(s.omega.at(1).size() == 3);

  SECTION("sieves on c are subobjects of y(c)") {
    for (const auto& t : {corpus::sierpinski(), corpus::c2_sets(), corpus::s3_sets(),
                          Topos(chain_category(3))}) {
      const auto om = subobject_classifier(t);
      for (std::size_t c = 0; c < t.index().object_count(); ++c) {
        CHECK(om.omega.at(c).size() ==
              oracle::count_subobjects(corpus::representable(t, c)));
      }
    }
  }
  SECTION("maps into omega count subobjects") {
    for (const auto& t : small_toposes()) {
      const auto om = subobject_classifier(t);
      for (const auto& x : enumerate_presheaves(t, 2)) {
        CHECK(count_homs(x, om.omega) == oracle::count_subobjects(x));
      }
    }
  }
}

TEST_CASE("characteristic maps") {
  const FinSet two = FinSet::atoms({"0", "1"});
  const FinSet one = FinSet::atoms({"1"});
  const auto om = subobject_classifier(Topos::sets());
  const NatTrans m = set_fn(one, two, {{"1", "1"}});
  const NatTrans chi = classify_mono(om, m);
  CHECK(chi.at(0).is_bijective());
  CHECK(chi.at(0)(atom("1")) == om.truth.at(0)(terminal(Topos::sets()).at(0)[0]));
  CHECK(compose(chi, m) == compose(om.truth, to_terminal(m.dom())));

  const NatTrans all = classify_mono(om, identity(set_presheaf(two)));
  CHECK(all == compose(om.truth, to_terminal(set_presheaf(two))));

  const NatTrans none = classify_mono(om, from_initial(set_presheaf(two)));
  for (std::size_t i = 0; i < 2; ++i) CHECK(none.at(0).at(i) != all.at(0).at(i));

  CHECK_THROWS_AS(classify_mono(om, to_terminal(set_presheaf(two))), ValidationError);

  SECTION("orbit inclusion in C2-sets") {
    const Topos t = corpus::c2_sets();
    const Presheaf orbit = corpus::representable(t, 0);
    const Presheaf both = corpus::copies(orbit, 2);
    const auto omc = subobject_classifier(t);
    for (const auto& h : enumerate_homs(orbit, both)) {
      if (!is_mono(h)) continue;
      const NatTrans chi2 = classify_mono(omc, h);
      const auto trues = compose(omc.truth, to_terminal(both));
      std::size_t hits = 0;
      for (std::size_t i = 0; i < 4; ++i) hits += chi2.at(0).at(i) == trues.at(0).at(i);
      CHECK(hits == 2);
    }
  }
}

TEST_CASE("base change") {
  const FinSet e = FinSet::atoms({"a", "b", "c"});
  const FinSet b = FinSet::atoms({"x", "y"});
  const NatTrans p = set_fn(e, b, {{"a", "x"}, {"b", "x"}, {"c", "y"}});
  const NatTrans pt = set_fn(FinSet::atoms({"x"}), b, {{"x", "x"}});
  CHECK(pullback_functor(pt, slice(p)).total.at(0).size() == 2);
  CHECK(find_iso(pullback_functor(identity(p.cod()), slice(p)).total, p.dom()).has_value());

  const Topos t = corpus::sierpinski();
  const auto xs = enumerate_presheaves(t, 2);
  for (const auto& x : xs) {
    for (const auto& y : xs) {
      for (const auto& m : enumerate_homs(x, y, 4)) {
        if (!is_mono(m)) continue;
        for (const auto& f : enumerate_homs(xs[2], y, 3)) {
          CHECK(is_mono(pullback_functor(f, slice(m)).proj));
        }
      }
    }
  }
}

TEST_CASE("dependent products") {
  SECTION("FinSet fibres are products of fibres") {
    const FinSet a = FinSet::atoms({"a1", "a2", "a3"});
    const FinSet b = FinSet::atoms({"b1", "b2"});
    const FinSet x = FinSet::atoms({"p", "q", "r", "s", "t"});
    const NatTrans f = set_fn(a, b, {{"a1", "b1"}, {"a2", "b1"}, {"a3", "b2"}});
    const NatTrans xp = set_fn(x, a, {{"p", "a1"}, {"q", "a1"}, {"r", "a2"}, {"s", "a2"},
                                      {"t", "a2"}});
    const SliceMap pi = dependent_product(f, slice(xp));
    // Fibre over b1: 2 * 3 sections; over b2: the empty fibre over a3.
    std::size_t over_b1 = 0;
    std::size_t over_b2 = 0;
    for (std::size_t i = 0; i < pi.total.at(0).size(); ++i) {
      (pi.proj.at(0)(pi.total.at(0)[i]) == atom("b1") ? over_b1 : over_b2) += 1;
    }
    CHECK(over_b1 == 6);
    CHECK(over_b2 == 0);
  }
  SECTION("along an identity") {
    for (const auto& t : small_toposes()) {
      const auto xs = enumerate_presheaves(t, 2);
      for (std::size_t i = 0; i < xs.size(); i += 3) {
        for (const auto& q : enumerate_homs(xs[i], xs[(i + 1) % xs.size()], 2)) {
          const SliceMap pi = dependent_product(identity(q.cod()), slice(q));
          CHECK(find_iso(pi.total, q.dom()).has_value());
        }
      }
    }
  }
  SECTION("global elements of the product to 1 are sections") {
    for (const auto& t : small_toposes()) {
      const auto xs = enumerate_presheaves(t, 2);
      for (std::size_t i = 0; i < xs.size(); i += 2) {
        for (const auto& q : enumerate_homs(xs[i], xs[(i + 3) % xs.size()], 3)) {
          const SliceMap pi = dependent_product(to_terminal(q.cod()), slice(q));
          CHECK(global_elements(pi.total).size() == enumerate_sections(q).size());
        }
      }
    }
  }
  SECTION("right adjoint to base change") {
    for (const auto& t : small_toposes()) {
      const auto xs = enumerate_presheaves(t, 2);
      std::mt19937 rng(11);
      std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
      int checked = 0;
      for (int round = 0; round < 40 && checked < 10; ++round) {
        const auto fs = enumerate_homs(xs[pick(rng)], xs[pick(rng)], 1);
        if (fs.empty()) continue;
        const NatTrans& f = fs.front();
        const auto xps = enumerate_homs(xs[pick(rng)], f.dom(), 1);
        const auto yps = enumerate_homs(xs[pick(rng)], f.cod(), 1);
        if (xps.empty() || yps.empty()) continue;
        const SliceMap pi = dependent_product(f, slice(xps.front()));
        const SliceMap pb = pullback_functor(f, slice(yps.front()));
        CHECK(count_slice_homs(pb.proj, xps.front()) == count_slice_homs(yps.front(), pi.proj));
        ++checked;
      }
      CHECK(checked > 0);
    }
  }
}

TEST_CASE("slices as presheaves on the category of elements") {
  const Topos t = corpus::sierpinski();
  const auto xs = enumerate_presheaves(t, 2);
  const Presheaf& base = xs[4];
  const Topos el(category_of_elements(base));
  for (const auto& x : xs) {
    for (const auto& p : enumerate_homs(x, base, 3)) {
      const Presheaf q = slice_to_presheaf(el, slice(p));
      CHECK(validate_presheaf(q).ok());
      const SliceMap back = presheaf_to_slice(q, base);
      CHECK(arrows_isomorphic(back.proj, p));
    }
  }
}
