#include <catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <random>

#include "ftopos/corpus.hpp"
#include "ftopos/enumerate.hpp"
#include "ftopos/errors.hpp"
#include "ftopos/guard.hpp"
#include "ftopos/univalence.hpp"

using namespace ftopos;

namespace {

NatTrans set_fn(const FinSet& dom, const FinSet& cod,
                std::initializer_list<std::pair<const char*, const char*>> pairs) {
  std::vector<std::pair<Element, Element>> ps;
  for (const auto& [a, b] : pairs) ps.emplace_back(atom(a), atom(b));
  return set_map(dom, cod, ps);
}

std::size_t power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}

NatTrans fibre_map(const std::vector<std::size_t>& fibres) {
  // E has fibres[b] elements over b.
  std::vector<Element> es;
  std::vector<std::size_t> table;
  for (std::size_t b = 0; b < fibres.size(); ++b) {
    for (std::size_t k = 0; k < fibres[b]; ++k) {
      es.push_back(Element::tuple({atom(b), atom(k)}));
    }
  }
  const FinSet e(es);
  for (const auto& x : e) table.push_back(std::stoul(x[0].name()));
  return set_map(FinFunction(e, FinSet::range(fibres.size()), table));
}

}  // namespace

TEST_CASE("nerve of an identity") {
  for (std::size_t n = 0; n <= 3; ++n) {
    const NerveOfMap nv = nerve_of_map(identity(set_presheaf(FinSet::range(n))));
    CHECK(nv.M.total.at(0).size() == n * n);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(nv.trunc.level[k].at(0).size() == power(n, k + 1));
    }
    CHECK(validate_category_object(nv.cat).ok());
    CHECK(is_segal(nv.trunc));
  }
}

TEST_CASE("fibrewise maps are functions between fibres") {
  for (const auto& fibres : std::vector<std::vector<std::size_t>>{
           {0}, {1}, {2}, {3}, {1, 2}, {2, 0, 1}, {0, 0}, {3, 1}}) {
    const NatTrans p = fibre_map(fibres);
    const NerveOfMap nv = nerve_of_map(p);
    for (std::size_t a = 0; a < fibres.size(); ++a) {
      for (std::size_t b = 0; b < fibres.size(); ++b) {
        std::size_t count = 0;
        for (const auto& m : nv.M.total.at(0)) {
          count += m[0] == Element::tuple({atom(a), atom(b)});
        }
        CHECK(count == power(fibres[b], fibres[a]));
      }
    }
    CHECK(fibrewise_maps_by_exponential(p, nv.base).total.at(0).size() ==
          nv.M.total.at(0).size());
  }
  // F -> 1: the internal F^F.
  const NatTrans to_one = to_terminal(set_presheaf(FinSet::range(3)));
  CHECK(nerve_of_map(to_one).M.total.at(0).size() == 27);

  const NatTrans bij = set_fn(FinSet::atoms({"a", "b"}), FinSet::atoms({"x", "y"}),
                              {{"a", "x"}, {"b", "y"}});
  const NerveOfMap nv = nerve_of_map(bij);
  std::size_t over_xy = 0;
  for (const auto& m : nv.M.total.at(0)) over_xy += m[0] == Element::tuple({atom("x"), atom("y")});
  CHECK(over_xy == 1);
}

TEST_CASE("nerves of maps in presheaf toposes") {
  for (const auto& t : {corpus::c2_sets(), corpus::sierpinski()}) {
    const auto xs = enumerate_presheaves(t, 2);
    std::size_t built = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < xs.size(); ++j) {
        for (const auto& p : enumerate_homs(xs[i], xs[j], 1)) {
          const NerveOfMap nv = nerve_of_map(p);
          CHECK(validate_category_object(nv.cat).ok());
          const SegalObject seg(nv.trunc);
          const auto r = check_complete(seg);
          CHECK(r.s0_iso == r.pullback_square);
          CHECK(is_mono(hoequiv(seg).U));
          ++built;
        }
      }
    }
    CHECK(built > 5);
  }
}

TEST_CASE("univalence examples") {
  CHECK(is_univalent(identity(set_presheaf(FinSet::range(1)))).univalent);
  CHECK_FALSE(is_univalent(identity(set_presheaf(FinSet::range(2)))).univalent);
  CHECK(is_univalent(identity(set_presheaf(FinSet::range(0)))).univalent);
}

TEST_CASE("the S3 action on three points") {
  // The object of self-equivalences of the fibre is S3 under conjugation:
  // six elements, a single global one. Completeness asks for an
  // isomorphism with X0 = 1, which fails.
  const NatTrans p = to_terminal(corpus::s3_natural_action());
  const NerveOfMap nv = nerve_of_map(p);
  CHECK(nv.M.total.at(0).size() == 27);
  const SegalObject seg(nv.trunc);
  const EquivalencesObject eq = hoequiv(seg);
  CHECK(eq.carrier.at(0).size() == 6);
  CHECK(global_elements(eq.carrier).size() == 1);
  CHECK(global_elements(nv.trunc.level[0]).size() == 1);

  const UnivalenceReport r = is_univalent(p);
  CHECK_FALSE(r.mono);
  CHECK_FALSE(r.univalent);
  CHECK(r.completeness.x0_size == 1);
  CHECK(r.completeness.hoequiv_size == 6);
  CHECK(r.completeness.s0_iso == r.completeness.pullback_square);
  CHECK_FALSE(r.fiber_oracle.has_value());

  // Probing with the free orbit as context separates the two.
  const Presheaf orbit = corpus::representable(corpus::s3_sets(), 0);
  CHECK(count_homs(orbit, eq.carrier) == 6);
  CHECK(count_homs(orbit, nv.trunc.level[0]) == 1);
}

TEST_CASE("fibre oracle") {
  const FinSet empty;
  const FinSet one = FinSet::atoms({"1"});
  const FinSet two = FinSet::atoms({"0", "1"});
  CHECK(fiber_oracle_univalent(set_map(FinFunction(empty, empty, {}))));
  CHECK(fiber_oracle_univalent(set_fn(one, two, {{"1", "1"}})));
  CHECK_FALSE(fiber_oracle_univalent(
      set_fn(FinSet::atoms({"a", "b"}), FinSet::atoms({"x"}), {{"a", "x"}, {"b", "x"}})));
  CHECK_THROWS_AS(fiber_oracle_univalent(to_terminal(corpus::s3_natural_action())),
                  ValidationError);
}

TEST_CASE("FinSet sweep agrees with the fibre oracle") {
  const auto sweep = enumerate_univalent(Topos::sets(), {3, 3});
  REQUIRE(sweep.arrows.size() == sweep.reports.size());
  for (std::size_t i = 0; i < sweep.arrows.size(); ++i) {
    const auto& r = sweep.reports[i];
    REQUIRE(r.fiber_oracle.has_value());
    CHECK(r.univalent == *r.fiber_oracle);
    CHECK(r.univalent == fiber_oracle_univalent(sweep.arrows[i]));
    if (r.univalent) CHECK(r.mono);
  }
  REQUIRE(sweep.univalent.size() == 4);
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  for (std::size_t i : sweep.univalent) {
    sizes.emplace_back(sweep.arrows[i].dom().at(0).size(), sweep.arrows[i].cod().at(0).size());
  }
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {0, 1}, {1, 1}, {1, 2}});

  // Arrows up to iso with |E|, |B| <= 3: sum over B of multisets of fibre sizes.
  std::size_t expected = 0;
  for (std::size_t b = 0; b <= 3; ++b) {
    for (std::size_t e = 0; e <= 3; ++e) {
      // Partitions of e into at most b parts (zeros allowed).
      std::function<std::size_t(std::size_t, std::size_t, std::size_t)> parts =
          [&](std::size_t n, std::size_t k, std::size_t max) -> std::size_t {
        if (k == 0) return n == 0 ? 1 : 0;
        std::size_t total = 0;
        for (std::size_t first = 0; first <= std::min(n, max); ++first) {
          total += parts(n - first, k - 1, first);
        }
        return total;
      };
      expected += parts(e, b, e);
    }
  }
  CHECK(sweep.arrows.size() == expected);
}

TEST_CASE("small bounds") {
  const auto zero = enumerate_univalent(Topos::sets(), {0, 0});
  REQUIRE(zero.univalent.size() == 1);
  CHECK(zero.arrows[zero.univalent[0]].cod().at(0).size() == 0);
  CHECK(enumerate_univalent(Topos::sets(), {2, 2}).univalent.size() == 4);
}

TEST_CASE("parallel enumeration is deterministic") {
  const auto one = enumerate_univalent(corpus::c2_sets(), {2, 2});
  set_parallelism(3);
  const auto three = enumerate_univalent(corpus::c2_sets(), {2, 2});
  set_parallelism(1);
  REQUIRE(one.arrows.size() == three.arrows.size());
  for (std::size_t i = 0; i < one.arrows.size(); ++i) {
    CHECK(one.arrows[i] == three.arrows[i]);
    CHECK(one.reports[i].univalent == three.reports[i].univalent);
  }
  CHECK(one.univalent == three.univalent);
}

TEST_CASE("identity maps are univalent exactly on subterminals") {
  for (const auto& t : {Topos::sets(), corpus::c2_sets(), corpus::sierpinski()}) {
    for (const auto& b : enumerate_presheaves(t, 2)) {
      CHECK(is_univalent(identity(b)).univalent == is_minus1_truncated(b));
    }
  }
  for (const auto& b : enumerate_presheaves(corpus::s3_sets(), 1)) {
    CHECK(is_univalent(identity(b)).univalent == is_minus1_truncated(b));
  }
}

TEST_CASE("pullback squares between maps") {
  const FinSet empty;
  const FinSet one = FinSet::atoms({"1"});
  const FinSet two = FinSet::atoms({"0", "1"});
  const NatTrans incl = set_fn(one, two, {{"1", "1"}});
  const NatTrans none = set_map(FinFunction(empty, empty, {}));
  CHECK(pullback_square_homs(incl, incl).size() == 1);
  CHECK(pullback_square_homs(none, incl).size() == 1);
  // Both verticals are isos, so every f_B gives a pullback square.
  CHECK(pullback_square_homs(identity(set_presheaf(two)), identity(set_presheaf(two))).size() ==
        4);

  const auto sweep = enumerate_univalent(Topos::sets(), {3, 3});
  for (std::size_t i : sweep.univalent) {
    for (std::size_t j : sweep.univalent) {
      CHECK(pullback_square_homs(sweep.arrows[i], sweep.arrows[j]).size() <= 1);
    }
  }
}

TEST_CASE("univalent iff the base map is mono") {
  const FinSet one = FinSet::atoms({"1"});
  const FinSet two = FinSet::atoms({"0", "1"});
  const NatTrans incl = set_fn(one, two, {{"1", "1"}});

  const auto square_along = [](const NatTrans& p1, const NatTrans& f_b) {
    const PresheafLimit pb = pullback(p1, f_b);
    return PullbackSquareMorphism{pb.legs[1], p1, pb.legs[0], f_b};
  };
  const auto along_mono = check_uni_iff_mono(square_along(incl, incl));
  CHECK(along_mono.p2_univalent);
  CHECK(along_mono.f_B_mono);
  const NatTrans constant =
      set_fn(FinSet::atoms({"a", "b"}), two, {{"a", "1"}, {"b", "1"}});
  const auto along_constant = check_uni_iff_mono(square_along(incl, constant));
  CHECK_FALSE(along_constant.p2_univalent);
  CHECK_FALSE(along_constant.f_B_mono);
  CHECK(along_constant.agree);

  CHECK_THROWS_AS(check_uni_iff_mono(square_along(identity(set_presheaf(two)),
                                                  identity(set_presheaf(two)))),
                  ValidationError);

  std::mt19937 rng(3);
  for (const auto& t : {Topos::sets(), corpus::c2_sets()}) {
    const auto sweep = enumerate_univalent(t, {2, 2});
    const auto objects = enumerate_presheaves(t, 2);
    std::size_t checked = 0;
    for (std::size_t round = 0; round < 400 && checked < 25; ++round) {
      const NatTrans& p1 = sweep.arrows[sweep.univalent[rng() % sweep.univalent.size()]];
      const auto maps = enumerate_homs(objects[rng() % objects.size()], p1.cod());
      if (maps.empty()) continue;
      const auto v = check_uni_iff_mono(square_along(p1, maps[rng() % maps.size()]));
      CHECK(v.agree);
      ++checked;
    }
    CHECK(checked == 25);
  }
}

TEST_CASE("the universal mono is univalent") {
  for (const auto& t : {Topos::sets(), corpus::c2_sets(), corpus::sierpinski()}) {
    const auto v = check_universal_mono_univalent(t);
    CHECK(v.report.univalent);
    CHECK(v.internal_poset);
  }
}

TEST_CASE("monos are univalent when their classifying map is mono") {
  const FinSet empty;
  const FinSet one = FinSet::atoms({"1"});
  const FinSet two = FinSet::atoms({"0", "1"});
  const auto a = check_mono_classification(set_fn(one, two, {{"1", "1"}}));
  CHECK(a.chi_mono);
  CHECK(a.univalent);
  const auto b = check_mono_classification(from_initial(set_presheaf(two)));
  CHECK_FALSE(b.chi_mono);
  CHECK_FALSE(b.univalent);
  const auto c = check_mono_classification(identity(set_presheaf(two)));
  CHECK_FALSE(c.chi_mono);
  CHECK_FALSE(c.univalent);
  CHECK_THROWS_AS(check_mono_classification(to_terminal(set_presheaf(two))), ValidationError);

  for (const auto& t : {corpus::c2_sets(), corpus::sierpinski()}) {
    const auto xs = enumerate_presheaves(t, 2);
    for (const auto& x : xs) {
      for (const auto& y : xs) {
        for (const auto& m : enumerate_homs(x, y, 4)) {
          if (!is_mono(m)) continue;
          CHECK(check_mono_classification(m).agree);
        }
      }
    }
  }
}
