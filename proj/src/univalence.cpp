#include "ftopos/univalence.hpp"

#include <chrono>
#include <set>
#include <unordered_map>

#include "ftopos/enumerate.hpp"
#include "ftopos/errors.hpp"
#include "ftopos/guard.hpp"
#include "parallel.hpp"

namespace ftopos {

namespace {

NatTrans identity_section(const NatTrans& p, const SliceMap& m) {
  const Presheaf& b = p.cod();
  const auto& idx = b.index();
  std::vector<FinFunction> comps;
  for (std::size_t c = 0; c < idx.object_count(); ++c) {
    std::vector<std::size_t> table;
    for (const auto& x : b.at(c)) {
      const Element over = Element::tuple({x, x});
      std::optional<std::size_t> found;
      for (std::size_t i = 0; i < m.total.at(c).size(); ++i) {
        const Element& phi = m.total.at(c)[i];
        if (!(phi[0] == over)) continue;
        bool diagonal = true;
        for (const auto& [key, value] : phi[1].entries()) diagonal = diagonal && value[0] == value[1];
        if (!diagonal) continue;
        if (found) throw InternalError("identity of the nerve is not unique over " + x.str());
        found = i;
      }
      if (!found) throw InternalError("no identity in the nerve over " + x.str());
      table.push_back(*found);
    }
    comps.emplace_back(b.at(c), m.total.at(c), std::move(table));
  }
  NatTrans e(b, m.total, std::move(comps));
  validate_nat_trans(e).require("identity section");
  return e;
}

Element compose_families(const Presheaf& b, const Element& phi, const Element& psi) {
  const auto& idx = b.index();
  const Element& b1 = phi[0][0];
  const Element& b3 = psi[0][1];
  std::vector<Element::Entry> entries;
  for (const auto& [key, value] : phi[1].entries()) {
    const Element& u = key[0];
    const Element b3u = b.restrict(idx.morphism_index(u))(b3);
    const Element* next = psi[1].find(Element::tuple({u, Element::tuple({value[1], b3u})}));
    if (!next) throw InternalError("composable families do not meet at " + key.str());
    entries.emplace_back(Element::tuple({u, Element::tuple({key[1][0], b3u})}),
                         Element::tuple({key[1][0], (*next)[1]}));
  }
  return Element::tuple({Element::tuple({b1, b3}), Element::fam(std::move(entries))});
}

Element normalize_product_element(const Element& m) {
  std::vector<Element::Entry> entries;
  for (const auto& [key, value] : m[1].entries()) {
    entries.emplace_back(Element::tuple({key[0], key[1][0]}), value[1]);
  }
  return Element::tuple({m[0], Element::fam(std::move(entries))});
}

Element normalize_exponential_element(const Element& m) {
  std::vector<Element::Entry> entries;
  for (const auto& [key, value] : m[1].entries()) {
    entries.emplace_back(Element::tuple({key[0][0], key[1][0]}), value[1]);
  }
  return Element::tuple({m[0], Element::fam(std::move(entries))});
}

UnivalenceReport univalence_of(const NerveOfMap& n, std::chrono::steady_clock::time_point start) {
  UnivalenceReport r;
  r.exponential_route_agrees = true;
  std::optional<SegalObject> seg;
  try {
    seg.emplace(n.trunc);
  } catch (const ValidationError& e) {
    throw InternalError(std::string("nerve of a map is not Segal: ") + e.what());
  }
  r.completeness = check_complete(*seg);
  r.univalent = r.completeness.complete;
  r.mono = is_mono(n.p);
  for (std::size_t k = 0; k < 4; ++k) r.level_sizes[k] = n.trunc.level[k].total_size();
  r.morphism_object_size = n.M.total.total_size();
  if (is_finset(n.p.dom().topos())) {
    r.fiber_oracle = fiber_oracle_univalent(n.p);
    r.oracle_agrees = *r.fiber_oracle == r.univalent;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<std::size_t> table_key(const NatTrans& f) {
  std::vector<std::size_t> key;
  for (const auto& c : f.components()) key.insert(key.end(), c.table().begin(), c.table().end());
  return key;
}

}  // namespace

SliceMap fibrewise_maps_by_exponential(const NatTrans& p, const PresheafLimit& base) {
  const Presheaf& e = p.dom();
  const Presheaf& b = p.cod();
  const Presheaf& bb = base.apex;
  const Topos el(category_of_elements(bb));
  const PresheafLimit eb = product(e, b);
  const PresheafLimit be = product(b, e);
  const NatTrans from = product_map(eb, base, p, identity(b));
  const NatTrans to = product_map(be, base, identity(b), p);
  const Presheaf f = slice_to_presheaf(el, slice(from));
  const Presheaf g = slice_to_presheaf(el, slice(to));
  return presheaf_to_slice(exponential(f, g).object, bb);
}

NatTrans compare_fibrewise_maps(const NatTrans& p, const SliceMap& by_product,
                                const SliceMap& by_exponential) {
  const auto& idx = p.cod().index();
  std::vector<FinFunction> comps;
  for (std::size_t c = 0; c < idx.object_count(); ++c) {
    std::unordered_map<Element, std::size_t, ElementHash> partner;
    for (std::size_t i = 0; i < by_exponential.total.at(c).size(); ++i) {
      partner.emplace(normalize_exponential_element(by_exponential.total.at(c)[i]), i);
    }
    std::vector<std::size_t> table;
    for (const auto& m : by_product.total.at(c)) {
      const auto it = partner.find(normalize_product_element(m));
      if (it == partner.end()) {
        throw InternalError("fibrewise map " + m.str() + " missing from the exponential");
      }
      table.push_back(it->second);
    }
    comps.emplace_back(by_product.total.at(c), by_exponential.total.at(c), std::move(table));
  }
  NatTrans out(by_product.total, by_exponential.total, std::move(comps));
  validate_nat_trans(out).require("comparison of fibrewise maps");
  return out;
}

NerveOfMap nerve_of_map(const NatTrans& p) {
  NerveOfMap n;
  n.p = p;
  const Presheaf& e = p.dom();
  const Presheaf& b = p.cod();
  n.base = product(b, b);
  const PresheafLimit eb = product(e, b);
  const PresheafLimit ee = product(e, e);
  const NatTrans along = product_map(eb, n.base, p, identity(b));
  const NatTrans pairs_over = product_map(ee, eb, identity(e), p);
  n.M = dependent_product(along, slice(pairs_over));

  CategoryObject& cat = n.cat;
  cat.c0 = b;
  cat.c1 = n.M.total;
  cat.s = compose(n.base.legs[0], n.M.proj);
  cat.t = compose(n.base.legs[1], n.M.proj);
  cat.e = identity_section(p, n.M);
  cat.pairs = composable_pairs(cat.s, cat.t);
  cat.m = natural_map(cat.pairs.apex, cat.c1, [&](std::size_t, const Element& pr) {
    return compose_families(b, pr[0], pr[1]);
  });
  const ValidationReport axioms = validate_category_object(cat);
  if (!axioms.ok()) {
    std::string msg = "nerve of a map is not a category object";
    for (const auto& v : axioms.violations) msg += "; " + v;
    throw InternalError(msg);
  }
  n.trunc = nerve_truncation_unchecked(cat);

  const SliceMap alt = fibrewise_maps_by_exponential(p, n.base);
  const NatTrans cmp = compare_fibrewise_maps(p, n.M, alt);
  if (!is_iso(cmp) || !(compose(alt.proj, cmp) == n.M.proj)) {
    throw InternalError("the two constructions of fibrewise maps disagree");
  }
  return n;
}

UnivalenceReport is_univalent(const NatTrans& p) {
  const auto start = std::chrono::steady_clock::now();
  return univalence_of(nerve_of_map(p), start);
}

bool is_finset(const Topos& t) {
  return t.index().object_count() == 1 && t.index().morphism_count() == 1;
}

bool fiber_oracle_univalent(const NatTrans& p) {
  if (!is_finset(p.dom().topos())) throw ValidationError("fibre oracle needs FinSet");
  std::vector<std::size_t> fibre(p.cod().at(0).size(), 0);
  for (std::size_t i = 0; i < p.dom().at(0).size(); ++i) ++fibre[p.at(0).at(i)];
  std::set<std::size_t> seen;
  for (std::size_t n : fibre) {
    if (n > 1 || !seen.insert(n).second) return false;
  }
  return true;
}

std::vector<NatTrans> enumerate_arrows(const Topos& t, ArrowBounds bounds) {
  const auto es = enumerate_presheaves(t, bounds.max_total);
  const auto bs = enumerate_presheaves(t, bounds.max_base);
  std::vector<std::vector<NatTrans>> aut_b;
  for (const auto& b : bs) aut_b.push_back(automorphisms(b));
  std::vector<NatTrans> out;
  for (const auto& e : es) {
    const auto aut_e = automorphisms(e);
    for (std::size_t bi = 0; bi < bs.size(); ++bi) {
      std::set<std::vector<std::size_t>> seen;
      for (const auto& h : enumerate_homs(e, bs[bi])) {
        std::vector<std::size_t> canonical;
        bool first = true;
        for (const auto& a : aut_e) {
          const NatTrans ha = compose(h, a);
          for (const auto& g : aut_b[bi]) {
            auto key = table_key(compose(g, ha));
            if (first || key < canonical) canonical = std::move(key);
            first = false;
          }
        }
        if (seen.insert(canonical).second) {
          out.push_back(h);
          check_size("arrow enumeration", out.size());
        }
      }
    }
  }
  return out;
}

UnivalentEnumeration enumerate_univalent(const Topos& t, ArrowBounds bounds) {
  UnivalentEnumeration out;
  out.arrows = enumerate_arrows(t, bounds);
  out.reports.resize(out.arrows.size());
  detail::parallel_for(out.arrows.size(),
                       [&](std::size_t i) { out.reports[i] = is_univalent(out.arrows[i]); });
  for (std::size_t i = 0; i < out.arrows.size(); ++i) {
    if (out.reports[i].univalent) out.univalent.push_back(i);
  }
  return out;
}

bool is_pullback_square(const PullbackSquareMorphism& sq) {
  if (!(compose(sq.p1, sq.f_E) == compose(sq.f_B, sq.p2))) return false;
  const PresheafLimit pb = pullback(sq.p1, sq.f_B);
  const std::vector<NatTrans> cone{sq.f_E, sq.p2, compose(sq.f_B, sq.p2)};
  return is_iso(mediate(pb, sq.p2.dom(), cone));
}

std::vector<PullbackSquareMorphism> pullback_square_homs(const NatTrans& p2, const NatTrans& p1) {
  std::vector<PullbackSquareMorphism> out;
  for (const auto& f_b : enumerate_homs(p2.cod(), p1.cod())) {
    for (const auto& f_e : enumerate_slice_homs(compose(f_b, p2), p1)) {
      PullbackSquareMorphism sq{p2, p1, f_e, f_b};
      if (is_pullback_square(sq)) {
        out.push_back(std::move(sq));
        check_size("pullback squares", out.size());
      }
    }
  }
  return out;
}

UniIffMonoVerdict check_uni_iff_mono(const PullbackSquareMorphism& sq) {
  if (!is_pullback_square(sq)) throw ValidationError("not a pullback square");
  if (!is_univalent(sq.p1).univalent) throw ValidationError("target map is not univalent");
  UniIffMonoVerdict v;
  v.p2_univalent = is_univalent(sq.p2).univalent;
  v.f_B_mono = is_mono(sq.f_B);
  v.agree = v.p2_univalent == v.f_B_mono;
  return v;
}

UniversalMonoVerdict check_universal_mono_univalent(const Topos& t) {
  const auto start = std::chrono::steady_clock::now();
  const SubobjectClassifier om = subobject_classifier(t);
  const NerveOfMap n = nerve_of_map(om.truth);
  UniversalMonoVerdict v;
  v.report = univalence_of(n, start);
  v.internal_poset = is_mono(n.M.proj);
  return v;
}

MonoClassificationVerdict check_mono_classification(const NatTrans& v) {
  if (!is_mono(v)) throw ValidationError("mono classification needs a mono");
  MonoClassificationVerdict out;
  out.chi = classify_mono(v);
  out.univalent = is_univalent(v).univalent;
  out.chi_mono = is_mono(out.chi);
  out.agree = out.univalent == out.chi_mono;
  return out;
}

}  // namespace ftopos
