#include "ftopos/topos.hpp"

#include <map>

#include "families.hpp"
#include "ftopos/errors.hpp"
#include "ftopos/guard.hpp"

namespace ftopos {

namespace {

/// Key (u, a) of a family over the Yoneda fan of c.
struct FanKey {
  std::size_t morphism;
  std::size_t element;  // index in the fibre presheaf at src(morphism)
};

Element fan_key(const FiniteCategory& c, const Presheaf& a, const FanKey& k) {
  return Element::tuple({c.morphisms()[k.morphism], a.at(c.src(k.morphism))[k.element]});
}

/// Enumerates natural families over the keys (solutions as value indices).
/// `values` is the presheaf the family lands in, `keyed` the presheaf the
/// second key component lives in.
std::vector<std::vector<std::size_t>> solve_fan(
    const FiniteCategory& c, const std::vector<FanKey>& keys, const Presheaf& keyed,
    const Presheaf& values,
    const std::function<std::vector<std::size_t>(const FanKey&)>& candidates,
    const std::string& what) {
  detail::FamilySolver solver;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> id;
  for (const auto& k : keys) {
    id[{k.morphism, k.element}] =
        solver.add_key(candidates(k), values.at(c.src(k.morphism)).size());
  }
  for (const auto& k : keys) {
    const std::size_t d = c.src(k.morphism);
    for (std::size_t v : c.incoming(d)) {
      if (c.is_identity(v)) continue;
      const std::size_t uv = c.comp(k.morphism, v);
      const std::size_t a2 = keyed.restrict(v).at(k.element);
      const auto it = id.find({uv, a2});
      if (it == id.end()) throw InternalError(what + ": family key not closed");
      solver.add_edge(id.at({k.morphism, k.element}), it->second,
                      values.restrict(v).table());
    }
  }
  return solver.all(what, kNoLimit);
}

Element family_element(const FiniteCategory& c, const std::vector<FanKey>& keys,
                       const Presheaf& keyed, const Presheaf& values,
                       std::span<const std::size_t> solution) {
  std::vector<Element::Entry> entries;
  entries.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    entries.emplace_back(fan_key(c, keyed, keys[i]),
                         values.at(c.src(keys[i].morphism))[solution[i]]);
  }
  return Element::fam(std::move(entries));
}

/// Re-keys a family at c along w: c' -> c: the new family at (u', a) reads
/// the old one at (w∘u', a).
Element restrict_family(const FiniteCategory& c, const Presheaf& keyed,
                        const std::vector<FanKey>& target_keys, std::size_t w,
                        const Element& family) {
  std::vector<Element::Entry> entries;
  entries.reserve(target_keys.size());
  for (const auto& k : target_keys) {
    const FanKey old{c.comp(w, k.morphism), k.element};
    const Element* v = family.find(fan_key(c, keyed, old));
    if (v == nullptr) throw InternalError("family restriction: missing key");
    entries.emplace_back(fan_key(c, keyed, k), *v);
  }
  return Element::fam(std::move(entries));
}

}  // namespace

Exponential exponential(const Presheaf& f, const Presheaf& g) {
  const auto& c = f.index();
  const std::size_t n = c.object_count();
  std::vector<std::vector<FanKey>> keys(n);
  for (std::size_t o = 0; o < n; ++o) {
    for (std::size_t u : c.incoming(o)) {
      for (std::size_t a = 0; a < f.at(c.src(u)).size(); ++a) keys[o].push_back({u, a});
    }
  }
  std::vector<FinSet> levels;
  for (std::size_t o = 0; o < n; ++o) {
    const auto sols = solve_fan(
        c, keys[o], f, g,
        [&](const FanKey& k) {
          std::vector<std::size_t> all(g.at(c.src(k.morphism)).size());
          for (std::size_t j = 0; j < all.size(); ++j) all[j] = j;
          return all;
        },
        "exponential");
    std::vector<Element> es;
    for (const auto& s : sols) es.push_back(family_element(c, keys[o], f, g, s));
    check_size("exponential", es.size());
    levels.emplace_back(std::move(es));
  }
  std::vector<FinFunction> restrict;
  for (std::size_t w = 0; w < c.morphism_count(); ++w) {
    const std::size_t src = c.src(w);
    const std::size_t tgt = c.tgt(w);
    std::vector<std::size_t> table;
    for (const auto& fam : levels[tgt]) {
      table.push_back(levels[src].require(restrict_family(c, f, keys[src], w, fam),
                                          "exponential restriction"));
    }
    restrict.emplace_back(levels[tgt], levels[src], std::move(table));
  }
  Presheaf object(f.topos(), levels, std::move(restrict));
  PresheafLimit prod = product(object, f);
  std::vector<FinFunction> eval;
  for (std::size_t o = 0; o < n; ++o) {
    const Element id_o = c.morphisms()[c.identity(o)];
    std::vector<std::size_t> table;
    for (const auto& pair_elem : prod.apex.at(o)) {
      const Element& fam = pair_elem[0];
      const Element* v = fam.find(Element::tuple({id_o, pair_elem[1]}));
      if (v == nullptr) throw InternalError("exponential: evaluation key missing");
      table.push_back(g.at(o).require(*v, "evaluation"));
    }
    eval.emplace_back(prod.apex.at(o), g.at(o), std::move(table));
  }
  NatTrans ev(prod.apex, g, std::move(eval));
  return Exponential{std::move(object), std::move(prod), std::move(ev)};
}

NatTrans transpose(const Exponential& e, const PresheafLimit& a_times_f,
                   const NatTrans& h) {
  const Presheaf& a = a_times_f.legs[0].cod();
  const Presheaf& f = a_times_f.legs[1].cod();
  const Presheaf& g = h.cod();
  const auto& c = a.index();
  std::vector<FinFunction> comps;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    std::vector<std::size_t> table;
    for (std::size_t i = 0; i < a.at(o).size(); ++i) {
      std::vector<Element::Entry> entries;
      for (std::size_t u : c.incoming(o)) {
        const std::size_t d = c.src(u);
        const Element& ad = a.at(d)[a.restrict(u).at(i)];
        for (const auto& x : f.at(d)) {
          const std::size_t pi = a_times_f.apex.at(d).require(
              Element::tuple({ad, x}), "transpose");
          entries.emplace_back(Element::tuple({c.morphisms()[u], x}),
                               g.at(d)[h.at(d).at(pi)]);
        }
      }
      table.push_back(e.object.at(o).require(Element::fam(std::move(entries)),
                                             "transpose"));
    }
    comps.emplace_back(a.at(o), e.object.at(o), std::move(table));
  }
  return NatTrans(a, e.object, std::move(comps));
}

SubobjectClassifier subobject_classifier(const Topos& t) {
  const auto& c = t.index();
  const std::size_t n = c.object_count();
  std::vector<std::vector<std::vector<std::size_t>>> sieves(n);
  std::vector<FinSet> levels;
  const auto sieve_element = [&](const std::vector<std::size_t>& s) {
    std::vector<Element> items;
    for (std::size_t u : s) items.push_back(c.morphisms()[u]);
    return Element::tuple(std::move(items));
  };
  for (std::size_t o = 0; o < n; ++o) {
    const auto& in = c.incoming(o);
    if (in.size() >= 40) throw ResourceError("sieve enumeration", in.size(), 40);
    check_size("sieve enumeration", std::size_t{1} << in.size());
    std::vector<Element> es;
    for (std::size_t mask = 0; mask < (std::size_t{1} << in.size()); ++mask) {
      std::vector<bool> member(c.morphism_count(), false);
      std::vector<std::size_t> s;
      for (std::size_t k = 0; k < in.size(); ++k) {
        if (mask & (std::size_t{1} << k)) {
          member[in[k]] = true;
          s.push_back(in[k]);
        }
      }
      bool closed = true;
      for (std::size_t u : s) {
        for (std::size_t v : c.incoming(c.src(u))) {
          if (!member[c.comp(u, v)]) closed = false;
        }
      }
      if (closed) es.push_back(sieve_element(s));
    }
    levels.emplace_back(std::move(es));
  }
  std::vector<FinFunction> restrict;
  for (std::size_t w = 0; w < c.morphism_count(); ++w) {
    const std::size_t src = c.src(w);
    const std::size_t tgt = c.tgt(w);
    std::vector<std::size_t> table;
    for (const auto& s : levels[tgt]) {
      std::vector<bool> member(c.morphism_count(), false);
      for (const auto& m : s.items()) member[c.morphism_index(m)] = true;
      std::vector<std::size_t> pulled;
      for (std::size_t v : c.incoming(src)) {
        if (member[c.comp(w, v)]) pulled.push_back(v);
      }
      table.push_back(levels[src].require(sieve_element(pulled), "sieve restriction"));
    }
    restrict.emplace_back(levels[tgt], levels[src], std::move(table));
  }
  Presheaf omega(t, levels, std::move(restrict));
  const Presheaf one = terminal(t);
  std::vector<FinFunction> truth;
  for (std::size_t o = 0; o < n; ++o) {
    truth.emplace_back(one.at(o), omega.at(o),
                       std::vector<std::size_t>{omega.at(o).require(
                           sieve_element(c.incoming(o)), "maximal sieve")});
  }
  return {omega, NatTrans(one, omega, std::move(truth))};
}

NatTrans classify_mono(const SubobjectClassifier& omega, const NatTrans& m) {
  if (!is_mono(m)) throw ValidationError("classify_mono: map is not mono");
  const Presheaf& x = m.cod();
  const auto& c = x.index();
  std::vector<std::vector<bool>> image(c.object_count());
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    image[o].assign(x.at(o).size(), false);
    for (std::size_t i = 0; i < m.dom().at(o).size(); ++i) image[o][m.at(o).at(i)] = true;
  }
  std::vector<FinFunction> comps;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    std::vector<std::size_t> table;
    for (std::size_t i = 0; i < x.at(o).size(); ++i) {
      std::vector<Element> items;
      for (std::size_t u : c.incoming(o)) {
        if (image[c.src(u)][x.restrict(u).at(i)]) items.push_back(c.morphisms()[u]);
      }
      table.push_back(omega.omega.at(o).require(Element::tuple(std::move(items)),
                                                "characteristic sieve"));
    }
    comps.emplace_back(x.at(o), omega.omega.at(o), std::move(table));
  }
  NatTrans chi(x, omega.omega, std::move(comps));

  const auto pb = pullback(omega.truth, chi);
  const NatTrans& back = pb.legs[1];
  if (!is_mono(back)) throw InternalError("classify_mono: pulled-back map is not mono");
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    std::vector<bool> hit(x.at(o).size(), false);
    for (std::size_t i = 0; i < back.dom().at(o).size(); ++i) hit[back.at(o).at(i)] = true;
    if (hit != image[o]) {
      throw InternalError("classify_mono: pullback of truth does not recover the subobject");
    }
  }
  return chi;
}

NatTrans classify_mono(const NatTrans& m) {
  return classify_mono(subobject_classifier(m.cod().topos()), m);
}

SliceMap pullback_functor(const NatTrans& f, const SliceMap& x) {
  if (!(f.cod() == x.base())) {
    throw ValidationError("pullback_functor: slice is not over the codomain");
  }
  const auto pb = pullback(f, x.proj);
  return {pb.apex, pb.legs[0]};
}

SliceMap dependent_product(const NatTrans& f, const SliceMap& x) {
  if (!(f.dom() == x.base())) {
    throw ValidationError("dependent_product: slice is not over the domain");
  }
  const Presheaf& a = f.dom();
  const Presheaf& b = f.cod();
  const Presheaf& total = x.total;
  const auto& c = a.index();
  const std::size_t n = c.object_count();

  // keys[o][bi]: the fan of (u, a) over b = B(o)[bi].
  std::vector<std::vector<std::vector<FanKey>>> keys(n);
  for (std::size_t o = 0; o < n; ++o) {
    keys[o].resize(b.at(o).size());
    for (std::size_t bi = 0; bi < b.at(o).size(); ++bi) {
      for (std::size_t u : c.incoming(o)) {
        const std::size_t d = c.src(u);
        const std::size_t bu = b.restrict(u).at(bi);
        for (std::size_t ai = 0; ai < a.at(d).size(); ++ai) {
          if (f.at(d).at(ai) == bu) keys[o][bi].push_back({u, ai});
        }
      }
    }
  }

  std::vector<FinSet> levels;
  for (std::size_t o = 0; o < n; ++o) {
    std::vector<Element> es;
    for (std::size_t bi = 0; bi < b.at(o).size(); ++bi) {
      const auto sols = solve_fan(
          c, keys[o][bi], a, total,
          [&](const FanKey& k) {
            const std::size_t d = c.src(k.morphism);
            std::vector<std::size_t> over;
            for (std::size_t t = 0; t < total.at(d).size(); ++t) {
              if (x.proj.at(d).at(t) == k.element) over.push_back(t);
            }
            return over;
          },
          "dependent product");
      for (const auto& s : sols) {
        es.push_back(Element::tuple(
            {b.at(o)[bi], family_element(c, keys[o][bi], a, total, s)}));
        check_size("dependent product", es.size());
      }
    }
    levels.emplace_back(std::move(es));
  }

  std::vector<FinFunction> restrict;
  for (std::size_t w = 0; w < c.morphism_count(); ++w) {
    const std::size_t src = c.src(w);
    const std::size_t tgt = c.tgt(w);
    std::vector<std::size_t> table;
    for (const auto& e : levels[tgt]) {
      const std::size_t bi = b.at(tgt).require(e[0], "dependent product base");
      const std::size_t bw = b.restrict(w).at(bi);
      const Element fam = restrict_family(c, a, keys[src][bw], w, e[1]);
      table.push_back(levels[src].require(Element::tuple({b.at(src)[bw], fam}),
                                          "dependent product restriction"));
    }
    restrict.emplace_back(levels[tgt], levels[src], std::move(table));
  }
  Presheaf pi(a.topos(), levels, std::move(restrict));
  std::vector<FinFunction> proj;
  for (std::size_t o = 0; o < n; ++o) {
    std::vector<std::size_t> table;
    for (const auto& e : pi.at(o)) table.push_back(b.at(o).require(e[0], "projection"));
    proj.emplace_back(pi.at(o), b.at(o), std::move(table));
  }
  return {pi, NatTrans(pi, b, std::move(proj))};
}

NatTrans dependent_product_map(const SliceMap& pi_x, const SliceMap& pi_y,
                               const NatTrans& h) {
  const auto& c = pi_x.total.index();
  std::vector<FinFunction> comps;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    std::vector<std::size_t> table;
    for (const auto& e : pi_x.total.at(o)) {
      std::vector<Element::Entry> entries;
      for (const auto& [key, value] : e[1].entries()) {
        const std::size_t d = c.src(c.morphism_index(key[0]));
        entries.emplace_back(key, h.at(d)(value));
      }
      table.push_back(pi_y.total.at(o).require(
          Element::tuple({e[0], Element::fam(std::move(entries))}),
          "dependent product map"));
    }
    comps.emplace_back(pi_x.total.at(o), pi_y.total.at(o), std::move(table));
  }
  return NatTrans(pi_x.total, pi_y.total, std::move(comps));
}

FiniteCategory category_of_elements(const Presheaf& i) {
  const auto& c = i.index();
  std::vector<Element> objects;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    for (const auto& x : i.at(o)) objects.push_back(Element::tuple({c.objects()[o], x}));
  }
  std::vector<Element> mors;
  std::vector<std::pair<Element, Element>> src, tgt, ids;
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    const std::size_t d = c.tgt(u);
    for (std::size_t k = 0; k < i.at(d).size(); ++k) {
      const Element m = Element::tuple({c.morphisms()[u], i.at(d)[k]});
      mors.push_back(m);
      src.emplace_back(m, Element::tuple({c.objects()[c.src(u)],
                                          i.at(c.src(u))[i.restrict(u).at(k)]}));
      tgt.emplace_back(m, Element::tuple({c.objects()[d], i.at(d)[k]}));
    }
  }
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    for (const auto& x : i.at(o)) {
      ids.emplace_back(Element::tuple({c.objects()[o], x}),
                       Element::tuple({c.morphisms()[c.identity(o)], x}));
    }
  }
  FinSet obj_set(objects);
  FinSet mor_set(mors);
  auto src_fn = FinFunction::from_pairs(mor_set, obj_set, src);
  auto tgt_fn = FinFunction::from_pairs(mor_set, obj_set, tgt);
  auto id_fn = FinFunction::from_pairs(obj_set, mor_set, ids);
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> comp;
  for (std::size_t g = 0; g < mor_set.size(); ++g) {
    for (std::size_t f = 0; f < mor_set.size(); ++f) {
      if (tgt_fn.at(f) != src_fn.at(g)) continue;
      const Element& ge = mor_set[g];
      const Element& fe = mor_set[f];
      const std::size_t gu = c.morphism_index(ge[0]);
      const std::size_t fu = c.morphism_index(fe[0]);
      comp.emplace_back(g, f,
                        mor_set.require(Element::tuple({c.morphisms()[c.comp(gu, fu)], ge[1]}),
                                        "composite in category of elements"));
    }
  }
  return FiniteCategory(obj_set, mor_set, src_fn, tgt_fn, id_fn, comp);
}

Presheaf slice_to_presheaf(const Topos& elements, const SliceMap& x) {
  const auto& el = elements.index();
  const auto& c = x.total.index();
  std::vector<FinSet> levels;
  for (std::size_t k = 0; k < el.object_count(); ++k) {
    const Element& obj = el.objects()[k];
    const std::size_t o = c.object_index(obj[0]);
    const std::size_t bi = x.base().at(o).require(obj[1], "slice fibre");
    std::vector<Element> es;
    for (std::size_t t = 0; t < x.total.at(o).size(); ++t) {
      if (x.proj.at(o).at(t) == bi) es.push_back(x.total.at(o)[t]);
    }
    levels.emplace_back(std::move(es));
  }
  std::vector<FinFunction> restrict;
  for (std::size_t m = 0; m < el.morphism_count(); ++m) {
    const std::size_t u = c.morphism_index(el.morphisms()[m][0]);
    const std::size_t s = el.src(m);
    const std::size_t t = el.tgt(m);
    std::vector<std::size_t> table;
    for (const auto& e : levels[t]) {
      table.push_back(levels[s].require(x.total.restrict(u)(e), "fibre restriction"));
    }
    restrict.emplace_back(levels[t], levels[s], std::move(table));
  }
  return Presheaf(elements, std::move(levels), std::move(restrict));
}

SliceMap presheaf_to_slice(const Presheaf& p, const Presheaf& i) {
  const auto& el = p.index();
  const auto& c = i.index();
  std::vector<FinSet> levels;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    std::vector<Element> es;
    for (const auto& x : i.at(o)) {
      const std::size_t k = el.object_index(Element::tuple({c.objects()[o], x}));
      for (const auto& e : p.at(k)) es.push_back(Element::tuple({x, e}));
    }
    levels.emplace_back(std::move(es));
  }
  std::vector<FinFunction> restrict;
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    const std::size_t s = c.src(u);
    const std::size_t t = c.tgt(u);
    std::vector<std::size_t> table;
    for (const auto& e : levels[t]) {
      const std::size_t m = el.morphism_index(Element::tuple({c.morphisms()[u], e[0]}));
      table.push_back(levels[s].require(
          Element::tuple({i.restrict(u)(e[0]), p.restrict(m)(e[1])}), "slice restriction"));
    }
    restrict.emplace_back(levels[t], levels[s], std::move(table));
  }
  Presheaf total(i.topos(), levels, std::move(restrict));
  std::vector<FinFunction> proj;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    std::vector<std::size_t> table;
    for (const auto& e : total.at(o)) table.push_back(i.at(o).require(e[0], "slice projection"));
    proj.emplace_back(total.at(o), i.at(o), std::move(table));
  }
  return {total, NatTrans(total, i, std::move(proj))};
}

}  // namespace ftopos
