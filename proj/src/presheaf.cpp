#include "ftopos/presheaf.hpp"

#include <map>
#include <sstream>

#include "families.hpp"
#include "ftopos/errors.hpp"
#include "ftopos/guard.hpp"
#include "ftopos/limit.hpp"

namespace ftopos {

Topos::Topos(FiniteCategory index)
    : index_(std::make_shared<const FiniteCategory>(std::move(index))) {
  validate_category(*index_).require("index category");
}

Topos Topos::sets() {
  static const Topos t(terminal_category());
  return t;
}

Presheaf::Presheaf(Topos topos, std::vector<FinSet> at,
                   std::vector<FinFunction> restrict)
    : topos_(std::move(topos)), at_(std::move(at)), restrict_(std::move(restrict)) {
  const auto& c = topos_.index();
  if (at_.size() != c.object_count() || restrict_.size() != c.morphism_count()) {
    throw ValidationError("presheaf does not match its index category");
  }
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    if (!(restrict_[u].dom() == at_[c.tgt(u)]) ||
        !(restrict_[u].cod() == at_[c.src(u)])) {
      throw ValidationError("restriction along " + c.morphisms()[u].str() +
                            " has wrong domain or codomain");
    }
  }
}

std::size_t Presheaf::total_size() const noexcept {
  std::size_t n = 0;
  for (const auto& s : at_) n += s.size();
  return n;
}

bool operator==(const Presheaf& a, const Presheaf& b) {
  return a.topos_ == b.topos_ && a.at_ == b.at_ && a.restrict_ == b.restrict_;
}

NatTrans::NatTrans(Presheaf dom, Presheaf cod, std::vector<FinFunction> components)
    : dom_(std::move(dom)), cod_(std::move(cod)), components_(std::move(components)) {
  if (!(dom_.topos() == cod_.topos())) {
    throw ValidationError("natural transformation between different toposes");
  }
  const auto& c = dom_.index();
  if (components_.size() != c.object_count()) {
    throw ValidationError("natural transformation has wrong number of components");
  }
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    if (!(components_[o].dom() == dom_.at(o)) ||
        !(components_[o].cod() == cod_.at(o))) {
      throw ValidationError("component at " + c.objects()[o].str() +
                            " has wrong domain or codomain");
    }
  }
}

bool operator==(const NatTrans& a, const NatTrans& b) {
  return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.components_ == b.components_;
}

ValidationReport validate_presheaf(const Presheaf& x) {
  ValidationReport r;
  const auto& c = x.index();
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    if (!(x.restrict(c.identity(o)) == FinFunction::identity(x.at(o)))) {
      r.add("restriction along identity of " + c.objects()[o].str() +
            " is not the identity");
    }
  }
  for (const auto& [g, f, h] : c.comp_entries()) {
    if (!(x.restrict(h) == compose(x.restrict(f), x.restrict(g)))) {
      r.add("restriction not functorial at " + c.morphisms()[g].str() +
            " after " + c.morphisms()[f].str());
    }
  }
  return r;
}

ValidationReport validate_nat_trans(const NatTrans& f) {
  ValidationReport r;
  const auto& c = f.dom().index();
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    const auto lhs = compose(f.cod().restrict(u), f.at(c.tgt(u)));
    const auto rhs = compose(f.at(c.src(u)), f.dom().restrict(u));
    if (!(lhs == rhs)) r.add("naturality fails along " + c.morphisms()[u].str());
  }
  return r;
}

Presheaf make_presheaf(
    const Topos& t, const std::vector<std::vector<Element>>& at,
    const std::vector<std::pair<Element, std::vector<std::pair<Element, Element>>>>&
        restrict) {
  const auto& c = t.index();
  if (at.size() != c.object_count()) {
    throw ValidationError("presheaf needs one set per index object");
  }
  std::vector<FinSet> sets;
  for (const auto& s : at) sets.emplace_back(s);
  std::vector<FinFunction> maps(c.morphism_count());
  std::vector<bool> given(c.morphism_count(), false);
  for (const auto& [name, pairs] : restrict) {
    const std::size_t u = c.morphism_index(name);
    maps[u] = FinFunction::from_pairs(sets[c.tgt(u)], sets[c.src(u)], pairs);
    given[u] = true;
  }
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    if (given[u]) continue;
    if (!c.is_identity(u)) {
      throw ValidationError("presheaf restriction missing for " +
                            c.morphisms()[u].str());
    }
    maps[u] = FinFunction::identity(sets[c.src(u)]);
  }
  return Presheaf(t, std::move(sets), std::move(maps));
}

Presheaf set_presheaf(const FinSet& s) {
  return Presheaf(Topos::sets(), {s}, {FinFunction::identity(s)});
}

NatTrans set_map(const FinFunction& f) {
  return NatTrans(set_presheaf(f.dom()), set_presheaf(f.cod()), {f});
}

NatTrans set_map(const FinSet& dom, const FinSet& cod,
                 const std::vector<std::pair<Element, Element>>& pairs) {
  return set_map(FinFunction::from_pairs(dom, cod, pairs));
}

NatTrans natural_map(const Presheaf& dom, const Presheaf& cod,
                     const std::function<Element(std::size_t, const Element&)>& fn) {
  std::vector<FinFunction> comps;
  for (std::size_t o = 0; o < dom.levels().size(); ++o) {
    std::vector<std::size_t> table;
    table.reserve(dom.at(o).size());
    for (const auto& x : dom.at(o)) table.push_back(cod.at(o).require(fn(o, x), "natural_map"));
    comps.emplace_back(dom.at(o), cod.at(o), std::move(table));
  }
  NatTrans out(dom, cod, std::move(comps));
  validate_nat_trans(out).require("natural_map");
  return out;
}

NatTrans identity(const Presheaf& x) {
  std::vector<FinFunction> comps;
  for (const auto& s : x.levels()) comps.push_back(FinFunction::identity(s));
  return NatTrans(x, x, std::move(comps));
}

NatTrans compose(const NatTrans& g, const NatTrans& f) {
  if (!(f.cod() == g.dom())) {
    throw ValidationError("compose: codomain/domain mismatch of natural transformations");
  }
  std::vector<FinFunction> comps;
  for (std::size_t o = 0; o < f.components().size(); ++o) {
    comps.push_back(compose(g.at(o), f.at(o)));
  }
  return NatTrans(f.dom(), g.cod(), std::move(comps));
}

namespace {

Presheaf constant(const Topos& t, const FinSet& s) {
  const auto& c = t.index();
  return Presheaf(t, std::vector<FinSet>(c.object_count(), s),
                  std::vector<FinFunction>(c.morphism_count(), FinFunction::identity(s)));
}

}  // namespace

Presheaf terminal(const Topos& t) { return constant(t, FinSet{atom("*")}); }
Presheaf initial(const Topos& t) { return constant(t, FinSet()); }

NatTrans to_terminal(const Presheaf& x) {
  const Presheaf one = terminal(x.topos());
  std::vector<FinFunction> comps;
  for (std::size_t o = 0; o < x.levels().size(); ++o) {
    comps.emplace_back(x.at(o), one.at(o), std::vector<std::size_t>(x.at(o).size(), 0));
  }
  return NatTrans(x, one, std::move(comps));
}

NatTrans from_initial(const Presheaf& x) {
  const Presheaf zero = initial(x.topos());
  std::vector<FinFunction> comps;
  for (std::size_t o = 0; o < x.levels().size(); ++o) {
    comps.emplace_back(zero.at(o), x.at(o), std::vector<std::size_t>{});
  }
  return NatTrans(zero, x, std::move(comps));
}

bool is_mono(const NatTrans& f) {
  for (const auto& c : f.components()) {
    if (!c.is_injective()) return false;
  }
  return true;
}

bool is_epi(const NatTrans& f) {
  for (const auto& c : f.components()) {
    if (!c.is_surjective()) return false;
  }
  return true;
}

bool is_iso(const NatTrans& f) {
  for (const auto& c : f.components()) {
    if (!c.is_bijective()) return false;
  }
  return true;
}

NatTrans inverse(const NatTrans& f) {
  std::vector<FinFunction> comps;
  for (const auto& c : f.components()) comps.push_back(inverse(c));
  return NatTrans(f.cod(), f.dom(), std::move(comps));
}

PresheafDiagram make_diagram(const Shape& shape, std::vector<Presheaf> objects,
                             const std::vector<NatTrans>& arrows) {
  const auto& c = shape.category;
  if (objects.size() != c.object_count() || arrows.size() != shape.arrows.size()) {
    throw ValidationError("diagram does not match its shape");
  }
  Topos topos = objects.empty() ? Topos::sets() : objects[0].topos();
  PresheafDiagram d{std::move(topos), c, std::move(objects),
                    std::vector<NatTrans>(c.morphism_count())};
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    d.arrows[c.identity(o)] = identity(d.objects[o]);
  }
  for (std::size_t k = 0; k < arrows.size(); ++k) d.arrows[shape.arrows[k]] = arrows[k];
  return d;
}

ValidationReport validate_diagram(const PresheafDiagram& d) {
  ValidationReport r;
  const auto& c = d.shape;
  if (d.objects.size() != c.object_count() || d.arrows.size() != c.morphism_count()) {
    r.add("diagram does not match its shape");
    return r;
  }
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (!(d.arrows[m].dom() == d.objects[c.src(m)]) ||
        !(d.arrows[m].cod() == d.objects[c.tgt(m)])) {
      r.add("arrow " + c.morphisms()[m].str() + " has wrong domain or codomain");
    }
  }
  if (!r.ok()) return r;
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    if (!(d.arrows[c.identity(o)] == identity(d.objects[o]))) {
      r.add("identity of " + c.objects()[o].str() + " is not sent to an identity");
    }
  }
  for (const auto& [g, f, h] : c.comp_entries()) {
    if (!(compose(d.arrows[g], d.arrows[f]) == d.arrows[h])) {
      r.add("diagram not functorial at " + c.morphisms()[g].str() + " after " +
            c.morphisms()[f].str());
    }
  }
  return r;
}

namespace {

SetLimit limit_at(const PresheafLimit& l, std::size_t obj) {
  SetLimit s{l.apex.at(obj), {}};
  for (const auto& leg : l.legs) s.legs.push_back(leg.at(obj));
  return s;
}

}  // namespace

PresheafLimit ps_limit(const PresheafDiagram& d) {
  validate_diagram(d).require("ps_limit");
  const Topos& topos = d.topos;
  const auto& idx = topos.index();
  const std::size_t k = d.shape.object_count();

  std::vector<SetLimit> pointwise;
  for (std::size_t c = 0; c < idx.object_count(); ++c) {
    SetDiagram sd{d.shape, {}, {}};
    for (const auto& x : d.objects) sd.objects.push_back(x.at(c));
    for (const auto& a : d.arrows) sd.arrows.push_back(a.at(c));
    pointwise.push_back(fin_limit_unchecked(sd));
  }
  std::vector<FinSet> apex;
  for (const auto& l : pointwise) apex.push_back(l.apex);
  std::vector<FinFunction> restrict;
  std::vector<FinFunction> cone(k);
  for (std::size_t u = 0; u < idx.morphism_count(); ++u) {
    const std::size_t c = idx.src(u);
    const std::size_t e = idx.tgt(u);
    for (std::size_t i = 0; i < k; ++i) {
      cone[i] = compose(d.objects[i].restrict(u), pointwise[e].legs[i]);
    }
    restrict.push_back(mediate(pointwise[c], apex[e], cone));
  }
  PresheafLimit out{Presheaf(topos, apex, std::move(restrict)), {}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<FinFunction> comps;
    for (std::size_t c = 0; c < idx.object_count(); ++c) {
      comps.push_back(pointwise[c].legs[i]);
    }
    out.legs.emplace_back(out.apex, d.objects[i], std::move(comps));
  }
  return out;
}

NatTrans mediate(const PresheafLimit& limit, const Presheaf& source,
                 std::span<const NatTrans> cone) {
  std::vector<FinFunction> comps;
  std::vector<FinFunction> legs(cone.size());
  for (std::size_t c = 0; c < source.levels().size(); ++c) {
    for (std::size_t i = 0; i < cone.size(); ++i) legs[i] = cone[i].at(c);
    comps.push_back(mediate(limit_at(limit, c), source.at(c), legs));
  }
  return NatTrans(source, limit.apex, std::move(comps));
}

PresheafLimit product(const Topos& t, std::span<const Presheaf> factors) {
  const Shape shape = diagram_shape(factors.size(), {});
  auto d = make_diagram(shape, std::vector<Presheaf>(factors.begin(), factors.end()), {});
  d.topos = t;
  return ps_limit(d);
}

PresheafLimit product(std::span<const Presheaf> factors) {
  if (factors.empty()) throw ValidationError("product: empty factor list needs a topos");
  return product(factors[0].topos(), factors);
}

PresheafLimit product(const Presheaf& a, const Presheaf& b) {
  const std::vector<Presheaf> fs{a, b};
  return product(fs);
}

NatTrans pair(const PresheafLimit& prod, const NatTrans& f, const NatTrans& g) {
  const std::vector<NatTrans> cone{f, g};
  return mediate(prod, f.dom(), cone);
}

NatTrans product_map(const PresheafLimit& from, const PresheafLimit& to,
                     const NatTrans& f, const NatTrans& g) {
  return pair(to, compose(f, from.legs[0]), compose(g, from.legs[1]));
}

PresheafLimit pullback(const NatTrans& f, const NatTrans& g) {
  if (!(f.cod() == g.cod())) {
    throw ValidationError("pullback: maps have different codomains");
  }
  const Shape shape = diagram_shape(3, {{0, 2}, {1, 2}});
  return ps_limit(make_diagram(shape, {f.dom(), g.dom(), f.cod()}, {f, g}));
}

NatTrans diagonal(const Presheaf& x) {
  const auto prod = product(x, x);
  const auto id = identity(x);
  return pair(prod, id, id);
}

bool is_minus1_truncated(const Presheaf& x) {
  const bool by_terminal = is_mono(to_terminal(x));
  const bool by_diagonal = is_iso(diagonal(x));
  if (by_terminal != by_diagonal) {
    throw InternalError("(-1)-truncation tests disagree for " + describe(x));
  }
  return by_terminal;
}

namespace {

using CandidateFn = std::function<std::vector<std::size_t>(std::size_t, std::size_t)>;

/// Natural transformations X -> Y restricted per (object, element) by
/// `candidates`.
std::vector<NatTrans> solve_homs(const Presheaf& x, const Presheaf& y,
                                 const CandidateFn& candidates, std::size_t limit,
                                 const std::string& what, std::size_t* count_only) {
  const auto& c = x.index();
  detail::FamilySolver solver;
  std::vector<std::size_t> base(c.object_count());
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    base[o] = solver.key_count();
    for (std::size_t i = 0; i < x.at(o).size(); ++i) {
      solver.add_key(candidates(o, i), y.at(o).size());
    }
  }
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    if (c.is_identity(u)) continue;
    const std::size_t src = c.src(u);
    const std::size_t tgt = c.tgt(u);
    const auto& xr = x.restrict(u);
    for (std::size_t i = 0; i < x.at(tgt).size(); ++i) {
      solver.add_edge(base[tgt] + i, base[src] + xr.at(i), y.restrict(u).table());
    }
  }
  std::vector<NatTrans> out;
  if (count_only != nullptr) {
    std::size_t n = 0;
    solver.solve([&](std::span<const std::size_t>) {
      ++n;
      return n < limit;
    });
    *count_only = n;
    return out;
  }
  for (const auto& sol : solver.all(what, limit)) {
    std::vector<FinFunction> comps;
    for (std::size_t o = 0; o < c.object_count(); ++o) {
      std::vector<std::size_t> table(sol.begin() + static_cast<std::ptrdiff_t>(base[o]),
                                     sol.begin() + static_cast<std::ptrdiff_t>(
                                                       base[o] + x.at(o).size()));
      comps.emplace_back(x.at(o), y.at(o), std::move(table));
    }
    out.emplace_back(x, y, std::move(comps));
  }
  return out;
}

CandidateFn all_values(const Presheaf& y) {
  return [&y](std::size_t o, std::size_t) {
    std::vector<std::size_t> v(y.at(o).size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = j;
    return v;
  };
}

CandidateFn over(const NatTrans& p, const NatTrans& q) {
  return [&p, &q](std::size_t o, std::size_t i) {
    std::vector<std::size_t> v;
    const std::size_t target = p.at(o).at(i);
    for (std::size_t j = 0; j < q.dom().at(o).size(); ++j) {
      if (q.at(o).at(j) == target) v.push_back(j);
    }
    return v;
  };
}

}  // namespace

std::vector<NatTrans> enumerate_homs(const Presheaf& x, const Presheaf& y,
                                     std::size_t limit) {
  return solve_homs(x, y, all_values(y), limit, "hom-set", nullptr);
}

std::size_t count_homs(const Presheaf& x, const Presheaf& y) {
  std::size_t n = 0;
  solve_homs(x, y, all_values(y), kNoLimit, "hom-set", &n);
  return n;
}

std::vector<NatTrans> enumerate_slice_homs(const NatTrans& p, const NatTrans& q,
                                           std::size_t limit) {
  if (!(p.cod() == q.cod())) throw ValidationError("slice maps over different bases");
  return solve_homs(p.dom(), q.dom(), over(p, q), limit, "slice hom-set", nullptr);
}

std::size_t count_slice_homs(const NatTrans& p, const NatTrans& q) {
  if (!(p.cod() == q.cod())) throw ValidationError("slice maps over different bases");
  std::size_t n = 0;
  solve_homs(p.dom(), q.dom(), over(p, q), kNoLimit, "slice hom-set", &n);
  return n;
}

std::vector<NatTrans> enumerate_sections(const NatTrans& q, std::size_t limit) {
  const NatTrans id = identity(q.cod());
  return solve_homs(q.cod(), q.dom(), over(id, q), limit, "sections", nullptr);
}

std::vector<NatTrans> global_elements(const Presheaf& x) {
  return enumerate_homs(terminal(x.topos()), x);
}

std::string describe(const Presheaf& x) {
  std::ostringstream os;
  os << "presheaf with level sizes [";
  for (std::size_t o = 0; o < x.levels().size(); ++o) {
    if (o) os << ", ";
    os << x.at(o).size();
  }
  os << "]";
  return os.str();
}

}  // namespace ftopos
