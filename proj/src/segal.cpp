#include "ftopos/segal.hpp"

#include <unordered_map>

#include "ftopos/errors.hpp"

namespace ftopos {

namespace {

std::string face_name(std::size_t i) { return "d" + std::to_string(i); }
std::string degen_name(std::size_t i) { return "s" + std::to_string(i); }
std::string level_name(std::size_t n) { return "X" + std::to_string(n); }

PresheafLimit chain_limit(const Presheaf& x1, const Presheaf& x0, const NatTrans& left,
                          const NatTrans& right, std::size_t edges) {
  // x1 ->left x0 <-right x1 ->left x0 <-right ... with `edges` copies of x1.
  std::vector<Presheaf> objects;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  std::vector<NatTrans> maps;
  for (std::size_t k = 0; k < edges; ++k) {
    objects.push_back(x1);
    if (k + 1 < edges) objects.push_back(x0);
  }
  for (std::size_t k = 0; k + 1 < edges; ++k) {
    arrows.emplace_back(2 * k, 2 * k + 1);
    maps.push_back(left);
    arrows.emplace_back(2 * k + 2, 2 * k + 1);
    maps.push_back(right);
  }
  return ps_limit(make_diagram(diagram_shape(objects.size(), arrows), objects, maps));
}

/// Edge (i, i+1) of an n-simplex as a map X_n -> X_1.
NatTrans edge(const TruncatedSimplicialObject& x, std::size_t n, std::size_t i) {
  NatTrans out = identity(x.level[n]);
  std::size_t level = n;
  // Drop vertices above i+1, then below i.
  while (level > i + 1) {
    out = compose(x.d(level, level), out);
    --level;
  }
  for (std::size_t k = 0; k < i; ++k) {
    out = compose(x.d(level, 0), out);
    --level;
  }
  return out;
}

void check_map(ValidationReport& r, const NatTrans& f, const Presheaf& dom, const Presheaf& cod,
               const std::string& name) {
  if (!(f.dom() == dom) || !(f.cod() == cod)) {
    r.add(name + " has the wrong domain or codomain");
    return;
  }
  r.merge(validate_nat_trans(f));
}

}  // namespace

ValidationReport validate_simplicial(const TruncatedSimplicialObject& x) {
  ValidationReport r;
  for (std::size_t n = 0; n < 4; ++n) r.merge(validate_presheaf(x.level[n]));
  for (std::size_t n = 1; n < 4; ++n) {
    if (x.faces[n].size() != n + 1) {
      r.add(level_name(n) + " needs " + std::to_string(n + 1) + " faces");
      return r;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      check_map(r, x.d(n, i), x.level[n], x.level[n - 1], face_name(i) + " on " + level_name(n));
    }
  }
  for (std::size_t n = 0; n < 3; ++n) {
    if (x.degeneracies[n].size() != n + 1) {
      r.add(level_name(n) + " needs " + std::to_string(n + 1) + " degeneracies");
      return r;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      check_map(r, x.s(n, i), x.level[n], x.level[n + 1],
                degen_name(i) + " on " + level_name(n));
    }
  }
  if (!r.ok()) return r;

  // d_i d_j = d_{j-1} d_i for i < j, on X_n.
  for (std::size_t n = 2; n < 4; ++n) {
    for (std::size_t j = 1; j <= n; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        if (!(compose(x.d(n - 1, i), x.d(n, j)) == compose(x.d(n - 1, j - 1), x.d(n, i)))) {
          r.add(face_name(i) + " " + face_name(j) + " = " + face_name(j - 1) + " " +
                face_name(i) + " on " + level_name(n));
        }
      }
    }
  }
  // s_i s_j = s_{j+1} s_i for i <= j, on X_n.
  for (std::size_t n = 0; n + 2 < 4; ++n) {
    for (std::size_t j = 0; j <= n; ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        if (!(compose(x.s(n + 1, i), x.s(n, j)) == compose(x.s(n + 1, j + 1), x.s(n, i)))) {
          r.add(degen_name(i) + " " + degen_name(j) + " = " + degen_name(j + 1) + " " +
                degen_name(i) + " on " + level_name(n));
        }
      }
    }
  }
  // d_i s_j on X_n.
  for (std::size_t n = 0; n < 3; ++n) {
    for (std::size_t j = 0; j <= n; ++j) {
      for (std::size_t i = 0; i <= n + 1; ++i) {
        const NatTrans lhs = compose(x.d(n + 1, i), x.s(n, j));
        std::string rhs_name;
        bool ok = true;
        if (i == j || i == j + 1) {
          ok = lhs == identity(x.level[n]);
          rhs_name = "id";
        } else if (i < j) {
          ok = lhs == compose(x.s(n - 1, j - 1), x.d(n, i));
          rhs_name = degen_name(j - 1) + " " + face_name(i);
        } else {
          ok = lhs == compose(x.s(n - 1, j), x.d(n, i - 1));
          rhs_name = degen_name(j) + " " + face_name(i - 1);
        }
        if (!ok) {
          r.add(face_name(i) + " " + degen_name(j) + " = " + rhs_name + " on " + level_name(n));
        }
      }
    }
  }
  return r;
}

NatTrans vertex(const TruncatedSimplicialObject& x, std::size_t n, std::size_t i) {
  NatTrans out = identity(x.level[n]);
  std::size_t level = n;
  while (level > i) {
    out = compose(x.d(level, level), out);
    --level;
  }
  while (level > 0) {
    out = compose(x.d(level, 0), out);
    --level;
  }
  return out;
}

PresheafLimit composable_pairs(const NatTrans& s, const NatTrans& t) { return pullback(t, s); }

Element composable_pair(const CategoryObject& cat, std::size_t c, const Element& f,
                        const Element& g) {
  return Element::tuple({f, g, cat.t.at(c)(f)});
}

Element compose_at(const CategoryObject& cat, std::size_t c, const Element& f,
                   const Element& g) {
  return cat.m.at(c)(composable_pair(cat, c, f, g));
}

ValidationReport validate_category_object(const CategoryObject& cat) {
  ValidationReport r;
  check_map(r, cat.s, cat.c1, cat.c0, "s");
  check_map(r, cat.t, cat.c1, cat.c0, "t");
  check_map(r, cat.e, cat.c0, cat.c1, "e");
  check_map(r, cat.m, cat.pairs.apex, cat.c1, "m");
  if (!r.ok()) return r;
  const PresheafLimit expected = composable_pairs(cat.s, cat.t);
  if (!(expected.apex == cat.pairs.apex)) {
    r.add("composable pairs are not the pullback of t along s");
    return r;
  }
  const NatTrans id0 = identity(cat.c0);
  if (!(compose(cat.s, cat.e) == id0)) r.add("s e = id fails");
  if (!(compose(cat.t, cat.e) == id0)) r.add("t e = id fails");
  if (!(compose(cat.s, cat.m) == compose(cat.s, cat.pairs.legs[0]))) {
    r.add("source of a composite is not the source of its first arrow");
  }
  if (!(compose(cat.t, cat.m) == compose(cat.t, cat.pairs.legs[1]))) {
    r.add("target of a composite is not the target of its second arrow");
  }
  if (!r.ok()) return r;

  const auto& idx = cat.c0.index();
  for (std::size_t c = 0; c < idx.object_count(); ++c) {
    std::unordered_map<Element, std::vector<Element>, ElementHash> by_source;
    for (const auto& f : cat.c1.at(c)) by_source[cat.s.at(c)(f)].push_back(f);
    for (const auto& f : cat.c1.at(c)) {
      if (!(compose_at(cat, c, cat.e.at(c)(cat.s.at(c)(f)), f) == f)) {
        r.add("left unit fails at " + f.str());
      }
      if (!(compose_at(cat, c, f, cat.e.at(c)(cat.t.at(c)(f))) == f)) {
        r.add("right unit fails at " + f.str());
      }
      for (const auto& g : by_source[cat.t.at(c)(f)]) {
        const Element gf = compose_at(cat, c, f, g);
        for (const auto& h : by_source[cat.t.at(c)(g)]) {
          if (!(compose_at(cat, c, gf, h) == compose_at(cat, c, f, compose_at(cat, c, g, h)))) {
            r.add("associativity fails for (" + f.str() + ", " + g.str() + ", " + h.str() + ")");
          }
        }
      }
    }
  }
  return r;
}

CategoryObject set_category_object(const FiniteCategory& c) {
  CategoryObject cat;
  cat.c0 = set_presheaf(c.objects());
  cat.c1 = set_presheaf(c.morphisms());
  cat.s = NatTrans(cat.c1, cat.c0, {c.src_fn()});
  cat.t = NatTrans(cat.c1, cat.c0, {c.tgt_fn()});
  cat.e = NatTrans(cat.c0, cat.c1, {c.identity_fn()});
  cat.pairs = composable_pairs(cat.s, cat.t);
  cat.m = natural_map(cat.pairs.apex, cat.c1, [&](std::size_t, const Element& p) {
    const std::size_t f = c.morphism_index(p[0]);
    const std::size_t g = c.morphism_index(p[1]);
    const auto gf = c.compose(g, f);
    if (!gf) throw ValidationError("composite " + p[1].str() + " o " + p[0].str() + " undefined");
    return c.morphisms()[*gf];
  });
  return cat;
}

TruncatedSimplicialObject nerve_truncation_unchecked(const CategoryObject& cat) {
  TruncatedSimplicialObject x;
  x.level[0] = cat.c0;
  x.level[1] = cat.c1;
  x.level[2] = cat.pairs.apex;
  x.level[3] = chain_limit(cat.c1, cat.c0, cat.t, cat.s, 3).apex;

  const auto t = [&](std::size_t c, const Element& f) { return cat.t.at(c)(f); };
  const auto s = [&](std::size_t c, const Element& f) { return cat.s.at(c)(f); };
  const auto e = [&](std::size_t c, const Element& o) { return cat.e.at(c)(o); };
  const auto m = [&](std::size_t c, const Element& f, const Element& g) {
    return compose_at(cat, c, f, g);
  };
  const auto pair = [&](std::size_t c, const Element& f, const Element& g) {
    return Element::tuple({f, g, t(c, f)});
  };
  const auto triple = [&](std::size_t c, const Element& f, const Element& g, const Element& h) {
    return Element::tuple({f, t(c, f), g, t(c, g), h});
  };
  using Fn = std::function<Element(std::size_t, const Element&)>;
  const auto map = [](const Presheaf& a, const Presheaf& b, const Fn& fn) {
    return natural_map(a, b, fn);
  };
  const Presheaf& x1 = x.level[1];
  const Presheaf& x2 = x.level[2];
  const Presheaf& x3 = x.level[3];

  x.faces[1] = {cat.t, cat.s};
  x.faces[2] = {
      map(x2, x1, [&](std::size_t, const Element& p) { return p[1]; }),
      map(x2, x1, [&](std::size_t c, const Element& p) { return m(c, p[0], p[1]); }),
      map(x2, x1, [&](std::size_t, const Element& p) { return p[0]; }),
  };
  x.faces[3] = {
      map(x3, x2, [&](std::size_t c, const Element& p) { return pair(c, p[2], p[4]); }),
      map(x3, x2, [&](std::size_t c, const Element& p) { return pair(c, m(c, p[0], p[2]), p[4]); }),
      map(x3, x2, [&](std::size_t c, const Element& p) { return pair(c, p[0], m(c, p[2], p[4])); }),
      map(x3, x2, [&](std::size_t c, const Element& p) { return pair(c, p[0], p[2]); }),
  };
  x.degeneracies[0] = {cat.e};
  x.degeneracies[1] = {
      map(x1, x2, [&](std::size_t c, const Element& f) { return pair(c, e(c, s(c, f)), f); }),
      map(x1, x2, [&](std::size_t c, const Element& f) { return pair(c, f, e(c, t(c, f))); }),
  };
  x.degeneracies[2] = {
      map(x2, x3,
          [&](std::size_t c, const Element& p) { return triple(c, e(c, s(c, p[0])), p[0], p[1]); }),
      map(x2, x3,
          [&](std::size_t c, const Element& p) { return triple(c, p[0], e(c, t(c, p[0])), p[1]); }),
      map(x2, x3,
          [&](std::size_t c, const Element& p) { return triple(c, p[0], p[1], e(c, t(c, p[1]))); }),
  };
  return x;
}

TruncatedSimplicialObject nerve_truncation(const CategoryObject& cat) {
  validate_category_object(cat).require("category object");
  return nerve_truncation_unchecked(cat);
}

TruncatedSimplicialObject category_nerve(const FiniteCategory& c) {
  return nerve_truncation_unchecked(set_category_object(c));
}

TruncatedSimplicialObject constant_simplicial(const Presheaf& x) {
  TruncatedSimplicialObject out;
  const NatTrans id = identity(x);
  for (std::size_t n = 0; n < 4; ++n) out.level[n] = x;
  for (std::size_t n = 1; n < 4; ++n) out.faces[n].assign(n + 1, id);
  for (std::size_t n = 0; n < 3; ++n) out.degeneracies[n].assign(n + 1, id);
  return out;
}

PresheafLimit spine(const TruncatedSimplicialObject& x, std::size_t n) {
  return chain_limit(x.level[1], x.level[0], x.target(), x.source(), n);
}

NatTrans spine_comparison(const TruncatedSimplicialObject& x, const PresheafLimit& sp,
                          std::size_t n) {
  std::vector<NatTrans> cone;
  for (std::size_t i = 0; i < n; ++i) {
    const NatTrans e = edge(x, n, i);
    cone.push_back(e);
    if (i + 1 < n) cone.push_back(compose(x.target(), e));
  }
  return mediate(sp, x.level[n], cone);
}

SegalReport check_segal(const TruncatedSimplicialObject& x) {
  SegalReport r;
  r.identities = validate_simplicial(x);
  r.simplicial = r.identities.ok();
  if (!r.simplicial) return r;
  r.segal = true;
  for (std::size_t n = 2; n < 4; ++n) {
    const PresheafLimit sp = spine(x, n);
    NatTrans cmp;
    try {
      cmp = spine_comparison(x, sp, n);
    } catch (const ValidationError& e) {
      r.segal = false;
      r.witnesses.push_back("edges of " + level_name(n) + " do not meet: " + e.what());
      continue;
    }
    if (!is_iso(cmp)) {
      r.segal = false;
      std::string sizes;
      for (std::size_t c = 0; c < x.level[n].levels().size(); ++c) {
        if (!sizes.empty()) sizes += ", ";
        sizes += std::to_string(x.level[n].at(c).size()) + " vs " +
                 std::to_string(sp.apex.at(c).size());
        if (!cmp.at(c).is_injective()) sizes += " (not injective)";
        if (!cmp.at(c).is_surjective()) sizes += " (not surjective)";
      }
      r.witnesses.push_back(level_name(n) + " -> spine is not iso: " + sizes);
    }
  }
  return r;
}

bool is_segal(const TruncatedSimplicialObject& x) { return check_segal(x).segal; }

SegalObject::SegalObject(TruncatedSimplicialObject x) : x_(std::move(x)) {
  const SegalReport r = check_segal(x_);
  if (!r.segal) {
    std::string msg = "not a Segal object";
    for (const auto& v : r.identities.violations) msg += "; " + v;
    for (const auto& w : r.witnesses) msg += "; " + w;
    throw ValidationError(msg);
  }
  spine2_ = spine(x_, 2);
  inverse2_ = inverse(spine_comparison(x_, spine2_, 2));
}

Z3 z3(const SegalObject& sx) {
  const auto& x = sx.simplicial();
  Z3 z;
  {
    const std::vector<Presheaf> objects{x.level[1], x.level[0], x.level[1], x.level[0],
                                        x.level[1]};
    const std::vector<NatTrans> maps{x.target(), x.target(), x.source(), x.source()};
    z.limit = ps_limit(make_diagram(diagram_shape(5, {{0, 1}, {2, 1}, {2, 3}, {4, 3}}), objects,
                                    maps));
  }
  const NatTrans a = compose(x.d(2, 1), x.d(3, 3));
  const NatTrans b = compose(x.d(2, 0), x.d(3, 3));
  const NatTrans c = compose(x.d(2, 1), x.d(3, 0));
  const std::vector<NatTrans> from3{a, compose(x.target(), a), b, compose(x.source(), b), c};
  z.from_x3 = mediate(z.limit, x.level[3], from3);
  const NatTrans s0 = x.s(0, 0);
  const NatTrans id = identity(x.level[1]);
  const std::vector<NatTrans> from1{compose(s0, x.target()), x.target(), id, x.source(),
                                    compose(s0, x.source())};
  z.from_x1 = mediate(z.limit, x.level[1], from1);
  return z;
}

NatTrans degenerate3(const TruncatedSimplicialObject& x) {
  return compose(x.s(2, 0), compose(x.s(1, 0), x.s(0, 0)));
}

EquivalencesObject hoequiv(const SegalObject& sx) {
  const auto& x = sx.simplicial();
  EquivalencesObject eq;
  eq.z = z3(sx);
  eq.pullback = pullback(eq.z.from_x1, eq.z.from_x3);
  eq.carrier = eq.pullback.apex;
  eq.U = eq.pullback.legs[0];
  const std::vector<NatTrans> cone{x.s(0, 0), degenerate3(x),
                                   compose(eq.z.from_x1, x.s(0, 0))};
  eq.s0_lift = mediate(eq.pullback, x.level[0], cone);
  if (!is_mono(eq.U)) throw InternalError("U: X_hoequiv -> X_1 is not mono");
  if (!(compose(eq.U, eq.s0_lift) == x.s(0, 0))) {
    throw InternalError("U s0 differs from the degeneracy");
  }
  return eq;
}

CompletenessReport check_complete(const SegalObject& sx) {
  const auto& x = sx.simplicial();
  const EquivalencesObject eq = hoequiv(sx);
  CompletenessReport r;
  r.u_mono = true;
  r.s0_iso = is_iso(eq.s0_lift);
  r.x0_size = x.level[0].total_size();
  r.hoequiv_size = eq.carrier.total_size();

  const PresheafLimit square = pullback(eq.z.from_x3, eq.z.from_x1);
  const std::vector<NatTrans> cone{degenerate3(x), x.s(0, 0),
                                   compose(eq.z.from_x1, x.s(0, 0))};
  r.pullback_square = is_iso(mediate(square, x.level[0], cone));
  if (r.s0_iso != r.pullback_square) {
    throw InternalError("completeness formulations disagree");
  }
  r.complete = r.s0_iso;
  return r;
}

bool is_complete(const SegalObject& x) { return check_complete(x).complete; }

namespace {

struct Fibre {
  NatTrans point_map;
  PresheafLimit pullback;
};

void check_points(const TruncatedSimplicialObject& x, const std::vector<NatTrans>& points) {
  if (points.size() < 2 || points.size() > 4) {
    throw ValidationError("mapping objects take 2 to 4 points");
  }
  for (const auto& p : points) {
    if (!(p.dom() == points.front().dom()) || !(p.cod() == x.level[0])) {
      throw ValidationError("points must share a context and land in X_0");
    }
  }
}

Fibre level_fibre(const TruncatedSimplicialObject& x, const std::vector<NatTrans>& points) {
  check_points(x, points);
  const std::size_t n = points.size() - 1;
  const std::vector<Presheaf> factors(n + 1, x.level[0]);
  const PresheafLimit prod = product(factors);
  std::vector<NatTrans> vertices;
  for (std::size_t i = 0; i <= n; ++i) vertices.push_back(vertex(x, n, i));
  Fibre f;
  f.point_map = mediate(prod, points.front().dom(), points);
  f.pullback = pullback(f.point_map, mediate(prod, x.level[n], vertices));
  return f;
}

}  // namespace

MappingObject mapping_object(const SegalObject& sx, const std::vector<NatTrans>& points) {
  const auto& x = sx.simplicial();
  const std::size_t n = points.size() - 1;
  const Fibre f = level_fibre(x, points);
  MappingObject out;
  out.points = points;
  out.point_map = f.point_map;
  out.pullback = f.pullback;
  out.fibre = slice(f.pullback.legs[0]);
  out.to_level = f.pullback.legs[1];
  const Presheaf& d = points.front().dom();
  out.pi = dependent_product(to_terminal(d), out.fibre);
  if (n < 2) return out;

  std::vector<MappingObject> parts;
  for (std::size_t i = 0; i < n; ++i) {
    parts.push_back(mapping_object(sx, {points[i], points[i + 1]}));
  }
  // Fibre product of the binary fibres over D.
  std::vector<Presheaf> objects;
  std::vector<std::pair<std::size_t, std::size_t>> arrows;
  std::vector<NatTrans> maps;
  for (std::size_t i = 0; i < n; ++i) {
    objects.push_back(parts[i].fibre.total);
    arrows.emplace_back(i, n);
    maps.push_back(parts[i].fibre.proj);
  }
  objects.push_back(d);
  const PresheafLimit q = ps_limit(make_diagram(diagram_shape(n + 1, arrows), objects, maps));

  std::vector<NatTrans> cone;
  for (std::size_t i = 0; i < n; ++i) {
    const std::vector<NatTrans> leg{out.fibre.proj,
                                    compose(edge(x, n, i), out.to_level),
                                    compose(parts[i].point_map, out.fibre.proj)};
    cone.push_back(mediate(parts[i].pullback, out.fibre.total, leg));
  }
  cone.push_back(out.fibre.proj);
  const NatTrans h = mediate(q, out.fibre.total, cone);

  const SliceMap q_slice = slice(q.legs[n]);
  const SliceMap pi_q = dependent_product(to_terminal(d), q_slice);
  const NatTrans pi_h = dependent_product_map(out.pi, pi_q, h);
  std::vector<Presheaf> factors;
  std::vector<NatTrans> projections;
  for (std::size_t i = 0; i < n; ++i) {
    factors.push_back(parts[i].pi.total);
    projections.push_back(dependent_product_map(pi_q, parts[i].pi, q.legs[i]));
  }
  const PresheafLimit prod = product(factors);
  const NatTrans to_product = mediate(prod, pi_q.total, projections);
  out.decomposes = is_iso(compose(to_product, pi_h));
  return out;
}

std::vector<NatTrans> mapping_elements(const SegalObject& sx, const std::vector<NatTrans>& points,
                                       std::size_t limit) {
  const Fibre f = level_fibre(sx.simplicial(), points);
  std::vector<NatTrans> out;
  for (const auto& sec : enumerate_sections(f.pullback.legs[0], limit)) {
    out.push_back(compose(f.pullback.legs[1], sec));
  }
  return out;
}

NatTrans identity_element(const SegalObject& x, const NatTrans& point) {
  return compose(x.simplicial().s(0, 0), point);
}

NatTrans compose(const SegalObject& sx, const NatTrans& f, const NatTrans& g) {
  const auto& x = sx.simplicial();
  if (!(compose(x.target(), f) == compose(x.source(), g))) {
    throw ValidationError("compose: target of the first map is not the source of the second");
  }
  const std::vector<NatTrans> cone{f, compose(x.target(), f), g};
  const NatTrans spine_point = mediate(sx.spine2(), f.dom(), cone);
  return compose(x.d(2, 1), compose(sx.spine2_inverse(), spine_point));
}

std::optional<NatTrans> hoequiv_lift(const EquivalencesObject& eq, const NatTrans& f) {
  if (!(f.cod() == eq.U.cod())) throw ValidationError("hoequiv_lift: map must land in X_1");
  std::vector<FinFunction> comps;
  for (std::size_t c = 0; c < f.components().size(); ++c) {
    const auto& u = eq.U.at(c);
    std::vector<std::size_t> preimage(u.cod().size(), u.dom().size());
    for (std::size_t i = 0; i < u.dom().size(); ++i) preimage[u.at(i)] = i;
    std::vector<std::size_t> table;
    for (std::size_t i = 0; i < f.at(c).dom().size(); ++i) {
      const std::size_t k = preimage[f.at(c).at(i)];
      if (k == u.dom().size()) return std::nullopt;
      table.push_back(k);
    }
    comps.emplace_back(f.at(c).dom(), u.dom(), std::move(table));
  }
  return NatTrans(f.dom(), eq.carrier, std::move(comps));
}

bool is_hoequiv_morphism(const SegalObject& x, const NatTrans& f) {
  return hoequiv_lift(hoequiv(x), f).has_value();
}

HoequivObject hoequiv_object(const SegalObject& sx, const NatTrans& from, const NatTrans& to) {
  const auto& x = sx.simplicial();
  const EquivalencesObject eq = hoequiv(sx);
  const MappingObject map = mapping_object(sx, {from, to});
  const std::vector<Presheaf> factors{x.level[0], x.level[0]};
  const PresheafLimit x0x0 = product(factors);
  const NatTrans ends = mediate(x0x0, eq.carrier, std::vector<NatTrans>{
                                                      compose(x.source(), eq.U),
                                                      compose(x.target(), eq.U)});
  const PresheafLimit pb = pullback(map.point_map, ends);
  HoequivObject out;
  out.fibre = slice(pb.legs[0]);
  out.pi = dependent_product(to_terminal(from.dom()), out.fibre);
  const std::vector<NatTrans> leg{out.fibre.proj, compose(eq.U, pb.legs[1]),
                                  compose(map.point_map, out.fibre.proj)};
  const NatTrans h = mediate(map.pullback, out.fibre.total, leg);
  out.to_mapping = dependent_product_map(out.pi, map.pi, h);
  return out;
}

bool is_final_object(const SegalObject& sx, const NatTrans& f) {
  const auto& x = sx.simplicial();
  const Presheaf& x0 = x.level[0];
  const PresheafLimit prod = product(x0, x0);
  const NatTrans ends = pair(prod, x.source(), x.target());
  const NatTrans over = pair(prod, identity(x0), compose(f, to_terminal(x0)));
  const PresheafLimit pb = pullback(over, ends);
  return is_iso(pb.legs[0]);
}

ValidationReport validate_simplicial_map(const TruncatedSimplicialObject& w,
                                         const TruncatedSimplicialObject& v,
                                         const SimplicialMap& f) {
  ValidationReport r;
  for (std::size_t n = 0; n < 4; ++n) {
    check_map(r, f.at[n], w.level[n], v.level[n], "component " + std::to_string(n));
  }
  if (!r.ok()) return r;
  for (std::size_t n = 1; n < 4; ++n) {
    for (std::size_t i = 0; i <= n; ++i) {
      if (!(compose(f.at[n - 1], w.d(n, i)) == compose(v.d(n, i), f.at[n]))) {
        r.add("map does not commute with " + face_name(i) + " on " + level_name(n));
      }
    }
  }
  for (std::size_t n = 0; n < 3; ++n) {
    for (std::size_t i = 0; i <= n; ++i) {
      if (!(compose(f.at[n + 1], w.s(n, i)) == compose(v.s(n, i), f.at[n]))) {
        r.add("map does not commute with " + degen_name(i) + " on " + level_name(n));
      }
    }
  }
  return r;
}

bool is_fully_faithful(const SegalObject& sw, const SegalObject& sv, const SimplicialMap& f) {
  const auto& w = sw.simplicial();
  const auto& v = sv.simplicial();
  validate_simplicial_map(w, v, f).require("simplicial map");
  const PresheafLimit pv = product(v.level[0], v.level[0]);
  const PresheafLimit pw = product(w.level[0], w.level[0]);
  const NatTrans ends_v = pair(pv, v.source(), v.target());
  const NatTrans f0f0 = product_map(pw, pv, f.at[0], f.at[0]);
  const PresheafLimit pb = pullback(ends_v, f0f0);
  const std::vector<NatTrans> cone{f.at[1], pair(pw, w.source(), w.target()),
                                   compose(ends_v, f.at[1])};
  return is_iso(mediate(pb, w.level[1], cone));
}

bool is_essentially_surjective(const SegalObject& sw, const SegalObject& sv,
                               const SimplicialMap& f) {
  const auto& w = sw.simplicial();
  const auto& v = sv.simplicial();
  validate_simplicial_map(w, v, f).require("simplicial map");
  const EquivalencesObject eq = hoequiv(sv);
  const PresheafLimit pb = pullback(f.at[0], compose(v.source(), eq.U));
  const NatTrans reach = compose(v.target(), compose(eq.U, pb.legs[1]));
  return !enumerate_sections(reach, 1).empty();
}

ValidationReport validate_functor(const Functor& f) {
  ValidationReport r;
  if (f.on_objects.size() != f.dom.object_count() ||
      f.on_morphisms.size() != f.dom.morphism_count()) {
    r.add("functor tables have the wrong length");
    return r;
  }
  for (std::size_t o : f.on_objects) {
    if (o >= f.cod.object_count()) r.add("object image out of range");
  }
  for (std::size_t m : f.on_morphisms) {
    if (m >= f.cod.morphism_count()) r.add("morphism image out of range");
  }
  if (!r.ok()) return r;
  for (std::size_t m = 0; m < f.dom.morphism_count(); ++m) {
    const std::size_t fm = f.on_morphisms[m];
    if (f.cod.src(fm) != f.on_objects[f.dom.src(m)] ||
        f.cod.tgt(fm) != f.on_objects[f.dom.tgt(m)]) {
      r.add("functor breaks source or target of " + f.dom.morphisms()[m].str());
    }
  }
  for (std::size_t o = 0; o < f.dom.object_count(); ++o) {
    if (f.on_morphisms[f.dom.identity(o)] != f.cod.identity(f.on_objects[o])) {
      r.add("functor does not preserve the identity of " + f.dom.objects()[o].str());
    }
  }
  if (!r.ok()) return r;
  for (const auto& [g, h, gh] : f.dom.comp_entries()) {
    if (f.cod.compose(f.on_morphisms[g], f.on_morphisms[h]) != f.on_morphisms[gh]) {
      r.add("functor does not preserve " + f.dom.morphisms()[g].str() + " o " +
            f.dom.morphisms()[h].str());
    }
  }
  return r;
}

SimplicialMap nerve_map(const Functor& f, const TruncatedSimplicialObject& dom,
                        const TruncatedSimplicialObject& cod) {
  validate_functor(f).require("functor");
  const auto obj = [&](const Element& e) {
    return f.cod.objects()[f.on_objects[f.dom.object_index(e)]];
  };
  const auto mor = [&](const Element& e) {
    return f.cod.morphisms()[f.on_morphisms[f.dom.morphism_index(e)]];
  };
  SimplicialMap out;
  out.at[0] = natural_map(dom.level[0], cod.level[0],
                          [&](std::size_t, const Element& e) { return obj(e); });
  out.at[1] = natural_map(dom.level[1], cod.level[1],
                          [&](std::size_t, const Element& e) { return mor(e); });
  out.at[2] = natural_map(dom.level[2], cod.level[2], [&](std::size_t, const Element& p) {
    return Element::tuple({mor(p[0]), mor(p[1]), obj(p[2])});
  });
  out.at[3] = natural_map(dom.level[3], cod.level[3], [&](std::size_t, const Element& p) {
    return Element::tuple({mor(p[0]), obj(p[1]), mor(p[2]), obj(p[3]), mor(p[4])});
  });
  return out;
}

}  // namespace ftopos
