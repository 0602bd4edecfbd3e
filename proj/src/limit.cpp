#include "ftopos/limit.hpp"

#include <algorithm>
#include <numeric>

#include "ftopos/errors.hpp"
#include "ftopos/guard.hpp"

namespace ftopos {

ValidationReport validate_diagram(const SetDiagram& d) {
  ValidationReport r;
  const auto& c = d.shape;
  if (d.objects.size() != c.object_count() ||
      d.arrows.size() != c.morphism_count()) {
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
    if (!(d.arrows[c.identity(o)] == FinFunction::identity(d.objects[o]))) {
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

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

enum class StepKind { Free, Determined, Join };

struct Step {
  std::size_t object;
  StepKind kind;
  std::size_t morphism = kNone;  // the arrow used by Determined / Join
  std::size_t other = kNone;     // the already-assigned endpoint
  std::vector<std::size_t> checks;  // arrows whose both ends are now assigned
};

std::vector<Step> plan(const SetDiagram& d) {
  const auto& c = d.shape;
  const std::size_t k = c.object_count();
  std::vector<bool> assigned(k, false);
  std::vector<Step> steps;
  std::vector<bool> checked(c.morphism_count(), false);
  for (std::size_t m = 0; m < c.morphism_count(); ++m) {
    if (c.is_identity(m)) checked[m] = true;
  }
  for (std::size_t round = 0; round < k; ++round) {
    Step step{kNone, StepKind::Free, kNone, kNone, {}};
    for (std::size_t m = 0; m < c.morphism_count() && step.object == kNone; ++m) {
      if (checked[m]) continue;
      if (assigned[c.src(m)] && !assigned[c.tgt(m)]) {
        step = {c.tgt(m), StepKind::Determined, m, c.src(m), {}};
      }
    }
    for (std::size_t m = 0; m < c.morphism_count() && step.object == kNone; ++m) {
      if (checked[m]) continue;
      if (!assigned[c.src(m)] && assigned[c.tgt(m)]) {
        step = {c.src(m), StepKind::Join, m, c.tgt(m), {}};
      }
    }
    if (step.object == kNone) {
      for (std::size_t o = 0; o < k; ++o) {
        if (!assigned[o]) {
          step.object = o;
          break;
        }
      }
    }
    assigned[step.object] = true;
    for (std::size_t m = 0; m < c.morphism_count(); ++m) {
      if (!checked[m] && assigned[c.src(m)] && assigned[c.tgt(m)]) {
        checked[m] = true;
        if (m != step.morphism) step.checks.push_back(m);
      }
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

}  // namespace

SetLimit fin_limit_unchecked(const SetDiagram& d) {
  const auto& c = d.shape;
  const std::size_t k = c.object_count();
  const auto steps = plan(d);

  // Preimage indexes for Join steps.
  std::vector<std::vector<std::vector<std::size_t>>> preimage(steps.size());
  for (std::size_t s = 0; s < steps.size(); ++s) {
    if (steps[s].kind != StepKind::Join) continue;
    const auto& f = d.arrows[steps[s].morphism];
    preimage[s].assign(f.cod().size(), {});
    for (std::size_t i = 0; i < f.dom().size(); ++i) preimage[s][f.at(i)].push_back(i);
  }

  std::vector<std::vector<std::size_t>> rows;
  std::vector<std::size_t> current(k, kNone);

  const auto consistent = [&](const Step& step) {
    for (std::size_t m : step.checks) {
      if (d.arrows[m].at(current[c.src(m)]) != current[c.tgt(m)]) return false;
    }
    return true;
  };

  // Iterative depth-first search over steps.
  std::vector<std::size_t> cursor(steps.size(), 0);
  std::vector<const std::vector<std::size_t>*> options(steps.size(), nullptr);
  std::vector<std::vector<std::size_t>> free_options(steps.size());
  for (std::size_t s = 0; s < steps.size(); ++s) {
    if (steps[s].kind == StepKind::Free) {
      free_options[s].resize(d.objects[steps[s].object].size());
      std::iota(free_options[s].begin(), free_options[s].end(), 0);
    }
  }
  std::vector<std::vector<std::size_t>> single_holder(steps.size(),
                                                      std::vector<std::size_t>(1));

  const auto prepare = [&](std::size_t s) {
    const Step& step = steps[s];
    cursor[s] = 0;
    switch (step.kind) {
      case StepKind::Free:
        options[s] = &free_options[s];
        break;
      case StepKind::Determined:
        single_holder[s][0] = d.arrows[step.morphism].at(current[step.other]);
        options[s] = &single_holder[s];
        break;
      case StepKind::Join:
        options[s] = &preimage[s][current[step.other]];
        break;
    }
  };

  if (k == 0) {
    rows.emplace_back();
  } else {
    std::size_t s = 0;
    prepare(0);
    while (true) {
      if (cursor[s] < options[s]->size()) {
        current[steps[s].object] = (*options[s])[cursor[s]++];
        if (!consistent(steps[s])) continue;
        if (s + 1 == steps.size()) {
          rows.push_back(current);
          check_size("limit", rows.size());
          continue;
        }
        ++s;
        prepare(s);
      } else {
        current[steps[s].object] = kNone;
        if (s == 0) break;
        --s;
      }
    }
  }

  std::vector<Element> elements;
  elements.reserve(rows.size());
  for (const auto& row : rows) {
    std::vector<Element> items;
    items.reserve(k);
    for (std::size_t o = 0; o < k; ++o) items.push_back(d.objects[o][row[o]]);
    elements.push_back(Element::tuple(std::move(items)));
  }
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return elements[a] < elements[b];
  });
  std::vector<Element> sorted;
  sorted.reserve(rows.size());
  for (std::size_t i : order) sorted.push_back(elements[i]);
  SetLimit out{FinSet(std::move(sorted)), {}};
  for (std::size_t o = 0; o < k; ++o) {
    std::vector<std::size_t> table(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) table[i] = rows[order[i]][o];
    out.legs.emplace_back(out.apex, d.objects[o], std::move(table));
  }
  return out;
}

SetLimit fin_limit(const SetDiagram& d) {
  validate_diagram(d).require("fin_limit");
  return fin_limit_unchecked(d);
}

SetLimit fin_product(std::span<const FinSet> factors) {
  const Shape shape = diagram_shape(factors.size(), {});
  return fin_limit_unchecked(make_set_diagram(
      shape, std::vector<FinSet>(factors.begin(), factors.end()), {}));
}

SetDiagram make_set_diagram(const Shape& shape, std::vector<FinSet> objects,
                            const std::vector<FinFunction>& arrows) {
  const auto& c = shape.category;
  if (objects.size() != c.object_count() || arrows.size() != shape.arrows.size()) {
    throw ValidationError("diagram does not match its shape");
  }
  SetDiagram d{c, std::move(objects), std::vector<FinFunction>(c.morphism_count())};
  for (std::size_t o = 0; o < c.object_count(); ++o) {
    d.arrows[c.identity(o)] = FinFunction::identity(d.objects[o]);
  }
  for (std::size_t k = 0; k < arrows.size(); ++k) d.arrows[shape.arrows[k]] = arrows[k];
  return d;
}

FinFunction mediate(const SetLimit& limit, const FinSet& source,
                    std::span<const FinFunction> cone) {
  if (cone.size() != limit.legs.size()) {
    throw ValidationError("mediate: cone has the wrong number of legs");
  }
  std::vector<std::size_t> table(source.size());
  std::vector<Element> items(cone.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    for (std::size_t o = 0; o < cone.size(); ++o) {
      items[o] = cone[o].cod()[cone[o].at(i)];
    }
    const auto idx = limit.apex.index_of(Element::tuple(items));
    if (!idx) {
      throw ValidationError("mediate: cone does not commute at " +
                            source[i].str());
    }
    table[i] = *idx;
  }
  return FinFunction(source, limit.apex, std::move(table));
}

}  // namespace ftopos
