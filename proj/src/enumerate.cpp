#include "ftopos/enumerate.hpp"

#include <algorithm>
#include <map>

#include "ftopos/errors.hpp"
#include "ftopos/guard.hpp"

namespace ftopos {

namespace {

/// Iso-invariant fingerprint: level sizes and image sizes of restrictions.
std::vector<std::size_t> fingerprint(const Presheaf& x) {
  std::vector<std::size_t> f;
  for (const auto& s : x.levels()) f.push_back(s.size());
  const auto& c = x.index();
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    const auto& r = x.restrict(u);
    std::vector<bool> hit(r.cod().size(), false);
    std::size_t image = 0;
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < r.dom().size(); ++i) {
      if (!hit[r.at(i)]) {
        hit[r.at(i)] = true;
        ++image;
      }
      if (c.src(u) == c.tgt(u) && r.at(i) == i) ++fixed;
    }
    f.push_back(image);
    f.push_back(fixed);
  }
  return f;
}

void extend(const Topos& t, const std::vector<FinSet>& sets,
            const std::vector<std::size_t>& order, std::size_t pos,
            std::vector<FinFunction>& maps, std::vector<bool>& assigned,
            std::vector<Presheaf>& out) {
  const auto& c = t.index();
  if (pos == order.size()) {
    out.emplace_back(t, sets, maps);
    check_size("presheaf enumeration", out.size());
    return;
  }
  const std::size_t u = order[pos];
  const FinSet& dom = sets[c.tgt(u)];
  const FinSet& cod = sets[c.src(u)];

  const auto consistent = [&]() {
    for (const auto& [g, f, h] : c.comp_entries()) {
      if (!assigned[g] || !assigned[f] || !assigned[h]) continue;
      if (g != u && f != u && h != u) continue;
      if (!(maps[h] == compose(maps[f], maps[g]))) return false;
    }
    return true;
  };

  // A composite of two assigned arrows is forced.
  for (const auto& [g, f, h] : c.comp_entries()) {
    if (h == u && g != u && f != u && assigned[g] && assigned[f]) {
      maps[u] = compose(maps[f], maps[g]);
      assigned[u] = true;
      if (consistent()) extend(t, sets, order, pos + 1, maps, assigned, out);
      assigned[u] = false;
      return;
    }
  }
  for (auto& fn : all_functions(dom, cod)) {
    maps[u] = std::move(fn);
    assigned[u] = true;
    if (consistent()) extend(t, sets, order, pos + 1, maps, assigned, out);
    assigned[u] = false;
  }
}

}  // namespace

std::vector<Presheaf> enumerate_presheaves(const Topos& t, std::size_t max_size) {
  const auto& c = t.index();
  const std::size_t n = c.object_count();
  std::vector<Presheaf> result;
  std::vector<std::size_t> sizes(n, 0);
  std::vector<std::size_t> order;
  for (std::size_t u = 0; u < c.morphism_count(); ++u) {
    if (!c.is_identity(u)) order.push_back(u);
  }
  while (true) {
    std::vector<FinSet> sets;
    for (std::size_t s : sizes) sets.push_back(FinSet::range(s));
    std::vector<FinFunction> maps(c.morphism_count());
    std::vector<bool> assigned(c.morphism_count(), false);
    for (std::size_t o = 0; o < n; ++o) {
      maps[c.identity(o)] = FinFunction::identity(sets[o]);
      assigned[c.identity(o)] = true;
    }
    std::vector<Presheaf> all;
    extend(t, sets, order, 0, maps, assigned, all);

    std::map<std::vector<std::size_t>, std::vector<std::size_t>> buckets;
    std::vector<Presheaf> reps;
    for (auto& x : all) {
      auto& bucket = buckets[fingerprint(x)];
      bool seen = false;
      for (std::size_t r : bucket) {
        if (find_iso(x, reps[r])) {
          seen = true;
          break;
        }
      }
      if (!seen) {
        bucket.push_back(reps.size());
        reps.push_back(std::move(x));
      }
    }
    for (auto& r : reps) result.push_back(std::move(r));

    std::size_t k = n;
    bool done = true;
    while (k > 0) {
      --k;
      if (++sizes[k] <= max_size) {
        done = false;
        break;
      }
      sizes[k] = 0;
    }
    if (done) break;
  }
  return result;
}

std::optional<NatTrans> find_iso(const Presheaf& x, const Presheaf& y) {
  for (std::size_t o = 0; o < x.levels().size(); ++o) {
    if (x.at(o).size() != y.at(o).size()) return std::nullopt;
  }
  for (auto& h : enumerate_homs(x, y)) {
    if (is_iso(h)) return h;
  }
  return std::nullopt;
}

std::vector<NatTrans> automorphisms(const Presheaf& x) {
  std::vector<NatTrans> out;
  for (auto& h : enumerate_homs(x, x)) {
    if (is_iso(h)) out.push_back(std::move(h));
  }
  return out;
}

bool arrows_isomorphic(const NatTrans& p, const NatTrans& q) {
  const auto a0 = find_iso(p.dom(), q.dom());
  const auto b0 = find_iso(p.cod(), q.cod());
  if (!a0 || !b0) return false;
  // Every iso E -> E' is a0 after an automorphism; same for B.
  const auto auts_e = automorphisms(p.dom());
  const auto auts_b = automorphisms(p.cod());
  for (const auto& ae : auts_e) {
    const NatTrans a = compose(*a0, ae);
    const NatTrans qa = compose(q, a);
    for (const auto& ab : auts_b) {
      if (compose(compose(*b0, ab), p) == qa) return true;
    }
  }
  return false;
}

}  // namespace ftopos
