#include "families.hpp"

#include "ftopos/guard.hpp"

namespace ftopos::detail {

namespace {
constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
}

std::size_t FamilySolver::add_key(std::vector<std::size_t> candidates,
                                  std::size_t value_count) {
  Key k;
  k.allowed.assign(value_count, 0);
  for (std::size_t v : candidates) k.allowed[v] = 1;
  k.candidates = std::move(candidates);
  keys_.push_back(std::move(k));
  return keys_.size() - 1;
}

void FamilySolver::add_edge(std::size_t from, std::size_t to,
                            std::span<const std::size_t> map) {
  keys_[from].edges.push_back({to, map});
}

void FamilySolver::solve(
    const std::function<bool(std::span<const std::size_t>)>& visit) const {
  const std::size_t n = keys_.size();
  std::vector<std::size_t> value(n, kUnset);
  std::vector<std::size_t> trail;
  trail.reserve(n);
  std::vector<std::size_t> queue;
  queue.reserve(n);

  // Assigns `key := v` and propagates; on failure leaves extra entries on
  // the trail for the caller to undo.
  const auto assign = [&](std::size_t key, std::size_t v) {
    if (!keys_[key].allowed[v]) return false;
    value[key] = v;
    trail.push_back(key);
    queue.clear();
    queue.push_back(key);
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const std::size_t k = queue[q];
      for (const Edge& e : keys_[k].edges) {
        const std::size_t w = e.map[value[k]];
        if (value[e.to] == kUnset) {
          if (!keys_[e.to].allowed[w]) return false;
          value[e.to] = w;
          trail.push_back(e.to);
          queue.push_back(e.to);
        } else if (value[e.to] != w) {
          return false;
        }
      }
    }
    return true;
  };

  const auto undo_to = [&](std::size_t mark) {
    while (trail.size() > mark) {
      value[trail.back()] = kUnset;
      trail.pop_back();
    }
  };

  bool stop = false;
  std::function<void(std::size_t)> search = [&](std::size_t from) {
    std::size_t k = from;
    while (k < n && value[k] != kUnset) ++k;
    if (k == n) {
      if (!visit(value)) stop = true;
      return;
    }
    for (std::size_t v : keys_[k].candidates) {
      const std::size_t mark = trail.size();
      if (assign(k, v)) search(k + 1);
      undo_to(mark);
      if (stop) return;
    }
  };
  search(0);
}

std::vector<std::vector<std::size_t>> FamilySolver::all(const std::string& what,
                                                        std::size_t limit) const {
  std::vector<std::vector<std::size_t>> out;
  solve([&](std::span<const std::size_t> v) {
    out.emplace_back(v.begin(), v.end());
    check_size(what, out.size());
    return out.size() < limit;
  });
  return out;
}

}  // namespace ftopos::detail
