#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ftopos::detail {

/// Enumerates assignments key -> value (each value drawn from the key's
/// candidate list) that satisfy functional constraints value(to) =
/// map[value(from)]. Natural transformations, natural families over a
/// Yoneda fan, and sections are all instances.
class FamilySolver {
 public:
  std::size_t add_key(std::vector<std::size_t> candidates, std::size_t value_count);
  void add_edge(std::size_t from, std::size_t to, std::span<const std::size_t> map);

  std::size_t key_count() const noexcept { return keys_.size(); }

  /// Visits every solution; `visit` returns false to stop early.
  void solve(const std::function<bool(std::span<const std::size_t>)>& visit) const;

  /// All solutions, bounded by the global size bound.
  std::vector<std::vector<std::size_t>> all(const std::string& what,
                                            std::size_t limit) const;

 private:
  struct Edge {
    std::size_t to;
    std::span<const std::size_t> map;
  };
  struct Key {
    std::vector<std::size_t> candidates;
    std::vector<char> allowed;
    std::vector<Edge> edges;
  };
  std::vector<Key> keys_;
};

}  // namespace ftopos::detail
