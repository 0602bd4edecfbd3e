#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ftopos/element.hpp"

namespace ftopos {

/// Finite set of elements, stored sorted and duplicate-free.
class FinSet {
 public:
  FinSet();
  explicit FinSet(std::vector<Element> elements);
  FinSet(std::initializer_list<Element> elements)
      : FinSet(std::vector<Element>(elements)) {}

  /// {"0", "1", ..., "n-1"} as atoms.
  static FinSet range(std::size_t n);
  static FinSet atoms(std::initializer_list<const char*> names);

  std::size_t size() const noexcept { return data_->elements.size(); }
  bool empty() const noexcept { return size() == 0; }
  std::span<const Element> elements() const noexcept {
    return data_->elements;
  }
  const Element& operator[](std::size_t i) const { return data_->elements[i]; }
  auto begin() const noexcept { return data_->elements.begin(); }
  auto end() const noexcept { return data_->elements.end(); }

  bool contains(const Element& e) const { return index_of(e).has_value(); }
  std::optional<std::size_t> index_of(const Element& e) const;
  /// Like index_of but throws ValidationError naming `context`.
  std::size_t require(const Element& e, const std::string& context) const;

  friend bool operator==(const FinSet& a, const FinSet& b) noexcept;

 private:
  struct Data {
    std::vector<Element> elements;
    std::unordered_map<Element, std::size_t, ElementHash> index;
  };
  std::shared_ptr<const Data> data_;
};

/// Total function between finite sets, stored as an index table.
class FinFunction {
 public:
  FinFunction() = default;
  /// `table[i]` is the index in `cod` of the image of `dom[i]`.
  FinFunction(FinSet dom, FinSet cod, std::vector<std::size_t> table);

  /// Builds from element pairs; every domain element must appear exactly
  /// once and every value must lie in the codomain.
  static FinFunction from_pairs(
      FinSet dom, FinSet cod,
      const std::vector<std::pair<Element, Element>>& pairs);
  static FinFunction identity(const FinSet& s);

  const FinSet& dom() const noexcept { return dom_; }
  const FinSet& cod() const noexcept { return cod_; }
  std::span<const std::size_t> table() const noexcept { return *table_; }
  std::size_t at(std::size_t i) const { return (*table_)[i]; }
  Element operator()(const Element& x) const;

  bool is_injective() const;
  bool is_surjective() const;
  bool is_bijective() const { return is_injective() && is_surjective(); }

  friend bool operator==(const FinFunction& a, const FinFunction& b) noexcept;

 private:
  FinSet dom_;
  FinSet cod_;
  std::shared_ptr<const std::vector<std::size_t>> table_ =
      std::make_shared<const std::vector<std::size_t>>();
};

/// g after f. Throws if cod(f) != dom(g).
FinFunction compose(const FinFunction& g, const FinFunction& f);

/// Inverse of a bijection; throws ValidationError otherwise.
FinFunction inverse(const FinFunction& f);

/// All functions dom -> cod in lexicographic table order.
std::vector<FinFunction> all_functions(const FinSet& dom, const FinSet& cod);

}  // namespace ftopos
