#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ftopos {

/// Canonical term naming a point of a computed set.
///
/// An element is an atom, a tuple of elements, or a family (a finite map
/// from key elements to value elements, keys sorted and distinct). Values
/// are immutable and share structure, so copies are cheap. Ordering is
/// total: first by kind (atom < tuple < family), then by contents.
class Element {
 public:
  enum class Kind : std::uint8_t { Atom = 0, Tuple = 1, Fam = 2 };
  using Entry = std::pair<Element, Element>;

  /// The empty tuple.
  Element();

  static Element atom(std::string name);
  static Element tuple(std::vector<Element> items);
  static Element tuple(std::initializer_list<Element> items) {
    return tuple(std::vector<Element>(items));
  }
  /// Sorts entries by key; throws ValidationError on a repeated key.
  static Element fam(std::vector<Entry> entries);

  Kind kind() const noexcept;
  bool is_atom() const noexcept { return kind() == Kind::Atom; }
  bool is_tuple() const noexcept { return kind() == Kind::Tuple; }
  bool is_fam() const noexcept { return kind() == Kind::Fam; }

  const std::string& name() const;
  std::span<const Element> items() const;
  const Element& operator[](std::size_t i) const { return items()[i]; }
  std::span<const Entry> entries() const;
  /// Value stored under `key` in a family, or nullptr.
  const Element* find(const Element& key) const;

  std::size_t hash() const noexcept;

  /// Compact human-readable form: atoms bare (quoted if needed),
  /// tuples as `(a, b)`, families as `{k: v, ...}`.
  std::string str() const;

  friend bool operator==(const Element& a, const Element& b) noexcept;
  friend std::strong_ordering operator<=>(const Element& a,
                                          const Element& b) noexcept;

 private:
  struct Node;
  explicit Element(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept { return e.hash(); }
};

/// Atom shorthand used heavily by builders and tests.
inline Element atom(std::string name) { return Element::atom(std::move(name)); }
Element atom(std::size_t n);

}  // namespace ftopos

template <>
struct std::hash<ftopos::Element> {
  std::size_t operator()(const ftopos::Element& e) const noexcept {
    return e.hash();
  }
};
