#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ftopos/finset.hpp"

namespace ftopos {

/// List of violated invariants; empty means valid.
struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const noexcept { return violations.empty(); }
  void add(std::string v) { violations.push_back(std::move(v)); }
  void merge(const ValidationReport& other, const std::string& prefix = {});
  /// Throws ValidationError listing the violations, if any.
  void require(const std::string& what) const;
};

/// A finite category given by explicit tables.
///
/// Objects and morphisms are referenced by their index in the sorted
/// `objects()` / `morphisms()` sets. The composition table is stored as
/// given; `validate_category` checks the axioms separately.
class FiniteCategory {
 public:
  FiniteCategory();

  /// `comp` lists triples (g, f, g∘f) of morphism indices.
  FiniteCategory(FinSet objects, FinSet morphisms, FinFunction src,
                 FinFunction tgt, FinFunction identity,
                 const std::vector<std::tuple<std::size_t, std::size_t,
                                              std::size_t>>& comp);

  const FinSet& objects() const noexcept { return objects_; }
  const FinSet& morphisms() const noexcept { return morphisms_; }
  const FinFunction& src_fn() const noexcept { return src_; }
  const FinFunction& tgt_fn() const noexcept { return tgt_; }
  const FinFunction& identity_fn() const noexcept { return identity_; }

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t morphism_count() const noexcept { return morphisms_.size(); }
  std::size_t src(std::size_t m) const { return src_.at(m); }
  std::size_t tgt(std::size_t m) const { return tgt_.at(m); }
  std::size_t identity(std::size_t obj) const { return identity_.at(obj); }
  bool is_identity(std::size_t m) const { return identity(src(m)) == m; }

  /// g∘f when the table has an entry.
  std::optional<std::size_t> compose(std::size_t g, std::size_t f) const;
  /// Like compose but throws when undefined.
  std::size_t comp(std::size_t g, std::size_t f) const;

  std::size_t object_index(const Element& e) const {
    return objects_.require(e, "object");
  }
  std::size_t morphism_index(const Element& e) const {
    return morphisms_.require(e, "morphism");
  }

  /// Morphisms with the given target, in index order.
  const std::vector<std::size_t>& incoming(std::size_t obj) const {
    return incoming_[obj];
  }
  std::vector<std::size_t> hom(std::size_t a, std::size_t b) const;
  /// All table entries (g, f, g∘f), sorted.
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> comp_entries()
      const;

  friend bool operator==(const FiniteCategory& a, const FiniteCategory& b);

 private:
  FinSet objects_;
  FinSet morphisms_;
  FinFunction src_;
  FinFunction tgt_;
  FinFunction identity_;
  std::vector<std::optional<std::size_t>> comp_;  // [g * n + f]
  std::vector<std::vector<std::size_t>> incoming_;
};

ValidationReport validate_category(const FiniteCategory& c);

/// Incremental construction by name. Identities are added automatically as
/// "id_<object>" unless given, and unit-law composites are filled in.
class CategoryBuilder {
 public:
  CategoryBuilder& object(const Element& obj);
  CategoryBuilder& object(const std::string& obj) { return object(atom(obj)); }
  CategoryBuilder& identity(const Element& obj, const Element& mor);
  CategoryBuilder& morphism(const Element& name, const Element& src,
                            const Element& tgt);
  CategoryBuilder& morphism(const std::string& name, const std::string& src,
                            const std::string& tgt) {
    return morphism(atom(name), atom(src), atom(tgt));
  }
  /// Records g∘f = h.
  CategoryBuilder& comp(const Element& g, const Element& f, const Element& h);
  CategoryBuilder& comp(const std::string& g, const std::string& f,
                        const std::string& h) {
    return comp(atom(g), atom(f), atom(h));
  }

  FiniteCategory build() const;

 private:
  struct Mor {
    Element name, src, tgt;
  };
  std::vector<Element> objects_;
  std::vector<std::pair<Element, Element>> identities_;
  std::vector<Mor> morphisms_;
  std::vector<std::tuple<Element, Element, Element>> comp_;
};

FiniteCategory terminal_category();
FiniteCategory empty_category();
FiniteCategory discrete_category(std::size_t n);
/// Linear order 0 < 1 < ... < n-1; morphisms named "i<j" and "id_i".
FiniteCategory chain_category(std::size_t n);
/// One-object category from a group or monoid multiplication table:
/// `table[a][b]` is the index of a·b, element 0 is the unit. Morphism
/// names come from `names`; composition g∘f = g·f.
FiniteCategory monoid_category(const std::vector<std::string>& names,
                               const std::vector<std::vector<std::size_t>>& table);
FiniteCategory cyclic_group_category(std::size_t n);
/// Symmetric group on {0,..,n-1}; elements named by one-line notation.
FiniteCategory symmetric_group_category(std::size_t n);

/// Free diagram shape with no composable pair of non-identity arrows.
struct Shape {
  FiniteCategory category;
  /// Morphism index of each requested arrow, in request order.
  std::vector<std::size_t> arrows;
};

/// Objects keep their given order as indices; `arrows` are (src, tgt).
Shape diagram_shape(std::size_t objects,
                    const std::vector<std::pair<std::size_t, std::size_t>>& arrows);

}  // namespace ftopos
