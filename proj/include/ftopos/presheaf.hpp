#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ftopos/category.hpp"
#include "ftopos/finset.hpp"

namespace ftopos {

/// The category of presheaves (contravariant set-valued functors) on a
/// finite index category. FinSet is the case of the terminal index.
class Topos {
 public:
  /// Validates the index category; throws ValidationError on failure.
  explicit Topos(FiniteCategory index);
  static Topos sets();

  const FiniteCategory& index() const noexcept { return *index_; }

  friend bool operator==(const Topos& a, const Topos& b) {
    return a.index_ == b.index_ || *a.index_ == *b.index_;
  }

 private:
  std::shared_ptr<const FiniteCategory> index_;
};

/// A presheaf: a finite set per index object and, for every index
/// morphism u: c -> d, a restriction function at(d) -> at(c).
class Presheaf {
 public:
  Presheaf() : Presheaf(Topos::sets(), {FinSet()}, {FinFunction::identity(FinSet())}) {}
  /// Checks that restriction maps have the right domains; functoriality is
  /// checked by validate_presheaf.
  Presheaf(Topos topos, std::vector<FinSet> at, std::vector<FinFunction> restrict);

  const Topos& topos() const noexcept { return topos_; }
  const FiniteCategory& index() const noexcept { return topos_.index(); }
  const FinSet& at(std::size_t obj) const { return at_[obj]; }
  const FinFunction& restrict(std::size_t mor) const { return restrict_[mor]; }
  std::span<const FinSet> levels() const noexcept { return at_; }
  std::size_t total_size() const noexcept;

  friend bool operator==(const Presheaf& a, const Presheaf& b);

 private:
  Topos topos_;
  std::vector<FinSet> at_;
  std::vector<FinFunction> restrict_;
};

/// Natural transformation between presheaves on the same index.
class NatTrans {
 public:
  NatTrans() = default;
  NatTrans(Presheaf dom, Presheaf cod, std::vector<FinFunction> components);

  const Presheaf& dom() const noexcept { return dom_; }
  const Presheaf& cod() const noexcept { return cod_; }
  const FinFunction& at(std::size_t obj) const { return components_[obj]; }
  std::span<const FinFunction> components() const noexcept { return components_; }

  friend bool operator==(const NatTrans& a, const NatTrans& b);

 private:
  Presheaf dom_;
  Presheaf cod_;
  std::vector<FinFunction> components_;
};

ValidationReport validate_presheaf(const Presheaf& x);
ValidationReport validate_nat_trans(const NatTrans& f);

/// Builds a presheaf from element tables; `restrict` maps morphism names to
/// (x, y) pairs with x in at(tgt), y in at(src). Identities may be omitted.
Presheaf make_presheaf(
    const Topos& t, const std::vector<std::vector<Element>>& at,
    const std::vector<std::pair<Element, std::vector<std::pair<Element, Element>>>>&
        restrict);

/// Single-object shorthand for FinSet: the discrete presheaf on a set.
Presheaf set_presheaf(const FinSet& s);
/// FinSet morphism from a function.
NatTrans set_map(const FinFunction& f);
NatTrans set_map(const FinSet& dom, const FinSet& cod,
                 const std::vector<std::pair<Element, Element>>& pairs);

NatTrans identity(const Presheaf& x);
/// Builds X -> Y from an elementwise rule fn(object, x) and checks that the
/// result is natural (ValidationError otherwise).
NatTrans natural_map(const Presheaf& dom, const Presheaf& cod,
                     const std::function<Element(std::size_t, const Element&)>& fn);

/// g after f.
NatTrans compose(const NatTrans& g, const NatTrans& f);

Presheaf terminal(const Topos& t);
Presheaf initial(const Topos& t);
NatTrans to_terminal(const Presheaf& x);
NatTrans from_initial(const Presheaf& x);

bool is_mono(const NatTrans& f);
bool is_epi(const NatTrans& f);
bool is_iso(const NatTrans& f);
NatTrans inverse(const NatTrans& f);

/// Covariant diagram of presheaves over a shape category.
struct PresheafDiagram {
  Topos topos;
  FiniteCategory shape;
  std::vector<Presheaf> objects;
  std::vector<NatTrans> arrows;
};

struct PresheafLimit {
  Presheaf apex;
  std::vector<NatTrans> legs;
};

PresheafDiagram make_diagram(const Shape& shape, std::vector<Presheaf> objects,
                             const std::vector<NatTrans>& arrows);
ValidationReport validate_diagram(const PresheafDiagram& d);

/// Pointwise limit; apex elements at c are tuples over shape objects.
PresheafLimit ps_limit(const PresheafDiagram& d);

/// Unique map into the limit with the given legs.
NatTrans mediate(const PresheafLimit& limit, const Presheaf& source,
                 std::span<const NatTrans> cone);

/// Product of a nonempty list (the topos is taken from the factors).
PresheafLimit product(std::span<const Presheaf> factors);
PresheafLimit product(const Topos& t, std::span<const Presheaf> factors);
PresheafLimit product(const Presheaf& a, const Presheaf& b);
/// Pairing into a binary product built by `product(a, b)`.
NatTrans pair(const PresheafLimit& prod, const NatTrans& f, const NatTrans& g);
/// f x g : A x B -> C x D between two binary products.
NatTrans product_map(const PresheafLimit& from, const PresheafLimit& to,
                     const NatTrans& f, const NatTrans& g);

/// Pullback of f: A -> C and g: B -> C; apex tuples (a, b, c); legs
/// [to A, to B, to C].
PresheafLimit pullback(const NatTrans& f, const NatTrans& g);

/// The diagonal X -> X x X.
NatTrans diagonal(const Presheaf& x);

/// X -> 1 mono; computed twice (terminal map and diagonal) and the two
/// answers compared.
bool is_minus1_truncated(const Presheaf& x);

inline constexpr std::size_t kNoLimit = std::numeric_limits<std::size_t>::max();

/// All natural transformations X -> Y (at most `limit`).
std::vector<NatTrans> enumerate_homs(const Presheaf& x, const Presheaf& y,
                                     std::size_t limit = kNoLimit);
std::size_t count_homs(const Presheaf& x, const Presheaf& y);

/// Maps a: dom(p) -> dom(q) with q∘a = p.
std::vector<NatTrans> enumerate_slice_homs(const NatTrans& p, const NatTrans& q,
                                           std::size_t limit = kNoLimit);
std::size_t count_slice_homs(const NatTrans& p, const NatTrans& q);

/// Sections s: B -> dom(q) with q∘s = id_B, at most `limit`.
std::vector<NatTrans> enumerate_sections(const NatTrans& q,
                                         std::size_t limit = kNoLimit);

/// Global elements 1 -> X.
std::vector<NatTrans> global_elements(const Presheaf& x);

std::string describe(const Presheaf& x);

}  // namespace ftopos
