#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ftopos/category.hpp"
#include "ftopos/presheaf.hpp"
#include "ftopos/topos.hpp"

namespace ftopos {

/// Simplicial object truncated at level 3. Faces d(n, i): X_n -> X_{n-1},
/// degeneracies s(n, i): X_n -> X_{n+1}. The source of an arrow is d(1, 1),
/// its target d(1, 0).
struct TruncatedSimplicialObject {
  std::array<Presheaf, 4> level;
  std::array<std::vector<NatTrans>, 4> faces;         // faces[0] unused
  std::array<std::vector<NatTrans>, 3> degeneracies;

  const Topos& topos() const { return level[0].topos(); }
  const NatTrans& d(std::size_t n, std::size_t i) const { return faces.at(n).at(i); }
  const NatTrans& s(std::size_t n, std::size_t i) const { return degeneracies.at(n).at(i); }
  const NatTrans& source() const { return d(1, 1); }
  const NatTrans& target() const { return d(1, 0); }
};

/// Checks shapes of all faces and degeneracies and every simplicial identity
/// that fits below level 3. Violations are named, e.g. "d1 d1 = d1 d2 on X3".
ValidationReport validate_simplicial(const TruncatedSimplicialObject& x);

/// The i-th vertex X_n -> X_0.
NatTrans vertex(const TruncatedSimplicialObject& x, std::size_t n, std::size_t i);

/// Internal category. Composable pairs are the pullback of t along s, with
/// apex elements (f, g, t f); m(f, g) is "g after f".
struct CategoryObject {
  Presheaf c0;
  Presheaf c1;
  NatTrans s;
  NatTrans t;
  NatTrans e;
  PresheafLimit pairs;
  NatTrans m;
};

PresheafLimit composable_pairs(const NatTrans& s, const NatTrans& t);

/// Element of `pairs` for a composable (f, g) at index object c.
Element composable_pair(const CategoryObject& cat, std::size_t c, const Element& f,
                        const Element& g);

/// Composite g∘f at index object c.
Element compose_at(const CategoryObject& cat, std::size_t c, const Element& f,
                   const Element& g);

ValidationReport validate_category_object(const CategoryObject& cat);

/// A finite category as a category object in FinSet, without validating it.
CategoryObject set_category_object(const FiniteCategory& c);

/// Nerve truncated at 3: X_2 composable pairs (f, g, t f), X_3 triples
/// (f1, t f1, f2, t f2, f3). Validates the category object first.
TruncatedSimplicialObject nerve_truncation(const CategoryObject& cat);

/// Same construction with no validation; a broken composition table shows
/// up as failing simplicial identities.
TruncatedSimplicialObject nerve_truncation_unchecked(const CategoryObject& cat);

/// Nerve of a finite category in FinSet, unchecked.
TruncatedSimplicialObject category_nerve(const FiniteCategory& c);

/// Every level the given presheaf, all maps identities.
TruncatedSimplicialObject constant_simplicial(const Presheaf& x);

struct SegalReport {
  bool simplicial = false;
  bool segal = false;
  ValidationReport identities;
  std::vector<std::string> witnesses;
};

/// Limit of the spine diagram X_1 -> X_0 <- X_1 -> ... for n = 2, 3, with
/// edges mapped by t on the left and s on the right.
PresheafLimit spine(const TruncatedSimplicialObject& x, std::size_t n);

/// Comparison X_n -> spine(n) from the edges (i, i+1).
NatTrans spine_comparison(const TruncatedSimplicialObject& x, const PresheafLimit& sp,
                          std::size_t n);

SegalReport check_segal(const TruncatedSimplicialObject& x);
bool is_segal(const TruncatedSimplicialObject& x);

/// A simplicial object known to be Segal, with the inverse of the level-2
/// comparison cached.
class SegalObject {
 public:
  /// Throws ValidationError if x is not a Segal object.
  explicit SegalObject(TruncatedSimplicialObject x);

  const TruncatedSimplicialObject& simplicial() const noexcept { return x_; }
  const Topos& topos() const { return x_.topos(); }
  const PresheafLimit& spine2() const noexcept { return spine2_; }
  const NatTrans& spine2_inverse() const noexcept { return inverse2_; }

 private:
  TruncatedSimplicialObject x_;
  PresheafLimit spine2_;
  NatTrans inverse2_;
};

struct Z3 {
  PresheafLimit limit;  // X_1 ->t X_0 <-t X_1 ->s X_0 <-s X_1
  NatTrans from_x3;     // (d1 d3, d0 d3, d1 d0)
  NatTrans from_x1;     // (s0 d0, id, s0 d1)
};

Z3 z3(const SegalObject& x);

struct EquivalencesObject {
  Presheaf carrier;
  NatTrans U;
  NatTrans s0_lift;
  PresheafLimit pullback;  // X_1 x_Z X_3
  Z3 z;
};

EquivalencesObject hoequiv(const SegalObject& x);

struct CompletenessReport {
  bool complete = false;
  bool s0_iso = false;
  bool pullback_square = false;
  bool u_mono = false;
  std::size_t x0_size = 0;
  std::size_t hoequiv_size = 0;
};

/// s0: X_0 -> X_hoequiv iso, cross-checked against X_0 being the pullback
/// of X_3 -> Z <- X_1. Throws InternalError if the two disagree.
CompletenessReport check_complete(const SegalObject& x);
bool is_complete(const SegalObject& x);

/// Degenerate 3-simplex X_0 -> X_3.
NatTrans degenerate3(const TruncatedSimplicialObject& x);

struct MappingObject {
  std::vector<NatTrans> points;
  NatTrans point_map;       // D -> X_0^{n+1}
  PresheafLimit pullback;   // D x X_n over X_0^{n+1}
  SliceMap fibre;           // pullback of X_n along the points, over D
  NatTrans to_level;        // fibre.total -> X_n
  SliceMap pi;              // product along D -> 1
  Presheaf object() const { return pi.total; }
  /// For n >= 2, whether the map to the product of consecutive binary
  /// mapping objects is iso.
  std::optional<bool> decomposes;
};

/// map(x_0, ..., x_n) for points D -> X_0, 1 <= n <= 3.
MappingObject mapping_object(const SegalObject& x, const std::vector<NatTrans>& points);

/// All D -> X_n lying over the points; these are the global elements of
/// the mapping object.
std::vector<NatTrans> mapping_elements(const SegalObject& x, const std::vector<NatTrans>& points,
                                       std::size_t limit = kNoLimit);

/// s0∘x.
NatTrans identity_element(const SegalObject& x, const NatTrans& point);

/// g∘f for f, g: D -> X_1 with t f = s g, through the inverse Segal map
/// then d1.
NatTrans compose(const SegalObject& x, const NatTrans& f, const NatTrans& g);

/// Lift of f: D -> X_1 through U, if it exists (unique when it does).
std::optional<NatTrans> hoequiv_lift(const EquivalencesObject& eq, const NatTrans& f);
bool is_hoequiv_morphism(const SegalObject& x, const NatTrans& f);

struct HoequivObject {
  SliceMap fibre;
  SliceMap pi;
  NatTrans to_mapping;  // hoequiv(x, y) -> map(x, y)
  Presheaf object() const { return pi.total; }
};

HoequivObject hoequiv_object(const SegalObject& x, const NatTrans& from, const NatTrans& to);

/// (W_{/f})_0 -> W_0 iso for f: 1 -> X_0.
bool is_final_object(const SegalObject& x, const NatTrans& f);

struct SimplicialMap {
  std::array<NatTrans, 4> at;
};

ValidationReport validate_simplicial_map(const TruncatedSimplicialObject& w,
                                         const TruncatedSimplicialObject& v,
                                         const SimplicialMap& f);

bool is_fully_faithful(const SegalObject& w, const SegalObject& v, const SimplicialMap& f);
bool is_essentially_surjective(const SegalObject& w, const SegalObject& v,
                               const SimplicialMap& f);

/// Functor between finite categories given on objects and morphisms.
struct Functor {
  FiniteCategory dom;
  FiniteCategory cod;
  std::vector<std::size_t> on_objects;
  std::vector<std::size_t> on_morphisms;
};

ValidationReport validate_functor(const Functor& f);

/// The induced map between the FinSet nerves built by category_nerve.
SimplicialMap nerve_map(const Functor& f, const TruncatedSimplicialObject& dom,
                        const TruncatedSimplicialObject& cod);

}  // namespace ftopos
