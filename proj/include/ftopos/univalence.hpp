#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ftopos/presheaf.hpp"
#include "ftopos/segal.hpp"
#include "ftopos/topos.hpp"

namespace ftopos {

/// Internal category of fibrewise maps of p: E -> B. Objects B, morphisms
/// M = (p x id)_*(E x E) over B x B; an element over (b, b') is a natural
/// family of maps from the fibre over b to the fibre over b'.
struct NerveOfMap {
  NatTrans p;
  PresheafLimit base;  // B x B
  SliceMap M;          // over base.apex
  CategoryObject cat;
  TruncatedSimplicialObject trunc;
};

/// Builds the nerve and checks the category-object axioms. The morphism
/// object is also built as a slice exponential over B x B, and the two
/// are compared; any failure is an InternalError.
NerveOfMap nerve_of_map(const NatTrans& p);

/// M as the exponential (B x E -> B x B)^(E x B -> B x B) in the slice.
SliceMap fibrewise_maps_by_exponential(const NatTrans& p, const PresheafLimit& base);

/// Canonical comparison between the two constructions of M, matched on the
/// underlying fibre maps. Throws InternalError if some element has no partner.
NatTrans compare_fibrewise_maps(const NatTrans& p, const SliceMap& by_product,
                                const SliceMap& by_exponential);

struct UnivalenceReport {
  bool univalent = false;
  bool mono = false;
  CompletenessReport completeness;
  bool exponential_route_agrees = false;
  /// FinSet only.
  std::optional<bool> fiber_oracle;
  bool oracle_agrees = true;
  std::array<std::size_t, 4> level_sizes{};
  std::size_t morphism_object_size = 0;
  double seconds = 0;
};

UnivalenceReport is_univalent(const NatTrans& p);

/// In FinSet: every fibre has at most one element and no two fibres have
/// the same size. Throws ValidationError outside FinSet.
bool fiber_oracle_univalent(const NatTrans& p);

/// Whether the index category is the terminal one.
bool is_finset(const Topos& t);

struct ArrowBounds {
  std::size_t max_total;  // every level of E
  std::size_t max_base;   // every level of B
};

/// All arrows E -> B within the bounds, one per isomorphism class of
/// arrows, in a deterministic order.
std::vector<NatTrans> enumerate_arrows(const Topos& t, ArrowBounds bounds);

struct UnivalentEnumeration {
  std::vector<NatTrans> arrows;
  std::vector<UnivalenceReport> reports;  // parallel to arrows
  std::vector<std::size_t> univalent;     // indices into arrows
};

/// Runs is_univalent on every enumerated arrow, split across
/// `parallelism()` threads; the result does not depend on the split.
UnivalentEnumeration enumerate_univalent(const Topos& t, ArrowBounds bounds);

/// A commuting square from p2 to p1 that is a pullback.
struct PullbackSquareMorphism {
  NatTrans p2;
  NatTrans p1;
  NatTrans f_E;
  NatTrans f_B;
};

bool is_pullback_square(const PullbackSquareMorphism& sq);

std::vector<PullbackSquareMorphism> pullback_square_homs(const NatTrans& p2, const NatTrans& p1);

struct UniIffMonoVerdict {
  bool p2_univalent = false;
  bool f_B_mono = false;
  bool agree = false;
};

/// Requires p1 univalent (ValidationError otherwise).
UniIffMonoVerdict check_uni_iff_mono(const PullbackSquareMorphism& sq);

struct UniversalMonoVerdict {
  UnivalenceReport report;
  bool internal_poset = false;  // M -> B x B mono
};

UniversalMonoVerdict check_universal_mono_univalent(const Topos& t);

struct MonoClassificationVerdict {
  bool univalent = false;
  bool chi_mono = false;
  bool agree = false;
  NatTrans chi;
};

/// Requires a mono (ValidationError otherwise).
MonoClassificationVerdict check_mono_classification(const NatTrans& v);

}  // namespace ftopos
