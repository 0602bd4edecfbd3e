#pragma once

#include <optional>
#include <vector>

#include "ftopos/presheaf.hpp"

namespace ftopos {

/// All presheaves with every level of size <= max_size, one per
/// isomorphism class, in a deterministic order (by level sizes first).
std::vector<Presheaf> enumerate_presheaves(const Topos& t, std::size_t max_size);

/// Some isomorphism X -> Y, if one exists.
std::optional<NatTrans> find_iso(const Presheaf& x, const Presheaf& y);

/// Automorphisms of X.
std::vector<NatTrans> automorphisms(const Presheaf& x);

/// Two arrows p: E -> B, q: E' -> B' are isomorphic when there are isos
/// a: E -> E', b: B -> B' with q∘a = b∘p. Searches all such pairs.
bool arrows_isomorphic(const NatTrans& p, const NatTrans& q);

}  // namespace ftopos
