#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ftopos/presheaf.hpp"

namespace ftopos::corpus {

/// Presheaves on C2 (right C2-sets).
Topos c2_sets();
/// Presheaves on S3 (right S3-sets).
Topos s3_sets();
/// Presheaves on the arrow category 0 -> 1.
Topos sierpinski();

/// y(c): Hom(-, c), restriction by precomposition.
Presheaf representable(const Topos& t, std::size_t object);

/// n-element set with trivial restrictions, in any topos.
Presheaf discrete(const Topos& t, std::size_t n);

/// Disjoint union of `copies` copies of x; elements are (k, x).
Presheaf copies(const Presheaf& x, std::size_t count);

/// The natural action of S3 on {0,1,2}, written as a right action.
Presheaf s3_natural_action();

/// Named finite categories used as nerve examples.
std::vector<std::pair<std::string, FiniteCategory>> finite_categories();

}  // namespace ftopos::corpus
