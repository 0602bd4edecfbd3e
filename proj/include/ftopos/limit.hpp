#pragma once

#include <span>
#include <vector>

#include "ftopos/category.hpp"
#include "ftopos/finset.hpp"

namespace ftopos {

/// Covariant diagram of finite sets: `objects[i]` for shape object i and
/// `arrows[m]` : objects[src m] -> objects[tgt m] for every shape morphism.
struct SetDiagram {
  FiniteCategory shape;
  std::vector<FinSet> objects;
  std::vector<FinFunction> arrows;
};

/// Limit apex with one leg per shape object.
struct SetLimit {
  FinSet apex;
  std::vector<FinFunction> legs;
};

ValidationReport validate_diagram(const SetDiagram& d);

/// Limit of a functorial diagram. Elements are tuples with one component
/// per shape object, in object index order. Throws ValidationError on a
/// non-functorial diagram and ResourceError past the size bound.
SetLimit fin_limit(const SetDiagram& d);

/// Same, without the functoriality pass (callers that built `d` themselves).
SetLimit fin_limit_unchecked(const SetDiagram& d);

/// Cartesian product; elements are tuples, legs are projections.
SetLimit fin_product(std::span<const FinSet> factors);

/// Diagram over a `diagram_shape`: identities are filled in.
SetDiagram make_set_diagram(const Shape& shape, std::vector<FinSet> objects,
                            const std::vector<FinFunction>& arrows);

/// The unique map K -> apex whose composite with leg i is `cone[i]`.
/// Throws ValidationError if the cone does not commute with the diagram.
FinFunction mediate(const SetLimit& limit, const FinSet& source,
                    std::span<const FinFunction> cone);

}  // namespace ftopos
