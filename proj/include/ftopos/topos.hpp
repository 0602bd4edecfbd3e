#pragma once

#include "ftopos/presheaf.hpp"

namespace ftopos {

/// An object of the slice over `proj.cod()`.
struct SliceMap {
  Presheaf total;
  NatTrans proj;

  const Presheaf& base() const noexcept { return proj.cod(); }
};

inline SliceMap slice(const NatTrans& proj) { return {proj.dom(), proj}; }

/// Internal hom G^F with its evaluation map G^F x F -> G.
///
/// G^F at c is the set of natural families from y(c) x F to G: an element
/// is a family keyed by (u: d -> c, a in F(d)) with values in G(d).
struct Exponential {
  Presheaf object;
  PresheafLimit product;  // object x F
  NatTrans eval;
};

Exponential exponential(const Presheaf& f, const Presheaf& g);

/// Curries h: A x F -> G (A x F built with `product(a, f)`) to A -> G^F.
NatTrans transpose(const Exponential& e, const PresheafLimit& a_times_f,
                   const NatTrans& h);

/// Presheaf of sieves with the map picking the maximal sieve.
struct SubobjectClassifier {
  Presheaf omega;
  NatTrans truth;
};

SubobjectClassifier subobject_classifier(const Topos& t);

/// Characteristic map of a mono. Pulls `truth` back along the result and
/// checks the image matches before returning. Throws ValidationError for a
/// non-mono input.
NatTrans classify_mono(const SubobjectClassifier& omega, const NatTrans& m);
NatTrans classify_mono(const NatTrans& m);

/// f^* x: base change of a slice over B along f: A -> B.
SliceMap pullback_functor(const NatTrans& f, const SliceMap& x);

/// Right adjoint to base change along f: A -> B.
///
/// An element over b in B(c) is Tuple(b, family) where the family assigns
/// to every (u: d -> c, a in A(d)) with f(a) = B(u)(b) an element of the
/// total space lying over a, naturally in u.
SliceMap dependent_product(const NatTrans& f, const SliceMap& x);

/// Action of the dependent product on a map h: x.total -> y.total over A,
/// given both products already computed.
NatTrans dependent_product_map(const SliceMap& pi_x, const SliceMap& pi_y,
                               const NatTrans& h);

/// Category of elements of I: objects (c, i), morphisms (u, i): (c, I(u) i)
/// -> (d, i) for u: c -> d.
FiniteCategory category_of_elements(const Presheaf& i);

/// Slices over I as presheaves on the category of elements and back.
Presheaf slice_to_presheaf(const Topos& elements, const SliceMap& x);
SliceMap presheaf_to_slice(const Presheaf& p, const Presheaf& i);

}  // namespace ftopos
