#pragma once

#include "fintop/presheaf.hpp"

namespace fintop {

// A presheaf on the category of elements of some base presheaf, carried
// together with that category.
struct ElementsPresheaf {
  ElementsCategory elements;
  Presheaf value;  // on elements.cat
};

// [h : H -> P] turned into a presheaf on the elements of P: the set at
// (X,p) is the fiber of h over p, restriction acts by H's action.
ElementsPresheaf r_functor(const NatTrans& h);

struct SliceObject {
  Presheaf total;
  NatTrans structural;
};

// Inverse direction: a presheaf w on the elements of q reassembles into
// an object over q, with total(X) the disjoint union of w(X,q') tagged
// "(q',w')" and the structural map the tag projection.
SliceObject l_functor(const Presheaf& q, const ElementsCategory& intq,
                      const Presheaf& w);

// Right Kan extension of v.value along the opposite of the elements
// functor of f. The value at a node d of the elements of f's target is
// the limit of v over the comma category of arrows into d; elements are
// association lists "[g:p:x;...]" sorted by (arrow, element), one entry
// per comma node; restriction precomposes.
Presheaf ran_along_elements(const NatTrans& f, const ElementsPresheaf& v);

struct KanDP {
  ElementsPresheaf fibers;  // of h, on the elements of P
  ElementsCategory intq;    // elements of Q
  Presheaf ran;             // on intq.cat
  Presheaf total;           // over the base category
  NatTrans structural;      // total -> Q
};

// The composite construction: fibers, then the right Kan extension,
// then reassembly over Q.
KanDP dependent_product_kan(const NatTrans& f, const NatTrans& h);

}  // namespace fintop
