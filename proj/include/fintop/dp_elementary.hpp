#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fintop/powersub.hpp"

namespace fintop {

// Shared scenery for pushing [h: H -> P] forward along f: P -> Q with
// power objects and finite limits: the products and power objects every
// stage of the construction draws from.
struct ElementaryScene {
  NatTrans f;  // P -> Q
  NatTrans h;  // H -> P

  ProductData hp;     // H x P
  PowerObject php;    // P(H x P); membership_ambient is (H x P) x P(H x P)
  PowerObject ph;     // P(H)
  ProductData p_php;  // P x P(H x P)
  ProductData q_php;  // Q x P(H x P)
  Presheaf mem;       // the membership relation of P(H x P), as a presheaf
  ProductData q_mem;  // Q x mem
};

ElementaryScene elementary_scene(const NatTrans& f, const NatTrans& h,
                                 std::size_t cap = kDefaultSubCap);

// phi : P x P(H x P) -> P(H), acting as (p,w) |-> {x | (x,p) in w}. The
// classifying arrow of the membership relation regrouped along
// (H x P) x W ~ H x (P x W).
NatTrans build_phi(const ElementaryScene& sc);

// S <= P x P(H x P): pairs (p,w) whose phi-value is a singleton, i.e. the
// pullback of the singleton mono along phi.
Subpresheaf build_s(const ElementaryScene& sc, const NatTrans& phi);

// tau : Q x mem -> Q x P(H x P), (q,((x,p),w)) |-> (q,w).
NatTrans build_tau(const ElementaryScene& sc);

// W1 <= Q x mem: quadruples with f(p) = q. Computed from the defining
// pullback square and cross-checked against the pointwise condition;
// disagreement raises logic_error.
Subpresheaf build_w1(const ElementaryScene& sc);

// W2 <= Q x mem: quadruples with h(x) = p. Same double computation.
Subpresheaf build_w2(const ElementaryScene& sc);

// T1 = forall_tau(W1) <= Q x P(H x P): relations supported on the fiber
// of f over q. Cross-checked against the slice power object of
// f . proj_P : H x P -> Q; disagreement raises logic_error.
Subpresheaf build_t1(const ElementaryScene& sc, const Subpresheaf& w1,
                     std::size_t cap = kDefaultSubCap);

// T2 = forall_tau(W2): relations contained in the graph of h.
Subpresheaf build_t2(const ElementaryScene& sc, const Subpresheaf& w2);

// T1 & T2 in one step: the slice power object of f.h : H -> Q pushed
// along 1_Q x (direct image of the graph inclusion H -> H x P).
Subpresheaf t12_via_relative_power(const ElementaryScene& sc,
                                   std::size_t cap = kDefaultSubCap);

struct ElementaryDP {
  ElementaryScene scene;
  NatTrans phi;
  Subpresheaf s_sub;      // S
  Subpresheaf w1, w2;     // of Q x mem
  Subpresheaf t1, t2;     // of Q x P(H x P)
  Subpresheaf forall_s;   // of Q x P(H x P)
  Subpresheaf carrier_sub;  // forall_s & t1 & t2
  Presheaf carrier;
  NatTrans structural;  // carrier -> Q
};

ElementaryDP dependent_product_elementary(const NatTrans& f, const NatTrans& h,
                                          std::size_t cap = kDefaultSubCap);

// An arrow into the carrier, kept in both forms.
struct PairIntoCarrier {
  NatTrans beta;        // K -> P(H x P)
  NatTrans to_carrier;  // K -> carrier
};

// An arrow into [h] from a pulled-back object, with the pullback data.
struct SectionOverP {
  PullbackData fk;  // pullback of k along f; elements "(y,p)"
  NatTrans alpha;   // fk.object -> H, a morphism over P
};

// k : K -> Q and alpha a morphism [f*(k)] -> [h] over P (alpha's source
// must be pullback(k, f).object). Produces the transposed arrow into the
// carrier; beta classifies the graph of alpha.
PairIntoCarrier transpose_to_beta(const ElementaryDP& dp, const NatTrans& k,
                                  const NatTrans& alpha);

// m : K -> carrier. Recovers k = structural . m and the morphism
// [f*(k)] -> [h] whose graph is classified by the second component of m.
SectionOverP transpose_to_alpha(const ElementaryDP& dp, const NatTrans& m);

// Sweeps every stage element (q,w) of Q x P(H x P) (by the Yoneda
// lemma, every map from a representable) and confirms that membership
// in T1, T2 and forall(S) is equivalent to the corresponding pointwise
// condition on the relation classified by w.
struct FactorizationReport {
  std::size_t checked = 0;
  std::vector<std::string> mismatches;  // "stage/element/criterion"
  bool ok() const { return mismatches.empty(); }
};

FactorizationReport verify_factorization_clauses(const ElementaryDP& dp);

}  // namespace fintop
