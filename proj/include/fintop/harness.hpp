#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fintop/dp_elementary.hpp"
#include "fintop/dp_sites.hpp"
#include "fintop/serialize.hpp"
#include "fintop/sheaves.hpp"

namespace fintop {

// Classifying map of an element e of q(x): the representable at x into
// q, sending g : w -> x to q(g)(e).
NatTrans classify_element(const Presheaf& q, const std::string& x,
                          const std::string& e);

// Base change f*[k]: the pullback of k's structural map against f, with
// elements "(y,p)" and the second projection as structural map.
SliceObject pullback_functor(const NatTrans& f, const SliceObject& k);

// Induced arrow f*[from] -> f*[to] of a slice arrow m over f's target.
NatTrans pullback_functor_map(const NatTrans& f, const SliceObject& from,
                              const SliceObject& to, const NatTrans& m);

// All arrows a -> b commuting with the structural maps, in enumeration
// order.
std::vector<NatTrans> slice_homs(const SliceObject& a, const SliceObject& b);

// First isomorphism a -> b over the shared codomain, if one exists.
std::optional<NatTrans> iso_in_slice(const SliceObject& a,
                                     const SliceObject& b);

// Probe objects over q: every representable sliced by an element, plus
// the pairwise fibered products, plus every slice arrow between them.
struct TestFamily {
  struct Arrow {
    std::size_t from = 0;
    std::size_t to = 0;
    NatTrans m;
  };
  std::vector<std::pair<std::string, SliceObject>> objects;
  std::vector<Arrow> arrows;
};

TestFamily default_test_family(const Presheaf& q);

struct AdjunctionRecord {
  std::string k_id;
  std::size_t hom_over_p = 0;  // |Hom(f*[k], [h])| over f's source
  std::size_t hom_over_q = 0;  // |Hom([k], candidate)| over f's target
  bool bijection_ok = false;
  bool naturality_ok = false;
};

struct AdjunctionReport {
  std::vector<AdjunctionRecord> records;
  std::vector<std::string> notes;
  bool pass = false;
};

// The universal property, checked hom-set by hom-set over the test
// family: both sides counted independently, the bijection realized by
// the transpose pair and verified one-to-one, naturality checked
// against every family arrow.
AdjunctionReport verify_adjunction(const NatTrans& f, const NatTrans& h,
                                   const SliceObject& candidate,
                                   const TestFamily& family,
                                   std::size_t cap = kDefaultSubCap);

struct CheckLine {
  bool ok = true;
  std::string text;
};

struct CheckRun {
  std::vector<CheckLine> lines;
  bool pass() const {
    for (const auto& l : lines)
      if (!l.ok) return false;
    return true;
  }
};

// Fixture-level drivers shared by the command-line tool and the
// acceptance gate. Each returns one deterministic line per check.
CheckRun run_adjunction_checks(const Fixture& fx,
                               std::size_t cap = kDefaultSubCap);
CheckRun run_equivalence_checks(const Fixture& fx, bool all_methods,
                                std::size_t cap = kDefaultSubCap);
CheckRun run_factorization_checks(const Fixture& fx,
                                  std::size_t cap = kDefaultSubCap);
CheckRun run_forall_checks(const Fixture& fx,
                           std::size_t cap = kDefaultSubCap);
CheckRun run_sheaf_checks(const Fixture& fx,
                          std::size_t cap = kDefaultSubCap);

}  // namespace fintop
