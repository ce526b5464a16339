#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fintop/dp_elementary.hpp"
#include "fintop/dp_sites.hpp"
#include "fintop/fincat.hpp"
#include "fintop/powersub.hpp"
#include "fintop/presheaf.hpp"

namespace fintop {

// A set of arrows with codomain `on`, closed under precomposition.
struct Sieve {
  std::string on;
  std::set<std::string> arrows;
};

bool sieve_equal(const Sieve& a, const Sieve& b);
bool sieve_valid(const FinCategory& c, const Sieve& s);
// Witness rendering: "{a,b,c}" in set order.
std::string sieve_name(const Sieve& s);

Sieve maximal_sieve(const FinCategory& c, const std::string& x);
// Smallest sieve containing the given arrows (each with codomain x):
// everything that factors through one of them.
Sieve sieve_generated_by(const FinCategory& c, const std::string& x,
                         const std::vector<std::string>& generators);
// h*(s) on dom(h): arrows g with h∘g in s.
Sieve pullback_sieve(const FinCategory& c, const Sieve& s,
                     const std::string& h);
// Every sieve on x, in bitmask order over arrows_into(x). The subset
// count 2^k is checked against `cap` before enumeration starts.
std::vector<Sieve> enumerate_sieves(const FinCategory& c, const std::string& x,
                                    std::size_t cap = kDefaultSubCap);

// Covering sieves listed extensionally per object.
struct GrothTopology {
  FinCategory base;
  std::string name;
  std::map<std::string, std::vector<Sieve>> covers;

  bool covers_with(const std::string& x, const Sieve& s) const;
};

GrothTopology trivial_topology(const FinCategory& c);

// Closes a generating family under the three axioms by fixpoint
// iteration over all sieves of the base. Maximal sieves are added first.
GrothTopology saturate_topology(const FinCategory& c, std::string name,
                                const std::map<std::string, std::vector<Sieve>>& generators,
                                std::size_t cap = kDefaultSubCap);

// Axioms, exhaustively: every listed sieve well-formed, maximal sieves
// cover, stability under pullback, transitivity against all sieves.
ValidationReport validate_topology(const GrothTopology& t,
                                   std::size_t cap = kDefaultSubCap);

// The topology on the category of elements of p whose covers are the
// sieves whose projection to the base generates a cover of j.
GrothTopology induced_topology(const Presheaf& p, const GrothTopology& j,
                               std::size_t cap = kDefaultSubCap);

// Covering-lifting property of F : (j.base) -> (k.base): every k-cover
// of F(X) contains the image of some j-cover of X.
ValidationReport check_comorphism(const FinFunctor& F, const GrothTopology& j,
                                  const GrothTopology& k);

// A matching family for a sieve: one element of p at dom(g) per arrow g,
// compatible under restriction. Families render as "[g:e;...]" in arrow
// order; the empty family renders "[]".
using MatchingFamily = std::map<std::string, std::string>;
std::string family_render(const MatchingFamily& m);
std::vector<MatchingFamily> matching_families(const Presheaf& p, const Sieve& s);
// Elements of p at s.on restricting to m along every arrow of s.
std::vector<std::string> amalgamations(const Presheaf& p, const Sieve& s,
                                       const MatchingFamily& m);

// Unique-amalgamation condition for every cover of every object.
ValidationReport is_sheaf(const Presheaf& p, const GrothTopology& j);

// One application of the plus construction: classes of pairs (cover,
// matching family) under agreement on a common covering refinement.
// Class names are the lexicographically least member rendering.
struct PlusConstruction {
  Presheaf plus;
  NatTrans unit;  // p -> plus
  // object -> member rendering -> class name, over all enumerated pairs
  std::map<std::string, std::map<std::string, std::string>> class_of;
  // object -> class name -> representative family (the least member)
  std::map<std::string, std::map<std::string, MatchingFamily>> rep;
};
PlusConstruction plus_construction(const Presheaf& p, const GrothTopology& j);

// Sheafification. A presheaf that already satisfies is_sheaf is returned
// unchanged with the identity unit; otherwise the plus construction is
// applied twice and the result renamed "a(<name>)".
struct Sheafification {
  Presheaf sheaf;
  NatTrans unit;  // p -> sheaf
  bool already_sheaf = false;
  std::vector<PlusConstruction> stages;  // empty when already_sheaf
};
Sheafification sheafify(const Presheaf& p, const GrothTopology& j);

// Unique factorization through the unit: for g : p -> T with T a sheaf
// for the same topology, the arrow sh.sheaf -> T with (result)∘unit = g.
NatTrans extend_along_unit(const Sheafification& sh, const NatTrans& g);

// Functorial action on arrows: a(g) : src.sheaf -> dst.sheaf.
NatTrans sheafify_map(const Sheafification& src, const Sheafification& dst,
                      const NatTrans& g);

// Direct image of the slice inclusion: pulls w : W -> a(P) back along
// the unit of ap, giving a slice over P. Identity when the unit is.
SliceObject slice_inclusion_direct_image(const Sheafification& ap,
                                         const NatTrans& w);

enum class SheafDpBackend { kan, elementary };

struct SheafDP {
  Sheafification ap;        // of f's source
  Sheafification aq;        // of f's target
  SliceObject included;     // over f's source
  SliceObject presheaf_dp;  // over f's target
  Sheafification atotal;    // of presheaf_dp.total
  SliceObject total;        // over aq.sheaf
};

// Sheaf-level dependent product along f : P -> Q, applied to a sheaf
// slice object h : W -> a(P): include into presheaves, take the
// presheaf-level product, sheafify the resulting arrow over a(Q).
SheafDP dependent_product_sheaf(const NatTrans& f, const NatTrans& h,
                                const GrothTopology& j,
                                SheafDpBackend backend = SheafDpBackend::kan,
                                std::size_t cap = kDefaultSubCap);

struct SquareReport {
  std::string status;  // "pass" | "fail" | "precondition_unmet"
  std::vector<std::string> notes;
  bool ok() const { return status == "pass"; }
};

// For f : P -> Q and h : H -> P with P, Q, H all j-sheaves: the
// presheaf-level dependent product carrier is itself a j-sheaf and the
// sheaf-level composite returns exactly it. Non-sheaf inputs give
// status "precondition_unmet".
SquareReport subtopos_square_check(const NatTrans& f, const NatTrans& h,
                                   const GrothTopology& j,
                                   SheafDpBackend backend = SheafDpBackend::kan,
                                   std::size_t cap = kDefaultSubCap);

}  // namespace fintop
