#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fintop {

struct Violation {
  std::string law;                   // short law tag, e.g. "identity-left"
  std::vector<std::string> witness;  // ids witnessing the failure
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  // First violation formatted, or "pass".
  std::string summary() const;
};

struct MorphismDecl {
  std::string id;
  std::string dom;
  std::string cod;
};

/// A finite category: all data stored extensionally. Objects and morphisms
/// keep their declared order; every downstream enumeration follows it, so
/// identical inputs give identical outputs.
struct FinCategory {
  std::string name;
  std::vector<std::string> objects;
  std::vector<MorphismDecl> morphisms;        // identities included
  std::map<std::string, std::string> identity;  // object -> identity morphism id
  // (g, f) -> g∘f, defined exactly when cod(f) = dom(g)
  std::map<std::pair<std::string, std::string>, std::string> compose_table;

  bool has_object(const std::string& x) const;
  bool has_morphism(const std::string& m) const;
  const MorphismDecl& mor(const std::string& id) const;
  bool is_identity(const std::string& m) const;
  /// Lookup g∘f; throws ShapeError on a non-composable pair.
  std::string compose(const std::string& g, const std::string& f) const;
  std::size_t object_index(const std::string& x) const;
  std::size_t morphism_index(const std::string& m) const;
  /// Morphisms with the given codomain, in declared order.
  std::vector<std::string> arrows_into(const std::string& x) const;
  std::vector<std::string> arrows_from(const std::string& x) const;
};

bool same_category(const FinCategory& a, const FinCategory& b);

/// Convenience builder: fills in identities ("id_<object>") and the
/// composites forced by the identity laws; remaining composites come from
/// `composites` as (g, f) -> gf.
FinCategory make_category(
    std::string name, std::vector<std::string> objects,
    std::vector<MorphismDecl> non_identity_morphisms,
    const std::map<std::pair<std::string, std::string>, std::string>& composites);

/// Checks identity laws, associativity, and that the composition table is
/// total on exactly the composable pairs. Scans everything; never stops at
/// the first failure.
ValidationReport validate_category(const FinCategory& c);

/// Dom/cod swapped, composition transposed. An involution on the nose.
FinCategory opposite(const FinCategory& c);

struct FinFunctor {
  FinCategory source;
  FinCategory target;
  std::map<std::string, std::string> obj_map;
  std::map<std::string, std::string> mor_map;

  const std::string& on_object(const std::string& x) const;
  const std::string& on_morphism(const std::string& m) const;
};

/// Exhaustive functoriality check (dom, cod, identities, composition).
ValidationReport validate_functor(const FinFunctor& F);

FinFunctor identity_functor(const FinCategory& c);
FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f);
/// The same tables read as a functor between the opposite categories.
FinFunctor opposite_functor(const FinFunctor& f);

/// The comma category d ↓ F for F : A -> B and d an object of B.
/// Nodes are pairs (g : d -> F(A), A), with ids "(g,A)"; an edge
/// (γ,(g,A)) : (g,A) -> (g',A') exists for each γ : A -> A' in A with
/// F(γ)∘g = g'. `projection` sends (g,A) to A and (γ,n) to γ.
struct CommaCategory {
  FinCategory base;
  FinFunctor projection;  // base -> source of F
  // node id -> (arrow of F's target, object of F's source)
  std::map<std::string, std::pair<std::string, std::string>> labels;
};

CommaCategory build_comma(const std::string& d, const FinFunctor& F);

/// Canonical pair encoding used for generated ids: "(a,b)".
std::string pair_id(const std::string& a, const std::string& b);

}  // namespace fintop
