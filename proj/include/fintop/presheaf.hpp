#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fintop/fincat.hpp"

namespace fintop {

// Contravariant functor base^op -> FinSet. For u: X -> Y the table
// action[u] maps elements of sets[Y] to elements of sets[X]. Identity
// actions are stored explicitly.
struct Presheaf {
  FinCategory base;
  std::string name;
  std::map<std::string, std::vector<std::string>> sets;
  std::map<std::string, std::map<std::string, std::string>> action;

  const std::vector<std::string>& at(const std::string& obj) const;
  const std::string& act(const std::string& mor, const std::string& elem) const;
  bool has_elem(const std::string& obj, const std::string& elem) const;
  std::size_t elem_index(const std::string& obj, const std::string& elem) const;
  std::size_t total_size() const;
};

struct NatTrans {
  Presheaf source;
  Presheaf target;
  std::map<std::string, std::map<std::string, std::string>> components;

  const std::string& at(const std::string& obj, const std::string& elem) const;
};

// Builder: ensures a set entry per object, fills identity actions and
// empty tables; `action` supplies the non-identity values.
Presheaf make_presheaf(
    const FinCategory& base, std::string name,
    std::map<std::string, std::vector<std::string>> sets,
    std::map<std::string, std::map<std::string, std::string>> action = {});

ValidationReport validate_presheaf(const Presheaf& p);
ValidationReport validate_nat_trans(const NatTrans& t);

bool presheaf_equal(const Presheaf& a, const Presheaf& b);
bool nat_equal(const NatTrans& a, const NatTrans& b);

Presheaf yoneda(const FinCategory& c, const std::string& x);
NatTrans yoneda_map(const FinCategory& c, const std::string& u);
Presheaf terminal_presheaf(const FinCategory& c);
Presheaf empty_presheaf(const FinCategory& c);

// "(a,b)" and its inverse; parsing respects nested (), [], {}.
std::pair<std::string, std::string> split_pair(const std::string& s);

struct ProductData {
  Presheaf object;
  NatTrans proj1;
  NatTrans proj2;
};
ProductData product(const Presheaf& a, const Presheaf& b);
NatTrans pairing(const NatTrans& f, const NatTrans& g, const ProductData& prod);
NatTrans product_map(const NatTrans& f, const NatTrans& g,
                     const ProductData& dom, const ProductData& cod);

struct PullbackData {
  Presheaf object;  // elements "(a,b)" with f(a) = g(b)
  NatTrans proj1;
  NatTrans proj2;
};
PullbackData pullback(const NatTrans& f, const NatTrans& g);

struct EqualizerData {
  Presheaf object;
  NatTrans include;
};
EqualizerData equalizer(const NatTrans& f, const NatTrans& g);

NatTrans compose_nat(const NatTrans& g, const NatTrans& f);
NatTrans identity_nat(const Presheaf& p);
NatTrans to_terminal(const Presheaf& p, const Presheaf& t);
bool is_mono(const NatTrans& f);
bool is_epi(const NatTrans& f);
bool is_iso(const NatTrans& f);
NatTrans inverse(const NatTrans& f);

// Covariant diagram of finite sets over a shape category:
// action[e] maps sets[dom e] to sets[cod e].
struct SetDiagram {
  FinCategory shape;
  std::map<std::string, std::vector<std::string>> sets;
  std::map<std::string, std::map<std::string, std::string>> action;
};
// Compatible families, one element per node, in lexicographic choice
// order (nodes in shape declared order).
std::vector<std::map<std::string, std::string>> limit_of_sets(const SetDiagram& d);

// Category of elements: nodes "(X,x)", non-identity morphisms
// "(g,(X,x))" for g: Y -> X with P(g)(x) = y, pointing (Y,y) -> (X,x).
struct ElementsCategory {
  FinCategory cat;
  FinFunctor proj;  // to P's base
  std::map<std::string, std::pair<std::string, std::string>> labels;

  const std::string& node(const std::string& obj, const std::string& elem) const;
};
ElementsCategory elements_category(const Presheaf& p);
FinFunctor elements_functor(const NatTrans& f);

using TransFilter = std::function<bool(
    const std::string& obj, const std::string& elem, const std::string& image)>;
// All natural transformations source -> target in deterministic
// (lexicographic) order; `allow` prunes per-element image choices;
// `limit` of 0 means unbounded.
std::vector<NatTrans> enumerate_nat_trans(const Presheaf& p, const Presheaf& q,
                                          const TransFilter& allow = {},
                                          std::size_t limit = 0);

}  // namespace fintop
