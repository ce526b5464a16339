#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fintop/presheaf.hpp"

namespace fintop {

constexpr std::size_t kDefaultSubCap = 4096;

// Restriction-closed family of subsets of a presheaf, stored in ambient
// element order. The canonical representative of a subobject.
struct Subpresheaf {
  Presheaf ambient;
  std::map<std::string, std::vector<std::string>> subsets;

  bool contains(const std::string& obj, const std::string& elem) const;
  std::size_t total_size() const;
};

ValidationReport validate_subpresheaf(const Subpresheaf& s);
Subpresheaf full_subpresheaf(const Presheaf& p);
Subpresheaf empty_subpresheaf(const Presheaf& p);
bool sub_equal(const Subpresheaf& a, const Subpresheaf& b);
bool sub_leq(const Subpresheaf& a, const Subpresheaf& b);
Subpresheaf sub_intersection(const Subpresheaf& a, const Subpresheaf& b);
Subpresheaf sub_union(const Subpresheaf& a, const Subpresheaf& b);

// Smallest subpresheaf containing the generators.
Subpresheaf restriction_closure(
    const Presheaf& ambient,
    const std::map<std::string, std::vector<std::string>>& generators);

Presheaf sub_to_presheaf(const Subpresheaf& s);
NatTrans sub_inclusion(const Subpresheaf& s);
Subpresheaf image_subpresheaf(const NatTrans& f);
Subpresheaf preimage_subpresheaf(const NatTrans& f, const Subpresheaf& b);

// Canonical name: nonempty stages only, "{X:a,b;Y:c}", stages and
// elements in ambient order.
std::string sub_name(const Subpresheaf& s);

// All restriction-closed families, ordered lexicographically by their
// characteristic bit vector (empty first, full last). Throws
// ResourceCapError when the count would exceed `cap` (0 = unbounded).
std::vector<Subpresheaf> enumerate_subpresheaves(const Presheaf& p,
                                                 std::size_t cap = kDefaultSubCap);

struct PowerObject {
  Presheaf of;       // Z
  Presheaf carrier;  // P(Z)(X) = Sub(y(X) x Z), elements named by sub_name
  std::map<std::string, Presheaf> yo;
  std::map<std::string, ProductData> stage;  // y(X) x Z
  std::map<std::string, std::map<std::string, Subpresheaf>> table;
  ProductData membership_ambient;  // Z x carrier
  Subpresheaf membership;          // pairs (z, R) with (id, z) in R

  const Subpresheaf& decode(const std::string& obj, const std::string& elem) const;
  const std::string& encode(const std::string& obj, const Subpresheaf& s) const;
};

PowerObject power_object(const Presheaf& z, std::size_t cap = kDefaultSubCap);

// n a subpresheaf of the literal product Z x Y; result classifies it:
// classified(classify(n)) = n.
NatTrans classify(const Subpresheaf& n, const PowerObject& pz, const Presheaf& y);
Subpresheaf classified(const NatTrans& np, const PowerObject& pz);

NatTrans singleton_map(const Presheaf& x, const PowerObject& px);

// For omega: A -> B, the contravariant P(omega): P(B) -> P(A).
NatTrans inverse_image(const NatTrans& omega, const PowerObject& pb,
                       const PowerObject& pa);

// For f: Y -> X, the covariant image map P(Y) -> P(X).
NatTrans exists_along(const NatTrans& f, const PowerObject& py,
                      const PowerObject& px);

// Right adjoint to pullback along g on subobject lattices, computed
// pointwise; a ambient must be g's source, result sits in g's target.
Subpresheaf forall_direct(const NatTrans& g, const Subpresheaf& a);

// Same value through power objects: pullback of the image of
// exists_along(inclusion) along inverse_image(f) . singleton_map.
Subpresheaf forall_via_power(const NatTrans& f, const Subpresheaf& a,
                             std::size_t cap = kDefaultSubCap);

// Reference implementation by sweeping Sub(target); exponential, for
// cross-checks on small inputs only.
Subpresheaf forall_by_sweep(const NatTrans& g, const Subpresheaf& a,
                            std::size_t cap = kDefaultSubCap);

// Carrier of the power object of [k: K -> Q] in the slice over Q:
// pairs (q, S) with S contained in the fiber of k over q, as a
// subpresheaf of Q x P(K).
Subpresheaf relative_power(const NatTrans& k, const PowerObject& pk,
                           std::size_t cap = kDefaultSubCap);

}  // namespace fintop
