#include "fintop/dp_elementary.hpp"

#include <set>
#include <stdexcept>

#include "fintop/errors.hpp"

namespace fintop {

ElementaryScene elementary_scene(const NatTrans& f, const NatTrans& h,
                                 std::size_t cap) {
  if (!presheaf_equal(f.source, h.target))
    throw ShapeError("elementary_scene: h must land in the domain of f");
  ElementaryScene sc;
  sc.f = f;
  sc.h = h;
  sc.hp = product(h.source, f.source);
  sc.php = power_object(sc.hp.object, cap);
  sc.ph = power_object(h.source, cap);
  sc.p_php = product(f.source, sc.php.carrier);
  sc.q_php = product(f.target, sc.php.carrier);
  sc.mem = sub_to_presheaf(sc.php.membership);
  sc.q_mem = product(f.target, sc.mem);
  return sc;
}

NatTrans build_phi(const ElementaryScene& sc) {
  const Presheaf& H = sc.h.source;
  // Membership lives on (H x P) x P(H x P); regroup its pairs as
  // (x, (p, w)) inside H x (P x P(H x P)).
  ProductData amb = product(H, sc.p_php.object);
  Subpresheaf n;
  n.ambient = amb.object;
  for (const auto& [c, elems] : amb.object.sets) {
    auto& sub = n.subsets[c];
    for (const auto& e : elems) {
      auto [x, pw] = split_pair(e);
      auto [p, w] = split_pair(pw);
      if (sc.php.membership.contains(c, pair_id(pair_id(x, p), w))) sub.push_back(e);
    }
  }
  return classify(n, sc.ph, sc.p_php.object);
}

Subpresheaf build_s(const ElementaryScene& sc, const NatTrans& phi) {
  NatTrans single = singleton_map(sc.h.source, sc.ph);
  return preimage_subpresheaf(phi, image_subpresheaf(single));
}

NatTrans build_tau(const ElementaryScene& sc) {
  NatTrans t;
  t.source = sc.q_mem.object;
  t.target = sc.q_php.object;
  for (const auto& [c, elems] : sc.q_mem.object.sets) {
    auto& comp = t.components[c];
    for (const auto& e : elems) {
      auto [q, me] = split_pair(e);
      auto [xp, w] = split_pair(me);
      comp[e] = pair_id(q, w);
    }
  }
  return t;
}

namespace {

// Shared part of the W1/W2 squares: both pull a mono into
// Q x (H x P) x P(H x P) back along 1_Q x (membership inclusion).
Subpresheaf pull_to_q_mem(const ElementaryScene& sc, const ProductData& big,
                          const NatTrans& side) {
  NatTrans incl;
  incl.source = sc.q_mem.object;
  incl.target = big.object;
  for (const auto& [c, elems] : sc.q_mem.object.sets) {
    auto& comp = incl.components[c];
    for (const auto& e : elems) comp[e] = e;
  }
  return preimage_subpresheaf(incl, image_subpresheaf(side));
}

}  // namespace

Subpresheaf build_w1(const ElementaryScene& sc) {
  ProductData big = product(sc.f.target, sc.php.membership_ambient.object);

  // <f . proj_P, 1> : (H x P) x P(H x P) -> Q x (H x P) x P(H x P).
  NatTrans side;
  side.source = sc.php.membership_ambient.object;
  side.target = big.object;
  for (const auto& [c, elems] : side.source.sets) {
    auto& comp = side.components[c];
    for (const auto& e : elems) {
      auto [xp, w] = split_pair(e);
      auto [x, p] = split_pair(xp);
      comp[e] = pair_id(sc.f.at(c, p), e);
    }
  }
  Subpresheaf from_square = pull_to_q_mem(sc, big, side);

  Subpresheaf pointwise;
  pointwise.ambient = sc.q_mem.object;
  for (const auto& [c, elems] : sc.q_mem.object.sets) {
    auto& sub = pointwise.subsets[c];
    for (const auto& e : elems) {
      auto [q, me] = split_pair(e);
      auto [xp, w] = split_pair(me);
      auto [x, p] = split_pair(xp);
      if (sc.f.at(c, p) == q) sub.push_back(e);
    }
  }
  if (!sub_equal(from_square, pointwise))
    throw std::logic_error("build_w1: square and pointwise conditions disagree");
  return from_square;
}

Subpresheaf build_w2(const ElementaryScene& sc) {
  ProductData big = product(sc.f.target, sc.php.membership_ambient.object);

  // 1_Q x <1_H, h> x 1 : Q x H x P(H x P) -> Q x (H x P) x P(H x P).
  ProductData qh_php = product(sc.f.target, product(sc.h.source, sc.php.carrier).object);
  NatTrans side;
  side.source = qh_php.object;
  side.target = big.object;
  for (const auto& [c, elems] : side.source.sets) {
    auto& comp = side.components[c];
    for (const auto& e : elems) {
      auto [q, xw] = split_pair(e);
      auto [x, w] = split_pair(xw);
      comp[e] = pair_id(q, pair_id(pair_id(x, sc.h.at(c, x)), w));
    }
  }
  Subpresheaf from_square = pull_to_q_mem(sc, big, side);

  Subpresheaf pointwise;
  pointwise.ambient = sc.q_mem.object;
  for (const auto& [c, elems] : sc.q_mem.object.sets) {
    auto& sub = pointwise.subsets[c];
    for (const auto& e : elems) {
      auto [q, me] = split_pair(e);
      auto [xp, w] = split_pair(me);
      auto [x, p] = split_pair(xp);
      if (sc.h.at(c, x) == p) sub.push_back(e);
    }
  }
  if (!sub_equal(from_square, pointwise))
    throw std::logic_error("build_w2: square and pointwise conditions disagree");
  return from_square;
}

Subpresheaf build_t1(const ElementaryScene& sc, const Subpresheaf& w1,
                     std::size_t cap) {
  Subpresheaf t1 = forall_direct(build_tau(sc), w1);
  NatTrans k = compose_nat(sc.f, sc.hp.proj2);  // f . proj_P : H x P -> Q
  Subpresheaf slice_power = relative_power(k, sc.php, cap);
  if (!sub_equal(t1, slice_power))
    throw std::logic_error("build_t1: quantification and slice power object disagree");
  return t1;
}

Subpresheaf build_t2(const ElementaryScene& sc, const Subpresheaf& w2) {
  return forall_direct(build_tau(sc), w2);
}

Subpresheaf t12_via_relative_power(const ElementaryScene& sc, std::size_t cap) {
  NatTrans fh = compose_nat(sc.f, sc.h);  // H -> Q
  Subpresheaf rp = relative_power(fh, sc.ph, cap);

  // 1_Q x (direct image along the graph <1, h> : H -> H x P).
  NatTrans graph = pairing(identity_nat(sc.h.source), sc.h, sc.hp);
  NatTrans push = exists_along(graph, sc.ph, sc.php);
  ProductData q_ph = product(sc.f.target, sc.ph.carrier);
  NatTrans on_pairs = product_map(identity_nat(sc.f.target), push, q_ph, sc.q_php);
  return image_subpresheaf(compose_nat(on_pairs, sub_inclusion(rp)));
}

ElementaryDP dependent_product_elementary(const NatTrans& f, const NatTrans& h,
                                          std::size_t cap) {
  ElementaryDP dp;
  dp.scene = elementary_scene(f, h, cap);
  const ElementaryScene& sc = dp.scene;

  dp.phi = build_phi(sc);
  dp.s_sub = build_s(sc, dp.phi);
  dp.w1 = build_w1(sc);
  dp.w2 = build_w2(sc);
  dp.t1 = build_t1(sc, dp.w1, cap);
  dp.t2 = build_t2(sc, dp.w2);

  NatTrans f_one = product_map(sc.f, identity_nat(sc.php.carrier), sc.p_php, sc.q_php);
  dp.forall_s = forall_direct(f_one, dp.s_sub);

  dp.carrier_sub = sub_intersection(sub_intersection(dp.forall_s, dp.t1), dp.t2);
  dp.carrier = sub_to_presheaf(dp.carrier_sub);
  dp.carrier.name = "dp(" + h.source.name + "->" + f.source.name + "->" +
                    f.target.name + ")";
  dp.structural = compose_nat(sc.q_php.proj1, sub_inclusion(dp.carrier_sub));
  dp.structural.source = dp.carrier;
  return dp;
}

PairIntoCarrier transpose_to_beta(const ElementaryDP& dp, const NatTrans& k,
                                  const NatTrans& alpha) {
  const ElementaryScene& sc = dp.scene;
  if (!presheaf_equal(k.target, sc.f.target))
    throw ShapeError("transpose_to_beta: k must land in the base of the product");
  PullbackData fk = pullback(k, sc.f);
  if (!presheaf_equal(alpha.source, fk.object))
    throw ShapeError("transpose_to_beta: alpha must start from the pullback of k");
  if (!presheaf_equal(alpha.target, sc.h.source))
    throw ShapeError("transpose_to_beta: alpha must land in the total object");
  // Slice condition over P: h . alpha = projection to P.
  if (!nat_equal(compose_nat(sc.h, alpha), fk.proj2))
    throw PreconditionError("transpose_to_beta: alpha is not a morphism over P");

  // Graph of alpha inside (H x P) x K.
  ProductData amb = product(sc.hp.object, k.source);
  Subpresheaf graph;
  graph.ambient = amb.object;
  for (const auto& [c, elems] : amb.object.sets) {
    auto& sub = graph.subsets[c];
    for (const auto& e : elems) {
      auto [xp, y] = split_pair(e);
      auto [x, p] = split_pair(xp);
      const std::string cand = pair_id(y, p);
      if (fk.object.has_elem(c, cand) && alpha.at(c, cand) == x) sub.push_back(e);
    }
  }

  PairIntoCarrier out;
  out.beta = classify(graph, sc.php, k.source);
  NatTrans paired = pairing(k, out.beta, sc.q_php);
  out.to_carrier.source = k.source;
  out.to_carrier.target = dp.carrier;
  for (const auto& [c, elems] : k.source.sets) {
    auto& comp = out.to_carrier.components[c];
    for (const auto& y : elems) {
      const std::string& v = paired.at(c, y);
      if (!dp.carrier_sub.contains(c, v))
        throw std::logic_error("transpose_to_beta: transpose misses the carrier");
      comp[y] = v;
    }
  }
  return out;
}

SectionOverP transpose_to_alpha(const ElementaryDP& dp, const NatTrans& m) {
  const ElementaryScene& sc = dp.scene;
  if (!presheaf_equal(m.target, dp.carrier))
    throw ShapeError("transpose_to_alpha: arrow must land in the carrier");
  NatTrans k = compose_nat(dp.structural, m);
  NatTrans beta = compose_nat(compose_nat(sc.q_php.proj2, sub_inclusion(dp.carrier_sub)), m);

  Subpresheaf rel = classified(beta, sc.php);  // of (H x P) x K
  SectionOverP out;
  out.fk = pullback(k, sc.f);
  out.alpha.source = out.fk.object;
  out.alpha.target = sc.h.source;
  for (const auto& [c, elems] : out.fk.object.sets) {
    auto& comp = out.alpha.components[c];
    for (const auto& e : elems) {
      auto [y, p] = split_pair(e);
      std::string found;
      std::size_t hits = 0;
      for (const auto& x : sc.h.source.at(c))
        if (rel.contains(c, pair_id(pair_id(x, p), y))) {
          found = x;
          ++hits;
        }
      if (hits != 1)
        throw std::logic_error("transpose_to_alpha: relation is not functional");
      comp[e] = found;
    }
  }
  if (!nat_equal(compose_nat(sc.h, out.alpha), out.fk.proj2))
    throw std::logic_error("transpose_to_alpha: section is not a morphism over P");
  return out;
}

FactorizationReport verify_factorization_clauses(const ElementaryDP& dp) {
  const ElementaryScene& sc = dp.scene;
  const Presheaf& Q = sc.f.target;
  const Presheaf& P = sc.f.source;
  const Presheaf& H = sc.h.source;
  FactorizationReport rep;

  for (const auto& c : Q.base.objects) {
    for (const auto& e : sc.q_php.object.at(c)) {
      auto [q, w] = split_pair(e);
      const Subpresheaf& rel = sc.php.decode(c, w);
      // rel <= y(c) x (H x P): stage c' holds pairs (u : c' -> c, (x,p))
      // meaning (x,p) lies in the restriction of w along u.
      bool cond1 = true, cond2 = true, cond3 = true;
      for (const auto& [cc, elems] : rel.subsets) {
        for (const auto& me : elems) {
          auto [u, xp] = split_pair(me);
          auto [x, p] = split_pair(xp);
          if (sc.f.at(cc, p) != Q.act(u, q)) cond1 = false;
          if (sc.h.at(cc, x) != p) cond2 = false;
        }
      }
      for (const auto& cc : Q.base.objects) {
        for (const auto& u : Q.base.morphisms) {
          if (u.dom != cc || u.cod != c) continue;
          const std::string& qu = Q.act(u.id, q);
          for (const auto& p : P.at(cc)) {
            if (sc.f.at(cc, p) != qu) continue;
            std::size_t hits = 0;
            for (const auto& x : H.at(cc))
              if (rel.contains(cc, pair_id(u.id, pair_id(x, p)))) ++hits;
            if (hits != 1) cond3 = false;
          }
        }
      }

      ++rep.checked;
      if (dp.t1.contains(c, e) != cond1)
        rep.mismatches.push_back(c + "/" + e + "/fiber");
      if (dp.t2.contains(c, e) != cond2)
        rep.mismatches.push_back(c + "/" + e + "/graph");
      if (dp.forall_s.contains(c, e) != cond3)
        rep.mismatches.push_back(c + "/" + e + "/functionality");
    }
  }
  return rep;
}

}  // namespace fintop
