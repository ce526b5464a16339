#include "fintop/sheaves.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "fintop/errors.hpp"

namespace fintop {

bool sieve_equal(const Sieve& a, const Sieve& b) {
  return a.on == b.on && a.arrows == b.arrows;
}

bool sieve_valid(const FinCategory& c, const Sieve& s) {
  if (!c.has_object(s.on)) return false;
  for (const auto& a : s.arrows) {
    if (!c.has_morphism(a) || c.mor(a).cod != s.on) return false;
    for (const auto& g : c.morphisms)
      if (g.cod == c.mor(a).dom && !s.arrows.count(c.compose(a, g.id)))
        return false;
  }
  return true;
}

std::string sieve_name(const Sieve& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& a : s.arrows) {
    if (!first) out += ",";
    first = false;
    out += a;
  }
  return out + "}";
}

Sieve maximal_sieve(const FinCategory& c, const std::string& x) {
  Sieve s{x, {}};
  for (const auto& a : c.arrows_into(x)) s.arrows.insert(a);
  return s;
}

Sieve sieve_generated_by(const FinCategory& c, const std::string& x,
                         const std::vector<std::string>& generators) {
  Sieve s{x, {}};
  for (const auto& g : generators) {
    if (!c.has_morphism(g) || c.mor(g).cod != x)
      throw ShapeError("sieve_generated_by: '" + g + "' does not end at '" + x +
                       "'");
    for (const auto& m : c.morphisms)
      if (m.cod == c.mor(g).dom) s.arrows.insert(c.compose(g, m.id));
  }
  return s;
}

Sieve pullback_sieve(const FinCategory& c, const Sieve& s,
                     const std::string& h) {
  const auto& hm = c.mor(h);
  if (hm.cod != s.on)
    throw ShapeError("pullback_sieve: arrow does not end at the sieve's object");
  Sieve out{hm.dom, {}};
  for (const auto& g : c.arrows_into(hm.dom))
    if (s.arrows.count(c.compose(h, g))) out.arrows.insert(g);
  return out;
}

std::vector<Sieve> enumerate_sieves(const FinCategory& c, const std::string& x,
                                    std::size_t cap) {
  auto arrows = c.arrows_into(x);
  std::size_t k = arrows.size();
  if (k >= 63 || (std::size_t{1} << k) > cap)
    throw ResourceCapError("sieve count at '" + x + "' exceeds cap", x);
  std::vector<Sieve> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    Sieve s{x, {}};
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) s.arrows.insert(arrows[i]);
    if (sieve_valid(c, s)) out.push_back(std::move(s));
  }
  return out;
}

bool GrothTopology::covers_with(const std::string& x, const Sieve& s) const {
  auto it = covers.find(x);
  if (it == covers.end()) return false;
  for (const auto& t : it->second)
    if (sieve_equal(t, s)) return true;
  return false;
}

GrothTopology trivial_topology(const FinCategory& c) {
  GrothTopology j{c, "trivial(" + c.name + ")", {}};
  for (const auto& x : c.objects) j.covers[x] = {maximal_sieve(c, x)};
  return j;
}

GrothTopology saturate_topology(
    const FinCategory& c, std::string name,
    const std::map<std::string, std::vector<Sieve>>& generators,
    std::size_t cap) {
  std::map<std::string, std::vector<Sieve>> pool;
  for (const auto& x : c.objects) pool[x] = enumerate_sieves(c, x, cap);
  // Covering sets as arrow sets, per object.
  std::map<std::string, std::set<std::set<std::string>>> cur;
  for (const auto& x : c.objects)
    cur[x].insert(maximal_sieve(c, x).arrows);
  for (const auto& [x, sieves] : generators) {
    if (!c.has_object(x))
      throw ShapeError("saturate_topology: unknown object '" + x + "'");
    for (const auto& s : sieves) {
      if (s.on != x || !sieve_valid(c, s))
        throw ShapeError("saturate_topology: generator at '" + x +
                         "' is not a sieve");
      cur[x].insert(s.arrows);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& x : c.objects) {
      std::vector<std::set<std::string>> snapshot(cur[x].begin(), cur[x].end());
      for (const auto& arrows : snapshot) {
        Sieve s{x, arrows};
        for (const auto& h : c.arrows_into(x)) {
          Sieve pb = pullback_sieve(c, s, h);
          if (cur[c.mor(h).dom].insert(pb.arrows).second) changed = true;
        }
      }
    }
    for (const auto& x : c.objects) {
      for (const auto& r : pool[x]) {
        if (cur[x].count(r.arrows)) continue;
        bool forced = false;
        for (const auto& arrows : cur[x]) {
          bool all = true;
          for (const auto& h : arrows)
            if (!cur[c.mor(h).dom].count(pullback_sieve(c, r, h).arrows)) {
              all = false;
              break;
            }
          if (all) {
            forced = true;
            break;
          }
        }
        if (forced) {
          cur[x].insert(r.arrows);
          changed = true;
        }
      }
    }
  }
  GrothTopology j{c, std::move(name), {}};
  for (const auto& x : c.objects) {
    auto& list = j.covers[x];
    for (const auto& r : pool[x])
      if (cur[x].count(r.arrows)) list.push_back(r);
  }
  return j;
}

ValidationReport validate_topology(const GrothTopology& t, std::size_t cap) {
  ValidationReport r;
  for (const auto& [x, sieves] : t.covers) {
    if (!t.base.has_object(x)) {
      r.violations.push_back({"unknown-object", {x}});
      continue;
    }
    for (const auto& s : sieves)
      if (s.on != x || !sieve_valid(t.base, s))
        r.violations.push_back({"sieve-shape", {x, sieve_name(s)}});
  }
  if (!r.ok()) return r;
  for (const auto& x : t.base.objects)
    if (!t.covers_with(x, maximal_sieve(t.base, x)))
      r.violations.push_back({"maximal", {x}});
  for (const auto& x : t.base.objects) {
    auto it = t.covers.find(x);
    if (it == t.covers.end()) continue;
    for (const auto& s : it->second)
      for (const auto& h : t.base.arrows_into(x)) {
        Sieve pb = pullback_sieve(t.base, s, h);
        if (!t.covers_with(t.base.mor(h).dom, pb))
          r.violations.push_back({"stability", {x, sieve_name(s), h}});
      }
  }
  for (const auto& x : t.base.objects) {
    auto it = t.covers.find(x);
    if (it == t.covers.end()) continue;
    for (const auto& candidate : enumerate_sieves(t.base, x, cap)) {
      if (t.covers_with(x, candidate)) continue;
      for (const auto& s : it->second) {
        bool all = true;
        for (const auto& h : s.arrows)
          if (!t.covers_with(t.base.mor(h).dom,
                             pullback_sieve(t.base, candidate, h))) {
            all = false;
            break;
          }
        if (all) {
          r.violations.push_back(
              {"transitivity", {x, sieve_name(s), sieve_name(candidate)}});
          break;
        }
      }
    }
  }
  return r;
}

GrothTopology induced_topology(const Presheaf& p, const GrothTopology& j,
                               std::size_t cap) {
  if (!same_category(p.base, j.base))
    throw ShapeError("induced_topology: presheaf and topology disagree on the base");
  ElementsCategory el = elements_category(p);
  GrothTopology out{el.cat, "induced(" + j.name + "," + p.name + ")", {}};
  for (const auto& n : el.cat.objects) {
    const std::string& x = el.labels.at(n).first;
    auto& list = out.covers[n];
    for (auto& s : enumerate_sieves(el.cat, n, cap)) {
      std::vector<std::string> image;
      for (const auto& a : s.arrows) image.push_back(el.proj.on_morphism(a));
      if (j.covers_with(x, sieve_generated_by(j.base, x, image)))
        list.push_back(std::move(s));
    }
  }
  return out;
}

ValidationReport check_comorphism(const FinFunctor& F, const GrothTopology& j,
                                  const GrothTopology& k) {
  if (!same_category(F.source, j.base) || !same_category(F.target, k.base))
    throw ShapeError("check_comorphism: functor does not connect the sites");
  ValidationReport r;
  static const std::vector<Sieve> none;
  for (const auto& x : F.source.objects) {
    auto kit = k.covers.find(F.on_object(x));
    const auto& targets = kit == k.covers.end() ? none : kit->second;
    auto jit = j.covers.find(x);
    const auto& candidates = jit == j.covers.end() ? none : jit->second;
    for (const auto& cover : targets) {
      bool lifted = false;
      for (const auto& s : candidates) {
        bool inside = true;
        for (const auto& a : s.arrows)
          if (!cover.arrows.count(F.on_morphism(a))) {
            inside = false;
            break;
          }
        if (inside) {
          lifted = true;
          break;
        }
      }
      if (!lifted)
        r.violations.push_back({"covering-lifting", {x, sieve_name(cover)}});
    }
  }
  return r;
}

std::string family_render(const MatchingFamily& m) {
  std::string out = "[";
  bool first = true;
  for (const auto& [a, e] : m) {
    if (!first) out += ";";
    first = false;
    out += a;
    out += ":";
    out += e;
  }
  return out + "]";
}

std::vector<MatchingFamily> matching_families(const Presheaf& p,
                                              const Sieve& s) {
  if (!sieve_valid(p.base, s))
    throw ShapeError("matching_families: not a sieve on '" + s.on + "'");
  std::vector<std::string> order(s.arrows.begin(), s.arrows.end());
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
  // One instance per (g in S, precomposable m): family[g∘m] = p(m)(family[g]),
  // checked as soon as both slots are filled.
  struct Instance {
    std::string g, via, gv;
  };
  std::vector<std::vector<Instance>> pending(order.size());
  for (const auto& g : order)
    for (const auto& m : p.base.morphisms) {
      if (m.cod != p.base.mor(g).dom) continue;
      std::string gv = p.base.compose(g, m.id);
      pending[std::max(pos.at(g), pos.at(gv))].push_back({g, m.id, gv});
    }
  std::vector<MatchingFamily> out;
  MatchingFamily cur;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == order.size()) {
      out.push_back(cur);
      return;
    }
    const std::string& g = order[i];
    for (const auto& v : p.at(p.base.mor(g).dom)) {
      cur[g] = v;
      bool ok = true;
      for (const auto& ins : pending[i])
        if (cur.at(ins.gv) != p.act(ins.via, cur.at(ins.g))) {
          ok = false;
          break;
        }
      if (ok) go(i + 1);
    }
    cur.erase(g);
  };
  go(0);
  return out;
}

std::vector<std::string> amalgamations(const Presheaf& p, const Sieve& s,
                                       const MatchingFamily& m) {
  std::vector<std::string> out;
  for (const auto& x : p.at(s.on)) {
    bool good = true;
    for (const auto& g : s.arrows)
      if (p.act(g, x) != m.at(g)) {
        good = false;
        break;
      }
    if (good) out.push_back(x);
  }
  return out;
}

ValidationReport is_sheaf(const Presheaf& p, const GrothTopology& j) {
  if (!same_category(p.base, j.base))
    throw ShapeError("is_sheaf: presheaf and topology disagree on the base");
  ValidationReport r;
  for (const auto& [x, sieves] : j.covers)
    for (const auto& s : sieves)
      for (const auto& m : matching_families(p, s)) {
        auto am = amalgamations(p, s, m);
        if (am.size() == 1) continue;
        r.violations.push_back(
            {am.empty() ? "gluing-existence" : "gluing-uniqueness",
             {x, sieve_name(s), family_render(m), std::to_string(am.size())}});
      }
  return r;
}

PlusConstruction plus_construction(const Presheaf& p, const GrothTopology& j) {
  if (!same_category(p.base, j.base))
    throw ShapeError("plus_construction: presheaf and topology disagree on the base");
  struct Member {
    const Sieve* s;
    MatchingFamily m;
    std::string render;
  };
  std::map<std::string, std::vector<Member>> members;
  for (const auto& x : p.base.objects) {
    if (!j.covers_with(x, maximal_sieve(p.base, x)))
      throw ShapeError("plus_construction: maximal sieve of '" + x +
                       "' is not listed as a cover");
    auto& v = members[x];
    for (const auto& s : j.covers.at(x))
      for (auto& m : matching_families(p, s)) {
        std::string render = family_render(m);
        v.push_back({&s, std::move(m), std::move(render)});
      }
  }

  PlusConstruction out;
  // object -> class name -> members, after the refinement grouping
  std::map<std::string, std::map<std::string, std::vector<const Member*>>>
      classes;
  std::map<std::string, std::vector<std::string>> sets;
  for (const auto& x : p.base.objects) {
    const auto& v = members.at(x);
    std::vector<std::size_t> parent(v.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    auto linked = [&](const Member& a, const Member& b) {
      for (const auto& ref : j.covers.at(x)) {
        bool usable = true;
        for (const auto& ar : ref.arrows)
          if (!a.s->arrows.count(ar) || !b.s->arrows.count(ar) ||
              a.m.at(ar) != b.m.at(ar)) {
            usable = false;
            break;
          }
        if (usable) return true;
      }
      return false;
    };
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t k = i + 1; k < v.size(); ++k)
        if (find(i) != find(k) && linked(v[i], v[k])) parent[find(i)] = find(k);
    std::map<std::size_t, std::string> least;
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto [it, fresh] = least.try_emplace(find(i), v[i].render);
      if (!fresh && v[i].render < it->second) it->second = v[i].render;
    }
    auto& at_x = classes[x];
    auto& names = sets[x];
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string& cname = least.at(find(i));
      out.class_of[x][v[i].render] = cname;
      at_x[cname].push_back(&v[i]);
    }
    for (const auto& [cname, mem] : at_x) {
      names.push_back(cname);
      for (const Member* m : mem)
        if (m->render == cname) out.rep[x][cname] = m->m;
    }
  }

  std::map<std::string, std::map<std::string, std::string>> action;
  for (const auto& u : p.base.morphisms) {
    if (p.base.is_identity(u.id)) continue;
    auto& table = action[u.id];
    for (const auto& [cname, mem] : classes.at(u.cod)) {
      std::string assigned;
      for (const Member* m : mem) {
        Sieve pulled = pullback_sieve(p.base, *m->s, u.id);
        MatchingFamily pm;
        for (const auto& g : pulled.arrows)
          pm[g] = m->m.at(p.base.compose(u.id, g));
        auto cit = out.class_of.at(u.dom).find(family_render(pm));
        if (cit == out.class_of.at(u.dom).end())
          throw std::logic_error(
              "plus_construction: a restriction left the enumerated covers");
        if (assigned.empty())
          assigned = cit->second;
        else if (assigned != cit->second)
          throw std::logic_error(
              "plus_construction: restriction is not constant on a class");
      }
      table[cname] = assigned;
    }
  }
  out.plus = make_presheaf(p.base, p.name + "+", std::move(sets),
                           std::move(action));

  out.unit = NatTrans{p, out.plus, {}};
  for (const auto& x : p.base.objects) {
    auto& comp = out.unit.components[x];
    Sieve mx = maximal_sieve(p.base, x);
    for (const auto& e : p.at(x)) {
      MatchingFamily m;
      for (const auto& g : mx.arrows) m[g] = p.act(g, e);
      comp[e] = out.class_of.at(x).at(family_render(m));
    }
  }
  return out;
}

Sheafification sheafify(const Presheaf& p, const GrothTopology& j) {
  Sheafification out;
  if (is_sheaf(p, j).ok()) {
    out.sheaf = p;
    out.unit = identity_nat(p);
    out.already_sheaf = true;
    return out;
  }
  PlusConstruction once = plus_construction(p, j);
  PlusConstruction twice = plus_construction(once.plus, j);
  out.sheaf = twice.plus;
  out.sheaf.name = "a(" + p.name + ")";
  out.unit = compose_nat(twice.unit, once.unit);
  out.unit.target = out.sheaf;
  out.stages.push_back(std::move(once));
  out.stages.push_back(std::move(twice));
  if (!is_sheaf(out.sheaf, j).ok())
    throw std::logic_error("sheafify: plus construction twice is not a sheaf");
  return out;
}

namespace {

// Factor g through the unit of one plus stage: each class goes to the
// unique amalgamation of its pushed representative family.
NatTrans extend_plus(const PlusConstruction& st, const NatTrans& g) {
  const Presheaf& t = g.target;
  NatTrans out{st.plus, t, {}};
  for (const auto& x : st.plus.base.objects) {
    auto& comp = out.components[x];
    for (const auto& cname : st.plus.at(x)) {
      const MatchingFamily& m = st.rep.at(x).at(cname);
      std::vector<std::string> hits;
      for (const auto& e : t.at(x)) {
        bool good = true;
        for (const auto& [a, val] : m)
          if (t.act(a, e) != g.at(st.plus.base.mor(a).dom, val)) {
            good = false;
            break;
          }
        if (good) hits.push_back(e);
      }
      if (hits.size() != 1)
        throw std::logic_error(
            "extend_along_unit: target is not a sheaf for the covers used");
      comp[cname] = hits[0];
    }
  }
  return out;
}

}  // namespace

NatTrans extend_along_unit(const Sheafification& sh, const NatTrans& g) {
  if (!presheaf_equal(g.source, sh.unit.source))
    throw ShapeError("extend_along_unit: arrow does not start at the sheafified presheaf");
  if (sh.already_sheaf) return g;
  NatTrans cur = g;
  for (const auto& st : sh.stages) cur = extend_plus(st, cur);
  cur.source = sh.sheaf;
  return cur;
}

NatTrans sheafify_map(const Sheafification& src, const Sheafification& dst,
                      const NatTrans& g) {
  if (!presheaf_equal(g.source, src.unit.source) ||
      !presheaf_equal(g.target, dst.unit.source))
    throw ShapeError("sheafify_map: boundaries do not match the sheafifications");
  return extend_along_unit(src, compose_nat(dst.unit, g));
}

SliceObject slice_inclusion_direct_image(const Sheafification& ap,
                                         const NatTrans& w) {
  if (!presheaf_equal(w.target, ap.sheaf))
    throw ShapeError(
        "slice_inclusion_direct_image: arrow does not land in the sheafification");
  if (ap.already_sheaf) return {w.source, w};
  PullbackData pb = pullback(w, ap.unit);
  return {pb.object, pb.proj2};
}

SheafDP dependent_product_sheaf(const NatTrans& f, const NatTrans& h,
                                const GrothTopology& j, SheafDpBackend backend,
                                std::size_t cap) {
  SheafDP out;
  out.ap = sheafify(f.source, j);
  out.aq = sheafify(f.target, j);
  if (!presheaf_equal(h.target, out.ap.sheaf))
    throw PreconditionError(
        "dependent_product_sheaf: slice object is not over the sheafified source");
  if (!is_sheaf(h.source, j).ok())
    throw PreconditionError(
        "dependent_product_sheaf: slice object is not a sheaf");
  out.included = slice_inclusion_direct_image(out.ap, h);
  if (backend == SheafDpBackend::kan) {
    KanDP kd = dependent_product_kan(f, out.included.structural);
    out.presheaf_dp = {kd.total, kd.structural};
  } else {
    ElementaryDP ed =
        dependent_product_elementary(f, out.included.structural, cap);
    out.presheaf_dp = {ed.carrier, ed.structural};
  }
  out.atotal = sheafify(out.presheaf_dp.total, j);
  out.total = {out.atotal.sheaf,
               sheafify_map(out.atotal, out.aq, out.presheaf_dp.structural)};
  return out;
}

SquareReport subtopos_square_check(const NatTrans& f, const NatTrans& h,
                                   const GrothTopology& j,
                                   SheafDpBackend backend, std::size_t cap) {
  if (!presheaf_equal(h.target, f.source))
    throw ShapeError("subtopos_square_check: h does not land in the source of f");
  SquareReport r;
  const std::pair<const char*, const Presheaf*> sides[] = {
      {"source of f", &f.source},
      {"target of f", &f.target},
      {"source of h", &h.source}};
  for (const auto& [label, pr] : sides)
    if (!is_sheaf(*pr, j).ok())
      r.notes.push_back(std::string(label) + " is not a sheaf");
  if (!r.notes.empty()) {
    r.status = "precondition_unmet";
    return r;
  }
  SliceObject pres;
  if (backend == SheafDpBackend::kan) {
    KanDP kd = dependent_product_kan(f, h);
    pres = {kd.total, kd.structural};
  } else {
    ElementaryDP ed = dependent_product_elementary(f, h, cap);
    pres = {ed.carrier, ed.structural};
  }
  if (!is_sheaf(pres.total, j).ok()) {
    r.status = "fail";
    r.notes.push_back("presheaf-level carrier is not a sheaf");
    return r;
  }
  SheafDP sd = dependent_product_sheaf(f, h, j, backend, cap);
  if (!presheaf_equal(sd.total.total, pres.total) ||
      !nat_equal(sd.total.structural, pres.structural)) {
    r.status = "fail";
    r.notes.push_back("sheaf-level product differs from the presheaf-level one");
    return r;
  }
  r.status = "pass";
  return r;
}

}  // namespace fintop
