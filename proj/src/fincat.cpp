#include "fintop/fincat.hpp"

#include <algorithm>
#include <sstream>

#include "fintop/errors.hpp"

namespace fintop {

std::string ValidationReport::summary() const {
  if (violations.empty()) return "pass";
  std::ostringstream os;
  const Violation& v = violations.front();
  os << v.law << " (";
  for (std::size_t i = 0; i < v.witness.size(); ++i) {
    if (i) os << ", ";
    os << v.witness[i];
  }
  os << ")";
  if (violations.size() > 1) os << " and " << violations.size() - 1 << " more";
  return os.str();
}

std::string pair_id(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

bool FinCategory::has_object(const std::string& x) const {
  return std::find(objects.begin(), objects.end(), x) != objects.end();
}

bool FinCategory::has_morphism(const std::string& m) const {
  for (const auto& d : morphisms)
    if (d.id == m) return true;
  return false;
}

const MorphismDecl& FinCategory::mor(const std::string& id) const {
  for (const auto& d : morphisms)
    if (d.id == id) return d;
  throw ShapeError("unknown morphism '" + id + "' in category '" + name + "'");
}

bool FinCategory::is_identity(const std::string& m) const {
  for (const auto& [obj, idm] : identity)
    if (idm == m) return true;
  return false;
}

std::string FinCategory::compose(const std::string& g, const std::string& f) const {
  auto it = compose_table.find({g, f});
  if (it == compose_table.end())
    throw ShapeError("non-composable pair (" + g + ", " + f + ") in category '" + name + "'");
  return it->second;
}

std::size_t FinCategory::object_index(const std::string& x) const {
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i] == x) return i;
  throw ShapeError("unknown object '" + x + "' in category '" + name + "'");
}

std::size_t FinCategory::morphism_index(const std::string& m) const {
  for (std::size_t i = 0; i < morphisms.size(); ++i)
    if (morphisms[i].id == m) return i;
  throw ShapeError("unknown morphism '" + m + "' in category '" + name + "'");
}

std::vector<std::string> FinCategory::arrows_into(const std::string& x) const {
  std::vector<std::string> out;
  for (const auto& d : morphisms)
    if (d.cod == x) out.push_back(d.id);
  return out;
}

std::vector<std::string> FinCategory::arrows_from(const std::string& x) const {
  std::vector<std::string> out;
  for (const auto& d : morphisms)
    if (d.dom == x) out.push_back(d.id);
  return out;
}

bool same_category(const FinCategory& a, const FinCategory& b) {
  if (a.objects != b.objects) return false;
  if (a.morphisms.size() != b.morphisms.size()) return false;
  for (std::size_t i = 0; i < a.morphisms.size(); ++i) {
    const auto& x = a.morphisms[i];
    const auto& y = b.morphisms[i];
    if (x.id != y.id || x.dom != y.dom || x.cod != y.cod) return false;
  }
  return a.identity == b.identity && a.compose_table == b.compose_table;
}

FinCategory make_category(
    std::string name, std::vector<std::string> objects,
    std::vector<MorphismDecl> non_identity_morphisms,
    const std::map<std::pair<std::string, std::string>, std::string>& composites) {
  FinCategory c;
  c.name = std::move(name);
  c.objects = std::move(objects);
  for (const auto& x : c.objects) {
    std::string idm = "id_" + x;
    c.morphisms.push_back({idm, x, x});
    c.identity[x] = idm;
  }
  for (auto& m : non_identity_morphisms) c.morphisms.push_back(std::move(m));
  // Identity-forced composites, then the declared ones.
  for (const auto& m : c.morphisms) {
    c.compose_table[{c.identity.at(m.cod), m.id}] = m.id;
    c.compose_table[{m.id, c.identity.at(m.dom)}] = m.id;
  }
  for (const auto& [pair, gf] : composites) c.compose_table[pair] = gf;
  return c;
}

ValidationReport validate_category(const FinCategory& c) {
  ValidationReport r;
  auto add = [&r](const std::string& law, std::vector<std::string> w) {
    r.violations.push_back({law, std::move(w)});
  };

  for (const auto& x : c.objects) {
    auto it = c.identity.find(x);
    if (it == c.identity.end()) {
      add("identity-missing", {x});
      continue;
    }
    if (!c.has_morphism(it->second)) {
      add("identity-unknown-morphism", {x, it->second});
      continue;
    }
    const auto& m = c.mor(it->second);
    if (m.dom != x || m.cod != x) add("identity-not-endo", {x, it->second});
  }
  for (const auto& m : c.morphisms) {
    if (!c.has_object(m.dom)) add("morphism-bad-dom", {m.id, m.dom});
    if (!c.has_object(m.cod)) add("morphism-bad-cod", {m.id, m.cod});
  }
  if (!r.ok()) return r;  // tables below assume well-shaped ids

  // Totality on exactly the composable pairs, with correct dom/cod.
  for (const auto& g : c.morphisms) {
    for (const auto& f : c.morphisms) {
      auto it = c.compose_table.find({g.id, f.id});
      if (f.cod == g.dom) {
        if (it == c.compose_table.end()) {
          add("compose-missing", {g.id, f.id});
        } else if (!c.has_morphism(it->second)) {
          add("compose-unknown-result", {g.id, f.id, it->second});
        } else {
          const auto& gf = c.mor(it->second);
          if (gf.dom != f.dom || gf.cod != g.cod)
            add("compose-bad-boundary", {g.id, f.id, it->second});
        }
      } else if (it != c.compose_table.end()) {
        add("compose-extraneous", {g.id, f.id});
      }
    }
  }
  if (!r.ok()) return r;

  for (const auto& f : c.morphisms) {
    if (c.compose(c.identity.at(f.cod), f.id) != f.id)
      add("identity-left", {c.identity.at(f.cod), f.id});
    if (c.compose(f.id, c.identity.at(f.dom)) != f.id)
      add("identity-right", {f.id, c.identity.at(f.dom)});
  }
  for (const auto& h : c.morphisms)
    for (const auto& g : c.morphisms) {
      if (g.cod != h.dom) continue;
      for (const auto& f : c.morphisms) {
        if (f.cod != g.dom) continue;
        if (c.compose(h.id, c.compose(g.id, f.id)) !=
            c.compose(c.compose(h.id, g.id), f.id))
          add("associativity", {h.id, g.id, f.id});
      }
    }
  return r;
}

FinCategory opposite(const FinCategory& c) {
  FinCategory o;
  o.name = c.name.empty() ? "" : c.name + "^op";
  // Undo the double-op suffix so opposite is an involution on names too.
  if (c.name.size() >= 3 && c.name.substr(c.name.size() - 3) == "^op")
    o.name = c.name.substr(0, c.name.size() - 3);
  o.objects = c.objects;
  for (const auto& m : c.morphisms) o.morphisms.push_back({m.id, m.cod, m.dom});
  o.identity = c.identity;
  for (const auto& [pair, gf] : c.compose_table)
    o.compose_table[{pair.second, pair.first}] = gf;
  return o;
}

const std::string& FinFunctor::on_object(const std::string& x) const {
  auto it = obj_map.find(x);
  if (it == obj_map.end()) throw ShapeError("functor has no image for object '" + x + "'");
  return it->second;
}

const std::string& FinFunctor::on_morphism(const std::string& m) const {
  auto it = mor_map.find(m);
  if (it == mor_map.end()) throw ShapeError("functor has no image for morphism '" + m + "'");
  return it->second;
}

ValidationReport validate_functor(const FinFunctor& F) {
  ValidationReport r;
  auto add = [&r](const std::string& law, std::vector<std::string> w) {
    r.violations.push_back({law, std::move(w)});
  };
  for (const auto& x : F.source.objects) {
    auto it = F.obj_map.find(x);
    if (it == F.obj_map.end() || !F.target.has_object(it->second)) {
      add("functor-object-map", {x});
      return r;
    }
  }
  for (const auto& m : F.source.morphisms) {
    auto it = F.mor_map.find(m.id);
    if (it == F.mor_map.end() || !F.target.has_morphism(it->second)) {
      add("functor-morphism-map", {m.id});
      return r;
    }
    const auto& fm = F.target.mor(it->second);
    if (fm.dom != F.on_object(m.dom)) add("functor-dom", {m.id});
    if (fm.cod != F.on_object(m.cod)) add("functor-cod", {m.id});
  }
  // Identity and composition checks compose images; only meaningful once
  // boundaries are preserved.
  if (!r.ok()) return r;
  for (const auto& x : F.source.objects)
    if (F.on_morphism(F.source.identity.at(x)) !=
        F.target.identity.at(F.on_object(x)))
      add("functor-identity", {x});
  for (const auto& g : F.source.morphisms)
    for (const auto& f : F.source.morphisms) {
      if (f.cod != g.dom) continue;
      if (F.on_morphism(F.source.compose(g.id, f.id)) !=
          F.target.compose(F.on_morphism(g.id), F.on_morphism(f.id)))
        add("functor-composition", {g.id, f.id});
    }
  return r;
}

FinFunctor identity_functor(const FinCategory& c) {
  FinFunctor F;
  F.source = c;
  F.target = c;
  for (const auto& x : c.objects) F.obj_map[x] = x;
  for (const auto& m : c.morphisms) F.mor_map[m.id] = m.id;
  return F;
}

FinFunctor compose_functors(const FinFunctor& g, const FinFunctor& f) {
  if (!same_category(g.source, f.target))
    throw ShapeError("compose_functors: boundary mismatch");
  FinFunctor h;
  h.source = f.source;
  h.target = g.target;
  for (const auto& [x, fx] : f.obj_map) h.obj_map[x] = g.on_object(fx);
  for (const auto& [m, fm] : f.mor_map) h.mor_map[m] = g.on_morphism(fm);
  return h;
}

FinFunctor opposite_functor(const FinFunctor& f) {
  FinFunctor o;
  o.source = opposite(f.source);
  o.target = opposite(f.target);
  o.obj_map = f.obj_map;
  o.mor_map = f.mor_map;
  return o;
}

CommaCategory build_comma(const std::string& d, const FinFunctor& F) {
  if (!F.target.has_object(d)) throw ShapeError("build_comma: '" + d + "' not in target");
  CommaCategory cc;
  FinCategory& c = cc.base;
  c.name = "(" + d + "~" + F.source.name + ")";

  // Nodes: (g : d -> F(A), A), object-major then arrow order.
  for (const auto& a : F.source.objects) {
    const std::string& fa = F.on_object(a);
    for (const auto& g : F.target.morphisms) {
      if (g.dom != d || g.cod != fa) continue;
      std::string node = pair_id(g.id, a);
      c.objects.push_back(node);
      cc.labels[node] = {g.id, a};
      std::string idm = "id_" + node;
      c.morphisms.push_back({idm, node, node});
      c.identity[node] = idm;
    }
  }

  // Edges: γ : A -> A' with F(γ)∘g = g'. Identity γ collapses onto the
  // node identity created above.
  struct Edge {
    std::string id, gamma, src, dst;
  };
  std::vector<Edge> edges;
  for (const auto& node : c.objects) {
    const auto& [g, a] = cc.labels.at(node);
    for (const auto& gamma : F.source.morphisms) {
      if (gamma.dom != a) continue;
      std::string g2 = F.target.compose(F.on_morphism(gamma.id), g);
      std::string dst = pair_id(g2, gamma.cod);
      if (!cc.labels.count(dst))
        throw ShapeError("build_comma: internal node lookup failed");
      if (F.source.is_identity(gamma.id)) continue;  // already present
      std::string eid = pair_id(gamma.id, node);
      c.morphisms.push_back({eid, node, dst});
      edges.push_back({eid, gamma.id, node, dst});
    }
  }
  for (const auto& node : c.objects)
    edges.push_back({c.identity.at(node), F.source.identity.at(cc.labels.at(node).second),
                     node, node});

  // Total composition through the underlying γ's.
  for (const auto& e2 : edges)
    for (const auto& e1 : edges) {
      if (e1.dst != e2.src) continue;
      std::string gamma = F.source.compose(e2.gamma, e1.gamma);
      std::string id = F.source.is_identity(gamma) ? c.identity.at(e1.src)
                                                   : pair_id(gamma, e1.src);
      c.compose_table[{e2.id, e1.id}] = id;
    }

  cc.projection.source = c;
  cc.projection.target = F.source;
  for (const auto& node : c.objects) cc.projection.obj_map[node] = cc.labels.at(node).second;
  for (const auto& e : edges) cc.projection.mor_map[e.id] = e.gamma;
  return cc;
}

}  // namespace fintop
