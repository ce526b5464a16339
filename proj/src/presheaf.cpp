#include "fintop/presheaf.hpp"

#include <algorithm>

#include "fintop/errors.hpp"

namespace fintop {

const std::vector<std::string>& Presheaf::at(const std::string& obj) const {
  auto it = sets.find(obj);
  if (it == sets.end())
    throw ShapeError("presheaf '" + name + "' has no set at object '" + obj + "'");
  return it->second;
}

const std::string& Presheaf::act(const std::string& mor, const std::string& elem) const {
  auto it = action.find(mor);
  if (it == action.end())
    throw ShapeError("presheaf '" + name + "' has no action for morphism '" + mor + "'");
  auto jt = it->second.find(elem);
  if (jt == it->second.end())
    throw ShapeError("presheaf '" + name + "': action of '" + mor +
                     "' undefined on element '" + elem + "'");
  return jt->second;
}

bool Presheaf::has_elem(const std::string& obj, const std::string& elem) const {
  auto it = sets.find(obj);
  if (it == sets.end()) return false;
  return std::find(it->second.begin(), it->second.end(), elem) != it->second.end();
}

std::size_t Presheaf::elem_index(const std::string& obj, const std::string& elem) const {
  const auto& v = at(obj);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == elem) return i;
  throw ShapeError("presheaf '" + name + "': no element '" + elem + "' at '" + obj + "'");
}

std::size_t Presheaf::total_size() const {
  std::size_t n = 0;
  for (const auto& [obj, v] : sets) n += v.size();
  return n;
}

const std::string& NatTrans::at(const std::string& obj, const std::string& elem) const {
  auto it = components.find(obj);
  if (it == components.end())
    throw ShapeError("transformation has no component at object '" + obj + "'");
  auto jt = it->second.find(elem);
  if (jt == it->second.end())
    throw ShapeError("component at '" + obj + "' undefined on element '" + elem + "'");
  return jt->second;
}

Presheaf make_presheaf(
    const FinCategory& base, std::string name,
    std::map<std::string, std::vector<std::string>> sets,
    std::map<std::string, std::map<std::string, std::string>> action) {
  Presheaf p{base, std::move(name), std::move(sets), std::move(action)};
  for (const auto& x : base.objects) p.sets[x];
  for (const auto& m : base.morphisms) {
    auto& table = p.action[m.id];
    if (!base.is_identity(m.id)) continue;
    for (const auto& e : p.sets.at(m.cod)) table[e] = e;
  }
  return p;
}

ValidationReport validate_presheaf(const Presheaf& p) {
  ValidationReport r;
  auto add = [&r](const std::string& law, std::vector<std::string> w) {
    r.violations.push_back({law, std::move(w)});
  };
  for (const auto& x : p.base.objects)
    if (!p.sets.count(x)) add("set-missing", {x});
  for (const auto& [obj, v] : p.sets) {
    if (!p.base.has_object(obj)) add("set-unknown-object", {obj});
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        if (v[i] == v[j]) add("set-duplicate-element", {obj, v[i]});
  }
  if (!r.ok()) return r;

  for (const auto& m : p.base.morphisms) {
    auto it = p.action.find(m.id);
    if (it == p.action.end()) {
      add("action-missing", {m.id});
      continue;
    }
    const auto& table = it->second;
    for (const auto& y : p.at(m.cod)) {
      auto jt = table.find(y);
      if (jt == table.end())
        add("action-partial", {m.id, y});
      else if (!p.has_elem(m.dom, jt->second))
        add("action-bad-value", {m.id, y, jt->second});
    }
    for (const auto& [y, x] : table)
      if (!p.has_elem(m.cod, y)) add("action-extraneous", {m.id, y});
  }
  for (const auto& [mor, table] : p.action)
    if (!p.base.has_morphism(mor)) add("action-unknown-morphism", {mor});
  if (!r.ok()) return r;

  for (const auto& [obj, idm] : p.base.identity)
    for (const auto& x : p.at(obj))
      if (p.act(idm, x) != x) add("action-identity", {obj, x});
  for (const auto& g : p.base.morphisms)
    for (const auto& f : p.base.morphisms) {
      if (f.cod != g.dom) continue;
      const std::string& gf = p.base.compose(g.id, f.id);
      for (const auto& z : p.at(g.cod))
        if (p.act(gf, z) != p.act(f.id, p.act(g.id, z)))
          add("action-composition", {g.id, f.id, z});
    }
  return r;
}

ValidationReport validate_nat_trans(const NatTrans& t) {
  ValidationReport r;
  auto add = [&r](const std::string& law, std::vector<std::string> w) {
    r.violations.push_back({law, std::move(w)});
  };
  if (!same_category(t.source.base, t.target.base)) {
    add("base-mismatch", {t.source.base.name, t.target.base.name});
    return r;
  }
  for (const auto& x : t.source.base.objects) {
    auto it = t.components.find(x);
    if (it == t.components.end()) {
      if (!t.source.at(x).empty()) add("component-missing", {x});
      continue;
    }
    for (const auto& e : t.source.at(x)) {
      auto jt = it->second.find(e);
      if (jt == it->second.end())
        add("component-partial", {x, e});
      else if (!t.target.has_elem(x, jt->second))
        add("component-bad-value", {x, e, jt->second});
    }
  }
  if (!r.ok()) return r;

  for (const auto& u : t.source.base.morphisms)
    for (const auto& y : t.source.at(u.cod)) {
      const std::string& lhs = t.at(u.dom, t.source.act(u.id, y));
      const std::string& rhs = t.target.act(u.id, t.at(u.cod, y));
      if (lhs != rhs) add("naturality", {u.id, y});
    }
  return r;
}

bool presheaf_equal(const Presheaf& a, const Presheaf& b) {
  return same_category(a.base, b.base) && a.sets == b.sets && a.action == b.action;
}

bool nat_equal(const NatTrans& a, const NatTrans& b) {
  if (!presheaf_equal(a.source, b.source) || !presheaf_equal(a.target, b.target))
    return false;
  for (const auto& [obj, v] : a.source.sets)
    for (const auto& e : v)
      if (a.at(obj, e) != b.at(obj, e)) return false;
  return true;
}

Presheaf yoneda(const FinCategory& c, const std::string& x) {
  if (!c.has_object(x)) throw ShapeError("yoneda: unknown object '" + x + "'");
  Presheaf p;
  p.base = c;
  p.name = "y(" + x + ")";
  for (const auto& w : c.objects) {
    std::vector<std::string> hom;
    for (const auto& m : c.morphisms)
      if (m.dom == w && m.cod == x) hom.push_back(m.id);
    p.sets[w] = hom;
  }
  for (const auto& u : c.morphisms) {
    auto& table = p.action[u.id];
    for (const auto& h : p.sets.at(u.cod)) table[h] = c.compose(h, u.id);
  }
  return p;
}

NatTrans yoneda_map(const FinCategory& c, const std::string& u) {
  const auto& m = c.mor(u);
  NatTrans t;
  t.source = yoneda(c, m.dom);
  t.target = yoneda(c, m.cod);
  for (const auto& w : c.objects) {
    auto& comp = t.components[w];
    for (const auto& h : t.source.at(w)) comp[h] = c.compose(u, h);
  }
  return t;
}

Presheaf terminal_presheaf(const FinCategory& c) {
  Presheaf p;
  p.base = c;
  p.name = "1";
  for (const auto& x : c.objects) p.sets[x] = {"*"};
  for (const auto& m : c.morphisms) p.action[m.id] = {{"*", "*"}};
  return p;
}

Presheaf empty_presheaf(const FinCategory& c) {
  Presheaf p;
  p.base = c;
  p.name = "0";
  for (const auto& x : c.objects) p.sets[x] = {};
  for (const auto& m : c.morphisms) p.action[m.id] = {};
  return p;
}

std::pair<std::string, std::string> split_pair(const std::string& s) {
  if (s.size() < 3 || s.front() != '(' || s.back() != ')')
    throw ShapeError("not a pair element: '" + s + "'");
  int depth = 0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(' || ch == '[' || ch == '{') ++depth;
    if (ch == ')' || ch == ']' || ch == '}') --depth;
    if (ch == ',' && depth == 0)
      return {s.substr(1, i - 1), s.substr(i + 1, s.size() - i - 2)};
  }
  throw ShapeError("not a pair element: '" + s + "'");
}

ProductData product(const Presheaf& a, const Presheaf& b) {
  if (!same_category(a.base, b.base)) throw ShapeError("product: base mismatch");
  ProductData d;
  d.object.base = a.base;
  d.object.name = "(" + a.name + "x" + b.name + ")";
  for (const auto& x : a.base.objects) {
    auto& v = d.object.sets[x];
    for (const auto& p : a.at(x))
      for (const auto& q : b.at(x)) v.push_back(pair_id(p, q));
  }
  for (const auto& m : a.base.morphisms) {
    auto& table = d.object.action[m.id];
    for (const auto& p : a.at(m.cod))
      for (const auto& q : b.at(m.cod))
        table[pair_id(p, q)] = pair_id(a.act(m.id, p), b.act(m.id, q));
  }
  d.proj1.source = d.object;
  d.proj1.target = a;
  d.proj2.source = d.object;
  d.proj2.target = b;
  for (const auto& x : a.base.objects) {
    auto& c1 = d.proj1.components[x];
    auto& c2 = d.proj2.components[x];
    for (const auto& e : d.object.at(x)) {
      auto [p, q] = split_pair(e);
      c1[e] = p;
      c2[e] = q;
    }
  }
  return d;
}

NatTrans pairing(const NatTrans& f, const NatTrans& g, const ProductData& prod) {
  if (!presheaf_equal(f.source, g.source)) throw ShapeError("pairing: domain mismatch");
  if (!presheaf_equal(f.target, prod.proj1.target) ||
      !presheaf_equal(g.target, prod.proj2.target))
    throw ShapeError("pairing: codomain is not the given product");
  NatTrans t;
  t.source = f.source;
  t.target = prod.object;
  for (const auto& [obj, v] : f.source.sets) {
    auto& comp = t.components[obj];
    for (const auto& e : v) comp[e] = pair_id(f.at(obj, e), g.at(obj, e));
  }
  return t;
}

NatTrans product_map(const NatTrans& f, const NatTrans& g,
                     const ProductData& dom, const ProductData& cod) {
  NatTrans t;
  t.source = dom.object;
  t.target = cod.object;
  for (const auto& [obj, v] : dom.object.sets) {
    auto& comp = t.components[obj];
    for (const auto& e : v) {
      auto [p, q] = split_pair(e);
      comp[e] = pair_id(f.at(obj, p), g.at(obj, q));
    }
  }
  return t;
}

PullbackData pullback(const NatTrans& f, const NatTrans& g) {
  if (!presheaf_equal(f.target, g.target)) throw ShapeError("pullback: cospan mismatch");
  PullbackData d;
  d.object.base = f.source.base;
  d.object.name = "(" + f.source.name + "x_" + f.target.name + g.source.name + ")";
  for (const auto& x : f.source.base.objects) {
    auto& v = d.object.sets[x];
    for (const auto& a : f.source.at(x))
      for (const auto& b : g.source.at(x))
        if (f.at(x, a) == g.at(x, b)) v.push_back(pair_id(a, b));
  }
  for (const auto& m : f.source.base.morphisms) {
    auto& table = d.object.action[m.id];
    for (const auto& e : d.object.at(m.cod)) {
      auto [a, b] = split_pair(e);
      table[e] = pair_id(f.source.act(m.id, a), g.source.act(m.id, b));
    }
  }
  d.proj1.source = d.object;
  d.proj1.target = f.source;
  d.proj2.source = d.object;
  d.proj2.target = g.source;
  for (const auto& x : f.source.base.objects) {
    auto& c1 = d.proj1.components[x];
    auto& c2 = d.proj2.components[x];
    for (const auto& e : d.object.at(x)) {
      auto [a, b] = split_pair(e);
      c1[e] = a;
      c2[e] = b;
    }
  }
  return d;
}

EqualizerData equalizer(const NatTrans& f, const NatTrans& g) {
  if (!presheaf_equal(f.source, g.source) || !presheaf_equal(f.target, g.target))
    throw ShapeError("equalizer: not a parallel pair");
  EqualizerData d;
  d.object.base = f.source.base;
  d.object.name = "Eq(" + f.source.name + ")";
  for (const auto& x : f.source.base.objects) {
    auto& v = d.object.sets[x];
    for (const auto& e : f.source.at(x))
      if (f.at(x, e) == g.at(x, e)) v.push_back(e);
  }
  for (const auto& m : f.source.base.morphisms) {
    auto& table = d.object.action[m.id];
    for (const auto& e : d.object.at(m.cod)) table[e] = f.source.act(m.id, e);
  }
  d.include.source = d.object;
  d.include.target = f.source;
  for (const auto& x : f.source.base.objects) {
    auto& comp = d.include.components[x];
    for (const auto& e : d.object.at(x)) comp[e] = e;
  }
  return d;
}

NatTrans compose_nat(const NatTrans& g, const NatTrans& f) {
  if (!presheaf_equal(g.source, f.target))
    throw ShapeError("compose_nat: boundary mismatch");
  NatTrans t;
  t.source = f.source;
  t.target = g.target;
  for (const auto& [obj, v] : f.source.sets) {
    auto& comp = t.components[obj];
    for (const auto& e : v) comp[e] = g.at(obj, f.at(obj, e));
  }
  return t;
}

NatTrans identity_nat(const Presheaf& p) {
  NatTrans t;
  t.source = p;
  t.target = p;
  for (const auto& [obj, v] : p.sets) {
    auto& comp = t.components[obj];
    for (const auto& e : v) comp[e] = e;
  }
  return t;
}

NatTrans to_terminal(const Presheaf& p, const Presheaf& t) {
  NatTrans u;
  u.source = p;
  u.target = t;
  for (const auto& [obj, v] : p.sets) {
    if (t.at(obj).size() != 1) throw ShapeError("to_terminal: target not terminal");
    auto& comp = u.components[obj];
    for (const auto& e : v) comp[e] = t.at(obj).front();
  }
  return u;
}

bool is_mono(const NatTrans& f) {
  for (const auto& [obj, v] : f.source.sets) {
    std::map<std::string, std::string> seen;
    for (const auto& e : v) {
      auto [it, fresh] = seen.try_emplace(f.at(obj, e), e);
      if (!fresh) return false;
    }
  }
  return true;
}

bool is_epi(const NatTrans& f) {
  for (const auto& [obj, v] : f.target.sets) {
    std::map<std::string, bool> hit;
    for (const auto& e : v) hit[e] = false;
    for (const auto& e : f.source.at(obj)) hit[f.at(obj, e)] = true;
    for (const auto& [e, ok] : hit)
      if (!ok) return false;
  }
  return true;
}

bool is_iso(const NatTrans& f) { return is_mono(f) && is_epi(f); }

NatTrans inverse(const NatTrans& f) {
  if (!is_iso(f)) throw ShapeError("inverse: transformation is not invertible");
  NatTrans t;
  t.source = f.target;
  t.target = f.source;
  for (const auto& [obj, v] : f.source.sets) {
    auto& comp = t.components[obj];
    for (const auto& e : v) comp[f.at(obj, e)] = e;
  }
  return t;
}

std::vector<std::map<std::string, std::string>> limit_of_sets(const SetDiagram& d) {
  std::vector<std::map<std::string, std::string>> out;
  const auto& nodes = d.shape.objects;
  std::map<std::string, std::string> family;

  auto consistent = [&](const std::string& node) {
    for (const auto& e : d.shape.morphisms) {
      if (e.dom != node && e.cod != node) continue;
      if (!family.count(e.dom) || !family.count(e.cod)) continue;
      auto it = d.action.find(e.id);
      if (it == d.action.end()) throw ShapeError("limit_of_sets: missing edge action");
      auto jt = it->second.find(family.at(e.dom));
      if (jt == it->second.end() || jt->second != family.at(e.cod)) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == nodes.size()) {
      out.push_back(family);
      return;
    }
    const auto& node = nodes[i];
    auto it = d.sets.find(node);
    if (it == d.sets.end()) throw ShapeError("limit_of_sets: missing node set");
    for (const auto& choice : it->second) {
      family[node] = choice;
      if (consistent(node)) go(i + 1);
      family.erase(node);
    }
  };
  go(0);
  return out;
}

const std::string& ElementsCategory::node(const std::string& obj,
                                          const std::string& elem) const {
  auto it = labels.find(pair_id(obj, elem));
  if (it == labels.end())
    throw ShapeError("elements category: no node for (" + obj + ", " + elem + ")");
  return it->first;
}

ElementsCategory elements_category(const Presheaf& p) {
  ElementsCategory ec;
  FinCategory& c = ec.cat;
  c.name = "el(" + p.name + ")";
  for (const auto& x : p.base.objects)
    for (const auto& e : p.at(x)) {
      std::string n = pair_id(x, e);
      c.objects.push_back(n);
      ec.labels[n] = {x, e};
      std::string idm = "id_" + n;
      c.morphisms.push_back({idm, n, n});
      c.identity[n] = idm;
    }

  struct Edge {
    std::string id, base, src, dst;
  };
  std::vector<Edge> edges;
  for (const auto& n : c.objects) {
    const auto& [x, e] = ec.labels.at(n);
    for (const auto& g : p.base.morphisms) {
      if (g.cod != x || p.base.is_identity(g.id)) continue;
      std::string src = pair_id(g.dom, p.act(g.id, e));
      std::string mid = pair_id(g.id, n);
      c.morphisms.push_back({mid, src, n});
      edges.push_back({mid, g.id, src, n});
    }
  }
  for (const auto& n : c.objects)
    edges.push_back({c.identity.at(n), p.base.identity.at(ec.labels.at(n).first), n, n});

  for (const auto& e2 : edges)
    for (const auto& e1 : edges) {
      if (e1.dst != e2.src) continue;
      std::string g = p.base.compose(e2.base, e1.base);
      std::string id =
          p.base.is_identity(g) ? c.identity.at(e2.dst) : pair_id(g, e2.dst);
      c.compose_table[{e2.id, e1.id}] = id;
    }

  ec.proj.source = c;
  ec.proj.target = p.base;
  for (const auto& n : c.objects) ec.proj.obj_map[n] = ec.labels.at(n).first;
  for (const auto& e : edges) ec.proj.mor_map[e.id] = e.base;
  return ec;
}

FinFunctor elements_functor(const NatTrans& f) {
  ElementsCategory ep = elements_category(f.source);
  ElementsCategory eq = elements_category(f.target);
  FinFunctor F;
  F.source = ep.cat;
  F.target = eq.cat;
  for (const auto& n : ep.cat.objects) {
    const auto& [x, e] = ep.labels.at(n);
    F.obj_map[n] = pair_id(x, f.at(x, e));
  }
  for (const auto& m : ep.cat.morphisms) {
    const std::string& base = ep.proj.mor_map.at(m.id);
    const std::string& target = F.obj_map.at(m.cod);
    F.mor_map[m.id] = f.source.base.is_identity(base)
                          ? eq.cat.identity.at(target)
                          : pair_id(base, target);
  }
  return F;
}

std::vector<NatTrans> enumerate_nat_trans(const Presheaf& p, const Presheaf& q,
                                          const TransFilter& allow,
                                          std::size_t limit) {
  if (!same_category(p.base, q.base))
    throw ShapeError("enumerate_nat_trans: base mismatch");
  std::vector<std::pair<std::string, std::string>> slots;
  for (const auto& x : p.base.objects)
    for (const auto& e : p.at(x)) slots.emplace_back(x, e);

  std::map<std::string, std::map<std::string, std::string>> comp;
  for (const auto& x : p.base.objects) comp[x];
  std::vector<NatTrans> out;

  auto assigned = [&](const std::string& obj, const std::string& elem,
                      const std::string*& img) {
    auto it = comp.at(obj).find(elem);
    if (it == comp.at(obj).end()) return false;
    img = &it->second;
    return true;
  };

  // Every naturality square instance that the new assignment completes.
  auto compatible = [&](const std::string& obj, const std::string& elem,
                        const std::string& img) {
    for (const auto& u : p.base.morphisms) {
      if (u.dom == obj) {
        for (const auto& y : p.at(u.cod)) {
          if (p.act(u.id, y) != elem) continue;
          const std::string* ty = nullptr;
          if (assigned(u.cod, y, ty) && img != q.act(u.id, *ty)) return false;
        }
      }
      if (u.cod == obj) {
        const std::string& x = p.act(u.id, elem);
        const std::string* tx = nullptr;
        if (assigned(u.dom, x, tx) && *tx != q.act(u.id, img)) return false;
      }
    }
    return true;
  };

  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == slots.size()) {
      NatTrans t;
      t.source = p;
      t.target = q;
      t.components = comp;
      out.push_back(std::move(t));
      return limit == 0 || out.size() < limit;
    }
    const auto& [obj, elem] = slots[i];
    for (const auto& img : q.at(obj)) {
      if (allow && !allow(obj, elem, img)) continue;
      if (!compatible(obj, elem, img)) continue;
      comp[obj][elem] = img;
      bool keep = go(i + 1);
      comp[obj].erase(elem);
      if (!keep) return false;
    }
    return true;
  };
  go(0);
  return out;
}

}  // namespace fintop
