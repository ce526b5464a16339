#include "fintop/powersub.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fintop/errors.hpp"

namespace fintop {

bool Subpresheaf::contains(const std::string& obj, const std::string& elem) const {
  auto it = subsets.find(obj);
  if (it == subsets.end()) return false;
  return std::find(it->second.begin(), it->second.end(), elem) != it->second.end();
}

std::size_t Subpresheaf::total_size() const {
  std::size_t n = 0;
  for (const auto& [obj, v] : subsets) n += v.size();
  return n;
}

ValidationReport validate_subpresheaf(const Subpresheaf& s) {
  ValidationReport r;
  auto add = [&r](const std::string& law, std::vector<std::string> w) {
    r.violations.push_back({law, std::move(w)});
  };
  for (const auto& [obj, v] : s.subsets) {
    if (!s.ambient.base.has_object(obj)) {
      add("subset-unknown-object", {obj});
      continue;
    }
    for (const auto& e : v)
      if (!s.ambient.has_elem(obj, e)) add("subset-unknown-element", {obj, e});
  }
  if (!r.ok()) return r;
  for (const auto& u : s.ambient.base.morphisms)
    for (const auto& y : s.ambient.at(u.cod))
      if (s.contains(u.cod, y) && !s.contains(u.dom, s.ambient.act(u.id, y)))
        add("restriction-closure", {u.id, y});
  return r;
}

Subpresheaf full_subpresheaf(const Presheaf& p) {
  Subpresheaf s;
  s.ambient = p;
  s.subsets = p.sets;
  return s;
}

Subpresheaf empty_subpresheaf(const Presheaf& p) {
  Subpresheaf s;
  s.ambient = p;
  for (const auto& [obj, v] : p.sets) s.subsets[obj] = {};
  return s;
}

bool sub_equal(const Subpresheaf& a, const Subpresheaf& b) {
  return presheaf_equal(a.ambient, b.ambient) && a.subsets == b.subsets;
}

bool sub_leq(const Subpresheaf& a, const Subpresheaf& b) {
  if (!presheaf_equal(a.ambient, b.ambient)) return false;
  for (const auto& [obj, v] : a.subsets)
    for (const auto& e : v)
      if (!b.contains(obj, e)) return false;
  return true;
}

static Subpresheaf from_predicate(
    const Presheaf& ambient,
    const std::function<bool(const std::string&, const std::string&)>& keep) {
  Subpresheaf s;
  s.ambient = ambient;
  for (const auto& [obj, v] : ambient.sets) {
    auto& sub = s.subsets[obj];
    for (const auto& e : v)
      if (keep(obj, e)) sub.push_back(e);
  }
  return s;
}

Subpresheaf sub_intersection(const Subpresheaf& a, const Subpresheaf& b) {
  if (!presheaf_equal(a.ambient, b.ambient))
    throw ShapeError("sub_intersection: ambient mismatch");
  return from_predicate(a.ambient, [&](const std::string& o, const std::string& e) {
    return a.contains(o, e) && b.contains(o, e);
  });
}

Subpresheaf sub_union(const Subpresheaf& a, const Subpresheaf& b) {
  if (!presheaf_equal(a.ambient, b.ambient))
    throw ShapeError("sub_union: ambient mismatch");
  return from_predicate(a.ambient, [&](const std::string& o, const std::string& e) {
    return a.contains(o, e) || b.contains(o, e);
  });
}

Subpresheaf restriction_closure(
    const Presheaf& ambient,
    const std::map<std::string, std::vector<std::string>>& generators) {
  std::set<std::pair<std::string, std::string>> in;
  for (const auto& [obj, v] : generators)
    for (const auto& e : v) {
      if (!ambient.has_elem(obj, e))
        throw ShapeError("restriction_closure: unknown generator '" + e + "' at '" +
                         obj + "'");
      in.insert({obj, e});
    }
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& u : ambient.base.morphisms)
      for (const auto& y : ambient.at(u.cod))
        if (in.count({u.cod, y}) && in.insert({u.dom, ambient.act(u.id, y)}).second)
          grew = true;
  }
  return from_predicate(ambient, [&](const std::string& o, const std::string& e) {
    return in.count({o, e}) > 0;
  });
}

Presheaf sub_to_presheaf(const Subpresheaf& s) {
  Presheaf p;
  p.base = s.ambient.base;
  p.name = s.ambient.name + "|" + sub_name(s);
  p.sets = s.subsets;
  for (const auto& m : p.base.morphisms) {
    auto& table = p.action[m.id];
    for (const auto& y : p.at(m.cod)) table[y] = s.ambient.act(m.id, y);
  }
  return p;
}

NatTrans sub_inclusion(const Subpresheaf& s) {
  NatTrans t;
  t.source = sub_to_presheaf(s);
  t.target = s.ambient;
  for (const auto& [obj, v] : t.source.sets) {
    auto& comp = t.components[obj];
    for (const auto& e : v) comp[e] = e;
  }
  return t;
}

Subpresheaf image_subpresheaf(const NatTrans& f) {
  std::set<std::pair<std::string, std::string>> hit;
  for (const auto& [obj, v] : f.source.sets)
    for (const auto& e : v) hit.insert({obj, f.at(obj, e)});
  return from_predicate(f.target, [&](const std::string& o, const std::string& e) {
    return hit.count({o, e}) > 0;
  });
}

Subpresheaf preimage_subpresheaf(const NatTrans& f, const Subpresheaf& b) {
  if (!presheaf_equal(b.ambient, f.target))
    throw ShapeError("preimage: subobject does not live in the codomain");
  return from_predicate(f.source, [&](const std::string& o, const std::string& e) {
    return b.contains(o, f.at(o, e));
  });
}

std::string sub_name(const Subpresheaf& s) {
  std::ostringstream os;
  os << "{";
  bool first_stage = true;
  for (const auto& [obj, v] : s.subsets) {
    if (v.empty()) continue;
    if (!first_stage) os << ";";
    first_stage = false;
    os << obj << ":";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ",";
      os << v[i];
    }
  }
  os << "}";
  return os.str();
}

namespace {

struct ElementGraph {
  std::vector<std::pair<std::string, std::string>> verts;  // (object, element)
  std::vector<std::vector<int>> succ;
};

ElementGraph element_graph(const Presheaf& p) {
  ElementGraph g;
  std::map<std::pair<std::string, std::string>, int> index;
  for (const auto& x : p.base.objects)
    for (const auto& e : p.at(x)) {
      index[{x, e}] = static_cast<int>(g.verts.size());
      g.verts.emplace_back(x, e);
    }
  g.succ.resize(g.verts.size());
  for (const auto& u : p.base.morphisms) {
    if (p.base.is_identity(u.id)) continue;
    for (const auto& y : p.at(u.cod)) {
      int from = index.at({u.cod, y});
      int to = index.at({u.dom, p.act(u.id, y)});
      if (from != to) g.succ[from].push_back(to);
    }
  }
  return g;
}

// Tarjan, iterative; components come out with every successor component
// numbered before its predecessors.
std::vector<int> sccs(const ElementGraph& g, int& count) {
  int n = static_cast<int>(g.verts.size());
  std::vector<int> comp(n, -1), low(n, 0), disc(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int time = 0;
  count = 0;

  struct Frame {
    int v;
    std::size_t next;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    disc[root] = low[root] = time++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      if (f.next < g.succ[f.v].size()) {
        int w = g.succ[f.v][f.next++];
        if (disc[w] == -1) {
          disc[w] = low[w] = time++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        if (low[f.v] == disc[f.v]) {
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = count;
            if (w == f.v) break;
          }
          ++count;
        }
        int v = f.v;
        call.pop_back();
        if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      }
    }
  }
  return comp;
}

}  // namespace

std::vector<Subpresheaf> enumerate_subpresheaves(const Presheaf& p, std::size_t cap) {
  ElementGraph g = element_graph(p);
  int scc_count = 0;
  std::vector<int> comp = sccs(g, scc_count);

  std::vector<std::set<int>> succ(scc_count);
  for (std::size_t v = 0; v < g.verts.size(); ++v)
    for (int w : g.succ[v])
      if (comp[v] != comp[w]) succ[comp[v]].insert(comp[w]);

  std::vector<std::vector<char>> bits;
  std::vector<char> included(scc_count, 0);
  std::function<void(int)> go = [&](int s) {
    if (s == scc_count) {
      if (cap != 0 && bits.size() == cap)
        throw ResourceCapError("subobject count of '" + p.name + "' exceeds cap", p.name);
      std::vector<char> b(g.verts.size());
      for (std::size_t v = 0; v < g.verts.size(); ++v) b[v] = included[comp[v]];
      bits.push_back(std::move(b));
      return;
    }
    included[s] = 0;
    go(s + 1);
    bool can = true;
    for (int t : succ[s])
      if (!included[t]) {
        can = false;
        break;
      }
    if (can) {
      included[s] = 1;
      go(s + 1);
      included[s] = 0;
    }
  };
  go(0);
  std::sort(bits.begin(), bits.end());

  std::vector<Subpresheaf> out;
  out.reserve(bits.size());
  for (const auto& b : bits) {
    Subpresheaf s;
    s.ambient = p;
    for (const auto& [obj, v] : p.sets) s.subsets[obj];
    for (std::size_t v = 0; v < g.verts.size(); ++v)
      if (b[v]) s.subsets[g.verts[v].first].push_back(g.verts[v].second);
    out.push_back(std::move(s));
  }
  return out;
}

const Subpresheaf& PowerObject::decode(const std::string& obj,
                                       const std::string& elem) const {
  auto it = table.find(obj);
  if (it == table.end()) throw ShapeError("power object: unknown stage '" + obj + "'");
  auto jt = it->second.find(elem);
  if (jt == it->second.end())
    throw ShapeError("power object: unknown element '" + elem + "' at '" + obj + "'");
  return jt->second;
}

const std::string& PowerObject::encode(const std::string& obj,
                                       const Subpresheaf& s) const {
  std::string nm = sub_name(s);
  auto it = table.find(obj);
  if (it == table.end() || !it->second.count(nm))
    throw ShapeError("power object: value at '" + obj +
                     "' is not a listed subobject: " + nm);
  return it->second.find(nm)->first;
}

PowerObject power_object(const Presheaf& z, std::size_t cap) {
  PowerObject po;
  po.of = z;
  po.carrier.base = z.base;
  po.carrier.name = "P(" + z.name + ")";

  for (const auto& x : z.base.objects) {
    po.yo.emplace(x, yoneda(z.base, x));
    po.stage.emplace(x, product(po.yo.at(x), z));
    std::vector<Subpresheaf> subs;
    try {
      subs = enumerate_subpresheaves(po.stage.at(x).object, cap);
    } catch (const ResourceCapError& e) {
      throw ResourceCapError("power object of '" + z.name + "' exceeds cap at object '" +
                                 x + "'",
                             x);
    }
    auto& names = po.carrier.sets[x];
    auto& tab = po.table[x];
    for (auto& s : subs) {
      std::string nm = sub_name(s);
      names.push_back(nm);
      tab.emplace(std::move(nm), std::move(s));
    }
  }

  for (const auto& m : z.base.morphisms) {
    auto& table = po.carrier.action[m.id];
    const std::string& from = m.cod;  // carrier(cod) -> carrier(dom)
    const std::string& to = m.dom;
    for (const auto& nm : po.carrier.at(from)) {
      const Subpresheaf& r = po.table.at(from).at(nm);
      Subpresheaf pb;
      pb.ambient = po.stage.at(to).object;
      for (const auto& [w, elems] : pb.ambient.sets) {
        auto& sub = pb.subsets[w];
        for (const auto& e : elems) {
          auto [u, zv] = split_pair(e);
          if (r.contains(w, pair_id(z.base.compose(m.id, u), zv))) sub.push_back(e);
        }
      }
      table[nm] = po.encode(to, pb);
    }
  }

  po.membership_ambient = product(z, po.carrier);
  po.membership.ambient = po.membership_ambient.object;
  for (const auto& x : z.base.objects) {
    auto& sub = po.membership.subsets[x];
    const std::string& idm = z.base.identity.at(x);
    for (const auto& e : po.membership_ambient.object.at(x)) {
      auto [zv, nm] = split_pair(e);
      if (po.table.at(x).at(nm).contains(x, pair_id(idm, zv))) sub.push_back(e);
    }
  }
  return po;
}

NatTrans classify(const Subpresheaf& n, const PowerObject& pz, const Presheaf& y) {
  ProductData prod = product(pz.of, y);
  if (!presheaf_equal(n.ambient, prod.object))
    throw ShapeError("classify: ambient is not the product of the power base with '" +
                     y.name + "'");
  NatTrans t;
  t.source = y;
  t.target = pz.carrier;
  for (const auto& c : y.base.objects) {
    auto& comp = t.components[c];
    for (const auto& yv : y.at(c)) {
      Subpresheaf r;
      r.ambient = pz.stage.at(c).object;
      for (const auto& [w, elems] : r.ambient.sets) {
        auto& sub = r.subsets[w];
        for (const auto& e : elems) {
          auto [u, zv] = split_pair(e);
          if (n.contains(w, pair_id(zv, y.act(u, yv)))) sub.push_back(e);
        }
      }
      comp[yv] = pz.encode(c, r);
    }
  }
  return t;
}

Subpresheaf classified(const NatTrans& np, const PowerObject& pz) {
  if (!presheaf_equal(np.target, pz.carrier))
    throw ShapeError("classified: arrow does not land in the power carrier");
  ProductData prod = product(pz.of, np.source);
  Subpresheaf s;
  s.ambient = prod.object;
  for (const auto& [c, elems] : prod.object.sets) {
    auto& sub = s.subsets[c];
    const std::string& idm = pz.of.base.identity.at(c);
    for (const auto& e : elems) {
      auto [zv, yv] = split_pair(e);
      if (pz.decode(c, np.at(c, yv)).contains(c, pair_id(idm, zv))) sub.push_back(e);
    }
  }
  return s;
}

NatTrans singleton_map(const Presheaf& x, const PowerObject& px) {
  if (!presheaf_equal(x, px.of))
    throw ShapeError("singleton_map: power object is for a different presheaf");
  NatTrans t;
  t.source = x;
  t.target = px.carrier;
  for (const auto& c : x.base.objects) {
    auto& comp = t.components[c];
    for (const auto& e : x.at(c)) {
      Subpresheaf r;
      r.ambient = px.stage.at(c).object;
      for (const auto& [w, elems] : r.ambient.sets) {
        auto& sub = r.subsets[w];
        for (const auto& pe : elems) {
          auto [u, zv] = split_pair(pe);
          if (zv == x.act(u, e)) sub.push_back(pe);
        }
      }
      comp[e] = px.encode(c, r);
    }
  }
  return t;
}

NatTrans inverse_image(const NatTrans& omega, const PowerObject& pb,
                       const PowerObject& pa) {
  if (!presheaf_equal(omega.source, pa.of) || !presheaf_equal(omega.target, pb.of))
    throw ShapeError("inverse_image: power objects do not match the arrow");
  NatTrans t;
  t.source = pb.carrier;
  t.target = pa.carrier;
  for (const auto& c : pb.of.base.objects) {
    auto& comp = t.components[c];
    for (const auto& nm : pb.carrier.at(c)) {
      const Subpresheaf& r = pb.decode(c, nm);
      Subpresheaf q;
      q.ambient = pa.stage.at(c).object;
      for (const auto& [w, elems] : q.ambient.sets) {
        auto& sub = q.subsets[w];
        for (const auto& e : elems) {
          auto [u, av] = split_pair(e);
          if (r.contains(w, pair_id(u, omega.at(w, av)))) sub.push_back(e);
        }
      }
      comp[nm] = pa.encode(c, q);
    }
  }
  return t;
}

NatTrans exists_along(const NatTrans& f, const PowerObject& py,
                      const PowerObject& px) {
  if (!presheaf_equal(f.source, py.of) || !presheaf_equal(f.target, px.of))
    throw ShapeError("exists_along: power objects do not match the arrow");
  NatTrans t;
  t.source = py.carrier;
  t.target = px.carrier;
  for (const auto& c : py.of.base.objects) {
    auto& comp = t.components[c];
    for (const auto& nm : py.carrier.at(c)) {
      const Subpresheaf& r = py.decode(c, nm);
      std::set<std::pair<std::string, std::string>> hit;
      for (const auto& [w, elems] : r.subsets)
        for (const auto& e : elems) {
          auto [u, yv] = split_pair(e);
          hit.insert({w, pair_id(u, f.at(w, yv))});
        }
      Subpresheaf q;
      q.ambient = px.stage.at(c).object;
      for (const auto& [w, elems] : q.ambient.sets) {
        auto& sub = q.subsets[w];
        for (const auto& e : elems)
          if (hit.count({w, e})) sub.push_back(e);
      }
      comp[nm] = px.encode(c, q);
    }
  }
  return t;
}

Subpresheaf forall_direct(const NatTrans& g, const Subpresheaf& a) {
  if (!presheaf_equal(a.ambient, g.source))
    throw ShapeError("forall_direct: subobject does not live in the domain");
  const Presheaf& src = g.source;
  const Presheaf& dst = g.target;

  // Fibers of g, indexed per stage, and a's members as sets: both scanned
  // many times below.
  std::map<std::string, std::map<std::string, std::vector<std::string>>> fiber;
  for (const auto& [obj, v] : src.sets) {
    auto& at_obj = fiber[obj];
    for (const auto& s : v) at_obj[g.at(obj, s)].push_back(s);
  }
  std::map<std::string, std::set<std::string>> members;
  for (const auto& [obj, v] : src.sets) members[obj];
  for (const auto& [obj, v] : a.subsets) members[obj].insert(v.begin(), v.end());

  return from_predicate(dst, [&](const std::string& c, const std::string& t) {
    for (const auto& u : dst.base.morphisms) {
      if (u.cod != c) continue;
      auto it = fiber.at(u.dom).find(dst.act(u.id, t));
      if (it == fiber.at(u.dom).end()) continue;
      const auto& in = members.at(u.dom);
      for (const auto& s : it->second)
        if (!in.count(s)) return false;
    }
    return true;
  });
}

Subpresheaf forall_via_power(const NatTrans& f, const Subpresheaf& a,
                             std::size_t cap) {
  if (!presheaf_equal(a.ambient, f.source))
    throw ShapeError("forall_via_power: subobject does not live in the domain");
  NatTrans i = sub_inclusion(a);
  PowerObject pa = power_object(i.source, cap);
  PowerObject py = power_object(f.source, cap);
  PowerObject px = power_object(f.target, cap);
  NatTrans ei = exists_along(i, pa, py);
  NatTrans graph_of_f = compose_nat(inverse_image(f, px, py), singleton_map(f.target, px));
  return preimage_subpresheaf(graph_of_f, image_subpresheaf(ei));
}

Subpresheaf forall_by_sweep(const NatTrans& g, const Subpresheaf& a,
                            std::size_t cap) {
  Subpresheaf best = empty_subpresheaf(g.target);
  for (const auto& b : enumerate_subpresheaves(g.target, cap))
    if (sub_leq(preimage_subpresheaf(g, b), a)) best = sub_union(best, b);
  return best;
}

Subpresheaf relative_power(const NatTrans& k, const PowerObject& pk,
                           std::size_t cap) {
  if (!presheaf_equal(k.source, pk.of))
    throw ShapeError("relative_power: power object is for a different domain");
  const Presheaf& q = k.target;
  PowerObject pq = power_object(q, cap);
  NatTrans sq = singleton_map(q, pq);
  NatTrans pki = inverse_image(k, pq, pk);

  ProductData prod = product(q, pk.carrier);
  Subpresheaf out;
  out.ambient = prod.object;
  for (const auto& c : q.base.objects) {
    auto& sub = out.subsets[c];
    for (const auto& e : prod.object.at(c)) {
      auto [qv, nm] = split_pair(e);
      const Subpresheaf& s = pk.decode(c, nm);
      const Subpresheaf& fiber = pk.decode(c, pki.at(c, sq.at(c, qv)));
      bool via_equalizer = sub_equal(sub_intersection(s, fiber), s);

      bool direct = true;
      for (const auto& [w, elems] : s.subsets)
        for (const auto& se : elems) {
          auto [u, xv] = split_pair(se);
          if (k.at(w, xv) != q.act(u, qv)) direct = false;
        }
      if (via_equalizer != direct)
        throw std::logic_error("relative_power: equalizer and fiber conditions disagree");
      if (via_equalizer) sub.push_back(e);
    }
  }
  return out;
}

}  // namespace fintop
