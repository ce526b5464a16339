#include "fintop/dp_sites.hpp"

#include <sstream>

#include "fintop/errors.hpp"

namespace fintop {

ElementsPresheaf r_functor(const NatTrans& h) {
  ElementsPresheaf out;
  out.elements = elements_category(h.target);
  Presheaf& v = out.value;
  v.base = out.elements.cat;
  v.name = "fib(" + h.source.name + ")";

  for (const auto& node : v.base.objects) {
    const auto& [x, p] = out.elements.labels.at(node);
    auto& fiber = v.sets[node];
    for (const auto& e : h.source.at(x))
      if (h.at(x, e) == p) fiber.push_back(e);
  }
  for (const auto& m : v.base.morphisms) {
    auto& table = v.action[m.id];
    const std::string& g = out.elements.proj.on_morphism(m.id);
    for (const auto& e : v.at(m.cod)) table[e] = h.source.act(g, e);
  }
  return out;
}

SliceObject l_functor(const Presheaf& q, const ElementsCategory& intq,
                      const Presheaf& w) {
  if (!same_category(w.base, intq.cat))
    throw ShapeError("l_functor: presheaf does not live on the given elements");
  SliceObject out;
  Presheaf& t = out.total;
  t.base = q.base;
  t.name = "total(" + w.name + ")";

  for (const auto& x : q.base.objects) {
    auto& v = t.sets[x];
    for (const auto& qe : q.at(x))
      for (const auto& we : w.at(intq.node(x, qe))) v.push_back(pair_id(qe, we));
  }
  for (const auto& u : q.base.morphisms) {
    auto& table = t.action[u.id];
    for (const auto& e : t.at(u.cod)) {
      auto [qe, we] = split_pair(e);
      const std::string& qr = q.act(u.id, qe);
      std::string wr;
      if (q.base.is_identity(u.id)) {
        wr = we;
      } else {
        wr = w.act(pair_id(u.id, intq.node(u.cod, qe)), we);
      }
      table[e] = pair_id(qr, wr);
    }
  }

  out.structural.source = t;
  out.structural.target = q;
  for (const auto& [x, v] : t.sets) {
    auto& comp = out.structural.components[x];
    for (const auto& e : v) comp[e] = split_pair(e).first;
  }
  return out;
}

namespace {

struct CommaLimit {
  CommaCategory comma;
  std::vector<std::map<std::string, std::string>> families;
  std::vector<std::string> names;                  // per family
  std::map<std::string, std::size_t> name_index;   // name -> position
};

std::string family_name(const ElementsCategory& intq, const ElementsPresheaf& v,
                        const CommaCategory& cc,
                        const std::map<std::string, std::string>& fam) {
  // Entries keyed by (base arrow under the probe, element of P at its
  // source); ':' never occurs inside an id, so the rendering is
  // unambiguous.
  std::map<std::pair<std::string, std::string>, std::string> entries;
  for (const auto& [node, x] : fam) {
    const auto& [g, a] = cc.labels.at(node);
    const std::string& gbase = intq.proj.on_morphism(g);
    const std::string& p = v.elements.labels.at(a).second;
    entries[{gbase, p}] = x;
  }
  std::ostringstream os;
  os << "[";
  bool first = true;
  for (const auto& [key, x] : entries) {
    if (!first) os << ";";
    first = false;
    os << key.first << ":" << key.second << ":" << x;
  }
  os << "]";
  return os.str();
}

}  // namespace

Presheaf ran_along_elements(const NatTrans& f, const ElementsPresheaf& v) {
  ElementsCategory intp = elements_category(f.source);
  if (!same_category(v.elements.cat, intp.cat))
    throw ShapeError("ran_along_elements: presheaf does not live on the elements of the domain");
  ElementsCategory intq = elements_category(f.target);
  FinFunctor probe = opposite_functor(elements_functor(f));

  Presheaf out;
  out.base = intq.cat;
  out.name = "ran(" + v.value.name + ")";

  std::map<std::string, CommaLimit> at;
  for (const auto& d : intq.cat.objects) {
    CommaLimit& cl = at[d];
    cl.comma = build_comma(d, probe);
    SetDiagram dia;
    dia.shape = cl.comma.base;
    for (const auto& n : dia.shape.objects)
      dia.sets[n] = v.value.at(cl.comma.projection.on_object(n));
    for (const auto& m : dia.shape.morphisms)
      dia.action[m.id] = v.value.action.at(cl.comma.projection.on_morphism(m.id));
    cl.families = limit_of_sets(dia);

    auto& names = out.sets[d];
    for (const auto& fam : cl.families) {
      std::string nm = family_name(intq, v, cl.comma, fam);
      cl.name_index[nm] = cl.names.size();
      cl.names.push_back(nm);
      names.push_back(std::move(nm));
    }
  }

  for (const auto& e : intq.cat.morphisms) {
    auto& table = out.action[e.id];
    const CommaLimit& src = at.at(e.cod);   // families over the target node
    const CommaLimit& dst = at.at(e.dom);   // restricted families
    for (std::size_t i = 0; i < src.families.size(); ++i) {
      std::map<std::string, std::string> restricted;
      for (const auto& n : dst.comma.base.objects) {
        const auto& [g, a] = dst.comma.labels.at(n);
        const std::string& composite = intq.cat.compose(e.id, g);
        restricted[n] = src.families[i].at(pair_id(composite, a));
      }
      table[src.names[i]] = family_name(intq, v, dst.comma, restricted);
    }
  }
  return out;
}

KanDP dependent_product_kan(const NatTrans& f, const NatTrans& h) {
  if (!presheaf_equal(f.source, h.target))
    throw ShapeError("dependent_product_kan: h must land in the domain of f");
  KanDP k;
  k.fibers = r_functor(h);
  k.intq = elements_category(f.target);
  k.ran = ran_along_elements(f, k.fibers);
  SliceObject so = l_functor(f.target, k.intq, k.ran);
  k.total = so.total;
  k.total.name = "dp(" + h.source.name + "->" + f.source.name + "->" +
                 f.target.name + ")";
  k.structural = so.structural;
  k.structural.source = k.total;
  return k;
}

}  // namespace fintop
