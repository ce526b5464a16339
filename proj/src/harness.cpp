#include "fintop/harness.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "fintop/errors.hpp"

namespace fintop {

namespace {

std::string render_components(const NatTrans& t) {
  std::ostringstream out;
  for (const auto& [obj, table] : t.components) {
    out << obj << "{";
    for (const auto& [e, v] : table) out << e << ">" << v << ";";
    out << "}";
  }
  return out.str();
}

}  // namespace

NatTrans classify_element(const Presheaf& q, const std::string& x,
                          const std::string& e) {
  if (!q.has_elem(x, e))
    throw ShapeError("classify_element: no element \"" + e + "\" at \"" + x +
                     "\"");
  NatTrans t;
  t.source = yoneda(q.base, x);
  t.target = q;
  for (const auto& w : q.base.objects) {
    auto& table = t.components[w];
    for (const auto& g : t.source.at(w)) table[g] = q.act(g, e);
  }
  return t;
}

SliceObject pullback_functor(const NatTrans& f, const SliceObject& k) {
  PullbackData pb = pullback(k.structural, f);
  return {pb.object, pb.proj2};
}

NatTrans pullback_functor_map(const NatTrans& f, const SliceObject& from,
                              const SliceObject& to, const NatTrans& m) {
  SliceObject pf = pullback_functor(f, from);
  SliceObject pt = pullback_functor(f, to);
  NatTrans out;
  out.source = pf.total;
  out.target = pt.total;
  for (const auto& obj : f.source.base.objects) {
    auto& table = out.components[obj];
    for (const auto& pair : pf.total.at(obj)) {
      auto [y, p] = split_pair(pair);
      table[pair] = pair_id(m.at(obj, y), p);
    }
  }
  return out;
}

std::vector<NatTrans> slice_homs(const SliceObject& a, const SliceObject& b) {
  const NatTrans& sa = a.structural;
  const NatTrans& sb = b.structural;
  return enumerate_nat_trans(
      a.total, b.total,
      [&](const std::string& obj, const std::string& elem,
          const std::string& image) {
        return sb.at(obj, image) == sa.at(obj, elem);
      });
}

std::optional<NatTrans> iso_in_slice(const SliceObject& a,
                                     const SliceObject& b) {
  if (!same_category(a.total.base, b.total.base))
    throw ShapeError("iso_in_slice: different base categories");
  if (!presheaf_equal(a.structural.target, b.structural.target))
    throw ShapeError("iso_in_slice: different slice codomains");
  const FinCategory& c = a.total.base;
  for (const auto& obj : c.objects)
    if (a.total.at(obj).size() != b.total.at(obj).size()) return std::nullopt;

  // Stage-by-stage backtracking over fiber-respecting bijections; after
  // each completed stage the commuting squares with earlier stages are
  // checked, so dead branches are cut early.
  std::map<std::string, std::map<std::string, std::string>> assign;
  std::map<std::string, std::set<std::string>> used;

  auto stage_consistent = [&](std::size_t done) {
    const std::string& just = c.objects[done];
    for (const auto& m : c.morphisms) {
      if (c.is_identity(m.id)) continue;
      if (m.dom != just && m.cod != just) continue;
      if (c.object_index(m.dom) > done || c.object_index(m.cod) > done)
        continue;
      for (const auto& e : a.total.at(m.cod)) {
        const std::string& lhs = assign[m.dom].at(a.total.act(m.id, e));
        if (lhs != b.total.act(m.id, assign[m.cod].at(e))) return false;
      }
    }
    return true;
  };

  std::function<bool(std::size_t, std::size_t)> search =
      [&](std::size_t oi, std::size_t ei) -> bool {
    if (oi == c.objects.size()) return true;
    const std::string& obj = c.objects[oi];
    const auto& elems = a.total.at(obj);
    if (ei == elems.size()) {
      if (!stage_consistent(oi)) return false;
      return search(oi + 1, 0);
    }
    const std::string& e = elems[ei];
    for (const auto& img : b.total.at(obj)) {
      if (used[obj].count(img)) continue;
      if (b.structural.at(obj, img) != a.structural.at(obj, e)) continue;
      assign[obj][e] = img;
      used[obj].insert(img);
      if (search(oi, ei + 1)) return true;
      assign[obj].erase(e);
      used[obj].erase(img);
    }
    return false;
  };

  if (!search(0, 0)) return std::nullopt;
  NatTrans t;
  t.source = a.total;
  t.target = b.total;
  t.components = assign;
  for (const auto& obj : c.objects) t.components.try_emplace(obj);
  if (!validate_nat_trans(t).ok())
    throw std::logic_error("iso_in_slice produced a non-natural map");
  return t;
}

TestFamily default_test_family(const Presheaf& q) {
  TestFamily fam;
  for (const auto& x : q.base.objects)
    for (const auto& e : q.at(x)) {
      NatTrans k = classify_element(q, x, e);
      Presheaf rep = k.source;
      fam.objects.emplace_back("y(" + x + ")@" + e,
                               SliceObject{rep, std::move(k)});
    }
  std::size_t reps = fam.objects.size();
  for (std::size_t i = 0; i < reps; ++i)
    for (std::size_t j = i; j < reps; ++j) {
      PullbackData pb = pullback(fam.objects[i].second.structural,
                                 fam.objects[j].second.structural);
      NatTrans structural =
          compose_nat(fam.objects[i].second.structural, pb.proj1);
      fam.objects.emplace_back(
          pair_id(fam.objects[i].first, fam.objects[j].first),
          SliceObject{pb.object, std::move(structural)});
    }
  for (std::size_t i = 0; i < fam.objects.size(); ++i)
    for (std::size_t j = 0; j < fam.objects.size(); ++j)
      for (NatTrans& m :
           slice_homs(fam.objects[i].second, fam.objects[j].second))
        fam.arrows.push_back({i, j, std::move(m)});
  return fam;
}

AdjunctionReport verify_adjunction(const NatTrans& f, const NatTrans& h,
                                   const SliceObject& candidate,
                                   const TestFamily& family, std::size_t cap) {
  if (!presheaf_equal(h.target, f.source))
    throw ShapeError("verify_adjunction: h must land in f's source");
  if (!presheaf_equal(candidate.structural.target, f.target))
    throw ShapeError("verify_adjunction: candidate must live over f's target");

  AdjunctionReport rep;
  ElementaryDP ref = dependent_product_elementary(f, h, cap);
  SliceObject ref_slice{ref.carrier, ref.structural};
  std::optional<NatTrans> onto = iso_in_slice(ref_slice, candidate);
  if (!onto)
    rep.notes.push_back(
        "candidate is not isomorphic to the reference construction over the "
        "base");

  SliceObject hobj{h.source, h};
  bool counted_mismatch = false;
  struct PerObject {
    std::vector<NatTrans> alphas;
    std::vector<NatTrans> theta;  // transposed images in the candidate
  };
  std::vector<PerObject> per(family.objects.size());

  for (std::size_t i = 0; i < family.objects.size(); ++i) {
    const auto& [id, k] = family.objects[i];
    SliceObject fk = pullback_functor(f, k);
    per[i].alphas = slice_homs(fk, hobj);
    std::vector<NatTrans> homs_q = slice_homs(k, candidate);

    AdjunctionRecord rec;
    rec.k_id = id;
    rec.hom_over_p = per[i].alphas.size();
    rec.hom_over_q = homs_q.size();
    if (rec.hom_over_p != rec.hom_over_q && !counted_mismatch) {
      counted_mismatch = true;
      rep.notes.push_back("cardinality mismatch at " + id + ": " +
                          std::to_string(rec.hom_over_p) + " vs " +
                          std::to_string(rec.hom_over_q));
    }

    if (onto) {
      bool ok = rec.hom_over_p == rec.hom_over_q;
      std::set<std::string> images;
      for (const NatTrans& alpha : per[i].alphas) {
        PairIntoCarrier tr = transpose_to_beta(ref, k.structural, alpha);
        SectionOverP back = transpose_to_alpha(ref, tr.to_carrier);
        if (!nat_equal(back.alpha, alpha)) ok = false;
        NatTrans into = compose_nat(*onto, tr.to_carrier);
        if (!images.insert(render_components(into)).second) ok = false;
        bool member = false;
        for (const NatTrans& cand : homs_q)
          if (nat_equal(cand, into)) {
            member = true;
            break;
          }
        if (!member) ok = false;
        per[i].theta.push_back(std::move(into));
      }
      rec.bijection_ok = ok;
    }
    rep.records.push_back(std::move(rec));
  }

  std::vector<bool> natural(family.objects.size(), onto.has_value());
  if (onto) {
    for (const auto& arrow : family.arrows) {
      const SliceObject& ka = family.objects[arrow.from].second;
      const SliceObject& kb = family.objects[arrow.to].second;
      NatTrans fm = pullback_functor_map(f, ka, kb, arrow.m);
      for (std::size_t ai = 0; ai < per[arrow.to].alphas.size(); ++ai) {
        NatTrans pulled = compose_nat(per[arrow.to].alphas[ai], fm);
        PairIntoCarrier tr = transpose_to_beta(ref, ka.structural, pulled);
        NatTrans lhs = compose_nat(*onto, tr.to_carrier);
        NatTrans rhs = compose_nat(per[arrow.to].theta[ai], arrow.m);
        if (!nat_equal(lhs, rhs)) {
          natural[arrow.from] = false;
          natural[arrow.to] = false;
          if (rep.notes.empty())
            rep.notes.push_back("naturality failure along an arrow " +
                                family.objects[arrow.from].first + " -> " +
                                family.objects[arrow.to].first);
        }
      }
    }
  }

  rep.pass = true;
  for (std::size_t i = 0; i < rep.records.size(); ++i) {
    rep.records[i].naturality_ok = natural[i];
    if (rep.records[i].hom_over_p != rep.records[i].hom_over_q ||
        !rep.records[i].bijection_ok || !rep.records[i].naturality_ok)
      rep.pass = false;
  }
  return rep;
}

namespace {

const NatTrans& fixture_arrow(const Fixture& fx, const std::string& name) {
  auto it = fx.arrows.find(name);
  if (it == fx.arrows.end())
    throw ParseError("fixture \"" + fx.name + "\" has no arrow named \"" +
                     name + "\"");
  return it->second;
}

std::string size_summary(const Presheaf& p) {
  std::ostringstream out;
  for (const auto& obj : p.base.objects) {
    out << " " << obj << "=" << p.at(obj).size();
  }
  return out.str();
}

void adjunction_lines(CheckRun& run, const std::string& prefix,
                      const AdjunctionReport& rep) {
  for (const auto& rec : rep.records) {
    bool ok = rec.hom_over_p == rec.hom_over_q && rec.bijection_ok &&
              rec.naturality_ok;
    std::ostringstream out;
    out << prefix << " k=" << rec.k_id << " homP=" << rec.hom_over_p
        << " homQ=" << rec.hom_over_q
        << " bijection=" << (rec.bijection_ok ? "ok" : "FAIL")
        << " naturality=" << (rec.naturality_ok ? "ok" : "FAIL");
    run.lines.push_back({ok, out.str()});
  }
  for (const auto& note : rep.notes)
    run.lines.push_back({false, prefix + " note: " + note});
  run.lines.push_back(
      {rep.pass, prefix + " verdict=" + (rep.pass ? "pass" : "fail")});
}

std::int64_t eval_query(const Fixture& fx, const std::string& query,
                        const Presheaf& carrier, std::size_t cap) {
  auto open = query.find('(');
  if (open == std::string::npos || query.back() != ')')
    throw ParseError("fixture \"" + fx.name + "\": unreadable query \"" +
                     query + "\"");
  std::string head = query.substr(0, open);
  std::string args = query.substr(open + 1, query.size() - open - 2);
  if (head == "carrier_size") {
    if (!carrier.base.has_object(args))
      throw ParseError("fixture \"" + fx.name + "\": query object \"" + args +
                       "\" is not in the base");
    return static_cast<std::int64_t>(carrier.at(args).size());
  }
  if (head == "sheaf_size") {
    auto comma = args.find(',');
    if (comma == std::string::npos)
      throw ParseError("fixture \"" + fx.name + "\": unreadable query \"" +
                       query + "\"");
    std::string pname = args.substr(0, comma);
    std::string obj = args.substr(comma + 1);
    if (!fx.has_topology)
      throw ParseError("fixture \"" + fx.name +
                       "\": sheaf_size query without a topology");
    auto it = fx.presheaves.find(pname);
    if (it == fx.presheaves.end())
      throw ParseError("fixture \"" + fx.name + "\": no presheaf named \"" +
                       pname + "\"");
    Sheafification sh = sheafify(it->second, fx.topology);
    if (!sh.sheaf.base.has_object(obj))
      throw ParseError("fixture \"" + fx.name + "\": query object \"" + obj +
                       "\" is not in the base");
    return static_cast<std::int64_t>(sh.sheaf.at(obj).size());
  }
  throw ParseError("fixture \"" + fx.name + "\": unknown query \"" + query +
                   "\"");
  (void)cap;
}

}  // namespace

CheckRun run_adjunction_checks(const Fixture& fx, std::size_t cap) {
  const NatTrans& f = fixture_arrow(fx, "f");
  const NatTrans& h = fixture_arrow(fx, "h");
  CheckRun run;
  TestFamily fam = default_test_family(f.target);
  ElementaryDP ed = dependent_product_elementary(f, h, cap);
  KanDP kd = dependent_product_kan(f, h);
  std::vector<std::pair<std::string, SliceObject>> methods;
  methods.emplace_back("elementary", SliceObject{ed.carrier, ed.structural});
  methods.emplace_back("kan", SliceObject{kd.total, kd.structural});
  for (const auto& [method, slice] : methods) {
    AdjunctionReport rep = verify_adjunction(f, h, slice, fam, cap);
    adjunction_lines(run, "[" + fx.name + "] adjunction[" + method + "]", rep);
  }
  return run;
}

CheckRun run_equivalence_checks(const Fixture& fx, bool all_methods,
                                std::size_t cap) {
  const NatTrans& f = fixture_arrow(fx, "f");
  const NatTrans& h = fixture_arrow(fx, "h");
  CheckRun run;
  const std::string tag = "[" + fx.name + "] equivalence";

  ElementaryDP ed = dependent_product_elementary(f, h, cap);
  KanDP kd = dependent_product_kan(f, h);
  SliceObject se{ed.carrier, ed.structural};
  SliceObject sk{kd.total, kd.structural};
  run.lines.push_back(
      {true, tag + " carrier[elementary]" + size_summary(ed.carrier)});
  run.lines.push_back({true, tag + " carrier[kan]" + size_summary(kd.total)});

  std::optional<NatTrans> iso = iso_in_slice(se, sk);
  run.lines.push_back({iso.has_value(), tag + " iso(elementary,kan)=" +
                                            (iso ? "found" : "MISSING")});

  if (all_methods) {
    if (!fx.has_topology) {
      run.lines.push_back({true, tag + " sheaf method skipped (no topology)"});
    } else {
      SheafDP sd = dependent_product_sheaf(f, h, fx.topology,
                                           SheafDpBackend::kan, cap);
      run.lines.push_back(
          {true, tag + " carrier[sheaf]" + size_summary(sd.total.total)});
      if (presheaf_equal(sd.total.structural.target, f.target)) {
        std::optional<NatTrans> iso2 = iso_in_slice(sd.total, sk);
        run.lines.push_back({iso2.has_value(), tag + " iso(sheaf,kan)=" +
                                                   (iso2 ? "found" : "MISSING")});
      } else {
        run.lines.push_back(
            {true, tag + " sheaf method lives over the sheafified base"});
      }
    }
  }

  for (const auto& ev : fx.expected) {
    std::int64_t got = eval_query(fx, ev.query, kd.total, cap);
    std::ostringstream out;
    out << "[" << fx.name << "] expected " << ev.query << "=" << ev.value
        << " computed=" << got;
    run.lines.push_back({got == ev.value, out.str()});
  }
  return run;
}

CheckRun run_factorization_checks(const Fixture& fx, std::size_t cap) {
  const NatTrans& f = fixture_arrow(fx, "f");
  const NatTrans& h = fixture_arrow(fx, "h");
  CheckRun run;
  ElementaryDP ed = dependent_product_elementary(f, h, cap);
  FactorizationReport rep = verify_factorization_clauses(ed);
  std::ostringstream out;
  out << "[" << fx.name << "] factorization stage-elements=" << rep.checked
      << " mismatches=" << rep.mismatches.size();
  run.lines.push_back({rep.ok(), out.str()});
  for (std::size_t i = 0; i < rep.mismatches.size() && i < 5; ++i)
    run.lines.push_back(
        {false, "[" + fx.name + "] factorization mismatch: " + rep.mismatches[i]});
  return run;
}

CheckRun run_forall_checks(const Fixture& fx, std::size_t cap) {
  CheckRun run;
  for (const std::string name : {"f", "h"}) {
    const NatTrans& g = fixture_arrow(fx, name);
    const std::string tag = "[" + fx.name + "] forall[" + name + "]";
    std::vector<Subpresheaf> subs;
    try {
      subs = enumerate_subpresheaves(g.source, 256);
    } catch (const ResourceCapError&) {
      run.lines.push_back(
          {true, tag + " skipped (more than 256 subobjects at the source)"});
      continue;
    }
    bool sweep_available = true;
    try {
      enumerate_subpresheaves(g.target, 256);
    } catch (const ResourceCapError&) {
      sweep_available = false;
    }
    std::size_t power_bad = 0, sweep_bad = 0;
    for (const Subpresheaf& a : subs) {
      Subpresheaf direct = forall_direct(g, a);
      if (!sub_equal(direct, forall_via_power(g, a, cap))) ++power_bad;
      if (sweep_available && !sub_equal(direct, forall_by_sweep(g, a, cap)))
        ++sweep_bad;
    }
    std::ostringstream out;
    out << tag << " subobjects=" << subs.size()
        << " via-power=" << (power_bad == 0 ? "ok" : "FAIL");
    if (sweep_available)
      out << " sweep=" << (sweep_bad == 0 ? "ok" : "FAIL");
    else
      out << " sweep=skipped";
    run.lines.push_back({power_bad == 0 && sweep_bad == 0, out.str()});
  }
  return run;
}

CheckRun run_sheaf_checks(const Fixture& fx, std::size_t cap) {
  const NatTrans& f = fixture_arrow(fx, "f");
  const NatTrans& h = fixture_arrow(fx, "h");
  CheckRun run;
  const std::string tag = "[" + fx.name + "]";
  GrothTopology j =
      fx.has_topology ? fx.topology : trivial_topology(fx.category);
  std::string jname = fx.has_topology ? j.name : "trivial";

  run.lines.push_back({validate_topology(j, cap).ok(),
                       tag + " topology=" + jname + " axioms=" +
                           (validate_topology(j, cap).ok() ? "pass" : "FAIL")});

  std::vector<std::pair<std::string, const Presheaf*>> named = {
      {"P", &f.source}, {"Q", &f.target}, {"H", &h.source}};
  std::map<std::string, GrothTopology> induced;
  for (const auto& [label, p] : named) {
    induced.emplace(label, induced_topology(*p, j, cap));
    bool ok = validate_topology(induced.at(label), cap).ok();
    run.lines.push_back(
        {ok, tag + " induced[" + label + "] axioms=" + (ok ? "pass" : "FAIL")});
  }

  {
    bool ok =
        check_comorphism(elements_functor(f), induced.at("P"), induced.at("Q"))
            .ok();
    run.lines.push_back(
        {ok, tag + " comorphism[f]=" + (ok ? "pass" : "FAIL")});
    bool ok2 =
        check_comorphism(elements_functor(h), induced.at("H"), induced.at("P"))
            .ok();
    run.lines.push_back(
        {ok2, tag + " comorphism[h]=" + (ok2 ? "pass" : "FAIL")});
  }

  for (const auto& [label, p] : named) {
    bool sheaf = is_sheaf(*p, j).ok();
    run.lines.push_back(
        {true, tag + " sheaf(" + label + ")=" + (sheaf ? "yes" : "no")});
  }

  for (const auto& [bname, backend] :
       std::vector<std::pair<std::string, SheafDpBackend>>{
           {"kan", SheafDpBackend::kan},
           {"elementary", SheafDpBackend::elementary}}) {
    SquareReport sr = subtopos_square_check(f, h, j, backend, cap);
    if (sr.status == "pass") {
      run.lines.push_back({true, tag + " square[" + bname + "]=pass"});
    } else if (sr.status == "precondition_unmet") {
      std::string what;
      for (const auto& n : sr.notes) what += (what.empty() ? "" : "; ") + n;
      run.lines.push_back(
          {true, tag + " square[" + bname + "]=skipped (" + what + ")"});
    } else {
      std::string what;
      for (const auto& n : sr.notes) what += (what.empty() ? "" : "; ") + n;
      run.lines.push_back(
          {false, tag + " square[" + bname + "]=FAIL (" + what + ")"});
    }
  }
  return run;
}

}  // namespace fintop
