#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "fintop/errors.hpp"
#include "fintop/sheaves.hpp"
#include "test_data.hpp"

using namespace fintop;
namespace td = fintop::testdata;

namespace {

// Covers on the interval: everything at 0, the sieve generated by u and
// the maximal sieve at 1. The sheaves for it are exactly the presheaves
// whose u-action is a bijection.
GrothTopology dense_interval(const FinCategory& c) {
  GrothTopology j{c, "dense", {}};
  j.covers["o0"] = {maximal_sieve(c, "o0")};
  j.covers["o1"] = {maximal_sieve(c, "o1"),
                    sieve_generated_by(c, "o1", {"u"})};
  return j;
}

// u-action merges two points: not separated, hence not a sheaf.
Presheaf glued_pair(const FinCategory& c) {
  return make_presheaf(c, "N", {{"o1", {"n0", "n1"}}, {"o0", {"m0"}}},
                       {{"u", {{"n0", "m0"}, {"n1", "m0"}}}});
}

// u-action misses a point: no amalgamation for the family at m1.
Presheaf missing_point(const FinCategory& c) {
  return make_presheaf(c, "M", {{"o1", {"n0"}}, {"o0", {"m0", "m1"}}},
                       {{"u", {{"n0", "m0"}}}});
}

}  // namespace

TEST_CASE("sieves on the interval and the graph base") {
  auto c = td::interval_cat();

  Sieve mx = maximal_sieve(c, "o1");
  CHECK(mx.arrows == std::set<std::string>{"id_o1", "u"});
  CHECK(sieve_valid(c, mx));
  CHECK(sieve_name(mx) == "{id_o1,u}");

  Sieve gen = sieve_generated_by(c, "o1", {"u"});
  CHECK(gen.arrows == std::set<std::string>{"u"});
  CHECK(sieve_valid(c, gen));

  Sieve pulled = pullback_sieve(c, gen, "u");
  CHECK(sieve_equal(pulled, maximal_sieve(c, "o0")));

  Sieve bad{"o1", {"id_o1"}};
  CHECK_FALSE(sieve_valid(c, bad));

  auto all = enumerate_sieves(c, "o1");
  REQUIRE(all.size() == 3);
  CHECK(all[0].arrows.empty());
  CHECK(all[1].arrows == std::set<std::string>{"u"});
  CHECK(all[2].arrows.size() == 2);

  auto g = td::graph_base();
  CHECK(enumerate_sieves(g, "E").size() == 5);
  CHECK(enumerate_sieves(g, "V").size() == 2);
  CHECK_THROWS_AS(enumerate_sieves(g, "E", 4), ResourceCapError);
}

TEST_CASE("topology validation catches each axiom") {
  auto c = td::interval_cat();
  auto g = td::graph_base();

  CHECK(validate_topology(trivial_topology(c)).ok());
  CHECK(validate_topology(trivial_topology(g)).ok());
  CHECK(validate_topology(dense_interval(c)).ok());

  GrothTopology no_max = dense_interval(c);
  no_max.covers["o0"].clear();
  auto r1 = validate_topology(no_max);
  REQUIRE_FALSE(r1.ok());
  CHECK(r1.violations[0].law == "maximal");
  CHECK(r1.violations[0].witness[0] == "o0");

  GrothTopology unstable{g, "unstable", {}};
  unstable.covers["E"] = {maximal_sieve(g, "E"),
                          sieve_generated_by(g, "E", {"s"})};
  unstable.covers["V"] = {maximal_sieve(g, "V")};
  auto r2 = validate_topology(unstable);
  REQUIRE_FALSE(r2.ok());
  bool saw_stability = false;
  for (const auto& v : r2.violations)
    if (v.law == "stability") saw_stability = true;
  CHECK(saw_stability);

  GrothTopology intrans = dense_interval(c);
  intrans.covers["o0"].push_back(Sieve{"o0", {}});
  auto r3 = validate_topology(intrans);
  REQUIRE_FALSE(r3.ok());
  bool saw_transitivity = false;
  for (const auto& v : r3.violations) {
    if (v.law != "transitivity") continue;
    saw_transitivity = true;
    CHECK(v.witness[0] == "o1");
    CHECK(v.witness[2] == "{}");
  }
  CHECK(saw_transitivity);
}

TEST_CASE("saturation closes generators under the axioms") {
  auto c = td::interval_cat();
  auto j = saturate_topology(c, "dense",
                             {{"o1", {sieve_generated_by(c, "o1", {"u"})}}});
  CHECK(validate_topology(j).ok());
  CHECK(j.covers.at("o1").size() == 2);
  CHECK(j.covers.at("o0").size() == 1);
  CHECK(j.covers_with("o1", sieve_generated_by(c, "o1", {"u"})));
  CHECK(j.covers_with("o1", maximal_sieve(c, "o1")));

  // On the graph base, covering E by s alone forces the empty sieve to
  // cover V (pullback along t), which then forces every sieve everywhere.
  auto g = td::graph_base();
  auto k = saturate_topology(g, "collapse",
                             {{"E", {sieve_generated_by(g, "E", {"s"})}}});
  CHECK(validate_topology(k).ok());
  CHECK(k.covers.at("E").size() == 5);
  CHECK(k.covers.at("V").size() == 2);
}

TEST_CASE("induced topology on categories of elements") {
  auto c = td::interval_cat();
  auto d = td::interval_family();
  auto j = dense_interval(c);

  auto jp = induced_topology(d.P, j);
  CHECK(validate_topology(jp).ok());
  CHECK(jp.covers.at("(o1,p1)").size() == 2);
  CHECK(jp.covers.at("(o1,p2)").size() == 2);
  CHECK(jp.covers.at("(o0,r1)").size() == 1);
  CHECK(jp.covers.at("(o0,r2)").size() == 1);
  bool has_proper = false;
  for (const auto& s : jp.covers.at("(o1,p1)"))
    if (s.arrows == std::set<std::string>{"(u,(o1,p1))"}) has_proper = true;
  CHECK(has_proper);

  auto j1 = induced_topology(terminal_presheaf(c), j);
  CHECK(validate_topology(j1).ok());
  CHECK(j1.covers.at("(o1,*)").size() == 2);
  CHECK(j1.covers.at("(o0,*)").size() == 1);

  auto jt = induced_topology(d.P, trivial_topology(c));
  for (const auto& [node, sieves] : jt.covers) {
    CHECK(sieves.size() == 1);
    CHECK(sieve_equal(sieves[0], maximal_sieve(jt.base, node)));
  }
}

TEST_CASE("elements functors are comorphisms of sites") {
  auto c = td::interval_cat();
  auto d = td::interval_family();
  auto j = dense_interval(c);

  CHECK(check_comorphism(identity_functor(c), j, j).ok());

  auto jp = induced_topology(d.P, j);
  auto jq = induced_topology(d.Q, j);
  auto jh = induced_topology(d.H, j);
  CHECK(check_comorphism(elements_functor(d.f), jp, jq).ok());
  CHECK(check_comorphism(elements_functor(d.h), jh, jp).ok());

  auto g = td::graph_family();
  auto tg = trivial_topology(td::graph_base());
  CHECK(check_comorphism(elements_functor(g.h),
                         induced_topology(g.H, tg),
                         induced_topology(g.P, tg))
            .ok());

  FinFunctor at_one{td::terminal_cat(), c, {{"pt", "o1"}},
                    {{"id_pt", "id_o1"}}};
  CHECK(validate_functor(at_one).ok());
  auto r = check_comorphism(at_one, trivial_topology(td::terminal_cat()), j);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].law == "covering-lifting");
  CHECK(r.violations[0].witness[0] == "pt");
  CHECK(r.violations[0].witness[1] == "{u}");
}

TEST_CASE("matching families and the sheaf condition") {
  auto c = td::interval_cat();
  auto d = td::interval_family();
  auto j = dense_interval(c);
  Sieve gen = sieve_generated_by(c, "o1", {"u"});

  auto fams = matching_families(d.P, gen);
  REQUIRE(fams.size() == 2);
  CHECK(family_render(fams[0]) == "[u:r1]");
  auto am = amalgamations(d.P, gen, fams[0]);
  REQUIRE(am.size() == 1);
  CHECK(am[0] == "p1");

  auto maxfams = matching_families(d.P, maximal_sieve(c, "o1"));
  CHECK(maxfams.size() == 2);

  CHECK(is_sheaf(d.P, j).ok());
  CHECK(is_sheaf(d.Q, j).ok());
  CHECK(is_sheaf(d.H, j).ok());
  CHECK(is_sheaf(terminal_presheaf(c), j).ok());

  Presheaf n = glued_pair(c);
  auto rn = is_sheaf(n, j);
  REQUIRE(rn.violations.size() == 1);
  CHECK(rn.violations[0].law == "gluing-uniqueness");
  CHECK(rn.violations[0].witness[2] == "[u:m0]");

  Presheaf m = missing_point(c);
  auto rm = is_sheaf(m, j);
  REQUIRE(rm.violations.size() == 1);
  CHECK(rm.violations[0].law == "gluing-existence");
  CHECK(rm.violations[0].witness[2] == "[u:m1]");

  CHECK(is_sheaf(n, trivial_topology(c)).ok());
  CHECK(is_sheaf(m, trivial_topology(c)).ok());
}

TEST_CASE("sheafification by the plus construction") {
  auto c = td::interval_cat();
  auto j = dense_interval(c);
  Presheaf n = glued_pair(c);

  auto an = sheafify(n, j);
  CHECK_FALSE(an.already_sheaf);
  REQUIRE(an.stages.size() == 2);
  CHECK(an.stages[0].plus.at("o1") ==
        std::vector<std::string>{"[id_o1:n0;u:m0]"});
  CHECK(an.stages[0].plus.at("o0") ==
        std::vector<std::string>{"[id_o0:m0]"});
  CHECK(validate_presheaf(an.stages[0].plus).ok());
  CHECK(validate_presheaf(an.sheaf).ok());
  CHECK(an.sheaf.name == "a(N)");
  CHECK(an.sheaf.at("o1").size() == 1);
  CHECK(an.sheaf.at("o0").size() == 1);
  CHECK(is_sheaf(an.sheaf, j).ok());
  CHECK(validate_nat_trans(an.unit).ok());
  CHECK(an.unit.at("o1", "n0") == an.unit.at("o1", "n1"));
  CHECK(is_epi(an.unit));

  auto again = sheafify(an.sheaf, j);
  CHECK(again.already_sheaf);
  CHECK(presheaf_equal(again.sheaf, an.sheaf));
  CHECK(nat_equal(again.unit, identity_nat(an.sheaf)));

  Presheaf m = missing_point(c);
  auto amm = sheafify(m, j);
  CHECK_FALSE(amm.already_sheaf);
  CHECK(amm.sheaf.at("o1").size() == 2);
  CHECK(amm.sheaf.at("o0").size() == 2);
  CHECK(is_sheaf(amm.sheaf, j).ok());
  CHECK(validate_nat_trans(amm.unit).ok());
  CHECK(is_mono(amm.unit));

  auto d = td::interval_family();
  auto ap = sheafify(d.P, j);
  CHECK(ap.already_sheaf);
  CHECK(presheaf_equal(ap.sheaf, d.P));
  CHECK(sheafify(n, trivial_topology(c)).already_sheaf);
}

TEST_CASE("maps extend uniquely along the unit") {
  auto c = td::interval_cat();
  auto j = dense_interval(c);
  auto d = td::interval_family();
  Presheaf n = glued_pair(c);
  auto an = sheafify(n, j);
  auto ap = sheafify(d.P, j);

  auto maps = enumerate_nat_trans(n, d.P);
  REQUIRE(maps.size() == 2);
  for (const auto& g : maps) {
    NatTrans ext = extend_along_unit(an, g);
    CHECK(validate_nat_trans(ext).ok());
    CHECK(nat_equal(compose_nat(ext, an.unit), g));
    CHECK(nat_equal(sheafify_map(an, ap, g), ext));
  }

  NatTrans down = sheafify_map(an, an, identity_nat(n));
  CHECK(nat_equal(down, identity_nat(an.sheaf)));
}

TEST_CASE("direct image of the slice inclusion") {
  auto c = td::interval_cat();
  auto j = dense_interval(c);
  auto d = td::interval_family();

  auto ap = sheafify(d.P, j);
  SliceObject same = slice_inclusion_direct_image(ap, d.h);
  CHECK(presheaf_equal(same.total, d.H));
  CHECK(nat_equal(same.structural, d.h));

  Presheaf n = glued_pair(c);
  auto an = sheafify(n, j);
  SliceObject inc = slice_inclusion_direct_image(an, identity_nat(an.sheaf));
  CHECK(inc.total.at("o1").size() == 2);
  CHECK(inc.total.at("o0").size() == 1);
  CHECK(presheaf_equal(inc.structural.target, n));
  CHECK(is_iso(inc.structural));

  CHECK_THROWS_AS(slice_inclusion_direct_image(an, d.h), ShapeError);
}

TEST_CASE("sheaf-level dependent product over sheaf data") {
  auto c = td::interval_cat();
  auto j = dense_interval(c);
  auto d = td::interval_family();

  auto kd = dependent_product_kan(d.f, d.h);
  CHECK(is_sheaf(kd.total, j).ok());

  SheafDP sk = dependent_product_sheaf(d.f, d.h, j);
  CHECK(sk.ap.already_sheaf);
  CHECK(sk.aq.already_sheaf);
  CHECK(sk.atotal.already_sheaf);
  CHECK(presheaf_equal(sk.total.total, kd.total));
  CHECK(nat_equal(sk.total.structural, kd.structural));

  auto ed = dependent_product_elementary(d.f, d.h);
  SheafDP se =
      dependent_product_sheaf(d.f, d.h, j, SheafDpBackend::elementary);
  CHECK(presheaf_equal(se.total.total, ed.carrier));
  CHECK(nat_equal(se.total.structural, ed.structural));

  SheafDP st = dependent_product_sheaf(d.f, d.h, trivial_topology(c));
  CHECK(presheaf_equal(st.total.total, kd.total));

  SheafDP sid = dependent_product_sheaf(d.f, identity_nat(d.P), j);
  CHECK(is_iso(sid.total.structural));

  CHECK_THROWS_AS(dependent_product_sheaf(d.f, d.f, j), PreconditionError);
  Presheaf n = glued_pair(c);
  auto into_p = enumerate_nat_trans(n, d.P);
  REQUIRE_FALSE(into_p.empty());
  CHECK_THROWS_AS(dependent_product_sheaf(d.f, into_p[0], j),
                  PreconditionError);
}

TEST_CASE("sheaf-level dependent product through a genuine sheafification") {
  auto c = td::interval_cat();
  auto j = dense_interval(c);
  Presheaf n = glued_pair(c);
  Presheaf one = terminal_presheaf(c);

  NatTrans f = to_terminal(n, one);
  auto an = sheafify(n, j);
  SheafDP sd = dependent_product_sheaf(f, identity_nat(an.sheaf), j);
  CHECK_FALSE(sd.ap.already_sheaf);
  CHECK(sd.aq.already_sheaf);
  CHECK(sd.included.total.at("o1").size() == 2);
  CHECK(sd.included.total.at("o0").size() == 1);
  CHECK(sd.total.total.at("o1").size() == 1);
  CHECK(sd.total.total.at("o0").size() == 1);
  CHECK(is_iso(sd.total.structural));
  CHECK(is_sheaf(sd.total.total, j).ok());
}

TEST_CASE("subtopos square") {
  auto c = td::interval_cat();
  auto j = dense_interval(c);
  auto d = td::interval_family();

  CHECK(subtopos_square_check(d.f, d.h, j).ok());
  CHECK(subtopos_square_check(d.f, d.h, j, SheafDpBackend::elementary).ok());
  CHECK(subtopos_square_check(d.f, d.h, trivial_topology(c)).ok());

  auto g = td::graph_family();
  CHECK(subtopos_square_check(g.f, g.h, trivial_topology(td::graph_base()))
            .ok());

  Presheaf n = glued_pair(c);
  auto r = subtopos_square_check(to_terminal(n, terminal_presheaf(c)),
                                 identity_nat(n), j);
  CHECK(r.status == "precondition_unmet");
  REQUIRE(r.notes.size() == 2);
  CHECK(r.notes[0] == "source of f is not a sheaf");
  CHECK(r.notes[1] == "source of h is not a sheaf");
}
