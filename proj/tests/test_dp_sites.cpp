#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fintop/dp_elementary.hpp"
#include "fintop/dp_sites.hpp"
#include "fintop/errors.hpp"
#include "test_data.hpp"

using namespace fintop;
using namespace fintop::testdata;

TEST_CASE("fibers form a presheaf on the elements of the base") {
  auto d = interval_family();
  ElementsPresheaf fib = r_functor(d.h);
  CHECK(validate_presheaf(fib.value).ok());
  CHECK(fib.value.at(fib.elements.node("o1", "p1")) == std::vector<std::string>{"x1"});
  CHECK(fib.value.at(fib.elements.node("o1", "p2")) ==
        std::vector<std::string>{"x2", "x3"});
  CHECK(fib.value.at(fib.elements.node("o0", "r2")) ==
        std::vector<std::string>{"z2", "z3"});
  // Restriction moves fibers along the action of H.
  const std::string m = pair_id("u", fib.elements.node("o1", "p2"));
  CHECK(fib.value.act(m, "x2") == "z2");
  CHECK(fib.value.act(m, "x3") == "z3");
}

TEST_CASE("reassembly after fibering returns the original object") {
  for (auto make : {+[] { auto d = point_family(); return std::pair{d.f, d.h}; },
                    +[] { auto d = interval_family(); return std::pair{d.f, d.h}; },
                    +[] { auto d = graph_family(); return std::pair{d.f, d.h}; }}) {
    auto [f, h] = make();
    ElementsPresheaf fib = r_functor(h);
    SliceObject back = l_functor(h.target, fib.elements, fib.value);
    CHECK(validate_presheaf(back.total).ok());
    CHECK(validate_nat_trans(back.structural).ok());

    // (p,x) |-> x is an isomorphism over the base object.
    NatTrans iso;
    iso.source = back.total;
    iso.target = h.source;
    for (const auto& [x, v] : back.total.sets) {
      auto& comp = iso.components[x];
      for (const auto& e : v) comp[e] = split_pair(e).second;
    }
    CHECK(validate_nat_trans(iso).ok());
    CHECK(is_iso(iso));
    CHECK(nat_equal(compose_nat(h, iso), back.structural));
  }
}

TEST_CASE("fibering after reassembly returns the original presheaf") {
  auto d = interval_family();
  ElementsPresheaf fib = r_functor(d.h);
  SliceObject lw = l_functor(d.P, fib.elements, fib.value);
  ElementsPresheaf again = r_functor(lw.structural);
  CHECK(same_category(again.elements.cat, fib.elements.cat));

  NatTrans iso;
  iso.source = again.value;
  iso.target = fib.value;
  for (const auto& [node, v] : again.value.sets) {
    auto& comp = iso.components[node];
    for (const auto& e : v) comp[e] = split_pair(e).second;
  }
  CHECK(validate_nat_trans(iso).ok());
  CHECK(is_iso(iso));
}

TEST_CASE("extension values are compatible families with canonical names") {
  auto d = interval_family();
  Presheaf ran = ran_along_elements(d.f, r_functor(d.h));
  CHECK(validate_presheaf(ran).ok());

  ElementsCategory intq = elements_category(d.Q);
  const std::string top = intq.node("o1", "q1");
  const std::string bot = intq.node("o0", "q0");
  CHECK(ran.at(top) == std::vector<std::string>{"[id_o1:p1:x1;id_o1:p2:x2;u:r1:z1;u:r2:z2]",
                                                "[id_o1:p1:x1;id_o1:p2:x3;u:r1:z1;u:r2:z3]"});
  CHECK(ran.at(bot) == std::vector<std::string>{"[id_o0:r1:z1;id_o0:r2:z2]",
                                                "[id_o0:r1:z1;id_o0:r2:z3]"});
  // Restriction forgets the o1 entries and renames the probes.
  const std::string m = pair_id("u", top);
  CHECK(ran.act(m, "[id_o1:p1:x1;id_o1:p2:x2;u:r1:z1;u:r2:z2]") ==
        "[id_o0:r1:z1;id_o0:r2:z2]");
  CHECK(ran.act(m, "[id_o1:p1:x1;id_o1:p2:x3;u:r1:z1;u:r2:z3]") ==
        "[id_o0:r1:z1;id_o0:r2:z3]");
}

TEST_CASE("compatibility prunes the raw product of fibers") {
  auto d = interval_family();
  ElementsPresheaf fib = r_functor(d.h);
  Presheaf ran = ran_along_elements(d.f, fib);
  ElementsCategory intq = elements_category(d.Q);
  const std::string top = intq.node("o1", "q1");

  CommaCategory cc = build_comma(top, opposite_functor(elements_functor(d.f)));
  std::size_t raw = 1;
  for (const auto& n : cc.base.objects)
    raw *= fib.value.at(cc.projection.on_object(n)).size();
  CHECK(raw == 4);
  CHECK(ran.at(top).size() == 2);
}

TEST_CASE("both constructions agree on every fixture family") {
  for (auto make : {+[] { auto d = point_family(); return std::pair{d.f, d.h}; },
                    +[] { auto d = interval_family(); return std::pair{d.f, d.h}; },
                    +[] { auto d = graph_family(); return std::pair{d.f, d.h}; }}) {
    auto [f, h] = make();
    KanDP kan = dependent_product_kan(f, h);
    CHECK(validate_presheaf(kan.total).ok());
    CHECK(validate_nat_trans(kan.structural).ok());

    ElementaryDP el = dependent_product_elementary(f, h);
    for (const auto& x : f.target.base.objects)
      CHECK(kan.total.at(x).size() == el.carrier.at(x).size());
  }
}

TEST_CASE("empty fibers and unreached base points") {
  auto d = point_family();

  // A base point nothing maps onto contributes the empty family.
  Presheaf q2 = make_presheaf(d.base, "Q2", {{"pt", {"q", "q_lone"}}});
  NatTrans f2 = {d.P, q2, {{"pt", {{"p1", "q"}, {"p2", "q"}}}}};
  REQUIRE(validate_nat_trans(f2).ok());
  KanDP kan = dependent_product_kan(f2, d.h);
  CHECK(kan.total.at("pt").size() == 7);  // 6 sections + "(q_lone,[])"
  CHECK(kan.total.has_elem("pt", pair_id("q_lone", "[]")));

  // An empty fiber of h kills every section over its base point.
  Presheaf h2 = make_presheaf(d.base, "H2", {{"pt", {"a", "b"}}});
  NatTrans hh = {h2, d.P, {{"pt", {{"a", "p1"}, {"b", "p1"}}}}};
  REQUIRE(validate_nat_trans(hh).ok());
  KanDP none = dependent_product_kan(d.f, hh);
  CHECK(none.total.at("pt").empty());
  ElementaryDP el = dependent_product_elementary(d.f, hh);
  CHECK(el.carrier.at("pt").empty());
}
