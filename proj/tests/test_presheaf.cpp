#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fintop/errors.hpp"
#include "fintop/presheaf.hpp"
#include "test_data.hpp"

using namespace fintop;
using namespace fintop::testdata;

namespace {

FinCategory chain_cat() {
  return make_category("chain", {"o0", "o1", "o2"},
                       {{"u", "o0", "o1"}, {"v", "o1", "o2"}, {"w", "o0", "o2"}},
                       {{{"v", "u"}, "w"}});
}

}  // namespace

TEST_CASE("make_presheaf fills identities and validates") {
  auto d = interval_family();
  CHECK(validate_presheaf(d.P).ok());
  CHECK(validate_presheaf(d.Q).ok());
  CHECK(validate_presheaf(d.H).ok());
  CHECK(d.P.act("id_o1", "p1") == "p1");
  CHECK(d.P.act("u", "p2") == "r2");
  CHECK(d.P.total_size() == 4);
}

TEST_CASE("presheaf validation reports broken functoriality") {
  FinCategory c = chain_cat();
  CHECK(validate_category(c).ok());
  Presheaf p = make_presheaf(
      c, "bad",
      {{"o0", {"x0"}}, {"o1", {"x1"}}, {"o2", {"x2a", "x2b"}}},
      {{"u", {{"x1", "x0"}}},
       {"v", {{"x2a", "x1"}, {"x2b", "x1"}}},
       {"w", {{"x2a", "x0"}, {"x2b", "x0"}}}});
  CHECK(validate_presheaf(p).ok());
  p.action["w"].erase("x2b");
  CHECK(validate_presheaf(p).summary().find("action-partial") != std::string::npos);
  p.action["w"]["x2b"] = "x0";
  p.sets["o0"].push_back("y0");
  p.action["id_o0"]["y0"] = "y0";
  p.action["w"]["x2b"] = "y0";
  ValidationReport r = validate_presheaf(p);
  CHECK_FALSE(r.ok());
  CHECK(r.violations.front().law == "action-composition");
}

TEST_CASE("nat trans validation checks naturality") {
  auto d = interval_family();
  CHECK(validate_nat_trans(d.f).ok());
  CHECK(validate_nat_trans(d.h).ok());
  NatTrans bad = d.h;
  bad.components["o0"]["z1"] = "r2";
  ValidationReport r = validate_nat_trans(bad);
  CHECK_FALSE(r.ok());
  CHECK(r.violations.front().law == "naturality");
}

TEST_CASE("yoneda presheaves") {
  FinCategory c = interval_cat();
  Presheaf y1 = yoneda(c, "o1");
  CHECK(validate_presheaf(y1).ok());
  CHECK(y1.at("o1") == std::vector<std::string>{"id_o1"});
  CHECK(y1.at("o0") == std::vector<std::string>{"u"});
  CHECK(y1.act("u", "id_o1") == "u");
  Presheaf y0 = yoneda(c, "o0");
  CHECK(y0.at("o0") == std::vector<std::string>{"id_o0"});
  CHECK(y0.at("o1").empty());

  NatTrans yu = yoneda_map(c, "u");
  CHECK(validate_nat_trans(yu).ok());
  CHECK(yu.at("o0", "id_o0") == "u");
}

TEST_CASE("terminal and empty presheaves") {
  FinCategory c = graph_base();
  Presheaf one = terminal_presheaf(c);
  Presheaf zero = empty_presheaf(c);
  CHECK(validate_presheaf(one).ok());
  CHECK(validate_presheaf(zero).ok());
  CHECK(one.total_size() == 2);
  CHECK(zero.total_size() == 0);
  auto d = graph_family();
  CHECK(validate_nat_trans(to_terminal(d.H, one)).ok());
}

TEST_CASE("products and pairing") {
  auto d = point_family();
  ProductData ph = product(d.P, d.H);
  CHECK(validate_presheaf(ph.object).ok());
  CHECK(ph.object.at("pt").size() == 10);
  CHECK(ph.object.at("pt").front() == "(p1,a)");
  CHECK(validate_nat_trans(ph.proj1).ok());
  CHECK(validate_nat_trans(ph.proj2).ok());

  // Pairing of h with itself lands on the diagonal.
  ProductData hh = product(d.H, d.P);
  NatTrans diag = pairing(d.h, d.h, product(d.P, d.P));
  CHECK(validate_nat_trans(diag).ok());
  CHECK(diag.at("pt", "a") == "(p1,p1)");
  CHECK(is_mono(diag) == is_mono(d.h));

  ProductData p1 = product(d.P, terminal_presheaf(d.base));
  CHECK(is_iso(p1.proj1));
}

TEST_CASE("product with graph structure is computed stage-wise") {
  auto d = graph_family();
  ProductData hp = product(d.H, d.P);
  CHECK(validate_presheaf(hp.object).ok());
  CHECK(hp.object.at("V").size() == 4);
  CHECK(hp.object.at("E").size() == 2);
  CHECK(hp.object.act("s", "(He1,Pe)") == "(Hu,Pu)");

  NatTrans fh = product_map(d.f, identity_nat(d.H), product(d.P, d.H),
                            product(d.Q, d.H));
  CHECK(validate_nat_trans(fh).ok());
  CHECK(fh.at("E", "(Pe,He2)") == "(Qe,He2)");
}

TEST_CASE("pullback counts match fiber arithmetic") {
  auto d = point_family();
  PullbackData hh = pullback(d.h, d.h);
  CHECK(validate_presheaf(hh.object).ok());
  CHECK(hh.object.at("pt").size() == 13);  // 2*2 + 3*3
  PullbackData ff = pullback(d.f, d.f);
  CHECK(ff.object.at("pt").size() == 4);
  CHECK(validate_nat_trans(hh.proj1).ok());
  CHECK(validate_nat_trans(hh.proj2).ok());
  for (const auto& e : hh.object.at("pt")) {
    auto [a, b] = split_pair(e);
    CHECK(d.h.at("pt", a) == d.h.at("pt", b));
  }
}

TEST_CASE("equalizers") {
  auto d = point_family();
  EqualizerData e1 = equalizer(d.h, d.h);
  CHECK(is_iso(e1.include));
  NatTrans other = {d.H, d.P,
                    {{"pt",
                      {{"a", "p1"}, {"b", "p2"}, {"c", "p2"}, {"d", "p2"},
                       {"e", "p1"}}}}};
  CHECK(validate_nat_trans(other).ok());
  EqualizerData e2 = equalizer(d.h, other);
  CHECK(e2.object.at("pt") == std::vector<std::string>{"a", "c", "d"});
  CHECK(is_mono(e2.include));
  CHECK_FALSE(is_epi(e2.include));
}

TEST_CASE("composition, identities, inverses") {
  auto d = interval_family();
  NatTrans fh = compose_nat(d.f, d.h);
  CHECK(validate_nat_trans(fh).ok());
  CHECK(fh.at("o1", "x3") == "q1");
  CHECK(is_epi(d.f));
  CHECK_FALSE(is_mono(d.f));
  NatTrans id = identity_nat(d.H);
  CHECK(is_iso(id));
  CHECK(nat_equal(inverse(id), id));
  CHECK(nat_equal(compose_nat(identity_nat(d.P), d.h), d.h));
  CHECK(nat_equal(compose_nat(d.h, id), d.h));
}

TEST_CASE("limit of a covariant set diagram") {
  SetDiagram d;
  d.shape = interval_cat();
  d.sets = {{"o0", {"A"}}, {"o1", {"B1", "B2"}}};
  d.action = {{"id_o0", {{"A", "A"}}},
              {"id_o1", {{"B1", "B1"}, {"B2", "B2"}}},
              {"u", {{"A", "B1"}}}};
  auto fams = limit_of_sets(d);
  REQUIRE(fams.size() == 1);
  CHECK(fams[0].at("o0") == "A");
  CHECK(fams[0].at("o1") == "B1");
}

TEST_CASE("limit over a parallel pair is an equalizer") {
  SetDiagram d;
  d.shape = graph_base();
  d.sets = {{"V", {"v1", "v2"}}, {"E", {"e1", "e2"}}};
  d.action = {{"id_V", {{"v1", "v1"}, {"v2", "v2"}}},
              {"id_E", {{"e1", "e1"}, {"e2", "e2"}}},
              {"s", {{"v1", "e1"}, {"v2", "e2"}}},
              {"t", {{"v1", "e1"}, {"v2", "e1"}}}};
  auto fams = limit_of_sets(d);
  REQUIRE(fams.size() == 1);
  CHECK(fams[0].at("V") == "v1");
}

TEST_CASE("limit over the empty shape is a point") {
  SetDiagram d;
  d.shape = make_category("empty", {}, {}, {});
  auto fams = limit_of_sets(d);
  REQUIRE(fams.size() == 1);
  CHECK(fams[0].empty());
}

TEST_CASE("category of elements") {
  FinCategory c = interval_cat();
  ElementsCategory one = elements_category(terminal_presheaf(c));
  CHECK(validate_category(one.cat).ok());
  CHECK(one.cat.objects.size() == 2);
  CHECK(one.cat.morphisms.size() == 3);
  CHECK(validate_functor(one.proj).ok());

  ElementsCategory y1 = elements_category(yoneda(c, "o1"));
  CHECK(y1.cat.objects.size() == 2);
  CHECK(y1.cat.morphisms.size() == 3);
  CHECK(y1.node("o0", "u") == pair_id("o0", "u"));

  ElementsCategory none = elements_category(empty_presheaf(c));
  CHECK(none.cat.objects.empty());
  CHECK(validate_category(none.cat).ok());

  auto d = graph_family();
  ElementsCategory eh = elements_category(d.H);
  CHECK(validate_category(eh.cat).ok());
  CHECK(eh.cat.objects.size() == 4);
  // Each edge element restricts along s and t.
  CHECK(eh.cat.morphisms.size() == 4 + 4);
}

TEST_CASE("elements functor covers a map of presheaves") {
  auto d = graph_family();
  FinFunctor eh = elements_functor(d.h);
  CHECK(validate_functor(eh).ok());
  ElementsCategory src = elements_category(d.H);
  ElementsCategory dst = elements_category(d.P);
  CHECK(same_category(eh.source, src.cat));
  CHECK(same_category(eh.target, dst.cat));
  CHECK(eh.on_object(src.node("E", "He2")) == dst.node("E", "Pe"));

  FinFunctor ef = elements_functor(d.f);
  CHECK(validate_functor(ef).ok());
  FinFunctor efh = elements_functor(compose_nat(d.f, d.h));
  FinFunctor comp = compose_functors(ef, eh);
  CHECK(efh.obj_map == comp.obj_map);
  CHECK(efh.mor_map == comp.mor_map);
}

TEST_CASE("enumerate_nat_trans realizes hom sets") {
  auto d = interval_family();
  FinCategory c = d.base;
  // Yoneda: maps out of a representable match elements.
  CHECK(enumerate_nat_trans(yoneda(c, "o1"), d.P).size() == d.P.at("o1").size());
  CHECK(enumerate_nat_trans(yoneda(c, "o0"), d.P).size() == d.P.at("o0").size());
  CHECK(enumerate_nat_trans(d.P, terminal_presheaf(c)).size() == 1);
  CHECK(enumerate_nat_trans(empty_presheaf(c), d.P).size() == 1);
  CHECK(enumerate_nat_trans(terminal_presheaf(c), empty_presheaf(c)).empty());

  auto g = graph_family();
  CHECK(enumerate_nat_trans(yoneda(g.base, "E"), g.H).size() == 2);
  // Graph maps from the single edge into the doubled edge.
  auto maps = enumerate_nat_trans(g.P, g.H);
  REQUIRE(maps.size() == 2);
  for (const auto& m : maps) CHECK(validate_nat_trans(m).ok());
  CHECK(maps[0].at("E", "Pe") == "He1");
  CHECK(maps[1].at("E", "Pe") == "He2");

  auto limited = enumerate_nat_trans(g.P, g.H, {}, 1);
  CHECK(limited.size() == 1);
  auto filtered = enumerate_nat_trans(
      g.P, g.H,
      [](const std::string& obj, const std::string& e, const std::string& img) {
        return obj != "E" || img == "He2";
      });
  REQUIRE(filtered.size() == 1);
  CHECK(filtered[0].at("E", "Pe") == "He2");
}

TEST_CASE("split_pair respects nesting") {
  CHECK(split_pair("(a,b)") == std::pair<std::string, std::string>{"a", "b"});
  CHECK(split_pair("((a,b),c)") ==
        std::pair<std::string, std::string>{"(a,b)", "c"});
  CHECK(split_pair("({x:a,b},[g:p,q])") ==
        std::pair<std::string, std::string>{"{x:a,b}", "[g:p,q]"});
  CHECK_THROWS_AS(split_pair("nope"), ShapeError);
}
