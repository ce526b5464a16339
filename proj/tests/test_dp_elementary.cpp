#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fintop/dp_elementary.hpp"
#include "fintop/errors.hpp"
#include "test_data.hpp"

using namespace fintop;
using namespace fintop::testdata;

TEST_CASE("one-object family: carrier counts sections over each fiber") {
  auto d = point_family();
  ElementaryDP dp = dependent_product_elementary(d.f, d.h);

  CHECK(validate_presheaf(dp.carrier).ok());
  CHECK(validate_nat_trans(dp.structural).ok());
  CHECK(dp.carrier.at("pt").size() == 6);  // 2 * 3 choices of section

  // The intermediate objects have independently countable sizes.
  CHECK(dp.t1.total_size() == 1024);  // every relation sits over the one fiber
  CHECK(dp.t2.total_size() == 32);    // subsets of the graph of h
  CHECK(dp.forall_s.total_size() == 25);  // one pair per element of P

  CHECK(validate_nat_trans(dp.phi).ok());
  CHECK(validate_nat_trans(build_tau(dp.scene)).ok());
}

TEST_CASE("one-object family: phi takes a relation to its slice") {
  auto d = point_family();
  ElementaryDP dp = dependent_product_elementary(d.f, d.h);
  const std::string w = "{pt:(id_pt,(a,p1))}";
  REQUIRE(dp.scene.php.carrier.has_elem("pt", w));
  CHECK(dp.phi.at("pt", pair_id("p1", w)) == "{pt:(id_pt,a)}");
  CHECK(dp.phi.at("pt", pair_id("p2", w)) == "{}");
}

TEST_CASE("fiber and graph conditions equal the slice power route") {
  auto d = point_family();
  ElementaryScene sc = elementary_scene(d.f, d.h);
  Subpresheaf t1 = build_t1(sc, build_w1(sc));
  Subpresheaf t2 = build_t2(sc, build_w2(sc));
  CHECK(sub_equal(sub_intersection(t1, t2), t12_via_relative_power(sc)));

  auto g = graph_family();
  ElementaryScene sg = elementary_scene(g.f, g.h);
  Subpresheaf gt1 = build_t1(sg, build_w1(sg));
  Subpresheaf gt2 = build_t2(sg, build_w2(sg));
  CHECK(sub_equal(sub_intersection(gt1, gt2), t12_via_relative_power(sg)));
}

TEST_CASE("interval family: carrier matches hand count and restricts sections") {
  auto d = interval_family();
  ElementaryDP dp = dependent_product_elementary(d.f, d.h);
  CHECK(validate_presheaf(dp.carrier).ok());
  CHECK(dp.carrier.at("o1").size() == 2);
  CHECK(dp.carrier.at("o0").size() == 2);

  // Restriction along u sends each stage-o1 section to its o0 shadow.
  for (const auto& e : dp.carrier.at("o1")) {
    const std::string& r = dp.carrier.act("u", e);
    CHECK(dp.carrier.has_elem("o0", r));
    auto [q, w] = split_pair(e);
    auto [q0, w0] = split_pair(r);
    CHECK(q == "q1");
    CHECK(q0 == "q0");
    CHECK(dp.scene.php.carrier.act("u", w) == w0);
    CHECK(dp.structural.at("o1", e) == "q1");
  }
}

TEST_CASE("graph family: parallel edges double the loop sections") {
  auto d = graph_family();
  ElementaryDP dp = dependent_product_elementary(d.f, d.h);
  CHECK(validate_presheaf(dp.carrier).ok());
  CHECK(dp.carrier.at("V").size() == 1);
  CHECK(dp.carrier.at("E").size() == 2);
  CHECK(validate_nat_trans(dp.structural).ok());
}

TEST_CASE("factorization criteria hold for every representable probe") {
  for (auto make : {+[] { auto d = point_family(); return std::pair{d.f, d.h}; },
                    +[] { auto d = interval_family(); return std::pair{d.f, d.h}; },
                    +[] { auto d = graph_family(); return std::pair{d.f, d.h}; }}) {
    auto [f, h] = make();
    ElementaryDP dp = dependent_product_elementary(f, h);
    FactorizationReport rep = verify_factorization_clauses(dp);
    CHECK(rep.ok());
    CHECK(rep.checked == dp.scene.q_php.object.total_size());
  }
}

TEST_CASE("transposes are mutually inverse") {
  auto d = point_family();
  ElementaryDP dp = dependent_product_elementary(d.f, d.h);

  // k = identity on Q; sections over the pullback are sections of h.
  NatTrans k = identity_nat(d.Q);
  PullbackData fk = pullback(k, d.f);
  REQUIRE(fk.object.at("pt").size() == 2);

  NatTrans alpha{fk.object, d.H, {{"pt", {{"(q,p1)", "a"}, {"(q,p2)", "c"}}}}};
  REQUIRE(validate_nat_trans(alpha).ok());
  PairIntoCarrier up = transpose_to_beta(dp, k, alpha);
  CHECK(validate_nat_trans(up.beta).ok());
  CHECK(validate_nat_trans(up.to_carrier).ok());

  SectionOverP down = transpose_to_alpha(dp, up.to_carrier);
  CHECK(nat_equal(down.alpha, alpha));

  // Every element of the carrier round-trips through a section.
  for (const auto& e : dp.carrier.at("pt")) {
    NatTrans m{d.Q, dp.carrier, {{"pt", {{"q", e}}}}};
    REQUIRE(validate_nat_trans(m).ok());
    SectionOverP sec = transpose_to_alpha(dp, m);
    CHECK(validate_nat_trans(sec.alpha).ok());
    PairIntoCarrier back = transpose_to_beta(dp, compose_nat(dp.structural, m), sec.alpha);
    CHECK(nat_equal(back.to_carrier, m));
  }
}

TEST_CASE("transpose rejects a map that is not a morphism over P") {
  auto d = point_family();
  ElementaryDP dp = dependent_product_elementary(d.f, d.h);
  NatTrans k = identity_nat(d.Q);
  PullbackData fk = pullback(k, d.f);
  // Sends the p1 component into the fiber over p2.
  NatTrans bad{fk.object, d.H, {{"pt", {{"(q,p1)", "c"}, {"(q,p2)", "d"}}}}};
  REQUIRE(validate_nat_trans(bad).ok());
  CHECK_THROWS_AS(transpose_to_beta(dp, k, bad), PreconditionError);
}

TEST_CASE("cap cuts off oversized power objects") {
  auto d = point_family();
  CHECK_THROWS_AS(dependent_product_elementary(d.f, d.h, 100), ResourceCapError);
}
