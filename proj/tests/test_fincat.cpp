#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fintop/errors.hpp"
#include "fintop/fincat.hpp"

using namespace fintop;

namespace {

FinCategory terminal_cat() { return make_category("pt_cat", {"pt"}, {}, {}); }

FinCategory interval_cat() {
  return make_category("interval", {"o0", "o1"}, {{"u", "o0", "o1"}}, {});
}

FinCategory graph_base() {
  return make_category("graphs", {"V", "E"},
                       {{"s", "V", "E"}, {"t", "V", "E"}}, {});
}

}  // namespace

TEST_CASE("terminal category validates") {
  FinCategory c = terminal_cat();
  CHECK(validate_category(c).ok());
  CHECK(c.objects.size() == 1);
  CHECK(c.morphisms.size() == 1);
  CHECK(c.is_identity("id_pt"));
}

TEST_CASE("interval category validates") {
  FinCategory c = interval_cat();
  CHECK(validate_category(c).ok());
  CHECK(c.compose("id_o1", "u") == "u");
  CHECK(c.compose("u", "id_o0") == "u");
  CHECK_THROWS_AS(c.compose("u", "u"), ShapeError);
}

TEST_CASE("graph base validates with two parallel arrows") {
  FinCategory c = graph_base();
  CHECK(validate_category(c).ok());
  CHECK(c.arrows_from("V").size() == 3);  // id_V, s, t
  CHECK(c.arrows_into("E").size() == 3);  // id_E, s, t
}

TEST_CASE("corrupted composition table is reported with a witness") {
  FinCategory c = interval_cat();
  c.compose_table[{"u", "id_o0"}] = "id_o0";
  ValidationReport r = validate_category(c);
  CHECK_FALSE(r.ok());
  bool found = false;
  for (const auto& v : r.violations)
    if (v.witness.size() >= 2 && v.witness[0] == "u" && v.witness[1] == "id_o0")
      found = true;
  CHECK(found);
}

TEST_CASE("missing composite is reported") {
  FinCategory c = interval_cat();
  c.compose_table.erase({"id_o1", "u"});
  ValidationReport r = validate_category(c);
  CHECK_FALSE(r.ok());
  CHECK(r.violations.front().law == "compose-missing");
}

TEST_CASE("opposite is an involution") {
  for (FinCategory c : {terminal_cat(), interval_cat(), graph_base()}) {
    FinCategory op = opposite(c);
    CHECK(validate_category(op).ok());
    CHECK(same_category(opposite(op), c));
    if (c.name == "interval") {
      CHECK(op.mor("u").dom == "o1");
      CHECK(op.mor("u").cod == "o0");
    }
  }
}

TEST_CASE("functor validation catches a broken morphism map") {
  FinCategory c = interval_cat();
  FinFunctor id = identity_functor(c);
  CHECK(validate_functor(id).ok());
  FinFunctor bad = id;
  bad.mor_map["u"] = "id_o0";
  CHECK_FALSE(validate_functor(bad).ok());
}

TEST_CASE("functor composition and opposite") {
  FinCategory c = graph_base();
  FinFunctor id = identity_functor(c);
  CHECK(validate_functor(compose_functors(id, id)).ok());
  FinFunctor op = opposite_functor(id);
  CHECK(validate_functor(op).ok());
  CHECK(same_category(op.source, opposite(c)));
}

TEST_CASE("comma category under the identity functor is the coslice") {
  FinCategory c = interval_cat();
  CommaCategory cc = build_comma("o0", identity_functor(c));
  // Arrows out of o0: id_o0 and u, one node each.
  CHECK(cc.base.objects.size() == 2);
  CHECK(validate_category(cc.base).ok());
  CHECK(validate_functor(cc.projection).ok());
  // One non-identity morphism: u acting from the id-node to the u-node.
  CHECK(cc.base.morphisms.size() == 3);
  CHECK(cc.labels.at(pair_id("u", "o1")) ==
        std::pair<std::string, std::string>{"u", "o1"});
  CHECK(cc.projection.on_object(pair_id("u", "o1")) == "o1");
}

TEST_CASE("pair ids nest unambiguously") {
  CHECK(pair_id("a", "b") == "(a,b)");
  CHECK(pair_id(pair_id("a", "b"), "c") == "((a,b),c)");
}
