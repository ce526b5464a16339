#pragma once

#include "fintop/fincat.hpp"
#include "fintop/presheaf.hpp"

namespace fintop::testdata {

inline FinCategory terminal_cat() { return make_category("pt_cat", {"pt"}, {}, {}); }

inline FinCategory interval_cat() {
  return make_category("interval", {"o0", "o1"}, {{"u", "o0", "o1"}}, {});
}

inline FinCategory graph_base() {
  return make_category("graphs", {"V", "E"}, {{"s", "V", "E"}, {"t", "V", "E"}}, {});
}

// One-object family over the terminal category: f : P -> Q collapses two
// points to one, h : H -> P has fibers of size 2 and 3.
struct PointFamily {
  FinCategory base = terminal_cat();
  Presheaf P, Q, H;
  NatTrans f, h;
};

inline PointFamily point_family() {
  PointFamily d;
  d.P = make_presheaf(d.base, "P", {{"pt", {"p1", "p2"}}});
  d.Q = make_presheaf(d.base, "Q", {{"pt", {"q"}}});
  d.H = make_presheaf(d.base, "H", {{"pt", {"a", "b", "c", "d", "e"}}});
  d.f = {d.P, d.Q, {{"pt", {{"p1", "q"}, {"p2", "q"}}}}};
  d.h = {d.H, d.P,
         {{"pt", {{"a", "p1"}, {"b", "p1"}, {"c", "p2"}, {"d", "p2"}, {"e", "p2"}}}}};
  return d;
}

// Family over the interval: restriction maps are bijections, fibers over
// p2 have size 2 at both stages.
struct IntervalFamily {
  FinCategory base = interval_cat();
  Presheaf P, Q, H;
  NatTrans f, h;
};

inline IntervalFamily interval_family() {
  IntervalFamily d;
  d.P = make_presheaf(d.base, "P", {{"o1", {"p1", "p2"}}, {"o0", {"r1", "r2"}}},
                      {{"u", {{"p1", "r1"}, {"p2", "r2"}}}});
  d.Q = make_presheaf(d.base, "Q", {{"o1", {"q1"}}, {"o0", {"q0"}}},
                      {{"u", {{"q1", "q0"}}}});
  d.H = make_presheaf(d.base, "H",
                      {{"o1", {"x1", "x2", "x3"}}, {"o0", {"z1", "z2", "z3"}}},
                      {{"u", {{"x1", "z1"}, {"x2", "z2"}, {"x3", "z3"}}}});
  d.f = {d.P, d.Q, {{"o1", {{"p1", "q1"}, {"p2", "q1"}}},
                    {"o0", {{"r1", "q0"}, {"r2", "q0"}}}}};
  d.h = {d.H, d.P,
         {{"o1", {{"x1", "p1"}, {"x2", "p2"}, {"x3", "p2"}}},
          {"o0", {{"z1", "r1"}, {"z2", "r2"}, {"z3", "r2"}}}}};
  return d;
}

// Graphs: P is a single edge, Q a loop, H doubles P's edge.
struct GraphFamily {
  FinCategory base = graph_base();
  Presheaf P, Q, H;
  NatTrans f, h;
};

inline GraphFamily graph_family() {
  GraphFamily d;
  d.P = make_presheaf(d.base, "P", {{"V", {"Pu", "Pv"}}, {"E", {"Pe"}}},
                      {{"s", {{"Pe", "Pu"}}}, {"t", {{"Pe", "Pv"}}}});
  d.Q = make_presheaf(d.base, "Q", {{"V", {"Qu"}}, {"E", {"Qe"}}},
                      {{"s", {{"Qe", "Qu"}}}, {"t", {{"Qe", "Qu"}}}});
  d.H = make_presheaf(d.base, "H", {{"V", {"Hu", "Hv"}}, {"E", {"He1", "He2"}}},
                      {{"s", {{"He1", "Hu"}, {"He2", "Hu"}}},
                       {"t", {{"He1", "Hv"}, {"He2", "Hv"}}}});
  d.f = {d.P, d.Q, {{"V", {{"Pu", "Qu"}, {"Pv", "Qu"}}}, {"E", {{"Pe", "Qe"}}}}};
  d.h = {d.H, d.P,
         {{"V", {{"Hu", "Pu"}, {"Hv", "Pv"}}},
          {"E", {{"He1", "Pe"}, {"He2", "Pe"}}}}};
  return d;
}

}  // namespace fintop::testdata
