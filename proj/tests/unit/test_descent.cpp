#include <doctest.h>

#include "simpkit/descent.hpp"

using namespace sk;

namespace {

// Non-separated control: constant {p, q} on the cover levels, both objects
// of the base restricted to p.
DescentData collapsing_control() {
  DescentData d = descent_data({0, 0}, 1, constant_presheaf(2));
  d.coface[0][0] = Functor{{0, 0}, {0, 0}};
  return d;
}

}  // namespace

TEST_CASE("Cech levels of a two point cover of a point") {
  DescentData d = descent_data({0, 0}, 1, constant_presheaf(1));
  CHECK(d.at(-1).num_objects() == 1);
  DescentData t = descent_data({0, 0}, 1, torsor_presheaf(FiniteGroup::cyclic(2)));
  // Fun(U, BG) has |G|^|U| arrows, |U_m| = 2^(m+1)
  CHECK(t.at(0).num_arrows() == 4);
  CHECK(t.at(1).num_arrows() == 16);
  CHECK(t.at(2).num_arrows() == 256);
}

TEST_CASE("torsors satisfy descent") {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  DescentData d = descent_data({0, 0}, 1, torsor_presheaf(z2));
  DescentGroupoid g = descent_groupoid(d);
  // brute-force gluing: cocycles on E x E modulo gauge are BG again
  CHECK(g.groupoid.is_groupoid());
  Report r = descent_check(d);
  CHECK(r.holds());
  CHECK(r.details["pi0_descent"] == 1);
  CHECK(r.details["automorphism_orders"] == json::array({2}));
  // two points over two points
  CHECK(descent_check(descent_data({0, 1, 1}, 2, torsor_presheaf(z2))).holds());
}

TEST_CASE("descent groupoid of torsors counts cocycles") {
  DescentData d = descent_data({0, 0}, 1, torsor_presheaf(FiniteGroup::cyclic(2)));
  DescentGroupoid g = descent_groupoid(d);
  // cocycles g_ij on {1,2}^2 with g_ik = g_jk g_ij: g_ii = e, g_21 = g_12^-1, so |G| of them
  CHECK(g.groupoid.num_objects() == 2);
}

TEST_CASE("non-separated control fails on components") {
  Report r = descent_check(collapsing_control());
  CHECK(r.verdict == "fails");
  CHECK(r.counterexample["kind"] == "pi0 not injective");
}

TEST_CASE("the constant presheaf satisfies descent") {
  CHECK(descent_check(descent_data({0, 0}, 1, constant_presheaf(2))).holds());
}

TEST_CASE("identity covers always satisfy descent") {
  for (int nb = 1; nb <= 2; ++nb) {
    std::vector<int> id(nb);
    for (int i = 0; i < nb; ++i) id[i] = i;
    CHECK(descent_check(descent_data(id, nb, torsor_presheaf(FiniteGroup::cyclic(2)))).holds());
    CHECK(descent_check(descent_data(id, nb, torsor_presheaf(FiniteGroup::symmetric3()))).holds());
    CHECK(descent_check(descent_data(id, nb, constant_presheaf(3))).holds());
  }
}

TEST_CASE("descent data validation and JSON") {
  DescentData d = descent_data({0, 0}, 1, constant_presheaf(2));
  DescentData back = DescentData::from_json(d.to_json());
  CHECK(back.to_json() == d.to_json());
  DescentData bad = d;
  bad.coface[1][0] = Functor{{1, 0}, {1, 0}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(descent_data({0, 0}, 2, constant_presheaf(1)), std::invalid_argument);
}
