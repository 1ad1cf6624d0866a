#include <doctest.h>

#include "simpkit/constructions.hpp"
#include "simpkit/fixtures.hpp"
#include "simpkit/homotopy.hpp"
#include "simpkit/lifting.hpp"
#include "simpkit/loop.hpp"

using namespace sk;

TEST_CASE("pi0 of simplices and disjoint unions") {
  for (int n = 0; n <= 3; ++n) CHECK(pi0(*standard_simplex(n)).count == 1);
  CHECK(pi0(*disjoint_union({point(), point()})).count == 2);
  CHECK(pi0(*disjoint_union({standard_simplex(1), point(), horn(2, 1)})).count == 3);
}

TEST_CASE("pi1 of a group nerve is the group") {
  CHECK(isomorphic(pi1(truncated_nerve(FiniteCategory::cyclic_group(2), 3).set, 0), FiniteGroup::cyclic(2)));
  CHECK(isomorphic(pi1(truncated_nerve(FiniteCategory::cyclic_group(3), 3).set, 0), FiniteGroup::cyclic(3)));
  FiniteGroup s3 = pi1(truncated_nerve(FiniteCategory::symmetric_group3(), 3).set, 0);
  CHECK(s3.order() == 6);
  CHECK(isomorphic(s3, FiniteGroup::symmetric3()));
  CHECK_FALSE(isomorphic(s3, FiniteGroup::cyclic(6)));
  CHECK_THROWS_AS(pi1(standard_simplex(1), 0), std::invalid_argument);
}

TEST_CASE("Cech nerve of two points over a point") {
  SSetPtr two = disjoint_union({point(), point()});
  Bisimplicial b = cech_nerve(to_point(two), 3);
  for (int m = 0; m <= 3; ++m) {
    CHECK(b.rows[m].set->gens_of_dim(0).size() == (1u << (m + 1)));
    CHECK(b.rows[m].set->dim() == 0);
  }
  CHECK(check_horizontal_identities(b) == 0);
}

TEST_CASE("Cech nerve of an identity is constant") {
  SSetPtr d2 = standard_simplex(2);
  Bisimplicial b = cech_nerve(SimplicialMap::identity(d2), 2);
  for (int m = 0; m <= 2; ++m) CHECK(isomorphic(*b.rows[m].set, *d2));
  CHECK(check_horizontal_identities(b) == 0);
  CHECK_THROWS_AS(cech_nerve(to_point(standard_simplex(1)), 1), std::invalid_argument);
}

TEST_CASE("loop rows satisfy the identities") {
  PointedSpace z2 = loop_fixtures(4)[0];
  LoopGroup g = loop_group(z2.p, z2.x, 2, 2);
  for (int m = 0; m <= 2; ++m) CHECK(check_identities(*g.rows->row(m), 2) == 0);
  CHECK(check_horizontal_identities(g.object) == 0);
  // G_0 is the base
  CHECK(g.object.rows[0].set->size() == 1);
  CHECK_THROWS_AS(LoopRows(z2.p, vertex_section(standard_simplex(0), 0)), std::invalid_argument);
}

TEST_CASE("pi0 of the first row is the loop group") {
  for (auto& f : loop_fixtures(4)) {
    CAPTURE(f.name);
    LoopGroup g = loop_group(f.p, f.x, 2, 1);
    // one vertex of G_1 per group element
    CHECK(g.object.rows[1].set->gens_of_dim(0).size() == static_cast<size_t>(f.group_order));
    FiniteGroup l = loop_pi0_group(g);
    CHECK(l.order() == f.group_order);
    CHECK(isomorphic(l, pi1(f.space.set, 0)));
  }
}

TEST_CASE("loop theorem on group nerves") {
  for (auto& f : loop_fixtures(4)) {
    CAPTURE(f.name);
    LoopGroup g = loop_group(f.p, f.x, 2, 2);
    Report r = verify_loop_theorem(g, 2, 2);
    CHECK(r.holds());
    // {01,12}, {01,02}, {02,12}
    CHECK(r.details["partitions"].size() == 3);
    for (auto& w : r.details["prism_witnesses"]) CHECK(w["valid"] == true);
  }
}

TEST_CASE("loop theorem fails without a right fibration") {
  PointedSpace d1 = loop_negative_control();
  LoopGroup g = loop_group(d1.p, d1.x, 2, 2);
  Report r = verify_loop_theorem(g, 2, 2);
  CHECK(r.verdict == "fails");
  REQUIRE_FALSE(r.counterexample.is_null());
  CHECK(r.counterexample["check"]["check"] == "p is a right fibration");
}
