#include <doctest.h>

#include "simpkit/constructions.hpp"
#include "simpkit/fixtures.hpp"
#include "simpkit/lifting.hpp"
#include "simpkit/twisted.hpp"

using namespace sk;

namespace {

// Intervals i <= j of [n] ordered by reverse inclusion.
FiniteCategory interval_poset(int n) {
  std::vector<std::pair<int, int>> iv;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) iv.push_back({i, j});
  std::vector<std::pair<int, int>> rel;
  for (size_t a = 0; a < iv.size(); ++a)
    for (size_t b = 0; b < iv.size(); ++b)
      if (a != b && iv[a].first <= iv[b].first && iv[b].second <= iv[a].second) rel.push_back({int(a), int(b)});
  return FiniteCategory::poset(static_cast<int>(iv.size()), rel);
}

std::vector<SimplicialMap> all_sections(const SimplicialMap& p) {
  Sections s = sections(p, 0);
  std::vector<SimplicialMap> out;
  for (auto& k : s.levels->level(0)) out.push_back(s.levels->as_section(k));
  return out;
}

}  // namespace

TEST_CASE("twisted arrow levels satisfy the simplicial identities") {
  for (auto& [name, c] : twisted_fixture_categories()) {
    CAPTURE(name);
    TwistedLevels tw(std::make_shared<NerveLevels>(c));
    CHECK(check_identities(tw, 3) == 0);
  }
  TwistedLevels tw(std::make_shared<PresentedLevels>(horn(2, 1)));
  CHECK(check_identities(tw, 3) == 0);
}

TEST_CASE("twisted arrows of simplices") {
  CHECK(generator_counts(*twisted_arrow(standard_simplex(0), 2).tw.set) == std::vector<int>{1});
  TwistedArrow t1 = twisted_arrow(standard_simplex(1), 3);
  CHECK(t1.tw.set->gens_of_dim(0).size() == standard_simplex(1)->level(1).size());
  CHECK(t1.tw.set->gens_of_dim(0).size() == 3);
  for (int n = 1; n <= 3; ++n) {
    CAPTURE(n);
    TwistedArrow t = twisted_arrow(standard_simplex(n), n + 1);
    CHECK(isomorphic(*t.tw.set, *nerve_of_category(interval_poset(n))));
  }
}

TEST_CASE("lambda is a right fibration on nerves of categories") {
  for (auto& [name, c] : twisted_fixture_categories()) {
    CAPTURE(name);
    CHECK(lambda_check(twisted_arrow(c, 3), 3).holds());
  }
  CHECK(lambda_check(twisted_arrow(standard_simplex(2), 3), 3).holds());
}

TEST_CASE("lambda over a horn that is not a quasi-category") {
  // expected negative: the composable pair 01, 12 has no composite
  Report r = lambda_check(twisted_arrow(horn(2, 1), 3), 3);
  CHECK(r.verdict == "fails");
  CHECK(!r.counterexample.is_null());
}

TEST_CASE("lambda fibres are discrete on Hom-sets") {
  for (auto& [name, c] : twisted_fixture_categories()) {
    CAPTURE(name);
    TwistedArrow t = twisted_arrow(c, 1);
    for (int x = 0; x < c.num_objects(); ++x)
      for (int y = 0; y < c.num_objects(); ++y) {
        Presentation f = lambda_fibre(t, {x}, {y}, 1);
        CHECK(pi0(*f.set).count == static_cast<int>(c.hom(x, y).size()));
        CHECK(f.set->gens_of_dim(0).size() == c.hom(x, y).size());
      }
  }
}

TEST_CASE("section fixtures are Cartesian fibrations") {
  for (auto& f : section_fixtures()) {
    CAPTURE(f.name);
    CHECK(f.p.valid());
    CHECK(classify_fibration(f.p, FibrationClass::inner, 2).holds());
  }
}

TEST_CASE("sections of the identity form a point") {
  Presentation k = nerve_presentation(FiniteCategory::linear(1));
  Sections s = sections(SimplicialMap::identity(k.set), 2);
  CHECK(generator_counts(*s.pres.set) == std::vector<int>{1});
}

TEST_CASE("sections of a product are functors into the fibre") {
  for (int m = 1; m <= 2; ++m) {
    NamedFibration f = product_fibration("p", FiniteCategory::linear(1), FiniteCategory::linear(m));
    Sections s = sections(f.p, 2 * m);
    SSetPtr fibre = standard_simplex(m);
    CHECK(static_cast<long long>(s.pres.set->gens_of_dim(0).size()) == fibre->level_size(1));
    // Fun(Delta^1, Delta^m) is the nerve of the poset of edges of Delta^m
    std::vector<std::pair<int, int>> edges, rel;
    for (int i = 0; i <= m; ++i)
      for (int j = i; j <= m; ++j) edges.push_back({i, j});
    for (size_t a = 0; a < edges.size(); ++a)
      for (size_t b = 0; b < edges.size(); ++b)
        if (a != b && edges[a].first <= edges[b].first && edges[a].second <= edges[b].second)
          rel.push_back({int(a), int(b)});
    CHECK(isomorphic(*s.pres.set, *nerve_of_category(FiniteCategory::poset(int(edges.size()), rel))));
  }
}

TEST_CASE("sections of a right fibration form a Kan complex") {
  for (auto& f : section_fixtures()) {
    if (!classify_fibration(f.p, FibrationClass::right, 2).holds()) continue;
    CAPTURE(f.name);
    Sections s = sections(f.p, 2);
    CHECK(is_kan(s.pres.set, 2).holds());
  }
}

TEST_CASE("mapping spaces of sections via the twisted arrows of the base") {
  for (auto& f : section_fixtures()) {
    CAPTURE(f.name);
    bool inner = classify_fibration(f.p, FibrationClass::inner, 2).holds();
    auto secs = all_sections(f.p);
    for (size_t a = 0; a < secs.size(); ++a)
      for (size_t b = 0; b < secs.size(); ++b) {
        CAPTURE(a);
        CAPTURE(b);
        SectionMappingSpace m = mapping_space_sections(f.p, secs[a], secs[b], 2);
        if (inner) CHECK(m.report.details["z_right_fibration"] == "holds");
        CHECK(m.report.holds());
      }
  }
}

TEST_CASE("mapping space over a point is the mapping space of the fibre") {
  NamedFibration f = section_fixtures()[0];
  auto secs = all_sections(f.p);
  REQUIRE(secs.size() == 2);
  SectionMappingSpace up = mapping_space_sections(f.p, secs[0], secs[1], 2);
  SectionMappingSpace down = mapping_space_sections(f.p, secs[1], secs[0], 2);
  CHECK(up.report.details["pi0_sections"].get<int>() + down.report.details["pi0_sections"].get<int>() == 1);
}

TEST_CASE("discrete fibres: mapping spaces are equalities of sections") {
  NamedFibration f = section_fixtures()[2];
  auto secs = all_sections(f.p);
  CHECK(secs.size() == 3);
  for (size_t a = 0; a < secs.size(); ++a)
    for (size_t b = 0; b < secs.size(); ++b)
      CHECK(mapping_space_sections(f.p, secs[a], secs[b], 2).report.details["pi0_sections"] == (a == b ? 1 : 0));
}

TEST_CASE("contractible fibrewise mapping spaces give a contractible mapping space") {
  // fibre [1]: every section maps to the section at the top, which is Cartesian
  NamedFibration f = section_fixtures()[1];
  auto secs = all_sections(f.p);
  Sections gc = cartesian_sections(f.p, 0, 2);
  SimplicialMap top = gc.levels->as_section(gc.pres.gen_key[gc.pres.set->gens_of_dim(0).back()]);
  for (auto& s : secs) {
    SectionMappingSpace m = mapping_space_sections(f.p, s, top, 2);
    REQUIRE(m.space);
    CHECK(pi0(*m.space->pres.set).count == 1);
    CHECK(classify_fibration(to_point(m.space->pres.set), FibrationClass::trivial, 1).holds());
  }
}

TEST_CASE("Cartesian sections over a base with a final vertex") {
  for (auto& f : section_fixtures()) {
    CAPTURE(f.name);
    REQUIRE(final_vertex(f.base.set, 2).has_value());
    Sections gc = cartesian_sections(f.p, 0, 2);
    std::vector<SimplicialMap> cart;
    for (int v : gc.pres.set->gens_of_dim(0)) cart.push_back(gc.levels->as_section(gc.pres.gen_key[v]));
    for (auto& a : cart)
      for (auto& b : cart) CHECK(mapping_space_cart_reduction(f.p, a, b, 2).holds());
  }
}

TEST_CASE("Cartesian sections of a product over Delta^2 recover the fibre") {
  NamedFibration f = section_fixtures()[4];
  Sections gc = cartesian_sections(f.p, 2, 2);
  CHECK(isomorphic(*gc.pres.set, *standard_simplex(1)));
  Sections all = sections(f.p, 0);
  CHECK(all.pres.set->gens_of_dim(0).size() == 4);  // monotone maps [2] -> [1]
}

TEST_CASE("no final vertex is reported") {
  Presentation k = nerve_presentation(FiniteCategory::discrete(2));
  CHECK_FALSE(final_vertex(k.set, 2).has_value());
}
