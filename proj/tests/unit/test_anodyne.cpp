#include <doctest.h>

#include "simpkit/anodyne.hpp"

using namespace sk;

namespace {

void check_valid(const AnodyneWitness& w) {
  std::string why;
  bool ok = w.validate(&why);
  INFO(why);
  CHECK(ok);
}

std::vector<std::vector<int>> subsets(int m) {
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << (m + 1)); ++mask) {
    std::vector<int> s;
    for (int v = 0; v <= m; ++v)
      if (mask >> v & 1) s.push_back(v);
    out.push_back(s);
  }
  return out;
}

LiftProblem problem_from(const AnodyneWitness& w, const SimplicialMap& full) {
  auto a = w.start.to_sset(), b = w.end.to_sset();
  auto inc = inclusion_by_names(a, b);
  SimplicialMap f = full;
  f.src = b;
  auto p = to_point(full.tgt);
  auto bottom = to_point(b);
  bottom.tgt = p.tgt;
  return {inc, restrict_map(f, inc), bottom, p};
}

}  // namespace

TEST_CASE("twisted filtration witnesses") {
  auto w = witness_inner_twisted(1, 1);
  CHECK(w.steps.size() == 4);
  check_valid(w);
  for (int k = 1; k <= 2; ++k) {
    auto w2 = witness_inner_twisted(2, k);
    CHECK(w2.steps.size() == 12);
    check_valid(w2);
    for (auto& s : w2.steps) CHECK((0 < s.k && s.k < s.dim()));
  }
  CHECK_THROWS_AS(witness_inner_twisted(2, 0), std::invalid_argument);
}

TEST_CASE("partition witnesses") {
  CHECK(witness_partition({0, 1, 2}, {1}, 2).steps.empty());
  auto w = witness_partition({0, 1}, {1, 2}, 2);
  CHECK(w.steps.size() == 1);
  check_valid(w);
  check_valid(witness_partition({0, 1, 2}, {2, 3}, 3));
  int count = 0;
  for (int m = 1; m <= 4; ++m)
    for (auto& I : subsets(m))
      for (auto& J : subsets(m)) {
        int u = 0, meet = 0;
        for (int v = 0; v <= m; ++v) {
          bool a = std::count(I.begin(), I.end(), v), b = std::count(J.begin(), J.end(), v);
          u += a || b;
          meet += a && b;
        }
        if (u != m + 1 || !meet) {
          CHECK_THROWS_AS(witness_partition(I, J, m), std::invalid_argument);
          continue;
        }
        check_valid(witness_partition(I, J, m));
        ++count;
      }
  CHECK(count > 100);
}

TEST_CASE("facet witnesses") {
  auto w = witness_facets({0, 2}, 2);
  REQUIRE(w.steps.size() == 1);
  CHECK(w.steps[0].k == 1);
  auto w1 = witness_facets({1}, 1);
  REQUIRE(w1.steps.size() == 1);
  CHECK(w1.steps[0].k == 0);
  check_valid(witness_facets({0, 1}, 3));
  for (int n = 1; n <= 4; ++n)
    for (auto& s : subsets(n)) {
      if (static_cast<int>(s.size()) == n + 1) {
        CHECK_THROWS_AS(witness_facets(s, n), std::invalid_argument);
        continue;
      }
      check_valid(witness_facets(s, n));
    }
}

TEST_CASE("prism witnesses are right anodyne") {
  for (int m = 0; m <= 2; ++m)
    for (int n = 1; n <= 3; ++n)
      for (int k = 1; k <= n; ++k) {
        auto w = witness_prism(m, n, k);
        CHECK(w.kind == HornKind::right);
        check_valid(w);
      }
}

TEST_CASE("lifting along witnesses") {
  auto z2 = truncated_nerve(FiniteCategory::cyclic_group(2), 4).set;
  auto w = witness_facets({0}, 3);
  Target t(z2);
  MapQuery q{w.end.to_sset(), &t, {}, std::nullopt};
  auto maps = all_maps(q);
  REQUIRE(!maps.empty());
  for (size_t i = 0; i < maps.size(); i += 3) {
    auto lp = problem_from(w, maps[i]);
    auto r = lift_via_witness(w, lp, FibrationClass::kan);
    REQUIRE(r.lift);
    CHECK(restrict_map(*r.lift, lp.inclusion).assign == lp.top.assign);
    CHECK(r.lift->valid());
    CHECK(solve_lift(lp).has_value());
  }
  auto empty = witness_partition({0, 1}, {0, 1}, 1);
  CHECK(empty.steps.empty());
  auto edge = first_map(MapQuery{empty.end.to_sset(), &t, {}, std::nullopt});
  REQUIRE(edge);
  auto lp0 = problem_from(empty, *edge);
  auto r0 = lift_via_witness(empty, lp0, FibrationClass::kan);
  REQUIRE(r0.lift);
  CHECK(r0.lift->assign == lp0.top.assign);
  auto tw = witness_inner_twisted(1, 1);
  auto n3 = nerve_of_category(FiniteCategory::linear(3));
  Target tn(n3);
  for (auto& f : all_maps(MapQuery{tw.end.to_sset(), &tn, {}, std::nullopt})) {
    auto p = problem_from(tw, f);
    auto r = lift_via_witness(tw, p, FibrationClass::inner);
    REQUIRE(r.lift);
    auto direct = solve_lift(p);
    REQUIRE(direct);
    CHECK(r.lift->assign == direct->assign);
  }
  auto w2 = witness_facets({0}, 2);
  auto tri = first_map(MapQuery{w2.end.to_sset(), &t, {}, std::nullopt});
  REQUIRE(tri);
  CHECK_THROWS_AS(lift_via_witness(w2, problem_from(w2, *tri), FibrationClass::inner), std::invalid_argument);
}
