#include <doctest.h>

#include <random>

#include "simpkit/constructions.hpp"
#include "simpkit/lifting.hpp"
#include "simpkit/slices.hpp"

using namespace sk;

namespace {

LiftProblem over_point(const SimplicialMap& inc, const SimplicialMap& top) {
  SSetPtr x = top.tgt;
  SimplicialMap p = to_point(x);
  SimplicialMap bottom = to_point(inc.tgt);
  bottom.tgt = p.tgt;
  return {inc, top, bottom, p};
}

SimplicialMap by_names(const SSetPtr& a, const SSetPtr& x, const std::vector<std::pair<std::string, SimplexRef>>& v) {
  SimplicialMap f{a, x, std::vector<SimplexRef>(a->size())};
  for (auto& [n, s] : v) f.assign[a->find(n)] = s;
  return f;
}

// Poset x0 < z1 with an isolated w0, over [1].
SimplicialMap discrete_fibration() {
  auto P = FiniteCategory::poset(3, {{0, 2}});
  auto Q = FiniteCategory::linear(1);
  auto np = nerve_of_category(P), nq = nerve_of_category(Q);
  std::vector<int> obj = {0, 0, 1};
  Presentation pp = present(NerveLevels(P), 3), pq = present(NerveLevels(Q), 3);
  return map_from_keys(pp, pq, [&](const Key& k, int n) {
    Key out{obj[k[0]]};
    for (int j = 1; j <= n; ++j) {
      int a = obj[P.arrows[k[j]].src], b = obj[P.arrows[k[j]].tgt];
      out.push_back(Q.hom(a, b)[0]);
    }
    return out;
  });
}

}  // namespace

TEST_CASE("basic lifts") {
  auto n2 = nerve_of_category(FiniteCategory::linear(2));
  auto inc = generating_inclusion(2, 1);
  auto top = by_names(inc.src, n2, {{"0", n2->id(0)}, {"1", n2->id(1)}, {"2", n2->id(2)}, {"01", n2->id(n2->find("0<1"))}, {"12", n2->id(n2->find("1<2"))}});
  auto lp = over_point(inc, top);
  auto lift = solve_lift(lp);
  REQUIRE(lift);
  CHECK((*lift)(inc.tgt->id(inc.tgt->find("012"))) == n2->id(n2->find("0<1|1<2")));

  auto d1 = standard_simplex(1);
  auto h0 = generating_inclusion(2, 0);
  SimplexRef v0 = d1->id(0), e = d1->id(2);
  auto flat = by_names(h0.src, d1, {{"0", v0}, {"1", v0}, {"2", v0}, {"01", d1->degen(v0, 0)}, {"02", d1->degen(v0, 0)}});
  CHECK(solve_lift(over_point(h0, flat)));
  auto up = by_names(h0.src, d1, {{"0", v0}, {"1", d1->id(1)}, {"2", d1->id(1)}, {"01", e}, {"02", e}});
  auto l2 = solve_lift(over_point(h0, up));
  REQUIRE(l2);
  CHECK((*l2)(h0.tgt->id(h0.tgt->find("012"))) == d1->degen(e, 1));
}

TEST_CASE("boundary of an edge: lift iff an edge joins the endpoints") {
  auto x = nerve_of_category(FiniteCategory::poset(3, {{0, 1}}));
  auto inc = generating_inclusion(1, -1);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      auto top = by_names(inc.src, x, {{"0", x->id(a)}, {"1", x->id(b)}});
      bool oracle = false;
      for (auto& ed : x->level(1)) oracle |= x->vertex(ed, 0).gen == a && x->vertex(ed, 1).gen == b;
      CHECK(solve_lift(over_point(inc, top)).has_value() == oracle);
    }
}

TEST_CASE("non-commuting square is rejected") {
  auto d1 = standard_simplex(1);
  auto inc = generating_inclusion(1, 0);
  SimplicialMap top{inc.src, d1, {d1->id(1)}};
  SimplicialMap p = SimplicialMap::identity(d1);
  SimplicialMap bottom{inc.tgt, d1, {d1->id(0), d1->id(1), d1->id(2)}};
  CHECK_THROWS_AS(solve_lift({inc, top, bottom, p}), std::invalid_argument);
}

TEST_CASE("constraint search agrees with naive enumeration") {
  std::mt19937 rng(7);
  std::vector<SSetPtr> targets = {nerve_of_category(FiniteCategory::linear(2)), standard_simplex(1), horn(2, 1),
                                  truncated_nerve(FiniteCategory::cyclic_group(2), 3).set,
                                  nerve_of_category(FiniteCategory::poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}))};
  int compared = 0;
  for (auto& x : targets)
    for (int n = 1; n <= 3; ++n)
      for (int k = -1; k <= n; ++k) {
        auto inc = generating_inclusion(n, k);
        Target t(x);
        MapQuery qa{inc.src, &t, {}, std::nullopt};
        auto tops = all_maps(qa);
        if (tops.empty()) continue;
        for (int rep = 0; rep < 3; ++rep) {
          auto& top = tops[rng() % tops.size()];
          auto lp = over_point(inc, top);
          auto fast = solve_lift(lp);
          auto slow = solve_lift_naive(lp, 200000);
          if (!slow) continue;
          CHECK(fast.has_value() == slow->has_value());
          if (fast) CHECK(lp.commutes());
          ++compared;
        }
        auto c = naive_count_maps(qa, 200000);
        if (c) CHECK(*c == static_cast<long long>(tops.size()));
      }
  CHECK(compared > 20);
}

TEST_CASE("fibration classification") {
  auto d1 = standard_simplex(1);
  auto r = classify_fibration(to_point(d1), FibrationClass::kan, 3);
  CHECK(r.verdict == "fails");
  CHECK(r.counterexample["n"] == 2);
  CHECK(r.counterexample["k"] == 0);
  CHECK(is_quasi_category(d1, 3).holds());
  CHECK(classify_fibration(to_point(point()), FibrationClass::trivial, 3).holds());
  CHECK(classify_fibration(SimplicialMap::identity(standard_simplex(2)), FibrationClass::trivial, 3).holds());
  CHECK(!classify_fibration(to_point(boundary(1)), FibrationClass::trivial, 2).holds());
  CHECK(classify_fibration(discrete_fibration(), FibrationClass::right, 3).holds());
  CHECK(!classify_fibration(discrete_fibration(), FibrationClass::left, 3).holds());
  CHECK(!is_quasi_category(horn(2, 1), 2).holds());
  CHECK(is_kan(truncated_nerve(FiniteCategory::cyclic_group(2), 4).set, 3).holds());
}

TEST_CASE("slices and right mapping spaces") {
  auto pt = point();
  auto sp = slice(SimplicialMap::identity(pt), 3);
  CHECK(generator_counts(*sp.set) == std::vector<int>{1});
  auto n1 = nerve_of_category(FiniteCategory::linear(1));
  SimplicialMap at1{pt, n1, {n1->id(1)}};
  CHECK(isomorphic(*slice(at1, 3).set, *standard_simplex(1)));
  auto z2 = truncated_nerve(FiniteCategory::cyclic_group(2), 4).set;
  SimplicialMap base{pt, z2, {z2->id(0)}};
  CHECK(coslice(base, 1).set->gens_of_dim(0).size() == 2);
  CHECK(generator_counts(*hom_right(standard_simplex(1), 0, 1, 3).set) == std::vector<int>{1});
  auto c = FiniteCategory::poset(3, {{0, 1}, {0, 2}});
  auto nc = nerve_of_category(c);
  CHECK(generator_counts(*hom_right(nc, 0, 1, 3).set) == std::vector<int>{1});
  CHECK(hom_right(nc, 1, 2, 3).set->size() == 0);
  auto z3 = truncated_nerve(FiniteCategory::cyclic_group(3), 4).set;
  auto h = hom_right(z3, 0, 0, 3);
  CHECK(h.set->gens_of_dim(0).size() == 3);
  CHECK(is_kan(h.set, 2).holds());
}

TEST_CASE("homotopy category") {
  auto s3 = FiniteCategory::symmetric_group3();
  auto x = truncated_nerve(s3, 4).set;
  auto h = tau1(x);
  CHECK(h.cat.num_arrows() == 6);
  CHECK(h.cat.is_groupoid());
  auto c = FiniteCategory::poset(3, {{0, 1}, {1, 2}});
  auto hc = tau1(nerve_of_category(c));
  CHECK(hc.cat.num_arrows() == c.num_arrows());
  auto nc = nerve_of_category(c);
  CHECK(!is_equivalence_edge(hc, nc->id(nc->find("0<1"))));
  CHECK(is_equivalence_edge(hc, nc->degen(nc->id(0), 0)));
  CHECK_THROWS_AS(tau1(horn(2, 1)), std::invalid_argument);
}

TEST_CASE("Cartesian edges") {
  auto z2 = truncated_nerve(FiniteCategory::cyclic_group(2), 5).set;
  auto p = to_point(z2);
  for (auto& e : z2->level(1)) CHECK(is_cartesian_edge(p, e, 2).holds() == is_equivalence_edge(z2, e));
  auto n1 = nerve_of_category(FiniteCategory::linear(1));
  CHECK(!is_cartesian_edge(to_point(n1), n1->id(2), 2).holds());
  CHECK(is_cartesian_edge(to_point(n1), n1->degen(n1->id(0), 0), 2).holds());
}
