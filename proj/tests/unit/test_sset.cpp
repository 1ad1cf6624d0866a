#include <doctest.h>

#include <algorithm>
#include <set>

#include "simpkit/constructions.hpp"
#include "simpkit/sset_json.hpp"

using namespace sk;

namespace {

long long binom(int a, int b) {
  if (b < 0 || b > a) return 0;
  long long c = 1;
  for (int t = 1; t <= b; ++t) c = c * (a - b + t) / t;
  return c;
}

// Simplices of Delta^k at level n are the monotone maps [n] -> [k].
long long hom_count(int n, int k) { return binom(n + k + 1, k); }

}  // namespace

TEST_CASE("standard simplices and their boundaries") {
  CHECK(generator_counts(*standard_simplex(0)) == std::vector<int>{1});
  CHECK(generator_counts(*standard_simplex(2)) == std::vector<int>{3, 3, 1});
  CHECK(standard_simplex(4)->size() == 31);
  CHECK(generator_counts(*boundary(1)) == std::vector<int>{2});
  CHECK(generator_counts(*horn(2, 1)) == std::vector<int>{3, 2});
  auto h32 = horn(3, 2);
  CHECK(generator_counts(*h32) == std::vector<int>{4, 6, 3});
  CHECK(h32->find("013") < 0);
  CHECK_THROWS_AS(horn(2, 3), std::invalid_argument);
  CHECK_THROWS_AS(horn(0, 0), std::invalid_argument);
  for (int k = 0; k <= 3; ++k)
    for (int n = 0; n <= 4; ++n) CHECK(standard_simplex(k)->level_size(n) == hom_count(n, k));
}

TEST_CASE("level enumeration against the Hom oracle") {
  auto d1 = standard_simplex(1);
  CHECK(d1->level(2).size() == 4);
  CHECK(hom_count(2, 1) == 4);
  auto pt = point();
  for (int n = 0; n <= 5; ++n) CHECK(pt->level(n).size() == 1);
  for (int k = 0; k <= 3; ++k)
    for (int n = 0; n <= 3; ++n) {
      auto lv = standard_simplex(k)->level(n);
      std::set<SimplexRef> uniq(lv.begin(), lv.end());
      CHECK(uniq.size() == lv.size());
      CHECK(static_cast<long long>(lv.size()) == hom_count(n, k));
    }
}

TEST_CASE("classification of degenerate simplices") {
  auto d2 = standard_simplex(2);
  SimplexRef v2 = d2->id(d2->find("2"));
  SimplexRef s = d2->degen(d2->degen(v2, 0), 1);
  CHECK(s.gen == v2.gen);
  CHECK(s.word().indices == std::vector<int>{1, 0});
  // Face of a degenerate simplex undoes the degeneracy.
  SimplexRef e = d2->id(d2->find("01"));
  CHECK(d2->face(d2->degen(e, 1), 1) == e);
  CHECK(d2->face(d2->degen(e, 1), 2) == e);
  CHECK(d2->face(d2->degen(e, 1), 0) == d2->degen(d2->face(e, 0), 0));
}

TEST_CASE("delta_simplex matches generator names") {
  auto d3 = standard_simplex(3);
  for (auto& s : d3->level(2)) {
    std::vector<int> verts;
    for (int j = 0; j <= 2; ++j) verts.push_back(d3->vertex(s, j).gen);
    CHECK(delta_simplex(3, verts) == s);
  }
}

TEST_CASE("simplicial identities on constructions") {
  std::vector<SSetPtr> sets = {standard_simplex(3), boundary(3), horn(3, 1), product(standard_simplex(1), standard_simplex(2)).pres.set,
                               join(standard_simplex(1), horn(2, 0)).set, opposite(horn(3, 0))};
  for (auto& k : sets) CHECK(check_identities(*k, 4) == 0);
}

TEST_CASE("nerves of categories") {
  auto disc = nerve_of_category(FiniteCategory::discrete(2));
  CHECK(generator_counts(*disc) == std::vector<int>{2});
  auto n2 = nerve_of_category(FiniteCategory::linear(2));
  CHECK(isomorphic(*n2, *standard_simplex(2)));
  auto z2 = FiniteCategory::cyclic_group(2);
  CHECK_THROWS_AS(nerve_of_category(z2), std::invalid_argument);
  auto t = truncated_nerve(z2, 4);
  CHECK(generator_counts(*t.set) == std::vector<int>{1, 1, 1, 1, 1});
  CHECK(check_identities(*t.set, 4) == 0);
  auto s3 = truncated_nerve(FiniteCategory::symmetric_group3(), 3);
  CHECK(generator_counts(*s3.set) == std::vector<int>{1, 5, 25, 125});
  // non-associative table is rejected
  auto bad = FiniteCategory::monoid({{0, 1, 2}, {1, 2, 0}, {2, 1, 0}});
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("products, joins, opposites") {
  auto d1 = standard_simplex(1);
  auto pr = product(d1, d1);
  CHECK(generator_counts(*pr.pres.set) == std::vector<int>{4, 5, 2});
  for (int n = 0; n <= 3; ++n) CHECK(pr.pres.set->level_size(n) == d1->level_size(n) * d1->level_size(n));
  CHECK(pr.pr1.valid());
  CHECK(pr.pr2.valid());
  CHECK(isomorphic(*join(point(), point()).set, *standard_simplex(1)));
  CHECK(isomorphic(*join(d1, d1).set, *standard_simplex(3)));
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (int c = 0; a + b + c <= 4; ++c) {
        auto l = join(join(standard_simplex(a), standard_simplex(b)).set, standard_simplex(c)).set;
        auto r = join(standard_simplex(a), join(standard_simplex(b), standard_simplex(c)).set).set;
        CHECK(isomorphic(*l, *r));
        CHECK(isomorphic(*l, *standard_simplex(a + b + c + 2)));
      }
  for (auto& k : {horn(3, 1), product(d1, standard_simplex(2)).pres.set, nerve_of_category(FiniteCategory::poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}))}) {
    auto oo = opposite(opposite(k));
    CHECK(oo->size() == k->size());
    bool same = true;
    for (int g = 0; g < k->size(); ++g) same &= oo->gen(g).faces == k->gen(g).faces;
    CHECK(same);
  }
}

TEST_CASE("pushouts") {
  auto d1 = standard_simplex(1);
  auto pt = point();
  SimplicialMap to0{pt, d1, {d1->id(0)}}, to1{pt, d1, {d1->id(1)}};
  auto glued = pushout(to1, to0);
  CHECK(generator_counts(*glued.set) == std::vector<int>{3, 2});
  CHECK(glued.from_b.valid());
  CHECK(glued.from_x.valid());
  auto h = horn(2, 1);
  auto d2 = standard_simplex(2);
  auto inc = inclusion_by_names(h, d2);
  auto two = pushout(inc, inc);
  // glued along the spine: vertices and spine edges are shared
  CHECK(generator_counts(*two.set) == std::vector<int>{3, 4, 2});
  auto e = inclusion_by_names(facet_union(2, {2}), d2);
  CHECK(generator_counts(*pushout(e, e).set) == std::vector<int>{4, 5, 2});
  // gluing along the identity returns X
  auto id = SimplicialMap::identity(d2);
  CHECK(isomorphic(*pushout(id, id).set, *d2));
  SimplicialMap notinj{boundary(1), pt, {pt->id(0), pt->id(0)}};
  CHECK_THROWS_AS(pushout(notinj, notinj), std::invalid_argument);
}

TEST_CASE("JSON round trip and diagnostics") {
  auto k = product(standard_simplex(1), standard_simplex(1)).pres.set;
  auto j = sset_to_json(*k);
  auto k2 = sset_from_json(j);
  CHECK(sset_to_json(*k2) == j);
  CHECK(isomorphic(*k, *k2));
  json bad = {{"generators", {{"0", {"a", "b"}}, {"1", {"e"}}}}, {"faces", {{"e", {{{"gen", "a"}}, {{"gen", "zz"}}}}}}};
  try {
    sset_from_json(bad);
    CHECK(false);
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("'e'") != std::string::npos);
  }
}
