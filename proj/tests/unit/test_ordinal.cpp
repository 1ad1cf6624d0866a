#include <doctest.h>

#include <algorithm>

#include "simpkit/ordinal.hpp"

using namespace sk;

namespace {

// Brute force over all functions [m] -> [n].
std::vector<OrdMap> brute_monotone(int m, int n) {
  std::vector<OrdMap> out;
  OrdMap a(m + 1, 0);
  while (true) {
    if (std::is_sorted(a.begin(), a.end())) out.push_back(a);
    int t = 0;
    while (t <= m && ++a[t] > n) a[t++] = 0;
    if (t > m) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("monotone maps agree with brute force") {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) CHECK(monotone_maps(m, n) == brute_monotone(m, n));
  CHECK(monotone_maps(2, 1).size() == 4);
}

TEST_CASE("surjections and injections partition by image") {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      size_t s = 0, i = 0;
      for (auto& a : brute_monotone(m, n)) {
        s += is_surjective(a, n);
        i += is_injective(a);
      }
      CHECK(surjections(m, n).size() == s);
      CHECK(injections(m, n).size() == i);
    }
}

TEST_CASE("epi-mono factorization recomposes") {
  for (auto& a : brute_monotone(3, 3)) {
    OrdMap e, mo;
    epi_mono(a, e, mo);
    CHECK(compose(mo, e) == a);
    CHECK(is_injective(mo));
    CHECK(is_surjective(e, static_cast<int>(mo.size()) - 1));
  }
}

TEST_CASE("cosimplicial identities") {
  for (int n = 1; n <= 4; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i < j; ++i) CHECK(compose(coface(n, j), coface(n - 1, i)) == compose(coface(n, i), coface(n - 1, j - 1)));
  for (int n = 0; n <= 3; ++n)
    for (int j = 0; j <= n; ++j) {
      CHECK(compose(codegeneracy(n, j), coface(n + 1, j)) == identity_map(n));
      CHECK(compose(codegeneracy(n, j), coface(n + 1, j + 1)) == identity_map(n));
    }
}

TEST_CASE("degeneracy words") {
  // s1 s0 on a vertex: [2] -> [0]
  DegeneracyWord w = DegeneracyWord::from_surjection({0, 0, 0});
  CHECK(w.indices == std::vector<int>{1, 0});
  CHECK(w.to_surjection(0) == OrdMap{0, 0, 0});
  for (int k = 0; k <= 2; ++k)
    for (int m = k; m <= k + 3; ++m)
      for (auto& e : surjections(m, k)) {
        auto word = DegeneracyWord::from_surjection(e);
        CHECK(word.valid());
        CHECK(word.to_surjection(k) == e);
      }
  // s_i s_j = s_{j+1} s_i for i <= j: both act as sigma_j o sigma_i ... on a 1-simplex
  DegeneracyWord a{{1}}, b{{1}};
  auto c = a.then(b, 1);
  CHECK(c.valid());
  CHECK(c.indices == std::vector<int>{2, 1});
}

TEST_CASE("twisted double and opposite") {
  CHECK(opposite_map({0, 2}, 2) == OrdMap{0, 2});
  CHECK(opposite_map({0, 1}, 2) == OrdMap{1, 2});
  for (auto& a : brute_monotone(1, 2)) {
    auto t = twisted_double(a, 2);
    CHECK(t.size() == 4);
    CHECK(is_monotone(t, 5));
    CHECK(t[0] == a[0]);
    CHECK(t[3] == 5 - a[0]);
  }
  CHECK(twisted_double(identity_map(2), 2) == identity_map(5));
}
