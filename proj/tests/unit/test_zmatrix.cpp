#include <doctest.h>

#include <functional>
#include <random>

#include "simpkit/zmatrix.hpp"

using namespace sk;

namespace {

Matrix random_matrix(std::mt19937& rng, int r, int c, int spread) {
  std::uniform_int_distribution<int> d(-spread, spread);
  Matrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

// Determinant by cofactor expansion; fine for k <= 4.
Int det(const Matrix& m) {
  int n = m.rows();
  if (n == 0) return 1;
  Int s = 0;
  for (int j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    Matrix minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i)
      for (int k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    s += (j % 2 ? -1 : 1) * m(0, j) * det(minor);
  }
  return s;
}

// gcd of all k x k minors.
Int determinantal_divisor(const Matrix& a, int k) {
  Int g = 0;
  std::vector<int> rows, cols;
  std::function<void(int)> pick_cols;
  std::function<void(int)> pick_rows = [&](int start) {
    if (static_cast<int>(rows.size()) == k) {
      pick_cols(0);
      return;
    }
    for (int i = start; i < a.rows(); ++i) {
      rows.push_back(i);
      pick_rows(i + 1);
      rows.pop_back();
    }
  };
  pick_cols = [&](int start) {
    if (static_cast<int>(cols.size()) == k) {
      Matrix m(k, k);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m(i, j) = a(rows[i], cols[j]);
      Int d = det(m);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      return;
    }
    for (int j = start; j < a.cols(); ++j) {
      cols.push_back(j);
      pick_cols(j + 1);
      cols.pop_back();
    }
  };
  pick_rows(0);
  return g;
}

}  // namespace

TEST_CASE("smith form matches determinantal divisors") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
    Matrix a = random_matrix(rng, r, c, trial % 3 == 0 ? 1 : 6);
    if (trial % 5 == 0 && r > 1) a.set_block(r - 1, 0, a.block(0, 0, 1, c).scaled(2));
    SmithForm s = smith(a);
    CHECK(s.U * a * s.V == s.D);
    CHECK(s.U * s.Uinv == Matrix::identity(r));
    CHECK(s.V * s.Vinv == Matrix::identity(c));
    Int prod = 1;
    for (int k = 1; k <= std::min(r, c); ++k) {
      Int dk = determinantal_divisor(a, k);
      if (k <= s.rank) {
        prod *= s.diag[k - 1];
        CHECK(prod == dk);
        if (k > 1) CHECK(s.diag[k - 1] % s.diag[k - 2] == 0);
      } else {
        CHECK(dk == 0);
      }
    }
  }
}

TEST_CASE("kernel, image, solve and complements") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 5);
    Matrix a = random_matrix(rng, r, c, 3);
    Matrix k = kernel(a);
    CHECK((a * k).is_zero());
    CHECK(k.cols() == c - rank(a));
    if (k.cols() > 0) CHECK(is_saturated(k));
    Matrix im = image_basis(a);
    CHECK(im.cols() == rank(a));
    CHECK(solve(im, a).has_value());
    CHECK(solve(a, im).has_value());
    Matrix x = random_matrix(rng, c, 1, 4);
    auto y = solve(a, a * x);
    REQUIRE(y.has_value());
    CHECK(a * *y == a * x);
    if (k.cols() > 0) {
      Matrix comp = complement_basis(k);
      CHECK(is_unimodular(Matrix::hstack({k, comp}, c)));
    }
  }
  Matrix two = Matrix::from_rows({{2}});
  CHECK_FALSE(solve(two, Matrix::from_rows({{1}})).has_value());
  CHECK_FALSE(is_saturated(Matrix::from_rows({{2}, {0}})));
  CHECK_THROWS_AS(complement_basis(Matrix::from_rows({{2}, {0}})), std::invalid_argument);
}

TEST_CASE("unimodular inverse and cokernel groups") {
  Matrix u = Matrix::from_rows({{2, 1}, {1, 1}});
  CHECK(is_unimodular(u));
  CHECK(u * inverse_unimodular(u) == Matrix::identity(2));
  CHECK_FALSE(is_unimodular(Matrix::from_rows({{2, 0}, {0, 1}})));
  CHECK(cokernel_group(Matrix::from_rows({{2, 0}, {0, 3}})).str() == "Z/6");
  CHECK(cokernel_group(Matrix::from_rows({{2}, {0}})).str() == "Z+Z/2");
  CHECK(cokernel_group(Matrix(0, 3)).trivial());
  Matrix big = Matrix::from_rows({{1}});
  big(0, 0) = Int("123456789012345678901234567890");
  CHECK(Matrix::from_json(big.to_json(), 1, 1) == big);
}
