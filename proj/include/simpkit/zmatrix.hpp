// Dense integer matrices over GMP integers, Smith normal form with
// transforms, and the lattice operations built on it.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sk {

using Int = mpz_class;

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<std::vector<long>>& rows, int cols = -1);
  static Matrix column(const std::vector<Int>& v);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Int& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Int& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  Matrix operator*(const Matrix& b) const;
  Matrix operator+(const Matrix& b) const;
  Matrix operator-(const Matrix& b) const;
  Matrix operator-() const;
  Matrix scaled(const Int& s) const;
  Matrix transpose() const;
  bool operator==(const Matrix& b) const;
  bool is_zero() const;

  Matrix block(int r0, int c0, int nr, int nc) const;
  void set_block(int r0, int c0, const Matrix& b);
  Matrix col(int j) const { return block(0, j, r_, 1); }
  static Matrix hstack(const std::vector<Matrix>& parts, int rows = -1);
  static Matrix vstack(const std::vector<Matrix>& parts, int cols = -1);

  void swap_rows(int i, int j);
  void swap_cols(int i, int j);
  void add_row(int dst, int src, const Int& f);  // row dst += f * row src
  void add_col(int dst, int src, const Int& f);  // col dst += f * col src
  void negate_row(int i);
  void negate_col(int j);

  nlohmann::json to_json() const;
  static Matrix from_json(const nlohmann::json& j, int rows, int cols);
  std::string str() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Int> a_;
};

// U * A * V = D with U, V unimodular and D diagonal with d_1 | d_2 | ...,
// all positive on the first `rank` entries.
struct SmithForm {
  Matrix U, Uinv, V, Vinv, D;
  std::vector<Int> diag;
  int rank = 0;
};
SmithForm smith(const Matrix& a);

// Integer solution X of A X = B, if any.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);
// Columns form a basis of the (saturated) integer kernel.
Matrix kernel(const Matrix& a);
// Columns form a basis of the lattice spanned by the columns of A.
Matrix image_basis(const Matrix& a);
// For a basis K (columns) of a saturated sublattice of Z^n, columns C with
// [K C] unimodular.
Matrix complement_basis(const Matrix& k);
bool is_saturated(const Matrix& k);
bool is_unimodular(const Matrix& a);
// Inverse of a unimodular matrix.
Matrix inverse_unimodular(const Matrix& a);
int rank(const Matrix& a);

// Finitely generated abelian group: Z^free + sum Z/t.
struct AbelianGroup {
  int free = 0;
  std::vector<Int> torsion;
  bool operator==(const AbelianGroup&) const = default;
  bool trivial() const { return free == 0 && torsion.empty(); }
  long long order() const;  // -1 if infinite
  std::string str() const;
};
// Cokernel of A : Z^cols -> Z^rows.
AbelianGroup cokernel_group(const Matrix& a);

}  // namespace sk
