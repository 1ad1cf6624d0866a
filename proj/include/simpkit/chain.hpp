// Bounded cochain complexes of finitely generated free abelian groups.
// Differentials raise degree; homological degree m is cohomological -m.
#pragma once

#include <map>
#include <vector>

#include <json.hpp>

#include "simpkit/zmatrix.hpp"

namespace sk {

class ChainComplex {
 public:
  ChainComplex() = default;
  // Support [lo, hi]; an empty support has hi < lo.
  ChainComplex(int lo, int hi, std::vector<int> ranks);
  static ChainComplex zero() { return ChainComplex(0, -1, {}); }
  static ChainComplex concentrated(int degree, int rank);
  // Homological presentation: ranks[m] in degree m, dh[m - 1] : C_m -> C_{m-1}.
  static ChainComplex homological(const std::vector<int>& ranks, const std::vector<Matrix>& dh);

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool empty() const { return hi_ < lo_; }
  int rank(int n) const;
  // d^n : C^n -> C^{n+1}, a rank(n+1) x rank(n) matrix (zero outside support).
  Matrix d(int n) const;
  void set_d(int n, const Matrix& m);

  // Homological view: C_m = C^{-m}, d_m : C_m -> C_{m-1}.
  int hrank(int m) const { return rank(-m); }
  Matrix hd(int m) const { return d(-m); }

  bool connective() const { return empty() || hi_ <= 0; }
  // d o d = 0 and shapes consistent; throws std::logic_error otherwise.
  void check() const;
  nlohmann::json to_json() const;
  static ChainComplex from_json(const nlohmann::json& j);
  bool operator==(const ChainComplex& o) const;

 private:
  int lo_ = 0, hi_ = -1;
  std::vector<int> ranks_;
  std::vector<Matrix> d_;
};

// Element of Hom(A, B)^p: components f_n : A^n -> B^{n+p}.
struct ChainHom {
  int p = 0;
  std::map<int, Matrix> comp;
  // Component at source degree n, zero if absent.
  Matrix at(const ChainComplex& a, const ChainComplex& b, int n) const;
};

ChainHom identity_hom(const ChainComplex& c);
ChainHom compose(const ChainComplex& a, const ChainComplex& b, const ChainComplex& c, const ChainHom& g,
                 const ChainHom& f);  // g o f
ChainHom add(const ChainComplex& a, const ChainComplex& b, const ChainHom& f, const ChainHom& g);
ChainHom scale(const ChainHom& f, const Int& s);
// d(f) = d_B f - (-1)^p f d_A, of degree p + 1.
ChainHom differential(const ChainComplex& a, const ChainComplex& b, const ChainHom& f);
bool is_chain_map(const ChainComplex& a, const ChainComplex& b, const ChainHom& f);
bool hom_equal(const ChainComplex& a, const ChainComplex& b, const ChainHom& f, const ChainHom& g);

ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b);
// Coordinates of f in Hom(A, B)^p, ordered by source degree then row-major.
std::vector<Int> hom_vector(const ChainComplex& a, const ChainComplex& b, const ChainHom& f);
Matrix hom_column(const ChainComplex& a, const ChainComplex& b, const ChainHom& f);
ChainHom hom_element(const ChainComplex& a, const ChainComplex& b, int p, const Matrix& column);

AbelianGroup cohomology(const ChainComplex& c, int n);
inline AbelianGroup homology(const ChainComplex& c, int m) { return cohomology(c, -m); }
bool is_acyclic(const ChainComplex& c);
// Basis of Z^n (columns) and the classes of cycles in H^n: returns the
// coordinates of each cycle column in a chosen basis of the free part plus
// torsion coordinates.
struct CohomologyClasses {
  AbelianGroup group;
  Matrix cycles;      // rank(n) x k basis of Z^n
  Matrix boundaries;  // k x rank(n-1): B^n in cycle coordinates (columns)
};
CohomologyClasses cohomology_classes(const ChainComplex& c, int n);
// Whether a cycle (column, in C^n) is a boundary.
bool is_boundary(const ChainComplex& c, int n, const Matrix& z);

// Good truncations. truncate_le keeps degrees < n and replaces C^n by Z^n;
// truncate_ge keeps degrees > n and replaces C^n by C^n / B^n when that is
// free, otherwise by the two-term model B^n -> C^n in degrees n-1, n.
ChainComplex truncate_le(const ChainComplex& c, int n);
ChainComplex truncate_ge(const ChainComplex& c, int n);
// The chain map induced on truncate_le by f : A -> B of degree 0.
ChainHom truncate_le_map(const ChainComplex& a, const ChainComplex& b, const ChainHom& f, int n);

ChainComplex mapping_cone(const ChainComplex& a, const ChainComplex& b, const ChainHom& f);
bool is_quasi_iso(const ChainComplex& a, const ChainComplex& b, const ChainHom& f);
ChainComplex shift(const ChainComplex& c, int k);  // C[k]^n = C^{n+k}, d multiplied by (-1)^k
ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b);

// Koszul complex of Delta^n: basis the nonempty subsets of {0..n} in
// homological degree |S| - 1, ordered by (size, bitmask).
ChainComplex koszul(int n);
std::vector<uint64_t> koszul_basis(int n, int m);  // subsets of size m + 1

}  // namespace sk
