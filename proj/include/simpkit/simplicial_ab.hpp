// Free simplicial abelian groups truncated at a level bound, their chain
// complexes, and the Dold-Kan functor in its classical and Koszul forms.
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "simpkit/chain.hpp"
#include "simpkit/ordinal.hpp"
#include "simpkit/simplicial_set.hpp"

namespace sk {

class SimplicialAbelianGroup {
 public:
  // act(a, n) is the matrix of a^* : A_n -> A_m for a : [m] -> [n].
  using Action = std::function<Matrix(const OrdMap& a, int n)>;

  SimplicialAbelianGroup() = default;
  SimplicialAbelianGroup(int bound, std::vector<int> ranks, Action act);

  int bound() const { return bound_; }
  int rank(int n) const { return ranks_.at(n); }
  const std::vector<int>& ranks() const { return ranks_; }
  // d_i : A_n -> A_{n-1} and s_i : A_n -> A_{n+1}, computed on first use.
  const Matrix& face(int n, int i) const;
  const Matrix& degeneracy(int n, int i) const;
  Matrix act(const OrdMap& a, int n) const { return act_(a, n); }

  // Basis elements known to be degenerate simplices (free groups on a
  // simplicial set); empty when unknown.
  std::vector<std::vector<char>> degenerate_basis;

  // Number of violated simplicial identities among levels <= bound.
  long long identity_violations() const;

  // For free groups on a simplicial set: the basis index of a^* e_j.
  std::function<int(int j, const OrdMap& a, int n)> basis_act;

 private:
  struct Cache;
  int bound_ = -1;
  std::vector<int> ranks_;
  Action act_;
  std::shared_ptr<Cache> cache_;
};

SimplicialAbelianGroup free_abelian(const SSetPtr& x, int bound);
SimplicialAbelianGroup constant_group(int rank, int bound);

// Subcomplex of, or quotient of, the Moore complex together with the
// structure map (inclusion or projection), all in cohomological degrees.
struct DerivedComplex {
  ChainComplex complex;
  ChainHom map;
};

ChainComplex moore(const SimplicialAbelianGroup& a);
DerivedComplex normalized(const SimplicialAbelianGroup& a);
DerivedComplex degenerate_sub(const SimplicialAbelianGroup& a);
DerivedComplex moore_quotient(const SimplicialAbelianGroup& a);
// Whether N A -> C A -> C A / D A is an isomorphism in every degree.
bool normalized_matches_quotient(const SimplicialAbelianGroup& a);
// pi_n as the homology of the Moore complex (n < bound).
AbelianGroup homotopy_group(const SimplicialAbelianGroup& a, int n);

struct KoszulQuotientIso {
  ChainComplex koszul, quotient;
  ChainHom to, from;  // K -> C/D and back
  bool verified = false;
};
KoszulQuotientIso koszul_quotient_iso(int n);

// Level maps f_n : A_n -> B_n for n <= bound.
using LevelMaps = std::vector<Matrix>;
bool is_simplicial_map(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b, const LevelMaps& f);
bool is_simplicial_iso(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b, const LevelMaps& f);

// A must be connective. Level n of dk is Hom(N Z Delta^n, A) as a lattice of
// chain maps; level n of dk_via_koszul is the sum over subsets s of {1..n}
// of A_{|s|}.
SimplicialAbelianGroup dk(const ChainComplex& a, int bound);
SimplicialAbelianGroup dk_via_koszul(const ChainComplex& a, int bound);
// dk_via_koszul(A)_n -> dk(A)_n.
LevelMaps dk_comparison(const ChainComplex& a, int bound);
// Whether restriction to the simplices {0} u s is an isomorphism
// Hom(K Delta^n, A) -> sum A_{|s|}.
bool koszul_restriction_is_iso(const ChainComplex& a, int n);

// Basis (columns) of Hom(N Z Delta^n, A) inside Hom(N Z Delta^n, A)^0.
Matrix dk_level_basis(const ChainComplex& a, int n);
// N(dk A) -> A by evaluation on the top normalized chain.
ChainHom dk_counit(const ChainComplex& a, const DerivedComplex& ndka);
// B_n -> dk(N B)_n, b -> (x -> x^* b), for n <= bound of B.
LevelMaps dk_unit(const SimplicialAbelianGroup& b, const DerivedComplex& nb);

}  // namespace sk
