// Connected components and fundamental groups of finite simplicial sets,
// and small finite groups given by multiplication tables.
#pragma once

#include <string>
#include <vector>

#include "simpkit/category.hpp"
#include "simpkit/simplicial_set.hpp"

namespace sk {

struct FiniteGroup {
  std::vector<std::string> names;
  std::vector<std::vector<int>> mult;  // mult[a][b] = a * b
  int identity = 0;

  int order() const { return static_cast<int>(mult.size()); }
  int inverse(int a) const;
  int element_order(int a) const;
  // Closure, associativity, identity and inverses.
  bool is_group() const;

  static FiniteGroup cyclic(int n);
  static FiniteGroup symmetric3();
  // End(x) of a category whose endomorphisms at x form a group.
  static FiniteGroup automorphisms(const FiniteCategory& c, int x);
};

// Backtracking search for a multiplication-preserving bijection.
bool isomorphic(const FiniteGroup& a, const FiniteGroup& b);

struct Components {
  int count = 0;
  std::vector<int> of_vertex;  // component index per vertex generator, by first appearance
};
Components pi0(const SimplicialSet& x);

// pi_1(X, v) as the endomorphisms of v in the homotopy category. X must pass
// the Kan check up to check_bound (>= 2); throws std::invalid_argument
// otherwise.
FiniteGroup pi1(const SSetPtr& x, int vertex, int check_bound = 2);

}  // namespace sk
