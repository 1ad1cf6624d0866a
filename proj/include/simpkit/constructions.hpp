// Standard simplicial sets and the basic constructions on them.
#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "simpkit/category.hpp"
#include "simpkit/levelwise.hpp"
#include "simpkit/simplicial_set.hpp"

namespace sk {

// A simplicial subset of the nerve of a finite poset whose vertex numbering
// is a linear extension; simplices are chains stored as vertex bitmasks.
struct OrderedComplex {
  int nverts = 0;
  std::vector<std::vector<char>> leq;  // leq[a][b]: a <= b
  std::vector<std::string> labels;
  std::set<uint64_t> chains;           // closed under nonempty subsets

  static OrderedComplex total(int n);  // vertices 0..n
  static OrderedComplex grid(int m, int n);  // [m] x [n], vertex (i,j) = i*(n+1)+j

  bool is_chain(uint64_t mask) const;
  std::vector<uint64_t> all_chains() const;
  void add_closed(uint64_t mask);  // adds mask and all its faces
  bool has(uint64_t mask) const { return chains.count(mask) > 0; }
  std::string chain_name(uint64_t mask) const;
  SSetPtr to_sset() const;
};

int popcount(uint64_t m);
// Vertices of a mask in increasing order.
std::vector<int> mask_vertices(uint64_t m);
// Removes the i-th vertex (in increasing order) of a mask.
uint64_t mask_face(uint64_t m, int i);

SSetPtr point();
SSetPtr standard_simplex(int n);
// The simplex of standard_simplex(n) with the given monotone vertex list.
SimplexRef delta_simplex(int n, const OrdMap& verts);
SSetPtr boundary(int n);
SSetPtr horn(int n, int k);
// Union of the facets of Delta^n listed (facet i omits vertex i).
SSetPtr facet_union(int n, const std::vector<int>& facets);

// Rejects categories with unbounded identity-free chains.
SSetPtr nerve_of_category(const FiniteCategory& c);
// Truncated nerve up to dimension d; generators in every dimension <= d.
Presentation truncated_nerve(const FiniteCategory& c, int d);

class ProductLevels : public Levelwise {
 public:
  ProductLevels(SSetPtr k, SSetPtr l) : k_(std::move(k)), l_(std::move(l)) {}
  std::vector<Key> level(int n) const override;
  Key act(const Key& x, int n, const OrdMap& a) const override;
  std::string name(const Key& x, int n) const override;
  static SimplexRef first(const Key& x, int n) { return decode(x, 0, n); }
  static SimplexRef second(const Key& x, int n) { return decode(x, n + 2, n); }
  static Key make(const SimplexRef& a, const SimplexRef& b);

 private:
  SSetPtr k_, l_;
};

// Keys {i, encode(x) if i >= 0, encode(y) if i < n}.
class JoinLevels : public Levelwise {
 public:
  JoinLevels(SSetPtr k, SSetPtr l) : k_(std::move(k)), l_(std::move(l)) {}
  std::vector<Key> level(int n) const override;
  Key act(const Key& x, int n, const OrdMap& a) const override;
  std::string name(const Key& x, int n) const override;

 private:
  SSetPtr k_, l_;
};

struct Product {
  Presentation pres;
  SimplicialMap pr1, pr2;
};
Product product(const SSetPtr& k, const SSetPtr& l, int bound = -1);
Presentation join(const SSetPtr& k, const SSetPtr& l);
SSetPtr opposite(const SSetPtr& k);
// Simplex of the opposite set corresponding to x.
SimplexRef op_simplex(const SimplicialSet& k, const SimplexRef& x);

struct Pushout {
  SSetPtr set;
  SimplicialMap from_b, from_x;
};
// Pushout of an injective f : A -> B along g : A -> X.
Pushout pushout(const SimplicialMap& f, const SimplicialMap& g);

// Disjoint union of finitely many simplicial sets, names prefixed by index.
SSetPtr disjoint_union(const std::vector<SSetPtr>& parts);

}  // namespace sk
