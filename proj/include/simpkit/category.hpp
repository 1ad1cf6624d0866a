// Finite 1-categories given by composition tables.
#pragma once

#include <string>
#include <vector>

#include "simpkit/levelwise.hpp"

namespace sk {

struct FiniteCategory {
  struct Arrow {
    int src = 0, tgt = 0;
    std::string name;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<int> identity;           // per object
  std::vector<std::vector<int>> comp;  // comp[g][f] = g o f, -1 if not composable

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_arrows() const { return static_cast<int>(arrows.size()); }
  bool is_identity(int f) const { return identity[arrows[f].src] == f; }
  int compose(int g, int f) const { return comp[g][f]; }
  std::vector<int> hom(int x, int y) const;

  // Throws std::invalid_argument on ill-typed, non-unital or non-associative
  // tables.
  void validate() const;
  // True iff the graph of non-identity arrows has a directed cycle, i.e.
  // identity-free composable chains are unbounded.
  bool has_unbounded_chains() const;
  // Length of the longest identity-free composable chain.
  int longest_chain() const;
  bool is_groupoid() const;
  int inverse(int f) const;  // -1 if none

  static FiniteCategory poset(int n, const std::vector<std::pair<int, int>>& relations);
  static FiniteCategory linear(int n);  // 0 < 1 < ... < n
  static FiniteCategory discrete(int n);
  // One object; mult[a][b] = a*b with element 0 the unit.
  static FiniteCategory monoid(const std::vector<std::vector<int>>& mult,
                               const std::vector<std::string>& names = {});
  static FiniteCategory cyclic_group(int n);
  static FiniteCategory symmetric_group3();
};

// A strict functor given by its object and arrow maps.
struct Functor {
  std::vector<int> obj, arr;

  static Functor identity(const FiniteCategory& c);
};
// Throws std::invalid_argument naming the first violated condition.
void validate_functor(const FiniteCategory& src, const FiniteCategory& tgt, const Functor& f);
// (g o f)
Functor compose(const Functor& g, const Functor& f);
bool operator==(const Functor& a, const Functor& b);

// Strict Grothendieck construction of a contravariant functor from the base
// into categories: objects (k, a) with a in fibre k; arrows (u, phi) with
// u : k -> k' and phi : a -> pull[u](a') in fibre k. pull[u] maps fibre
// tgt(u) to fibre src(u).
struct Grothendieck {
  FiniteCategory total;
  Functor projection;
  std::vector<std::pair<int, int>> object_of;  // (k, a) per total object
  std::vector<std::pair<int, int>> arrow_of;   // (u, phi) per total arrow
};
Grothendieck grothendieck(const FiniteCategory& base, const std::vector<FiniteCategory>& fibre,
                          const std::vector<Functor>& pull);

// Keys {x0, f1, ..., fn}: a start object and a composable chain.
class NerveLevels : public Levelwise {
 public:
  explicit NerveLevels(FiniteCategory c) : c_(std::move(c)) {}
  std::vector<Key> level(int n) const override;
  Key act(const Key& x, int n, const OrdMap& a) const override;
  std::string name(const Key& x, int n) const override;
  const FiniteCategory& category() const { return c_; }

 private:
  FiniteCategory c_;
};

}  // namespace sk
