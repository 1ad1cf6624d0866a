// Simplicial sets given level by level through keys and an operator action,
// and their conversion to finite presentations.
#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "simpkit/simplicial_set.hpp"

namespace sk {

using Key = std::vector<int>;

class Levelwise {
 public:
  virtual ~Levelwise() = default;
  // Canonical keys of all n-simplices, sorted.
  virtual std::vector<Key> level(int n) const = 0;
  // x an n-simplex, a : [m] -> [n]; returns the canonical key of x.a.
  virtual Key act(const Key& x, int n, const OrdMap& a) const = 0;
  virtual std::string name(const Key& x, int n) const;

  Key face(const Key& x, int n, int i) const { return act(x, n, coface(n, i)); }
  Key degen(const Key& x, int n, int i) const { return act(x, n, codegeneracy(n, i)); }
};

struct Presentation {
  SSetPtr set;
  std::vector<std::map<Key, SimplexRef>> classify;  // per level
  std::vector<Key> gen_key;                          // per generator
  int bound = -1;

  const SimplexRef& lookup(const Key& x, int n) const;
  bool has(const Key& x, int n) const;
};

// Presents the simplicial set up to dimension d: generators are the
// nondegenerate keys of level <= d. Complete whenever the object has no
// nondegenerate simplices above d.
Presentation present(const Levelwise& l, int d);

// Builds a simplicial map between presentations from a key-level function.
SimplicialMap map_from_keys(const Presentation& src, const Presentation& tgt,
                            const std::function<Key(const Key&, int)>& f);

// Counts operator-identity violations of a levelwise object up to max_level.
long long check_identities(const Levelwise& l, int max_level);

// Encoding of simplices of a presented set as keys: {gen, eta...}.
Key encode(const SimplexRef& s);
SimplexRef decode(const Key& k, size_t pos, int n);

// Levelwise view of a finitely presented simplicial set.
class PresentedLevels : public Levelwise {
 public:
  explicit PresentedLevels(SSetPtr k) : k_(std::move(k)) {}
  std::vector<Key> level(int n) const override;
  Key act(const Key& x, int n, const OrdMap& a) const override;
  std::string name(const Key& x, int n) const override;

 private:
  SSetPtr k_;
};

}  // namespace sk
