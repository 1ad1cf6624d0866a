// Finitely presented simplicial sets: nondegenerate generators with face
// tables, every simplex in Eilenberg-Zilber form (generator, surjection).
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "simpkit/ordinal.hpp"

namespace sk {

struct SimplexRef {
  int gen = -1;
  OrdMap eta;  // surjection [dim] -> [dim of gen]

  int dim() const { return static_cast<int>(eta.size()) - 1; }
  bool nondegenerate() const { return is_injective(eta); }
  DegeneracyWord word() const { return DegeneracyWord::from_surjection(eta); }
  auto operator<=>(const SimplexRef&) const = default;
  bool operator==(const SimplexRef&) const = default;
};

struct SimplexRefHash {
  size_t operator()(const SimplexRef& s) const noexcept {
    size_t h = static_cast<size_t>(s.gen) * 0x9e3779b97f4a7c15ULL;
    for (int v : s.eta) h = (h ^ static_cast<size_t>(v + 1)) * 0x100000001b3ULL;
    return h;
  }
};

struct VecHash {
  size_t operator()(const std::vector<int>& v) const noexcept {
    size_t h = 0xcbf29ce484222325ULL;
    for (int x : v) h = (h ^ static_cast<size_t>(x + 7)) * 0x100000001b3ULL;
    return h;
  }
};

class SimplicialSet {
 public:
  struct Generator {
    std::string name;
    int dim = 0;
    std::vector<SimplexRef> faces;
  };

  // Builder interface; generators must be added in nondecreasing dimension
  // and faces may only reference earlier generators.
  int add(std::string name, int dim, std::vector<SimplexRef> faces = {});
  // Validates face tables and simplicial identities; throws
  // std::invalid_argument naming the offending generator.
  void finalize();

  int dim() const { return max_dim_; }
  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int g) const { return gens_[g]; }
  const std::vector<int>& gens_of_dim(int d) const;
  int find(const std::string& name) const;

  SimplexRef id(int g) const { return {g, identity_map(gens_[g].dim)}; }
  SimplexRef apply(const SimplexRef& x, const OrdMap& a) const;
  SimplexRef face(const SimplexRef& x, int i) const;
  SimplexRef degen(const SimplexRef& x, int i) const;
  // Vertex generators of x in order.
  std::vector<int> vertices(const SimplexRef& x) const;
  SimplexRef vertex(const SimplexRef& x, int j) const;

  // All n-simplices ordered by (generator id, surjection).
  std::vector<SimplexRef> level(int n) const;
  long long level_size(int n) const;
  bool contains(const SimplexRef& x) const;

  std::string describe(const SimplexRef& x) const;

 private:
  std::vector<Generator> gens_;
  std::vector<std::vector<int>> by_dim_;
  std::unordered_map<std::string, int> by_name_;
  // Per generator: injective-face table indexed by vertex bitmask.
  std::vector<std::vector<SimplexRef>> table_;
  int max_dim_ = -1;
  bool final_ = false;

  SimplexRef mono_face(int g, uint64_t mask) const;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

struct SimplicialMap {
  SSetPtr src, tgt;
  std::vector<SimplexRef> assign;  // per generator of src

  SimplexRef operator()(const SimplexRef& x) const;
  // Checks dimensions and compatibility with faces on generators.
  bool valid(std::string* why = nullptr) const;
  bool injective() const;
  static SimplicialMap identity(const SSetPtr& k);
};

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

// Inclusion of a simplicial set whose generator names all occur in the
// target with matching faces.
SimplicialMap inclusion_by_names(const SSetPtr& sub, const SSetPtr& sup);

struct MarkedSimplicialSet {
  SSetPtr underlying;
  std::vector<SimplexRef> marked;  // edges; degenerate edges implicit

  bool is_marked(const SimplexRef& e) const;
};

// Exhaustive check of d_i d_j = d_{j-1} d_i and the mixed identities on all
// simplices of level <= max_level. Returns the number of violations.
long long check_identities(const SimplicialSet& k, int max_level);

// Isomorphism test for finitely presented simplicial sets by backtracking
// over generator bijections that preserve faces.
bool isomorphic(const SimplicialSet& a, const SimplicialSet& b);

std::vector<int> generator_counts(const SimplicialSet& k);

}  // namespace sk
