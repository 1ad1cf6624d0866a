// Backtracking enumeration of simplicial maps into a finitely presented
// target, optionally over a base, with face-indexed candidate lookup.
#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "simpkit/levelwise.hpp"
#include "simpkit/simplicial_set.hpp"

namespace sk {

// A target X, optionally with a projection p : X -> S. Level indices are
// built on first use and shared by all searches into the same target.
class Target {
 public:
  explicit Target(SSetPtr x, std::optional<SimplicialMap> p = std::nullopt);

  const SimplicialSet& set() const { return *x_; }
  const SSetPtr& ptr() const { return x_; }
  bool has_projection() const { return p_.has_value(); }
  const SimplicialMap& projection() const { return *p_; }

  struct Level {
    std::vector<SimplexRef> simplices;
    // faces[i][key]: simplices whose faces other than i match key;
    // faces[n+1] uses all faces. single[i][face]: by one face.
    std::vector<std::unordered_map<Key, std::vector<int>, VecHash>> faces;
    std::vector<std::unordered_map<Key, std::vector<int>, VecHash>> single;
    std::unordered_map<Key, std::vector<int>, VecHash> by_proj;
    std::vector<int> all;
  };
  const Level& level(int n) const;

 private:
  SSetPtr x_;
  std::optional<SimplicialMap> p_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Level>> levels_;
};

struct MapQuery {
  SSetPtr src;
  const Target* tgt = nullptr;
  // Per source generator; gen < 0 means free.
  std::vector<SimplexRef> fixed;
  // If set, the map must lie over this map src -> S (requires a projection).
  std::optional<SimplicialMap> over;
};

// Visits maps in the deterministic search order; return false to stop.
// Returns the number of maps visited.
using MapVisitor = std::function<bool(const std::vector<SimplexRef>&)>;
long long search_maps(const MapQuery& q, const MapVisitor& visit);
std::optional<SimplicialMap> first_map(const MapQuery& q);
std::vector<SimplicialMap> all_maps(const MapQuery& q);
long long count_maps(const MapQuery& q);

// Independent reference: plain product enumeration over all candidate
// simplices of the free generators followed by a validity check.
// Refuses (returns nullopt) above max_candidates product size.
std::optional<long long> naive_count_maps(const MapQuery& q, long long max_candidates = 10000,
                                          std::vector<SimplexRef>* first = nullptr);

}  // namespace sk
