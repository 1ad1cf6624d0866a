// Anodyne extensions as explicit sequences of horn pushouts between
// subcomplexes of the nerve of a finite poset.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simpkit/constructions.hpp"
#include "simpkit/lifting.hpp"

namespace sk {

enum class HornKind { inner, left, right, general };
std::string to_string(HornKind k);
bool horn_allowed(HornKind kind, int n, int k);

// Attach the simplex `simplex` and its k-th face along Lambda^n_k.
struct AnodyneStep {
  uint64_t simplex = 0;
  int k = 0;
  int dim() const { return popcount(simplex) - 1; }
};

struct AnodyneWitness {
  HornKind kind = HornKind::general;
  OrderedComplex start, end;  // same vertex poset
  std::vector<AnodyneStep> steps;

  // Replays every pushout; on success the final stage equals `end`
  // generator by generator (names and faces).
  bool validate(std::string* why = nullptr) const;
  json to_json() const;
  // Stage i as a simplicial set (0 = start).
  SSetPtr stage(int i) const;
};

// P = (Lambda^n_k * (Lambda^n_k)^op) u Delta^[0,n] u Delta^[n+1,2n+1]
// inside Delta^{2n+1}; inner horns only. Requires n >= 1, 0 < k <= n.
AnodyneWitness witness_inner_twisted(int n, int k);
// Union of the listed facets of Delta^n to Delta^n.
AnodyneWitness witness_facets(const std::vector<int>& present, int n);
// Delta^I u Delta^J to Delta^m; requires I u J = [m] and I n J nonempty.
AnodyneWitness witness_partition(const std::vector<int>& I, const std::vector<int>& J, int m);
// (sk_0 Delta^m x Delta^n) u (Delta^m x Lambda^n_k) in Delta^m x Delta^n,
// right horns, 0 < k <= n.
AnodyneWitness witness_prism(int m, int n, int k);

// Searches for a horn-pushout sequence from start to end using only horns
// allowed by kind. Greedy in a fixed order, with backtracking.
std::optional<AnodyneWitness> find_witness(const OrderedComplex& start, const OrderedComplex& end, HornKind kind,
                                           long long node_limit = 200000);

struct WitnessLift {
  std::optional<SimplicialMap> lift;
  std::optional<LiftProblem> failed_step;  // a single-horn square with no filler
};
// problem.inclusion must be start -> end of w up to generator names. The
// fibration class must contain every horn of w (throws otherwise).
WitnessLift lift_via_witness(const AnodyneWitness& w, const LiftProblem& problem, FibrationClass c);

}  // namespace sk
