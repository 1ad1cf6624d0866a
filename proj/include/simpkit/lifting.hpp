// Lifting problems against maps of finite simplicial sets and bounded
// fibration classification.
#pragma once

#include <optional>
#include <string>

#include "simpkit/report.hpp"
#include "simpkit/search.hpp"
#include "simpkit/sset_json.hpp"

namespace sk {

enum class FibrationClass { inner, left, right, kan, trivial };
std::string to_string(FibrationClass c);
FibrationClass fibration_class_from_string(const std::string& s);
// Whether the horn Lambda^n_k belongs to the class (trivial: none).
bool horn_in_class(FibrationClass c, int n, int k);

struct LiftProblem {
  SimplicialMap inclusion;  // A -> B, injective
  SimplicialMap top;        // A -> X
  SimplicialMap bottom;     // B -> S
  SimplicialMap fibration;  // X -> S

  // Shape and commutativity of the square.
  bool commutes(std::string* why = nullptr) const;
  json to_json() const;
};

// Throws std::invalid_argument for a malformed or non-commuting square.
// The optional target must wrap fibration (X with projection to S).
std::optional<SimplicialMap> solve_lift(const LiftProblem& p, const Target* cached = nullptr);
// Same question answered by naive product enumeration; nullopt result
// means "too many candidates", otherwise the inner optional is the lift.
std::optional<std::optional<SimplicialMap>> solve_lift_naive(const LiftProblem& p, long long max_candidates = 10000);

// Restriction of a map B -> X along an injective A -> B.
SimplicialMap restrict_map(const SimplicialMap& f, const SimplicialMap& inclusion);

// Horn or boundary inclusion into Delta^n (k < 0 for the boundary).
SimplicialMap generating_inclusion(int n, int k);

// Checks every generating lifting problem of the class for n <= d.
// The report carries per-dimension instance counts and, on failure, the
// first unsolvable square in search order.
Report classify_fibration(const SimplicialMap& p, FibrationClass c, int d);
// Terminal map X -> Delta^0.
SimplicialMap to_point(const SSetPtr& x);
Report is_kan(const SSetPtr& x, int d);
Report is_quasi_category(const SSetPtr& x, int d);

}  // namespace sk
