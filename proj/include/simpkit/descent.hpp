// Descent for presheaves of finite groupoids along a cover of finite sets,
// checked on the Cech diagram truncated to levels -1..2.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "simpkit/category.hpp"
#include "simpkit/homotopy.hpp"
#include "simpkit/report.hpp"
#include "simpkit/sset_json.hpp"

namespace sk {

// Groupoids F_m for m = -1..2 (stored at index m + 1) and the restriction
// functors F(delta_i) : F_{m-1} -> F_m along the cofaces [m-1] -> [m].
struct DescentData {
  std::vector<FiniteCategory> level;
  std::vector<std::vector<Functor>> coface;  // coface[m][i], m = 0..2; coface[0] has one entry

  const FiniteCategory& at(int m) const { return level[m + 1]; }
  // Groupoids, functor tables and the cosimplicial identities; throws
  // std::invalid_argument naming the violation.
  void validate() const;
  json to_json() const;
  static DescentData from_json(const json& j);
};

// A presheaf of groupoids on finite sets [n]; pullback(f, nu, nv) is
// F(V) -> F(U) for f : U -> V.
struct SetPresheaf {
  std::string name;
  std::function<FiniteCategory(int)> value;
  std::function<Functor(const std::vector<int>&, int, int)> pullback;
};
// U -> Fun(U, BG).
SetPresheaf torsor_presheaf(const FiniteGroup& g);
// U -> the discrete groupoid on k objects, identity restrictions.
SetPresheaf constant_presheaf(int k);

// Cech levels U_{-1} = B, U_m = (m+1)-fold fibre power of E over B.
DescentData descent_data(const std::vector<int>& cover, int base_size, const SetPresheaf& f);

// The groupoid of descent data: pairs (x, phi) with phi satisfying the
// cocycle condition, and the comparison functor from F_{-1}.
struct DescentGroupoid {
  FiniteCategory groupoid;
  std::vector<std::pair<int, int>> object_of;  // (x, phi)
  Functor comparison;
};
DescentGroupoid descent_groupoid(const DescentData& d);

// Verdict: the comparison is a bijection on components and on every
// Hom-set (equivalently, on pi_0 and on pi_1 at every basepoint).
Report descent_check(const DescentData& d, int bound = 1);

}  // namespace sk
