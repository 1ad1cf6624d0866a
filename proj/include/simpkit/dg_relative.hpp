// The relative dg-nerve of a strict diagram of dg-categories of complexes
// over a finite category, and its Cartesian edges.
#pragma once

#include <vector>

#include <json.hpp>

#include "simpkit/category.hpp"
#include "simpkit/dg.hpp"
#include "simpkit/levelwise.hpp"

namespace sk {

// pull[t][k] is the object t^* k of fibre(source t) for k in fibre(target t).
// Pullback functors carry each complex to an equal complex and act as the
// identity on hom matrices, so strictness reduces to the object maps.
struct BaseDiagram {
  FiniteCategory base;
  std::vector<DgCategory> fibre;
  std::vector<std::vector<int>> pull;

  void validate() const;
  // Object t^* k in fibre(src t).
  int pullback(int t, int k) const { return pull.at(t).at(k); }
  nlohmann::json to_json() const;
  static BaseDiagram from_json(const nlohmann::json& j);
};

struct RelativeSimplex {
  Key base;  // a simplex of the nerve of the base: {x0, f1, ..., fn}
  std::vector<int> objects;
  Coherence f;
  int dim() const { return static_cast<int>(objects.size()) - 1; }
};

// Object of the base at vertex i of a nerve simplex.
int base_vertex(const FiniteCategory& c, const Key& x, int i);
CoherenceFrame relative_frame(const BaseDiagram& d, const Key& base, const std::vector<int>& objects);
bool is_coherent(const BaseDiagram& d, const RelativeSimplex& s);
RelativeSimplex alpha_action(const BaseDiagram& d, const RelativeSimplex& s, const OrdMap& alpha);

struct RelativeLevel {
  std::vector<RelativeSimplex> simplices;
  bool truncated = false;
  bool exhausted = false;
};
RelativeLevel relative_dg_nerve_level(const BaseDiagram& d, int n, int lo, int hi);

// Lifting of every inner horn of the projection to the base, for horn data
// with coefficients in [lo, hi] and all dimensions <= max_dim.
Report relative_inner_fibration_check(const BaseDiagram& d, int max_dim, int lo, int hi);

// Hom^R from (u, j) to (t, i) splits over the base arrows g : u -> t; part g
// is the mapping space of Hom(g^* i, j).
struct HomRPart {
  int arrow;
  MappingSpace space;
};
std::vector<HomRPart> relative_hom_right(const BaseDiagram& d, int u, int j, int t, int i, int bound);
// Each part is isomorphic to dk of the truncated Hom complex and has
// pi_0 = H^0, pi_1 = H^-1.
Report hom_right_decomposition_check(const BaseDiagram& d, int u, int j, int t, int i, int bound);

// An edge from (src g, j) to (tgt g, i) over g with q : g^* i -> j a cycle of
// degree 0.
struct RelativeEdge {
  int arrow;
  int j, i;
  ChainHom q;
};

struct CartesianVerdict {
  bool truncation_verdict = false;  // truncate_le(q, 0) is a quasi-isomorphism
  bool slice_verdict = false;       // fibrewise lifting up to the bound
  Report report;
};
// The slice verdict checks, for every vertex z = (v, k) and every h : v -> u,
// that the fibre over z of X_{/e} -> X_{/y} x_{S/py} S_{/pe} is a trivial
// fibration of simplicial abelian groups through dimension d.
CartesianVerdict cartesian_criterion_check(const BaseDiagram& d, const RelativeEdge& e, int dim);

// Over a terminal base the relative nerve of C matches N_dg(C) with vertices
// reversed and f'_I = eps(|I|) f_{n - I}, where eps(k) = (-1)^floor((k-2)/2).
// The sign rule is valid for simplices of dimension <= 3.
DgNerveSimplex reverse_to_dg(const RelativeSimplex& s);
int reversal_sign(int size);

}  // namespace sk
