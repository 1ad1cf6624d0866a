// Named fixture objects shared by the tests, the acceptance suite and the
// command-line tool.
#pragma once

#include <string>
#include <vector>

#include "simpkit/chain.hpp"
#include "simpkit/dg_relative.hpp"
#include "simpkit/simplicial_ab.hpp"
#include "simpkit/twisted.hpp"

namespace sk {

struct NamedComplex {
  std::string name;
  ChainComplex complex;
};

// Ten connective complexes of free abelian groups.
std::vector<NamedComplex> dk_fixture_complexes();

struct NamedGroup {
  std::string name;
  SimplicialAbelianGroup group;
};

// Simplicial abelian groups up to the given level: free groups on small
// simplicial sets and a constant group.
std::vector<NamedGroup> simplicial_group_fixtures(int bound);

struct NamedDg {
  std::string name;
  DgCategory category;
};

// Five small dg-categories of complexes.
std::vector<NamedDg> dg_fixture_categories();

// Base with objects U, T and two parallel arrows g1, g2 : U -> T.
BaseDiagram two_fibre_base();
// Base 0 -> 1 with the same fibre over both objects and identity pullbacks.
BaseDiagram cartesian_base();

struct NamedEdge {
  std::string name;
  RelativeEdge edge;
  bool quasi_iso;  // expected verdict
};
// Edges of the relative nerve of cartesian_base(), half of them
// quasi-isomorphisms.
std::vector<NamedEdge> cartesian_edges();
// tau_{<=0} q is a quasi-isomorphism while q is not: Z[0] into Z[0] + Z[-1].
NamedEdge truncation_only_edge();

// Functor between posets presented by FiniteCategory::poset, given on objects.
Functor poset_functor(const FiniteCategory& src, const FiniteCategory& tgt, const std::vector<int>& obj);

struct NamedFibration {
  std::string name;
  Grothendieck construction;
  Presentation total, base;
  SimplicialMap p;  // nerve of the projection
};
NamedFibration grothendieck_fibration(std::string name, const FiniteCategory& base,
                                      const std::vector<FiniteCategory>& fibre, const std::vector<Functor>& pull);
// base x fibre as a Grothendieck construction with identity pullbacks.
NamedFibration product_fibration(std::string name, const FiniteCategory& base, const FiniteCategory& fibre);

// Cartesian fibrations over [0], [1] and [2] with poset or discrete fibres.
std::vector<NamedFibration> section_fixtures();

struct NamedCategory {
  std::string name;
  FiniteCategory category;
};
// Four categories for the twisted arrow checks, one of them with a loop.
std::vector<NamedCategory> twisted_fixture_categories();

// The map from the point picking out a vertex generator.
SimplicialMap vertex_section(const SSetPtr& x, int vertex_gen);

struct PointedSpace {
  std::string name;
  Presentation space;
  SimplicialMap p, x;  // p : space -> point, x its base point
  int group_order;     // 0 when the space is not a group nerve
};
// Nerves of Z/2, Z/3 and S3 truncated at the given level, pointed at the
// unique vertex.
std::vector<PointedSpace> loop_fixtures(int level);
// Delta^1 pointed at 0; p is not a right fibration.
PointedSpace loop_negative_control();

}  // namespace sk
