// The dg-category of finitely many bounded complexes of free abelian groups,
// its dg-nerve, and the linear algebra of coherent simplices.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "simpkit/chain.hpp"
#include "simpkit/ordinal.hpp"
#include "simpkit/report.hpp"
#include "simpkit/simplicial_ab.hpp"

namespace sk {

struct DgCategory {
  std::vector<std::string> names;
  std::vector<ChainComplex> objects;

  int size() const { return static_cast<int>(objects.size()); }
  ChainComplex hom(int a, int b) const { return hom_complex(objects[a], objects[b]); }
  ChainHom identity(int a) const { return identity_hom(objects[a]); }
  // g o f for f : a -> b, g : b -> c.
  ChainHom compose(int a, int b, int c, const ChainHom& g, const ChainHom& f) const;
  // Leibniz rule, associativity and unitality on basis elements of the hom
  // complexes in degrees [-span, span].
  bool validate(std::string* why = nullptr, int span = 2) const;

  nlohmann::json to_json() const;
  static DgCategory from_json(const nlohmann::json& j);
};

// Coherence data f_I for subsets I (bitmasks) of [n] with |I| >= 2.
using Coherence = std::map<uint64_t, ChainHom>;

// The complexes sitting at the vertices of a simplex. In the plain nerve
// f_I maps the complex at min I to the one at max I and composites are
// f_{i_j..i+} o f_{i-..i_j}; in the reversed (relative) convention f_I maps
// the complex at max I to the one at min I and composites are
// f_{i-..i_j} o f_{i_j..i+}.
struct CoherenceFrame {
  std::vector<const ChainComplex*> vertex;
  bool reversed = false;

  int n() const { return static_cast<int>(vertex.size()) - 1; }
  const ChainComplex& source(uint64_t s) const;
  const ChainComplex& target(uint64_t s) const;
  static int degree(uint64_t s);  // 2 - |I|
  int hom_rank(uint64_t s) const;
  // The composite term for I split at c: pieces I(<=c) and I(>=c).
  ChainHom composite(uint64_t low, uint64_t high, const ChainHom& f_low, const ChainHom& f_high) const;
};

// d f_I minus the coherence right-hand side; zero iff the identity holds.
ChainHom coherence_defect(const CoherenceFrame& fr, const Coherence& f, uint64_t s);
// First subset (in size order) whose identity fails, or 0 if all hold.
uint64_t first_incoherent(const CoherenceFrame& fr, const Coherence& f);
// Subsets of [n] with at least two elements, by (size, mask).
std::vector<uint64_t> coherence_subsets(int n);

// alpha^* for alpha : [m] -> [n]: f_{alpha(J)} when alpha is injective on J,
// an identity when |J| = 2 and alpha(J) is a point, zero otherwise.
Coherence pull_coherence(const CoherenceFrame& fr, const Coherence& f, const OrdMap& alpha);

// The identities for `equations` as a linear system A x = b in the
// coordinates of the unknown f_I (blocks in the order given).
struct LinearCoherence {
  std::vector<uint64_t> unknowns;
  std::vector<int> offset;  // start of each block; back() is the total size
  Matrix a, b;
};
LinearCoherence compile_coherence(const CoherenceFrame& fr, const Coherence& fixed,
                                  const std::vector<uint64_t>& unknowns, const std::vector<uint64_t>& equations);
Coherence unpack(const CoherenceFrame& fr, const LinearCoherence& lc, const Matrix& x);
Matrix pack(const CoherenceFrame& fr, const std::vector<uint64_t>& keys, const Coherence& f);

// Fills an inner horn: `horn` holds f_I for every I other than [n] and the
// k-th facet; returns the full coherence, or nullopt if no integer solution.
std::optional<Coherence> fill_horn(const CoherenceFrame& fr, const Coherence& horn, int k);

// Coherent data on a down-closed family of subsets, coefficients in [lo, hi].
struct Enumeration {
  std::vector<Coherence> items;
  bool truncated = false;  // the box cut off part of an infinite solution set
  bool exhausted = false;  // the node limit was hit
};
Enumeration enumerate_coherent(const CoherenceFrame& fr, const std::vector<uint64_t>& family, int lo, int hi,
                               long long node_limit = 2000000);

struct DgNerveSimplex {
  std::vector<int> objects;
  Coherence f;
  int dim() const { return static_cast<int>(objects.size()) - 1; }
};

CoherenceFrame frame_of(const DgCategory& c, const std::vector<int>& objects, bool reversed = false);
bool is_coherent(const DgCategory& c, const DgNerveSimplex& s);
DgNerveSimplex alpha_action(const DgCategory& c, const DgNerveSimplex& s, const OrdMap& alpha);

struct NerveLevel {
  std::vector<DgNerveSimplex> simplices;
  bool truncated = false;
  bool exhausted = false;
};
// All n-simplices with coherence coefficients in [lo, hi].
NerveLevel dg_nerve_level(const DgCategory& c, int n, int lo, int hi);

// Inner horn instances of N_dg(C) with coefficients in [lo, hi]; every one
// is filled by linear solving.
struct HornFillReport {
  long long instances = 0, filled = 0;
  bool exhausted = false;
};
HornFillReport fill_all_inner_horns(const DgCategory& c, int n, int lo, int hi);

// Right mapping space from the complex x to the complex y: level n holds the
// f_I with I containing the top vertex n+1, all other entries degenerate.
// `reversed` selects the relative convention (maps go from y to x).
struct MappingSpace {
  SimplicialAbelianGroup group;
  std::vector<Matrix> basis;  // per level, in packed coordinates of the unknowns
  ChainComplex hom;           // Hom(x, y), or Hom(y, x) when reversed
  bool reversed = false;
};
MappingSpace right_mapping_space(const ChainComplex& x, const ChainComplex& y, int bound, bool reversed = false);
// Level maps onto dk_via_koszul of the truncated Hom complex, f_{J+top} -> J.
LevelMaps mapping_space_to_dk(const MappingSpace& m);
MappingSpace mapping_space(const DgCategory& c, int x, int y, int bound);

// Same class in H^n of c for two cycles.
bool same_class(const ChainComplex& c, int n, const Matrix& z1, const Matrix& z2);

// Edges of tau_1 N_dg(C) against H^0 of the Hom complexes, with edges drawn
// from coefficient box [lo, hi].
Report tau1_check(const DgCategory& c, int lo, int hi);

}  // namespace sk
