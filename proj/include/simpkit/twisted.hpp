// Twisted arrow constructions, sections of a map over its base, and the
// mapping-space formulas for sections.
#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "simpkit/category.hpp"
#include "simpkit/constructions.hpp"
#include "simpkit/homotopy.hpp"
#include "simpkit/report.hpp"
#include "simpkit/slices.hpp"

namespace sk {

using LevelsPtr = std::shared_ptr<const Levelwise>;

// S^op: same keys, operators conjugated by j -> n - j.
class OppositeLevels : public Levelwise {
 public:
  explicit OppositeLevels(LevelsPtr s) : s_(std::move(s)) {}
  std::vector<Key> level(int n) const override { return s_->level(n); }
  Key act(const Key& x, int n, const OrdMap& a) const override { return s_->act(x, n, opposite_map(a, n)); }
  std::string name(const Key& x, int n) const override { return s_->name(x, n); }

 private:
  LevelsPtr s_;
};

// Tw S: level n is level 2n+1 of S, a acts through a * a^op.
class TwistedLevels : public Levelwise {
 public:
  explicit TwistedLevels(LevelsPtr s) : s_(std::move(s)) {}
  std::vector<Key> level(int n) const override { return s_->level(2 * n + 1); }
  Key act(const Key& x, int n, const OrdMap& a) const override { return s_->act(x, 2 * n + 1, twisted_double(a, n)); }
  std::string name(const Key& x, int n) const override { return s_->name(x, 2 * n + 1); }
  // Components of lambda: the front [0, n] in S and the back [n+1, 2n+1] read in S^op.
  Key front(const Key& x, int n) const;
  Key back(const Key& x, int n) const;
  const LevelsPtr& base() const { return s_; }

 private:
  LevelsPtr s_;
};

// The simplices of an inner levelwise object accepted by a predicate that
// must be stable under all operators.
class FilteredLevels : public Levelwise {
 public:
  using Pred = std::function<bool(const Key&, int)>;
  FilteredLevels(LevelsPtr inner, Pred keep) : inner_(std::move(inner)), keep_(std::move(keep)) {}
  std::vector<Key> level(int n) const override;
  Key act(const Key& x, int n, const OrdMap& a) const override { return inner_->act(x, n, a); }
  std::string name(const Key& x, int n) const override { return inner_->name(x, n); }

 private:
  LevelsPtr inner_;
  Pred keep_;
};

struct TwistedArrow {
  std::shared_ptr<const TwistedLevels> levels;
  LevelsPtr pair;      // S x S^op with keys {len(a)} ++ a ++ b
  Presentation tw, base;
  SimplicialMap lambda;  // tw -> base
};

// Presented up to level d.
TwistedArrow twisted_arrow(LevelsPtr s, int d);
TwistedArrow twisted_arrow(const SSetPtr& s, int d);
TwistedArrow twisted_arrow(const FiniteCategory& c, int d);

Report lambda_check(const TwistedArrow& t, int d);

// Fibre of lambda over the vertex (x, y), x and y vertex keys of S.
Presentation lambda_fibre(const TwistedArrow& t, const Key& x, const Key& y, int d);

// Maps K x Delta^n -> X over K for p : X -> K. Keys concatenate the encoded
// images of the generators of the presented product.
class SectionLevels : public Levelwise {
 public:
  explicit SectionLevels(SimplicialMap p);
  std::vector<Key> level(int n) const override;
  Key act(const Key& x, int n, const OrdMap& a) const override;
  std::string name(const Key& x, int n) const override;

  const SimplicialMap& projection() const { return p_; }
  // Value on the simplex (k, delta) of K x Delta^n.
  SimplexRef value(const Key& x, int n, const SimplexRef& k, const OrdMap& delta) const;
  // The restriction of x to {v} x Delta^n, v a vertex generator of K.
  SimplexRef at_vertex(const Key& x, int n, int v) const;
  // A vertex as a map K -> X, and back.
  SimplicialMap as_section(const Key& x) const;
  Key key_of(const SimplicialMap& s) const;

 private:
  struct Shape {
    Product prod;
    std::vector<SimplexRef> fixed;
    std::vector<size_t> offset;
  };
  const Shape& shape(int n) const;

  SimplicialMap p_;
  Target target_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Shape>> shapes_;
};

struct Sections {
  std::shared_ptr<const SectionLevels> levels;
  Presentation pres;
  // Vertex generator of pres for a section given as a map K -> X; -1 if absent.
  int vertex_of(const SimplicialMap& s) const;
};

Sections sections(const SimplicialMap& p, int d);
// Full simplicial subset on the sections sending every edge of K to an
// edge passing is_cartesian_edge up to check_bound.
Sections cartesian_sections(const SimplicialMap& p, int d, int check_bound);

struct SectionMappingSpace {
  Report report;
  std::optional<Sections> space;  // Gamma(Tw K, Z); absent if Z -> Tw K fails
};
// Map from F to G in Gamma(K, X) as sections of Z -> Tw K. The report also
// compares pi_0 with Hom in the homotopy category of Gamma(K, X) and with
// pi_0 of Hom^R.
SectionMappingSpace mapping_space_sections(const SimplicialMap& p, const SimplicialMap& f, const SimplicialMap& g,
                                           int d);

// A vertex S with Hom^R(y, S) contractible up to d for every vertex y.
std::optional<int> final_vertex(const SSetPtr& k, int d);

// With S final in K: restriction Gamma_Cart -> X_S is a trivial fibration up
// to d, and Hom^R between F and G agrees with Hom^R between F_S and G_S in
// pi_0 and pi_1.
Report mapping_space_cart_reduction(const SimplicialMap& p, const SimplicialMap& f, const SimplicialMap& g, int d);

// Nerve of a category presented completely (and at least up to min_bound),
// with its keys.
Presentation nerve_presentation(const FiniteCategory& c, int min_bound = 0);
SimplicialMap nerve_of_functor(const Presentation& src, const Presentation& tgt, const Functor& f);

}  // namespace sk
