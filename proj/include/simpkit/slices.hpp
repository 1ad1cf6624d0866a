// Slices, right mapping spaces, the homotopy category, and Cartesian edges.
#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "simpkit/category.hpp"
#include "simpkit/lifting.hpp"

namespace sk {

// n-simplices: maps Delta^n * K -> X restricting to k on K (or, for the
// coslice, maps K * Delta^n -> X). Keys concatenate the encoded images of
// the generators of the join.
class SliceLevels : public Levelwise {
 public:
  SliceLevels(SimplicialMap k, bool co);
  std::vector<Key> level(int n) const override;
  Key act(const Key& x, int n, const OrdMap& a) const override;
  std::string name(const Key& x, int n) const override;

 private:
  struct Shape {
    Presentation join;
    std::vector<SimplexRef> fixed;
    std::vector<size_t> offset;
  };
  const Shape& shape(int n) const;
  Key transport(const Key& jk, int n, int m, const OrdMap& a) const;

  SimplicialMap k_;
  bool co_;
  Target target_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Shape>> shapes_;
};

// Slice (or coslice) over a single simplex s of dimension k: n-simplices
// are (n+1+k)-simplices of X ending (or starting) with s.
class SimplexSliceLevels : public Levelwise {
 public:
  SimplexSliceLevels(SSetPtr x, SimplexRef s, bool co = false) : x_(std::move(x)), s_(std::move(s)), co_(co) {}
  std::vector<Key> level(int n) const override;
  Key act(const Key& x, int n, const OrdMap& a) const override;
  std::string name(const Key& x, int n) const override { return x_->describe(decode(x, 0, n + 1 + s_.dim())); }
  const SSetPtr& space() const { return x_; }
  int tail() const { return s_.dim(); }

 private:
  SSetPtr x_;
  SimplexRef s_;
  bool co_;
};

// Hom^R_X(x, y): (n+1)-simplices of X with [0,n] collapsed to x and last
// vertex y.
class HomRightLevels : public Levelwise {
 public:
  HomRightLevels(SSetPtr x, int from, int to) : x_(std::move(x)), from_(from), to_(to) {}
  std::vector<Key> level(int n) const override;
  Key act(const Key& x, int n, const OrdMap& a) const override;
  std::string name(const Key& x, int n) const override { return x_->describe(decode(x, 0, n + 1)); }

 private:
  SSetPtr x_;
  int from_, to_;
};

// Strict fibre product of two levelwise objects over maps into a common
// key space. Keys are {len(a)} ++ a ++ b.
class PullbackLevels : public Levelwise {
 public:
  using Leg = std::function<Key(const Key&, int)>;
  PullbackLevels(std::shared_ptr<const Levelwise> a, std::shared_ptr<const Levelwise> b, Leg fa, Leg fb)
      : a_(std::move(a)), b_(std::move(b)), fa_(std::move(fa)), fb_(std::move(fb)) {}
  std::vector<Key> level(int n) const override;
  Key act(const Key& x, int n, const OrdMap& a) const override;
  std::string name(const Key& x, int n) const override;
  static Key first(const Key& x);
  static Key second(const Key& x);

 private:
  std::shared_ptr<const Levelwise> a_, b_;
  Leg fa_, fb_;
};

Presentation slice(const SimplicialMap& k, int d);
Presentation coslice(const SimplicialMap& k, int d);
Presentation hom_right(const SSetPtr& x, int from, int to, int d);

struct HomotopyCategory {
  FiniteCategory cat;                 // objects = vertices of X
  std::map<SimplexRef, int> arrow_of; // every edge of X
  std::vector<SimplexRef> rep;        // a representative edge per arrow
};
// Requires inner-horn filling up to check_bound; throws std::invalid_argument
// otherwise or if composition depends on the filler.
HomotopyCategory tau1(const SSetPtr& x, int check_bound = 3);
bool is_equivalence_edge(const HomotopyCategory& h, const SimplexRef& e);
bool is_equivalence_edge(const SSetPtr& x, const SimplexRef& e);

// X_{/e} -> X_{/y} x_{S_{/p(y)}} S_{/p(e)} tested as a trivial fibration
// for n <= d.
Report is_cartesian_edge(const SimplicialMap& p, const SimplexRef& e, int d);

}  // namespace sk
