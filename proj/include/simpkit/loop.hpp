// Bisimplicial sets built row by row: Cech nerves of maps and the loop
// group object of a pointed right fibration.
#pragma once

#include <memory>
#include <vector>

#include "simpkit/homotopy.hpp"
#include "simpkit/lifting.hpp"
#include "simpkit/twisted.hpp"

namespace sk {

// Rows indexed by m, each presented up to a common level bound, with the
// horizontal operators as maps between rows.
struct Bisimplicial {
  std::vector<Presentation> rows;
  std::vector<std::vector<SimplicialMap>> hface;   // hface[m][i] : row m -> row m-1
  std::vector<std::vector<SimplicialMap>> hdegen;  // hdegen[m][i] : row m -> row m+1

  int height() const { return static_cast<int>(rows.size()) - 1; }
  json to_json() const;
};

// Violations of the horizontal simplicial identities, compared on generators.
long long check_horizontal_identities(const Bisimplicial& b);

// Levelwise rows with horizontal operators acting on keys.
class RowFamily {
 public:
  virtual ~RowFamily() = default;
  virtual LevelsPtr row(int m) const = 0;
  // b : [m'] -> [m]; sends an n-simplex of row m to one of row m'.
  virtual Key horizontal(const Key& x, int m, int n, const OrdMap& b) const = 0;
};

// Presents rows 0..height up to level bound and builds the operator maps.
Bisimplicial build_bisimplicial(const RowFamily& f, int height, int bound);

// Row m: (m+1)-fold strict fibre power of X over Y.
class CechRows : public RowFamily {
 public:
  explicit CechRows(SimplicialMap f) : f_(std::move(f)) {}
  LevelsPtr row(int m) const override;
  Key horizontal(const Key& x, int m, int n, const OrdMap& b) const override;

 private:
  SimplicialMap f_;
};

// Throws std::invalid_argument unless f passes the right fibration check up
// to check_bound.
Bisimplicial cech_nerve(const SimplicialMap& f, int height, int check_bound = 2);

// Row m, level n: a simplex c of C and a map Delta^m x Delta^n -> X over
// c o pr_2 that agrees with x(c) on every column {i} x Delta^n.
class LoopRows : public RowFamily {
 public:
  // Throws std::invalid_argument if x is not a section of p.
  LoopRows(SimplicialMap p, SimplicialMap x);
  LevelsPtr row(int m) const override;
  Key horizontal(const Key& x, int m, int n, const OrdMap& b) const override;

  const SimplicialMap& projection() const { return p_; }
  const SimplicialMap& section() const { return x_; }
  // The base simplex of a row key.
  SimplexRef base_of(const Key& x, int n) const { return decode(x, 0, n); }

  struct Shape {
    Product prod;  // Delta^m x Delta^n
    std::vector<size_t> offset;
  };
  const Shape& shape(int m, int n) const;
  // Value of a row-m key on the simplex (alpha, beta) of Delta^m x Delta^n
  // given by vertex lists.
  SimplexRef value(const Key& x, int m, int n, const OrdMap& alpha, const OrdMap& beta) const;

 private:
  SimplicialMap p_, x_;
  Target target_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, std::unique_ptr<Shape>> shapes_;
  mutable std::vector<LevelsPtr> rows_;
};

struct LoopGroup {
  std::shared_ptr<const LoopRows> rows;
  Bisimplicial object;
};
LoopGroup loop_group(const SimplicialMap& p, const SimplicialMap& x, int height, int bound);

// pi_0 of row 1 with the product read off the faces of row-2 vertices:
// [d_1 s] = [d_2 s] * [d_0 s]. Throws std::logic_error if the product is
// not well defined or not total.
FiniteGroup loop_pi0_group(const LoopGroup& g);

// (0) p is a right fibration; (a) every row m <= max_m is a right fibration
// over C, with prism witnesses; (b) over a point base, every row m <= max_m
// maps to G_S x_{G_s} G_S' for [m] = S u S', S n S' = {s} by a trivial
// fibration, with partition witnesses.
Report verify_loop_theorem(const LoopGroup& g, int d, int max_m);

}  // namespace sk
