#include "simpkit/fixtures.hpp"

#include <stdexcept>

#include "simpkit/constructions.hpp"
#include "simpkit/lifting.hpp"

namespace sk {

std::vector<NamedComplex> dk_fixture_complexes() {
  auto m = [](std::vector<std::vector<long>> rows, int cols = -1) { return Matrix::from_rows(rows, cols); };
  std::vector<NamedComplex> out;
  out.push_back({"Z[0]", ChainComplex::homological({1}, {})});
  out.push_back({"Z[1]", ChainComplex::homological({0, 1}, {Matrix(0, 1)})});
  out.push_back({"Z-3->Z", ChainComplex::homological({1, 1}, {m({{3}})})});
  out.push_back({"Z2-sum->Z", ChainComplex::homological({1, 2}, {m({{1, 1}})})});
  out.push_back({"Z-diag->Z2", ChainComplex::homological({2, 1}, {m({{1}, {-1}})})});
  out.push_back({"Z-1->Z", ChainComplex::homological({1, 1}, {m({{1}})})});
  out.push_back({"three-term", ChainComplex::homological({1, 2, 1}, {m({{1, 1}}), m({{1}, {-1}})})});
  out.push_back({"zero", ChainComplex::zero()});
  out.push_back({"Z2[0]+Z[2]", ChainComplex::homological({2, 0, 1}, {Matrix(2, 0), Matrix(0, 1)})});
  out.push_back({"Z-2->Z-0->Z", ChainComplex::homological({1, 1, 1}, {m({{0}}), m({{2}})})});
  for (auto& c : out) c.complex.check();
  return out;
}

std::vector<NamedGroup> simplicial_group_fixtures(int bound) {
  return {
      {"Z[Delta1]", free_abelian(standard_simplex(1), bound)},
      {"Z[Delta2]", free_abelian(standard_simplex(2), bound)},
      {"Z[dDelta2]", free_abelian(boundary(2), bound)},
      {"Z[Lambda2_1]", free_abelian(horn(2, 1), bound)},
      {"const Z", constant_group(1, bound)},
  };
}

}  // namespace sk

namespace sk {

namespace {

ChainComplex zc() { return ChainComplex::homological({1}, {}); }
ChainComplex two_map() { return ChainComplex::homological({1, 1}, {Matrix::from_rows({{2}})}); }
ChainComplex cone_id() { return ChainComplex::homological({1, 1}, {Matrix::from_rows({{1}})}); }
ChainComplex shifted() { return ChainComplex::concentrated(-1, 1); }

DgCategory dg(std::vector<std::string> names, std::vector<ChainComplex> objs) {
  DgCategory c{std::move(names), std::move(objs)};
  for (const auto& o : c.objects) o.check();
  return c;
}

ChainHom degree0(const ChainComplex& a, const ChainComplex& b, const std::vector<std::vector<long>>& rows) {
  ChainHom f;
  f.p = 0;
  f.comp[0] = Matrix::from_rows(rows, a.rank(0));
  if (!is_chain_map(a, b, f)) throw std::logic_error("fixture: not a chain map");
  return f;
}

// Objects of the fibre of cartesian_base().
DgCategory cartesian_fibre() {
  ChainComplex acyclic_high(1, 2, {1, 1});
  acyclic_high.set_d(1, Matrix::from_rows({{1}}));
  return dg({"Z", "S", "E", "ZE", "ZF", "ZT"},
            {zc(), shifted(), cone_id(), direct_sum(zc(), cone_id()), direct_sum(zc(), acyclic_high),
             direct_sum(zc(), ChainComplex::concentrated(1, 1))});
}

}  // namespace

std::vector<NamedDg> dg_fixture_categories() {
  return {
      {"point", dg({"Z"}, {zc()})},
      {"two-map", dg({"P"}, {two_map()})},
      {"contractible", dg({"Z", "E"}, {zc(), cone_id()})},
      {"shifts", dg({"Z", "S"}, {zc(), shifted()})},
      {"mixed", dg({"Z", "P"}, {zc(), two_map()})},
  };
}

BaseDiagram two_fibre_base() {
  BaseDiagram d;
  FiniteCategory& b = d.base;
  b.objects = {"U", "T"};
  b.arrows = {{0, 0, "idU"}, {1, 1, "idT"}, {0, 1, "g1"}, {0, 1, "g2"}};
  b.identity = {0, 1};
  b.comp = {{0, -1, -1, -1}, {-1, 1, 2, 3}, {2, -1, -1, -1}, {3, -1, -1, -1}};
  d.fibre = {dg({"A", "B", "P"}, {zc(), zc(), two_map()}), dg({"I", "Q"}, {zc(), two_map()})};
  d.pull = {{0, 1, 2}, {0, 1}, {0, 2}, {1, 2}};
  d.validate();
  return d;
}

BaseDiagram cartesian_base() {
  BaseDiagram d;
  d.base = FiniteCategory::linear(1);
  d.fibre = {cartesian_fibre(), cartesian_fibre()};
  for (int t = 0; t < d.base.num_arrows(); ++t) d.pull.push_back({0, 1, 2, 3, 4, 5});
  d.validate();
  return d;
}

std::vector<NamedEdge> cartesian_edges() {
  DgCategory f = cartesian_fibre();
  const auto& o = f.objects;
  int g = FiniteCategory::linear(1).hom(0, 1).at(0);
  return {
      {"Z -id-> Z", {g, 0, 0, degree0(o[0], o[0], {{1}})}, true},
      {"Z -(-1)-> Z", {g, 0, 0, degree0(o[0], o[0], {{-1}})}, true},
      {"Z -> Z + E", {g, 3, 0, degree0(o[0], o[3], {{1}, {0}})}, true},
      {"Z -> Z + F", {g, 4, 0, degree0(o[0], o[4], {{1}})}, true},
      {"Z -2-> Z", {g, 0, 0, degree0(o[0], o[0], {{2}})}, false},
      {"Z -0-> Z", {g, 0, 0, degree0(o[0], o[0], {{0}})}, false},
      {"Z -> E", {g, 2, 0, degree0(o[0], o[2], {{1}})}, false},
      {"S -0-> Z", {g, 0, 1, ChainHom{0, {}}}, false},
  };
}

NamedEdge truncation_only_edge() {
  DgCategory f = cartesian_fibre();
  int g = FiniteCategory::linear(1).hom(0, 1).at(0);
  return {"Z -> Z + Z[-1]", {g, 5, 0, degree0(f.objects[0], f.objects[5], {{1}})}, false};
}

}  // namespace sk

namespace sk {

Functor poset_functor(const FiniteCategory& src, const FiniteCategory& tgt, const std::vector<int>& obj) {
  Functor f;
  f.obj = obj;
  for (auto& a : src.arrows) {
    auto h = tgt.hom(obj[a.src], obj[a.tgt]);
    if (h.size() != 1) throw std::invalid_argument("poset_functor: object map is not monotone");
    f.arr.push_back(h[0]);
  }
  validate_functor(src, tgt, f);
  return f;
}

NamedFibration grothendieck_fibration(std::string name, const FiniteCategory& base,
                                      const std::vector<FiniteCategory>& fibre, const std::vector<Functor>& pull) {
  NamedFibration f;
  f.name = std::move(name);
  f.construction = grothendieck(base, fibre, pull);
  f.total = nerve_presentation(f.construction.total);
  f.base = nerve_presentation(base, f.total.bound);
  f.p = nerve_of_functor(f.total, f.base, f.construction.projection);
  return f;
}

NamedFibration product_fibration(std::string name, const FiniteCategory& base, const FiniteCategory& fibre) {
  std::vector<FiniteCategory> fib(base.num_objects(), fibre);
  std::vector<Functor> pull(base.num_arrows(), Functor::identity(fibre));
  return grothendieck_fibration(std::move(name), base, fib, pull);
}

std::vector<NamedFibration> section_fixtures() {
  std::vector<NamedFibration> out;
  FiniteCategory i1 = FiniteCategory::linear(1), i2 = FiniteCategory::linear(2);
  out.push_back(product_fibration("point-base", FiniteCategory::linear(0), i1));
  out.push_back(product_fibration("product-1", i1, i1));
  {
    // fibre {c, d, e} over 1 pulled back to {a, b} over 0
    FiniteCategory f0 = FiniteCategory::discrete(2), f1 = FiniteCategory::discrete(3);
    std::vector<Functor> pull = {Functor::identity(f0), poset_functor(f1, f0, {0, 0, 1}), Functor::identity(f1)};
    out.push_back(grothendieck_fibration("discrete-1", i1, {f0, f1}, pull));
  }
  {
    std::vector<Functor> pull = {Functor::identity(i1), poset_functor(i2, i1, {0, 1, 1}), Functor::identity(i2)};
    out.push_back(grothendieck_fibration("poset-1", i1, {i1, i2}, pull));
  }
  out.push_back(product_fibration("product-2", i2, i1));
  return out;
}

std::vector<NamedCategory> twisted_fixture_categories() {
  FiniteCategory parallel;
  parallel.objects = {"x", "y"};
  parallel.arrows = {{0, 0, "idx"}, {0, 1, "f"}, {0, 1, "g"}, {1, 1, "idy"}};
  parallel.identity = {0, 3};
  parallel.comp = {{0, -1, -1, -1}, {1, -1, -1, -1}, {2, -1, -1, -1}, {-1, 1, 2, 3}};
  return {{"linear-2", FiniteCategory::linear(2)},
          {"diamond", FiniteCategory::poset(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}})},
          {"parallel", parallel},
          {"Z/2", FiniteCategory::cyclic_group(2)}};
}

}  // namespace sk

namespace sk {

SimplicialMap vertex_section(const SSetPtr& x, int vertex_gen) {
  if (x->gen(vertex_gen).dim != 0) throw std::invalid_argument("vertex_section: not a vertex generator");
  return SimplicialMap{point(), x, {SimplexRef{vertex_gen, {0}}}};
}

std::vector<PointedSpace> loop_fixtures(int level) {
  std::vector<std::pair<std::string, FiniteCategory>> groups = {
      {"BZ2", FiniteCategory::cyclic_group(2)},
      {"BZ3", FiniteCategory::cyclic_group(3)},
      {"BS3", FiniteCategory::symmetric_group3()}};
  std::vector<PointedSpace> out;
  for (auto& [name, c] : groups) {
    Presentation pres = truncated_nerve(c, level);
    out.push_back({name, pres, to_point(pres.set), vertex_section(pres.set, 0), c.num_arrows()});
  }
  return out;
}

PointedSpace loop_negative_control() {
  SSetPtr d1 = standard_simplex(1);
  Presentation pres = present(PresentedLevels(d1), 1);
  return {"Delta1", pres, to_point(pres.set), vertex_section(pres.set, pres.set->gens_of_dim(0)[0]), 0};
}

}  // namespace sk
