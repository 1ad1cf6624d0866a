#include "simpkit/descent.hpp"

#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sk {

namespace {

json functor_to_json(const Functor& f) { return {{"objects", f.obj}, {"arrows", f.arr}}; }

Functor functor_from_json(const json& j) {
  Functor f;
  f.obj = j.at("objects").get<std::vector<int>>();
  f.arr = j.at("arrows").get<std::vector<int>>();
  return f;
}

int find_root(std::vector<int>& p, int a) { return p[a] == a ? a : p[a] = find_root(p, p[a]); }

std::vector<int> components(const FiniteCategory& c) {
  std::vector<int> p(c.num_objects());
  std::iota(p.begin(), p.end(), 0);
  for (auto& a : c.arrows) {
    int x = find_root(p, a.src), y = find_root(p, a.tgt);
    if (x != y) p[std::max(x, y)] = std::min(x, y);
  }
  for (int x = 0; x < c.num_objects(); ++x) p[x] = find_root(p, x);
  return p;
}

}  // namespace

void DescentData::validate() const {
  if (level.size() != 4 || coface.size() != 3) throw std::invalid_argument("descent: need levels -1..2");
  for (int m = -1; m <= 2; ++m) {
    at(m).validate();
    if (!at(m).is_groupoid()) throw std::invalid_argument("descent: level " + std::to_string(m) + " is not a groupoid");
  }
  for (int m = 0; m <= 2; ++m) {
    size_t want = m == 0 ? 1 : m + 1;
    if (coface[m].size() != want) throw std::invalid_argument("descent: wrong number of cofaces at level " + std::to_string(m));
    for (size_t i = 0; i < want; ++i) validate_functor(at(m - 1), at(m), coface[m][i]);
  }
  // delta_j delta_i = delta_i delta_{j-1} for i < j, as maps [m-2] -> [m]
  for (int m = 1; m <= 2; ++m)
    for (int j = 0; j <= m; ++j)
      for (int i = 0; i < j; ++i) {
        int jm = m == 1 ? 0 : j - 1;
        int im = m == 1 ? 0 : i;
        if (!(compose(coface[m][j], coface[m - 1][im]) == compose(coface[m][i], coface[m - 1][jm])))
          throw std::invalid_argument("descent: cosimplicial identity fails at level " + std::to_string(m) + " for (" +
                                      std::to_string(i) + ", " + std::to_string(j) + ")");
      }
}

json DescentData::to_json() const {
  json j;
  j["levels"] = json::array();
  for (auto& c : level) j["levels"].push_back(category_to_json(c));
  j["cofaces"] = json::array();
  for (auto& row : coface) {
    json r = json::array();
    for (auto& f : row) r.push_back(functor_to_json(f));
    j["cofaces"].push_back(r);
  }
  return j;
}

DescentData DescentData::from_json(const json& j) {
  DescentData d;
  for (auto& c : j.at("levels")) d.level.push_back(category_from_json(c));
  for (auto& row : j.at("cofaces")) {
    d.coface.emplace_back();
    for (auto& f : row) d.coface.back().push_back(functor_from_json(f));
  }
  d.validate();
  return d;
}

SetPresheaf torsor_presheaf(const FiniteGroup& g) {
  int q = g.order();
  auto digits = [q](int code, int n) {
    std::vector<int> t(n);
    for (int i = 0; i < n; ++i, code /= q) t[i] = code % q;
    return t;
  };
  auto number = [q](const std::vector<int>& t) {
    int code = 0;
    for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) code = code * q + t[i];
    return code;
  };
  SetPresheaf f;
  f.name = "torsors";
  f.value = [g, q, digits, number](int n) {
    int size = 1;
    for (int i = 0; i < n; ++i) size *= q;
    FiniteCategory c;
    c.objects = {"*"};
    c.identity = {number(std::vector<int>(n, g.identity))};
    c.comp.assign(size, std::vector<int>(size));
    for (int a = 0; a < size; ++a) {
      auto ta = digits(a, n);
      std::string nm;
      for (int v : ta) nm += g.names[v];
      c.arrows.push_back({0, 0, n ? nm : "e"});
      for (int b = 0; b < size; ++b) {
        auto tb = digits(b, n), tc = ta;
        for (int i = 0; i < n; ++i) tc[i] = g.mult[ta[i]][tb[i]];
        c.comp[a][b] = number(tc);
      }
    }
    return c;
  };
  f.pullback = [q, digits, number](const std::vector<int>& map, int nu, int nv) {
    int size = 1;
    for (int i = 0; i < nv; ++i) size *= q;
    Functor r;
    r.obj = {0};
    for (int a = 0; a < size; ++a) {
      auto t = digits(a, nv);
      std::vector<int> u(nu);
      for (int i = 0; i < nu; ++i) u[i] = t[map[i]];
      r.arr.push_back(number(u));
    }
    return r;
  };
  return f;
}

SetPresheaf constant_presheaf(int k) {
  SetPresheaf f;
  f.name = "constant";
  f.value = [k](int) { return FiniteCategory::discrete(k); };
  f.pullback = [k](const std::vector<int>&, int, int) { return Functor::identity(FiniteCategory::discrete(k)); };
  return f;
}

DescentData descent_data(const std::vector<int>& cover, int base_size, const SetPresheaf& f) {
  std::vector<char> hit(base_size, 0);
  for (int b : cover) {
    if (b < 0 || b >= base_size) throw std::invalid_argument("descent: cover maps outside the base");
    hit[b] = 1;
  }
  for (int b = 0; b < base_size; ++b)
    if (!hit[b]) throw std::invalid_argument("descent: cover is not surjective");
  int ne = static_cast<int>(cover.size());
  // tuples[m]: (m+1)-tuples of points of E over a common point of B
  std::vector<std::vector<std::vector<int>>> tuples(3);
  for (int e = 0; e < ne; ++e) tuples[0].push_back({e});
  for (int m = 1; m <= 2; ++m)
    for (auto& t : tuples[m - 1])
      for (int e = 0; e < ne; ++e)
        if (cover[e] == cover[t[0]]) {
          auto u = t;
          u.push_back(e);
          tuples[m].push_back(u);
        }
  auto size = [&](int m) { return m < 0 ? base_size : static_cast<int>(tuples[m].size()); };
  DescentData d;
  for (int m = -1; m <= 2; ++m) d.level.push_back(f.value(size(m)));
  d.coface.resize(3);
  d.coface[0].push_back(f.pullback(cover, ne, base_size));
  for (int m = 1; m <= 2; ++m) {
    std::map<std::vector<int>, int> index;
    for (size_t k = 0; k < tuples[m - 1].size(); ++k) index[tuples[m - 1][k]] = static_cast<int>(k);
    for (int i = 0; i <= m; ++i) {
      std::vector<int> drop;
      for (auto& t : tuples[m]) {
        auto u = t;
        u.erase(u.begin() + i);
        drop.push_back(index.at(u));
      }
      d.coface[m].push_back(f.pullback(drop, size(m), size(m - 1)));
    }
  }
  d.validate();
  return d;
}

DescentGroupoid descent_groupoid(const DescentData& d) {
  const FiniteCategory& f0 = d.at(0);
  const FiniteCategory& f1 = d.at(1);
  const FiniteCategory& f2 = d.at(2);
  const Functor& a1 = d.coface[1][1];  // restriction to the first vertex of [1]
  const Functor& b1 = d.coface[1][0];  // to the second vertex
  DescentGroupoid g;
  std::map<std::pair<int, int>, int> index;
  for (int x = 0; x < f0.num_objects(); ++x)
    for (int phi : f1.hom(a1.obj[x], b1.obj[x])) {
      // phi_02 = phi_12 o phi_01
      int lhs = d.coface[2][1].arr[phi];
      int rhs = f2.comp[d.coface[2][0].arr[phi]][d.coface[2][2].arr[phi]];
      if (lhs != rhs) continue;
      index[{x, phi}] = g.groupoid.num_objects();
      g.object_of.push_back({x, phi});
      g.groupoid.objects.push_back(f0.objects[x] + "|" + f1.arrows[phi].name);
    }
  int no = g.groupoid.num_objects();
  std::vector<int> arrow_f0;
  for (int s = 0; s < no; ++s)
    for (int t = 0; t < no; ++t) {
      auto [x, phi] = g.object_of[s];
      auto [y, psi] = g.object_of[t];
      for (int a : f0.hom(x, y)) {
        if (f1.comp[psi][a1.arr[a]] != f1.comp[b1.arr[a]][phi]) continue;
        g.groupoid.arrows.push_back({s, t, f0.arrows[a].name});
        arrow_f0.push_back(a);
        if (s == t && f0.is_identity(a)) g.groupoid.identity.push_back(g.groupoid.num_arrows() - 1);
      }
    }
  int na = g.groupoid.num_arrows();
  std::map<std::pair<int, int>, int> arrow_index;  // (source object, f0 arrow)
  for (int k = 0; k < na; ++k) arrow_index[{g.groupoid.arrows[k].src, arrow_f0[k]}] = k;
  g.groupoid.comp.assign(na, std::vector<int>(na, -1));
  for (int h = 0; h < na; ++h)
    for (int k = 0; k < na; ++k)
      if (g.groupoid.arrows[k].tgt == g.groupoid.arrows[h].src)
        g.groupoid.comp[h][k] = arrow_index.at({g.groupoid.arrows[k].src, f0.comp[arrow_f0[h]][arrow_f0[k]]});
  g.groupoid.validate();

  const FiniteCategory& fb = d.at(-1);
  const Functor& e = d.coface[0][0];
  for (int z = 0; z < fb.num_objects(); ++z) {
    int x = e.obj[z];
    g.comparison.obj.push_back(index.at({x, f1.identity[a1.obj[x]]}));
  }
  for (int a = 0; a < fb.num_arrows(); ++a)
    g.comparison.arr.push_back(arrow_index.at({g.comparison.obj[fb.arrows[a].src], e.arr[a]}));
  validate_functor(fb, g.groupoid, g.comparison);
  return g;
}

Report descent_check(const DescentData& d, int bound) {
  d.validate();
  DescentGroupoid g = descent_groupoid(d);
  const FiniteCategory& fb = d.at(-1);
  Report r;
  r.claim = "restriction to descent data is an equivalence of groupoids";
  r.bound = bound;
  std::vector<int> cb = components(fb), cd = components(g.groupoid);
  std::map<int, int> image;  // component of F_{-1} -> component of descent data
  for (int z = 0; z < fb.num_objects(); ++z) image[cb[z]] = cd[g.comparison.obj[z]];
  std::map<int, int> preimage;
  for (auto& [zc, dc] : image) {
    auto [it, fresh] = preimage.emplace(dc, zc);
    if (!fresh && r.counterexample.is_null())
      r.counterexample = {{"kind", "pi0 not injective"},
                          {"objects", {fb.objects[it->second], fb.objects[zc]}},
                          {"descent_object", g.groupoid.objects[dc]}};
  }
  std::vector<char> hit(g.groupoid.num_objects(), 0);
  for (auto& [zc, dc] : image) hit[dc] = 1;
  for (int x = 0; x < g.groupoid.num_objects() && r.counterexample.is_null(); ++x)
    if (!hit[cd[x]])
      r.counterexample = {{"kind", "pi0 not surjective"}, {"descent_object", g.groupoid.objects[x]}};
  bool faithful = true;
  for (int z = 0; z < fb.num_objects() && r.counterexample.is_null(); ++z)
    for (int w = 0; w < fb.num_objects() && r.counterexample.is_null(); ++w) {
      auto h = fb.hom(z, w);
      std::set<int> img;
      for (int a : h) img.insert(g.comparison.arr[a]);
      size_t target = g.groupoid.hom(g.comparison.obj[z], g.comparison.obj[w]).size();
      if (img.size() != h.size() || img.size() != target) {
        faithful = false;
        r.counterexample = {{"kind", "not fully faithful"},
                            {"objects", {fb.objects[z], fb.objects[w]}},
                            {"hom", h.size()},
                            {"image", img.size()},
                            {"descent_hom", target}};
      }
    }
  int nb = 0, nd = 0;
  for (int z = 0; z < fb.num_objects(); ++z) nb += cb[z] == z;
  for (int x = 0; x < g.groupoid.num_objects(); ++x) nd += cd[x] == x;
  json auts = json::array();
  for (int z = 0; z < fb.num_objects(); ++z)
    if (cb[z] == z) auts.push_back(fb.hom(z, z).size());
  r.details = {{"pi0_base", nb}, {"pi0_descent", nd}, {"descent_objects", g.groupoid.num_objects()},
               {"automorphism_orders", auts}, {"fully_faithful", faithful}};
  r.verdict = r.counterexample.is_null() ? "holds" : "fails";
  return r;
}

}  // namespace sk
