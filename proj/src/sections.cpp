#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "simpkit/constructions.hpp"
#include "simpkit/lifting.hpp"
#include "simpkit/twisted.hpp"

namespace sk {

namespace {

OrdMap range_map(int from, int len) {
  OrdMap r(len);
  std::iota(r.begin(), r.end(), from);
  return r;
}

void append(Key& k, const SimplexRef& s) {
  Key e = encode(s);
  k.insert(k.end(), e.begin(), e.end());
}

// tau in X_{2n+1} over a twisted simplex of K whose front is F and back is G.
class MapZLevels : public Levelwise {
 public:
  MapZLevels(SimplicialMap p, SimplicialMap f, SimplicialMap g) : p_(std::move(p)), f_(std::move(f)), g_(std::move(g)) {}

  std::vector<Key> level(int n) const override {
    const auto& X = *p_.src;
    const auto& K = *p_.tgt;
    std::vector<Key> out;
    OrdMap fr = range_map(0, n + 1), bk = range_map(n + 1, n + 1);
    for (auto& t : X.level(2 * n + 1)) {
      SimplexRef s = p_(t);
      if (X.apply(t, fr) != f_(K.apply(s, fr))) continue;
      if (X.apply(t, bk) != g_(K.apply(s, bk))) continue;
      out.push_back(encode(t));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  Key act(const Key& x, int n, const OrdMap& a) const override {
    return encode(p_.src->apply(decode(x, 0, 2 * n + 1), twisted_double(a, n)));
  }
  std::string name(const Key& x, int n) const override { return p_.src->describe(decode(x, 0, 2 * n + 1)); }

 private:
  SimplicialMap p_, f_, g_;
};

void require_section(const SimplicialMap& p, const SimplicialMap& s, const char* what) {
  if (s.src != p.tgt || s.tgt != p.src) throw std::invalid_argument(std::string(what) + ": not a map K -> X");
  for (int g = 0; g < p.tgt->size(); ++g)
    if (p(s.assign[g]) != p.tgt->id(g))
      throw std::invalid_argument(std::string(what) + ": not a section at '" + p.tgt->gen(g).name + "'");
}

// pi_1 at the first vertex of every component.
std::vector<FiniteGroup> component_groups(const Presentation& h) {
  std::vector<FiniteGroup> out;
  Components c = pi0(*h.set);
  std::vector<char> seen(c.count, 0);
  const auto& verts = h.set->gens_of_dim(0);
  for (size_t i = 0; i < verts.size(); ++i) {
    if (seen[c.of_vertex[i]]) continue;
    seen[c.of_vertex[i]] = 1;
    out.push_back(pi1(h.set, verts[i], 2));
  }
  return out;
}

bool same_groups(std::vector<FiniteGroup> a, std::vector<FiniteGroup> b) {
  if (a.size() != b.size()) return false;
  std::vector<char> used(b.size(), 0);
  for (auto& g : a) {
    bool found = false;
    for (size_t j = 0; j < b.size() && !found; ++j)
      if (!used[j] && isomorphic(g, b[j])) used[j] = 1, found = true;
    if (!found) return false;
  }
  return true;
}

}  // namespace

SectionLevels::SectionLevels(SimplicialMap p) : p_(std::move(p)), target_(p_.src, p_) {}

const SectionLevels::Shape& SectionLevels::shape(int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (static_cast<int>(shapes_.size()) <= n) shapes_.resize(n + 1);
  if (shapes_[n]) return *shapes_[n];
  auto s = std::make_unique<Shape>();
  // one extra level so that degeneracies of the n-shape can be classified
  s->prod = product(p_.tgt, standard_simplex(n), std::max(0, p_.tgt->dim()) + n + 1);
  const auto& P = *s->prod.pres.set;
  s->fixed.assign(P.size(), SimplexRef{});
  size_t off = 0;
  for (int g = 0; g < P.size(); ++g) {
    s->offset.push_back(off);
    off += P.gen(g).dim + 2;
  }
  shapes_[n] = std::move(s);
  return *shapes_[n];
}

std::vector<Key> SectionLevels::level(int n) const {
  const Shape& s = shape(n);
  std::vector<Key> out;
  MapQuery q{s.prod.pres.set, &target_, s.fixed, s.prod.pr1};
  search_maps(q, [&](const std::vector<SimplexRef>& a) {
    Key key;
    for (auto& y : a) append(key, y);
    out.push_back(std::move(key));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

SimplexRef SectionLevels::value(const Key& x, int n, const SimplexRef& k, const OrdMap& delta) const {
  const Shape& s = shape(n);
  const SimplexRef& r = s.prod.pres.lookup(ProductLevels::make(k, delta_simplex(n, delta)), k.dim());
  return p_.src->apply(decode(x, s.offset[r.gen], s.prod.pres.set->gen(r.gen).dim), r.eta);
}

Key SectionLevels::act(const Key& x, int n, const OrdMap& a) const {
  int m = static_cast<int>(a.size()) - 1;
  const Shape& sm = shape(m);
  const auto& dm = *sm.prod.pr2.tgt;
  Key out;
  for (int g = 0; g < sm.prod.pres.set->size(); ++g) {
    const Key& gk = sm.prod.pres.gen_key[g];
    int dim = sm.prod.pres.set->gen(g).dim;
    OrdMap verts;
    for (int v : dm.vertices(ProductLevels::second(gk, dim))) verts.push_back(a[v]);
    append(out, value(x, n, ProductLevels::first(gk, dim), verts));
  }
  return out;
}

SimplexRef SectionLevels::at_vertex(const Key& x, int n, int v) const {
  const auto& K = *p_.tgt;
  return value(x, n, K.apply(K.id(v), OrdMap(n + 1, 0)), identity_map(n));
}

std::string SectionLevels::name(const Key& x, int n) const {
  std::string s = "[";
  const auto& verts = p_.tgt->gens_of_dim(0);
  for (size_t i = 0; i < verts.size(); ++i) s += (i ? "," : "") + p_.src->describe(at_vertex(x, n, verts[i]));
  return s + "]";
}

SimplicialMap SectionLevels::as_section(const Key& x) const {
  const auto& K = *p_.tgt;
  SimplicialMap s{p_.tgt, p_.src, {}};
  for (int g = 0; g < K.size(); ++g) s.assign.push_back(value(x, 0, K.id(g), OrdMap(K.gen(g).dim + 1, 0)));
  return s;
}

Key SectionLevels::key_of(const SimplicialMap& s) const {
  const Shape& sh = shape(0);
  Key out;
  for (int g = 0; g < sh.prod.pres.set->size(); ++g) {
    int dim = sh.prod.pres.set->gen(g).dim;
    append(out, s(ProductLevels::first(sh.prod.pres.gen_key[g], dim)));
  }
  return out;
}

int Sections::vertex_of(const SimplicialMap& s) const {
  auto it = pres.classify[0].find(levels->key_of(s));
  return it == pres.classify[0].end() ? -1 : it->second.gen;
}

Sections sections(const SimplicialMap& p, int d) {
  Sections s;
  s.levels = std::make_shared<SectionLevels>(p);
  s.pres = present(*s.levels, d);
  return s;
}

Sections cartesian_sections(const SimplicialMap& p, int d, int check_bound) {
  Sections s;
  s.levels = std::make_shared<SectionLevels>(p);
  const auto& K = *p.tgt;
  std::map<SimplexRef, bool> cart;
  std::set<Key> good;
  for (auto& v : s.levels->level(0)) {
    bool ok = true;
    for (int e : K.dim() >= 1 ? K.gens_of_dim(1) : std::vector<int>{}) {
      SimplexRef img = s.levels->value(v, 0, K.id(e), {0, 0});
      if (!img.nondegenerate()) continue;
      auto it = cart.find(img);
      if (it == cart.end()) it = cart.emplace(img, is_cartesian_edge(p, img, check_bound).holds()).first;
      if (!it->second) {
        ok = false;
        break;
      }
    }
    if (ok) good.insert(v);
  }
  auto lv = s.levels;
  FilteredLevels f(lv, [lv, good](const Key& x, int n) {
    for (int j = 0; j <= n; ++j)
      if (!good.count(lv->act(x, n, {j}))) return false;
    return true;
  });
  s.pres = present(f, d);
  return s;
}

SectionMappingSpace mapping_space_sections(const SimplicialMap& p, const SimplicialMap& f, const SimplicialMap& g,
                                           int d) {
  require_section(p, f, "mapping_space_sections");
  require_section(p, g, "mapping_space_sections");
  SectionMappingSpace out;
  Report& r = out.report;
  r.claim = "sections of Z -> Tw K compute the mapping space in Gamma(K, X)";
  r.bound = d;
  const SSetPtr& K = p.tgt;
  int kd = std::max(1, K->dim());
  TwistedArrow tk = twisted_arrow(K, std::max(d, kd));
  Presentation z = present(MapZLevels(p, f, g), std::max(d, kd + 1));
  SimplicialMap proj = map_from_keys(z, tk.tw, [&](const Key& x, int n) { return encode(p(decode(x, 0, 2 * n + 1))); });
  Report fib = classify_fibration(proj, FibrationClass::right, d);
  r.details["z_generators"] = generator_counts(*z.set);
  r.details["z_right_fibration"] = fib.verdict;
  if (!fib.holds()) {
    r.verdict = "fails";
    r.counterexample = fib.counterexample;
    r.details["stage"] = "fibration";
    return out;
  }
  out.space = sections(proj, 1);
  int via_tw = pi0(*out.space->pres.set).count;

  Sections gamma = sections(p, std::max(d, 2));
  int vf = gamma.vertex_of(f), vg = gamma.vertex_of(g);
  HomotopyCategory h = tau1(gamma.pres.set, std::max(d, 2));
  int hom = static_cast<int>(h.cat.hom(vf, vg).size());
  int via_hom_right = pi0(*hom_right(gamma.pres.set, vf, vg, 1).set).count;
  r.details["pi0_sections"] = via_tw;
  r.details["hom_homotopy_category"] = hom;
  r.details["pi0_hom_right"] = via_hom_right;
  bool ok = via_tw == hom && hom == via_hom_right;
  r.verdict = ok ? "holds" : "fails";
  if (!ok) r.counterexample = {{"pi0_sections", via_tw}, {"hom", hom}, {"pi0_hom_right", via_hom_right}};
  return out;
}

std::optional<int> final_vertex(const SSetPtr& k, int d) {
  for (int s : k->gens_of_dim(0)) {
    bool ok = true;
    for (int y : k->gens_of_dim(0)) {
      Presentation h = hom_right(k, y, s, d);
      if (pi0(*h.set).count != 1 || !classify_fibration(to_point(h.set), FibrationClass::trivial, d).holds()) {
        ok = false;
        break;
      }
    }
    if (ok) return s;
  }
  return std::nullopt;
}

Report mapping_space_cart_reduction(const SimplicialMap& p, const SimplicialMap& f, const SimplicialMap& g, int d) {
  require_section(p, f, "mapping_space_cart_reduction");
  require_section(p, g, "mapping_space_cart_reduction");
  const SSetPtr& K = p.tgt;
  const SSetPtr& X = p.src;
  auto fin = final_vertex(K, d);
  if (!fin) throw std::invalid_argument("mapping_space_cart_reduction: base has no final vertex");
  int s = *fin;
  Report r;
  r.claim = "Gamma_Cart(K, X) -> X_S is a trivial fibration and mapping spaces agree";
  r.bound = d;
  r.details["final_vertex"] = K->gen(s).name;

  Sections gc = cartesian_sections(p, d + 1, d);
  int vf = gc.vertex_of(f), vg = gc.vertex_of(g);
  if (vf < 0 || vg < 0) throw std::invalid_argument("mapping_space_cart_reduction: F and G must be Cartesian sections");
  auto xl = std::make_shared<PresentedLevels>(X);
  FilteredLevels fibre(xl, [&p, K, s](const Key& x, int n) {
    return p(decode(x, 0, n)) == K->apply(K->id(s), OrdMap(n + 1, 0));
  });
  Presentation xs = present(fibre, d + 1);
  auto lv = gc.levels;
  SimplicialMap res = map_from_keys(gc.pres, xs, [lv, s](const Key& x, int n) { return encode(lv->at_vertex(x, n, s)); });
  Report triv = classify_fibration(res, FibrationClass::trivial, d);
  r.details["restriction_trivial_fibration"] = triv.verdict;

  int fs = xs.lookup(encode(f.assign[s]), 0).gen, gs = xs.lookup(encode(g.assign[s]), 0).gen;
  Presentation h1 = hom_right(gc.pres.set, vf, vg, d);
  Presentation h2 = hom_right(xs.set, fs, gs, d);
  int c1 = pi0(*h1.set).count, c2 = pi0(*h2.set).count;
  r.details["pi0_sections"] = c1;
  r.details["pi0_fibre"] = c2;
  bool pi1_ok = true;
  if (d >= 2) {
    try {
      auto g1 = component_groups(h1), g2 = component_groups(h2);
      pi1_ok = same_groups(g1, g2);
      json orders = json::array();
      for (auto& gr : g1) orders.push_back(gr.order());
      r.details["pi1_orders"] = orders;
    } catch (const std::invalid_argument& e) {
      pi1_ok = false;
      r.details["pi1_error"] = e.what();
    }
  } else {
    r.details["pi1"] = "not checked below bound 2";
  }
  bool ok = triv.holds() && c1 == c2 && pi1_ok;
  r.verdict = ok ? "holds" : "fails";
  if (!triv.holds()) r.counterexample = triv.counterexample;
  return r;
}

}  // namespace sk
