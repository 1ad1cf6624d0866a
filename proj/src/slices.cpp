#include "simpkit/slices.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "simpkit/constructions.hpp"

namespace sk {

namespace {

// alpha * id_[k] : [m+1+k] -> [n+1+k], or id_[k] * alpha when co.
OrdMap extend(const OrdMap& a, int n, int k, bool co) {
  int m = static_cast<int>(a.size()) - 1;
  OrdMap b;
  if (co) {
    for (int j = 0; j <= k; ++j) b.push_back(j);
    for (int j = 0; j <= m; ++j) b.push_back(a[j] + k + 1);
  } else {
    for (int j = 0; j <= m; ++j) b.push_back(a[j]);
    for (int j = 0; j <= k; ++j) b.push_back(n + 1 + j);
  }
  return b;
}

OrdMap range_map(int from, int len) {
  OrdMap r(len);
  std::iota(r.begin(), r.end(), from);
  return r;
}

}  // namespace

SliceLevels::SliceLevels(SimplicialMap k, bool co) : k_(std::move(k)), co_(co), target_(k_.tgt) {}

const SliceLevels::Shape& SliceLevels::shape(int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (static_cast<int>(shapes_.size()) <= n) shapes_.resize(n + 1);
  if (shapes_[n]) return *shapes_[n];
  auto s = std::make_unique<Shape>();
  SSetPtr dn = standard_simplex(n);
  // one extra level so that degeneracies of the n-shape can be classified
  int bound = n + 2 + std::max(0, k_.src->dim());
  s->join = co_ ? present(JoinLevels(k_.src, dn), bound) : present(JoinLevels(dn, k_.src), bound);
  const auto& J = *s->join.set;
  s->fixed.assign(J.size(), SimplexRef{});
  size_t off = 0;
  for (int g = 0; g < J.size(); ++g) {
    s->offset.push_back(off);
    off += J.gen(g).dim + 2;
    const Key& jk = s->join.gen_key[g];
    int i = jk[0], tot = J.gen(g).dim;
    if (!co_ && i == -1) s->fixed[g] = k_(decode(jk, 1, tot));
    if (co_ && i == tot) s->fixed[g] = k_(decode(jk, 1, tot));
  }
  shapes_[n] = std::move(s);
  return *shapes_[n];
}

std::vector<Key> SliceLevels::level(int n) const {
  const Shape& s = shape(n);
  std::vector<Key> out;
  MapQuery q{s.join.set, &target_, s.fixed, std::nullopt};
  search_maps(q, [&](const std::vector<SimplexRef>& a) {
    Key key;
    for (auto& y : a) {
      auto e = encode(y);
      key.insert(key.end(), e.begin(), e.end());
    }
    out.push_back(std::move(key));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

// Image of a join simplex key of the m-shape under alpha (*) id.
Key SliceLevels::transport(const Key& jk, int n, int m, const OrdMap& a) const {
  int i = jk[0];
  auto moved = [&](size_t pos, int dim) {
    SimplexRef x = decode(jk, pos, dim);
    OrdMap verts;
    for (int v : standard_simplex(m)->vertices(x)) verts.push_back(a[v]);
    return encode(delta_simplex(n, verts));
  };
  Key out;
  if (!co_) {
    out.push_back(i);
    if (i >= 0) {
      auto e = moved(1, i);
      out.insert(out.end(), e.begin(), e.end());
      out.insert(out.end(), jk.begin() + 3 + i, jk.end());
    } else {
      out.insert(out.end(), jk.begin() + 1, jk.end());
    }
  } else {
    size_t pos = i >= 0 ? static_cast<size_t>(i + 3) : 1;
    out.assign(jk.begin(), jk.begin() + pos);
    if (pos < jk.size()) {
      auto e = moved(pos, static_cast<int>(jk.size() - pos) - 2);
      out.insert(out.end(), e.begin(), e.end());
    }
  }
  return out;
}

Key SliceLevels::act(const Key& x, int n, const OrdMap& a) const {
  int m = static_cast<int>(a.size()) - 1;
  const Shape& sn = shape(n);
  const Shape& sm = shape(m);
  const auto& X = *k_.tgt;
  Key out;
  for (int g = 0; g < sm.join.set->size(); ++g) {
    const Key& jk = sm.join.gen_key[g];
    int tot = sm.join.set->gen(g).dim;
    Key img = transport(jk, n, m, a);
    const SimplexRef& r = sn.join.lookup(img, tot);
    int h = r.gen;
    SimplexRef fh = decode(x, sn.offset[h], sn.join.set->gen(h).dim);
    auto e = encode(X.apply(fh, r.eta));
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

std::string SliceLevels::name(const Key& x, int n) const {
  const Shape& s = shape(n);
  int top = -1;
  for (int g = 0; g < s.join.set->size(); ++g)
    if (s.join.set->gen(g).dim >= (top < 0 ? -1 : s.join.set->gen(top).dim)) top = g;
  if (top < 0) return "()";
  return k_.tgt->describe(decode(x, s.offset[top], s.join.set->gen(top).dim));
}

std::vector<Key> SimplexSliceLevels::level(int n) const {
  int k = s_.dim();
  std::vector<Key> out;
  OrdMap back = co_ ? range_map(0, k + 1) : range_map(n + 1, k + 1);
  for (auto& z : x_->level(n + 1 + k))
    if (x_->apply(z, back) == s_) out.push_back(encode(z));
  std::sort(out.begin(), out.end());
  return out;
}

Key SimplexSliceLevels::act(const Key& x, int n, const OrdMap& a) const {
  int k = s_.dim();
  return encode(x_->apply(decode(x, 0, n + 1 + k), extend(a, n, k, co_)));
}

std::vector<Key> HomRightLevels::level(int n) const {
  std::vector<Key> out;
  SimplexRef front{from_, OrdMap(n + 1, 0)};
  for (auto& z : x_->level(n + 1))
    if (x_->apply(z, range_map(0, n + 1)) == front && x_->vertex(z, n + 1).gen == to_) out.push_back(encode(z));
  std::sort(out.begin(), out.end());
  return out;
}

Key HomRightLevels::act(const Key& x, int n, const OrdMap& a) const {
  return encode(x_->apply(decode(x, 0, n + 1), extend(a, n, 0, false)));
}

Key PullbackLevels::first(const Key& x) { return Key(x.begin() + 1, x.begin() + 1 + x[0]); }
Key PullbackLevels::second(const Key& x) { return Key(x.begin() + 1 + x[0], x.end()); }

std::vector<Key> PullbackLevels::level(int n) const {
  std::map<Key, std::vector<Key>> by;
  for (auto& kb : b_->level(n)) by[fb_(kb, n)].push_back(kb);
  std::vector<Key> out;
  for (auto& ka : a_->level(n)) {
    auto it = by.find(fa_(ka, n));
    if (it == by.end()) continue;
    for (auto& kb : it->second) {
      Key k{static_cast<int>(ka.size())};
      k.insert(k.end(), ka.begin(), ka.end());
      k.insert(k.end(), kb.begin(), kb.end());
      out.push_back(std::move(k));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Key PullbackLevels::act(const Key& x, int n, const OrdMap& a) const {
  Key ka = a_->act(first(x), n, a), kb = b_->act(second(x), n, a);
  Key k{static_cast<int>(ka.size())};
  k.insert(k.end(), ka.begin(), ka.end());
  k.insert(k.end(), kb.begin(), kb.end());
  return k;
}

std::string PullbackLevels::name(const Key& x, int n) const {
  return "(" + a_->name(first(x), n) + "," + b_->name(second(x), n) + ")";
}

Presentation slice(const SimplicialMap& k, int d) { return present(SliceLevels(k, false), d); }
Presentation coslice(const SimplicialMap& k, int d) { return present(SliceLevels(k, true), d); }
Presentation hom_right(const SSetPtr& x, int from, int to, int d) { return present(HomRightLevels(x, from, to), d); }

namespace {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int a) { return p[a] == a ? a : p[a] = find(p[a]); }
  void unite(int a, int b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

HomotopyCategory tau1(const SSetPtr& x, int check_bound) {
  auto qc = is_quasi_category(x, check_bound);
  if (!qc.holds()) throw std::invalid_argument("tau1: not a quasi-category up to dimension " + std::to_string(check_bound));
  const auto& X = *x;
  auto edges = X.level(1);
  std::map<SimplexRef, int> eid;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) eid[edges[i]] = i;
  UnionFind uf(static_cast<int>(edges.size()));
  auto tris = X.level(2);
  for (auto& s : tris) {
    SimplexRef d0 = X.face(s, 0);
    if (d0 == X.degen(X.vertex(s, 2), 0)) uf.unite(eid[X.face(s, 2)], eid[X.face(s, 1)]);
  }
  HomotopyCategory h;
  auto& C = h.cat;
  for (int v : X.gens_of_dim(0)) C.objects.push_back(X.gen(v).name);
  // vertex generator ids are 0..V-1 in this library's dimension-ordered sets
  std::map<int, int> arrow_of_root;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    int r = uf.find(i);
    if (!arrow_of_root.count(r)) {
      arrow_of_root[r] = C.num_arrows();
      const auto& e = edges[r];
      C.arrows.push_back({X.vertex(e, 0).gen, X.vertex(e, 1).gen, X.describe(e)});
      h.rep.push_back(e);
    }
    h.arrow_of[edges[i]] = arrow_of_root[r];
  }
  for (int v = 0; v < C.num_objects(); ++v) C.identity.push_back(h.arrow_of[X.degen(X.id(v), 0)]);
  int na = C.num_arrows();
  C.comp.assign(na, std::vector<int>(na, -1));
  for (auto& s : tris) {
    int f = h.arrow_of[X.face(s, 2)], g = h.arrow_of[X.face(s, 0)], gf = h.arrow_of[X.face(s, 1)];
    if (C.comp[g][f] >= 0 && C.comp[g][f] != gf)
      throw std::invalid_argument("tau1: composite depends on the chosen filler");
    C.comp[g][f] = gf;
  }
  C.validate();
  return h;
}

bool is_equivalence_edge(const HomotopyCategory& h, const SimplexRef& e) {
  auto it = h.arrow_of.find(e);
  if (it == h.arrow_of.end()) throw std::invalid_argument("not an edge");
  return h.cat.inverse(it->second) >= 0;
}

bool is_equivalence_edge(const SSetPtr& x, const SimplexRef& e) { return is_equivalence_edge(tau1(x), e); }

Report is_cartesian_edge(const SimplicialMap& p, const SimplexRef& e, int d) {
  const auto& X = *p.src;
  if (e.dim() != 1 || !X.contains(e)) throw std::invalid_argument("is_cartesian_edge: not an edge of the source");
  SimplexRef y = X.vertex(e, 1);
  SimplexRef pe = p(e), py = p(y);
  auto src = std::make_shared<SimplexSliceLevels>(p.src, e);
  auto xy = std::make_shared<SimplexSliceLevels>(p.src, y);
  auto spe = std::make_shared<SimplexSliceLevels>(p.tgt, pe);
  auto pm = p;
  auto tgt = std::make_shared<PullbackLevels>(
      xy, spe, [pm](const Key& k, int n) { return encode(pm(decode(k, 0, n + 1))); },
      [pt = p.tgt](const Key& k, int n) { return encode(pt->face(decode(k, 0, n + 2), n + 1)); });
  Presentation ps = present(*src, d), pt = present(*tgt, d);
  SimplicialMap cmp = map_from_keys(ps, pt, [&](const Key& k, int n) {
    SimplexRef z = decode(k, 0, n + 2);
    Key a = encode(X.face(z, n + 1)), b = encode(pm(z));
    Key out{static_cast<int>(a.size())};
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
  });
  Report r = classify_fibration(cmp, FibrationClass::trivial, d);
  r.claim = "edge " + X.describe(e) + " is Cartesian";
  return r;
}

}  // namespace sk
