#include "simpkit/constructions.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace sk {

int popcount(uint64_t m) { return __builtin_popcountll(m); }

std::vector<int> mask_vertices(uint64_t m) {
  std::vector<int> v;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) v.push_back(i);
  return v;
}

uint64_t mask_face(uint64_t m, int i) {
  auto v = mask_vertices(m);
  return m & ~(uint64_t{1} << v[i]);
}

OrderedComplex OrderedComplex::total(int n) {
  OrderedComplex c;
  c.nverts = n + 1;
  c.leq.assign(n + 1, std::vector<char>(n + 1, 0));
  for (int a = 0; a <= n; ++a) {
    c.labels.push_back(std::to_string(a));
    for (int b = a; b <= n; ++b) c.leq[a][b] = 1;
  }
  return c;
}

OrderedComplex OrderedComplex::grid(int m, int n) {
  OrderedComplex c;
  c.nverts = (m + 1) * (n + 1);
  c.leq.assign(c.nverts, std::vector<char>(c.nverts, 0));
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= n; ++j) {
      c.labels.push_back(std::to_string(i) + std::to_string(j));
      for (int i2 = i; i2 <= m; ++i2)
        for (int j2 = j; j2 <= n; ++j2) c.leq[i * (n + 1) + j][i2 * (n + 1) + j2] = 1;
    }
  return c;
}

bool OrderedComplex::is_chain(uint64_t mask) const {
  auto v = mask_vertices(mask);
  for (size_t t = 1; t < v.size(); ++t)
    if (!leq[v[t - 1]][v[t]]) return false;
  return !v.empty();
}

std::vector<uint64_t> OrderedComplex::all_chains() const {
  std::vector<uint64_t> out;
  // Grow chains vertex by vertex; ids form a linear extension.
  std::vector<uint64_t> frontier;
  for (int v = 0; v < nverts; ++v) frontier.push_back(uint64_t{1} << v);
  while (!frontier.empty()) {
    std::vector<uint64_t> next;
    for (uint64_t m : frontier) {
      out.push_back(m);
      int top = 63 - __builtin_clzll(m);
      for (int w = top + 1; w < nverts; ++w)
        if (leq[top][w]) next.push_back(m | uint64_t{1} << w);
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](uint64_t a, uint64_t b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  return out;
}

void OrderedComplex::add_closed(uint64_t mask) {
  if (!mask || chains.count(mask)) return;
  chains.insert(mask);
  for (uint64_t rest = mask; rest; rest &= rest - 1) add_closed(mask & ~(rest & -rest));
}

std::string OrderedComplex::chain_name(uint64_t mask) const {
  bool wide = false;
  for (auto& l : labels) wide |= l.size() > 1;
  std::string s;
  for (int v : mask_vertices(mask)) {
    if (wide && !s.empty()) s += ',';
    s += labels[v];
  }
  return s;
}

SSetPtr OrderedComplex::to_sset() const {
  std::vector<uint64_t> order(chains.begin(), chains.end());
  std::sort(order.begin(), order.end(), [](uint64_t a, uint64_t b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  auto k = std::make_shared<SimplicialSet>();
  std::map<uint64_t, int> id;
  for (uint64_t m : order) {
    if (!is_chain(m)) throw std::invalid_argument("ordered complex: '" + chain_name(m) + "' is not a chain");
    int d = popcount(m) - 1;
    std::vector<SimplexRef> faces;
    for (int i = 0; i <= d && d > 0; ++i) {
      auto it = id.find(mask_face(m, i));
      if (it == id.end()) throw std::invalid_argument("ordered complex: not closed under faces at '" + chain_name(m) + "'");
      faces.push_back({it->second, identity_map(d - 1)});
    }
    id[m] = k->add(chain_name(m), d, std::move(faces));
  }
  k->finalize();
  return k;
}

SSetPtr point() { return standard_simplex(0); }

SSetPtr standard_simplex(int n) {
  // Immutable, so shared between callers.
  static std::mutex mu;
  static std::map<int, SSetPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) {
    auto c = OrderedComplex::total(n);
    c.add_closed((uint64_t{1} << (n + 1)) - 1);
    slot = c.to_sset();
  }
  return slot;
}

SimplexRef delta_simplex(int n, const OrdMap& verts) {
  auto binom = [](long long a, long long b) {
    if (b < 0 || b > a) return 0LL;
    long long c = 1;
    for (long long t = 1; t <= b; ++t) c = c * (a - b + t) / t;
    return c;
  };
  OrdMap e, m;
  epi_mono(verts, e, m);
  long long id = 0;
  int pc = static_cast<int>(m.size());
  for (int p = 1; p < pc; ++p) id += binom(n + 1, p);
  for (int t = 0; t < pc; ++t) id += binom(m[t], t + 1);
  return {static_cast<int>(id), e};
}

SSetPtr facet_union(int n, const std::vector<int>& facets) {
  auto c = OrderedComplex::total(n);
  uint64_t full = (uint64_t{1} << (n + 1)) - 1;
  for (int i : facets) {
    if (i < 0 || i > n) throw std::invalid_argument("facet index out of range");
    c.add_closed(full & ~(uint64_t{1} << i));
  }
  return c.to_sset();
}

SSetPtr boundary(int n) {
  if (n < 0) throw std::invalid_argument("boundary: negative dimension");
  std::vector<int> all;
  for (int i = 0; i <= n && n > 0; ++i) all.push_back(i);
  return facet_union(n, all);
}

SSetPtr horn(int n, int k) {
  if (n < 1 || k < 0 || k > n)
    throw std::invalid_argument("horn: need n >= 1 and 0 <= k <= n, got n=" + std::to_string(n) + " k=" +
                                std::to_string(k));
  std::vector<int> f;
  for (int i = 0; i <= n; ++i)
    if (i != k) f.push_back(i);
  return facet_union(n, f);
}

SSetPtr nerve_of_category(const FiniteCategory& c) {
  c.validate();
  if (c.has_unbounded_chains())
    throw std::invalid_argument(
        "nerve_of_category: identity-free composable chains are unbounded (a cycle of non-identity arrows); use "
        "truncated_nerve");
  return present(NerveLevels(c), c.longest_chain()).set;
}

Presentation truncated_nerve(const FiniteCategory& c, int d) {
  c.validate();
  return present(NerveLevels(c), d);
}

Key ProductLevels::make(const SimplexRef& a, const SimplexRef& b) {
  Key k = encode(a);
  Key kb = encode(b);
  k.insert(k.end(), kb.begin(), kb.end());
  return k;
}

std::vector<Key> ProductLevels::level(int n) const {
  std::vector<Key> out;
  auto lk = k_->level(n);
  auto ll = l_->level(n);
  for (auto& a : lk)
    for (auto& b : ll) out.push_back(make(a, b));
  std::sort(out.begin(), out.end());
  return out;
}

Key ProductLevels::act(const Key& x, int n, const OrdMap& a) const {
  return make(k_->apply(first(x, n), a), l_->apply(second(x, n), a));
}

std::string ProductLevels::name(const Key& x, int n) const {
  return "(" + k_->describe(first(x, n)) + "," + l_->describe(second(x, n)) + ")";
}

Product product(const SSetPtr& k, const SSetPtr& l, int bound) {
  int d = bound >= 0 ? bound : std::max(0, k->dim() + l->dim());
  Product p{present(ProductLevels(k, l), d), {}, {}};
  p.pr1 = {p.pres.set, k, {}};
  p.pr2 = {p.pres.set, l, {}};
  for (int g = 0; g < p.pres.set->size(); ++g) {
    int n = p.pres.set->gen(g).dim;
    p.pr1.assign.push_back(ProductLevels::first(p.pres.gen_key[g], n));
    p.pr2.assign.push_back(ProductLevels::second(p.pres.gen_key[g], n));
  }
  return p;
}

std::vector<Key> JoinLevels::level(int n) const {
  std::vector<Key> out;
  for (int i = -1; i <= n; ++i) {
    std::vector<SimplexRef> xs = i >= 0 ? k_->level(i) : std::vector<SimplexRef>{SimplexRef{}};
    std::vector<SimplexRef> ys = i < n ? l_->level(n - 1 - i) : std::vector<SimplexRef>{SimplexRef{}};
    for (auto& x : xs)
      for (auto& y : ys) {
        Key key{i};
        if (i >= 0) {
          auto e = encode(x);
          key.insert(key.end(), e.begin(), e.end());
        }
        if (i < n) {
          auto e = encode(y);
          key.insert(key.end(), e.begin(), e.end());
        }
        out.push_back(std::move(key));
      }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Key JoinLevels::act(const Key& x, int n, const OrdMap& a) const {
  int i = x[0];
  int m = static_cast<int>(a.size()) - 1;
  int i2 = -1;
  while (i2 + 1 <= m && a[i2 + 1] <= i) ++i2;
  Key key{i2};
  if (i2 >= 0) {
    OrdMap ak(a.begin(), a.begin() + i2 + 1);
    auto e = encode(k_->apply(decode(x, 1, i), ak));
    key.insert(key.end(), e.begin(), e.end());
  }
  if (i2 < m) {
    OrdMap al;
    for (int j = i2 + 1; j <= m; ++j) al.push_back(a[j] - (i + 1));
    size_t pos = i >= 0 ? static_cast<size_t>(i + 3) : 1;
    auto e = encode(l_->apply(decode(x, pos, n - 1 - i), al));
    key.insert(key.end(), e.begin(), e.end());
  }
  return key;
}

std::string JoinLevels::name(const Key& x, int n) const {
  int i = x[0];
  std::string s;
  if (i >= 0) s += k_->describe(decode(x, 1, i));
  s += "*";
  if (i < n) s += l_->describe(decode(x, i >= 0 ? i + 3 : 1, n - 1 - i));
  return s;
}

Presentation join(const SSetPtr& k, const SSetPtr& l) {
  return present(JoinLevels(k, l), std::max(0, k->dim() + l->dim() + 1));
}

SimplexRef op_simplex(const SimplicialSet& k, const SimplexRef& x) {
  return {x.gen, opposite_map(x.eta, k.gen(x.gen).dim)};
}

SSetPtr opposite(const SSetPtr& k) {
  auto o = std::make_shared<SimplicialSet>();
  for (int g = 0; g < k->size(); ++g) {
    const auto& G = k->gen(g);
    std::vector<SimplexRef> faces;
    for (int i = 0; i <= G.dim && G.dim > 0; ++i) faces.push_back(op_simplex(*k, G.faces[G.dim - i]));
    o->add(G.name, G.dim, std::move(faces));
  }
  o->finalize();
  return o;
}

Pushout pushout(const SimplicialMap& f, const SimplicialMap& g) {
  if (!f.injective()) throw std::invalid_argument("pushout: first map is not injective");
  const auto& A = *f.src;
  const auto& B = *f.tgt;
  const auto& X = *g.tgt;
  std::vector<int> preimage(B.size(), -1);
  for (int a = 0; a < A.size(); ++a) preimage[f.assign[a].gen] = a;
  struct Item {
    int dim, side, id;
  };
  std::vector<Item> items;
  for (int x = 0; x < X.size(); ++x) items.push_back({X.gen(x).dim, 0, x});
  for (int b = 0; b < B.size(); ++b)
    if (preimage[b] < 0) items.push_back({B.gen(b).dim, 1, b});
  std::stable_sort(items.begin(), items.end(), [](const Item& p, const Item& q) { return p.dim < q.dim; });
  std::vector<int> xid(X.size(), -1), bid(B.size(), -1);
  auto P = std::make_shared<SimplicialSet>();
  auto from_x = [&](const SimplexRef& s) { return SimplexRef{xid[s.gen], s.eta}; };
  auto from_b = [&](const SimplexRef& s) -> SimplexRef {
    if (preimage[s.gen] >= 0) return from_x(X.apply(g.assign[preimage[s.gen]], s.eta));
    return {bid[s.gen], s.eta};
  };
  for (auto& it : items) {
    std::vector<SimplexRef> faces;
    if (it.side == 0) {
      for (auto& fc : X.gen(it.id).faces) faces.push_back(from_x(fc));
      xid[it.id] = P->add(X.gen(it.id).name, it.dim, std::move(faces));
    } else {
      for (auto& fc : B.gen(it.id).faces) faces.push_back(from_b(fc));
      std::string nm = B.gen(it.id).name;
      while (P->find(nm) >= 0 || X.find(nm) >= 0) nm += "'";
      bid[it.id] = P->add(nm, it.dim, std::move(faces));
    }
  }
  P->finalize();
  Pushout out;
  out.set = P;
  out.from_x = {g.tgt, P, {}};
  for (int x = 0; x < X.size(); ++x) out.from_x.assign.push_back(P->id(xid[x]));
  out.from_b = {f.tgt, P, {}};
  for (int b = 0; b < B.size(); ++b) out.from_b.assign.push_back(from_b(B.id(b)));
  return out;
}

SSetPtr disjoint_union(const std::vector<SSetPtr>& parts) {
  struct Item {
    int dim, part, id;
  };
  std::vector<Item> items;
  for (int p = 0; p < static_cast<int>(parts.size()); ++p)
    for (int g = 0; g < parts[p]->size(); ++g) items.push_back({parts[p]->gen(g).dim, p, g});
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.dim < b.dim; });
  std::vector<std::vector<int>> id(parts.size());
  for (size_t p = 0; p < parts.size(); ++p) id[p].assign(parts[p]->size(), -1);
  auto u = std::make_shared<SimplicialSet>();
  for (auto& it : items) {
    std::vector<SimplexRef> faces;
    for (auto& fc : parts[it.part]->gen(it.id).faces) faces.push_back({id[it.part][fc.gen], fc.eta});
    id[it.part][it.id] =
        u->add(std::to_string(it.part) + ":" + parts[it.part]->gen(it.id).name, it.dim, std::move(faces));
  }
  u->finalize();
  return u;
}

}  // namespace sk
