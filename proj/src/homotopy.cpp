#include "simpkit/homotopy.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "simpkit/lifting.hpp"
#include "simpkit/slices.hpp"

namespace sk {

int FiniteGroup::inverse(int a) const {
  for (int b = 0; b < order(); ++b)
    if (mult[a][b] == identity) return b;
  return -1;
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != identity; x = mult[x][a]) {
    if (++k > order()) return -1;
  }
  return k;
}

bool FiniteGroup::is_group() const {
  int n = order();
  if (n == 0 || identity < 0 || identity >= n) return false;
  for (const auto& row : mult) {
    if (static_cast<int>(row.size()) != n) return false;
    for (int v : row)
      if (v < 0 || v >= n) return false;
  }
  for (int a = 0; a < n; ++a) {
    if (mult[identity][a] != a || mult[a][identity] != a || inverse(a) < 0) return false;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mult[mult[a][b]][c] != mult[a][mult[b][c]]) return false;
  }
  return true;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  FiniteGroup g;
  g.mult.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    g.names.push_back(std::to_string(a));
    for (int b = 0; b < n; ++b) g.mult[a][b] = (a + b) % n;
  }
  return g;
}

FiniteGroup FiniteGroup::symmetric3() { return automorphisms(FiniteCategory::symmetric_group3(), 0); }

FiniteGroup FiniteGroup::automorphisms(const FiniteCategory& c, int x) {
  std::vector<int> el = c.hom(x, x);
  std::vector<int> index(c.num_arrows(), -1);
  for (int i = 0; i < static_cast<int>(el.size()); ++i) index[el[i]] = i;
  FiniteGroup g;
  int n = static_cast<int>(el.size());
  g.mult.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    g.names.push_back(c.arrows[el[a]].name);
    for (int b = 0; b < n; ++b) g.mult[a][b] = index[c.comp[el[a]][el[b]]];
  }
  g.identity = index[c.identity[x]];
  return g;
}

bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  int n = a.order();
  if (n != b.order()) return false;
  std::vector<int> oa(n), ob(n);
  for (int i = 0; i < n; ++i) {
    oa[i] = a.element_order(i);
    ob[i] = b.element_order(i);
  }
  std::vector<int> sa = oa, sb = ob;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;
  std::vector<int> f(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(int)> rec = [&](int i) {
    if (i == n) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (f[a.mult[x][y]] != b.mult[f[x]][f[y]]) return false;
      return true;
    }
    for (int j = 0; j < n; ++j) {
      if (used[j] || oa[i] != ob[j]) continue;
      if ((i == a.identity) != (j == b.identity)) continue;
      f[i] = j;
      used[j] = 1;
      bool ok = true;
      for (int x = 0; x <= i && ok; ++x)
        for (int y = 0; y <= i && ok; ++y) {
          int p = a.mult[x][y];
          if (f[p] >= 0 && f[p] != b.mult[f[x]][f[y]]) ok = false;
        }
      if (ok && rec(i + 1)) return true;
      f[i] = -1;
      used[j] = 0;
    }
    return false;
  };
  return rec(0);
}

Components pi0(const SimplicialSet& x) {
  const auto& verts = x.gens_of_dim(0);
  int nv = static_cast<int>(verts.size());
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  std::vector<int> pos(x.size(), -1);
  for (int i = 0; i < nv; ++i) pos[verts[i]] = i;
  if (x.dim() >= 1)
    for (int e : x.gens_of_dim(1)) {
      auto vs = x.vertices(x.id(e));
      int a = find(pos[vs[0]]), b = find(pos[vs[1]]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  Components c;
  std::vector<int> label(nv, -1);
  for (int i = 0; i < nv; ++i) {
    int r = find(i);
    if (label[r] < 0) label[r] = c.count++;
    c.of_vertex.push_back(label[r]);
  }
  return c;
}

FiniteGroup pi1(const SSetPtr& x, int vertex, int check_bound) {
  Report kan = is_kan(x, check_bound);
  if (!kan.holds()) throw std::invalid_argument("pi1: not a Kan complex up to dimension " + std::to_string(check_bound));
  HomotopyCategory h = tau1(x, check_bound);
  FiniteGroup g = FiniteGroup::automorphisms(h.cat, vertex);
  if (!g.is_group()) throw std::logic_error("pi1: endomorphisms do not form a group");
  return g;
}

}  // namespace sk
