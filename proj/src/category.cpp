#include "simpkit/category.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <tuple>
#include <stdexcept>

namespace sk {

std::vector<int> FiniteCategory::hom(int x, int y) const {
  std::vector<int> out;
  for (int f = 0; f < num_arrows(); ++f)
    if (arrows[f].src == x && arrows[f].tgt == y) out.push_back(f);
  return out;
}

void FiniteCategory::validate() const {
  int no = num_objects(), na = num_arrows();
  if (static_cast<int>(identity.size()) != no) throw std::invalid_argument("category: identity table size");
  if (static_cast<int>(comp.size()) != na) throw std::invalid_argument("category: composition table size");
  for (int f = 0; f < na; ++f) {
    if (arrows[f].src < 0 || arrows[f].src >= no || arrows[f].tgt < 0 || arrows[f].tgt >= no)
      throw std::invalid_argument("category: arrow '" + arrows[f].name + "' has bad endpoints");
    if (static_cast<int>(comp[f].size()) != na) throw std::invalid_argument("category: composition row size");
  }
  for (int x = 0; x < no; ++x) {
    int i = identity[x];
    if (i < 0 || i >= na || arrows[i].src != x || arrows[i].tgt != x)
      throw std::invalid_argument("category: bad identity for object '" + objects[x] + "'");
  }
  for (int g = 0; g < na; ++g)
    for (int f = 0; f < na; ++f) {
      int h = comp[g][f];
      bool composable = arrows[f].tgt == arrows[g].src;
      if (composable != (h >= 0))
        throw std::invalid_argument("category: composite " + arrows[g].name + " o " + arrows[f].name +
                                    (composable ? " missing" : " defined for non-composable pair"));
      if (h >= 0 && (arrows[h].src != arrows[f].src || arrows[h].tgt != arrows[g].tgt))
        throw std::invalid_argument("category: composite " + arrows[g].name + " o " + arrows[f].name +
                                    " has wrong endpoints");
    }
  for (int f = 0; f < na; ++f) {
    if (comp[identity[arrows[f].tgt]][f] != f || comp[f][identity[arrows[f].src]] != f)
      throw std::invalid_argument("category: identities not unital at '" + arrows[f].name + "'");
  }
  for (int h = 0; h < na; ++h)
    for (int g = 0; g < na; ++g) {
      if (comp[h][g] < 0) continue;
      for (int f = 0; f < na; ++f) {
        if (comp[g][f] < 0) continue;
        if (comp[comp[h][g]][f] != comp[h][comp[g][f]])
          throw std::invalid_argument("category: composition not associative at (" + arrows[h].name + ", " +
                                      arrows[g].name + ", " + arrows[f].name + ")");
      }
    }
}

bool FiniteCategory::has_unbounded_chains() const {
  int no = num_objects();
  std::vector<int> state(no, 0);
  std::function<bool(int)> dfs = [&](int x) {
    state[x] = 1;
    for (int f = 0; f < num_arrows(); ++f) {
      if (arrows[f].src != x || is_identity(f)) continue;
      int y = arrows[f].tgt;
      if (state[y] == 1) return true;
      if (state[y] == 0 && dfs(y)) return true;
    }
    state[x] = 2;
    return false;
  };
  for (int x = 0; x < no; ++x)
    if (state[x] == 0 && dfs(x)) return true;
  return false;
}

int FiniteCategory::longest_chain() const {
  int no = num_objects();
  std::vector<int> memo(no, -1);
  std::function<int(int)> go = [&](int x) {
    if (memo[x] >= 0) return memo[x];
    int best = 0;
    for (int f = 0; f < num_arrows(); ++f)
      if (arrows[f].src == x && !is_identity(f)) best = std::max(best, 1 + go(arrows[f].tgt));
    return memo[x] = best;
  };
  int best = 0;
  for (int x = 0; x < no; ++x) best = std::max(best, go(x));
  return best;
}

int FiniteCategory::inverse(int f) const {
  for (int g = 0; g < num_arrows(); ++g)
    if (comp[g][f] >= 0 && comp[f][g] >= 0 && comp[g][f] == identity[arrows[f].src] &&
        comp[f][g] == identity[arrows[f].tgt])
      return g;
  return -1;
}

bool FiniteCategory::is_groupoid() const {
  for (int f = 0; f < num_arrows(); ++f)
    if (inverse(f) < 0) return false;
  return true;
}

FiniteCategory FiniteCategory::poset(int n, const std::vector<std::pair<int, int>>& relations) {
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) le[i][i] = 1;
  for (auto [a, b] : relations) le[a][b] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && le[i][j] && le[j][i]) throw std::invalid_argument("poset: relations contain a cycle");
  FiniteCategory c;
  std::vector<std::vector<int>> id(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) c.objects.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le[i][j]) {
        id[i][j] = c.num_arrows();
        c.arrows.push_back({i, j, i == j ? "id" + std::to_string(i) : std::to_string(i) + "<" + std::to_string(j)});
      }
  for (int i = 0; i < n; ++i) c.identity.push_back(id[i][i]);
  int na = c.num_arrows();
  c.comp.assign(na, std::vector<int>(na, -1));
  for (int g = 0; g < na; ++g)
    for (int f = 0; f < na; ++f)
      if (c.arrows[f].tgt == c.arrows[g].src) c.comp[g][f] = id[c.arrows[f].src][c.arrows[g].tgt];
  return c;
}

FiniteCategory FiniteCategory::linear(int n) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < n; ++i) rel.push_back({i, i + 1});
  return poset(n + 1, rel);
}

FiniteCategory FiniteCategory::discrete(int n) { return poset(n, {}); }

FiniteCategory FiniteCategory::monoid(const std::vector<std::vector<int>>& mult,
                                      const std::vector<std::string>& names) {
  FiniteCategory c;
  c.objects = {"*"};
  int n = static_cast<int>(mult.size());
  for (int a = 0; a < n; ++a)
    c.arrows.push_back({0, 0, a < static_cast<int>(names.size()) ? names[a] : "g" + std::to_string(a)});
  c.identity = {0};
  c.comp = mult;
  return c;
}

FiniteCategory FiniteCategory::cyclic_group(int n) {
  std::vector<std::vector<int>> m(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m[a][b] = (a + b) % n;
  return monoid(m);
}

FiniteCategory FiniteCategory::symmetric_group3() {
  std::vector<std::vector<int>> perms;
  std::vector<int> p = {0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  int n = static_cast<int>(perms.size());
  std::vector<std::vector<int>> m(n, std::vector<int>(n));
  std::vector<std::string> names;
  for (auto& q : perms) names.push_back("p" + std::to_string(q[0]) + std::to_string(q[1]) + std::to_string(q[2]));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> r(3);
      for (int i = 0; i < 3; ++i) r[i] = perms[a][perms[b][i]];
      m[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), r) - perms.begin());
    }
  return monoid(m, names);
}

std::vector<Key> NerveLevels::level(int n) const {
  std::vector<Key> out;
  Key cur;
  std::function<void(int, int)> rec = [&](int obj, int len) {
    if (len == n) {
      out.push_back(cur);
      return;
    }
    for (int f = 0; f < c_.num_arrows(); ++f) {
      if (c_.arrows[f].src != obj) continue;
      cur.push_back(f);
      rec(c_.arrows[f].tgt, len + 1);
      cur.pop_back();
    }
  };
  for (int x = 0; x < c_.num_objects(); ++x) {
    cur = {x};
    rec(x, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Key NerveLevels::act(const Key& x, int n, const OrdMap& a) const {
  auto obj = [&](int j) { return j == 0 ? x[0] : c_.arrows[x[j]].tgt; };
  Key y;
  if (a.empty()) return y;
  y.push_back(obj(a[0]));
  for (size_t t = 1; t < a.size(); ++t) {
    int h = c_.identity[obj(a[t - 1])];
    for (int j = a[t - 1] + 1; j <= a[t]; ++j) h = c_.comp[x[j]][h];
    y.push_back(h);
  }
  (void)n;
  return y;
}

std::string NerveLevels::name(const Key& x, int n) const {
  if (n == 0) return c_.objects[x[0]];
  std::string s;
  for (int j = 1; j <= n; ++j) s += (j > 1 ? "|" : "") + c_.arrows[x[j]].name;
  return s;
}

}  // namespace sk

namespace sk {

Functor Functor::identity(const FiniteCategory& c) {
  Functor f;
  for (int x = 0; x < c.num_objects(); ++x) f.obj.push_back(x);
  for (int a = 0; a < c.num_arrows(); ++a) f.arr.push_back(a);
  return f;
}

void validate_functor(const FiniteCategory& src, const FiniteCategory& tgt, const Functor& f) {
  if (static_cast<int>(f.obj.size()) != src.num_objects() || static_cast<int>(f.arr.size()) != src.num_arrows())
    throw std::invalid_argument("functor: table sizes do not match the source");
  for (int x : f.obj)
    if (x < 0 || x >= tgt.num_objects()) throw std::invalid_argument("functor: object out of range");
  for (int a = 0; a < src.num_arrows(); ++a) {
    int b = f.arr[a];
    if (b < 0 || b >= tgt.num_arrows()) throw std::invalid_argument("functor: arrow out of range");
    if (tgt.arrows[b].src != f.obj[src.arrows[a].src] || tgt.arrows[b].tgt != f.obj[src.arrows[a].tgt])
      throw std::invalid_argument("functor: arrow '" + src.arrows[a].name + "' sent to an arrow with wrong endpoints");
  }
  for (int x = 0; x < src.num_objects(); ++x)
    if (f.arr[src.identity[x]] != tgt.identity[f.obj[x]])
      throw std::invalid_argument("functor: identity of '" + src.objects[x] + "' not preserved");
  for (int g = 0; g < src.num_arrows(); ++g)
    for (int a = 0; a < src.num_arrows(); ++a) {
      int h = src.comp[g][a];
      if (h >= 0 && f.arr[h] != tgt.comp[f.arr[g]][f.arr[a]])
        throw std::invalid_argument("functor: composite " + src.arrows[g].name + " o " + src.arrows[a].name +
                                    " not preserved");
    }
}

Functor compose(const Functor& g, const Functor& f) {
  Functor h;
  for (int x : f.obj) h.obj.push_back(g.obj[x]);
  for (int a : f.arr) h.arr.push_back(g.arr[a]);
  return h;
}

bool operator==(const Functor& a, const Functor& b) { return a.obj == b.obj && a.arr == b.arr; }

Grothendieck grothendieck(const FiniteCategory& base, const std::vector<FiniteCategory>& fibre,
                          const std::vector<Functor>& pull) {
  base.validate();
  if (static_cast<int>(fibre.size()) != base.num_objects() || static_cast<int>(pull.size()) != base.num_arrows())
    throw std::invalid_argument("grothendieck: need one fibre per object and one pullback per arrow");
  for (int u = 0; u < base.num_arrows(); ++u) {
    fibre[base.arrows[u].tgt].validate();
    validate_functor(fibre[base.arrows[u].tgt], fibre[base.arrows[u].src], pull[u]);
  }
  for (int k = 0; k < base.num_objects(); ++k)
    if (!(pull[base.identity[k]] == Functor::identity(fibre[k])))
      throw std::invalid_argument("grothendieck: pullback along the identity of '" + base.objects[k] +
                                  "' is not the identity");
  for (int v = 0; v < base.num_arrows(); ++v)
    for (int u = 0; u < base.num_arrows(); ++u) {
      int w = base.comp[v][u];
      if (w >= 0 && !(pull[w] == compose(pull[u], pull[v])))
        throw std::invalid_argument("grothendieck: pullbacks not strictly functorial at " + base.arrows[v].name +
                                    " o " + base.arrows[u].name);
    }

  Grothendieck g;
  std::vector<std::vector<int>> obj_index(base.num_objects());
  for (int k = 0; k < base.num_objects(); ++k)
    for (int a = 0; a < fibre[k].num_objects(); ++a) {
      obj_index[k].push_back(g.total.num_objects());
      g.total.objects.push_back(base.objects[k] + "." + fibre[k].objects[a]);
      g.object_of.push_back({k, a});
      g.projection.obj.push_back(k);
    }
  std::map<std::tuple<int, int, int>, int> arr_index;  // (u, phi, target object)
  for (int u = 0; u < base.num_arrows(); ++u) {
    int k = base.arrows[u].src, l = base.arrows[u].tgt;
    const FiniteCategory& fk = fibre[k];
    for (int b = 0; b < fibre[l].num_objects(); ++b) {
      int pb = pull[u].obj[b];
      for (int phi = 0; phi < fk.num_arrows(); ++phi) {
        if (fk.arrows[phi].tgt != pb) continue;
        arr_index[{u, phi, b}] = g.total.num_arrows();
        std::string nm = base.is_identity(u) ? fk.arrows[phi].name : base.arrows[u].name + "/" + fk.arrows[phi].name;
        g.total.arrows.push_back({obj_index[k][fk.arrows[phi].src], obj_index[l][b], nm});
        g.arrow_of.push_back({u, phi});
        g.projection.arr.push_back(u);
      }
    }
  }
  for (int k = 0; k < base.num_objects(); ++k)
    for (int a = 0; a < fibre[k].num_objects(); ++a)
      g.total.identity.push_back(arr_index.at({base.identity[k], fibre[k].identity[a], a}));
  int na = g.total.num_arrows();
  g.total.comp.assign(na, std::vector<int>(na, -1));
  for (int s = 0; s < na; ++s)
    for (int r = 0; r < na; ++r) {
      if (g.total.arrows[r].tgt != g.total.arrows[s].src) continue;
      auto [u, phi] = g.arrow_of[r];
      auto [v, psi] = g.arrow_of[s];
      // (v, psi) o (u, phi) = (v u, pull[u](psi) o phi)
      int k = base.arrows[u].src;
      int comp = fibre[k].comp[pull[u].arr[psi]][phi];
      int c = g.object_of[g.total.arrows[s].tgt].second;
      g.total.comp[s][r] = arr_index.at({base.comp[v][u], comp, c});
    }
  g.total.validate();
  return g;
}

}  // namespace sk
