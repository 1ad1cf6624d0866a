#include "simpkit/search.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "simpkit/report.hpp"

namespace sk {

namespace {

void append(Key& k, const SimplexRef& s) {
  k.push_back(s.gen);
  k.insert(k.end(), s.eta.begin(), s.eta.end());
}

OrdMap section_of(const OrdMap& eta) {
  OrdMap s;
  for (size_t j = 0; j < eta.size(); ++j)
    if (j == 0 || eta[j] != eta[j - 1]) s.push_back(static_cast<int>(j));
  return s;
}

}  // namespace

Target::Target(SSetPtr x, std::optional<SimplicialMap> p) : x_(std::move(x)), p_(std::move(p)) {
  if (p_ && p_->src.get() != x_.get()) throw std::invalid_argument("target projection has the wrong source");
}

const Target::Level& Target::level(int n) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (static_cast<int>(levels_.size()) <= n) levels_.resize(n + 1);
  if (levels_[n]) return *levels_[n];
  auto L = std::make_unique<Level>();
  L->simplices = x_->level(n);
  int cnt = static_cast<int>(L->simplices.size());
  L->faces.resize(n > 0 ? n + 2 : 0);
  L->single.resize(n > 0 ? n + 1 : 0);
  for (int s = 0; s < cnt; ++s) {
    const SimplexRef& y = L->simplices[s];
    L->all.push_back(s);
    if (p_) L->by_proj[encode((*p_)(y))].push_back(s);
    if (n == 0) continue;
    std::vector<SimplexRef> f;
    for (int i = 0; i <= n; ++i) f.push_back(x_->face(y, i));
    for (int skip = 0; skip <= n + 1; ++skip) {
      Key k;
      for (int i = 0; i <= n; ++i)
        if (i != skip) append(k, f[i]);
      L->faces[skip][k].push_back(s);
    }
    for (int i = 0; i <= n; ++i) L->single[i][encode(f[i])].push_back(s);
  }
  levels_[n] = std::move(L);
  return *levels_[n];
}

namespace {

struct Engine {
  const MapQuery& q;
  const SimplicialSet& D;
  const SimplicialSet& X;
  struct Coface {
    int h, i;
    OrdMap eta, sec;
  };
  std::vector<std::vector<Coface>> cofaces;
  std::vector<SimplexRef> a;
  std::vector<Key> over_key;
  const MapVisitor& visit;
  long long found = 0;
  bool stop = false;
  const std::vector<int> empty;

  Engine(const MapQuery& q_, const MapVisitor& v)
      : q(q_), D(*q_.src), X(q_.tgt->set()), cofaces(D.size()), a(D.size()), visit(v) {
    for (int h = 0; h < D.size(); ++h) {
      const auto& H = D.gen(h);
      for (int i = 0; i < static_cast<int>(H.faces.size()); ++i)
        cofaces[H.faces[i].gen].push_back({h, i, H.faces[i].eta, section_of(H.faces[i].eta)});
    }
    if (q.over) {
      if (!q.tgt->has_projection()) throw std::invalid_argument("search over a base needs a projection");
      for (int g = 0; g < D.size(); ++g) over_key.push_back(encode(q.over->assign[g]));
    }
  }

  bool assigned(int g) const { return a[g].gen >= 0; }

  SimplexRef face_value(int g, int i) const {
    const SimplexRef& f = D.gen(g).faces[i];
    return X.apply(a[f.gen], f.eta);
  }

  // Checks y against every constraint with assigned neighbours.
  bool consistent(int g, const SimplexRef& y) const {
    const auto& G = D.gen(g);
    for (int i = 0; i < static_cast<int>(G.faces.size()); ++i)
      if (assigned(G.faces[i].gen) && X.face(y, i) != face_value(g, i)) return false;
    for (const auto& c : cofaces[g])
      if (assigned(c.h) && X.apply(y, c.eta) != X.face(a[c.h], c.i)) return false;
    if (q.over && encode(q.tgt->projection()(y)) != over_key[g]) return false;
    return true;
  }

  // Candidate list (indices into the level) or a forced value.
  const std::vector<int>& candidates(int g, std::optional<SimplexRef>& forced) const {
    forced.reset();
    for (const auto& c : cofaces[g])
      if (assigned(c.h)) {
        forced = X.apply(X.face(a[c.h], c.i), c.sec);
        return empty;
      }
    int n = D.gen(g).dim;
    const auto& L = q.tgt->level(n);
    std::vector<int> known;
    for (int i = 0; i < static_cast<int>(D.gen(g).faces.size()); ++i)
      if (assigned(D.gen(g).faces[i].gen)) known.push_back(i);
    const std::vector<int>* best = q.over ? nullptr : &L.all;
    if (q.over) {
      auto it = L.by_proj.find(over_key[g]);
      best = it == L.by_proj.end() ? &empty : &it->second;
    }
    auto consider = [&](const std::unordered_map<Key, std::vector<int>, VecHash>& m, const Key& k) {
      auto it = m.find(k);
      const std::vector<int>* r = it == m.end() ? &empty : &it->second;
      if (r->size() < best->size()) best = r;
    };
    if (n > 0 && static_cast<int>(known.size()) >= n) {
      int skip = static_cast<int>(known.size()) == n + 1 ? n + 1 : -1;
      if (skip < 0)
        for (int i = 0; i <= n; ++i)
          if (std::find(known.begin(), known.end(), i) == known.end()) skip = i;
      Key k;
      for (int i = 0; i <= n; ++i)
        if (i != skip) append(k, face_value(g, i));
      consider(L.faces[skip], k);
    } else {
      for (int i : known) consider(L.single[i], encode(face_value(g, i)));
    }
    return *best;
  }

  void run() {
    if (stop) return;
    poll_deadline();
    int pick = -1;
    size_t best = std::numeric_limits<size_t>::max();
    std::optional<SimplexRef> pick_forced;
    const std::vector<int>* pick_list = nullptr;
    for (int g = 0; g < D.size(); ++g) {
      if (assigned(g)) continue;
      std::optional<SimplexRef> forced;
      const auto& lst = candidates(g, forced);
      size_t sz = forced ? 1 : lst.size();
      if (sz < best) {
        best = sz;
        pick = g;
        pick_forced = forced;
        pick_list = &lst;
        if (sz <= 1) break;
      }
    }
    if (pick < 0) {
      ++found;
      if (!visit(a)) stop = true;
      return;
    }
    if (pick_forced) {
      if (!q.tgt->set().contains(*pick_forced) || !consistent(pick, *pick_forced)) return;
      a[pick] = *pick_forced;
      run();
      a[pick] = SimplexRef{};
      return;
    }
    const auto& L = q.tgt->level(D.gen(pick).dim);
    std::vector<int> list = *pick_list;
    for (int s : list) {
      const SimplexRef& y = L.simplices[s];
      if (!consistent(pick, y)) continue;
      a[pick] = y;
      run();
      a[pick] = SimplexRef{};
      if (stop) return;
    }
  }
};

}  // namespace

long long search_maps(const MapQuery& q, const MapVisitor& visit) {
  Engine e(q, visit);
  const auto& D = *q.src;
  if (!q.fixed.empty()) {
    if (static_cast<int>(q.fixed.size()) != D.size()) throw std::invalid_argument("fixed assignment size mismatch");
    for (int g = 0; g < D.size(); ++g) {
      if (q.fixed[g].gen < 0) continue;
      if (q.fixed[g].dim() != D.gen(g).dim || !q.tgt->set().contains(q.fixed[g]))
        throw std::invalid_argument("fixed value for '" + D.gen(g).name + "' is not a simplex of matching dimension");
      if (!e.consistent(g, q.fixed[g])) return 0;
      e.a[g] = q.fixed[g];
    }
  }
  e.run();
  return e.found;
}

std::optional<SimplicialMap> first_map(const MapQuery& q) {
  std::optional<SimplicialMap> out;
  search_maps(q, [&](const std::vector<SimplexRef>& a) {
    out = SimplicialMap{q.src, q.tgt->ptr(), a};
    return false;
  });
  return out;
}

std::vector<SimplicialMap> all_maps(const MapQuery& q) {
  std::vector<SimplicialMap> out;
  search_maps(q, [&](const std::vector<SimplexRef>& a) {
    out.push_back({q.src, q.tgt->ptr(), a});
    return true;
  });
  return out;
}

long long count_maps(const MapQuery& q) {
  return search_maps(q, [](const std::vector<SimplexRef>&) { return true; });
}

std::optional<long long> naive_count_maps(const MapQuery& q, long long max_candidates,
                                          std::vector<SimplexRef>* first) {
  const auto& D = *q.src;
  const auto& X = q.tgt->set();
  std::vector<int> free;
  std::vector<std::vector<SimplexRef>> cand;
  double product = 1;
  for (int g = 0; g < D.size(); ++g) {
    if (!q.fixed.empty() && q.fixed[g].gen >= 0) continue;
    free.push_back(g);
    cand.push_back(X.level(D.gen(g).dim));
    product *= static_cast<double>(cand.back().size());
    if (product > static_cast<double>(max_candidates)) return std::nullopt;
  }
  SimplicialMap f{q.src, q.tgt->ptr(), std::vector<SimplexRef>(D.size())};
  for (int g = 0; g < D.size(); ++g)
    if (!q.fixed.empty() && q.fixed[g].gen >= 0) f.assign[g] = q.fixed[g];
  long long count = 0;
  std::vector<size_t> idx(free.size(), 0);
  for (auto& c : cand)
    if (c.empty()) return 0;
  while (true) {
    for (size_t t = 0; t < free.size(); ++t) f.assign[free[t]] = cand[t][idx[t]];
    bool ok = f.valid();
    if (ok && q.over)
      for (int g = 0; g < D.size() && ok; ++g) ok = q.tgt->projection()(f.assign[g]) == q.over->assign[g];
    if (ok) {
      if (count == 0 && first) *first = f.assign;
      ++count;
    }
    size_t t = 0;
    while (t < free.size() && ++idx[t] == cand[t].size()) idx[t++] = 0;
    if (t == free.size()) break;
  }
  return count;
}

}  // namespace sk
