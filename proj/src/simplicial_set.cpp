#include "simpkit/simplicial_set.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sk {

int SimplicialSet::add(std::string name, int dim, std::vector<SimplexRef> faces) {
  if (final_) throw std::logic_error("simplicial set already finalized");
  if (dim < max_dim_)
    throw std::invalid_argument("generator '" + name + "' added out of dimension order");
  if (by_name_.count(name))
    throw std::invalid_argument("duplicate generator name '" + name + "'");
  int id = size();
  by_name_[name] = id;
  gens_.push_back({std::move(name), dim, std::move(faces)});
  if (static_cast<int>(by_dim_.size()) <= dim) by_dim_.resize(dim + 1);
  by_dim_[dim].push_back(id);
  max_dim_ = std::max(max_dim_, dim);
  return id;
}

const std::vector<int>& SimplicialSet::gens_of_dim(int d) const {
  static const std::vector<int> empty;
  if (d < 0 || d >= static_cast<int>(by_dim_.size())) return empty;
  return by_dim_[d];
}

int SimplicialSet::find(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? -1 : it->second;
}

SimplexRef SimplicialSet::mono_face(int g, uint64_t mask) const { return table_[g][mask]; }

void SimplicialSet::finalize() {
  if (final_) return;
  table_.resize(gens_.size());
  for (int g = 0; g < size(); ++g) {
    const Generator& G = gens_[g];
    auto fail = [&](const std::string& what) {
      throw std::invalid_argument("generator '" + G.name + "': " + what);
    };
    if (G.dim > 60) fail("dimension too large");
    if (G.dim == 0 && !G.faces.empty()) fail("a vertex has no faces");
    if (G.dim > 0 && static_cast<int>(G.faces.size()) != G.dim + 1)
      fail("expected " + std::to_string(G.dim + 1) + " faces");
    for (int i = 0; i < static_cast<int>(G.faces.size()); ++i) {
      const SimplexRef& f = G.faces[i];
      if (f.gen < 0 || f.gen >= g) fail("face " + std::to_string(i) + " references an unknown or later generator");
      if (f.dim() != G.dim - 1) fail("face " + std::to_string(i) + " has the wrong dimension");
      if (!is_surjective(f.eta, gens_[f.gen].dim) || !is_monotone(f.eta, gens_[f.gen].dim))
        fail("face " + std::to_string(i) + " has an invalid degeneracy");
    }
    for (int j = 0; j <= G.dim && G.dim >= 2; ++j)
      for (int i = 0; i < j; ++i) {
        if (face(G.faces[j], i) != face(G.faces[i], j - 1))
          fail("d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" +
               std::to_string(j - 1) + " d_" + std::to_string(i));
      }
    uint64_t full = (uint64_t{1} << (G.dim + 1)) - 1;
    auto& tab = table_[g];
    tab.assign(full + 1, SimplexRef{});
    for (uint64_t mask = 1; mask <= full; ++mask) {
      if (mask == full) {
        tab[mask] = {g, identity_map(G.dim)};
        continue;
      }
      int j = 0;
      while (mask >> j & 1) ++j;
      uint64_t low = mask & ((uint64_t{1} << j) - 1);
      uint64_t high = (mask >> (j + 1)) << j;
      tab[mask] = apply(G.faces[j], mono_from_mask(low | high));
    }
  }
  final_ = true;
}

SimplexRef SimplicialSet::apply(const SimplexRef& x, const OrdMap& a) const {
  OrdMap beta = compose(x.eta, a);
  OrdMap e, m;
  epi_mono(beta, e, m);
  const SimplexRef& r = table_[x.gen][image_mask(m)];
  return {r.gen, compose(r.eta, e)};
}

SimplexRef SimplicialSet::face(const SimplexRef& x, int i) const { return apply(x, coface(x.dim(), i)); }

SimplexRef SimplicialSet::degen(const SimplexRef& x, int i) const {
  return apply(x, codegeneracy(x.dim(), i));
}

SimplexRef SimplicialSet::vertex(const SimplexRef& x, int j) const { return apply(x, OrdMap{j}); }

std::vector<int> SimplicialSet::vertices(const SimplexRef& x) const {
  std::vector<int> v;
  for (int j = 0; j <= x.dim(); ++j) v.push_back(vertex(x, j).gen);
  return v;
}

std::vector<SimplexRef> SimplicialSet::level(int n) const {
  std::vector<SimplexRef> out;
  if (n < 0) return out;
  std::vector<std::vector<OrdMap>> surj(std::min(n, max_dim_) + 1);
  for (int k = 0; k < static_cast<int>(surj.size()); ++k) surj[k] = surjections(n, k);
  for (int g = 0; g < size(); ++g) {
    int k = gens_[g].dim;
    if (k > n) continue;
    for (auto& eta : surj[k]) out.push_back({g, eta});
  }
  return out;
}

long long SimplicialSet::level_size(int n) const {
  // C(n, k) surjections [n] -> [k].
  long long total = 0;
  for (int g = 0; g < size(); ++g) {
    int k = gens_[g].dim;
    if (k > n) continue;
    long long c = 1;
    for (int t = 1; t <= k; ++t) c = c * (n - k + t) / t;
    total += c;
  }
  return total;
}

bool SimplicialSet::contains(const SimplexRef& x) const {
  if (x.gen < 0 || x.gen >= size()) return false;
  int k = gens_[x.gen].dim;
  return is_monotone(x.eta, k) && is_surjective(x.eta, k);
}

std::string SimplicialSet::describe(const SimplexRef& x) const {
  std::ostringstream os;
  auto w = x.word();
  if (!w.indices.empty()) {
    os << 's';
    for (size_t j = 0; j < w.indices.size(); ++j) os << (j ? "," : "") << w.indices[j];
    os << ' ';
  }
  os << gens_[x.gen].name;
  return os.str();
}

SimplexRef SimplicialMap::operator()(const SimplexRef& x) const { return tgt->apply(assign[x.gen], x.eta); }

bool SimplicialMap::valid(std::string* why) const {
  auto bad = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (static_cast<int>(assign.size()) != src->size()) return bad("assignment size mismatch");
  for (int g = 0; g < src->size(); ++g) {
    const auto& G = src->gen(g);
    if (!tgt->contains(assign[g]) || assign[g].dim() != G.dim)
      return bad("generator '" + G.name + "' mapped to an invalid simplex");
    for (int i = 0; i < static_cast<int>(G.faces.size()); ++i)
      if ((*this)(G.faces[i]) != tgt->face(assign[g], i))
        return bad("generator '" + G.name + "' does not commute with d_" + std::to_string(i));
  }
  return true;
}

bool SimplicialMap::injective() const {
  std::vector<char> seen(tgt->size(), 0);
  for (auto& s : assign) {
    if (!s.nondegenerate() || seen[s.gen]) return false;
    seen[s.gen] = 1;
  }
  return true;
}

SimplicialMap SimplicialMap::identity(const SSetPtr& k) {
  SimplicialMap f{k, k, {}};
  for (int g = 0; g < k->size(); ++g) f.assign.push_back(k->id(g));
  return f;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  SimplicialMap h{f.src, g.tgt, {}};
  for (auto& s : f.assign) h.assign.push_back(g(s));
  return h;
}

SimplicialMap inclusion_by_names(const SSetPtr& sub, const SSetPtr& sup) {
  SimplicialMap f{sub, sup, {}};
  for (int g = 0; g < sub->size(); ++g) {
    int h = sup->find(sub->gen(g).name);
    if (h < 0) throw std::invalid_argument("generator '" + sub->gen(g).name + "' missing in target");
    f.assign.push_back(sup->id(h));
  }
  std::string why;
  if (!f.valid(&why)) throw std::invalid_argument("inclusion by names: " + why);
  return f;
}

bool MarkedSimplicialSet::is_marked(const SimplexRef& e) const {
  if (!e.nondegenerate()) return true;
  return std::find(marked.begin(), marked.end(), e) != marked.end();
}

long long check_identities(const SimplicialSet& k, int max_level) {
  long long bad = 0;
  for (int n = 0; n <= max_level; ++n) {
    for (const auto& x : k.level(n)) {
      for (int j = 0; j <= n && n >= 1; ++j)
        for (int i = 0; i < j; ++i)
          if (k.face(k.face(x, j), i) != k.face(k.face(x, i), j - 1)) ++bad;
      for (int j = 0; j <= n; ++j) {
        SimplexRef sx = k.degen(x, j);
        for (int i = 0; i <= n + 1; ++i) {
          SimplexRef lhs = k.face(sx, i);
          SimplexRef rhs;
          if (i < j)
            rhs = k.degen(k.face(x, i), j - 1);
          else if (i == j || i == j + 1)
            rhs = x;
          else
            rhs = k.degen(k.face(x, i - 1), j);
          if (n == 0 && i != j && i != j + 1) continue;
          if (lhs != rhs) ++bad;
        }
        for (int i = 0; i <= j; ++i)
          if (k.degen(k.degen(x, j), i) != k.degen(k.degen(x, i), j + 1)) ++bad;
      }
    }
  }
  return bad;
}

namespace {

struct IsoSearch {
  const SimplicialSet& a;
  const SimplicialSet& b;
  std::vector<int> phi;
  std::vector<char> used;

  bool run(int g) {
    if (g == a.size()) return true;
    const auto& G = a.gen(g);
    for (int h : b.gens_of_dim(G.dim)) {
      if (used[h]) continue;
      bool ok = true;
      for (size_t i = 0; i < G.faces.size() && ok; ++i) {
        SimplexRef f{phi[G.faces[i].gen], G.faces[i].eta};
        ok = f == b.gen(h).faces[i];
      }
      if (!ok) continue;
      phi[g] = h;
      used[h] = 1;
      if (run(g + 1)) return true;
      used[h] = 0;
    }
    return false;
  }
};

}  // namespace

bool isomorphic(const SimplicialSet& a, const SimplicialSet& b) {
  if (generator_counts(a) != generator_counts(b)) return false;
  IsoSearch s{a, b, std::vector<int>(a.size(), -1), std::vector<char>(b.size(), 0)};
  return s.run(0);
}

std::vector<int> generator_counts(const SimplicialSet& k) {
  std::vector<int> c(k.dim() + 1, 0);
  for (int g = 0; g < k.size(); ++g) ++c[k.gen(g).dim];
  return c;
}

}  // namespace sk
