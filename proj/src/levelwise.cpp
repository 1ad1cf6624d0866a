#include "simpkit/levelwise.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace sk {

std::string Levelwise::name(const Key& x, int) const {
  std::ostringstream os;
  os << '(';
  for (size_t j = 0; j < x.size(); ++j) os << (j ? "," : "") << x[j];
  os << ')';
  return os.str();
}

const SimplexRef& Presentation::lookup(const Key& x, int n) const {
  if (n < 0 || n >= static_cast<int>(classify.size()))
    throw std::out_of_range("presentation: level " + std::to_string(n) + " beyond bound");
  auto it = classify[n].find(x);
  if (it == classify[n].end()) throw std::out_of_range("presentation: unknown key at level " + std::to_string(n));
  return it->second;
}

bool Presentation::has(const Key& x, int n) const {
  return n >= 0 && n < static_cast<int>(classify.size()) && classify[n].count(x);
}

Presentation present(const Levelwise& l, int d) {
  Presentation p;
  p.bound = d;
  auto k = std::make_shared<SimplicialSet>();
  p.classify.resize(d + 1);
  std::map<std::string, int> name_uses;
  for (int n = 0; n <= d; ++n) {
    auto keys = l.level(n);
    for (const Key& x : keys) {
      int deg = -1;
      Key dx;
      for (int i = 0; i < n; ++i) {
        Key fi = l.face(x, n, i);
        if (l.degen(fi, n - 1, i) == x) {
          deg = i;
          dx = std::move(fi);
          break;
        }
      }
      if (deg >= 0) {
        const SimplexRef& y = p.lookup(dx, n - 1);
        p.classify[n][x] = {y.gen, compose(y.eta, codegeneracy(n - 1, deg))};
        continue;
      }
      std::vector<SimplexRef> faces;
      for (int i = 0; i <= n && n > 0; ++i) faces.push_back(p.lookup(l.face(x, n, i), n - 1));
      std::string nm = l.name(x, n);
      int uses = name_uses[nm]++;
      if (uses) nm += "#" + std::to_string(uses);
      int g = k->add(nm, n, std::move(faces));
      p.gen_key.push_back(x);
      p.classify[n][x] = {g, identity_map(n)};
    }
  }
  k->finalize();
  p.set = k;
  return p;
}

SimplicialMap map_from_keys(const Presentation& src, const Presentation& tgt,
                            const std::function<Key(const Key&, int)>& f) {
  SimplicialMap m{src.set, tgt.set, {}};
  for (int g = 0; g < src.set->size(); ++g) {
    int n = src.set->gen(g).dim;
    m.assign.push_back(tgt.lookup(f(src.gen_key[g], n), n));
  }
  return m;
}

long long check_identities(const Levelwise& l, int max_level) {
  long long bad = 0;
  for (int n = 0; n <= max_level; ++n) {
    for (const Key& x : l.level(n)) {
      for (int j = 0; j <= n && n >= 2; ++j)
        for (int i = 0; i < j; ++i)
          if (l.face(l.face(x, n, j), n - 1, i) != l.face(l.face(x, n, i), n - 1, j - 1)) ++bad;
      for (int j = 0; j <= n; ++j) {
        Key sx = l.degen(x, n, j);
        for (int i = 0; i <= n + 1; ++i) {
          Key lhs = l.face(sx, n + 1, i);
          Key rhs;
          if (i == j || i == j + 1)
            rhs = x;
          else if (i < j)
            rhs = l.degen(l.face(x, n, i), n - 1, j - 1);
          else
            rhs = l.degen(l.face(x, n, i - 1), n - 1, j);
          if (lhs != rhs) ++bad;
        }
        for (int i = 0; i <= j; ++i)
          if (l.degen(l.degen(x, n, j), n + 1, i) != l.degen(l.degen(x, n, i), n + 1, j + 1)) ++bad;
      }
    }
  }
  return bad;
}

Key encode(const SimplexRef& s) {
  Key k;
  k.reserve(s.eta.size() + 1);
  k.push_back(s.gen);
  k.insert(k.end(), s.eta.begin(), s.eta.end());
  return k;
}

SimplexRef decode(const Key& k, size_t pos, int n) {
  SimplexRef s;
  s.gen = k[pos];
  s.eta.assign(k.begin() + pos + 1, k.begin() + pos + 2 + n);
  return s;
}

std::vector<Key> PresentedLevels::level(int n) const {
  std::vector<Key> out;
  for (auto& s : k_->level(n)) out.push_back(encode(s));
  std::sort(out.begin(), out.end());
  return out;
}

Key PresentedLevels::act(const Key& x, int n, const OrdMap& a) const {
  return encode(k_->apply(decode(x, 0, n), a));
}

std::string PresentedLevels::name(const Key& x, int n) const { return k_->describe(decode(x, 0, n)); }

}  // namespace sk
