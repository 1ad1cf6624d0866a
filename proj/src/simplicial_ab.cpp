#include "simpkit/simplicial_ab.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "simpkit/constructions.hpp"

namespace sk {

struct SimplicialAbelianGroup::Cache {
  std::mutex mu;
  std::map<std::pair<int, int>, Matrix> faces, degens;
};

SimplicialAbelianGroup::SimplicialAbelianGroup(int bound, std::vector<int> ranks, Action act)
    : bound_(bound), ranks_(std::move(ranks)), act_(std::move(act)), cache_(std::make_shared<Cache>()) {
  if (static_cast<int>(ranks_.size()) != bound_ + 1)
    throw std::invalid_argument("simplicial abelian group: rank list size");
}

const Matrix& SimplicialAbelianGroup::face(int n, int i) const {
  if (n < 1 || n > bound_ || i < 0 || i > n) throw std::out_of_range("face index");
  std::lock_guard lock(cache_->mu);
  auto key = std::make_pair(n, i);
  auto it = cache_->faces.find(key);
  if (it == cache_->faces.end()) it = cache_->faces.emplace(key, act_(coface(n, i), n)).first;
  return it->second;
}

const Matrix& SimplicialAbelianGroup::degeneracy(int n, int i) const {
  if (n < 0 || n >= bound_ || i < 0 || i > n) throw std::out_of_range("degeneracy index");
  std::lock_guard lock(cache_->mu);
  auto key = std::make_pair(n, i);
  auto it = cache_->degens.find(key);
  if (it == cache_->degens.end()) it = cache_->degens.emplace(key, act_(codegeneracy(n, i), n)).first;
  return it->second;
}

long long SimplicialAbelianGroup::identity_violations() const {
  long long bad = 0;
  for (int n = 2; n <= bound_; ++n)
    for (int j = 1; j <= n; ++j)
      for (int i = 0; i < j; ++i)
        if (!(face(n - 1, i) * face(n, j) == face(n - 1, j - 1) * face(n, i))) ++bad;
  for (int n = 0; n < bound_; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        Matrix lhs = face(n + 1, i) * degeneracy(n, j), rhs;
        if (i < j)
          rhs = degeneracy(n - 1, j - 1) * face(n, i);
        else if (i == j || i == j + 1)
          rhs = Matrix::identity(rank(n));
        else
          rhs = degeneracy(n - 1, j) * face(n, i - 1);
        if (!(lhs == rhs)) ++bad;
      }
  for (int n = 0; n + 2 <= bound_; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        if (!(degeneracy(n + 1, i) * degeneracy(n, j) == degeneracy(n + 1, j + 1) * degeneracy(n, i))) ++bad;
  return bad;
}

SimplicialAbelianGroup free_abelian(const SSetPtr& x, int bound) {
  struct Data {
    SSetPtr x;
    std::vector<std::vector<SimplexRef>> levels;
    std::vector<std::unordered_map<SimplexRef, int, SimplexRefHash>> index;
  };
  auto data = std::make_shared<Data>();
  data->x = x;
  std::vector<int> ranks;
  std::vector<std::vector<char>> degenerate;
  for (int n = 0; n <= bound; ++n) {
    data->levels.push_back(x->level(n));
    auto& idx = data->index.emplace_back();
    auto& deg = degenerate.emplace_back();
    for (size_t j = 0; j < data->levels[n].size(); ++j) {
      idx[data->levels[n][j]] = static_cast<int>(j);
      deg.push_back(!data->levels[n][j].nondegenerate());
    }
    ranks.push_back(static_cast<int>(data->levels[n].size()));
  }
  auto basis = [data](int j, const OrdMap& a, int n) {
    int m = static_cast<int>(a.size()) - 1;
    return data->index[m].at(data->x->apply(data->levels[n][j], a));
  };
  SimplicialAbelianGroup g(bound, ranks, [data, basis](const OrdMap& a, int n) {
    int m = static_cast<int>(a.size()) - 1;
    Matrix mat(static_cast<int>(data->levels[m].size()), static_cast<int>(data->levels[n].size()));
    for (int j = 0; j < mat.cols(); ++j) mat(basis(j, a, n), j) += 1;
    return mat;
  });
  g.degenerate_basis = std::move(degenerate);
  g.basis_act = basis;
  return g;
}

SimplicialAbelianGroup constant_group(int r, int bound) {
  return SimplicialAbelianGroup(bound, std::vector<int>(bound + 1, r),
                                [r](const OrdMap&, int) { return Matrix::identity(r); });
}

ChainComplex moore(const SimplicialAbelianGroup& a) {
  std::vector<Matrix> dh;
  for (int k = 1; k <= a.bound(); ++k) {
    Matrix d(a.rank(k - 1), a.rank(k));
    for (int i = 0; i <= k; ++i) d = d + a.face(k, i).scaled(i % 2 == 0 ? 1 : -1);
    dh.push_back(d);
  }
  return ChainComplex::homological(a.ranks(), dh);
}

namespace {

// Subcomplex of c spanned by the columns of bases[k] in homological degree k.
DerivedComplex subcomplex(const ChainComplex& c, const std::vector<Matrix>& bases) {
  std::vector<int> ranks;
  std::vector<Matrix> dh;
  for (auto& b : bases) ranks.push_back(b.cols());
  for (size_t k = 1; k < bases.size(); ++k) {
    auto x = solve(bases[k - 1], c.hd(static_cast<int>(k)) * bases[k]);
    if (!x) throw std::logic_error("subcomplex: not closed under the differential");
    dh.push_back(*x);
  }
  DerivedComplex out{ChainComplex::homological(ranks, dh), {}};
  for (size_t k = 0; k < bases.size(); ++k) out.map.comp[-static_cast<int>(k)] = bases[k];
  return out;
}

Matrix coordinate_columns(int rows, const std::vector<char>& pick, bool want) {
  int n = 0;
  for (char p : pick) n += (static_cast<bool>(p) == want);
  Matrix m(rows, n);
  int c = 0;
  for (int i = 0; i < rows; ++i)
    if (static_cast<bool>(pick[i]) == want) m(i, c++) = 1;
  return m;
}

std::vector<Matrix> degenerate_bases(const SimplicialAbelianGroup& a) {
  std::vector<Matrix> bases;
  for (int k = 0; k <= a.bound(); ++k) {
    if (!a.degenerate_basis.empty()) {
      bases.push_back(coordinate_columns(a.rank(k), a.degenerate_basis[k], true));
      continue;
    }
    if (k == 0) {
      bases.emplace_back(a.rank(0), 0);
      continue;
    }
    std::vector<Matrix> parts;
    for (int i = 0; i < k; ++i) parts.push_back(a.degeneracy(k - 1, i));
    bases.push_back(image_basis(Matrix::hstack(parts, a.rank(k))));
  }
  return bases;
}

}  // namespace

DerivedComplex normalized(const SimplicialAbelianGroup& a) {
  ChainComplex c = moore(a);
  std::vector<Matrix> bases = {Matrix::identity(a.rank(0))};
  for (int k = 1; k <= a.bound(); ++k) {
    std::vector<Matrix> parts;
    for (int i = 1; i <= k; ++i) parts.push_back(a.face(k, i));
    bases.push_back(kernel(Matrix::vstack(parts, a.rank(k))));
  }
  return subcomplex(c, bases);
}

DerivedComplex degenerate_sub(const SimplicialAbelianGroup& a) { return subcomplex(moore(a), degenerate_bases(a)); }

DerivedComplex moore_quotient(const SimplicialAbelianGroup& a) {
  std::vector<Matrix> sections, projections;
  std::vector<int> ranks;
  std::vector<Matrix> dh;
  bool based = !a.degenerate_basis.empty() && static_cast<bool>(a.basis_act);
  auto dbases = degenerate_bases(a);
  for (int k = 0; k <= a.bound(); ++k) {
    Matrix q, p;
    if (based) {
      q = coordinate_columns(a.rank(k), a.degenerate_basis[k], false);
      p = q.transpose();
    } else {
      q = complement_basis(dbases[k]);
      Matrix inv = inverse_unimodular(Matrix::hstack({dbases[k], q}, a.rank(k)));
      p = inv.block(dbases[k].cols(), 0, q.cols(), a.rank(k));
    }
    ranks.push_back(q.cols());
    sections.push_back(q);
    projections.push_back(p);
  }
  for (int k = 1; k <= a.bound(); ++k) {
    Matrix d(ranks[k - 1], ranks[k]);
    if (based) {
      // Boundary of each nondegenerate basis element, dropping degenerate faces.
      std::vector<int> pos(a.rank(k - 1), -1);
      for (int i = 0, c = 0; i < a.rank(k - 1); ++i)
        if (!a.degenerate_basis[k - 1][i]) pos[i] = c++;
      for (int j = 0, c = 0; j < a.rank(k); ++j) {
        if (a.degenerate_basis[k][j]) continue;
        for (int i = 0; i <= k; ++i) {
          int f = a.basis_act(j, coface(k, i), k);
          if (pos[f] >= 0) d(pos[f], c) += (i % 2 == 0) ? 1 : -1;
        }
        ++c;
      }
    } else {
      Matrix dk(a.rank(k - 1), a.rank(k));
      for (int i = 0; i <= k; ++i) dk = dk + a.face(k, i).scaled(i % 2 == 0 ? 1 : -1);
      d = projections[k - 1] * dk * sections[k];
    }
    dh.push_back(d);
  }
  DerivedComplex out{ChainComplex::homological(ranks, dh), {}};
  for (int k = 0; k <= a.bound(); ++k) out.map.comp[-k] = projections[k];
  return out;
}

bool normalized_matches_quotient(const SimplicialAbelianGroup& a) {
  DerivedComplex n = normalized(a), q = moore_quotient(a);
  for (int k = 0; k <= a.bound(); ++k)
    if (!is_unimodular(q.map.comp.at(-k) * n.map.comp.at(-k))) return false;
  return true;
}

AbelianGroup homotopy_group(const SimplicialAbelianGroup& a, int n) {
  if (n >= a.bound()) throw std::out_of_range("homotopy_group: degree at or above the level bound");
  return homology(moore(a), n);
}

namespace {

// Index of a subset mask within koszul_basis(n, popcount - 1).
int koszul_index(int n, uint64_t mask) {
  auto basis = koszul_basis(n, popcount(mask) - 1);
  return static_cast<int>(std::lower_bound(basis.begin(), basis.end(), mask) - basis.begin());
}

}  // namespace

KoszulQuotientIso koszul_quotient_iso(int n) {
  SSetPtr x = standard_simplex(n);
  SimplicialAbelianGroup z = free_abelian(x, n);
  KoszulQuotientIso out;
  out.koszul = koszul(n);
  out.quotient = moore_quotient(z).complex;
  for (int k = 0; k <= n; ++k) {
    auto level = x->level(k);
    Matrix to(out.quotient.hrank(k), out.koszul.hrank(k));
    int c = 0;
    for (auto& s : level) {
      if (!s.nondegenerate()) continue;
      uint64_t mask = 0;
      for (int v : x->vertices(s)) mask |= uint64_t{1} << v;
      to(c++, koszul_index(n, mask)) = 1;
    }
    out.to.comp[-k] = to;
    out.from.comp[-k] = to.transpose();
  }
  out.verified = is_chain_map(out.koszul, out.quotient, out.to) && is_chain_map(out.quotient, out.koszul, out.from) &&
                 hom_equal(out.koszul, out.koszul, compose(out.koszul, out.quotient, out.koszul, out.from, out.to),
                           identity_hom(out.koszul)) &&
                 hom_equal(out.quotient, out.quotient,
                           compose(out.quotient, out.koszul, out.quotient, out.to, out.from),
                           identity_hom(out.quotient));
  return out;
}

bool is_simplicial_map(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b, const LevelMaps& f) {
  int bound = std::min(a.bound(), b.bound());
  if (static_cast<int>(f.size()) < bound + 1) return false;
  for (int n = 0; n <= bound; ++n) {
    if (f[n].rows() != b.rank(n) || f[n].cols() != a.rank(n)) return false;
    for (int i = 0; i <= n && n >= 1; ++i)
      if (!(f[n - 1] * a.face(n, i) == b.face(n, i) * f[n])) return false;
    for (int i = 0; i <= n && n < bound; ++i)
      if (!(f[n + 1] * a.degeneracy(n, i) == b.degeneracy(n, i) * f[n])) return false;
  }
  return true;
}

bool is_simplicial_iso(const SimplicialAbelianGroup& a, const SimplicialAbelianGroup& b, const LevelMaps& f) {
  if (!is_simplicial_map(a, b, f)) return false;
  for (int n = 0; n <= std::min(a.bound(), b.bound()); ++n)
    if (!is_unimodular(f[n])) return false;
  return true;
}

namespace {

// Normalized chains of Z Delta^n with the top generator having coefficient
// +1 on the identity simplex, plus the comparison with the Koszul complex.
struct SimplexChains {
  SSetPtr x;
  SimplicialAbelianGroup z;
  DerivedComplex n;
  ChainHom theta;  // N -> K, through C / D
  std::vector<std::map<OrdMap, int>> index;  // vertex list -> basis index
};

std::shared_ptr<const SimplexChains> simplex_chains(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const SimplexChains>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  auto sc = std::make_shared<SimplexChains>();
  sc->x = standard_simplex(n);
  sc->z = free_abelian(sc->x, n);
  sc->n = normalized(sc->z);
  for (int k = 0; k <= n; ++k) {
    auto& idx = sc->index.emplace_back();
    auto level = sc->x->level(k);
    for (size_t j = 0; j < level.size(); ++j) idx[sc->x->vertices(level[j])] = static_cast<int>(j);
  }
  Matrix& top = sc->n.map.comp[-n];
  int id = sc->index[n].at(identity_map(n));
  if (top.cols() != 1) throw std::logic_error("normalized chains of a simplex: top rank is not 1");
  if (top(id, 0) < 0) {
    top = -top;
    if (n > 0) sc->n.complex.set_d(-n, -sc->n.complex.d(-n));
  }
  for (int k = 0; k <= n; ++k) {
    const Matrix& b = sc->n.map.comp.at(-k);
    auto level = sc->x->level(k);
    Matrix t(static_cast<int>(koszul_basis(n, k).size()), b.cols());
    for (size_t j = 0; j < level.size(); ++j) {
      if (!level[j].nondegenerate()) continue;
      uint64_t mask = 0;
      for (int v : sc->x->vertices(level[j])) mask |= uint64_t{1} << v;
      int row = koszul_index(n, mask);
      for (int c = 0; c < b.cols(); ++c) t(row, c) += b(static_cast<int>(j), c);
    }
    sc->theta.comp[-k] = t;
  }
  std::lock_guard lock(mu);
  return cache.emplace(n, sc).first->second;
}

// N(a) : N Z Delta^m -> N Z Delta^n for a : [m] -> [n].
ChainHom normalized_map(const SimplexChains& sm, const SimplexChains& sn, const OrdMap& a) {
  int m = static_cast<int>(a.size()) - 1;
  int n = static_cast<int>(sn.index.size()) - 1;
  ChainHom f;
  // Normalized chains of Delta^n vanish above degree n.
  for (int k = 0; k <= std::min(m, n); ++k) {
    auto level = sm.x->level(k);
    Matrix za(sn.z.rank(k), sm.z.rank(k));
    for (size_t j = 0; j < level.size(); ++j)
      za(sn.index[k].at(compose(a, sm.x->vertices(level[j]))), static_cast<int>(j)) += 1;
    auto x = solve(sn.n.map.comp.at(-k), za * sm.n.map.comp.at(-k));
    if (!x) throw std::logic_error("normalized_map: image is not normalized");
    f.comp[-k] = *x;
  }
  return f;
}

// K(a) : K Delta^m -> K Delta^n.
ChainHom koszul_map(int m, int n, const OrdMap& a) {
  ChainHom f;
  for (int k = 0; k <= m; ++k) {
    auto src = koszul_basis(m, k);
    Matrix mat(static_cast<int>(koszul_basis(n, k).size()), static_cast<int>(src.size()));
    for (size_t j = 0; j < src.size(); ++j) {
      uint64_t img = 0;
      for (int v : mask_vertices(src[j])) img |= uint64_t{1} << a[v];
      if (popcount(img) == k + 1) mat(koszul_index(n, img), static_cast<int>(j)) = 1;
    }
    f.comp[-k] = mat;
  }
  return f;
}

// Columns of `basis` (elements of Hom(S, A)^0) precomposed with g : T -> S,
// written in the coordinates of `target` (a basis of a lattice in Hom(T, A)^0).
Matrix pull_back(const ChainComplex& s, const ChainComplex& t, const ChainComplex& a, const ChainHom& g,
                 const Matrix& basis, const Matrix& target) {
  std::vector<Matrix> cols;
  for (int e = 0; e < basis.cols(); ++e) {
    ChainHom f = hom_element(s, a, 0, basis.col(e));
    cols.push_back(hom_column(t, a, compose(t, s, a, f, g)));
  }
  Matrix img = Matrix::hstack(cols, hom_complex(t, a).rank(0));
  auto x = solve(target, img);
  if (!x) throw std::logic_error("pull_back: image outside the target lattice");
  return *x;
}

void require_connective(const ChainComplex& a) {
  if (!a.connective()) throw std::invalid_argument("dk: complex is not connective");
}

struct KoszulLevel {
  ChainComplex k;
  Matrix w;    // basis of Hom(K Delta^n, A)
  Matrix phi;  // restriction to {0} u s, in w coordinates
};

KoszulLevel koszul_level(const ChainComplex& a, int n) {
  KoszulLevel lv;
  lv.k = koszul(n);
  ChainComplex h = hom_complex(lv.k, a);
  lv.w = kernel(h.d(0));
  // Rows of the restriction: for s by (size, mask), the components at {0} u s.
  std::vector<std::pair<int, uint64_t>> subsets;
  for (uint64_t s = 0; s < (uint64_t{1} << n); ++s) subsets.push_back({popcount(s), s});
  std::sort(subsets.begin(), subsets.end());
  std::vector<Matrix> parts;
  for (auto [size, s] : subsets) {
    uint64_t mask = (s << 1) | 1;
    int col = koszul_index(n, mask);
    Matrix r(a.hrank(size), lv.w.cols());
    for (int e = 0; e < lv.w.cols(); ++e) {
      ChainHom f = hom_element(lv.k, a, 0, lv.w.col(e));
      Matrix c = f.at(lv.k, a, -size);
      for (int i = 0; i < r.rows(); ++i) r(i, e) = c(i, col);
    }
    parts.push_back(r);
  }
  lv.phi = Matrix::vstack(parts, lv.w.cols());
  return lv;
}

}  // namespace

Matrix dk_level_basis(const ChainComplex& a, int n) {
  require_connective(a);
  return kernel(hom_complex(simplex_chains(n)->n.complex, a).d(0));
}

SimplicialAbelianGroup dk(const ChainComplex& a, int bound) {
  require_connective(a);
  struct Data {
    ChainComplex a;
    std::vector<std::shared_ptr<const SimplexChains>> sc;
    std::vector<Matrix> z;
  };
  auto data = std::make_shared<Data>();
  data->a = a;
  std::vector<int> ranks;
  for (int n = 0; n <= bound; ++n) {
    data->sc.push_back(simplex_chains(n));
    data->z.push_back(dk_level_basis(a, n));
    ranks.push_back(data->z.back().cols());
  }
  return SimplicialAbelianGroup(bound, ranks, [data](const OrdMap& al, int n) {
    int m = static_cast<int>(al.size()) - 1;
    const SimplexChains &sm = *data->sc[m], &sn = *data->sc[n];
    return pull_back(sn.n.complex, sm.n.complex, data->a, normalized_map(sm, sn, al), data->z[n], data->z[m]);
  });
}

bool koszul_restriction_is_iso(const ChainComplex& a, int n) {
  require_connective(a);
  return is_unimodular(koszul_level(a, n).phi);
}

SimplicialAbelianGroup dk_via_koszul(const ChainComplex& a, int bound) {
  require_connective(a);
  struct Data {
    ChainComplex a;
    std::vector<KoszulLevel> lv;
    std::vector<Matrix> phi_inv;
  };
  auto data = std::make_shared<Data>();
  data->a = a;
  std::vector<int> ranks;
  for (int n = 0; n <= bound; ++n) {
    data->lv.push_back(koszul_level(a, n));
    if (!is_unimodular(data->lv.back().phi))
      throw std::logic_error("dk_via_koszul: restriction to {0} u s is not an isomorphism at level " +
                             std::to_string(n));
    data->phi_inv.push_back(inverse_unimodular(data->lv.back().phi));
    ranks.push_back(data->lv.back().phi.rows());
  }
  return SimplicialAbelianGroup(bound, ranks, [data](const OrdMap& al, int n) {
    int m = static_cast<int>(al.size()) - 1;
    const KoszulLevel &lm = data->lv[m], &ln = data->lv[n];
    Matrix pulled = pull_back(ln.k, lm.k, data->a, koszul_map(m, n, al), ln.w * data->phi_inv[n], lm.w);
    return lm.phi * pulled;
  });
}

LevelMaps dk_comparison(const ChainComplex& a, int bound) {
  require_connective(a);
  LevelMaps out;
  for (int n = 0; n <= bound; ++n) {
    auto sc = simplex_chains(n);
    KoszulLevel lv = koszul_level(a, n);
    out.push_back(pull_back(lv.k, sc->n.complex, a, sc->theta, lv.w * inverse_unimodular(lv.phi),
                            dk_level_basis(a, n)));
  }
  return out;
}

ChainHom dk_counit(const ChainComplex& a, const DerivedComplex& ndka) {
  ChainHom e;
  const ChainComplex& c = ndka.complex;
  for (int k = 0; k <= -c.lo(); ++k) {
    auto sc = simplex_chains(k);
    Matrix z = dk_level_basis(a, k);
    const Matrix& incl = ndka.map.comp.at(-k);
    Matrix m(a.hrank(k), c.hrank(k));
    for (int col = 0; col < c.hrank(k); ++col) {
      ChainHom f = hom_element(sc->n.complex, a, 0, z * incl.col(col));
      Matrix top = f.at(sc->n.complex, a, -k);
      for (int i = 0; i < m.rows(); ++i) m(i, col) = top(i, 0);
    }
    e.comp[-k] = m;
  }
  return e;
}

LevelMaps dk_unit(const SimplicialAbelianGroup& b, const DerivedComplex& nb) {
  LevelMaps out;
  const ChainComplex& nc = nb.complex;
  for (int n = 0; n <= b.bound(); ++n) {
    auto sc = simplex_chains(n);
    const ChainComplex& sn = sc->n.complex;
    // img[k] : B_n -> (N B)_k stacked over the normalized basis of Z Delta^n.
    std::vector<std::vector<Matrix>> img(n + 1);
    for (int k = 0; k <= n; ++k) {
      auto level = sc->x->level(k);
      const Matrix& basis = sc->n.map.comp.at(-k);
      std::vector<Matrix> acts;
      for (auto& s : level) acts.push_back(b.act(sc->x->vertices(s), n));
      for (int c = 0; c < basis.cols(); ++c) {
        Matrix sum(b.rank(k), b.rank(n));
        for (size_t s = 0; s < level.size(); ++s)
          if (basis(static_cast<int>(s), c) != 0) sum = sum + acts[s].scaled(basis(static_cast<int>(s), c));
        auto x = solve(nb.map.comp.at(-k), sum);
        if (!x) throw std::logic_error("dk_unit: image is not normalized");
        img[k].push_back(*x);
      }
    }
    std::vector<Matrix> cols;
    for (int j = 0; j < b.rank(n); ++j) {
      ChainHom f;
      for (int k = 0; k <= n; ++k) {
        Matrix m(nc.hrank(k), static_cast<int>(img[k].size()));
        for (size_t c = 0; c < img[k].size(); ++c)
          for (int i = 0; i < m.rows(); ++i) m(i, static_cast<int>(c)) = img[k][c](i, j);
        f.comp[-k] = m;
      }
      cols.push_back(hom_column(sn, nc, f));
    }
    Matrix h = Matrix::hstack(cols, hom_complex(sn, nc).rank(0));
    auto x = solve(dk_level_basis(nc, n), h);
    if (!x) throw std::logic_error("dk_unit: not a chain map");
    out.push_back(*x);
  }
  return out;
}

}  // namespace sk
