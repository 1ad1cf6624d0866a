#include "simpkit/dg.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "simpkit/constructions.hpp"

namespace sk {

namespace {

int low_vertex(uint64_t s) { return __builtin_ctzll(s); }
int high_vertex(uint64_t s) { return 63 - __builtin_clzll(s); }

// Elements of s that are <= c, and those that are >= c.
uint64_t upto(uint64_t s, int c) { return s & ((uint64_t{2} << c) - 1); }
uint64_t from(uint64_t s, int c) { return s & ~((uint64_t{1} << c) - 1); }

const ChainHom& lookup(const Coherence& f, uint64_t s) {
  auto it = f.find(s);
  if (it == f.end()) throw std::invalid_argument("coherence: missing entry for subset " + std::to_string(s));
  return it->second;
}

ChainHom sub(const ChainComplex& a, const ChainComplex& b, const ChainHom& f, const ChainHom& g) {
  return add(a, b, f, scale(g, -1));
}

bool hom_is_zero(const ChainComplex& a, const ChainComplex& b, const ChainHom& f) {
  for (const Int& x : hom_vector(a, b, f))
    if (x != 0) return false;
  return true;
}

// All integer vectors of length r with entries in [lo, hi].
std::vector<std::vector<Int>> box_vectors(int r, int lo, int hi) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> v(r, lo);
  while (true) {
    out.push_back(v);
    int i = 0;
    while (i < r && v[i] == hi) v[i++] = lo;
    if (i == r) break;
    v[i] += 1;
  }
  return out;
}

}  // namespace

ChainHom DgCategory::compose(int a, int b, int c, const ChainHom& g, const ChainHom& f) const {
  return sk::compose(objects[a], objects[b], objects[c], g, f);
}

bool DgCategory::validate(std::string* why, int span) const {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (names.size() != objects.size()) return fail("names and objects differ in length");
  for (const auto& o : objects) {
    try {
      o.check();
    } catch (const std::exception& e) {
      return fail(e.what());
    }
  }
  auto basis = [&](int a, int b, int p) {
    const ChainComplex& h = hom(a, b);
    std::vector<ChainHom> out;
    for (int e = 0; e < h.rank(p); ++e) {
      Matrix col(h.rank(p), 1);
      col(e, 0) = 1;
      out.push_back(hom_element(objects[a], objects[b], p, col));
    }
    return out;
  };
  int n = size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      for (int p = -span; p <= span; ++p)
        for (const auto& f : basis(a, b, p)) {
          if (!hom_equal(objects[a], objects[b], compose(a, b, b, identity(b), f), f) ||
              !hom_equal(objects[a], objects[b], compose(a, a, b, f, identity(a)), f))
            return fail("identities are not units");
        }
      for (int c = 0; c < n; ++c)
        for (int p = -span; p <= span; ++p)
          for (int q = -span; q <= span; ++q)
            for (const auto& g : basis(b, c, p))
              for (const auto& f : basis(a, b, q)) {
                const ChainComplex &A = objects[a], &B = objects[b], &C = objects[c];
                ChainHom lhs = differential(A, C, compose(a, b, c, g, f));
                ChainHom rhs = add(A, C, compose(a, b, c, differential(B, C, g), f),
                                   scale(compose(a, b, c, g, differential(A, B, f)), p % 2 == 0 ? 1 : -1));
                if (!hom_equal(A, C, lhs, rhs)) return fail("Leibniz rule fails");
              }
    }
  if (n > 0) {
    // Associativity on a -> a -> a -> a for the first object, degree 0 and -1.
    for (int p = -1; p <= 0; ++p) {
      auto fs = basis(0, 0, p);
      for (const auto& h : fs)
        for (const auto& g : fs)
          for (const auto& f : fs)
            if (!hom_equal(objects[0], objects[0], compose(0, 0, 0, h, compose(0, 0, 0, g, f)),
                           compose(0, 0, 0, compose(0, 0, 0, h, g), f)))
              return fail("composition is not associative");
    }
  }
  return true;
}

nlohmann::json DgCategory::to_json() const {
  nlohmann::json objs = nlohmann::json::array();
  for (int i = 0; i < size(); ++i) objs.push_back({{"name", names[i]}, {"complex", objects[i].to_json()}});
  return {{"objects", objs}};
}

DgCategory DgCategory::from_json(const nlohmann::json& j) {
  DgCategory c;
  for (const auto& o : j.at("objects")) {
    c.names.push_back(o.at("name").get<std::string>());
    c.objects.push_back(ChainComplex::from_json(o.at("complex")));
  }
  std::string why;
  if (!c.validate(&why, 1)) throw std::invalid_argument("dg category: " + why);
  return c;
}

const ChainComplex& CoherenceFrame::source(uint64_t s) const {
  return *vertex[reversed ? high_vertex(s) : low_vertex(s)];
}

const ChainComplex& CoherenceFrame::target(uint64_t s) const {
  return *vertex[reversed ? low_vertex(s) : high_vertex(s)];
}

int CoherenceFrame::degree(uint64_t s) { return 2 - popcount(s); }

int CoherenceFrame::hom_rank(uint64_t s) const { return hom_complex(source(s), target(s)).rank(degree(s)); }

ChainHom CoherenceFrame::composite(uint64_t low, uint64_t high, const ChainHom& f_low,
                                   const ChainHom& f_high) const {
  const ChainComplex& a = *vertex[low_vertex(low)];
  const ChainComplex& c = *vertex[high_vertex(low)];
  const ChainComplex& b = *vertex[high_vertex(high)];
  if (reversed) return sk::compose(b, c, a, f_low, f_high);
  return sk::compose(a, c, b, f_high, f_low);
}

ChainHom coherence_defect(const CoherenceFrame& fr, const Coherence& f, uint64_t s) {
  const ChainComplex &a = fr.source(s), &b = fr.target(s);
  ChainHom out = differential(a, b, lookup(f, s));
  std::vector<int> v = mask_vertices(s);
  for (size_t j = 1; j + 1 < v.size(); ++j) {
    ChainHom term = sub(a, b, lookup(f, s & ~(uint64_t{1} << v[j])),
                        fr.composite(upto(s, v[j]), from(s, v[j]), lookup(f, upto(s, v[j])),
                                     lookup(f, from(s, v[j]))));
    out = add(a, b, out, scale(term, j % 2 == 0 ? -1 : 1));
  }
  return out;
}

std::vector<uint64_t> coherence_subsets(int n) {
  std::vector<std::pair<int, uint64_t>> v;
  for (uint64_t s = 1; s < (uint64_t{1} << (n + 1)); ++s)
    if (popcount(s) >= 2) v.push_back({popcount(s), s});
  std::sort(v.begin(), v.end());
  std::vector<uint64_t> out;
  for (auto& [k, s] : v) out.push_back(s);
  return out;
}

uint64_t first_incoherent(const CoherenceFrame& fr, const Coherence& f) {
  for (uint64_t s : coherence_subsets(fr.n()))
    if (!hom_is_zero(fr.source(s), fr.target(s), coherence_defect(fr, f, s))) return s;
  return 0;
}

Coherence pull_coherence(const CoherenceFrame& fr, const Coherence& f, const OrdMap& alpha) {
  int m = static_cast<int>(alpha.size()) - 1;
  Coherence out;
  for (uint64_t s : coherence_subsets(m)) {
    uint64_t img = 0;
    std::vector<int> v = mask_vertices(s);
    for (int j : v) img |= uint64_t{1} << alpha[j];
    if (popcount(img) == static_cast<int>(v.size()))
      out[s] = lookup(f, img);
    else if (v.size() == 2)
      out[s] = identity_hom(*fr.vertex[alpha[v[0]]]);
    else
      out[s] = ChainHom{CoherenceFrame::degree(s), {}};
  }
  return out;
}

LinearCoherence compile_coherence(const CoherenceFrame& fr, const Coherence& fixed,
                                  const std::vector<uint64_t>& unknowns, const std::vector<uint64_t>& equations) {
  LinearCoherence lc;
  lc.unknowns = unknowns;
  std::map<uint64_t, int> block;
  int total = 0;
  for (size_t u = 0; u < unknowns.size(); ++u) {
    block[unknowns[u]] = static_cast<int>(u);
    lc.offset.push_back(total);
    total += fr.hom_rank(unknowns[u]);
  }
  lc.offset.push_back(total);

  Coherence base = fixed;
  for (uint64_t u : unknowns) base[u] = ChainHom{CoherenceFrame::degree(u), {}};

  std::vector<Matrix> arows, brows;
  for (uint64_t s : equations) {
    const ChainComplex &a = fr.source(s), &b = fr.target(s);
    // Subsets entering the identity for s, and a linearity check.
    std::set<uint64_t> involved = {s};
    std::vector<int> v = mask_vertices(s);
    for (size_t j = 1; j + 1 < v.size(); ++j) {
      uint64_t lo = upto(s, v[j]), hi = from(s, v[j]);
      involved.insert(s & ~(uint64_t{1} << v[j]));
      involved.insert(lo);
      involved.insert(hi);
      if (block.count(lo) && block.count(hi))
        throw std::logic_error("coherence: both factors of a composite are unknown");
    }
    std::vector<Int> c = hom_vector(a, b, coherence_defect(fr, base, s));
    int r = static_cast<int>(c.size());
    Matrix rows(r, total), rhs(r, 1);
    for (int i = 0; i < r; ++i) rhs(i, 0) = -c[i];
    for (uint64_t t : involved) {
      auto it = block.find(t);
      if (it == block.end()) continue;
      int off = lc.offset[it->second], len = lc.offset[it->second + 1] - off;
      const ChainComplex &ta = fr.source(t), &tb = fr.target(t);
      for (int e = 0; e < len; ++e) {
        Matrix col(len, 1);
        col(e, 0) = 1;
        Coherence trial = base;
        trial[t] = hom_element(ta, tb, CoherenceFrame::degree(t), col);
        std::vector<Int> w = hom_vector(a, b, coherence_defect(fr, trial, s));
        for (int i = 0; i < r; ++i) rows(i, off + e) = w[i] - c[i];
      }
    }
    arows.push_back(rows);
    brows.push_back(rhs);
  }
  lc.a = Matrix::vstack(arows, total);
  lc.b = Matrix::vstack(brows, 1);
  return lc;
}

Coherence unpack(const CoherenceFrame& fr, const LinearCoherence& lc, const Matrix& x) {
  Coherence out;
  for (size_t u = 0; u < lc.unknowns.size(); ++u) {
    uint64_t t = lc.unknowns[u];
    int off = lc.offset[u], len = lc.offset[u + 1] - off;
    out[t] = hom_element(fr.source(t), fr.target(t), CoherenceFrame::degree(t), x.block(off, 0, len, 1));
  }
  return out;
}

Matrix pack(const CoherenceFrame& fr, const std::vector<uint64_t>& keys, const Coherence& f) {
  std::vector<Matrix> parts;
  for (uint64_t t : keys) parts.push_back(hom_column(fr.source(t), fr.target(t), lookup(f, t)));
  return Matrix::vstack(parts, 1);
}

std::optional<Coherence> fill_horn(const CoherenceFrame& fr, const Coherence& horn, int k) {
  int n = fr.n();
  uint64_t full = (uint64_t{2} << n) - 1, facet = full & ~(uint64_t{1} << k);
  std::vector<uint64_t> unknowns = {facet, full};
  if (n < 2) throw std::invalid_argument("fill_horn: dimension must be at least 2");
  LinearCoherence lc = compile_coherence(fr, horn, unknowns, unknowns);
  auto x = solve(lc.a, lc.b);
  if (!x) return std::nullopt;
  Coherence out = horn;
  for (auto& [s, h] : unpack(fr, lc, *x)) out[s] = h;
  return out;
}

Enumeration enumerate_coherent(const CoherenceFrame& fr, const std::vector<uint64_t>& family, int lo, int hi,
                               long long node_limit) {
  Enumeration out;
  std::map<int, std::vector<std::vector<Int>>> boxes;
  auto box = [&](int r) -> const std::vector<std::vector<Int>>& {
    auto it = boxes.find(r);
    if (it == boxes.end()) it = boxes.emplace(r, box_vectors(r, lo, hi)).first;
    return it->second;
  };
  std::map<uint64_t, bool> infinite;  // kernel of d nonzero for the slot of s
  long long nodes = 0;
  Coherence cur;
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (out.exhausted) return;
    if (++nodes > node_limit) {
      out.exhausted = true;
      return;
    }
    if (idx == family.size()) {
      out.items.push_back(cur);
      return;
    }
    uint64_t s = family[idx];
    const ChainComplex &a = fr.source(s), &b = fr.target(s);
    int deg = CoherenceFrame::degree(s);
    ChainComplex h = hom_complex(a, b);
    Matrix d = h.d(deg);
    cur[s] = ChainHom{deg, {}};
    std::vector<Int> c = hom_vector(a, b, coherence_defect(fr, cur, s));
    Matrix rhs(static_cast<int>(c.size()), 1);
    for (size_t i = 0; i < c.size(); ++i) rhs(static_cast<int>(i), 0) = -c[i];
    if (!solve(d, rhs)) {
      cur.erase(s);
      return;
    }
    if (!infinite.count(s)) infinite[s] = kernel(d).cols() > 0;
    if (infinite[s]) out.truncated = true;
    for (const auto& v : box(h.rank(deg))) {
      Matrix col = Matrix::column(v);
      if (!(d * col == rhs)) continue;
      cur[s] = hom_element(a, b, deg, col);
      rec(idx + 1);
      if (out.exhausted) break;
    }
    cur.erase(s);
  };
  rec(0);
  return out;
}

CoherenceFrame frame_of(const DgCategory& c, const std::vector<int>& objects, bool reversed) {
  CoherenceFrame fr;
  fr.reversed = reversed;
  for (int o : objects) fr.vertex.push_back(&c.objects.at(o));
  return fr;
}

bool is_coherent(const DgCategory& c, const DgNerveSimplex& s) {
  return first_incoherent(frame_of(c, s.objects), s.f) == 0;
}

DgNerveSimplex alpha_action(const DgCategory& c, const DgNerveSimplex& s, const OrdMap& alpha) {
  DgNerveSimplex out;
  for (int i : alpha) out.objects.push_back(s.objects[i]);
  out.f = pull_coherence(frame_of(c, s.objects), s.f, alpha);
  return out;
}

namespace {

void for_each_tuple(int size, int len, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t(len, 0);
  if (size == 0) return;
  while (true) {
    fn(t);
    int i = len - 1;
    while (i >= 0 && t[i] == size - 1) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
}

}  // namespace

NerveLevel dg_nerve_level(const DgCategory& c, int n, int lo, int hi) {
  NerveLevel out;
  std::vector<uint64_t> fam = coherence_subsets(n);
  for_each_tuple(c.size(), n + 1, [&](const std::vector<int>& objs) {
    Enumeration e = enumerate_coherent(frame_of(c, objs), fam, lo, hi);
    out.truncated = out.truncated || e.truncated;
    out.exhausted = out.exhausted || e.exhausted;
    for (auto& f : e.items) out.simplices.push_back({objs, std::move(f)});
  });
  return out;
}

HornFillReport fill_all_inner_horns(const DgCategory& c, int n, int lo, int hi) {
  HornFillReport rep;
  uint64_t full = (uint64_t{2} << n) - 1;
  for (int k = 1; k < n; ++k) {
    std::vector<uint64_t> fam;
    for (uint64_t s : coherence_subsets(n))
      if (s != full && s != (full & ~(uint64_t{1} << k))) fam.push_back(s);
    for_each_tuple(c.size(), n + 1, [&](const std::vector<int>& objs) {
      CoherenceFrame fr = frame_of(c, objs);
      Enumeration e = enumerate_coherent(fr, fam, lo, hi);
      rep.exhausted = rep.exhausted || e.exhausted;
      for (const auto& h : e.items) {
        ++rep.instances;
        auto filled = fill_horn(fr, h, k);
        if (filled && first_incoherent(fr, *filled) == 0) ++rep.filled;
      }
    });
  }
  return rep;
}

MappingSpace right_mapping_space(const ChainComplex& x, const ChainComplex& y, int bound, bool reversed) {
  struct Level {
    CoherenceFrame fr;
    Coherence fixed;
    std::vector<uint64_t> unknowns;
    Matrix basis;
  };
  struct Data {
    ChainComplex x, y;
    std::vector<Level> lv;
  };
  auto data = std::make_shared<Data>();
  data->x = x;
  data->y = y;
  std::vector<int> ranks;
  MappingSpace out;
  for (int n = 0; n <= bound; ++n) {
    Level L;
    L.fr.reversed = reversed;
    for (int i = 0; i <= n; ++i) L.fr.vertex.push_back(&data->x);
    L.fr.vertex.push_back(&data->y);
    uint64_t top = uint64_t{1} << (n + 1);
    for (uint64_t s : coherence_subsets(n + 1)) {
      if (s & top)
        L.unknowns.push_back(s);
      else
        L.fixed[s] = popcount(s) == 2 ? identity_hom(data->x) : ChainHom{CoherenceFrame::degree(s), {}};
    }
    LinearCoherence lc = compile_coherence(L.fr, L.fixed, L.unknowns, L.unknowns);
    if (!lc.b.is_zero()) throw std::logic_error("mapping space: the system is not homogeneous");
    L.basis = kernel(lc.a);
    ranks.push_back(L.basis.cols());
    out.basis.push_back(L.basis);
    data->lv.push_back(std::move(L));
  }
  out.group = SimplicialAbelianGroup(bound, ranks, [data](const OrdMap& al, int n) {
    int m = static_cast<int>(al.size()) - 1;
    const Level &ln = data->lv[n], &lm = data->lv[m];
    OrdMap ext = al;
    ext.push_back(n + 1);
    LinearCoherence shape;
    shape.unknowns = ln.unknowns;
    int total = 0;
    for (uint64_t s : ln.unknowns) {
      shape.offset.push_back(total);
      total += ln.fr.hom_rank(s);
    }
    shape.offset.push_back(total);
    std::vector<Matrix> cols;
    for (int e = 0; e < ln.basis.cols(); ++e) {
      Coherence f = ln.fixed;
      for (auto& [s, h] : unpack(ln.fr, shape, ln.basis.col(e))) f[s] = h;
      Matrix packed = pack(lm.fr, lm.unknowns, pull_coherence(ln.fr, f, ext));
      auto coords = solve(lm.basis, packed);
      if (!coords) throw std::logic_error("mapping space: structure map leaves the lattice");
      cols.push_back(*coords);
    }
    return Matrix::hstack(cols, lm.basis.cols());
  });
  out.hom = reversed ? hom_complex(y, x) : hom_complex(x, y);
  out.reversed = reversed;
  return out;
}

LevelMaps mapping_space_to_dk(const MappingSpace& m) {
  const ChainComplex& h = m.hom;
  bool cut = !h.empty() && h.lo() <= 0 && h.hi() > 0;
  Matrix z0 = cut ? kernel(h.d(0)) : Matrix();
  LevelMaps out;
  for (int n = 0; n <= m.group.bound(); ++n) {
    // Offsets of the unknowns f_I, I containing n + 1, in packed coordinates.
    std::map<uint64_t, std::pair<int, int>> where;
    int total = 0;
    uint64_t top = uint64_t{1} << (n + 1);
    for (uint64_t s : coherence_subsets(n + 1))
      if (s & top) {
        int len = h.rank(CoherenceFrame::degree(s));
        where[s] = {total, len};
        total += len;
      }
    std::vector<std::pair<int, uint64_t>> subsets;
    for (uint64_t s = 0; s < (uint64_t{1} << n); ++s) subsets.push_back({popcount(s), s});
    std::sort(subsets.begin(), subsets.end());
    const Matrix& b = m.basis[n];
    std::vector<Matrix> parts;
    for (auto [size, s] : subsets) {
      auto [off, len] = where.at(((s << 1) | 1) | top);
      Matrix block = b.block(off, 0, len, b.cols());
      if (size == 0 && cut) {
        auto x = solve(z0, block);
        if (!x) throw std::logic_error("mapping space: vertex is not a cycle");
        block = *x;
      }
      parts.push_back(block);
    }
    out.push_back(Matrix::vstack(parts, b.cols()));
  }
  return out;
}

MappingSpace mapping_space(const DgCategory& c, int x, int y, int bound) {
  return right_mapping_space(c.objects.at(x), c.objects.at(y), bound);
}

bool same_class(const ChainComplex& c, int n, const Matrix& z1, const Matrix& z2) {
  CohomologyClasses cc = cohomology_classes(c, n);
  auto x1 = solve(cc.cycles, z1), x2 = solve(cc.cycles, z2);
  if (!x1 || !x2) throw std::invalid_argument("same_class: not a cycle");
  return solve(cc.boundaries, *x1 - *x2).has_value();
}

Report tau1_check(const DgCategory& c, int lo, int hi) {
  Report rep = Report::make("tau_1 of the dg-nerve is the homotopy category H^0", hi, true);
  long long pairs = 0, composites = 0;
  auto cycles = [&](int a, int b) {
    std::vector<ChainHom> out;
    ChainComplex h = c.hom(a, b);
    for (const auto& v : box_vectors(h.rank(0), lo, hi)) {
      Matrix col = Matrix::column(v);
      if ((h.d(0) * col).is_zero()) out.push_back(hom_element(c.objects[a], c.objects[b], 0, col));
    }
    return out;
  };
  auto fail = [&](const std::string& why, nlohmann::json where) {
    if (rep.holds()) {
      rep.verdict = "fails";
      rep.counterexample = {{"reason", why}, {"at", where}};
    }
  };
  int n = c.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      ChainComplex h = c.hom(a, b);
      auto edges = cycles(a, b);
      const ChainComplex &A = c.objects[a], &B = c.objects[b];
      // f ~ g in tau_1 iff some 2-simplex (f, id, g) exists.
      CoherenceFrame fr = frame_of(c, {a, b, b});
      for (const auto& f : edges)
        for (const auto& g : edges) {
          Coherence data = {{0b011, f}, {0b110, identity_hom(B)}, {0b101, g}};
          LinearCoherence lc = compile_coherence(fr, data, {0b111}, {0b111});
          bool homotopic = solve(lc.a, lc.b).has_value();
          ++pairs;
          if (homotopic != same_class(h, 0, hom_column(A, B, f), hom_column(A, B, g)))
            fail("homotopy relation differs from H^0", {{"objects", {c.names[a], c.names[b]}}});
        }
      for (int d = 0; d < n; ++d) {
        const ChainComplex& D = c.objects[d];
        auto second = cycles(b, d);
        CoherenceFrame fr3 = frame_of(c, {a, b, d});
        for (const auto& f : edges)
          for (const auto& g : second) {
            auto filled = fill_horn(fr3, {{0b011, f}, {0b110, g}}, 1);
            ++composites;
            if (!filled) {
              fail("horn not fillable", {{"objects", {c.names[a], c.names[b], c.names[d]}}});
              continue;
            }
            if (!same_class(hom_complex(A, D), 0, hom_column(A, D, filled->at(0b101)),
                            hom_column(A, D, compose(A, B, D, g, f))))
              fail("composite differs from H^0 composite", {{"objects", {c.names[a], c.names[b], c.names[d]}}});
          }
      }
    }
  rep.details = {{"edge_pairs", pairs}, {"composites", composites}, {"box", {lo, hi}}};
  return rep;
}

}  // namespace sk
