#include "simpkit/dg_relative.hpp"

#include <functional>
#include <stdexcept>

#include "simpkit/constructions.hpp"
#include "simpkit/sset_json.hpp"

namespace sk {

void BaseDiagram::validate() const {
  base.validate();
  if (static_cast<int>(fibre.size()) != base.num_objects())
    throw std::invalid_argument("base diagram: one fibre per base object required");
  if (static_cast<int>(pull.size()) != base.num_arrows())
    throw std::invalid_argument("base diagram: one pullback per base arrow required");
  for (int t = 0; t < base.num_arrows(); ++t) {
    const DgCategory &src = fibre[base.arrows[t].src], &tgt = fibre[base.arrows[t].tgt];
    if (static_cast<int>(pull[t].size()) != tgt.size())
      throw std::invalid_argument("base diagram: pullback along " + base.arrows[t].name + " has wrong length");
    for (int k = 0; k < tgt.size(); ++k) {
      int o = pull[t][k];
      if (o < 0 || o >= src.size())
        throw std::invalid_argument("base diagram: pullback along " + base.arrows[t].name + " out of range");
      if (!(src.objects[o] == tgt.objects[k]))
        throw std::invalid_argument("base diagram: pullback along " + base.arrows[t].name +
                                    " changes the complex of " + tgt.names[k]);
      if (base.is_identity(t) && o != k)
        throw std::invalid_argument("base diagram: pullback along an identity is not the identity");
    }
  }
  for (int g = 0; g < base.num_arrows(); ++g)
    for (int f = 0; f < base.num_arrows(); ++f) {
      int h = base.comp[g][f];
      if (h < 0) continue;
      for (int k = 0; k < fibre[base.arrows[g].tgt].size(); ++k)
        if (pull[h][k] != pull[f][pull[g][k]])
          throw std::invalid_argument("base diagram: pullbacks are not strictly functorial at " +
                                      base.arrows[g].name + " o " + base.arrows[f].name);
    }
}

nlohmann::json BaseDiagram::to_json() const {
  nlohmann::json fib = nlohmann::json::array();
  for (const auto& c : fibre) fib.push_back(c.to_json());
  return {{"base", category_to_json(base)}, {"fibres", fib}, {"pullbacks", pull}};
}

BaseDiagram BaseDiagram::from_json(const nlohmann::json& j) {
  BaseDiagram d;
  d.base = category_from_json(j.at("base"));
  for (const auto& c : j.at("fibres")) d.fibre.push_back(DgCategory::from_json(c));
  d.pull = j.at("pullbacks").get<std::vector<std::vector<int>>>();
  d.validate();
  return d;
}

int base_vertex(const FiniteCategory& c, const Key& x, int i) { return i == 0 ? x[0] : c.arrows[x[i]].tgt; }

CoherenceFrame relative_frame(const BaseDiagram& d, const Key& base, const std::vector<int>& objects) {
  CoherenceFrame fr;
  fr.reversed = true;
  for (size_t i = 0; i < objects.size(); ++i)
    fr.vertex.push_back(&d.fibre.at(base_vertex(d.base, base, static_cast<int>(i))).objects.at(objects[i]));
  return fr;
}

bool is_coherent(const BaseDiagram& d, const RelativeSimplex& s) {
  return first_incoherent(relative_frame(d, s.base, s.objects), s.f) == 0;
}

RelativeSimplex alpha_action(const BaseDiagram& d, const RelativeSimplex& s, const OrdMap& alpha) {
  RelativeSimplex out;
  out.base = NerveLevels(d.base).act(s.base, s.dim(), alpha);
  for (int i : alpha) out.objects.push_back(s.objects[i]);
  out.f = pull_coherence(relative_frame(d, s.base, s.objects), s.f, alpha);
  return out;
}

namespace {

// Object tuples over a base simplex: vertex i ranges over fibre(T_i).
void for_each_objects(const BaseDiagram& d, const Key& base, int n,
                      const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> sizes;
  for (int i = 0; i <= n; ++i) sizes.push_back(d.fibre[base_vertex(d.base, base, i)].size());
  for (int s : sizes)
    if (s == 0) return;
  std::vector<int> t(n + 1, 0);
  while (true) {
    fn(t);
    int i = n;
    while (i >= 0 && t[i] == sizes[i] - 1) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
}

Key degenerate_then(const FiniteCategory& c, int v, int n, const std::vector<int>& last) {
  Key k = {v};
  for (int i = 0; i < n; ++i) k.push_back(c.identity[v]);
  for (int a : last) k.push_back(a);
  return k;
}

// Coherent data on a fixed simplex shape with some entries held fixed; the
// remaining entries form a lattice (the system is homogeneous).
struct Slot {
  CoherenceFrame fr;
  Coherence fixed;
  std::vector<uint64_t> unknowns;
  LinearCoherence shape;
  Matrix basis;
};

Slot make_slot(const std::vector<const ChainComplex*>& verts, const Coherence& fixed) {
  Slot s;
  s.fr.reversed = true;
  s.fr.vertex = verts;
  s.fixed = fixed;
  for (uint64_t m : coherence_subsets(s.fr.n()))
    if (!fixed.count(m)) s.unknowns.push_back(m);
  s.shape = compile_coherence(s.fr, fixed, s.unknowns, s.unknowns);
  if (!s.shape.b.is_zero()) throw std::logic_error("cartesian check: inhomogeneous slice system");
  s.basis = kernel(s.shape.a);
  return s;
}

Coherence element(const Slot& s, const Matrix& coords) {
  Coherence f = s.fixed;
  for (auto& [m, h] : unpack(s.fr, s.shape, s.basis * coords)) f[m] = h;
  return f;
}

// Matrix of the structure map `alpha` from slot a to slot b in lattice
// coordinates.
Matrix slot_map(const Slot& a, const Slot& b, const OrdMap& alpha) {
  std::vector<Matrix> cols;
  for (int e = 0; e < a.basis.cols(); ++e) {
    Matrix unit(a.basis.cols(), 1);
    unit(e, 0) = 1;
    Coherence pulled = pull_coherence(a.fr, element(a, unit), alpha);
    for (const auto& [m, h] : b.fixed)
      if (!hom_equal(b.fr.source(m), b.fr.target(m), pulled.at(m), h))
        throw std::logic_error("cartesian check: structure map moves fixed data");
    auto x = solve(b.basis, pack(b.fr, b.unknowns, pulled));
    if (!x) throw std::logic_error("cartesian check: structure map leaves the lattice");
    cols.push_back(*x);
  }
  return Matrix::hstack(cols, b.basis.cols());
}

Coherence degenerate_part(const ChainComplex& z, int n) {
  Coherence f;
  for (uint64_t m : coherence_subsets(n))
    f[m] = popcount(m) == 2 ? identity_hom(z) : ChainHom{CoherenceFrame::degree(m), {}};
  return f;
}

OrdMap extend(OrdMap a, std::initializer_list<int> tail) {
  for (int t : tail) a.push_back(t);
  return a;
}

// Lifting against the boundary of Delta^n for phi : A -> B, levels given by
// the face matrices. Returns false if some boundary datum has no filler.
bool boundary_lifts(int n, const std::vector<std::vector<Matrix>>& fa, const std::vector<std::vector<Matrix>>& fb,
                    const std::vector<Matrix>& phi, const std::vector<int>& ra, const std::vector<int>& rb) {
  if (n == 0) {
    // phi_0 must be surjective.
    auto x = solve(phi[0], Matrix::identity(rb[0]));
    return x.has_value();
  }
  int am = ra[n - 1], bn = rb[n];
  int cols = (n + 1) * am + bn;
  // Compatibility of (a_0..a_n, b).
  std::vector<Matrix> rows;
  for (int i = 0; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if (n < 2) continue;
      Matrix r(ra[n - 2], cols);
      r.set_block(0, j * am, fa[n - 1][i]);
      r.set_block(0, i * am, -fa[n - 1][j - 1]);
      rows.push_back(r);
    }
  for (int i = 0; i <= n; ++i) {
    Matrix r(rb[n - 1], cols);
    r.set_block(0, (n + 1) * am, fb[n][i]);
    r.set_block(0, i * am, -phi[n - 1]);
    rows.push_back(r);
  }
  Matrix compat = Matrix::vstack(rows, cols);
  Matrix m = kernel(compat);
  std::vector<Matrix> lparts;
  for (int i = 0; i <= n; ++i) lparts.push_back(fa[n][i]);
  lparts.push_back(phi[n]);
  Matrix l = Matrix::vstack(lparts, ra[n]);
  return solve(l, m).has_value();
}

}  // namespace

RelativeLevel relative_dg_nerve_level(const BaseDiagram& d, int n, int lo, int hi) {
  RelativeLevel out;
  std::vector<uint64_t> fam = coherence_subsets(n);
  for (const Key& b : NerveLevels(d.base).level(n))
    for_each_objects(d, b, n, [&](const std::vector<int>& objs) {
      Enumeration e = enumerate_coherent(relative_frame(d, b, objs), fam, lo, hi);
      out.truncated = out.truncated || e.truncated;
      out.exhausted = out.exhausted || e.exhausted;
      for (auto& f : e.items) out.simplices.push_back({b, objs, std::move(f)});
    });
  return out;
}

Report relative_inner_fibration_check(const BaseDiagram& d, int max_dim, int lo, int hi) {
  Report rep = Report::make("the relative dg-nerve is an inner fibration over the base", max_dim, true);
  long long instances = 0, filled = 0;
  bool exhausted = false;
  for (int n = 2; n <= max_dim && rep.holds(); ++n) {
    uint64_t full = (uint64_t{2} << n) - 1;
    for (int k = 1; k < n && rep.holds(); ++k) {
      std::vector<uint64_t> fam;
      for (uint64_t s : coherence_subsets(n))
        if (s != full && s != (full & ~(uint64_t{1} << k))) fam.push_back(s);
      for (const Key& b : NerveLevels(d.base).level(n))
        for_each_objects(d, b, n, [&](const std::vector<int>& objs) {
          if (!rep.holds()) return;
          CoherenceFrame fr = relative_frame(d, b, objs);
          Enumeration e = enumerate_coherent(fr, fam, lo, hi);
          exhausted = exhausted || e.exhausted;
          for (const auto& h : e.items) {
            ++instances;
            auto f = fill_horn(fr, h, k);
            if (f && first_incoherent(fr, *f) == 0) {
              ++filled;
            } else {
              rep.verdict = "fails";
              rep.counterexample = {{"dim", n}, {"k", k}, {"base", b}, {"objects", objs}};
              return;
            }
          }
        });
    }
  }
  if (rep.holds() && exhausted) rep.verdict = "inconclusive";
  rep.details = {{"instances", instances}, {"filled", filled}, {"box", {lo, hi}}};
  return rep;
}

std::vector<HomRPart> relative_hom_right(const BaseDiagram& d, int u, int j, int t, int i, int bound) {
  std::vector<HomRPart> out;
  for (int g : d.base.hom(u, t)) {
    const ChainComplex& x = d.fibre[u].objects.at(j);
    const ChainComplex& y = d.fibre[u].objects.at(d.pullback(g, i));
    out.push_back({g, right_mapping_space(x, y, bound, true)});
  }
  return out;
}

Report hom_right_decomposition_check(const BaseDiagram& d, int u, int j, int t, int i, int bound) {
  Report rep = Report::make("Hom^R splits over base arrows into Dold-Kan parts", bound, true);
  auto parts = relative_hom_right(d, u, j, t, i, bound);
  nlohmann::json info = nlohmann::json::array();
  auto fail = [&](const std::string& why, int g) {
    if (rep.holds()) {
      rep.verdict = "fails";
      rep.counterexample = {{"reason", why}, {"arrow", d.base.arrows[g].name}};
    }
  };
  if (parts.size() != d.base.hom(u, t).size()) fail("part count differs from the base hom-set", 0);
  for (const auto& p : parts) {
    // Every basis simplex is a coherent simplex of the relative nerve over
    // (u = ... = u -> t) and lies over the arrow p.arrow.
    for (int n = 0; n <= std::min(bound, 2); ++n) {
      Key base = degenerate_then(d.base, u, n, {p.arrow});
      std::vector<int> objs(n + 1, j);
      objs.push_back(i);
      CoherenceFrame fr = relative_frame(d, base, objs);
      Coherence fixed = degenerate_part(d.fibre[u].objects[j], n);
      std::vector<uint64_t> unknowns;
      for (uint64_t s : coherence_subsets(n + 1))
        if (!fixed.count(s)) unknowns.push_back(s);
      LinearCoherence shape = compile_coherence(fr, fixed, unknowns, unknowns);
      for (int e = 0; e < p.space.basis[n].cols(); ++e) {
        RelativeSimplex s{base, objs, fixed};
        for (auto& [m, h] : unpack(fr, shape, p.space.basis[n].col(e))) s.f[m] = h;
        if (!is_coherent(d, s)) fail("basis simplex is not coherent", p.arrow);
        Key face = NerveLevels(d.base).act(base, n + 1, {0, n + 1});
        if (face[1] != p.arrow) fail("simplex leaves its base arrow", p.arrow);
      }
    }
    ChainComplex a = truncate_le(p.space.hom, 0);
    bool iso = is_simplicial_iso(p.space.group, dk_via_koszul(a, bound), mapping_space_to_dk(p.space));
    if (!iso) fail("part is not isomorphic to dk of the truncated Hom complex", p.arrow);
    nlohmann::json entry = {{"arrow", d.base.arrows[p.arrow].name}, {"dk_iso", iso}};
    for (int k = 0; k < bound && k <= 1; ++k) {
      AbelianGroup pi = homotopy_group(p.space.group, k), h = cohomology(p.space.hom, -k);
      entry["pi" + std::to_string(k)] = pi.str();
      if (!(pi == h)) fail("pi_" + std::to_string(k) + " differs from H^" + std::to_string(-k), p.arrow);
    }
    info.push_back(entry);
  }
  rep.details = {{"parts", info}};
  return rep;
}

CartesianVerdict cartesian_criterion_check(const BaseDiagram& d, const RelativeEdge& e, int dim) {
  CartesianVerdict out;
  const FiniteCategory& B = d.base;
  int g = e.arrow, u = B.arrows[g].src, t = B.arrows[g].tgt;
  const DgCategory& fu = d.fibre[u];
  const ChainComplex& J = fu.objects.at(e.j);
  const ChainComplex& gI = fu.objects.at(d.pullback(g, e.i));
  const ChainComplex& I = d.fibre[t].objects.at(e.i);
  if (!is_chain_map(gI, J, e.q) || e.q.p != 0) throw std::invalid_argument("cartesian check: q is not a 0-cycle");

  out.truncation_verdict =
      is_quasi_iso(truncate_le(gI, 0), truncate_le(J, 0), truncate_le_map(gI, J, e.q, 0));

  bool ok = true;
  nlohmann::json failure;
  long long fibres = 0;
  nlohmann::json ranks = nlohmann::json::array();
  for (int v = 0; v < B.num_objects() && ok; ++v)
    for (int h : B.hom(v, u)) {
      if (!ok) break;
      for (int k = 0; k < d.fibre[v].size() && ok; ++k) {
        const ChainComplex& K = d.fibre[v].objects[k];
        ++fibres;
        // Slot A_n: vertices 0..n at z, n+1 at x, n+2 at y; slot B_n: 0..n at
        // z, n+1 at y.
        std::vector<Slot> sa, sb;
        for (int n = 0; n <= dim; ++n) {
          std::vector<const ChainComplex*> va(n + 1, &K), vb(n + 1, &K);
          va.push_back(&J);
          va.push_back(&I);
          vb.push_back(&I);
          Coherence fa = degenerate_part(K, n);
          fa[(uint64_t{1} << (n + 1)) | (uint64_t{1} << (n + 2))] = e.q;
          sa.push_back(make_slot(va, fa));
          sb.push_back(make_slot(vb, degenerate_part(K, n)));
        }
        std::vector<std::vector<Matrix>> faces_a(dim + 1), faces_b(dim + 1);
        std::vector<Matrix> phi;
        std::vector<int> ra, rb;
        for (int n = 0; n <= dim; ++n) {
          ra.push_back(sa[n].basis.cols());
          rb.push_back(sb[n].basis.cols());
          OrdMap keep = identity_map(n);
          phi.push_back(slot_map(sa[n], sb[n], extend(keep, {n + 2})));
          for (int i = 0; n > 0 && i <= n; ++i) {
            OrdMap c = coface(n, i);
            faces_a[n].push_back(slot_map(sa[n], sa[n - 1], extend(c, {n + 1, n + 2})));
            faces_b[n].push_back(slot_map(sb[n], sb[n - 1], extend(c, {n + 1})));
          }
        }
        ranks.push_back({{"z", d.fibre[v].names[k]}, {"source", ra}, {"target", rb}});
        for (int n = 0; n <= dim; ++n)
          if (!boundary_lifts(n, faces_a, faces_b, phi, ra, rb)) {
            ok = false;
            failure = {{"z", {B.objects[v], d.fibre[v].names[k]}}, {"h", B.arrows[h].name}, {"dim", n}};
            break;
          }
      }
    }
  out.slice_verdict = ok;
  out.report = Report::make("edge over " + B.arrows[g].name + " is Cartesian", dim, ok);
  if (!ok) out.report.counterexample = failure;
  out.report.details = {{"fibres_checked", fibres}, {"truncation_verdict", out.truncation_verdict}, {"lattice_ranks", ranks}};
  return out;
}

int reversal_sign(int size) { return ((size - 2) / 2) % 2 == 0 ? 1 : -1; }

DgNerveSimplex reverse_to_dg(const RelativeSimplex& s) {
  int n = s.dim();
  DgNerveSimplex out;
  out.objects.assign(s.objects.rbegin(), s.objects.rend());
  for (const auto& [m, h] : s.f) {
    uint64_t r = 0;
    for (int v : mask_vertices(m)) r |= uint64_t{1} << (n - v);
    out.f[r] = scale(h, reversal_sign(popcount(m)));
  }
  return out;
}

}  // namespace sk
