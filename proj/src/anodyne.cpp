#include "simpkit/anodyne.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace sk {

std::string to_string(HornKind k) {
  switch (k) {
    case HornKind::inner: return "inner";
    case HornKind::left: return "left";
    case HornKind::right: return "right";
    case HornKind::general: return "general";
  }
  return "?";
}

bool horn_allowed(HornKind kind, int n, int k) {
  if (n < 1 || k < 0 || k > n) return false;
  switch (kind) {
    case HornKind::inner: return 0 < k && k < n;
    case HornKind::left: return k < n;
    case HornKind::right: return k > 0;
    case HornKind::general: return true;
  }
  return false;
}

namespace {

OrderedComplex with_chains(const OrderedComplex& amb, std::set<uint64_t> chains) {
  OrderedComplex c = amb;
  c.chains = std::move(chains);
  return c;
}

OrderedComplex horn_complex(const OrderedComplex& amb, uint64_t tau, int k) {
  uint64_t skip = mask_face(tau, k);
  std::set<uint64_t> ch;
  for (uint64_t s = (tau - 1) & tau; s; s = (s - 1) & tau)
    if (s != skip) ch.insert(s);
  return with_chains(amb, std::move(ch));
}

OrderedComplex simplex_complex(const OrderedComplex& amb, uint64_t tau) {
  OrderedComplex c = with_chains(amb, {});
  c.add_closed(tau);
  return c;
}

uint64_t mask_of(const std::vector<int>& v) {
  uint64_t m = 0;
  for (int x : v) m |= uint64_t{1} << x;
  return m;
}

bool same_by_names(const SimplicialSet& a, const SimplicialSet& b, std::string* why) {
  if (a.size() != b.size()) {
    if (why) *why = "final stage has " + std::to_string(a.size()) + " generators, expected " + std::to_string(b.size());
    return false;
  }
  for (int g = 0; g < b.size(); ++g) {
    int h = a.find(b.gen(g).name);
    bool ok = h >= 0 && a.gen(h).dim == b.gen(g).dim;
    for (size_t i = 0; ok && i < b.gen(g).faces.size(); ++i) {
      const auto& fa = a.gen(h).faces[i];
      const auto& fb = b.gen(g).faces[i];
      ok = a.gen(fa.gen).name == b.gen(fb.gen).name && fa.eta == fb.eta;
    }
    if (!ok) {
      if (why) *why = "generator '" + b.gen(g).name + "' differs in the final stage";
      return false;
    }
  }
  return true;
}

}  // namespace

bool AnodyneWitness::validate(std::string* why) const {
  auto bad = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  std::set<uint64_t> cur = start.chains;
  SSetPtr stage = start.to_sset();
  for (size_t t = 0; t < steps.size(); ++t) {
    const auto& st = steps[t];
    int n = st.dim();
    std::string tag = "step " + std::to_string(t) + " (" + start.chain_name(st.simplex) + ", k=" + std::to_string(st.k) + ")";
    if (!horn_allowed(kind, n, st.k)) return bad(tag + ": horn not of kind " + to_string(kind));
    if (!end.chains.count(st.simplex)) return bad(tag + ": simplex not in the target");
    uint64_t face = mask_face(st.simplex, st.k);
    if (cur.count(st.simplex) || cur.count(face)) return bad(tag + ": simplex or face already present");
    for (int i = 0; i <= n; ++i)
      if (i != st.k && !cur.count(mask_face(st.simplex, i))) return bad(tag + ": horn not present in the stage");
    SSetPtr h = horn_complex(start, st.simplex, st.k).to_sset();
    SSetPtr d = simplex_complex(start, st.simplex).to_sset();
    auto po = pushout(inclusion_by_names(h, d), inclusion_by_names(h, stage));
    stage = po.set;
    cur.insert(st.simplex);
    cur.insert(face);
  }
  if (cur != end.chains) return bad("steps do not exhaust the target");
  return same_by_names(*stage, *end.to_sset(), why);
}

SSetPtr AnodyneWitness::stage(int i) const {
  OrderedComplex c = start;
  for (int t = 0; t < i; ++t) {
    c.chains.insert(steps[t].simplex);
    c.chains.insert(mask_face(steps[t].simplex, steps[t].k));
  }
  return c.to_sset();
}

json AnodyneWitness::to_json() const {
  json st = json::array();
  for (auto& s : steps) {
    SSetPtr h = horn_complex(start, s.simplex, s.k).to_sset();
    json attach = json::object();
    for (int g = 0; g < h->size(); ++g) attach[h->gen(g).name] = {{"gen", h->gen(g).name}, {"word", json::array()}};
    st.push_back({{"n", s.dim()}, {"k", s.k}, {"simplex", start.chain_name(s.simplex)}, {"attach", {{"assignment", attach}}}});
  }
  return {{"kind", to_string(kind)}, {"steps", st}};
}

AnodyneWitness witness_inner_twisted(int n, int k) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("witness_inner_twisted: need n >= 1 and 0 < k <= n");
  int N = 2 * n + 1;
  uint64_t L = (uint64_t{1} << (n + 1)) - 1;
  uint64_t R = ((uint64_t{1} << (N + 1)) - 1) & ~L;
  uint64_t A = L & ~(uint64_t{1} << k);
  uint64_t B = R & ~(uint64_t{1} << (N - k));
  AnodyneWitness w;
  w.kind = HornKind::inner;
  w.start = OrderedComplex::total(N);
  w.end = w.start;
  w.end.add_closed((uint64_t{1} << (N + 1)) - 1);
  for (uint64_t s : w.end.chains) {
    uint64_t sl = s & L, sr = s & R;
    if (!sl || !sr || (sl != L && sl != A && sr != R && sr != B)) w.start.chains.insert(s);
  }
  struct Pair {
    uint64_t tau;
    int k, type;
  };
  std::vector<Pair> pairs;
  for (uint64_t sp = R; sp; sp = (sp - 1) & R) pairs.push_back({L | sp, k, 0});
  for (uint64_t spp = L; spp; spp = (spp - 1) & L)
    if ((spp & A) != A) pairs.push_back({spp | R, popcount(spp) + n - k, 1});
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    int da = popcount(a.tau), db = popcount(b.tau);
    if (da != db) return da < db;
    if (a.type != b.type) return a.type < b.type;
    return a.tau < b.tau;
  });
  std::set<uint64_t> cur = w.start.chains;
  std::vector<char> used(pairs.size(), 0);
  for (size_t done = 0; done < pairs.size(); ++done) {
    bool progressed = false;
    for (size_t p = 0; p < pairs.size() && !progressed; ++p) {
      if (used[p]) continue;
      bool ok = true;
      int d = popcount(pairs[p].tau) - 1;
      for (int i = 0; i <= d && ok; ++i)
        if (i != pairs[p].k) ok = cur.count(mask_face(pairs[p].tau, i)) > 0;
      if (!ok) continue;
      used[p] = 1;
      cur.insert(pairs[p].tau);
      cur.insert(mask_face(pairs[p].tau, pairs[p].k));
      w.steps.push_back({pairs[p].tau, pairs[p].k});
      progressed = true;
    }
    if (!progressed) throw std::logic_error("witness_inner_twisted: matching order stalled");
  }
  return w;
}

namespace {

// Steps extending the union of the facets of Delta^V omitting `present`
// to Delta^V.
void facet_steps(const std::vector<int>& V, std::set<int> present, std::vector<AnodyneStep>& out) {
  std::vector<int> missing;
  for (int v : V)
    if (!present.count(v)) missing.push_back(v);
  if (missing.size() == 1) {
    int k = static_cast<int>(std::find(V.begin(), V.end(), missing[0]) - V.begin());
    out.push_back({mask_of(V), k});
    return;
  }
  int i = missing[0];
  std::vector<int> sub;
  for (int v : V)
    if (v != i) sub.push_back(v);
  facet_steps(sub, present, out);
  present.insert(i);
  facet_steps(V, present, out);
}

void partition_steps(std::set<int> I, std::set<int> J, std::vector<AnodyneStep>& out) {
  std::set<int> V = I;
  V.insert(J.begin(), J.end());
  if (I == V || J == V) return;
  std::set<int> both, ij, ji;
  for (int v : V) {
    bool a = I.count(v), b = J.count(v);
    (a && b ? both : a ? ij : ji).insert(v);
  }
  if (ij.size() >= 2) {
    int i = *ij.begin();
    std::set<int> I2 = both;
    I2.insert(i);
    partition_steps(I2, J, out);
    J.insert(i);
    partition_steps(I, J, out);
  } else if (ji.size() >= 2) {
    int j = *ji.begin();
    std::set<int> J2 = both;
    J2.insert(j);
    partition_steps(I, J2, out);
    I.insert(j);
    partition_steps(I, J, out);
  } else {
    facet_steps(std::vector<int>(V.begin(), V.end()), {*ij.begin(), *ji.begin()}, out);
  }
}

}  // namespace

AnodyneWitness witness_facets(const std::vector<int>& present, int n) {
  std::set<int> pres(present.begin(), present.end());
  if (n < 1) throw std::invalid_argument("witness_facets: need n >= 1");
  for (int i : pres)
    if (i < 0 || i > n) throw std::invalid_argument("witness_facets: facet index out of range");
  if (pres.empty() || static_cast<int>(pres.size()) == n + 1)
    throw std::invalid_argument("witness_facets: need a proper nonempty set of facets");
  AnodyneWitness w;
  w.start = OrderedComplex::total(n);
  w.end = w.start;
  w.end.add_closed((uint64_t{1} << (n + 1)) - 1);
  uint64_t full = (uint64_t{1} << (n + 1)) - 1;
  for (int i : pres) w.start.add_closed(full & ~(uint64_t{1} << i));
  std::vector<int> V;
  for (int v = 0; v <= n; ++v) V.push_back(v);
  facet_steps(V, pres, w.steps);
  return w;
}

AnodyneWitness witness_partition(const std::vector<int>& I, const std::vector<int>& J, int m) {
  std::set<int> si(I.begin(), I.end()), sj(J.begin(), J.end()), all;
  for (int v : I)
    if (v < 0 || v > m) throw std::invalid_argument("witness_partition: vertex out of range");
  for (int v : J)
    if (v < 0 || v > m) throw std::invalid_argument("witness_partition: vertex out of range");
  all = si;
  all.insert(sj.begin(), sj.end());
  if (static_cast<int>(all.size()) != m + 1) throw std::invalid_argument("witness_partition: I u J must be [m]");
  bool meet = false;
  for (int v : si) meet |= sj.count(v) > 0;
  if (!meet) throw std::invalid_argument("witness_partition: I n J must be nonempty");
  AnodyneWitness w;
  w.start = OrderedComplex::total(m);
  w.end = w.start;
  w.end.add_closed((uint64_t{1} << (m + 1)) - 1);
  w.start.add_closed(mask_of(I));
  w.start.add_closed(mask_of(J));
  partition_steps(si, sj, w.steps);
  return w;
}

std::optional<AnodyneWitness> find_witness(const OrderedComplex& start, const OrderedComplex& end, HornKind kind,
                                           long long node_limit) {
  std::vector<uint64_t> missing;
  for (uint64_t s : end.chains)
    if (!start.chains.count(s)) missing.push_back(s);
  std::sort(missing.begin(), missing.end(), [](uint64_t a, uint64_t b) {
    int pa = popcount(a), pb = popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::unordered_map<uint64_t, int> idx;
  for (int t = 0; t < static_cast<int>(missing.size()); ++t) idx[missing[t]] = t;
  std::vector<char> have(missing.size(), 0);
  auto present = [&](uint64_t s) {
    auto it = idx.find(s);
    return it == idx.end() ? start.chains.count(s) > 0 : have[it->second] != 0;
  };
  std::vector<AnodyneStep> steps;
  long long nodes = 0;
  size_t remaining = missing.size();
  std::function<bool()> dfs = [&]() -> bool {
    if (remaining == 0) return true;
    if (++nodes > node_limit) return false;
    poll_deadline();
    for (int t = 0; t < static_cast<int>(missing.size()); ++t) {
      if (have[t]) continue;
      uint64_t tau = missing[t];
      int d = popcount(tau) - 1;
      for (int k = 0; k <= d; ++k) {
        if (!horn_allowed(kind, d, k)) continue;
        uint64_t f = mask_face(tau, k);
        auto it = idx.find(f);
        if (it == idx.end() || have[it->second]) continue;
        bool ok = true;
        for (int i = 0; i <= d && ok; ++i)
          if (i != k) ok = present(mask_face(tau, i));
        if (!ok) continue;
        have[t] = have[it->second] = 1;
        remaining -= 2;
        steps.push_back({tau, k});
        if (dfs()) return true;
        steps.pop_back();
        remaining += 2;
        have[t] = have[it->second] = 0;
        if (nodes > node_limit) return false;
      }
    }
    return false;
  };
  if (!dfs()) return std::nullopt;
  AnodyneWitness w;
  w.kind = kind;
  w.start = start;
  w.end = end;
  w.steps = std::move(steps);
  return w;
}

AnodyneWitness witness_prism(int m, int n, int k) {
  if (m < 0 || n < 1 || k < 1 || k > n) throw std::invalid_argument("witness_prism: need n >= 1 and 0 < k <= n");
  OrderedComplex end = OrderedComplex::grid(m, n);
  for (uint64_t s : end.all_chains()) end.chains.insert(s);
  OrderedComplex start = end;
  start.chains.clear();
  uint64_t full = (uint64_t{1} << (n + 1)) - 1;
  uint64_t no_k = full & ~(uint64_t{1} << k);
  for (uint64_t s : end.chains) {
    uint64_t rows = 0, cols = 0;
    for (int v : mask_vertices(s)) {
      rows |= uint64_t{1} << (v / (n + 1));
      cols |= uint64_t{1} << (v % (n + 1));
    }
    if (popcount(rows) == 1 || (cols != full && cols != no_k)) start.chains.insert(s);
  }
  auto w = find_witness(start, end, HornKind::right);
  if (!w) throw std::logic_error("witness_prism: no right-horn sequence found");
  return *w;
}

WitnessLift lift_via_witness(const AnodyneWitness& w, const LiftProblem& problem, FibrationClass c) {
  for (auto& s : w.steps)
    if (!horn_in_class(c, s.dim(), s.k))
      throw std::invalid_argument("lift_via_witness: witness uses a horn outside the fibration class");
  std::string why;
  if (!problem.commutes(&why)) throw std::invalid_argument("lift_via_witness: " + why);
  const auto& A = *problem.inclusion.src;
  const auto& B = *problem.inclusion.tgt;
  std::map<std::string, SimplexRef> val;
  for (int a = 0; a < A.size(); ++a) val[B.gen(problem.inclusion.assign[a].gen).name] = problem.top.assign[a];
  for (uint64_t s : w.start.chains)
    if (!val.count(w.start.chain_name(s))) throw std::invalid_argument("lift_via_witness: problem does not match the witness start");
  Target t(problem.fibration.src, problem.fibration);
  WitnessLift out;
  for (auto& st : w.steps) {
    SSetPtr h = horn_complex(w.start, st.simplex, st.k).to_sset();
    SSetPtr d = simplex_complex(w.start, st.simplex).to_sset();
    SimplicialMap inc = inclusion_by_names(h, d);
    SimplicialMap top{h, problem.fibration.src, {}};
    for (int g = 0; g < h->size(); ++g) top.assign.push_back(val.at(h->gen(g).name));
    SimplicialMap bottom{d, problem.fibration.tgt, {}};
    for (int g = 0; g < d->size(); ++g) {
      int b = B.find(d->gen(g).name);
      if (b < 0) throw std::invalid_argument("lift_via_witness: '" + d->gen(g).name + "' missing in the problem");
      bottom.assign.push_back(problem.bottom.assign[b]);
    }
    LiftProblem lp{inc, top, bottom, problem.fibration};
    auto l = solve_lift(lp, &t);
    if (!l) {
      out.failed_step = lp;
      return out;
    }
    uint64_t f = mask_face(st.simplex, st.k);
    val[w.start.chain_name(st.simplex)] = l->assign[d->find(w.start.chain_name(st.simplex))];
    val[w.start.chain_name(f)] = l->assign[d->find(w.start.chain_name(f))];
  }
  SimplicialMap res{problem.inclusion.tgt, problem.fibration.src, {}};
  for (int g = 0; g < B.size(); ++g) {
    auto it = val.find(B.gen(g).name);
    if (it == val.end()) throw std::invalid_argument("lift_via_witness: '" + B.gen(g).name + "' not reached by the witness");
    res.assign.push_back(it->second);
  }
  out.lift = res;
  return out;
}

}  // namespace sk
