#include "simpkit/lifting.hpp"

#include <map>
#include <stdexcept>

#include "simpkit/constructions.hpp"

namespace sk {

std::string to_string(FibrationClass c) {
  switch (c) {
    case FibrationClass::inner: return "inner";
    case FibrationClass::left: return "left";
    case FibrationClass::right: return "right";
    case FibrationClass::kan: return "kan";
    case FibrationClass::trivial: return "trivial";
  }
  return "?";
}

FibrationClass fibration_class_from_string(const std::string& s) {
  for (auto c : {FibrationClass::inner, FibrationClass::left, FibrationClass::right, FibrationClass::kan,
                 FibrationClass::trivial})
    if (to_string(c) == s) return c;
  throw std::invalid_argument("unknown fibration class '" + s + "'");
}

bool horn_in_class(FibrationClass c, int n, int k) {
  switch (c) {
    case FibrationClass::inner: return 0 < k && k < n;
    case FibrationClass::left: return 0 <= k && k < n;
    case FibrationClass::right: return 0 < k && k <= n;
    case FibrationClass::kan: return 0 <= k && k <= n;
    case FibrationClass::trivial: return false;
  }
  return false;
}

bool LiftProblem::commutes(std::string* why) const {
  auto bad = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (inclusion.tgt.get() != bottom.src.get() || inclusion.src.get() != top.src.get() ||
      top.tgt.get() != fibration.src.get() || bottom.tgt.get() != fibration.tgt.get())
    return bad("maps do not form a square");
  for (const auto* m : {&inclusion, &top, &bottom, &fibration}) {
    std::string w;
    if (!m->valid(&w)) return bad(w);
  }
  if (!inclusion.injective()) return bad("inclusion is not injective");
  for (int a = 0; a < inclusion.src->size(); ++a)
    if (fibration(top.assign[a]) != bottom(inclusion.assign[a]))
      return bad("square does not commute at '" + inclusion.src->gen(a).name + "'");
  return true;
}

json LiftProblem::to_json() const {
  return {{"A", sset_to_json(*inclusion.src)},
          {"B", sset_to_json(*inclusion.tgt)},
          {"inclusion", map_to_json(inclusion)},
          {"top", map_to_json(top)},
          {"bottom", map_to_json(bottom)}};
}

namespace {

MapQuery lift_query(const LiftProblem& p, const Target& t) {
  MapQuery q;
  q.src = p.inclusion.tgt;
  q.tgt = &t;
  q.fixed.assign(q.src->size(), SimplexRef{});
  for (int a = 0; a < p.inclusion.src->size(); ++a) q.fixed[p.inclusion.assign[a].gen] = p.top.assign[a];
  q.over = p.bottom;
  return q;
}

}  // namespace

std::optional<SimplicialMap> solve_lift(const LiftProblem& p, const Target* cached) {
  std::string why;
  if (!p.commutes(&why)) throw std::invalid_argument("lift problem: " + why);
  std::optional<Target> own;
  if (!cached) own.emplace(p.fibration.src, p.fibration);
  const Target& t = cached ? *cached : *own;
  return first_map(lift_query(p, t));
}

std::optional<std::optional<SimplicialMap>> solve_lift_naive(const LiftProblem& p, long long max_candidates) {
  std::string why;
  if (!p.commutes(&why)) throw std::invalid_argument("lift problem: " + why);
  Target t(p.fibration.src, p.fibration);
  std::vector<SimplexRef> first;
  auto c = naive_count_maps(lift_query(p, t), max_candidates, &first);
  if (!c) return std::nullopt;
  if (*c == 0) return std::optional<SimplicialMap>{};
  return std::optional<SimplicialMap>{SimplicialMap{p.inclusion.tgt, p.fibration.src, first}};
}

SimplicialMap restrict_map(const SimplicialMap& f, const SimplicialMap& inclusion) {
  SimplicialMap r{inclusion.src, f.tgt, {}};
  for (auto& s : inclusion.assign) r.assign.push_back(f(s));
  return r;
}

SimplicialMap generating_inclusion(int n, int k) {
  SSetPtr a = k < 0 ? boundary(n) : horn(n, k);
  return inclusion_by_names(a, standard_simplex(n));
}

SimplicialMap to_point(const SSetPtr& x) {
  SimplicialMap m{x, point(), {}};
  for (int g = 0; g < x->size(); ++g) m.assign.push_back({0, OrdMap(x->gen(g).dim + 1, 0)});
  return m;
}

Report classify_fibration(const SimplicialMap& p, FibrationClass c, int d) {
  Report r;
  r.claim = "map is " + std::string(c == FibrationClass::inner ? "an " : "a ") + to_string(c) + " fibration";
  r.bound = d;
  Target tx(p.src, p);
  Target tx_plain(p.src);
  Target ts(p.tgt);
  json per = json::array();
  long long total = 0;
  for (int n = (c == FibrationClass::trivial ? 0 : 1); n <= d; ++n) {
    std::vector<int> ks;
    if (c == FibrationClass::trivial)
      ks.push_back(-1);
    else
      for (int k = 0; k <= n; ++k)
        if (horn_in_class(c, n, k)) ks.push_back(k);
    for (int k : ks) {
      SimplicialMap inc = generating_inclusion(n, k);
      long long instances = 0;
      std::optional<LiftProblem> bad;
      MapQuery qa{inc.src, &tx_plain, {}, std::nullopt};
      search_maps(qa, [&](const std::vector<SimplexRef>& top_assign) {
        SimplicialMap top{inc.src, p.src, top_assign};
        MapQuery qb{inc.tgt, &ts, std::vector<SimplexRef>(inc.tgt->size()), std::nullopt};
        for (int a = 0; a < inc.src->size(); ++a) qb.fixed[inc.assign[a].gen] = p(top_assign[a]);
        search_maps(qb, [&](const std::vector<SimplexRef>& bottom_assign) {
          ++instances;
          LiftProblem lp{inc, top, SimplicialMap{inc.tgt, p.tgt, bottom_assign}, p};
          if (!first_map(lift_query(lp, tx))) {
            bad = lp;
            return false;
          }
          return true;
        });
        return !bad;
      });
      total += instances;
      per.push_back({{"n", n}, {"k", k}, {"instances", instances}});
      if (bad) {
        r.verdict = "fails";
        r.counterexample = bad->to_json();
        r.counterexample["n"] = n;
        if (k >= 0) r.counterexample["k"] = k;
        r.details = {{"checked", per}, {"instances", total}};
        return r;
      }
    }
  }
  r.details = {{"checked", per}, {"instances", total}};
  return r;
}

Report is_kan(const SSetPtr& x, int d) { return classify_fibration(to_point(x), FibrationClass::kan, d); }

Report is_quasi_category(const SSetPtr& x, int d) {
  return classify_fibration(to_point(x), FibrationClass::inner, d);
}

}  // namespace sk
