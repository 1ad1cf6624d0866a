#include "simpkit/suites.hpp"

#include <random>
#include <stdexcept>

#include "simpkit/anodyne.hpp"
#include "simpkit/constructions.hpp"
#include "simpkit/descent.hpp"
#include "simpkit/fixtures.hpp"
#include "simpkit/loop.hpp"
#include "simpkit/search.hpp"

namespace sk {

namespace {

// Collects named checks into one report.
class Suite {
 public:
  Suite(std::string claim, int bound) {
    r_.claim = std::move(claim);
    r_.bound = bound;
    r_.details["checks"] = json::array();
  }
  bool check(const std::string& name, bool ok, json extra = json::object()) {
    extra["check"] = name;
    extra["ok"] = ok;
    r_.details["checks"].push_back(extra);
    if (!ok) {
      ++failed_;
      if (r_.counterexample.is_null()) r_.counterexample = extra;
    }
    return ok;
  }
  void add(const Report& sub, const std::string& name, json extra = json::object()) {
    extra["verdict"] = sub.verdict;
    if (!sub.holds() && !sub.counterexample.is_null()) extra["counterexample"] = sub.counterexample;
    check(name, sub.holds(), extra);
  }
  Report finish() {
    r_.details["failed"] = failed_;
    r_.details["total"] = r_.details["checks"].size();
    r_.verdict = failed_ ? "fails" : "holds";
    return r_;
  }

 private:
  Report r_;
  int failed_ = 0;
};

bool valid(const AnodyneWitness& w, json& extra) {
  std::string why;
  bool ok = w.validate(&why);
  extra["steps"] = w.steps.size();
  if (!ok) extra["why"] = why;
  return ok;
}

std::vector<std::vector<int>> subsets(int m) {
  std::vector<std::vector<int>> out;
  for (uint64_t mask = 1; mask < (1ull << (m + 1)); ++mask) out.push_back(mask_vertices(mask));
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += std::to_string(x);
  return s;
}

}  // namespace

Report suite_identities() {
  const int d = 4;
  Suite s("simplicial identities hold on every constructed object", d);
  auto sset = [&](const std::string& name, const SSetPtr& k) {
    long long bad = check_identities(*k, d);
    s.check("identities", bad == 0, {{"object", name}, {"violations", bad}});
  };
  auto levels = [&](const std::string& name, const Levelwise& l) {
    long long bad = check_identities(l, d);
    s.check("identities", bad == 0, {{"object", name}, {"violations", bad}});
  };
  for (int n = 0; n <= 4; ++n) {
    sset("Delta" + std::to_string(n), standard_simplex(n));
    if (n >= 1) sset("boundary" + std::to_string(n), boundary(n));
    for (int k = 0; k <= n && n >= 1; ++k) sset("horn" + std::to_string(n) + "," + std::to_string(k), horn(n, k));
  }
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b) {
      std::string tag = std::to_string(a) + "," + std::to_string(b);
      sset("Delta" + std::to_string(a) + "xDelta" + std::to_string(b),
           product(standard_simplex(a), standard_simplex(b)).pres.set);
      if (a + b + 1 <= 4) sset("join" + tag, join(standard_simplex(a), standard_simplex(b)).set);
    }
  sset("horn2,0xDelta1", product(horn(2, 0), standard_simplex(1)).pres.set);
  sset("join(Delta1,horn2,0)", join(standard_simplex(1), horn(2, 0)).set);

  std::vector<NamedCategory> cats = twisted_fixture_categories();
  cats.push_back({"linear-3", FiniteCategory::linear(3)});
  cats.push_back({"discrete-2", FiniteCategory::discrete(2)});
  for (auto& [name, c] : cats) {
    auto nerve = std::make_shared<NerveLevels>(c);
    levels("N(" + name + ")", *nerve);
    sset("N(" + name + ") presented", truncated_nerve(c, d).set);
    levels("Tw N(" + name + ")", TwistedLevels(nerve));
  }
  levels("Tw horn2,1", TwistedLevels(std::make_shared<PresentedLevels>(horn(2, 1))));
  levels("Tw Delta2", TwistedLevels(std::make_shared<PresentedLevels>(standard_simplex(2))));

  for (auto& f : loop_fixtures(d + 2)) {
    // S3 stops at row 2: row 3 of BS3 at level 4 alone takes most of a minute
    int height = f.group_order <= 3 ? 3 : 2;
    LoopGroup g = loop_group(f.p, f.x, height, d);
    for (int m = 0; m <= height; ++m) sset("loop row " + std::to_string(m) + " of " + f.name, g.object.rows[m].set);
    long long bad = check_horizontal_identities(g.object);
    s.check("horizontal identities", bad == 0, {{"object", "loop group of " + f.name}, {"violations", bad}});
  }
  {
    Bisimplicial c = cech_nerve(to_point(disjoint_union({point(), point()})), 3);
    long long bad = check_horizontal_identities(c);
    s.check("horizontal identities", bad == 0, {{"object", "Cech nerve of two points"}, {"violations", bad}});
  }
  return s.finish();
}

Report suite_dold_kan() {
  const int bound = 4;
  Suite s("Dold-Kan round trips and the Koszul description are exact", bound);
  auto complexes = dk_fixture_complexes();
  s.check("fixture count", complexes.size() >= 10, {{"count", complexes.size()}});
  for (auto& f : complexes) {
    const ChainComplex& a = f.complex;
    SimplicialAbelianGroup g = dk(a, bound), gk = dk_via_koszul(a, bound);
    s.check("dk identities", g.identity_violations() == 0 && gk.identity_violations() == 0, {{"complex", f.name}});
    s.check("dk agrees with dk_via_koszul", is_simplicial_iso(gk, g, dk_comparison(a, bound)), {{"complex", f.name}});
    DerivedComplex ng = normalized(g);
    ChainHom e = dk_counit(a, ng);
    bool iso = is_chain_map(ng.complex, a, e);
    for (int k = 0; k <= bound && iso; ++k) iso = is_unimodular(e.at(ng.complex, a, -k));
    s.check("N(DK A) -> A is an isomorphism", iso, {{"complex", f.name}});
    SimplicialAbelianGroup back = dk(ng.complex, bound);
    s.check("DK(N B) -> B is an isomorphism", is_simplicial_iso(g, back, dk_unit(g, ng)), {{"complex", f.name}});
    bool restr = true;
    for (int n = 0; n <= 5; ++n) restr = restr && koszul_restriction_is_iso(a, n);
    s.check("Koszul restriction basis, n <= 5", restr, {{"complex", f.name}});
  }
  for (auto& b : simplicial_group_fixtures(3)) {
    DerivedComplex nb = normalized(b.group);
    s.check("DK(N B) -> B is an isomorphism", is_simplicial_iso(b.group, dk(nb.complex, 3), dk_unit(b.group, nb)),
            {{"group", b.name}});
  }
  for (int n = 0; n <= 6; ++n)
    s.check("K Delta^n = C Delta^n / D Delta^n", koszul_quotient_iso(n).verified, {{"n", n}});
  return s.finish();
}

Report suite_dg_nerve() {
  Suite s("dg-nerve coherence, inner horn filling and mapping spaces", 3);
  for (const auto& d : dg_fixture_categories()) {
    const DgCategory& c = d.category;
    for (int n = 0; n <= 3; ++n) {
      // the top level uses a smaller box to keep the count small
      int lo = n == 3 ? 0 : -1;
      NerveLevel lv = dg_nerve_level(c, n, lo, 1);
      long long bad = 0;
      for (const auto& x : lv.simplices) bad += !is_coherent(c, x);
      s.check("enumerated simplices are coherent", bad == 0 && !lv.exhausted,
              {{"category", d.name}, {"n", n}, {"simplices", lv.simplices.size()}, {"incoherent", bad}});
    }
    for (int n = 2; n <= 3; ++n) {
      HornFillReport h = fill_all_inner_horns(c, n, -1, 1);
      s.check("inner horns fill", !h.exhausted && h.instances > 0 && h.filled == h.instances,
              {{"category", d.name}, {"n", n}, {"instances", h.instances}, {"filled", h.filled}});
    }
    for (int x = 0; x < c.size(); ++x)
      for (int y = 0; y < c.size(); ++y) {
        MappingSpace m = mapping_space(c, x, y, 3);
        AbelianGroup p0 = homotopy_group(m.group, 0), p1 = homotopy_group(m.group, 1);
        AbelianGroup h0 = cohomology(m.hom, 0), h1 = cohomology(m.hom, -1);
        s.check("pi_0, pi_1 of Map are H^0, H^-1 of Hom", p0 == h0 && p1 == h1,
                {{"category", d.name}, {"x", x}, {"y", y}, {"pi0", p0.str()}, {"pi1", p1.str()}});
      }
  }
  BaseDiagram b = two_fibre_base();
  for (auto [j, i] : std::vector<std::pair<int, int>>{{0, 0}, {2, 0}, {0, 1}}) {
    Report r = hom_right_decomposition_check(b, 0, j, 1, i, 3);
    s.add(r, "Hom^R splits over base arrows", {{"source", j}, {"target", i}, {"parts", r.details["parts"].size()}});
  }
  return s.finish();
}

Report suite_cartesian() {
  Suite s("truncation and slice verdicts agree on Cartesian edges", 2);
  BaseDiagram b = cartesian_base();
  int qi = 0, not_qi = 0;
  for (const auto& e : cartesian_edges()) {
    CartesianVerdict v = cartesian_criterion_check(b, e.edge, 2);
    s.check("verdicts agree", v.truncation_verdict == v.slice_verdict && v.slice_verdict == e.quasi_iso,
            {{"edge", e.name}, {"truncation", v.truncation_verdict}, {"slice", v.slice_verdict}});
    (e.quasi_iso ? qi : not_qi)++;
  }
  s.check("at least 3 edges of each kind", qi >= 3 && not_qi >= 3, {{"quasi_iso", qi}, {"not_quasi_iso", not_qi}});
  return s.finish();
}

Report suite_twisted() {
  Suite s("twisted arrow projection and mapping spaces of sections", 3);
  for (auto& [name, c] : twisted_fixture_categories()) {
    s.add(lambda_check(twisted_arrow(c, 3), 3), "lambda is a right fibration", {{"category", name}});
    TwistedArrow t = twisted_arrow(c, 1);
    bool ok = true;
    for (int x = 0; x < c.num_objects(); ++x)
      for (int y = 0; y < c.num_objects(); ++y)
        ok = ok && pi0(*lambda_fibre(t, {x}, {y}, 1).set).count == static_cast<int>(c.hom(x, y).size());
    s.check("pi_0 of lambda fibres are Hom-sets", ok, {{"category", name}});
  }
  for (auto& f : section_fixtures()) {
    bool inner = classify_fibration(f.p, FibrationClass::inner, 2).holds();
    Sections all = sections(f.p, 0);
    std::vector<Key> keys = all.levels->level(0);
    for (size_t a = 0; a < keys.size(); ++a)
      for (size_t b = 0; b < keys.size(); ++b) {
        SectionMappingSpace m =
            mapping_space_sections(f.p, all.levels->as_section(keys[a]), all.levels->as_section(keys[b]), 2);
        json where = {{"fibration", f.name}, {"from", a}, {"to", b}};
        if (inner) s.check("Z is a right fibration over Tw K", m.report.details["z_right_fibration"] == "holds", where);
        s.add(m.report, "pi_0 of the mapping space is Hom in the homotopy category", where);
      }
  }
  return s.finish();
}

Report suite_anodyne() {
  Suite s("anodyne witnesses validate and lift like direct search", 4);
  for (int n = 1; n <= 2; ++n)
    for (int k = 1; k <= n; ++k) {
      json e = {{"n", n}, {"k", k}};
      s.check("twisted witness", valid(witness_inner_twisted(n, k), e), e);
    }
  int partitions = 0;
  for (int m = 1; m <= 4; ++m)
    for (auto& I : subsets(m))
      for (auto& J : subsets(m)) {
        uint64_t mi = 0, mj = 0;
        for (int v : I) mi |= 1ull << v;
        for (int v : J) mj |= 1ull << v;
        if ((mi | mj) != (1ull << (m + 1)) - 1 || !(mi & mj)) continue;
        json e = {{"I", join_ints(I)}, {"J", join_ints(J)}, {"m", m}};
        bool ok = valid(witness_partition(I, J, m), e);
        ++partitions;
        if (!ok) s.check("partition witness", false, e);
      }
  s.check("partition witnesses, m <= 4", true, {{"count", partitions}});
  int facets = 0;
  for (int n = 1; n <= 4; ++n)
    for (auto& f : subsets(n)) {
      if (static_cast<int>(f.size()) == n + 1) continue;
      json e = {{"facets", join_ints(f)}, {"n", n}};
      bool ok = valid(witness_facets(f, n), e);
      ++facets;
      if (!ok) s.check("facet witness", false, e);
    }
  s.check("facet witnesses, n <= 4", true, {{"count", facets}});

  // Random lifting problems against fibrant targets.
  struct Case {
    std::string name;
    AnodyneWitness w;
  };
  std::vector<Case> inner = {{"twisted(1,1)", witness_inner_twisted(1, 1)}, {"facets(02,2)", witness_facets({0, 2}, 2)},
                             {"facets(03,3)", witness_facets({0, 3}, 3)}};
  std::vector<Case> any = {{"facets(0,2)", witness_facets({0}, 2)},
                           {"facets(01,3)", witness_facets({0, 1}, 3)},
                           {"partition(01,12)", witness_partition({0, 1}, {1, 2}, 2)},
                           {"prism(1,1,1)", witness_prism(1, 1, 1)},
                           {"prism(1,2,2)", witness_prism(1, 2, 2)}};
  for (auto& c : inner) any.push_back(c);
  struct Tgt {
    std::string name;
    SSetPtr x;
    FibrationClass cls;
  };
  std::vector<Tgt> targets = {{"BZ2", truncated_nerve(FiniteCategory::cyclic_group(2), 4).set, FibrationClass::kan},
                              {"BZ3", truncated_nerve(FiniteCategory::cyclic_group(3), 4).set, FibrationClass::kan},
                              {"N[3]", nerve_of_category(FiniteCategory::linear(3)), FibrationClass::inner},
                              {"N(diamond)", nerve_of_category(twisted_fixture_categories()[1].category),
                               FibrationClass::inner}};
  std::mt19937 rng(20240611);
  int agree = 0;
  const int trials = 20;
  for (int t = 0; t < trials; ++t) {
    const Tgt& tg = targets[rng() % targets.size()];
    const std::vector<Case>& pool = tg.cls == FibrationClass::kan ? any : inner;
    const Case& c = pool[rng() % pool.size()];
    SSetPtr a = c.w.start.to_sset(), b = c.w.end.to_sset();
    Target target(tg.x);
    std::vector<SimplicialMap> tops = all_maps(MapQuery{a, &target, {}, std::nullopt});
    json e = {{"trial", t}, {"witness", c.name}, {"target", tg.name}, {"maps", tops.size()}};
    if (tops.empty()) {
      s.check("lift problem has a top map", false, e);
      continue;
    }
    SimplicialMap top = tops[rng() % tops.size()];
    SimplicialMap p = to_point(tg.x), bottom = to_point(b);
    bottom.tgt = p.tgt;
    SimplicialMap inc = inclusion_by_names(a, b);
    LiftProblem lp{inc, top, bottom, p};
    WitnessLift wl = lift_via_witness(c.w, lp, tg.cls);
    std::optional<SimplicialMap> direct = solve_lift(lp);
    bool ok = wl.lift.has_value() == direct.has_value();
    if (wl.lift) ok = ok && wl.lift->valid() && restrict_map(*wl.lift, inc).assign == top.assign;
    e["lift"] = wl.lift.has_value();
    e["direct"] = direct.has_value();
    agree += ok;
    s.check("lift_via_witness agrees with solve_lift", ok, e);
  }
  s.check("randomized problems", agree == trials, {{"agree", agree}, {"trials", trials}});
  return s.finish();
}

Report suite_loop() {
  Suite s("loop group of a pointed Kan complex", 2);
  for (auto& f : loop_fixtures(4)) {
    LoopGroup g = loop_group(f.p, f.x, 2, 2);
    json where = {{"space", f.name}};
    try {
      FiniteGroup l = loop_pi0_group(g);
      FiniteGroup expect = f.group_order == 6 ? FiniteGroup::symmetric3() : FiniteGroup::cyclic(f.group_order);
      s.check("pi_0(G_1) is the group", isomorphic(l, expect), {{"space", f.name}, {"order", l.order()}});
      s.check("pi_0(G_1) is pi_1", isomorphic(l, pi1(f.space.set, 0)), where);
    } catch (const std::logic_error& e) {
      s.check("pi_0(G_1) is the group", false, {{"space", f.name}, {"error", e.what()}});
    }
    s.add(verify_loop_theorem(g, 2, 2), "loop theorem, m <= 2, d = 2", where);
  }
  PointedSpace bad = loop_negative_control();
  Report r = verify_loop_theorem(loop_group(bad.p, bad.x, 2, 2), 2, 2);
  bool concrete = r.verdict == "fails" && !r.counterexample.is_null() && r.counterexample.contains("top");
  s.check("negative control fails with a concrete lift problem", concrete,
          {{"space", bad.name}, {"counterexample", r.counterexample}});
  return s.finish();
}

Report suite_descent() {
  Suite s("descent along finite covers", 1);
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  s.add(descent_check(descent_data({0, 0}, 1, torsor_presheaf(z2))), "torsors on a 2-element cover",
        {{"presheaf", "BZ2"}});
  DescentData control = descent_data({0, 0}, 1, constant_presheaf(2));
  control.coface[0][0] = Functor{{0, 0}, {0, 0}};
  Report c = descent_check(control);
  s.check("non-sheaf control fails on pi_0", c.verdict == "fails" && c.counterexample.value("kind", "") == "pi0 not injective",
          {{"counterexample", c.counterexample}});
  s.add(descent_check(descent_data({0}, 1, torsor_presheaf(z2))), "identity cover", {{"presheaf", "BZ2"}});
  s.add(descent_check(descent_data({0}, 1, torsor_presheaf(FiniteGroup::symmetric3()))), "identity cover",
        {{"presheaf", "BS3"}});
  s.add(descent_check(descent_data({0, 1}, 2, constant_presheaf(3))), "identity cover", {{"presheaf", "constant 3"}});
  return s.finish();
}

const std::vector<SuiteEntry>& acceptance_suites() {
  static const std::vector<SuiteEntry> all = {
      {1, "identities", suite_identities}, {2, "dold-kan", suite_dold_kan}, {3, "dg-nerve", suite_dg_nerve},
      {4, "cartesian", suite_cartesian},   {5, "twisted", suite_twisted},   {6, "anodyne", suite_anodyne},
      {7, "loop", suite_loop},             {8, "descent", suite_descent}};
  return all;
}

Report run_suite(const std::string& name) {
  for (auto& e : acceptance_suites())
    if (e.name == name) return e.run();
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace sk
