#include "simpkit/twisted.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "simpkit/lifting.hpp"

namespace sk {

namespace {

OrdMap range_map(int from, int len) {
  OrdMap r(len);
  std::iota(r.begin(), r.end(), from);
  return r;
}

}  // namespace

Key TwistedLevels::front(const Key& x, int n) const { return s_->act(x, 2 * n + 1, range_map(0, n + 1)); }
Key TwistedLevels::back(const Key& x, int n) const { return s_->act(x, 2 * n + 1, range_map(n + 1, n + 1)); }

std::vector<Key> FilteredLevels::level(int n) const {
  std::vector<Key> out;
  for (auto& x : inner_->level(n))
    if (keep_(x, n)) out.push_back(x);
  return out;
}

TwistedArrow twisted_arrow(LevelsPtr s, int d) {
  TwistedArrow t;
  t.levels = std::make_shared<TwistedLevels>(s);
  auto none = [](const Key&, int) { return Key{}; };
  t.pair = std::make_shared<PullbackLevels>(s, std::make_shared<OppositeLevels>(s), none, none);
  t.tw = present(*t.levels, d);
  t.base = present(*t.pair, d);
  auto tw = t.levels;
  t.lambda = map_from_keys(t.tw, t.base, [tw](const Key& x, int n) {
    Key a = tw->front(x, n), b = tw->back(x, n);
    Key out{static_cast<int>(a.size())};
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
  });
  return t;
}

TwistedArrow twisted_arrow(const SSetPtr& s, int d) { return twisted_arrow(std::make_shared<PresentedLevels>(s), d); }

TwistedArrow twisted_arrow(const FiniteCategory& c, int d) {
  c.validate();
  return twisted_arrow(std::make_shared<NerveLevels>(c), d);
}

Report lambda_check(const TwistedArrow& t, int d) {
  Report r = classify_fibration(t.lambda, FibrationClass::right, d);
  r.claim = "Tw S -> S x S^op is a right fibration";
  return r;
}

Presentation lambda_fibre(const TwistedArrow& t, const Key& x, const Key& y, int d) {
  auto tw = t.levels;
  auto keep = [tw, x, y](const Key& z, int n) {
    OrdMap c(n + 1, 0);
    return tw->front(z, n) == tw->base()->act(x, 0, c) && tw->back(z, n) == tw->base()->act(y, 0, c);
  };
  return present(FilteredLevels(tw, keep), d);
}

Presentation nerve_presentation(const FiniteCategory& c, int min_bound) {
  c.validate();
  if (c.has_unbounded_chains()) throw std::invalid_argument("nerve_presentation: category has unbounded chains");
  return present(NerveLevels(c), std::max(c.longest_chain(), min_bound));
}

SimplicialMap nerve_of_functor(const Presentation& src, const Presentation& tgt, const Functor& f) {
  return map_from_keys(src, tgt, [&](const Key& x, int n) {
    Key y{f.obj[x[0]]};
    for (int j = 1; j <= n; ++j) y.push_back(f.arr[x[j]]);
    return y;
  });
}

}  // namespace sk
