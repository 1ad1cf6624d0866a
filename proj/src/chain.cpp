#include "simpkit/chain.hpp"

#include <algorithm>
#include <stdexcept>

#include "simpkit/constructions.hpp"

namespace sk {

ChainComplex::ChainComplex(int lo, int hi, std::vector<int> ranks) : lo_(lo), hi_(hi), ranks_(std::move(ranks)) {
  if (hi_ < lo_) {
    lo_ = 0;
    hi_ = -1;
    ranks_.clear();
    return;
  }
  if (static_cast<int>(ranks_.size()) != hi_ - lo_ + 1) throw std::invalid_argument("chain complex: rank list size");
  for (int n = lo_; n <= hi_; ++n) d_.emplace_back(rank(n + 1), rank(n));
}

ChainComplex ChainComplex::concentrated(int degree, int r) { return ChainComplex(degree, degree, {r}); }

ChainComplex ChainComplex::homological(const std::vector<int>& ranks, const std::vector<Matrix>& dh) {
  int top = static_cast<int>(ranks.size()) - 1;
  if (top < 0) return zero();
  std::vector<int> r;
  for (int m = top; m >= 0; --m) r.push_back(ranks[m]);
  ChainComplex c(-top, 0, r);
  for (int m = 1; m <= top && m - 1 < static_cast<int>(dh.size()); ++m) c.set_d(-m, dh[m - 1]);
  return c;
}

int ChainComplex::rank(int n) const {
  if (n < lo_ || n > hi_) return 0;
  return ranks_[n - lo_];
}

Matrix ChainComplex::d(int n) const {
  if (n < lo_ || n > hi_) return Matrix(rank(n + 1), rank(n));
  return d_[n - lo_];
}

void ChainComplex::set_d(int n, const Matrix& m) {
  if (m.rows() != rank(n + 1) || m.cols() != rank(n))
    throw std::invalid_argument("chain complex: differential has wrong shape in degree " + std::to_string(n));
  if (n < lo_ || n > hi_) {
    if (!m.is_zero()) throw std::invalid_argument("chain complex: differential outside support");
    return;
  }
  d_[n - lo_] = m;
}

void ChainComplex::check() const {
  for (int n = lo_; n <= hi_; ++n) {
    const Matrix& m = d_[n - lo_];
    if (m.rows() != rank(n + 1) || m.cols() != rank(n))
      throw std::logic_error("chain complex: bad differential shape in degree " + std::to_string(n));
    if (!(d(n + 1) * m).is_zero()) throw std::logic_error("chain complex: d o d != 0 at degree " + std::to_string(n));
  }
}

nlohmann::json ChainComplex::to_json() const {
  nlohmann::json j;
  j["support"] = {lo_, hi_};
  j["ranks"] = nlohmann::json::object();
  j["d"] = nlohmann::json::object();
  for (int n = lo_; n <= hi_; ++n) {
    j["ranks"][std::to_string(n)] = rank(n);
    if (!d(n).is_zero()) j["d"][std::to_string(n)] = d(n).to_json();
  }
  return j;
}

ChainComplex ChainComplex::from_json(const nlohmann::json& j) {
  int lo = j.at("support").at(0).get<int>(), hi = j.at("support").at(1).get<int>();
  std::vector<int> r;
  for (int n = lo; n <= hi; ++n) {
    auto key = std::to_string(n);
    r.push_back(j.at("ranks").contains(key) ? j["ranks"][key].get<int>() : 0);
  }
  ChainComplex c(lo, hi, r);
  if (j.contains("d"))
    for (auto& [k, v] : j["d"].items()) {
      int n = std::stoi(k);
      c.set_d(n, Matrix::from_json(v, c.rank(n + 1), c.rank(n)));
    }
  c.check();
  return c;
}

bool ChainComplex::operator==(const ChainComplex& o) const {
  int a = std::min(lo_, o.lo_), b = std::max(hi_, o.hi_);
  for (int n = a; n <= b; ++n)
    if (rank(n) != o.rank(n) || !(d(n) == o.d(n))) return false;
  return true;
}

Matrix ChainHom::at(const ChainComplex& a, const ChainComplex& b, int n) const {
  auto it = comp.find(n);
  if (it != comp.end()) return it->second;
  return Matrix(b.rank(n + p), a.rank(n));
}

ChainHom identity_hom(const ChainComplex& c) {
  ChainHom f;
  for (int n = c.lo(); n <= c.hi(); ++n) f.comp[n] = Matrix::identity(c.rank(n));
  return f;
}

ChainHom compose(const ChainComplex& a, const ChainComplex& b, const ChainComplex& c, const ChainHom& g,
                 const ChainHom& f) {
  ChainHom h;
  h.p = f.p + g.p;
  for (int n = a.lo(); n <= a.hi(); ++n) h.comp[n] = g.at(b, c, n + f.p) * f.at(a, b, n);
  return h;
}

ChainHom add(const ChainComplex& a, const ChainComplex& b, const ChainHom& f, const ChainHom& g) {
  if (f.p != g.p) throw std::invalid_argument("add: degree mismatch");
  ChainHom h;
  h.p = f.p;
  for (int n = a.lo(); n <= a.hi(); ++n) h.comp[n] = f.at(a, b, n) + g.at(a, b, n);
  return h;
}

ChainHom scale(const ChainHom& f, const Int& s) {
  ChainHom h = f;
  for (auto& [n, m] : h.comp) m = m.scaled(s);
  return h;
}

ChainHom differential(const ChainComplex& a, const ChainComplex& b, const ChainHom& f) {
  ChainHom h;
  h.p = f.p + 1;
  Int sign = (f.p % 2 == 0) ? 1 : -1;
  for (int n = a.lo(); n <= a.hi(); ++n)
    h.comp[n] = b.d(n + f.p) * f.at(a, b, n) - (f.at(a, b, n + 1) * a.d(n)).scaled(sign);
  return h;
}

bool hom_equal(const ChainComplex& a, const ChainComplex& b, const ChainHom& f, const ChainHom& g) {
  if (f.p != g.p) return false;
  for (int n = a.lo(); n <= a.hi(); ++n)
    if (!(f.at(a, b, n) == g.at(a, b, n))) return false;
  return true;
}

bool is_chain_map(const ChainComplex& a, const ChainComplex& b, const ChainHom& f) {
  ChainHom h = differential(a, b, f);
  for (auto& [n, m] : h.comp)
    if (!m.is_zero()) return false;
  return true;
}

namespace {

int hom_rank(const ChainComplex& a, const ChainComplex& b, int p) {
  int r = 0;
  for (int n = a.lo(); n <= a.hi(); ++n) r += a.rank(n) * b.rank(n + p);
  return r;
}

}  // namespace

std::vector<Int> hom_vector(const ChainComplex& a, const ChainComplex& b, const ChainHom& f) {
  std::vector<Int> v;
  for (int n = a.lo(); n <= a.hi(); ++n) {
    Matrix m = f.at(a, b, n);
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  }
  return v;
}

Matrix hom_column(const ChainComplex& a, const ChainComplex& b, const ChainHom& f) {
  return Matrix::column(hom_vector(a, b, f));
}

ChainHom hom_element(const ChainComplex& a, const ChainComplex& b, int p, const Matrix& column) {
  if (column.rows() != hom_rank(a, b, p) || column.cols() != 1)
    throw std::invalid_argument("hom_element: vector has wrong length");
  ChainHom f;
  f.p = p;
  int at = 0;
  for (int n = a.lo(); n <= a.hi(); ++n) {
    Matrix m(b.rank(n + p), a.rank(n));
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) m(i, j) = column(at++, 0);
    f.comp[n] = m;
  }
  return f;
}

ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b) {
  if (a.empty() || b.empty()) return ChainComplex::zero();
  int lo = b.lo() - a.hi(), hi = b.hi() - a.lo();
  std::vector<int> r;
  for (int p = lo; p <= hi; ++p) r.push_back(hom_rank(a, b, p));
  ChainComplex h(lo, hi, r);
  for (int p = lo; p <= hi; ++p) {
    Matrix m(h.rank(p + 1), h.rank(p));
    for (int e = 0; e < h.rank(p); ++e) {
      Matrix col(h.rank(p), 1);
      col(e, 0) = 1;
      auto v = hom_vector(a, b, differential(a, b, hom_element(a, b, p, col)));
      for (int i = 0; i < m.rows(); ++i) m(i, e) = v[i];
    }
    h.set_d(p, m);
  }
  return h;
}

CohomologyClasses cohomology_classes(const ChainComplex& c, int n) {
  CohomologyClasses out;
  out.cycles = kernel(c.d(n));
  auto x = solve(out.cycles, c.d(n - 1));
  if (!x) throw std::logic_error("cohomology: boundaries are not cycles");
  out.boundaries = *x;
  out.group = cokernel_group(out.boundaries);
  return out;
}

AbelianGroup cohomology(const ChainComplex& c, int n) { return cohomology_classes(c, n).group; }

bool is_acyclic(const ChainComplex& c) {
  for (int n = c.lo(); n <= c.hi(); ++n)
    if (!cohomology(c, n).trivial()) return false;
  return true;
}

bool is_boundary(const ChainComplex& c, int n, const Matrix& z) { return solve(c.d(n - 1), z).has_value(); }

ChainComplex truncate_le(const ChainComplex& c, int n) {
  if (c.empty() || n < c.lo()) return ChainComplex::zero();
  if (n >= c.hi()) return c;
  Matrix k = kernel(c.d(n));
  std::vector<int> r;
  for (int m = c.lo(); m < n; ++m) r.push_back(c.rank(m));
  r.push_back(k.cols());
  ChainComplex t(c.lo(), n, r);
  for (int m = c.lo(); m < n - 1; ++m) t.set_d(m, c.d(m));
  auto x = solve(k, c.d(n - 1));
  if (!x) throw std::logic_error("truncate_le: boundaries are not cycles");
  t.set_d(n - 1, *x);
  return t;
}

ChainComplex truncate_ge(const ChainComplex& c, int n) {
  if (c.empty() || n > c.hi()) return ChainComplex::zero();
  if (n <= c.lo()) return c;
  Matrix b = image_basis(c.d(n - 1));
  if (is_saturated(b)) {
    Matrix q = complement_basis(b);
    std::vector<int> r = {q.cols()};
    for (int m = n + 1; m <= c.hi(); ++m) r.push_back(c.rank(m));
    ChainComplex t(n, c.hi(), r);
    t.set_d(n, c.d(n) * q);
    for (int m = n + 1; m <= c.hi(); ++m) t.set_d(m, c.d(m));
    return t;
  }
  std::vector<int> r = {b.cols()};
  for (int m = n; m <= c.hi(); ++m) r.push_back(c.rank(m));
  ChainComplex t(n - 1, c.hi(), r);
  t.set_d(n - 1, b);
  for (int m = n; m <= c.hi(); ++m) t.set_d(m, c.d(m));
  return t;
}

ChainHom truncate_le_map(const ChainComplex& a, const ChainComplex& b, const ChainHom& f, int n) {
  if (f.p != 0) throw std::invalid_argument("truncate_le_map: degree must be 0");
  ChainComplex ta = truncate_le(a, n), tb = truncate_le(b, n);
  ChainHom g;
  for (int m = ta.lo(); m <= ta.hi(); ++m) {
    if (m < n) {
      g.comp[m] = f.at(a, b, m);
      continue;
    }
    Matrix src = n < a.hi() ? kernel(a.d(n)) : Matrix::identity(a.rank(n));
    Matrix img = f.at(a, b, n) * src;
    if (n < b.hi()) {
      auto x = solve(kernel(b.d(n)), img);
      if (!x) throw std::logic_error("truncate_le_map: not a chain map");
      img = *x;
    }
    g.comp[m] = img;
  }
  return g;
}

ChainComplex mapping_cone(const ChainComplex& a, const ChainComplex& b, const ChainHom& f) {
  if (f.p != 0) throw std::invalid_argument("mapping_cone: degree must be 0");
  int lo = std::min(a.empty() ? b.lo() : a.lo() - 1, b.empty() ? a.lo() - 1 : b.lo());
  int hi = std::max(a.empty() ? b.hi() : a.hi() - 1, b.empty() ? a.hi() - 1 : b.hi());
  if (a.empty() && b.empty()) return ChainComplex::zero();
  std::vector<int> r;
  for (int n = lo; n <= hi; ++n) r.push_back(a.rank(n + 1) + b.rank(n));
  ChainComplex c(lo, hi, r);
  for (int n = lo; n <= hi; ++n) {
    Matrix m(c.rank(n + 1), c.rank(n));
    int a1 = a.rank(n + 1), a2 = a.rank(n + 2);
    m.set_block(0, 0, -a.d(n + 1));
    m.set_block(a2, 0, f.at(a, b, n + 1));
    m.set_block(a2, a1, b.d(n));
    c.set_d(n, m);
  }
  return c;
}

bool is_quasi_iso(const ChainComplex& a, const ChainComplex& b, const ChainHom& f) {
  return is_acyclic(mapping_cone(a, b, f));
}

ChainComplex shift(const ChainComplex& c, int k) {
  if (c.empty()) return c;
  std::vector<int> r;
  for (int n = c.lo(); n <= c.hi(); ++n) r.push_back(c.rank(n));
  ChainComplex s(c.lo() - k, c.hi() - k, r);
  Int sign = (k % 2 == 0) ? 1 : -1;
  for (int n = c.lo(); n <= c.hi(); ++n) s.set_d(n - k, c.d(n).scaled(sign));
  return s;
}

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  std::vector<int> r;
  for (int n = lo; n <= hi; ++n) r.push_back(a.rank(n) + b.rank(n));
  ChainComplex c(lo, hi, r);
  for (int n = lo; n <= hi; ++n) {
    Matrix m(c.rank(n + 1), c.rank(n));
    m.set_block(0, 0, a.d(n));
    m.set_block(a.rank(n + 1), a.rank(n), b.d(n));
    c.set_d(n, m);
  }
  return c;
}

std::vector<uint64_t> koszul_basis(int n, int m) {
  std::vector<uint64_t> out;
  for (uint64_t s = 1; s < (uint64_t{1} << (n + 1)); ++s)
    if (popcount(s) == m + 1) out.push_back(s);
  return out;
}

ChainComplex koszul(int n) {
  std::vector<int> ranks;
  std::vector<Matrix> dh;
  for (int m = 0; m <= n; ++m) ranks.push_back(static_cast<int>(koszul_basis(n, m).size()));
  for (int m = 1; m <= n; ++m) {
    auto src = koszul_basis(n, m), tgt = koszul_basis(n, m - 1);
    Matrix d(static_cast<int>(tgt.size()), static_cast<int>(src.size()));
    for (size_t j = 0; j < src.size(); ++j)
      for (int i = 0; i <= m; ++i) {
        uint64_t f = mask_face(src[j], i);
        int row = static_cast<int>(std::lower_bound(tgt.begin(), tgt.end(), f) - tgt.begin());
        d(row, static_cast<int>(j)) += (i % 2 == 0) ? 1 : -1;
      }
    dh.push_back(d);
  }
  return ChainComplex::homological(ranks, dh);
}

}  // namespace sk
