#include "simpkit/ordinal.hpp"

#include <sstream>
#include <stdexcept>

namespace sk {

OrdMap identity_map(int n) {
  OrdMap a(n + 1);
  for (int i = 0; i <= n; ++i) a[i] = i;
  return a;
}

OrdMap coface(int n, int i) {
  OrdMap a(n);
  for (int j = 0; j < n; ++j) a[j] = j < i ? j : j + 1;
  return a;
}

OrdMap codegeneracy(int n, int i) {
  OrdMap a(n + 2);
  for (int j = 0; j <= n + 1; ++j) a[j] = j <= i ? j : j - 1;
  return a;
}

OrdMap compose(const OrdMap& b, const OrdMap& a) {
  OrdMap c(a.size());
  for (size_t j = 0; j < a.size(); ++j) c[j] = b[a[j]];
  return c;
}

bool is_monotone(const OrdMap& a, int n) {
  for (size_t j = 0; j < a.size(); ++j) {
    if (a[j] < 0 || a[j] > n) return false;
    if (j > 0 && a[j] < a[j - 1]) return false;
  }
  return true;
}

bool is_injective(const OrdMap& a) {
  for (size_t j = 1; j < a.size(); ++j)
    if (a[j] == a[j - 1]) return false;
  return true;
}

bool is_surjective(const OrdMap& a, int n) {
  if (a.empty()) return n < 0;
  if (a.front() != 0 || a.back() != n) return false;
  for (size_t j = 1; j < a.size(); ++j)
    if (a[j] - a[j - 1] > 1) return false;
  return true;
}

void epi_mono(const OrdMap& a, OrdMap& epi, OrdMap& mono) {
  epi.assign(a.size(), 0);
  mono.clear();
  for (size_t j = 0; j < a.size(); ++j) {
    if (mono.empty() || mono.back() != a[j]) mono.push_back(a[j]);
    epi[j] = static_cast<int>(mono.size()) - 1;
  }
}

uint64_t image_mask(const OrdMap& a) {
  uint64_t m = 0;
  for (int v : a) m |= uint64_t{1} << v;
  return m;
}

OrdMap mono_from_mask(uint64_t mask) {
  OrdMap a;
  for (int v = 0; mask; ++v, mask >>= 1)
    if (mask & 1) a.push_back(v);
  return a;
}

std::vector<OrdMap> monotone_maps(int m, int n) {
  std::vector<OrdMap> out;
  if (m < 0) {
    out.push_back({});
    return out;
  }
  OrdMap cur(m + 1, 0);
  while (true) {
    out.push_back(cur);
    int j = m;
    while (j >= 0 && cur[j] == n) --j;
    if (j < 0) break;
    ++cur[j];
    for (int t = j + 1; t <= m; ++t) cur[t] = cur[j];
  }
  return out;
}

std::vector<OrdMap> surjections(int m, int n) {
  std::vector<OrdMap> out;
  for (auto& a : monotone_maps(m, n))
    if (is_surjective(a, n)) out.push_back(a);
  return out;
}

std::vector<OrdMap> injections(int m, int n) {
  std::vector<OrdMap> out;
  for (auto& a : monotone_maps(m, n))
    if (is_injective(a)) out.push_back(a);
  return out;
}

OrdMap twisted_double(const OrdMap& a, int n) {
  int m = static_cast<int>(a.size()) - 1;
  OrdMap b(2 * m + 2);
  for (int j = 0; j <= m; ++j) b[j] = a[j];
  for (int j = m + 1; j <= 2 * m + 1; ++j) b[j] = 2 * n + 1 - a[2 * m + 1 - j];
  return b;
}

OrdMap opposite_map(const OrdMap& a, int n) {
  int m = static_cast<int>(a.size()) - 1;
  OrdMap b(a.size());
  for (int j = 0; j <= m; ++j) b[j] = n - a[m - j];
  return b;
}

DegeneracyWord DegeneracyWord::from_surjection(const OrdMap& eta) {
  DegeneracyWord w;
  for (int i = static_cast<int>(eta.size()) - 2; i >= 0; --i)
    if (eta[i] == eta[i + 1]) w.indices.push_back(i);
  return w;
}

OrdMap DegeneracyWord::to_surjection(int k) const {
  // s_{ik} acts first, so eta = sigma_{ik} o ... o sigma_{i1}.
  OrdMap eta = identity_map(k);
  int cur = k;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
    // eta currently [cur] -> [k]; precompose with sigma_{i} : [cur+1] -> [cur].
    eta = compose(eta, codegeneracy(cur, *it));
    ++cur;
  }
  return eta;
}

DegeneracyWord DegeneracyWord::then(const DegeneracyWord& outer, int k) const {
  OrdMap inner = to_surjection(k);
  int d = k + static_cast<int>(indices.size());
  OrdMap o = outer.to_surjection(d);
  return from_surjection(compose(inner, o));
}

bool DegeneracyWord::valid() const {
  for (size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 0) return false;
    if (j > 0 && indices[j] >= indices[j - 1]) return false;
  }
  return true;
}

std::string to_string(const OrdMap& a) {
  std::ostringstream os;
  os << '[';
  for (size_t j = 0; j < a.size(); ++j) os << (j ? "," : "") << a[j];
  os << ']';
  return os.str();
}

}  // namespace sk
