// Order-preserving maps between finite ordinals [m] = {0 < 1 < ... < m}.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sk {

// a[j] is the image of j; a map [m] -> [n] has size m+1. The codomain is
// carried by context.
using OrdMap = std::vector<int>;

OrdMap identity_map(int n);
// delta_i : [n-1] -> [n], skips i.
OrdMap coface(int n, int i);
// sigma_i : [n+1] -> [n], hits i twice.
OrdMap codegeneracy(int n, int i);
// (b o a)(j) = b[a[j]].
OrdMap compose(const OrdMap& b, const OrdMap& a);

bool is_monotone(const OrdMap& a, int n);
bool is_injective(const OrdMap& a);
bool is_surjective(const OrdMap& a, int n);

// a = mono o epi with epi : [m] -> [r] surjective and mono : [r] -> [n].
void epi_mono(const OrdMap& a, OrdMap& epi, OrdMap& mono);

// Image bitmask of a map (bit v set iff v is hit).
uint64_t image_mask(const OrdMap& a);
// The injective map [r] -> [n] whose image is the given mask.
OrdMap mono_from_mask(uint64_t mask);

// All monotone maps [m] -> [n] in lexicographic order.
std::vector<OrdMap> monotone_maps(int m, int n);
std::vector<OrdMap> surjections(int m, int n);
std::vector<OrdMap> injections(int m, int n);

// alpha star alpha^op : [2m+1] -> [2n+1].
OrdMap twisted_double(const OrdMap& a, int n);
// alpha^op : [m] -> [n], j -> n - a[m - j].
OrdMap opposite_map(const OrdMap& a, int n);

// Normal form s_{i1} ... s_{ik}, i1 > ... > ik, of a surjection.
struct DegeneracyWord {
  std::vector<int> indices;

  static DegeneracyWord from_surjection(const OrdMap& eta);
  // Surjection [k + len] -> [k] it represents on a k-simplex.
  OrdMap to_surjection(int k) const;
  // Word for (this applied after other): x.s_other then s_this.
  DegeneracyWord then(const DegeneracyWord& outer, int k) const;
  bool valid() const;
};

std::string to_string(const OrdMap& a);

}  // namespace sk
