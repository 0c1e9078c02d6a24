#pragma once

#include <algorithm>
#include <vector>

namespace invspan {

// Element sets are sorted vectors of ground-set indices. Keeping them sorted
// makes set algebra and lexicographic comparison deterministic.
using ElemSet = std::vector<int>;

inline ElemSet make_set(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline bool set_contains(const ElemSet& a, int x) {
  return std::binary_search(a.begin(), a.end(), x);
}

inline ElemSet set_diff(const ElemSet& a, const ElemSet& b) {
  ElemSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ElemSet set_intersect(const ElemSet& a, const ElemSet& b) {
  ElemSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline ElemSet set_union(const ElemSet& a, const ElemSet& b) {
  ElemSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool is_subset(const ElemSet& a, const ElemSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace invspan
