#include "hoeffding/lattice.hpp"

#include <algorithm>

#include "hoeffding/errors.hpp"

namespace hoeffding {

std::vector<SubsetMask> enumerate_subsets(int d) {
  if (d < 1 || d > kMaxInputs)
    fail(errc::bad_input, "input count must be in [1, " +
                              std::to_string(kMaxInputs) + "], got " +
                              std::to_string(d));
  std::vector<SubsetMask> out(std::size_t(1) << d);
  for (std::size_t m = 0; m < out.size(); ++m)
    out[m] = static_cast<SubsetMask>(m);
  std::stable_sort(out.begin(), out.end(), [](SubsetMask x, SubsetMask y) {
    const int cx = cardinality(x), cy = cardinality(y);
    return cx != cy ? cx < cy : x < y;
  });
  return out;
}

std::vector<SubsetMask> subsets_of(SubsetMask a) {
  std::vector<SubsetMask> out;
  out.reserve(std::size_t(1) << cardinality(a));
  // Standard sub-mask walk, then canonical reorder.
  SubsetMask b = a;
  for (;;) {
    out.push_back(b);
    if (b == 0) break;
    b = static_cast<SubsetMask>((b - 1) & a);
  }
  std::stable_sort(out.begin(), out.end(), [](SubsetMask x, SubsetMask y) {
    const int cx = cardinality(x), cy = cardinality(y);
    return cx != cy ? cx < cy : x < y;
  });
  return out;
}

std::vector<int> subset_members(SubsetMask a) {
  std::vector<int> ix;
  for (int i = 0; i < kMaxInputs; ++i)
    if (a & (1u << i)) ix.push_back(i + 1);
  return ix;
}

std::string subset_label(SubsetMask a) {
  std::string s = "[";
  bool first = true;
  for (int i : subset_members(a)) {
    if (!first) s += ',';
    s += std::to_string(i);
    first = false;
  }
  return s + "]";
}

Vector mobius_alternating_sum(const std::map<SubsetMask, Vector>& values,
                              SubsetMask a) {
  const int ca = cardinality(a);
  Vector acc;
  for (SubsetMask b : subsets_of(a)) {
    auto it = values.find(b);
    if (it == values.end())
      fail(errc::missing_subset_key,
           "mobius_alternating_sum: missing value for subset " +
               subset_label(b));
    const double sign = ((ca - cardinality(b)) % 2 == 0) ? 1.0 : -1.0;
    if (acc.size() == 0)
      acc = sign * it->second;
    else if (acc.size() != it->second.size())
      fail(errc::bad_input, "mobius_alternating_sum: vector length mismatch");
    else
      acc += sign * it->second;
  }
  return acc;
}

std::vector<SubsetMask> comparables(SubsetMask a, int d) {
  std::vector<SubsetMask> out;
  for (SubsetMask b : enumerate_subsets(d))
    if (mask_contains(a, b) || mask_contains(b, a)) out.push_back(b);
  return out;
}

std::vector<SubsetMask> uncomparables(SubsetMask a, int d) {
  std::vector<SubsetMask> out;
  for (SubsetMask b : enumerate_subsets(d))
    if (!mask_contains(a, b) && !mask_contains(b, a)) out.push_back(b);
  return out;
}

}  // namespace hoeffding
