#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hoeffding/types.hpp"

namespace hoeffding {

// A subset of the input indices {1,...,d}, stored as a bit mask with
// bit (i-1) standing for input i. The empty set is mask 0.
using SubsetMask = std::uint16_t;

// Hard cap: all 2^d subsets are materialized.
inline constexpr int kMaxInputs = 12;

inline int cardinality(SubsetMask a) { return std::popcount(a); }

// True iff b ⊆ a.
inline bool mask_contains(SubsetMask a, SubsetMask b) { return (b & ~a) == 0; }

inline SubsetMask full_mask(int d) {
  return static_cast<SubsetMask>((1u << d) - 1u);
}

// All 2^d subsets ordered by cardinality ascending, ties broken by mask
// value ascending. This order is used everywhere a report or matrix is
// indexed by subsets.
std::vector<SubsetMask> enumerate_subsets(int d);

// The down-set P(a), in the same canonical order.
std::vector<SubsetMask> subsets_of(SubsetMask a);

// 1-based sorted index list, e.g. "[1,3]"; the empty set is "[]".
std::string subset_label(SubsetMask a);

// 1-based member indices, ascending.
std::vector<int> subset_members(SubsetMask a);

// Σ_{B ⊆ a} (−1)^{|a|−|B|} values[B]. Throws on a missing key or on
// mismatched vector lengths.
Vector mobius_alternating_sum(const std::map<SubsetMask, Vector>& values,
                              SubsetMask a);

// Comparables of a: P(a) ∪ {B : a ⊆ B}. Uncomparables: the complement in
// P(D). Both returned in canonical order.
std::vector<SubsetMask> comparables(SubsetMask a, int d);
std::vector<SubsetMask> uncomparables(SubsetMask a, int d);

}  // namespace hoeffding
