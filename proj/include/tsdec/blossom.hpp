#pragma once

#include <cstdint>
#include <vector>

namespace tsdec {

// Exact minimum-weight perfect matching on a complete graph with
// non-negative integer weights. `dist` must be symmetric with zero
// diagonal and even order. Returns mate[i] = partner of vertex i.
//
// Primal-dual blossom algorithm, O(n^3) worst case. A greedy pass first
// matches mutually-nearest pairs on tight edges, which leaves few
// augmentation phases on sparse matching instances.
std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<std::int64_t>>& dist);

}  // namespace tsdec
