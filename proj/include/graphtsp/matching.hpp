#pragma once

#include <cstdint>
#include <vector>

#include "graphtsp/multigraph.hpp"

namespace graphtsp {

/// Edge ids of a perfect matching, ascending; covers every vertex once.
struct PerfectMatching {
  std::vector<int> edge_ids;
};

/// One integer weight per host edge; negatives are allowed.
struct WeightVector {
  std::vector<std::int64_t> w;
};

std::int64_t matching_weight(const WeightVector& w, const PerfectMatching& m);

bool is_perfect_matching(const Multigraph& g, const PerfectMatching& m);

/// Exact minimum-weight perfect matching (primal-dual blossom, dense O(n^3)).
/// Parallel edges are pre-reduced to their cheapest copy; the result maps back
/// to original edge ids. Throws when n is odd or no perfect matching exists.
PerfectMatching min_weight_perfect_matching(const Multigraph& g,
                                            const WeightVector& w);

/// Complete duplicate-free list via backtracking; parallel edges yield
/// distinct matchings. Guarded by a vertex-count budget.
std::vector<PerfectMatching> enumerate_perfect_matchings(const Multigraph& g,
                                                         int budget = 20);

/// True iff the matching meets every minimal 3-edge cut in exactly one edge.
/// Cuts are found by brute force over edge triples; cubic bridgeless input
/// and a vertex-count budget are required.
bool is_three_cut_matching(const Multigraph& g, const PerfectMatching& m,
                           int budget = 20);

}  // namespace graphtsp
