#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphtsp/matching.hpp"
#include "graphtsp/multigraph.hpp"

namespace graphtsp {

/// Everything a solver run certifies: the Eulerian subgraph, the shortcut
/// tour, the guarantee it was checked against, and the construction
/// witnesses. Bounds are rationals with denominator 3, kept exact as
/// `bound_num / 3`.
struct SolveReport {
  std::string algorithm;
  EulerianSubgraph h;
  Tour tour;
  std::int64_t h_edges = 0;
  std::int64_t bound_num = 0;
  PerfectMatching matching_used;
  std::vector<int> r_set;
  std::vector<int> tree_star;
  std::optional<std::vector<std::vector<int>>> cycle_cover;
  /// False when the witnesses live on a derived graph (e.g. after contracting
  /// degree-2 paths) rather than on the solved host.
  bool certificates_on_host = true;
  double wall_ms = 0.0;

  double bound() const { return static_cast<double>(bound_num) / 3.0; }
};

}  // namespace graphtsp
