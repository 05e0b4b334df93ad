#pragma once

#include <cstdint>
#include <vector>

#include "graphtsp/multigraph.hpp"
#include "graphtsp/report.hpp"

namespace graphtsp {

/// Bridge split of a connected graph: deleting the h bridges leaves h+1
/// components, each a single vertex or bridgeless. `singleton_count` is the
/// number of single-vertex components, i.e. vertices whose incident edges are
/// all bridges.
struct BridgeDecomposition {
  std::vector<int> bridges;
  std::vector<std::vector<int>> components;
  int singleton_count = 0;
};

BridgeDecomposition decompose_bridges(const Multigraph& g);

/// n + 2h - s: a lower bound for both the optimal tour and the subtour LP.
std::int64_t bridge_lower_bound(const Multigraph& g);

/// Solve each bridgeless component, then stitch everything together with
/// every bridge doubled and shortcut once globally. Tour length is at most
/// (4(n+h) - 2(s+1)) / 3.
SolveReport solve_with_bridges(const Multigraph& g);

}  // namespace graphtsp
