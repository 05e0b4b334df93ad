#pragma once

#include <utility>
#include <vector>

#include "graphtsp/matching.hpp"
#include "graphtsp/multigraph.hpp"
#include "graphtsp/report.hpp"

namespace graphtsp {

/// Rooted DFS tree with its back edges, the tree edge at the head of each
/// back edge's fundamental cycle, the pairing between them, and the removable
/// set R built from both.
struct DfsStructure {
  int root = 0;
  std::vector<int> tree_edges;                 // ascending ids
  std::vector<int> back_edges;                 // ascending ids
  std::vector<std::pair<int, int>> tb_map;     // (back edge, its tree edge)
  std::vector<std::pair<int, int>> pairing;    // (tree edge, partner back edge)
  std::vector<int> removable;                  // ascending ids
  std::vector<char> in_removable;              // per-edge mask
};

/// DFS from `root`, incidence lists explored in edge-id order. Works on any
/// connected multigraph.
DfsStructure dfs_structure(const Multigraph& g, int root);

/// -1 on the removable set, +1 elsewhere.
WeightVector ms_weights(const Multigraph& g, const std::vector<int>& removable);

/// Drop the matching edges inside R, double the matching edges outside R.
/// The result is spanning, connected and even when `removable` came from a
/// DFS pairing of a bridgeless cubic host.
EulerianSubgraph build_eulerian_h(const Multigraph& g, const PerfectMatching& m,
                                  const std::vector<int>& removable);

/// Swap every matched pair edge for its partner back edge; the result is
/// again a spanning tree.
std::vector<int> swapped_spanning_tree(const DfsStructure& d,
                                       const PerfectMatching& m);

/// The multiplicity-1 edges of a cubic-host report, decomposed into
/// vertex-disjoint cycles covering every vertex.
std::vector<std::vector<int>> extract_cycle_cover(const SolveReport& report);

/// Contraction of maximal degree-2 paths to single edges. paths[e'] lists the
/// host edges of contracted edge e' in walk order (length 1 when nothing was
/// contracted); vertex_map sends degree-3 host vertices to contracted ids.
struct ContractionResult {
  Multigraph contracted;
  std::vector<std::vector<int>> paths;
  std::vector<int> vertex_map;
};

ContractionResult contract_degree2_paths(const Multigraph& g);

/// |Q2|-1 on the removable set, |Q2|+1 elsewhere, where |Q2| is the number of
/// interior degree-2 vertices of the contracted edge's path.
WeightVector subcubic_weights(const Multigraph& gc,
                              const std::vector<int>& removable,
                              const std::vector<std::vector<int>>& paths);

/// Pull a contracted-graph solution back to the host: paths of doubled edges
/// for matched edges outside R, paths missing their first edge (and doubled
/// elsewhere) for matched edges inside R.
EulerianSubgraph expand_to_subcubic(const EulerianSubgraph& hc,
                                    const ContractionResult& contraction,
                                    const Multigraph& g,
                                    const PerfectMatching& m,
                                    const std::vector<int>& removable);

struct MsOptions {
  bool require_simple = false;
};

/// Full pipeline for connected bridgeless subcubic multigraphs: contract,
/// DFS from vertex 0, weight, match, expand, walk, shortcut. The subgraph has
/// at most (4n-2)/3 edges.
SolveReport solve_ms(const Multigraph& g, const MsOptions& options = {});

}  // namespace graphtsp
