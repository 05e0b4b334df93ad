#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "graphtsp/matching.hpp"
#include "graphtsp/multigraph.hpp"
#include "graphtsp/report.hpp"

namespace graphtsp {

/// Weighted list of perfect matchings whose incidence vectors average to 1/3
/// on every edge.
struct ConvexCombination {
  struct Term {
    double lambda;
    PerfectMatching matching;
  };
  std::vector<Term> terms;
};

/// The removable gadget: a chorded 4-cycle with p nested rungs, reachable
/// from the rest of the graph only through the 2-cut
/// {u_p u_{p+1}, v_p v_{p+1}}. Paths store u_0..u_{p+1} and v_0..v_{p+1}.
struct RainbowPattern {
  int p = 0;
  std::vector<int> u_path, v_path;
  int apex_a = -1, apex_b = -1;
  int boundary_u_edge = -1;  // u_p u_{p+1}
  int boundary_v_edge = -1;  // v_p v_{p+1}
};

std::optional<RainbowPattern> detect_p_rainbow(const Multigraph& g);

/// One removal step: the graph it applied to, the pattern taken out, and how
/// surviving edges map into the shrunken graph.
struct RainbowRemoval {
  Multigraph before;
  RainbowPattern pattern;
  std::vector<int> vertex_map;    // before-vertex -> core vertex, -1 removed
  std::vector<int> core_edge_src; // core edge -> before edge, -1 for the added edge
  int added_edge = -1;            // id of u''v'' in the shrunken graph
};

struct RainbowStack {
  Multigraph core;
  std::vector<RainbowRemoval> steps;
};

/// Remove rainbow gadgets until none remain, adding the shortcut edge u''v''
/// after each removal. The core stays simple, cubic and bridgeless.
RainbowStack remove_rainbows(const Multigraph& g);

/// Undo the removals: each step replaces the shortcut edge according to how
/// often the solution uses it (0, 1 or 2 times) and splices in a spanning
/// closed walk of the gadget. Grows by exactly 2p+6 edges per step.
EulerianSubgraph reinsert_rainbows(const EulerianSubgraph& h_core,
                                   const RainbowStack& stack);

/// Feasible weights over the enumerated perfect matchings with per-edge
/// average exactly 1/3 (LP feasibility; bridgeless cubic inputs always admit
/// one).
ConvexCombination convex_combination_third(const Multigraph& g,
                                           int enum_budget = 20);

/// The complement of a perfect matching in a cubic graph, split into cycles.
std::vector<std::vector<int>> cycle_cover_from_matching(const Multigraph& g,
                                                        const PerfectMatching& m);

/// Merge cover cycles across chordless 4-cycles: whenever two opposite edges
/// of such a 4-cycle lie in two different cover cycles, swap them for the
/// other two edges. Runs to fixpoint; merged cycles have length >= 8.
std::vector<std::vector<int>> operation_i(const Multigraph& g,
                                          std::vector<std::vector<int>> cover);

/// Connected even-degree edge multiset on a subset of vertices.
struct EulerianFragment {
  std::vector<int> vertices;      // ascending
  std::map<int, int> mult;        // edge id -> copies
  std::int64_t edge_total() const;
};

/// Sum of two fragments sharing >= 2 vertices, minus two copies of one edge
/// at a shared vertex, chosen so the result stays connected and even.
EulerianFragment merge_eulerian(const Multigraph& g, const EulerianFragment& h1,
                                const EulerianFragment& h2);

struct EulerianCover {
  std::vector<EulerianFragment> components;
};

/// Merge components across chordless 5-cycles (components of >= 5 vertices
/// sharing 2 and 3 of the cycle's vertices); each application adds one edge.
EulerianCover operation_ii(const Multigraph& g,
                           const std::vector<std::vector<int>>& cover);

/// Connect the cover's components with a doubled spanning tree of the
/// contracted component graph.
EulerianSubgraph assemble_spanning(const Multigraph& g,
                                   const EulerianCover& cover);

/// Per-matching outcomes of a full run, for bound accounting.
struct MatchcombTrace {
  ConvexCombination combination;           // on the rainbow-free core
  std::vector<std::int64_t> result_edges;  // assembled size per term, on g
  bool k4_core = false;                    // Hamilton-path special case taken
  SolveReport report;
};

MatchcombTrace solve_matchcomb_detailed(const Multigraph& g,
                                        int enum_budget = 20);

/// Best-of-all-matchings pipeline for simple bridgeless cubic graphs with
/// n >= 6: tour length at most (4n-6)/3.
SolveReport solve_matchcomb(const Multigraph& g, int enum_budget = 20);

}  // namespace graphtsp
