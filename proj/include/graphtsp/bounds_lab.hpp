#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "graphtsp/multigraph.hpp"
#include "graphtsp/report.hpp"

namespace graphtsp {

/// Subtour-elimination LP value over the metric completion, computed by a
/// cutting-plane loop with global min-cut separation.
struct SerResult {
  double value = 0.0;
  std::vector<std::vector<int>> active_cuts;
  int iterations = 0;
};

/// Exact minimum graph-TSP tour length by bitmask dynamic programming over
/// the metric completion. Budgeted; the table grows as 2^n.
std::int64_t held_karp_opt(const Multigraph& g, int budget = 18);

SerResult ser_value(const Multigraph& g, int budget = 40);

/// Named generator request. `param` is the family size parameter; random
/// families additionally honour `seed` and the `simple` flag.
struct FamilySpec {
  std::string name;
  std::int64_t param = 0;
  std::uint64_t seed = 0;
  bool simple = false;
};

Multigraph gen_family(const FamilySpec& spec);

Multigraph gen_petersen();
Multigraph gen_k4();
Multigraph gen_triple_edge();
/// Two depth-k complete binary trees with adjacent roots, leaf pairs joined
/// through two fresh vertices forming a chorded 4-cycle. n = 6*2^k - 2.
Multigraph gen_fk(int k);
/// Two hubs joined by three internally disjoint paths of length k.
Multigraph gen_three_path(int k);
/// Three paths of length k between hubs, every degree-2 vertex replaced by a
/// chorded 4-cycle gadget.
Multigraph gen_chorded_gap(int k);
Multigraph gen_k2m(int n);
/// Pairing-model random cubic multigraph, resampled until connected and
/// bridgeless; `simple` additionally forbids parallel edges.
Multigraph gen_random_cubic(int n, std::uint64_t seed, bool simple = false);

/// Random cubic base with `subdivisions` extra degree-2 vertices spliced into
/// randomly chosen edges; stays connected, bridgeless and subcubic.
Multigraph gen_random_subcubic(int cubic_n, int subdivisions,
                               std::uint64_t seed, bool simple = false);

/// Chain of random subcubic blocks joined by bridges at subdivided
/// attachment points, with optional bare path vertices between them.
Multigraph gen_random_bridged(int blocks, int block_n, int path_len,
                              std::uint64_t seed);

/// Closed forms for the optimal Eulerian subgraph sizes of gen_fk(k) using
/// the root edge zero times (T) and once (P).
std::pair<std::int64_t, std::int64_t> fk_opt_formula(int k);

/// Post-hoc validation of a solver run; failures are reported, not thrown.
struct Verdict {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

Verdict verify_report(const Multigraph& g, const SolveReport& r);

}  // namespace graphtsp
