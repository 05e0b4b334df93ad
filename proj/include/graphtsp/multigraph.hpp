#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "graphtsp/errors.hpp"

namespace graphtsp {

/// Loop-free undirected multigraph. Vertices are 0..n-1 and every edge is
/// identified by its position in the edge list, so parallel copies stay
/// distinct throughout the library.
class Multigraph {
 public:
  struct Incidence {
    int edge;
    int to;
  };

  Multigraph() = default;
  Multigraph(int n, std::vector<std::pair<int, int>> edge_list);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  std::pair<int, int> edge(int e) const { return edges_[e]; }
  int other_end(int e, int v) const {
    auto [a, b] = edges_[e];
    return v == a ? b : a;
  }
  bool edge_has(int e, int v) const {
    return edges_[e].first == v || edges_[e].second == v;
  }
  int degree(int v) const { return static_cast<int>(inc_[v].size()); }
  const std::vector<Incidence>& incident(int v) const { return inc_[v]; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  bool has_edge_between(int u, int v) const;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<Incidence>> inc_;
};

/// Spanning sub-multigraph with even degrees, stored as one multiplicity in
/// {0,1,2} per host edge.
struct EulerianSubgraph {
  const Multigraph* base = nullptr;
  std::vector<int> mult;

  int weighted_degree(int v) const;
  std::int64_t edge_total() const;
  /// Empty when all type invariants hold; otherwise one message per failure.
  std::vector<std::string> violations() const;
};

struct Tour {
  std::vector<int> order;
  std::int64_t length = 0;
};

/// Shortest-path hop distances with per-source caching; a row is computed by
/// BFS the first time it is needed.
class DistanceOracle {
 public:
  explicit DistanceOracle(const Multigraph& g);
  int distance(int u, int v);
  const std::vector<int>& row(int u);

 private:
  const Multigraph* g_;
  std::vector<std::vector<int>> rows_;
};

bool is_connected(const Multigraph& g);

/// Edge ids whose removal disconnects the graph, ascending. A parallel pair is
/// never reported. Throws on disconnected input.
std::vector<int> find_bridges(const Multigraph& g);

/// Closed walk through `start`'s support component using every copy of every
/// edge exactly once. No spanning/evenness validation; callers that need the
/// full Eulerian contract use eulerian_circuit.
std::vector<int> euler_walk(const Multigraph& g, const std::vector<int>& mult,
                            int start);

/// Hierholzer circuit of a valid EulerianSubgraph, as a closed edge-id walk
/// starting at the lowest-index vertex. Length equals h.edge_total().
std::vector<int> eulerian_circuit(const EulerianSubgraph& h);

/// Collapse a closed spanning walk to the first occurrence of each vertex and
/// price the resulting cyclic order in the hop metric.
Tour shortcut_tour(const Multigraph& g, const std::vector<int>& circuit);

int metric_distance(const Multigraph& g, int u, int v);
std::int64_t tour_length(const Multigraph& g, const std::vector<int>& order);

/// Text format: optional '#' comment lines, one "n m" header line, then m
/// lines "u v" with 0-indexed endpoints; repeated lines are parallel edges.
Multigraph read_graph(std::istream& in);
Multigraph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Multigraph& g);
void write_graph_file(const std::string& path, const Multigraph& g);

}  // namespace graphtsp
