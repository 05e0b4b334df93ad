#include "graphtsp/ms_solver.hpp"

#include <algorithm>
#include <chrono>
#include <map>

namespace graphtsp {

DfsStructure dfs_structure(const Multigraph& g, int root) {
  require(is_connected(g), errc::disconnected,
          "dfs_structure requires a connected graph");
  int n = g.vertex_count();
  int m = g.edge_count();
  require(root >= 0 && root < n, errc::invalid_input, "root out of range");

  std::vector<int> disc(n, -1), parent_vertex(n, -1), parent_edge(n, -1);
  enum { kUnseen = 0, kTree = 1, kBack = 2 };
  std::vector<char> state(m, kUnseen);
  std::vector<std::pair<int, int>> back_tail_head(m, {-1, -1});

  struct Frame {
    int v;
    std::size_t i;
  };
  std::vector<Frame> stack{{root, 0}};
  int timer = 0;
  disc[root] = timer++;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.i == g.incident(f.v).size()) {
      stack.pop_back();
      continue;
    }
    auto [e, w] = g.incident(f.v)[f.i++];
    if (state[e] != kUnseen) continue;
    if (disc[w] == -1) {
      state[e] = kTree;
      disc[w] = timer++;
      parent_vertex[w] = f.v;
      parent_edge[w] = e;
      stack.push_back({w, 0});
    } else {
      state[e] = kBack;  // w is an ancestor of f.v
      back_tail_head[e] = {f.v, w};
    }
  }

  DfsStructure d;
  d.root = root;
  for (int e = 0; e < m; ++e) {
    if (state[e] == kTree) d.tree_edges.push_back(e);
    if (state[e] == kBack) d.back_edges.push_back(e);
  }

  // t_b: the tree edge leaving the head of b toward b's tail.
  std::map<int, std::vector<int>> backs_of_tree_edge;
  for (int b : d.back_edges) {
    auto [tail, head] = back_tail_head[b];
    int c = tail;
    while (parent_vertex[c] != head) {
      c = parent_vertex[c];
      require(c != -1, errc::bad_certificate,
              "back edge head is not an ancestor of its tail");
    }
    int tb = parent_edge[c];
    d.tb_map.push_back({b, tb});
    backs_of_tree_edge[tb].push_back(b);
  }
  for (auto& [tb, backs] : backs_of_tree_edge)
    d.pairing.push_back({tb, *std::min_element(backs.begin(), backs.end())});

  d.in_removable.assign(m, 0);
  for (int b : d.back_edges) d.in_removable[b] = 1;
  for (const auto& [tb, partner] : d.pairing) d.in_removable[tb] = 1;
  for (int e = 0; e < m; ++e)
    if (d.in_removable[e]) d.removable.push_back(e);
  return d;
}

WeightVector ms_weights(const Multigraph& g,
                        const std::vector<int>& removable) {
  WeightVector w;
  w.w.assign(g.edge_count(), 1);
  for (int e : removable) {
    require(e >= 0 && e < g.edge_count(), errc::invalid_input,
            "removable edge id out of range");
    w.w[e] = -1;
  }
  return w;
}

EulerianSubgraph build_eulerian_h(const Multigraph& g, const PerfectMatching& m,
                                  const std::vector<int>& removable) {
  require(is_perfect_matching(g, m), errc::invalid_input,
          "build_eulerian_h needs a perfect matching");
  std::vector<char> in_r(g.edge_count(), 0);
  for (int e : removable) in_r[e] = 1;
  EulerianSubgraph h{&g, std::vector<int>(g.edge_count(), 1)};
  for (int e : m.edge_ids) h.mult[e] = in_r[e] ? 0 : 2;
  require(h.violations().empty(), errc::bad_certificate,
          "removable set was not built from a DFS pairing: subgraph invalid");
  return h;
}

std::vector<int> swapped_spanning_tree(const DfsStructure& d,
                                       const PerfectMatching& m) {
  std::vector<char> in_m;
  {
    int maxid = 0;
    for (int e : d.tree_edges) maxid = std::max(maxid, e);
    for (int e : d.back_edges) maxid = std::max(maxid, e);
    for (int e : m.edge_ids) maxid = std::max(maxid, e);
    in_m.assign(maxid + 1, 0);
    for (int e : m.edge_ids) in_m[e] = 1;
  }
  std::vector<int> result;
  std::vector<char> drop(in_m.size(), 0);
  std::vector<int> added;
  for (const auto& [tb, partner] : d.pairing)
    if (in_m[tb]) {
      drop[tb] = 1;
      added.push_back(partner);
    }
  for (int e : d.tree_edges)
    if (!drop[e]) result.push_back(e);
  result.insert(result.end(), added.begin(), added.end());
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::vector<int>> extract_cycle_cover(const SolveReport& report) {
  const Multigraph& g = *report.h.base;
  for (int v = 0; v < g.vertex_count(); ++v)
    require(g.degree(v) == 3, errc::degree_violation,
            "cycle cover extraction requires a cubic host");
  // Multiplicity-1 edges leave every vertex with exactly two single edges.
  std::vector<std::vector<Multigraph::Incidence>> adj(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    for (const auto& in : g.incident(v))
      if (report.h.mult[in.edge] == 1) adj[v].push_back(in);
  for (int v = 0; v < g.vertex_count(); ++v)
    require(adj[v].size() == 2, errc::bad_certificate,
            "single edges do not form a cycle cover");

  std::vector<char> edge_seen(g.edge_count(), 0);
  std::vector<std::vector<int>> cycles;
  for (int start = 0; start < g.vertex_count(); ++start) {
    if (edge_seen[adj[start][0].edge]) continue;
    std::vector<int> cycle;
    int v = start;
    int e = adj[start][0].edge;
    for (;;) {
      require(!edge_seen[e], errc::bad_certificate,
              "single edges do not form disjoint cycles");
      edge_seen[e] = 1;
      cycle.push_back(e);
      v = g.other_end(e, v);
      if (v == start) break;
      e = adj[v][0].edge == e ? adj[v][1].edge : adj[v][0].edge;
    }
    cycles.push_back(cycle);
  }
  return cycles;
}

ContractionResult contract_degree2_paths(const Multigraph& g) {
  require(is_connected(g), errc::disconnected,
          "contraction requires a connected graph");
  int n = g.vertex_count();
  std::vector<int> vmap(n, -1);
  int n3 = 0;
  for (int v = 0; v < n; ++v) {
    require(g.degree(v) <= 3, errc::degree_violation, "degree exceeds 3");
    require(g.degree(v) >= 2, errc::invalid_input,
            "contraction requires minimum degree 2");
    if (g.degree(v) == 3) vmap[v] = n3++;
  }
  require(n3 > 0, errc::invalid_input,
          "graph is a bare cycle: no degree-3 vertex to contract toward");

  std::vector<char> used(g.edge_count(), 0);
  std::vector<std::pair<int, int>> cedges;
  std::vector<std::vector<int>> paths;
  for (int x = 0; x < n; ++x) {
    if (g.degree(x) != 3) continue;
    for (const auto& in : g.incident(x)) {
      if (used[in.edge]) continue;
      std::vector<int> path{in.edge};
      used[in.edge] = 1;
      int cur = in.to;
      int last = in.edge;
      while (g.degree(cur) == 2) {
        const auto& pair01 = g.incident(cur);
        int next = pair01[0].edge == last ? 1 : 0;
        last = pair01[next].edge;
        require(!used[last], errc::invalid_input,
                "degree-2 cycle attached to a single vertex");
        used[last] = 1;
        path.push_back(last);
        cur = pair01[next].to;
      }
      require(cur != x, errc::invalid_input,
              "contraction would create a loop");
      cedges.push_back({vmap[x], vmap[cur]});
      paths.push_back(std::move(path));
    }
  }
  ContractionResult result{Multigraph(n3, std::move(cedges)), std::move(paths),
                           std::move(vmap)};
  for (int v = 0; v < result.contracted.vertex_count(); ++v)
    require(result.contracted.degree(v) == 3, errc::bad_certificate,
            "contracted graph is not cubic");
  std::size_t covered = 0;
  for (const auto& p : result.paths) covered += p.size();
  require(covered == static_cast<std::size_t>(g.edge_count()),
          errc::bad_certificate, "contraction lost edges");
  return result;
}

WeightVector subcubic_weights(const Multigraph& gc,
                              const std::vector<int>& removable,
                              const std::vector<std::vector<int>>& paths) {
  require(static_cast<int>(paths.size()) == gc.edge_count(),
          errc::invalid_input, "path table does not match contracted graph");
  std::vector<char> in_r(gc.edge_count(), 0);
  for (int e : removable) in_r[e] = 1;
  WeightVector w;
  w.w.resize(gc.edge_count());
  for (int e = 0; e < gc.edge_count(); ++e) {
    std::int64_t q2 = static_cast<std::int64_t>(paths[e].size()) - 1;
    w.w[e] = in_r[e] ? q2 - 1 : q2 + 1;
  }
  return w;
}

EulerianSubgraph expand_to_subcubic(const EulerianSubgraph& hc,
                                    const ContractionResult& contraction,
                                    const Multigraph& g,
                                    const PerfectMatching& m,
                                    const std::vector<int>& removable) {
  const Multigraph& gc = contraction.contracted;
  require(hc.base == &gc || hc.base->edges() == gc.edges(),
          errc::invalid_input, "subgraph does not live on the contracted graph");
  std::vector<char> in_m(gc.edge_count(), 0), in_r(gc.edge_count(), 0);
  for (int e : m.edge_ids) in_m[e] = 1;
  for (int e : removable) in_r[e] = 1;

  std::vector<int> mult(g.edge_count(), 0);
  for (int e = 0; e < gc.edge_count(); ++e) {
    const auto& path = contraction.paths[e];
    if (in_m[e] && in_r[e]) {
      // Drop the first path edge, double the rest.
      for (std::size_t i = 1; i < path.size(); ++i) mult[path[i]] = 2;
    } else if (in_m[e]) {
      for (int he : path) mult[he] = 2;
    } else {
      for (int he : path) mult[he] = 1;
    }
  }
  EulerianSubgraph h{&g, std::move(mult)};
  require(h.violations().empty(), errc::bad_certificate,
          "expansion parity violation: inconsistent contraction inputs");
  return h;
}

SolveReport solve_ms(const Multigraph& g, const MsOptions& options) {
  auto t0 = std::chrono::steady_clock::now();
  int n = g.vertex_count();
  require(n >= 2, errc::invalid_input, "solver needs at least two vertices");
  require(is_connected(g), errc::disconnected, "input graph is disconnected");
  for (int v = 0; v < n; ++v)
    require(g.degree(v) <= 3, errc::degree_violation,
            "input graph has a vertex of degree > 3");
  require(find_bridges(g).empty(), errc::bridge_found,
          "input graph has a bridge");
  if (options.require_simple) {
    std::map<std::pair<int, int>, int> seen;
    for (auto [u, v] : g.edges())
      require(seen[{std::min(u, v), std::max(u, v)}]++ == 0,
              errc::invalid_input, "parallel edges rejected in simple mode");
  }

  SolveReport report;
  report.algorithm = "ms";
  report.bound_num = 4 * static_cast<std::int64_t>(n) - 2;

  bool bare_cycle = true;
  for (int v = 0; v < n; ++v)
    if (g.degree(v) != 2) bare_cycle = false;

  if (bare_cycle) {
    report.h = EulerianSubgraph{&g, std::vector<int>(g.edge_count(), 1)};
    std::vector<int> all(g.edge_count());
    for (int e = 0; e < g.edge_count(); ++e) all[e] = e;
    report.cycle_cover = std::vector<std::vector<int>>{all};
  } else {
    ContractionResult contraction = contract_degree2_paths(g);
    const Multigraph& gc = contraction.contracted;
    DfsStructure d = dfs_structure(gc, 0);
    WeightVector weights = subcubic_weights(gc, d.removable, contraction.paths);
    PerfectMatching matching = min_weight_perfect_matching(gc, weights);
    EulerianSubgraph hc = build_eulerian_h(gc, matching, d.removable);
    report.h = expand_to_subcubic(hc, contraction, g, matching, d.removable);
    std::vector<int> tree_star = swapped_spanning_tree(d, matching);

    std::int64_t c_value = matching_weight(weights, matching);
    require(report.h.edge_total() == g.edge_count() + c_value,
            errc::bad_certificate, "edge accounting mismatch");

    bool identity = gc.edge_count() == g.edge_count();
    if (identity) {
      // Map contracted ids back through their singleton paths.
      auto remap = [&](const std::vector<int>& ids) {
        std::vector<int> out;
        out.reserve(ids.size());
        for (int e : ids) out.push_back(contraction.paths[e][0]);
        std::sort(out.begin(), out.end());
        return out;
      };
      report.matching_used.edge_ids = remap(matching.edge_ids);
      report.r_set = remap(d.removable);
      report.tree_star = remap(tree_star);
      report.certificates_on_host = true;
    } else {
      report.matching_used = matching;
      report.r_set = d.removable;
      report.tree_star = tree_star;
      report.certificates_on_host = false;
    }

    bool cubic_host = true;
    for (int v = 0; v < n; ++v)
      if (g.degree(v) != 3) cubic_host = false;
    if (cubic_host) report.cycle_cover = extract_cycle_cover(report);
  }

  report.h_edges = report.h.edge_total();
  require(3 * report.h_edges <= report.bound_num, errc::bad_certificate,
          "subgraph exceeds the guaranteed bound");
  report.tour = shortcut_tour(g, eulerian_circuit(report.h));

  auto t1 = std::chrono::steady_clock::now();
  report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return report;
}

}  // namespace graphtsp
