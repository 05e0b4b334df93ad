#include "graphtsp/matchcomb.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "graphtsp/simplex.hpp"

namespace graphtsp {

namespace {

int find_edge(const Multigraph& g, int u, int v) {
  int best = -1;
  for (const auto& in : g.incident(u))
    if (in.to == v && (best == -1 || in.edge < best)) best = in.edge;
  return best;
}

void require_simple_cubic(const Multigraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v)
    require(g.degree(v) == 3, errc::degree_violation,
            "expected a cubic graph");
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges())
    require(seen.insert(std::minmax(u, v)).second, errc::invalid_input,
            "expected a simple graph");
}

int third_neighbor(const Multigraph& g, int v, int skip1, int skip2) {
  for (const auto& in : g.incident(v))
    if (in.to != skip1 && in.to != skip2) return in.to;
  return -1;
}

}  // namespace

std::optional<RainbowPattern> detect_p_rainbow(const Multigraph& g) {
  require_simple_cubic(g);
  std::optional<RainbowPattern> best;

  for (int chord = 0; chord < g.edge_count(); ++chord) {
    auto [a, b] = g.edge(chord);
    std::vector<int> common;
    for (const auto& ia : g.incident(a))
      if (ia.to != b && g.has_edge_between(b, ia.to)) common.push_back(ia.to);
    std::sort(common.begin(), common.end());
    common.erase(std::unique(common.begin(), common.end()), common.end());

    for (std::size_t i = 0; i < common.size(); ++i)
      for (std::size_t j = i + 1; j < common.size(); ++j) {
        int u0 = common[i], v0 = common[j];
        if (g.has_edge_between(u0, v0)) continue;  // would be K4

        std::set<int> used{a, b, u0, v0};
        std::vector<int> u_path{u0}, v_path{v0};
        int ucur = u0, vcur = v0;
        int uprev1 = a, uprev2 = b, vprev1 = a, vprev2 = b;
        bool abandoned = false;
        for (;;) {
          int x = third_neighbor(g, ucur, uprev1, uprev2);
          int y = third_neighbor(g, vcur, vprev1, vprev2);
          if (x < 0 || y < 0 || x == y || used.count(x) || used.count(y)) {
            abandoned = true;
            break;
          }
          if (!g.has_edge_between(x, y)) {
            // Boundary reached; valid only with at least one rung.
            if (u_path.size() < 2) abandoned = true;
            u_path.push_back(x);
            v_path.push_back(y);
            break;
          }
          used.insert(x);
          used.insert(y);
          u_path.push_back(x);
          v_path.push_back(y);
          uprev1 = ucur;
          uprev2 = y;
          vprev1 = vcur;
          vprev2 = x;
          ucur = x;
          vcur = y;
        }
        if (abandoned) continue;
        int p = static_cast<int>(u_path.size()) - 2;
        if (!best || p > best->p) {
          RainbowPattern pat;
          pat.p = p;
          pat.u_path = u_path;
          pat.v_path = v_path;
          pat.apex_a = a;
          pat.apex_b = b;
          pat.boundary_u_edge = find_edge(g, u_path[p], u_path[p + 1]);
          pat.boundary_v_edge = find_edge(g, v_path[p], v_path[p + 1]);
          best = pat;
        }
      }
  }
  return best;
}

RainbowStack remove_rainbows(const Multigraph& g) {
  RainbowStack stack;
  Multigraph cur = g;
  for (;;) {
    auto pat = detect_p_rainbow(cur);
    if (!pat) break;
    int n = cur.vertex_count();
    std::vector<char> removed(n, 0);
    removed[pat->apex_a] = removed[pat->apex_b] = 1;
    for (int i = 0; i <= pat->p; ++i) {
      removed[pat->u_path[i]] = 1;
      removed[pat->v_path[i]] = 1;
    }
    std::vector<int> vmap(n, -1);
    int next = 0;
    for (int v = 0; v < n; ++v)
      if (!removed[v]) vmap[v] = next++;

    std::vector<std::pair<int, int>> edges;
    std::vector<int> src;
    for (int e = 0; e < cur.edge_count(); ++e) {
      auto [u, v] = cur.edge(e);
      if (removed[u] || removed[v]) continue;
      edges.push_back({vmap[u], vmap[v]});
      src.push_back(e);
    }
    int uo = pat->u_path[pat->p + 1], vo = pat->v_path[pat->p + 1];
    edges.push_back({vmap[uo], vmap[vo]});
    src.push_back(-1);

    RainbowRemoval step;
    step.before = cur;
    step.pattern = *pat;
    step.vertex_map = vmap;
    step.core_edge_src = src;
    step.added_edge = static_cast<int>(edges.size()) - 1;

    Multigraph core(next, std::move(edges));
    require(is_connected(core) && find_bridges(core).empty(),
            errc::bad_certificate, "rainbow removal broke the graph");
    stack.steps.push_back(std::move(step));
    cur = std::move(core);
  }
  stack.core = std::move(cur);
  return stack;
}

namespace {

// Gadget walk u_p..u_0, b, a, v_0..v_p plus the closing rung: a spanning
// closed walk of the removed subgraph with 2p+4 edges.
std::vector<int> gadget_cycle_edges(const Multigraph& before,
                                    const RainbowPattern& pat) {
  std::vector<int> edges;
  for (int i = pat.p; i >= 1; --i)
    edges.push_back(find_edge(before, pat.u_path[i], pat.u_path[i - 1]));
  edges.push_back(find_edge(before, pat.u_path[0], pat.apex_b));
  edges.push_back(find_edge(before, pat.apex_b, pat.apex_a));
  edges.push_back(find_edge(before, pat.apex_a, pat.v_path[0]));
  for (int i = 0; i < pat.p; ++i)
    edges.push_back(find_edge(before, pat.v_path[i], pat.v_path[i + 1]));
  edges.push_back(find_edge(before, pat.v_path[pat.p], pat.u_path[pat.p]));
  for (int e : edges)
    require(e >= 0, errc::bad_certificate, "gadget edge missing");
  return edges;
}

EulerianSubgraph expand_step(const EulerianSubgraph& h_after,
                             const RainbowRemoval& step) {
  const Multigraph& before = step.before;
  std::vector<int> mult(before.edge_count(), 0);
  for (std::size_t e = 0; e < step.core_edge_src.size(); ++e)
    if (step.core_edge_src[e] >= 0)
      mult[step.core_edge_src[e]] = h_after.mult[e];
  int k = h_after.mult[step.added_edge];
  require(k >= 0 && k <= 2, errc::bad_certificate,
          "shortcut edge used more than twice");

  const RainbowPattern& pat = step.pattern;
  int rung = find_edge(before, pat.u_path[pat.p], pat.v_path[pat.p]);
  for (int e : gadget_cycle_edges(before, pat)) mult[e] += 1;
  if (k == 0) {
    mult[pat.boundary_u_edge] += 2;
  } else if (k == 1) {
    mult[pat.boundary_u_edge] += 1;
    mult[pat.boundary_v_edge] += 1;
    mult[rung] += 1;
  } else {
    mult[pat.boundary_u_edge] += 2;
    mult[pat.boundary_v_edge] += 2;
  }
  EulerianSubgraph h{&before, std::move(mult)};
  require(h.violations().empty(), errc::bad_certificate,
          "rainbow reinsertion produced an invalid subgraph");
  return h;
}

}  // namespace

namespace {

// Undo the first `count` removals, innermost first.
EulerianSubgraph reinsert_prefix(EulerianSubgraph h,
                                 const std::vector<RainbowRemoval>& steps,
                                 std::size_t count) {
  for (std::size_t i = count; i-- > 0;) h = expand_step(h, steps[i]);
  return h;
}

}  // namespace

EulerianSubgraph reinsert_rainbows(const EulerianSubgraph& h_core,
                                   const RainbowStack& stack) {
  return reinsert_prefix(h_core, stack.steps, stack.steps.size());
}

ConvexCombination convex_combination_third(const Multigraph& g,
                                           int enum_budget) {
  require_simple_cubic(g);
  require(find_bridges(g).empty(), errc::bridge_found,
          "combination requires a bridgeless graph");
  auto matchings = enumerate_perfect_matchings(g, enum_budget);
  require(!matchings.empty(), errc::no_perfect_matching,
          "no perfect matching found");
  int k = static_cast<int>(matchings.size());
  int m = g.edge_count();

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<std::vector<char>> uses(k, std::vector<char>(m, 0));
  for (int i = 0; i < k; ++i)
    for (int e : matchings[i].edge_ids) uses[i][e] = 1;
  for (int e = 0; e < m; ++e) {
    std::vector<double> row(k, 0.0), neg(k, 0.0);
    for (int i = 0; i < k; ++i)
      if (uses[i][e]) {
        row[i] = 1.0;
        neg[i] = -1.0;
      }
    a.push_back(row);
    b.push_back(1.0 / 3.0);
    a.push_back(neg);
    b.push_back(-1.0 / 3.0);
  }
  a.push_back(std::vector<double>(k, 1.0));
  b.push_back(1.0);
  a.push_back(std::vector<double>(k, -1.0));
  b.push_back(-1.0);

  LpResult lp = lp_maximize(a, b, std::vector<double>(k, 0.0));
  require(lp.status == LpResult::Status::optimal, errc::bad_certificate,
          "combination LP should be feasible on bridgeless cubic graphs");

  ConvexCombination comb;
  for (int i = 0; i < k; ++i)
    if (lp.x[i] > 1e-9) comb.terms.push_back({lp.x[i], matchings[i]});

  // Residual check: per-edge averages hit 1/3 and the weights sum to one.
  double total = 0.0;
  std::vector<double> per_edge(m, 0.0);
  for (const auto& term : comb.terms) {
    total += term.lambda;
    for (int e : term.matching.edge_ids) per_edge[e] += term.lambda;
  }
  require(std::fabs(total - 1.0) <= 1e-9, errc::bad_certificate,
          "combination weights do not sum to 1");
  for (int e = 0; e < m; ++e)
    require(std::fabs(per_edge[e] - 1.0 / 3.0) <= 1e-9, errc::bad_certificate,
            "combination does not average to one third");
  return comb;
}

std::vector<std::vector<int>> cycle_cover_from_matching(
    const Multigraph& g, const PerfectMatching& m) {
  for (int v = 0; v < g.vertex_count(); ++v)
    require(g.degree(v) == 3, errc::degree_violation,
            "cycle cover requires a cubic graph");
  require(is_perfect_matching(g, m), errc::invalid_input,
          "cycle cover requires a perfect matching");
  std::vector<char> in_m(g.edge_count(), 0);
  for (int e : m.edge_ids) in_m[e] = 1;

  std::vector<std::vector<Multigraph::Incidence>> adj(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v)
    for (const auto& in : g.incident(v))
      if (!in_m[in.edge]) adj[v].push_back(in);

  std::vector<char> seen(g.edge_count(), 0);
  std::vector<std::vector<int>> cycles;
  for (int start = 0; start < g.vertex_count(); ++start) {
    if (seen[adj[start][0].edge]) continue;
    std::vector<int> cycle;
    int v = start, e = adj[start][0].edge;
    for (;;) {
      seen[e] = 1;
      cycle.push_back(e);
      v = g.other_end(e, v);
      if (v == start) break;
      e = adj[v][0].edge == e ? adj[v][1].edge : adj[v][0].edge;
    }
    cycles.push_back(cycle);
  }
  return cycles;
}

namespace {

struct FourCycle {
  int verts[4];  // cyclic order
  int edges[4];  // edges[i] joins verts[i] and verts[(i+1)%4]
};

std::vector<FourCycle> chordless_four_cycles(const Multigraph& g) {
  std::vector<FourCycle> out;
  std::set<std::array<int, 4>> dedup;
  int n = g.vertex_count();
  for (int x = 0; x < n; ++x)
    for (int z = x + 1; z < n; ++z) {
      if (g.has_edge_between(x, z)) continue;  // diagonal must be absent
      std::vector<int> common;
      for (const auto& in : g.incident(x))
        if (in.to != z && g.has_edge_between(z, in.to))
          common.push_back(in.to);
      std::sort(common.begin(), common.end());
      common.erase(std::unique(common.begin(), common.end()), common.end());
      for (std::size_t i = 0; i < common.size(); ++i)
        for (std::size_t j = i + 1; j < common.size(); ++j) {
          int y = common[i], w = common[j];
          if (g.has_edge_between(y, w)) continue;  // other diagonal
          std::array<int, 4> key{x, z, y, w};
          std::array<int, 4> skey = key;
          std::sort(skey.begin(), skey.end());
          if (!dedup.insert(skey).second) continue;
          FourCycle c;
          c.verts[0] = x;
          c.verts[1] = y;
          c.verts[2] = z;
          c.verts[3] = w;
          for (int t = 0; t < 4; ++t)
            c.edges[t] = find_edge(g, c.verts[t], c.verts[(t + 1) % 4]);
          out.push_back(c);
        }
    }
  return out;
}

std::vector<int> walk_cycle_from_edges(const Multigraph& g,
                                       const std::vector<int>& edge_ids) {
  std::map<int, std::vector<std::pair<int, int>>> adj;  // v -> (edge, other)
  for (int e : edge_ids) {
    auto [u, v] = g.edge(e);
    adj[u].push_back({e, v});
    adj[v].push_back({e, u});
  }
  for (const auto& [v, list] : adj)
    require(list.size() == 2, errc::bad_certificate,
            "edge swap did not produce a single cycle");
  int start = adj.begin()->first;
  std::vector<int> cycle;
  int v = start, e = adj[start][0].first;
  std::set<int> used;
  for (;;) {
    used.insert(e);
    cycle.push_back(e);
    v = g.other_end(e, v);
    if (v == start) break;
    const auto& list = adj[v];
    e = list[0].first == e ? list[1].first : list[0].first;
  }
  require(cycle.size() == edge_ids.size(), errc::bad_certificate,
          "edge swap did not produce a single cycle");
  return cycle;
}

}  // namespace

std::vector<std::vector<int>> operation_i(const Multigraph& g,
                                          std::vector<std::vector<int>> cover) {
  auto squares = chordless_four_cycles(g);
  for (;;) {
    std::vector<int> cycle_of(g.edge_count(), -1);
    for (std::size_t ci = 0; ci < cover.size(); ++ci)
      for (int e : cover[ci]) cycle_of[e] = static_cast<int>(ci);

    bool applied = false;
    for (const auto& sq : squares) {
      for (int off = 0; off < 2 && !applied; ++off) {
        int drop1 = sq.edges[off], drop2 = sq.edges[off + 2];
        int add1 = sq.edges[(off + 1) % 4], add2 = sq.edges[(off + 3) % 4];
        int c1 = cycle_of[drop1], c2 = cycle_of[drop2];
        if (c1 < 0 || c2 < 0 || c1 == c2) continue;
        if (cycle_of[add1] >= 0 || cycle_of[add2] >= 0) continue;
        std::vector<int> merged;
        for (int e : cover[c1])
          if (e != drop1) merged.push_back(e);
        for (int e : cover[c2])
          if (e != drop2) merged.push_back(e);
        merged.push_back(add1);
        merged.push_back(add2);
        std::vector<int> walked = walk_cycle_from_edges(g, merged);
        require(walked.size() >= 8, errc::bad_certificate,
                "merged cycle shorter than 8");
        cover[c1] = walked;
        cover.erase(cover.begin() + c2);
        applied = true;
      }
      if (applied) break;
    }
    if (!applied) return cover;
  }
}

std::int64_t EulerianFragment::edge_total() const {
  std::int64_t t = 0;
  for (const auto& [e, c] : mult) t += c;
  return t;
}

namespace {

bool fragment_connected(const Multigraph& g, const EulerianFragment& f) {
  if (f.vertices.empty()) return true;
  std::set<int> vset(f.vertices.begin(), f.vertices.end());
  std::set<int> seen{f.vertices[0]};
  std::vector<int> stack{f.vertices[0]};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (const auto& in : g.incident(v)) {
      auto it = f.mult.find(in.edge);
      if (it == f.mult.end() || it->second == 0) continue;
      if (seen.insert(in.to).second) stack.push_back(in.to);
    }
  }
  for (int v : f.vertices)
    if (!seen.count(v)) return false;
  return true;
}

EulerianFragment fragment_from_cycle(const Multigraph& g,
                                     const std::vector<int>& cycle) {
  EulerianFragment f;
  std::set<int> verts;
  for (int e : cycle) {
    f.mult[e] += 1;
    auto [u, v] = g.edge(e);
    verts.insert(u);
    verts.insert(v);
  }
  f.vertices.assign(verts.begin(), verts.end());
  return f;
}

}  // namespace

EulerianFragment merge_eulerian(const Multigraph& g, const EulerianFragment& h1,
                                const EulerianFragment& h2) {
  std::vector<int> shared;
  std::set_intersection(h1.vertices.begin(), h1.vertices.end(),
                        h2.vertices.begin(), h2.vertices.end(),
                        std::back_inserter(shared));
  require(shared.size() >= 2, errc::invalid_input,
          "fragments share fewer than 2 vertices");

  EulerianFragment sum;
  sum.mult = h1.mult;
  for (const auto& [e, c] : h2.mult) sum.mult[e] += c;
  std::set<int> verts(h1.vertices.begin(), h1.vertices.end());
  verts.insert(h2.vertices.begin(), h2.vertices.end());
  sum.vertices.assign(verts.begin(), verts.end());

  // Remove both copies of a doubled edge at the lowest shared vertex for
  // which the remainder stays connected.
  for (int u : shared) {
    for (const auto& in : g.incident(u)) {
      auto it = sum.mult.find(in.edge);
      if (it == sum.mult.end() || it->second < 2) continue;
      it->second -= 2;
      bool zero = it->second == 0;
      if (zero) sum.mult.erase(it);
      if (fragment_connected(g, sum)) return sum;
      sum.mult[in.edge] += 2;  // restore and keep looking
    }
  }
  fail(errc::bad_certificate, "no removable doubled edge keeps the merge connected");
}

namespace {

std::vector<std::vector<int>> chordless_five_cycles(const Multigraph& g) {
  std::vector<std::vector<int>> out;
  int n = g.vertex_count();
  auto adjacent = [&](int u, int v) { return g.has_edge_between(u, v); };
  for (int a = 0; a < n; ++a) {
    for (const auto& ib : g.incident(a)) {
      int b = ib.to;
      if (b <= a) continue;
      for (const auto& ic : g.incident(b)) {
        int c = ic.to;
        if (c == a || c <= a) continue;
        for (const auto& id : g.incident(c)) {
          int d = id.to;
          if (d == a || d == b || d <= a) continue;
          for (const auto& ie : g.incident(d)) {
            int e = ie.to;
            if (e == a || e == b || e == c || e <= a) continue;
            if (e < b) continue;  // canonical direction: b < e
            if (!adjacent(e, a)) continue;
            if (adjacent(a, c) || adjacent(a, d) || adjacent(b, d) ||
                adjacent(b, e) || adjacent(c, e))
              continue;
            out.push_back({a, b, c, d, e});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

EulerianCover operation_ii(const Multigraph& g,
                           const std::vector<std::vector<int>>& cover) {
  EulerianCover ec;
  for (const auto& cyc : cover)
    ec.components.push_back(fragment_from_cycle(g, cyc));
  auto pentagons = chordless_five_cycles(g);

  for (;;) {
    std::vector<int> frag_of(g.vertex_count(), -1);
    for (std::size_t fi = 0; fi < ec.components.size(); ++fi)
      for (int v : ec.components[fi].vertices)
        frag_of[v] = static_cast<int>(fi);

    bool applied = false;
    for (const auto& penta : pentagons) {
      std::map<int, int> share;  // fragment -> vertices shared with the cycle
      for (int v : penta) share[frag_of[v]] += 1;
      if (share.size() != 2) continue;
      auto first = share.begin();
      auto second = std::next(first);
      int f2, f3;
      if (first->second == 2 && second->second == 3) {
        f2 = first->first;
        f3 = second->first;
      } else if (first->second == 3 && second->second == 2) {
        f2 = second->first;
        f3 = first->first;
      } else {
        continue;
      }
      if (ec.components[f2].vertices.size() < 5 ||
          ec.components[f3].vertices.size() < 5)
        continue;

      std::vector<int> cyc_edges;
      for (int t = 0; t < 5; ++t)
        cyc_edges.push_back(find_edge(g, penta[t], penta[(t + 1) % 5]));
      EulerianFragment pentagon = fragment_from_cycle(g, cyc_edges);

      std::int64_t before =
          ec.components[f2].edge_total() + ec.components[f3].edge_total();
      EulerianFragment merged = merge_eulerian(g, ec.components[f2], pentagon);
      merged = merge_eulerian(g, merged, ec.components[f3]);
      require(merged.edge_total() == before + 1, errc::bad_certificate,
              "pentagon merge must add exactly one edge");
      require(merged.vertices.size() >= 10, errc::bad_certificate,
              "pentagon merge must cover at least 10 vertices");

      int keep = std::min(f2, f3), drop = std::max(f2, f3);
      ec.components[keep] = std::move(merged);
      ec.components.erase(ec.components.begin() + drop);
      applied = true;
      break;
    }
    if (!applied) return ec;
  }
}

EulerianSubgraph assemble_spanning(const Multigraph& g,
                                   const EulerianCover& cover) {
  int n = g.vertex_count();
  std::vector<int> frag_of(n, -1);
  for (std::size_t fi = 0; fi < cover.components.size(); ++fi)
    for (int v : cover.components[fi].vertices) {
      require(frag_of[v] == -1, errc::invalid_input,
              "cover components overlap");
      frag_of[v] = static_cast<int>(fi);
    }
  for (int v = 0; v < n; ++v)
    require(frag_of[v] != -1, errc::invalid_input,
            "cover does not span all vertices");

  std::vector<int> mult(g.edge_count(), 0);
  for (const auto& f : cover.components)
    for (const auto& [e, c] : f.mult) mult[e] += c;

  // Doubled spanning tree of the contracted component graph.
  std::vector<int> parent(cover.components.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edge(e);
    int ru = find(frag_of[u]), rv = find(frag_of[v]);
    if (ru == rv) continue;
    parent[ru] = rv;
    mult[e] += 2;
  }

  // Shave excess copies down to the {0,1,2} representation.
  for (int& c : mult)
    while (c > 2) c -= 2;

  EulerianSubgraph h{&g, std::move(mult)};
  require(h.violations().empty(), errc::bad_certificate,
          "assembled cover is not a spanning Eulerian subgraph");
  return h;
}

MatchcombTrace solve_matchcomb_detailed(const Multigraph& g, int enum_budget) {
  auto t0 = std::chrono::steady_clock::now();
  int n = g.vertex_count();
  require(n >= 6, errc::invalid_input, "pipeline requires n >= 6");
  require(is_connected(g), errc::disconnected, "input graph is disconnected");
  require_simple_cubic(g);
  require(find_bridges(g).empty(), errc::bridge_found,
          "input graph has a bridge");
  require(n <= enum_budget, errc::budget_exceeded,
          "vertex count exceeds the enumeration budget");

  MatchcombTrace trace;
  RainbowStack stack = remove_rainbows(g);

  EulerianSubgraph best_full;
  if (stack.core.vertex_count() == 4) {
    // The core collapsed to K4: combine its Hamilton path between the last
    // shortcut's endpoints with the gadget's Hamilton path into one cycle.
    trace.k4_core = true;
    require(!stack.steps.empty(), errc::bad_certificate,
            "four-vertex core without removals");
    const RainbowRemoval& last = stack.steps.back();
    const Multigraph& before = last.before;
    const RainbowPattern& pat = last.pattern;
    int uo = pat.u_path[pat.p + 1], vo = pat.v_path[pat.p + 1];
    std::vector<int> others;
    for (int v = 0; v < before.vertex_count(); ++v)
      if (last.vertex_map[v] != -1 && v != uo && v != vo) others.push_back(v);
    require(others.size() == 2, errc::bad_certificate, "core is not K4");

    std::vector<int> mult(before.edge_count(), 0);
    auto add = [&](int u, int v) {
      int e = find_edge(before, u, v);
      require(e >= 0, errc::bad_certificate, "expected core edge missing");
      mult[e] += 1;
    };
    add(uo, others[0]);
    add(others[0], others[1]);
    add(others[1], vo);
    mult[pat.boundary_u_edge] += 1;
    mult[pat.boundary_v_edge] += 1;
    // Gadget Hamilton path u_p .. u_0, a, b, v_0 .. v_p.
    for (int i = pat.p; i >= 1; --i)
      add(pat.u_path[i], pat.u_path[i - 1]);
    add(pat.u_path[0], pat.apex_a);
    add(pat.apex_a, pat.apex_b);
    add(pat.apex_b, pat.v_path[0]);
    for (int i = 0; i < pat.p; ++i)
      add(pat.v_path[i], pat.v_path[i + 1]);

    EulerianSubgraph h{&before, std::move(mult)};
    require(h.violations().empty(), errc::bad_certificate,
            "K4-core Hamilton cycle is invalid");
    best_full = reinsert_prefix(h, stack.steps, stack.steps.size() - 1);
    trace.result_edges.push_back(best_full.edge_total());
  } else {
    trace.combination = convex_combination_third(stack.core, enum_budget);
    std::int64_t best_edges = -1;
    for (const auto& term : trace.combination.terms) {
      auto cover = cycle_cover_from_matching(stack.core, term.matching);
      cover = operation_i(stack.core, cover);
      EulerianCover ec = operation_ii(stack.core, cover);
      EulerianSubgraph h_core = assemble_spanning(stack.core, ec);
      EulerianSubgraph h_full = reinsert_rainbows(h_core, stack);
      std::int64_t edges = h_full.edge_total();
      trace.result_edges.push_back(edges);
      if (best_edges < 0 || edges < best_edges) {
        best_edges = edges;
        best_full = h_full;
        trace.report.matching_used = term.matching;
      }
    }
  }

  // Rebase onto the caller's graph object (identical edge lists by
  // construction when no rainbow was removed).
  SolveReport& report = trace.report;
  report.algorithm = "matchcomb";
  report.bound_num = 4 * static_cast<std::int64_t>(n) - 6;
  report.certificates_on_host =
      stack.steps.empty() && !trace.report.matching_used.edge_ids.empty();
  if (stack.steps.empty()) {
    report.h = EulerianSubgraph{&g, best_full.mult};
  } else {
    require(best_full.base->edges() == g.edges(), errc::bad_certificate,
            "reinsertion did not return to the input graph");
    report.h = EulerianSubgraph{&g, best_full.mult};
  }
  report.h_edges = report.h.edge_total();
  require(3 * report.h_edges <= report.bound_num, errc::bad_certificate,
          "subgraph exceeds the guaranteed bound");
  report.tour = shortcut_tour(g, eulerian_circuit(report.h));

  auto t1 = std::chrono::steady_clock::now();
  report.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return trace;
}

SolveReport solve_matchcomb(const Multigraph& g, int enum_budget) {
  return solve_matchcomb_detailed(g, enum_budget).report;
}

}  // namespace graphtsp
