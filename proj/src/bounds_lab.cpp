#include "graphtsp/bounds_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

#include "graphtsp/simplex.hpp"

namespace graphtsp {

std::int64_t held_karp_opt(const Multigraph& g, int budget) {
  int n = g.vertex_count();
  require(is_connected(g), errc::disconnected, "held_karp: disconnected input");
  require(n <= budget, errc::budget_exceeded,
          "held_karp: vertex count exceeds budget");
  if (n <= 1) return 0;

  DistanceOracle oracle(g);
  std::vector<std::vector<int>> d(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d[i][j] = oracle.distance(i, j);
  if (n == 2) return 2 * d[0][1];

  int k = n - 1;  // vertices 1..n-1, tours anchored at 0
  constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max() / 2;
  std::vector<std::int32_t> table(
      (static_cast<std::size_t>(1) << k) * k, kInf);
  auto at = [&](std::uint32_t mask, int j) -> std::int32_t& {
    return table[static_cast<std::size_t>(mask) * k + j];
  };
  for (int j = 0; j < k; ++j) at(1u << j, j) = d[0][j + 1];
  std::uint32_t full = (1u << k) - 1;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    if ((mask & (mask - 1)) == 0) continue;  // singletons seeded above
    for (int j = 0; j < k; ++j) {
      if (!(mask & (1u << j))) continue;
      std::uint32_t rest = mask ^ (1u << j);
      std::int32_t bestv = kInf;
      for (int l = 0; l < k; ++l) {
        if (!(rest & (1u << l))) continue;
        std::int32_t cand = at(rest, l);
        if (cand < kInf) cand += d[l + 1][j + 1];
        bestv = std::min(bestv, cand);
      }
      at(mask, j) = bestv;
    }
  }
  std::int32_t best = kInf;
  for (int j = 0; j < k; ++j)
    best = std::min(best, at(full, j) + d[j + 1][0]);
  return best;
}

namespace {

// Global minimum cut of a weighted complete graph (Stoer-Wagner).
std::pair<double, std::vector<int>> stoer_wagner(
    std::vector<std::vector<double>> w) {
  int n = static_cast<int>(w.size());
  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[i] = {i};
  std::vector<char> merged(n, 0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_side;

  for (int phase = n; phase > 1; --phase) {
    std::vector<double> wsum(n, 0.0);
    std::vector<char> added(n, 0);
    std::vector<int> order;
    for (int it = 0; it < phase; ++it) {
      int sel = -1;
      for (int v = 0; v < n; ++v)
        if (!merged[v] && !added[v] && (sel == -1 || wsum[v] > wsum[sel]))
          sel = v;
      added[sel] = 1;
      order.push_back(sel);
      for (int v = 0; v < n; ++v)
        if (!merged[v] && !added[v]) wsum[v] += w[sel][v];
    }
    int last = order.back();
    int prev = order[order.size() - 2];
    double cut = 0.0;
    for (int v = 0; v < n; ++v)
      if (!merged[v] && v != last) cut += w[last][v];
    if (cut < best) {
      best = cut;
      best_side = groups[last];
    }
    merged[last] = 1;
    groups[prev].insert(groups[prev].end(), groups[last].begin(),
                        groups[last].end());
    for (int v = 0; v < n; ++v) {
      w[prev][v] += w[last][v];
      w[v][prev] += w[v][last];
    }
  }
  std::sort(best_side.begin(), best_side.end());
  return {best, best_side};
}

}  // namespace

SerResult ser_value(const Multigraph& g, int budget) {
  int n = g.vertex_count();
  require(is_connected(g), errc::disconnected, "ser_value: disconnected input");
  require(n >= 3, errc::invalid_input, "ser_value needs at least 3 vertices");
  require(n <= budget, errc::budget_exceeded,
          "ser_value: vertex count exceeds budget");

  DistanceOracle oracle(g);
  int nv = n * (n - 1) / 2;
  std::vector<std::pair<int, int>> var_edge;
  std::vector<std::vector<int>> var_of(n, std::vector<int>(n, -1));
  var_edge.reserve(nv);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      var_of[i][j] = var_of[j][i] = static_cast<int>(var_edge.size());
      var_edge.push_back({i, j});
    }

  std::vector<std::vector<double>> a;
  std::vector<double> b;
  // Degree equalities as inequality pairs.
  for (int v = 0; v < n; ++v) {
    std::vector<double> row(nv, 0.0), neg(nv, 0.0);
    for (int u = 0; u < n; ++u)
      if (u != v) {
        row[var_of[v][u]] = 1.0;
        neg[var_of[v][u]] = -1.0;
      }
    a.push_back(row);
    b.push_back(2.0);
    a.push_back(neg);
    b.push_back(-2.0);
  }
  // Variable upper bounds.
  for (int e = 0; e < nv; ++e) {
    std::vector<double> row(nv, 0.0);
    row[e] = 1.0;
    a.push_back(row);
    b.push_back(1.0);
  }
  std::vector<double> c(nv);
  for (int e = 0; e < nv; ++e)
    c[e] = -static_cast<double>(oracle.distance(var_edge[e].first,
                                                var_edge[e].second));

  SerResult result;
  std::set<std::vector<int>> seen_cuts;
  constexpr int kMaxRounds = 2000;
  for (int round = 0; round < kMaxRounds; ++round) {
    ++result.iterations;
    LpResult lp = lp_maximize(a, b, c);
    require(lp.status == LpResult::Status::optimal, errc::bad_certificate,
            "ser_value: relaxation was not solvable");
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (int e = 0; e < nv; ++e) {
      double x = std::max(0.0, lp.x[e]);
      w[var_edge[e].first][var_edge[e].second] = x;
      w[var_edge[e].second][var_edge[e].first] = x;
    }
    auto [cut, side] = stoer_wagner(w);
    if (cut >= 2.0 - 1e-7) {
      result.value = -lp.value;
      return result;
    }
    // Normalize the side not containing vertex 0.
    std::vector<char> in_side(n, 0);
    for (int v : side) in_side[v] = 1;
    std::vector<int> s;
    if (in_side[0]) {
      for (int v = 0; v < n; ++v)
        if (!in_side[v]) s.push_back(v);
    } else {
      s = side;
    }
    require(seen_cuts.insert(s).second, errc::bad_certificate,
            "ser_value: separation stalled on a repeated cut");
    std::vector<char> mark(n, 0);
    for (int v : s) mark[v] = 1;
    std::vector<double> row(nv, 0.0);
    for (int e = 0; e < nv; ++e)
      if (mark[var_edge[e].first] != mark[var_edge[e].second]) row[e] = -1.0;
    a.push_back(row);
    b.push_back(-2.0);
    result.active_cuts.push_back(s);
  }
  fail(errc::budget_exceeded, "ser_value: cutting-plane round limit reached");
}

Multigraph gen_petersen() {
  std::vector<std::pair<int, int>> edges = {
      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},  // outer cycle
      {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},  // spokes
      {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5},  // inner pentagram
  };
  return Multigraph(10, std::move(edges));
}

Multigraph gen_k4() {
  return Multigraph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

Multigraph gen_triple_edge() {
  return Multigraph(2, {{0, 1}, {0, 1}, {0, 1}});
}

Multigraph gen_fk(int k) {
  require(k >= 1 && k <= 20, errc::invalid_input, "fk requires 1 <= k <= 20");
  int leaves = 1 << k;
  int next = 2;
  std::vector<std::vector<int>> left(k + 1), right(k + 1);
  left[0] = {0};
  right[0] = {1};
  for (int level = 1; level <= k; ++level) {
    for (int i = 0; i < (1 << level); ++i) left[level].push_back(next++);
    for (int i = 0; i < (1 << level); ++i) right[level].push_back(next++);
  }
  std::vector<std::pair<int, int>> edges;
  edges.push_back({0, 1});
  for (int level = 1; level <= k; ++level)
    for (int i = 0; i < (1 << level); ++i) {
      edges.push_back({left[level - 1][i / 2], left[level][i]});
      edges.push_back({right[level - 1][i / 2], right[level][i]});
    }
  for (int i = 0; i < leaves; ++i) {
    int l = left[k][i], r = right[k][i];
    int p = next++, q = next++;
    edges.push_back({p, q});
    edges.push_back({l, p});
    edges.push_back({l, q});
    edges.push_back({r, p});
    edges.push_back({r, q});
  }
  Multigraph g(next, std::move(edges));
  require(g.vertex_count() == 6 * (1 << k) - 2, errc::bad_certificate,
          "fk: unexpected vertex count");
  for (int v = 0; v < g.vertex_count(); ++v)
    require(g.degree(v) == 3, errc::bad_certificate, "fk: non-cubic vertex");
  return g;
}

Multigraph gen_three_path(int k) {
  require(k >= 1, errc::invalid_input, "three_path requires k >= 1");
  std::vector<std::pair<int, int>> edges;
  int next = 2;
  for (int path = 0; path < 3; ++path) {
    int prev = 0;
    for (int i = 1; i < k; ++i) {
      edges.push_back({prev, next});
      prev = next++;
    }
    edges.push_back({prev, 1});
  }
  return Multigraph(next, std::move(edges));
}

Multigraph gen_chorded_gap(int k) {
  require(k >= 1, errc::invalid_input, "chorded_gap requires k >= 1");
  std::vector<std::pair<int, int>> edges;
  int next = 2;
  for (int path = 0; path < 3; ++path) {
    int attach = 0;  // vertex the next gadget hangs off
    for (int i = 1; i < k; ++i) {
      int u0 = next++, a = next++, v0 = next++, bb = next++;
      edges.push_back({u0, a});
      edges.push_back({a, v0});
      edges.push_back({v0, bb});
      edges.push_back({bb, u0});
      edges.push_back({a, bb});
      edges.push_back({attach, u0});
      attach = v0;
    }
    edges.push_back({attach, 1});
  }
  return Multigraph(next, std::move(edges));
}

Multigraph gen_k2m(int n) {
  require(n >= 3, errc::invalid_input, "k2m requires n >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int v = 2; v < n; ++v) {
    edges.push_back({0, v});
    edges.push_back({1, v});
  }
  return Multigraph(n, std::move(edges));
}

Multigraph gen_random_cubic(int n, std::uint64_t seed, bool simple) {
  require(n >= 2 && n % 2 == 0, errc::invalid_input,
          "random cubic graphs need an even vertex count >= 2");
  require(!simple || n >= 4, errc::invalid_input,
          "simple cubic graphs need n >= 4");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 20000; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(3 * n);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < 3; ++i) stubs.push_back(v);
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<std::pair<int, int>> edges;
    edges.reserve(3 * n / 2);
    bool ok = true;
    std::set<std::pair<int, int>> used;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) {
        ok = false;
        break;
      }
      if (simple) {
        auto key = std::minmax(u, v);
        if (!used.insert({key.first, key.second}).second) {
          ok = false;
          break;
        }
      }
      edges.push_back({u, v});
    }
    if (!ok) continue;
    std::sort(edges.begin(), edges.end(),
              [](const auto& x, const auto& y) {
                return std::minmax(x.first, x.second) <
                       std::minmax(y.first, y.second);
              });
    Multigraph g(n, std::move(edges));
    if (!is_connected(g)) continue;
    if (!find_bridges(g).empty()) continue;
    return g;
  }
  fail(errc::invalid_input, "random cubic generation retries exhausted");
}

Multigraph gen_random_subcubic(int cubic_n, int subdivisions,
                               std::uint64_t seed, bool simple) {
  Multigraph base = gen_random_cubic(cubic_n, seed, simple);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<int, int>> edges = base.edges();
  int next = base.vertex_count();
  for (int s = 0; s < subdivisions; ++s) {
    std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
    std::size_t e = pick(rng);
    auto [u, v] = edges[e];
    int x = next++;
    edges[e] = {u, x};
    edges.push_back({x, v});
  }
  return Multigraph(next, std::move(edges));
}

Multigraph gen_random_bridged(int blocks, int block_n, int path_len,
                              std::uint64_t seed) {
  require(blocks >= 1, errc::invalid_input, "need at least one block");
  std::vector<std::pair<int, int>> edges;
  int next = 0;
  std::vector<int> attach_left(blocks), attach_right(blocks);
  for (int bidx = 0; bidx < blocks; ++bidx) {
    Multigraph block = gen_random_cubic(block_n, seed + 101 * bidx, false);
    int base = next;
    std::vector<std::pair<int, int>> be = block.edges();
    // Subdivide two distinct edges to create degree-2 attachment points.
    int left = block.vertex_count(), right = block.vertex_count() + 1;
    auto [u0, v0] = be[0];
    be[0] = {u0, left};
    be.push_back({left, v0});
    auto [u1, v1] = be[1];
    be[1] = {u1, right};
    be.push_back({right, v1});
    for (auto [u, v] : be) edges.push_back({base + u, base + v});
    attach_left[bidx] = base + left;
    attach_right[bidx] = base + right;
    next = base + block.vertex_count() + 2;
  }
  for (int bidx = 0; bidx + 1 < blocks; ++bidx) {
    int prev = attach_right[bidx];
    for (int i = 0; i < path_len; ++i) {
      edges.push_back({prev, next});
      prev = next++;
    }
    edges.push_back({prev, attach_left[bidx + 1]});
  }
  return Multigraph(next, std::move(edges));
}

Multigraph gen_family(const FamilySpec& spec) {
  if (spec.name == "petersen") return gen_petersen();
  if (spec.name == "k4") return gen_k4();
  if (spec.name == "triple_edge") return gen_triple_edge();
  if (spec.name == "fk") return gen_fk(static_cast<int>(spec.param));
  if (spec.name == "three_path")
    return gen_three_path(static_cast<int>(spec.param));
  if (spec.name == "chorded_gap")
    return gen_chorded_gap(static_cast<int>(spec.param));
  if (spec.name == "k2m") return gen_k2m(static_cast<int>(spec.param));
  if (spec.name == "random_cubic")
    return gen_random_cubic(static_cast<int>(spec.param), spec.seed,
                            spec.simple);
  fail(errc::invalid_input, "unknown family: " + spec.name);
}

std::pair<std::int64_t, std::int64_t> fk_opt_formula(int k) {
  require(k >= 1 && k <= 40, errc::invalid_input,
          "fk_opt_formula requires 1 <= k <= 40");
  std::int64_t pow2 = std::int64_t{1} << k;
  if (k % 2 == 1)
    return {(22 * pow2 - 14) / 3, (22 * pow2 - 8) / 3};
  return {(22 * pow2 - 10) / 3, (22 * pow2 - 10) / 3};
}

namespace {

bool is_spanning_tree(const Multigraph& g, const std::vector<int>& edge_ids) {
  int n = g.vertex_count();
  if (static_cast<int>(edge_ids.size()) != n - 1) return false;
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e : edge_ids) {
    if (e < 0 || e >= g.edge_count()) return false;
    auto [u, v] = g.edge(e);
    int ru = find(u), rv = find(v);
    if (ru == rv) return false;
    parent[ru] = rv;
  }
  return true;
}

}  // namespace

Verdict verify_report(const Multigraph& g, const SolveReport& r) {
  Verdict verdict;
  auto flag = [&](const std::string& msg) { verdict.failures.push_back(msg); };

  if (r.h.base == nullptr ||
      static_cast<int>(r.h.mult.size()) != g.edge_count()) {
    flag("certificate does not match the graph");
    return verdict;
  }
  if (r.h.base != &g && r.h.base->edges() != g.edges()) {
    flag("certificate host differs from the graph");
    return verdict;
  }
  EulerianSubgraph rebased{&g, r.h.mult};
  for (const auto& msg : rebased.violations()) flag("subgraph: " + msg);
  if (rebased.edge_total() != r.h_edges) flag("h_edges does not match subgraph");
  if (3 * r.h_edges > r.bound_num) flag("edge count exceeds the bound");

  bool tour_ok = true;
  {
    std::vector<char> seen(g.vertex_count(), 0);
    if (static_cast<int>(r.tour.order.size()) != g.vertex_count())
      tour_ok = false;
    else
      for (int v : r.tour.order) {
        if (v < 0 || v >= g.vertex_count() || seen[v]) {
          tour_ok = false;
          break;
        }
        seen[v] = 1;
      }
  }
  if (!tour_ok) {
    flag("tour is not a permutation");
  } else {
    std::int64_t len = tour_length(g, r.tour.order);
    if (len != r.tour.length) flag("tour length does not match its order");
    if (r.tour.length > r.h_edges) flag("tour longer than the subgraph");
  }

  if (r.certificates_on_host && !r.matching_used.edge_ids.empty()) {
    if (!is_perfect_matching(g, r.matching_used)) {
      flag("matching certificate is not a perfect matching");
    } else if (!r.r_set.empty()) {
      std::vector<char> in_r(g.edge_count(), 0);
      bool ids_ok = true;
      for (int e : r.r_set) {
        if (e < 0 || e >= g.edge_count()) {
          ids_ok = false;
          break;
        }
        in_r[e] = 1;
      }
      if (!ids_ok) {
        flag("removable set references unknown edges");
      } else {
        std::vector<int> expect(g.edge_count(), 1);
        for (int e : r.matching_used.edge_ids) expect[e] = in_r[e] ? 0 : 2;
        if (expect != r.h.mult)
          flag("subgraph does not match matching/removable construction");
      }
    }
    if (!r.tree_star.empty() && !is_spanning_tree(g, r.tree_star))
      flag("tree certificate is not a spanning tree");
  }

  if (r.cycle_cover.has_value()) {
    std::vector<char> covered(g.vertex_count(), 0);
    bool cycles_ok = true;
    for (const auto& cyc : *r.cycle_cover) {
      std::vector<int> deg_in_cycle(g.vertex_count(), 0);
      for (int e : cyc) {
        if (e < 0 || e >= g.edge_count() || r.h.mult[e] != 1) {
          cycles_ok = false;
          break;
        }
        auto [u, v] = g.edge(e);
        deg_in_cycle[u]++;
        deg_in_cycle[v]++;
      }
      if (!cycles_ok) break;
      for (int v = 0; v < g.vertex_count(); ++v) {
        if (deg_in_cycle[v] == 0) continue;
        if (deg_in_cycle[v] != 2 || covered[v]) {
          cycles_ok = false;
          break;
        }
        covered[v] = 1;
      }
      if (!cycles_ok) break;
    }
    if (cycles_ok)
      for (char cvd : covered)
        if (!cvd) {
          cycles_ok = false;
          break;
        }
    if (!cycles_ok) flag("cycle cover certificate is invalid");
  }
  return verdict;
}

}  // namespace graphtsp
