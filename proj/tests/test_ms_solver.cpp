#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "graphtsp/bounds_lab.hpp"
#include "graphtsp/ms_solver.hpp"
#include "testutil.hpp"

using namespace graphtsp;

namespace {

// A reference removable set for the Petersen graph, hand-traced from one DFS
// rooted at vertex 0: the back edges plus the paired tree edges, 11 ids in
// total (all edges except 3, 8, 13, 14).
std::vector<int> petersen_reference_r() {
  return {0, 1, 2, 4, 5, 6, 7, 9, 10, 11, 12};
}

bool is_spanning_tree_edges(const Multigraph& g, const std::vector<int>& ids) {
  if ((int)ids.size() != g.vertex_count() - 1) return false;
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int e : ids) {
    auto [u, v] = g.edge(e);
    int ru = find(u), rv = find(v);
    if (ru == rv) return false;
    parent[ru] = rv;
  }
  return true;
}

}  // namespace

TEST_CASE("dfs structure: triple edge, Petersen, tree") {
  Multigraph triple = gen_triple_edge();
  DfsStructure d = dfs_structure(triple, 0);
  CHECK(d.tree_edges.size() == 1);
  CHECK(d.back_edges.size() == 2);
  CHECK(d.pairing.size() == 1);
  CHECK(d.removable.size() == 3);
  CHECK(d.pairing[0] == std::pair<int, int>{0, 1});

  DfsStructure dp = dfs_structure(gen_petersen(), 0);
  CHECK(dp.removable.size() == 11);  // n + 1

  Multigraph path(4, {{0, 1}, {1, 2}, {2, 3}});
  DfsStructure dt = dfs_structure(path, 0);
  CHECK(dt.back_edges.empty());
  CHECK(dt.removable.empty());
}

TEST_CASE("dfs structure: pair members share a vertex, partner ids minimal") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 40; ++iter) {
    std::uniform_int_distribution<int> nn(1, 20);
    Multigraph g = gen_random_cubic(2 * nn(rng), 300 + iter);
    DfsStructure d = dfs_structure(g, 0);
    CHECK((int)d.removable.size() == g.vertex_count() + 1);
    CHECK(d.pairing.size() == d.back_edges.size() - 1);
    std::map<int, std::vector<int>> by_tb;
    for (auto [b, tb] : d.tb_map) by_tb[tb].push_back(b);
    for (auto [tb, partner] : d.pairing) {
      auto [tu, tv] = g.edge(tb);
      auto [bu, bv] = g.edge(partner);
      bool share = tu == bu || tu == bv || tv == bu || tv == bv;
      CHECK(share);
      CHECK(partner == *std::min_element(by_tb[tb].begin(), by_tb[tb].end()));
    }
  }
}

TEST_CASE("ms weights") {
  Multigraph petersen = gen_petersen();
  WeightVector w = ms_weights(petersen, petersen_reference_r());
  std::int64_t total = std::accumulate(w.w.begin(), w.w.end(), std::int64_t{0});
  CHECK(total == -7);  // -(n/2 + 2)

  Multigraph triple = gen_triple_edge();
  WeightVector wt = ms_weights(triple, {0, 1, 2});
  CHECK(std::accumulate(wt.w.begin(), wt.w.end(), std::int64_t{0}) == -3);

  WeightVector we = ms_weights(triple, {});
  CHECK(std::accumulate(we.w.begin(), we.w.end(), std::int64_t{0}) == 3);
}

TEST_CASE("eulerian subgraph construction on the worked example") {
  Multigraph petersen = gen_petersen();
  auto r = petersen_reference_r();
  WeightVector w = ms_weights(petersen, r);
  PerfectMatching m = min_weight_perfect_matching(petersen, w);
  CHECK(matching_weight(w, m) == -3);

  EulerianSubgraph h = build_eulerian_h(petersen, m, r);
  CHECK(h.violations().empty());
  CHECK(h.edge_total() == 12);

  // The all-spokes matching reproduces the outer+inner cycles plus one
  // doubled spoke exactly.
  PerfectMatching spokes{{5, 6, 7, 8, 9}};
  EulerianSubgraph hs = build_eulerian_h(petersen, spokes, r);
  CHECK(hs.edge_total() == 12);
  CHECK(hs.mult[8] == 2);
  for (int e : {5, 6, 7, 9}) CHECK(hs.mult[e] == 0);
  for (int e : {0, 1, 2, 3, 4, 10, 11, 12, 13, 14}) CHECK(hs.mult[e] == 1);
}

TEST_CASE("eulerian subgraph construction: triple edge and K4") {
  Multigraph triple = gen_triple_edge();
  EulerianSubgraph ht = build_eulerian_h(triple, PerfectMatching{{0}}, {0, 1, 2});
  CHECK(ht.edge_total() == 2);

  // A matching inside R whose complement is a Hamilton cycle gives exactly
  // that cycle.
  Multigraph k4 = gen_k4();
  DfsStructure d = dfs_structure(k4, 0);
  CHECK(d.removable == std::vector<int>{0, 1, 2, 3, 4});
  EulerianSubgraph hk = build_eulerian_h(k4, PerfectMatching{{1, 4}}, d.removable);
  CHECK(hk.edge_total() == 4);
  CHECK(hk.mult == std::vector<int>{1, 0, 1, 1, 0, 1});
}

TEST_CASE("connectivity holds for any matching against a DFS removable set") {
  std::mt19937_64 rng(77);
  int done = 0;
  while (done < 200) {
    std::uniform_int_distribution<int> nn(1, 5);
    Multigraph g = gen_random_cubic(2 * nn(rng), 900 + done);
    DfsStructure d = dfs_structure(g, 0);
    auto all = enumerate_perfect_matchings(g, 12);
    REQUIRE(!all.empty());
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    const auto& m = all[pick(rng)];
    EulerianSubgraph h = build_eulerian_h(g, m, d.removable);  // throws if bad
    CHECK(h.violations().empty());
    ++done;
  }
}

TEST_CASE("tree swaps stay spanning trees") {
  std::mt19937_64 rng(31);
  int done = 0;
  while (done < 200) {
    std::uniform_int_distribution<int> nn(2, 16);
    Multigraph g = gen_random_cubic(2 * nn(rng), 500 + done);
    DfsStructure d = dfs_structure(g, 0);
    // Random subset of the pairing, swapped by hand.
    std::vector<char> drop(g.edge_count(), 0);
    std::vector<int> added;
    for (const auto& [tb, partner] : d.pairing)
      if (rng() & 1) {
        drop[tb] = 1;
        added.push_back(partner);
      }
    std::vector<int> swapped;
    for (int e : d.tree_edges)
      if (!drop[e]) swapped.push_back(e);
    swapped.insert(swapped.end(), added.begin(), added.end());
    CHECK(is_spanning_tree_edges(g, swapped));
    ++done;
  }
}

TEST_CASE("swapped spanning tree and the matching intersection bound") {
  Multigraph petersen = gen_petersen();
  DfsStructure d = dfs_structure(petersen, 0);
  WeightVector w = ms_weights(petersen, d.removable);
  PerfectMatching m = min_weight_perfect_matching(petersen, w);
  std::vector<int> tstar = swapped_spanning_tree(d, m);
  CHECK(is_spanning_tree_edges(petersen, tstar));

  std::set<int> in_tstar(tstar.begin(), tstar.end());
  int overlap = 0;
  for (int e : m.edge_ids) overlap += in_tstar.count(e);
  CHECK(overlap == 1);  // h = n + 2 overlap = 12
  CHECK(6 * overlap <= 10 - 2);  // n/6 - 1/3 with n=10

  // Empty swap: matching disjoint from the pairing's tree edges keeps T.
  Multigraph triple = gen_triple_edge();
  DfsStructure dt = dfs_structure(triple, 0);
  std::vector<int> kept = swapped_spanning_tree(dt, PerfectMatching{{2}});
  CHECK(kept == dt.tree_edges);
}

TEST_CASE("contraction of degree-2 paths") {
  Multigraph tp3 = gen_three_path(3);  // two hubs, three length-3 paths
  ContractionResult c = contract_degree2_paths(tp3);
  CHECK(c.contracted.vertex_count() == 2);
  CHECK(c.contracted.edge_count() == 3);
  for (const auto& p : c.paths) CHECK(p.size() == 3);  // |Q2| = 2 each

  Multigraph petersen = gen_petersen();
  ContractionResult id = contract_degree2_paths(petersen);
  CHECK(id.contracted.vertex_count() == 10);
  CHECK(id.contracted.edge_count() == 15);
  for (const auto& p : id.paths) CHECK(p.size() == 1);

  Multigraph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  CHECK_THROWS_AS(contract_degree2_paths(c6), solver_error);
}

TEST_CASE("subcubic weights") {
  Multigraph petersen = gen_petersen();
  ContractionResult id = contract_degree2_paths(petersen);
  DfsStructure d = dfs_structure(id.contracted, 0);
  WeightVector sub = subcubic_weights(id.contracted, d.removable, id.paths);
  WeightVector plain = ms_weights(id.contracted, d.removable);
  CHECK(sub.w == plain.w);

  Multigraph tp3 = gen_three_path(3);
  ContractionResult c = contract_degree2_paths(tp3);
  DfsStructure dt = dfs_structure(c.contracted, 0);
  CHECK(dt.removable.size() == 3);  // triple edge: everything removable
  WeightVector wt = subcubic_weights(c.contracted, dt.removable, c.paths);
  CHECK(wt.w == std::vector<std::int64_t>{1, 1, 1});  // |Q2| - 1 = 1
}

TEST_CASE("subcubic expansion") {
  // Identity contraction reproduces the cubic construction edge for edge.
  Multigraph petersen = gen_petersen();
  ContractionResult id = contract_degree2_paths(petersen);
  DfsStructure d = dfs_structure(id.contracted, 0);
  WeightVector w = subcubic_weights(id.contracted, d.removable, id.paths);
  PerfectMatching m = min_weight_perfect_matching(id.contracted, w);
  EulerianSubgraph hc = build_eulerian_h(id.contracted, m, d.removable);
  EulerianSubgraph h = expand_to_subcubic(hc, id, petersen, m, d.removable);
  for (int e = 0; e < id.contracted.edge_count(); ++e)
    CHECK(h.mult[id.paths[e][0]] == hc.mult[e]);

  // Three length-3 paths between hubs: n = 8, bound floor is 10 edges.
  Multigraph tp3 = gen_three_path(3);
  SolveReport r = solve_ms(tp3);
  CHECK(r.h_edges * 3 <= 4 * 8 - 2);
  CHECK(verify_report(tp3, r).ok());
}

TEST_CASE("solve_ms: named instances") {
  SolveReport petersen = solve_ms(gen_petersen());
  CHECK(petersen.h_edges == 12);  // 15 + c(M*), c(M*) = -3
  CHECK(petersen.tour.length <= 12);
  CHECK(verify_report(gen_petersen(), petersen).ok());
  REQUIRE(petersen.cycle_cover.has_value());
  CHECK(petersen.cycle_cover->size() <= (10 / 6 + 2) / 1);  // coarse sanity
  CHECK((int)petersen.cycle_cover->size() <= (10 + 4) / 6);

  SolveReport triple = solve_ms(gen_triple_edge());
  CHECK(triple.h_edges == 2);  // tight: 2 = (4*2 - 2)/3
  CHECK(triple.tour.length == 2);

  SolveReport f2 = solve_ms(gen_fk(2));
  CHECK(f2.h_edges <= 28);  // floor((4*22 - 2)/3)
  CHECK(verify_report(gen_fk(2), f2).ok());

  Multigraph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  SolveReport cyc = solve_ms(c6);
  CHECK(cyc.h_edges == 6);
  CHECK(cyc.tour.length == 6);
  CHECK(verify_report(c6, cyc).ok());

  Multigraph pair2(2, {{0, 1}, {0, 1}});
  SolveReport p2 = solve_ms(pair2);
  CHECK(p2.h_edges == 2);
}

TEST_CASE("solve_ms: rejections") {
  Multigraph barbell(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}});
  CHECK_THROWS_AS(solve_ms(barbell), solver_error);

  Multigraph k5(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4},
                    {2, 3}, {2, 4}, {3, 4}});
  CHECK_THROWS_AS(solve_ms(k5), solver_error);

  CHECK_THROWS_AS(solve_ms(gen_triple_edge(), MsOptions{true}), solver_error);

  try {
    solve_ms(barbell);
  } catch (const solver_error& e) {
    CHECK(e.code() == errc::bridge_found);
  }
}

TEST_CASE("solve_ms: cubic multigraph properties") {
  std::mt19937_64 rng(404);
  for (int iter = 0; iter < 60; ++iter) {
    std::uniform_int_distribution<int> nn(2, 40);
    int n = 2 * nn(rng);
    Multigraph g = gen_random_cubic(n, 8800 + iter);
    DfsStructure d = dfs_structure(g, 0);
    WeightVector w = ms_weights(g, d.removable);
    PerfectMatching m = min_weight_perfect_matching(g, w);
    std::int64_t c = matching_weight(w, m);
    CHECK(6 * c <= -(n + 4));  // c <= -(n/6 + 2/3)

    SolveReport r = solve_ms(g);
    CHECK(verify_report(g, r).ok());
    CHECK(3 * r.h_edges <= 4 * n - 2);
    CHECK(r.h_edges == g.edge_count() + c);

    // h = n + 2 |M* ∩ T*| ties the two views of the construction together.
    std::set<int> tstar(r.tree_star.begin(), r.tree_star.end());
    int overlap = 0;
    for (int e : r.matching_used.edge_ids) overlap += tstar.count(e);
    CHECK(r.h_edges == n + 2 * overlap);

    REQUIRE(r.cycle_cover.has_value());
    CHECK((int)r.cycle_cover->size() <= (n + 4) / 6);
  }
}

TEST_CASE("solve_ms: subcubic properties") {
  std::mt19937_64 rng(905);
  for (int iter = 0; iter < 60; ++iter) {
    std::uniform_int_distribution<int> nn(2, 20), ss(1, 20);
    int n3 = 2 * nn(rng);
    int n2 = ss(rng);
    Multigraph g = gen_random_subcubic(n3, n2, 7100 + iter);
    int n = g.vertex_count();

    SolveReport r = solve_ms(g);
    CHECK(verify_report(g, r).ok());
    CHECK(3 * r.h_edges <= 4 * n - 2);

    // The optimum of the contracted weighting obeys n2/3 - n3/6 - 2/3.
    ContractionResult c = contract_degree2_paths(g);
    DfsStructure d = dfs_structure(c.contracted, 0);
    WeightVector w = subcubic_weights(c.contracted, d.removable, c.paths);
    PerfectMatching m = min_weight_perfect_matching(c.contracted, w);
    CHECK(6 * matching_weight(w, m) <= 2 * n2 - n3 - 4);
  }
}
