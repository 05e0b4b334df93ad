#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "graphtsp/bounds_lab.hpp"
#include "graphtsp/simplex.hpp"
#include "testutil.hpp"

using namespace graphtsp;

TEST_CASE("simplex basics") {
  // max x+y st x<=2, y<=3, x+y<=4
  auto r = lp_maximize({{1, 0}, {0, 1}, {1, 1}}, {2, 3, 4}, {1, 1});
  REQUIRE(r.status == LpResult::Status::optimal);
  CHECK(r.value == doctest::Approx(4.0));

  // infeasible: x <= -1
  auto bad = lp_maximize({{1}}, {-1}, {1});
  CHECK(bad.status == LpResult::Status::infeasible);

  // unbounded: max x, no constraints that bind
  auto unb = lp_maximize({{-1}}, {0}, {1});
  CHECK(unb.status == LpResult::Status::unbounded);
}

TEST_CASE("held-karp examples") {
  CHECK(held_karp_opt(gen_petersen()) == 11);
  CHECK(held_karp_opt(gen_fk(1)) == 10);
  CHECK(held_karp_opt(gen_k2m(6)) == 8);  // 2n-4 with n=6

  Multigraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  CHECK(held_karp_opt(c5) == 5);

  Multigraph path4(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(held_karp_opt(path4) == 6);

  CHECK_THROWS_AS(held_karp_opt(gen_fk(2)), solver_error);  // n=22 > budget
}

TEST_CASE("ser: basic values and ordering against the exact oracle") {
  SerResult petersen = ser_value(gen_petersen());
  CHECK(petersen.value == doctest::Approx(10.0).epsilon(1e-6));

  Multigraph c6(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  SerResult hc = ser_value(c6);
  CHECK(hc.value == doctest::Approx(6.0).epsilon(1e-6));

  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 12; ++iter) {
    std::uniform_int_distribution<int> nn(3, 9), xx(0, 6);
    Multigraph g = testutil::random_connected_multigraph(nn(rng), xx(rng), rng);
    SerResult s = ser_value(g);
    double hk = static_cast<double>(held_karp_opt(g));
    CHECK(s.value >= g.vertex_count() - 1e-6);
    CHECK(s.value <= hk + 1e-6);
  }
}

TEST_CASE("ser: three-path ratios climb toward 4/3") {
  double prev = 0.0;
  for (int k = 2; k <= 6; ++k) {
    Multigraph g = gen_three_path(k);
    double hk = static_cast<double>(held_karp_opt(g));
    double ser = ser_value(g).value;
    double ratio = hk / ser;
    CHECK(ratio >= prev - 1e-9);
    CHECK(ratio <= 4.0 / 3.0 + 1e-6);
    prev = ratio;
  }
  CHECK(prev > 1.2);  // k=6 is already well on the way to 4/3
}

TEST_CASE("ser: chorded-gap instance stays within the conjectured gap") {
  Multigraph g = gen_chorded_gap(2);  // n = 14
  REQUIRE(g.vertex_count() == 14);
  double hk = static_cast<double>(held_karp_opt(g));
  double ser = ser_value(g).value;
  CHECK(ser >= 14.0 - 1e-6);
  CHECK(hk / ser <= 4.0 / 3.0 + 1e-6);
  MESSAGE("chorded_gap(2): hk=", hk, " ser=", ser, " ratio=", hk / ser);
}

TEST_CASE("family generators meet their contracts") {
  Multigraph f2 = gen_fk(2);
  CHECK(f2.vertex_count() == 22);
  for (int v = 0; v < 22; ++v) CHECK(f2.degree(v) == 3);
  CHECK(find_bridges(f2).empty());

  Multigraph tp3 = gen_three_path(3);
  CHECK(tp3.vertex_count() == 8);
  CHECK(tp3.degree(0) == 3);
  CHECK(tp3.degree(1) == 3);
  for (int v = 2; v < 8; ++v) CHECK(tp3.degree(v) == 2);

  CHECK(gen_three_path(1).edge_count() == 3);  // collapses to the triple edge

  Multigraph cg3 = gen_chorded_gap(3);
  CHECK(cg3.vertex_count() == 2 + 3 * 2 * 4);
  for (int v = 0; v < cg3.vertex_count(); ++v) CHECK(cg3.degree(v) == 3);
  CHECK(find_bridges(cg3).empty());

  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Multigraph rc = gen_random_cubic(16, seed);
    CHECK(rc.vertex_count() == 16);
    for (int v = 0; v < 16; ++v) CHECK(rc.degree(v) == 3);
    CHECK(is_connected(rc));
    CHECK(find_bridges(rc).empty());

    Multigraph simple = gen_random_cubic(12, seed, true);
    std::set<std::pair<int, int>> pairs;
    for (auto [u, v] : simple.edges())
      CHECK(pairs.insert(std::minmax(u, v)).second);

    Multigraph sub = gen_random_subcubic(12, 5, seed);
    CHECK(sub.vertex_count() == 17);
    CHECK(find_bridges(sub).empty());
    for (int v = 0; v < 17; ++v) CHECK(sub.degree(v) <= 3);
  }

  CHECK_THROWS_AS(gen_fk(0), solver_error);
  CHECK_THROWS_AS(gen_family(FamilySpec{"nope", 1, 0, false}), solver_error);
  CHECK(gen_family(FamilySpec{"petersen", 0, 0, false}).edge_count() == 15);
}

TEST_CASE("fk closed forms satisfy their recurrences") {
  auto [t1, p1] = fk_opt_formula(1);
  CHECK(t1 == 10);
  CHECK(p1 == 12);
  auto [t2, p2] = fk_opt_formula(2);
  CHECK(t2 == 26);
  for (int k = 2; k <= 10; ++k) {
    auto [tk, pk] = fk_opt_formula(k);
    auto [tp, pp] = fk_opt_formula(k - 1);
    CHECK(tk == std::min(6 + 2 * tp, 2 + 2 * pp));
    CHECK(pk == 4 + tp + pp);
  }
  CHECK(held_karp_opt(gen_fk(1)) == fk_opt_formula(1).first);
}

TEST_CASE("verify_report flags corrupted certificates") {
  // A fabricated but valid report: the 5-cycle as its own tour.
  Multigraph c5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
  SolveReport r;
  r.algorithm = "manual";
  r.h = EulerianSubgraph{&c5, {1, 1, 1, 1, 1}};
  r.h_edges = 5;
  r.bound_num = 4 * 5 - 2;
  r.tour = Tour{{0, 1, 2, 3, 4}, 5};
  CHECK(verify_report(c5, r).ok());

  SolveReport parity = r;
  parity.h.mult[2] = 2;
  CHECK_FALSE(verify_report(c5, parity).ok());

  SolveReport inflated = r;
  inflated.h_edges = 4;  // lies about the subgraph size
  CHECK_FALSE(verify_report(c5, inflated).ok());

  SolveReport bad_bound = r;
  bad_bound.bound_num = 14;  // 14/3 < 5
  CHECK_FALSE(verify_report(c5, bad_bound).ok());

  SolveReport bad_tour = r;
  bad_tour.tour.length = 4;
  CHECK_FALSE(verify_report(c5, bad_tour).ok());
}
