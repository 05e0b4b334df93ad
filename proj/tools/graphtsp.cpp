#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "graphtsp/bounds_lab.hpp"
#include "graphtsp/bridge_decomposer.hpp"
#include "graphtsp/matchcomb.hpp"
#include "graphtsp/ms_solver.hpp"

using json = nlohmann::ordered_json;
using namespace graphtsp;

namespace {

// Exit codes: 0 ok, 1 verification failure, 2 usage/input error, 3 bridge
// found, 4 degree violation, 5 budget exceeded, 6 matching/certificate error.
int exit_code_for(const solver_error& e) {
  switch (e.code()) {
    case errc::bridge_found:
      return 3;
    case errc::degree_violation:
      return 4;
    case errc::budget_exceeded:
      return 5;
    case errc::no_perfect_matching:
    case errc::bad_certificate:
      return 6;
    default:
      return 2;
  }
}

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), errc::invalid_input, "cannot open: " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char c;
  while (in.get(c)) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json record_from_report(const std::string& command, const std::string& hash,
                        const Multigraph& g, const SolveReport& r,
                        const Verdict& verdict, bool no_timing) {
  json rec;
  rec["command"] = command;
  rec["input_hash"] = hash;
  rec["algorithm"] = r.algorithm;
  rec["n"] = g.vertex_count();
  rec["m"] = g.edge_count();
  rec["h_edges"] = r.h_edges;
  rec["tour"] = r.tour.order;
  rec["tour_length"] = r.tour.length;
  rec["bound"] = r.bound();
  rec["verified"] = verdict.ok();
  rec["failures"] = verdict.failures;
  rec["wall_ms"] = no_timing ? 0.0 : r.wall_ms;
  json cert;
  cert["bound_num"] = r.bound_num;
  cert["h_mult"] = r.h.mult;
  cert["matching"] = r.matching_used.edge_ids;
  cert["r_set"] = r.r_set;
  cert["tree_star"] = r.tree_star;
  cert["on_host"] = r.certificates_on_host;
  if (r.cycle_cover.has_value()) cert["cycle_cover"] = *r.cycle_cover;
  rec["certificate"] = cert;
  return rec;
}

SolveReport report_from_record(const Multigraph& g, const json& rec) {
  SolveReport r;
  r.algorithm = rec.at("algorithm").get<std::string>();
  const json& cert = rec.at("certificate");
  r.h = EulerianSubgraph{&g, cert.at("h_mult").get<std::vector<int>>()};
  r.h_edges = rec.at("h_edges").get<std::int64_t>();
  r.bound_num = cert.at("bound_num").get<std::int64_t>();
  r.tour.order = rec.at("tour").get<std::vector<int>>();
  r.tour.length = rec.at("tour_length").get<std::int64_t>();
  r.matching_used.edge_ids = cert.at("matching").get<std::vector<int>>();
  r.r_set = cert.at("r_set").get<std::vector<int>>();
  r.tree_star = cert.at("tree_star").get<std::vector<int>>();
  r.certificates_on_host = cert.at("on_host").get<bool>();
  if (cert.contains("cycle_cover"))
    r.cycle_cover = cert.at("cycle_cover").get<std::vector<std::vector<int>>>();
  return r;
}

std::string join_args(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

std::vector<std::int64_t> parse_params(const std::string& spec) {
  std::vector<std::int64_t> out;
  if (spec.empty()) return out;
  if (spec.find(':') != std::string::npos) {
    std::int64_t a, b, step = 1;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    in >> a >> c1 >> b;
    if (in >> c2 >> step) {
    }
    require(c1 == ':' && step > 0, errc::invalid_input,
            "bad sweep spec, expected a:b[:step]");
    for (std::int64_t v = a; v <= b; v += step) out.push_back(v);
    return out;
  }
  std::istringstream in(spec);
  std::string piece;
  while (std::getline(in, piece, ','))
    if (!piece.empty()) out.push_back(std::stoll(piece));
  return out;
}

struct BenchRow {
  std::string family;
  std::int64_t param = 0;
  int n = 0;
  std::string algorithm;
  std::string h_edges, bound, lower_bound, ratio, wall_ms;
  std::string status = "ok";
};

std::string fmt_double(double v) {
  std::ostringstream out;
  out.precision(9);
  out << v;
  return out.str();
}

BenchRow bench_one(const std::string& family, std::int64_t param,
                   const std::string& algorithm, std::uint64_t seed,
                   int enum_budget, int hk_budget, int lp_budget) {
  BenchRow row;
  row.family = family;
  row.param = param;
  row.algorithm = algorithm;
  try {
    Multigraph g = gen_family(FamilySpec{family, param, seed, false});
    row.n = g.vertex_count();
    if (algorithm == "ms" || algorithm == "matchcomb" ||
        algorithm == "bridges") {
      SolveReport r;
      if (algorithm == "ms")
        r = solve_ms(g);
      else if (algorithm == "matchcomb")
        r = solve_matchcomb(g, enum_budget);
      else
        r = solve_with_bridges(g);
      Verdict verdict = verify_report(g, r);
      require(verdict.ok(), errc::bad_certificate, "verification failed");
      std::int64_t lb = bridge_lower_bound(g);
      row.h_edges = std::to_string(r.h_edges);
      row.bound = fmt_double(r.bound());
      row.lower_bound = std::to_string(lb);
      row.ratio = fmt_double(static_cast<double>(r.tour.length) /
                             static_cast<double>(lb));
      row.wall_ms = fmt_double(r.wall_ms);
    } else if (algorithm == "exact") {
      auto t0 = std::chrono::steady_clock::now();
      std::int64_t opt = held_karp_opt(g, hk_budget);
      SerResult ser = ser_value(g, lp_budget);
      auto t1 = std::chrono::steady_clock::now();
      row.h_edges = std::to_string(opt);
      row.lower_bound = fmt_double(ser.value);
      row.ratio = fmt_double(static_cast<double>(opt) / ser.value);
      row.wall_ms =
          fmt_double(std::chrono::duration<double, std::milli>(t1 - t0).count());
    } else if (algorithm == "ser") {
      auto t0 = std::chrono::steady_clock::now();
      SerResult ser = ser_value(g, lp_budget);
      auto t1 = std::chrono::steady_clock::now();
      row.lower_bound = fmt_double(ser.value);
      row.wall_ms =
          fmt_double(std::chrono::duration<double, std::milli>(t1 - t0).count());
    } else {
      fail(errc::invalid_input, "unknown algorithm: " + algorithm);
    }
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-TSP toolkit for cubic and subcubic multigraphs"};
  app.require_subcommand(1);
  std::string command_echo = join_args(argc, argv);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a named graph family");
  std::string gen_family_name, gen_out;
  std::int64_t gen_param = 0;
  std::uint64_t gen_seed = 0;
  bool gen_simple = false;
  gen->add_option("family", gen_family_name, "family name")->required();
  gen->add_option("param", gen_param, "size parameter");
  gen->add_option("--seed", gen_seed, "random seed (default 0)");
  gen->add_flag("--simple", gen_simple, "forbid parallel edges");
  gen->add_option("-o,--out", gen_out, "output path (default stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "run a solver and emit a record");
  std::string solve_in, solve_algorithm = "ms";
  int solve_enum_budget = 20, solve_hk_budget = 18;
  bool solve_strict_simple = false, solve_no_timing = false;
  solve->add_option("input", solve_in, "graph file")->required();
  solve->add_option("-a,--algorithm", solve_algorithm,
                    "ms | matchcomb | bridges | exact");
  solve->add_option("--enum-budget", solve_enum_budget,
                    "matching enumeration budget (vertices)");
  solve->add_option("--hk-budget", solve_hk_budget,
                    "exact oracle budget (vertices)");
  solve->add_flag("--strict-simple", solve_strict_simple,
                  "reject parallel edges");
  solve->add_flag("--no-timing", solve_no_timing,
                  "zero timing fields for reproducible output");

  // verify
  auto* verify = app.add_subcommand("verify", "re-check a stored record");
  std::string verify_graph, verify_record;
  verify->add_option("graph", verify_graph, "graph file")->required();
  verify->add_option("record", verify_record, "record JSON file")->required();

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact optimum by dynamic programming");
  std::string oracle_in;
  int oracle_budget = 18;
  bool oracle_no_timing = false;
  oracle->add_option("input", oracle_in, "graph file")->required();
  oracle->add_option("--hk-budget", oracle_budget, "vertex budget");
  oracle->add_flag("--no-timing", oracle_no_timing, "zero timing fields");

  // ser
  auto* ser = app.add_subcommand("ser", "subtour relaxation value");
  std::string ser_in;
  int ser_budget = 40;
  bool ser_no_timing = false;
  ser->add_option("input", ser_in, "graph file")->required();
  ser->add_option("--lp-budget", ser_budget, "vertex budget");
  ser->add_flag("--no-timing", ser_no_timing, "zero timing fields");

  // bench
  auto* bench = app.add_subcommand("bench", "sweep a family and emit CSV");
  std::string bench_family, bench_params, bench_algorithms = "ms", bench_out;
  std::uint64_t bench_seed = 0;
  int bench_jobs = 1, bench_enum = 20, bench_hk = 18, bench_lp = 40;
  bench->add_option("--family", bench_family, "family name")->required();
  bench->add_option("--params", bench_params, "a:b[:step] or comma list");
  bench->add_option("--algorithms", bench_algorithms, "comma list");
  bench->add_option("--out", bench_out, "CSV path (default stdout)");
  bench->add_option("--seed", bench_seed, "base random seed");
  bench->add_option("--jobs", bench_jobs, "concurrent rows");
  bench->add_option("--enum-budget", bench_enum, "matchcomb budget");
  bench->add_option("--hk-budget", bench_hk, "exact budget");
  bench->add_option("--lp-budget", bench_lp, "relaxation budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Multigraph g =
          gen_family(FamilySpec{gen_family_name, gen_param, gen_seed, gen_simple});
      if (gen_out.empty()) {
        write_graph(std::cout, g);
      } else {
        write_graph_file(gen_out, g);
      }
      return 0;
    }

    if (*solve) {
      Multigraph g = read_graph_file(solve_in);
      std::string hash = hex64(fnv1a_file(solve_in));
      SolveReport r;
      if (solve_algorithm == "ms") {
        r = solve_ms(g, MsOptions{solve_strict_simple});
      } else if (solve_algorithm == "matchcomb") {
        r = solve_matchcomb(g, solve_enum_budget);
      } else if (solve_algorithm == "bridges") {
        r = solve_with_bridges(g);
      } else if (solve_algorithm == "exact") {
        auto t0 = std::chrono::steady_clock::now();
        std::int64_t opt = held_karp_opt(g, solve_hk_budget);
        auto t1 = std::chrono::steady_clock::now();
        json rec;
        rec["command"] = command_echo;
        rec["input_hash"] = hash;
        rec["algorithm"] = "exact";
        rec["n"] = g.vertex_count();
        rec["m"] = g.edge_count();
        rec["h_edges"] = opt;
        rec["tour"] = json::array();
        rec["tour_length"] = opt;
        rec["bound"] = static_cast<double>(opt);
        rec["verified"] = true;
        rec["failures"] = json::array();
        rec["wall_ms"] =
            solve_no_timing
                ? 0.0
                : std::chrono::duration<double, std::milli>(t1 - t0).count();
        std::cout << rec.dump(2) << '\n';
        return 0;
      } else {
        fail(errc::invalid_input, "unknown algorithm: " + solve_algorithm);
      }
      Verdict verdict = verify_report(g, r);
      json rec = record_from_report(command_echo, hash, g, r, verdict,
                                    solve_no_timing);
      std::cout << rec.dump(2) << '\n';
      bool bound_holds = 3 * r.h_edges <= r.bound_num;
      return verdict.ok() && bound_holds ? 0 : 1;
    }

    if (*verify) {
      Multigraph g = read_graph_file(verify_graph);
      std::ifstream in(verify_record);
      require(in.good(), errc::invalid_input,
              "cannot open record: " + verify_record);
      json rec = json::parse(in);
      SolveReport r = report_from_record(g, rec);
      Verdict verdict = verify_report(g, r);
      json out;
      out["verified"] = verdict.ok();
      out["failures"] = verdict.failures;
      std::cout << out.dump(2) << '\n';
      return verdict.ok() ? 0 : 1;
    }

    if (*oracle) {
      Multigraph g = read_graph_file(oracle_in);
      auto t0 = std::chrono::steady_clock::now();
      std::int64_t opt = held_karp_opt(g, oracle_budget);
      auto t1 = std::chrono::steady_clock::now();
      json out;
      out["command"] = command_echo;
      out["input_hash"] = hex64(fnv1a_file(oracle_in));
      out["n"] = g.vertex_count();
      out["m"] = g.edge_count();
      out["opt"] = opt;
      out["wall_ms"] =
          oracle_no_timing
              ? 0.0
              : std::chrono::duration<double, std::milli>(t1 - t0).count();
      std::cout << out.dump(2) << '\n';
      return 0;
    }

    if (*ser) {
      Multigraph g = read_graph_file(ser_in);
      auto t0 = std::chrono::steady_clock::now();
      SerResult res = ser_value(g, ser_budget);
      auto t1 = std::chrono::steady_clock::now();
      json out;
      out["command"] = command_echo;
      out["input_hash"] = hex64(fnv1a_file(ser_in));
      out["n"] = g.vertex_count();
      out["m"] = g.edge_count();
      out["value"] = res.value;
      out["iterations"] = res.iterations;
      out["cuts"] = res.active_cuts;
      out["wall_ms"] =
          ser_no_timing
              ? 0.0
              : std::chrono::duration<double, std::milli>(t1 - t0).count();
      std::cout << out.dump(2) << '\n';
      return 0;
    }

    if (*bench) {
      std::vector<std::int64_t> params = parse_params(bench_params);
      std::vector<std::string> algorithms;
      {
        std::istringstream in(bench_algorithms);
        std::string piece;
        while (std::getline(in, piece, ','))
          if (!piece.empty()) algorithms.push_back(piece);
      }
      struct Task {
        std::int64_t param;
        std::string algorithm;
        std::uint64_t seed;
      };
      std::vector<Task> tasks;
      for (std::size_t pi = 0; pi < params.size(); ++pi)
        for (const auto& alg : algorithms)
          tasks.push_back({params[pi], alg, bench_seed + 1000003ULL * pi});
      std::vector<BenchRow> rows(tasks.size());
      int jobs = std::max(1, bench_jobs);
      std::atomic<std::size_t> next{0};
      auto worker = [&]() {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= tasks.size()) return;
          rows[i] = bench_one(bench_family, tasks[i].param, tasks[i].algorithm,
                              tasks[i].seed, bench_enum, bench_hk, bench_lp);
        }
      };
      std::vector<std::thread> pool;
      for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();

      std::ostringstream csv;
      csv << "family,param,n,algorithm,h_edges,bound,lower_bound,ratio,"
             "wall_ms,status\n";
      for (const auto& row : rows)
        csv << row.family << ',' << row.param << ',' << row.n << ','
            << row.algorithm << ',' << row.h_edges << ',' << row.bound << ','
            << row.lower_bound << ',' << row.ratio << ',' << row.wall_ms << ','
            << row.status << '\n';
      if (bench_out.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream out(bench_out);
        require(out.good(), errc::invalid_input,
                "cannot open output: " + bench_out);
        out << csv.str();
      }
      return 0;
    }
  } catch (const solver_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
