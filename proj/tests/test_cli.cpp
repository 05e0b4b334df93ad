#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using json = nlohmann::json;

namespace {

#ifndef GRAPHTSP_CLI_PATH
#error "GRAPHTSP_CLI_PATH must point at the CLI binary"
#endif

const std::string kCli = GRAPHTSP_CLI_PATH;

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

int run(const std::string& args, const std::string& out_file) {
  std::string cmd = kCli + " " + args + " > " + out_file + " 2> " + out_file +
                    ".err";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("gen writes the documented format") {
  std::string out = tmp_path("triple.out");
  REQUIRE(run("gen triple_edge", out) == 0);
  CHECK(slurp(out) == "2 3\n0 1\n0 1\n0 1\n");

  std::string pet = tmp_path("petersen.graph");
  REQUIRE(run("gen petersen -o " + pet, tmp_path("gen.out")) == 0);
  std::string text = slurp(pet);
  CHECK(text.substr(0, 5) == "10 15");

  std::string fk = tmp_path("fk2.graph");
  REQUIRE(run("gen fk 2 -o " + fk, tmp_path("gen.out")) == 0);
  CHECK(slurp(fk).substr(0, 5) == "22 33");

  CHECK(run("gen nosuch", tmp_path("bad.out")) == 2);
}

TEST_CASE("solve emits a verified record with exit code 0") {
  std::string pet = tmp_path("petersen.graph");
  REQUIRE(run("gen petersen -o " + pet, tmp_path("gen.out")) == 0);

  std::string out = tmp_path("solve_ms.json");
  REQUIRE(run("solve " + pet + " -a ms", out) == 0);
  json rec = json::parse(slurp(out));
  CHECK(rec["algorithm"] == "ms");
  CHECK(rec["n"] == 10);
  CHECK(rec["m"] == 15);
  CHECK(rec["h_edges"].get<long long>() <= 12);
  CHECK(rec["tour_length"].get<long long>() <= 12);
  CHECK(rec["verified"] == true);
  CHECK(rec["tour"].size() == 10);

  std::string mc = tmp_path("solve_mc.json");
  REQUIRE(run("solve " + pet + " -a matchcomb", mc) == 0);
  json mrec = json::parse(slurp(mc));
  CHECK(mrec["tour_length"].get<long long>() == 11);
}

TEST_CASE("distinct exit codes for distinct failures") {
  std::string fk = tmp_path("fk2.graph");
  REQUIRE(run("gen fk 2 -o " + fk, tmp_path("gen.out")) == 0);
  CHECK(run("solve " + fk + " -a exact", tmp_path("exact.out")) == 5);
  CHECK(run("solve " + fk + " -a matchcomb", tmp_path("mc.out")) == 5);

  std::string bar = tmp_path("barbell.graph");
  {
    std::ofstream f(bar);
    f << "6 7\n0 1\n1 2\n2 0\n3 4\n4 5\n5 3\n0 3\n";
  }
  CHECK(run("solve " + bar + " -a ms", tmp_path("bridge.out")) == 3);
  CHECK(run("solve " + bar + " -a bridges", tmp_path("bridges.out")) == 0);

  std::string k5 = tmp_path("k5.graph");
  {
    std::ofstream f(k5);
    f << "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
  }
  CHECK(run("solve " + k5 + " -a ms", tmp_path("deg.out")) == 4);

  CHECK(run("solve no_such_file.graph", tmp_path("nofile.out")) == 2);
}

TEST_CASE("records round-trip through verify") {
  std::string pet = tmp_path("petersen.graph");
  REQUIRE(run("gen petersen -o " + pet, tmp_path("gen.out")) == 0);
  std::string rec_path = tmp_path("record.json");
  REQUIRE(run("solve " + pet + " -a ms", rec_path) == 0);
  CHECK(run("verify " + pet + " " + rec_path, tmp_path("verify.json")) == 0);

  // Corrupt one multiplicity; verification must fail with exit code 1.
  json rec = json::parse(slurp(rec_path));
  rec["certificate"]["h_mult"][0] =
      rec["certificate"]["h_mult"][0].get<int>() == 1 ? 2 : 1;
  std::string bad_path = tmp_path("record_bad.json");
  {
    std::ofstream f(bad_path);
    f << rec.dump(2) << '\n';
  }
  CHECK(run("verify " + pet + " " + bad_path, tmp_path("verify_bad.json")) == 1);
}

TEST_CASE("oracle and ser subcommands") {
  std::string pet = tmp_path("petersen.graph");
  REQUIRE(run("gen petersen -o " + pet, tmp_path("gen.out")) == 0);

  std::string hk = tmp_path("oracle.json");
  REQUIRE(run("oracle " + pet, hk) == 0);
  CHECK(json::parse(slurp(hk))["opt"] == 11);

  std::string sv = tmp_path("ser.json");
  REQUIRE(run("ser " + pet, sv) == 0);
  double value = json::parse(slurp(sv))["value"].get<double>();
  CHECK(value == doctest::Approx(10.0).epsilon(1e-6));
}

TEST_CASE("same input and seed give byte-identical untimed output") {
  std::string g = tmp_path("rc.graph");
  REQUIRE(run("gen random_cubic 16 --seed 7 -o " + g, tmp_path("gen.out")) == 0);
  std::string a = tmp_path("det_a.json"), b = tmp_path("det_b.json");
  REQUIRE(run("solve " + g + " -a ms --no-timing", a) == 0);
  REQUIRE(run("solve " + g + " -a ms --no-timing", b) == 0);
  std::string ja = slurp(a), jb = slurp(b);
  // The command echo differs only in the output redirect, which is not part
  // of argv; the payloads must match byte for byte.
  CHECK(ja == jb);
  CHECK(!ja.empty());
}

TEST_CASE("bench sweeps") {
  std::string csv = tmp_path("sweep.csv");
  REQUIRE(run("bench --family three_path --params 2:4 --algorithms exact "
              "--out " + csv,
              tmp_path("bench.out")) == 0);
  std::string text = slurp(csv);
  CHECK(text.find("family,param,n,algorithm,h_edges,bound,lower_bound,ratio,"
                  "wall_ms,status") == 0);
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 4);  // header + 3 rows

  // Concurrent rows keep the sweep order.
  std::string csv2 = tmp_path("sweep2.csv");
  REQUIRE(run("bench --family random_cubic --params 8:16:4 --algorithms "
              "ms,bridges --jobs 3 --seed 1 --out " + csv2,
              tmp_path("bench2.out")) == 0);
  std::string t2 = slurp(csv2);
  std::istringstream in(t2);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::string> first_cols;
  while (std::getline(in, line))
    first_cols.push_back(line.substr(0, line.find(',', 13)));
  REQUIRE(first_cols.size() == 6);
  for (const auto& l : first_cols) CHECK(l.find("error") == std::string::npos);

  // Empty sweep: header only.
  std::string csv3 = tmp_path("sweep3.csv");
  REQUIRE(run("bench --family petersen --params '' --out " + csv3,
              tmp_path("bench3.out")) == 0);
  CHECK(slurp(csv3) ==
        "family,param,n,algorithm,h_edges,bound,lower_bound,ratio,wall_ms,"
        "status\n");
}
