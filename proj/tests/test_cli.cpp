#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "tropspec/bounds.hpp"
#include "tropspec/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TROPSPEC_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write(const std::string& name, const std::string& content) {
  const fs::path dir = fs::temp_directory_path() / "tropspec_cli_test";
  fs::create_directories(dir);
  const fs::path path = dir / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("troots in max-plus mode") {
  const Run r = run("--json troots --max-plus " + write("p.json", "[1, 2, 0, -1]"));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j["roots"].size() == 2);
  CHECK(j["roots"][0]["log_value"].get<double>() == doctest::Approx(1.5));
  CHECK(j["roots"][0]["multiplicity"] == 2);
  CHECK(j["roots"][1]["log_value"].get<double>() == doctest::Approx(-1));
  CHECK(j["newton_polygon"]["saturated"] == json::array({0, 1, 3}));
}

TEST_CASE("troots of z^2 - 3z + 2 with the hop table") {
  const Run r = run("--json troots --hop " + write("q.json", "[2, -3, 1]"));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["roots"][0]["value"].get<double>() == doctest::Approx(3.0));
  CHECK(j["roots"][1]["value"].get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(j.contains("hop"));
  CHECK(run("troots " + write("q.json", "[2, -3, 1]")).out.find("0.666667") != std::string::npos);
}

TEST_CASE("constant polynomial exits 2") {
  CHECK(run("troots " + write("c.json", "[5]")).code == 2);
  CHECK(run("troots " + write("bad.json", "[1, ")).code == 2);
  CHECK(run("troots /nonexistent.json").code == 2);
}

TEST_CASE("teig examples") {
  const Run ones = run("--json teig --method both " + write("ones.json", "[[1,1,1,1],[1,1,1,1],[1,1,1,1],[1,1,1,1]]"));
  REQUIRE(ones.code == 0);
  const json j = json::parse(ones.out);
  for (const json& g : j["gammas"]) CHECK(g.get<double>() == doctest::Approx(1.0));
  CHECK(j["routes_agree"] == true);
  CHECK(j["rho_max_matches_gamma1"] == true);

  const Run diag = run("--json teig " + write("d.csv", "3,0,0\n0,2,0\n0,0,1\n"));
  REQUIRE(diag.code == 0);
  const json d = json::parse(diag.out);
  CHECK(d["gammas"][0].get<double>() == doctest::Approx(3));
  CHECK(d["gammas"][1].get<double>() == doctest::Approx(2));
  CHECK(d["gammas"][2].get<double>() == doctest::Approx(1));

  const Run comp = run("--json teig --format coo " + write("comp.txt", "2\n1 2 1\n2 1 -2\n2 2 3\n"));
  REQUIRE(comp.code == 0);
  const json c = json::parse(comp.out);
  CHECK(c["gammas"][0].get<double>() == doctest::Approx(3));
  CHECK(c["gammas"][1].get<double>() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("bounds reports") {
  const std::string mono = write("mono.json", "[[0,2,0],[0,0,[0,3]],[0.5,0,0]]");
  const Run r = run("--json bounds " + mono);
  REQUIRE(r.code == 0);
  const tropspec::BoundReport rep = tropspec::io::bound_report_from_json(json::parse(r.out));
  REQUIRE(rep.rows.size() == 3);
  for (const auto& row : rep.rows) CHECK(row.ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(tropspec::io::to_json(rep) == json::parse(r.out));

  const Run csv = run("--csv bounds --k-range 2:3 --lower " + mono);
  REQUIRE(csv.code == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 3);

  const Run id = run("bounds " + write("id.json", "[[1,0],[0,1]]"));
  CHECK(id.code == 0);
  CHECK(run("bounds --k-range 5 " + mono).code == 2);
  CHECK(run("bounds " + write("dup.txt", "2\n1 1 1\n1 1 1\n")).code == 2);
  CHECK(run("bounds " + write("rect.json", "[[1,2],[3]]")).code == 2);
}

TEST_CASE("verify suites") {
  const Run upper = run("--json --seed 1 verify --suite upper --instances 1000 --nmax 6");
  REQUIRE(upper.code == 0);
  const json j = json::parse(upper.out);
  CHECK(j["passed"] == 1000);
  CHECK(j["instances"] == 1000);

  const Run circ = run("--json verify --suite circulation --instances 500");
  REQUIRE(circ.code == 0);
  CHECK(json::parse(circ.out)["passed"] == 500);

  const Run hop = run("--json verify --suite hop --instances 1000");
  REQUIRE(hop.code == 0);
  CHECK(json::parse(hop.out)["passed"] == 1000);

  CHECK(run("verify --suite nope").code == 2);
  CHECK(run("--json --csv verify --suite upper").code == 2);
}

TEST_CASE("output is deterministic for a fixed seed") {
  const std::string args = "--json --seed 7 verify --suite lower --instances 50";
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("companion tables") {
  const Run r = run("--json companion " + write("p6.json", "[1, -2, 0.5, 3, -1, 2, 1]"));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.size() == 6);
  for (const json& row : j) {
    CHECK(row["exact_constant"].get<double>() <= row["explicit_constant"].get<double>() * (1 + 1e-12));
    CHECK(row["holds"] == true);
  }
  const Run unit = run("--json companion " + write("z5.json", "[-1, 0, 0, 0, 0, 1]"));
  REQUIRE(unit.code == 0);
  for (const json& row : json::parse(unit.out)) CHECK(row["ratio"].get<double>() == doctest::Approx(1.0));

  const Run sparse = run("--json companion " + write("z3.json", "[1, 0, 1, 1]"));
  REQUIRE(sparse.code == 0);
  const json s = json::parse(sparse.out);
  CHECK(s[0]["exact_constant"].get<double>() < s[0]["explicit_constant"].get<double>());
}

TEST_CASE("decompose circulations") {
  const Run r = run("--json decompose " + write("b.json", "[[1,1],[1,1]]"));
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["weight"] == 2);
  CHECK(j["parts"].size() == 2);
  CHECK(run("decompose " + write("nc.json", "[[0,1],[0,0]]")).code == 2);
  CHECK(run("decompose " + write("frac.json", "[[0.5]]")).code == 2);
}
