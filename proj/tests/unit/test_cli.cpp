#include "common.hpp"

#include <json.hpp>

#include <sstream>

#include "cli.hpp"

using namespace qgraph::cli;

namespace {
struct Run {
  int code;
  std::string out, err;
};
Run run_cli(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = run(args, o, e);
  return {c, o.str(), e.str()};
}
std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}
}  // namespace

TEST_CASE("count prints the exact counting function", "[cli]") {
  auto r = run_cli({"count", "--x", "10"});
  REQUIRE(r.code == 0);
  auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[0] == "x,N");
  CHECK(l[1] == "10,27");
}

TEST_CASE("determinant at zero in all representations", "[cli]") {
  auto r = run_cli({"determinant", "--k", "0", "--repr", "all"});
  REQUIRE(r.code == 0);
  auto l = lines(r.out);
  REQUIRE(l.size() == 4);
  CHECK(l[0] == "k,repr,value,value_im,err_estimate,terms_used,converged");
  for (int i = 1; i <= 3; ++i) {
    std::vector<std::string> f;
    std::istringstream is(l[i]);
    for (std::string c; std::getline(is, c, ',');) f.push_back(c);
    REQUIRE(f.size() == 7);
    CHECK_THAT(std::stod(f[2]), WithinAbs(0.15915494309189535, 1e-14));
    CHECK(f[6] == "true");
  }
}

TEST_CASE("json rows carry the column names", "[cli]") {
  auto r = run_cli({"tau", "--grid", "0.1:0.3:0.1", "--repr", "all", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j.size() == 9);
  CHECK(j[0]["k"].get<double>() == Approx(0.1));
  CHECK(j[0]["repr"] == "direct");
  CHECK(j[8]["repr"] == "series");
  CHECK(j[4].contains("err_estimate"));
  CHECK(j[4]["converged"] == true);
}

TEST_CASE("output is deterministic", "[cli]") {
  auto a = run_cli({"selberg", "--grid", "0.5:2:0.5"});
  auto b = run_cli({"selberg", "--grid", "0.5:2:0.5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(lines(a.out).size() == 1 + 4 * 2);
}

TEST_CASE("reals are printed with 17 significant digits", "[cli]") {
  auto r = run_cli({"wave-trace", "--t", "1"});
  auto l = lines(r.out);
  REQUIRE(l.size() == 2);
  CHECK(l[1].rfind("1,direct,0.82025951154", 0) == 0);
  const auto v = l[1].substr(9, l[1].find(',', 9) - 9);
  CHECK(v.size() == 19);  // "0." + 17 digits
}

TEST_CASE("usage errors exit with 1", "[cli]") {
  CHECK(run_cli({}).code == 1);
  CHECK(run_cli({"bogus"}).code == 1);
  CHECK(run_cli({"count", "--nope", "3"}).code == 1);
  CHECK(run_cli({"count", "--x", "3", "--format", "xml"}).code == 1);
  CHECK(run_cli({"tau", "--k", "0.5", "--repr", "nope"}).code == 1);
  CHECK(run_cli({"count", "--grid", "5:1:1"}).code == 1);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("convergence failures exit with 2", "[cli]") {
  // the smoothed critical-line series cannot settle inside a tiny sieve
  auto r = run_cli({"selberg", "--s", "9.5", "--critical", "--repr", "critical", "--table-limit", "2000"});
  CHECK(r.code == 2);
  CHECK(r.out.find("false") != std::string::npos);
}

TEST_CASE("selftest subset", "[cli]") {
  auto r = run_cli({"selftest", "--only", "1", "14"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS 01") != std::string::npos);
  CHECK(r.out.find("PASS 14") != std::string::npos);
}

TEST_CASE("grid parsing", "[cli]") {
  auto g = parse_grid("0:1:0.25").points();
  REQUIRE(g.size() == 5);
  CHECK(g.back() == Approx(1.0));
  auto lg = parse_grid("1:100:3:log").points();
  REQUIRE(lg.size() == 3);
  CHECK(lg[1] == Approx(10.0));
  CHECK_THROWS(parse_grid("1:0:1"));
  CHECK_THROWS(parse_grid("0:1:0"));
  CHECK_THROWS(parse_grid("0:1"));
  CHECK_THROWS(parse_grid("a:1:0.1"));
  CHECK_THROWS(parse_grid("0:10:3:log"));
}

TEST_CASE("csv quoting", "[cli]") {
  Table t{{"a", "b"}, {{std::string("x,y"), 1.5}}};
  std::ostringstream o;
  write_csv(t, o);
  CHECK(o.str() == "a,b\n\"x,y\",1.5\n");
}
