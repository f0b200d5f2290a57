#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nilharm/errors.hpp"
#include "nilharm/harness.hpp"
#include "nilharm/ideals.hpp"
#include "nilharm/scalar_groups.hpp"
#include "nilharm/serialization.hpp"

using namespace nilharm;

TEST_CASE("negative reals under x * y = -xy") {
  CHECK(neg_mul(NegReal(-2.0), NegReal(-3.0)).value() == -6.0);
  CHECK(neg_inv(NegReal(-4.0)).value() == -0.25);
  CHECK(NegReal::identity().value() == -1.0);
  CHECK_THROWS_AS(NegReal(0.0), DomainError);
  CHECK_THROWS_AS(NegReal(1.0), DomainError);
}

TEST_CASE("scalar isomorphisms") {
  CHECK(iso_psi(NegReal(-2.5)) == 2.5);
  const auto [a, b] = iso_Psi(std::exp(1.0), NegReal(-std::exp(2.0)));
  CHECK(a == doctest::Approx(1.0));
  CHECK(b == doctest::Approx(2.0));
  const std::complex<double> z = iso_Phi(std::exp(1.0), NegReal(-std::exp(1.0)));
  CHECK(z.real() == doctest::Approx(1.0));
  CHECK(z.imag() == doctest::Approx(1.0));
  CHECK(iso_Phi_inverse(z).second.value() == doctest::Approx(-std::exp(1.0)));
}

TEST_CASE("group element JSON uses row-major strict-upper entries") {
  const GroupSpec spec(3);
  const double x[] = {1.0, 2.0, 3.0};  // (n12, n23, n13)
  const UnipotentElement g(spec, x);
  CHECK(row_major_entries(g) == std::vector<double>{1.0, 3.0, 2.0});
  const UnipotentElement h = unipotent_from_json(to_json(g));
  CHECK(std::vector<double>(h.coords().begin(), h.coords().end()) == std::vector<double>{1.0, 2.0, 3.0});
  const double t[] = {0.5, -0.25};
  const SolvableElement p(g, DiagonalElement(spec, t));
  const SolvableElement q = solvable_from_json(to_json(p));
  CHECK(q.a.log_coords()[1] == -0.25);
  CHECK(solvable_from_json(R"({"m": 2, "entries": [4]})").a.log_coords()[0] == 0.0);
}

TEST_CASE("malformed group element JSON") {
  CHECK_THROWS_AS(unipotent_from_json("{"), InvalidArgument);
  CHECK_THROWS_AS(unipotent_from_json(R"({"entries": [1]})"), InvalidArgument);
  CHECK_THROWS_AS(unipotent_from_json(R"({"m": 3, "entries": [1, 2]})"), InvalidArgument);
  CHECK_THROWS_AS(unipotent_from_json(R"({"m": 2, "entries": ["a"]})"), InvalidArgument);
}

TEST_CASE("Gaussian lattice is ordered by distance from the origin") {
  const GroupSpec spec(3);
  const auto lat = gaussian_lattice(spec, 12, 0.8, 1.0);
  REQUIRE(lat.size() == 12);
  double prev = 0.0;
  for (const auto& f : lat) {
    const auto& c = f.terms().at(0).center;
    const double r = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
    CHECK(r >= prev);
    prev = r;
  }
  const auto small = gaussian_lattice(spec, 5, 0.8, 1.0);
  for (std::size_t i = 0; i < small.size(); ++i)
    CHECK(small[i].terms().at(0).center[0] == lat[i].terms().at(0).center[0]);
}

TEST_CASE("report line serialisation") {
  ReportLine l;
  l.check = "plancherel";
  l.params = {{"group", std::string("N")}, {"m", std::int64_t{3}}, {"halfwidth", 10.0}};
  l.metric = "closed_form_rel_err";
  l.value = 0.5;
  l.tolerance = 1.0;
  l.pass = true;
  l.wall_time = 3.25;
  CHECK(to_jsonl(l) ==
        R"({"schema":1,"check":"plancherel","params":{"group":"N","m":3,"halfwidth":10.0},)"
        R"("metric":"closed_form_rel_err","value":0.5,"tolerance":1.0,"pass":true,"gating":true})");
  CHECK(to_csv(l) == R"(1,plancherel,closed_form_rel_err,0.5,1,true,true,3.25,"group=N;m=3;halfwidth=10")");
}

TEST_CASE("configuration validation") {
  RunConfig c;
  CHECK_NOTHROW(validate(c));
  c.group = "X";
  CHECK_THROWS_AS(validate(c), InvalidArgument);
  c = {};
  c.m = 1;
  CHECK_THROWS_AS(validate(c), InvalidArgument);
  c = {};
  c.grid = 12;
  CHECK_THROWS_AS(validate(c), InvalidArgument);
  c = {};
  c.tolerance = -1.0;
  CHECK_THROWS_AS(validate(c), InvalidArgument);
  CHECK_THROWS_AS(run_check("no-such-check", RunConfig{}), InvalidArgument);
  CHECK_THROWS_AS(run_suite(RunConfig{}, "no-such-check"), InvalidArgument);
}

TEST_CASE("pass flag follows value <= tolerance and a zero tolerance fails") {
  RunConfig c;
  const SuiteResult r = run_suite(c, "operator-identity");
  CHECK(r.exit_code == kExitPass);
  for (const auto& l : r.lines) CHECK(l.pass == (l.value <= l.tolerance));
  c.tolerance = 0.0;
  const SuiteResult z = run_suite(c, "operator-identity");
  CHECK(z.exit_code == kExitFailure);
  for (const auto& l : z.lines) CHECK(l.tolerance == 0.0);
}

TEST_CASE("same seed gives identical reports, another seed does not") {
  RunConfig c;
  c.threads = 2;
  auto text = [](const SuiteResult& r) {
    std::string s;
    for (const auto& l : r.lines) s += to_jsonl(l) + "\n";
    return s;
  };
  const std::string a = text(run_suite(c, "haar")), b = text(run_suite(c, "haar"));
  CHECK(a == b);
  c.seed = 99;
  CHECK(text(run_suite(c, "haar")) != a);
}

TEST_CASE("unwritable output is an I/O failure") {
  RunConfig c;
  c.output = "/nonexistent-dir/report.jsonl";
  CHECK_THROWS_AS(run_suite(c, "scalar-groups"), std::ios_base::failure);
}

TEST_CASE("report files") {
  const auto dir = std::filesystem::temp_directory_path();
  RunConfig c;
  c.output = (dir / "nilharm_unit_report.jsonl").string();
  std::ostringstream stream;
  const SuiteResult r = run_suite(c, "scalar-groups", &stream);
  std::ifstream in(c.output), summary(c.output + ".summary.csv");
  std::stringstream content;
  content << in.rdbuf();
  CHECK(content.str() == stream.str());
  std::string header;
  std::getline(summary, header);
  CHECK(header == csv_header());
  std::size_t rows = 0;
  for (std::string l; std::getline(summary, l);) ++rows;
  CHECK(rows == r.lines.size());
  std::filesystem::remove(c.output);
  std::filesystem::remove(c.output + ".summary.csv");
}
