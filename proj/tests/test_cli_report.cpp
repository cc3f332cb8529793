#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "steklov/cli.hpp"
#include "steklov/io.hpp"
#include "steklov/report.hpp"

using namespace steklov;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("steklov_cli_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json load(const fs::path& p) { return nlohmann::json::parse(read_file(p)); }

std::vector<double> marker_x(const std::string& svg) {
  std::vector<double> xs;
  const std::regex re("class=\"nodal\" cx=\"([-0-9.e]+)\"");
  for (std::sregex_iterator it(svg.begin(), svg.end(), re), end; it != end; ++it) {
    xs.push_back(std::stod((*it)[1]));
  }
  return xs;
}

}  // namespace

TEST_CASE("number formatting uses 17 significant digits") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(std::stod(format_number(-2.5e-300)) == -2.5e-300);
  CHECK(format_number(2.0 / 3.0) == "0.66666666666666663");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_number(NAN) == "nan");
  CHECK(dump_json(nlohmann::json{{"a", 0.1}, {"b", NAN}}, -1) == "{\"a\":0.10000000000000001,\"b\":null}");
}

TEST_CASE("domain JSON round trip") {
  for (const DiskPairDomain& d : {DiskPairDomain::make(0.3, DomainMode::Union), DiskPairDomain::unit_disk(),
                                  DiskPairDomain::make(0.8, DomainMode::Intersection)}) {
    const nlohmann::json j = domain_to_json(d);
    CHECK(j["schema"] == domain_schema);
    CHECK(j["arcs"].size() == d.arcs().size());
    const DiskPairDomain back = domain_from_json(nlohmann::json::parse(dump_json(j)));
    CHECK(back.mode() == d.mode());
    CHECK(back.ell() == d.ell());
    CHECK(back.arcs()[0].angle_from == d.arcs()[0].angle_from);
  }
  const nlohmann::json j = domain_to_json(DiskPairDomain::make(0.5, DomainMode::Intersection));
  CHECK(j["corners"].size() == 2);
  CHECK(j["corners"][0][0].get<double>() == doctest::Approx(std::sqrt(0.75)));
  nlohmann::json bad = j;
  bad["schema"] = "other/1";
  CHECK_THROWS_AS(domain_from_json(bad), std::invalid_argument);
}

TEST_CASE("atomic writes leave no partial files") {
  const fs::path d = scratch_dir("atomic");
  write_atomic(d / "sub" / "a.txt", "first");
  write_atomic(d / "sub" / "a.txt", "second");
  CHECK(read_file(d / "sub" / "a.txt") == "second");
  fs::create_directories(d / "blocked");
  CHECK_THROWS(write_atomic(d / "blocked", "x"));
  int entries = 0;
  for (const auto& e : fs::recursive_directory_iterator(d)) {
    CHECK(e.path().string().find(".tmp.") == std::string::npos);
    ++entries;
  }
  CHECK(entries == 3);
}

TEST_CASE("spectrum command") {
  const fs::path d = scratch_dir("spectrum");
  Run r = run({"--out", d.string(), "spectrum", "--mode", "intersection", "--ell", "0.5", "--k", "6"});
  REQUIRE(r.code == 0);
  const nlohmann::json j = load(d / "spectrum_intersection_0.5.json");
  for (const char* key : {"domain", "n_per_arc", "tol", "eigenvalues", "labels", "gaps", "est_error"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["domain"]["mode"] == "intersection");
  CHECK(j["domain"]["ell"] == 0.5);
  CHECK(j["eigenvalues"].size() == 6);
  CHECK(std::abs(j["eigenvalues"][1].get<double>() - 1) <= 1e-5);
  CHECK(j["labels"][1] == "oe");
  const std::string first = read_file(d / "spectrum_intersection_0.5.json");
  REQUIRE(run({"--out", d.string(), "spectrum", "--mode", "intersection", "--ell", "0.5", "--k", "6"}).code == 0);
  CHECK(read_file(d / "spectrum_intersection_0.5.json") == first);

  r = run({"--out", d.string(), "--format", "csv", "spectrum", "--disk", "--k", "7"});
  REQUIRE(r.code == 0);
  const nlohmann::json disk = load(d / "spectrum_disk.json");
  const double expected[] = {0, 1, 1, 2, 2, 3, 3};
  for (int i = 0; i < 7; ++i) CHECK(std::abs(disk["eigenvalues"][i].get<double>() - expected[i]) <= 1e-8);
  CHECK(fs::exists(d / "spectrum_disk.csv"));
  CHECK(read_file(d / "spectrum_disk.csv").rfind("index,eigenvalue,label,gap,multiplicity\n", 0) == 0);

  r = run({"--out", d.string(), "spectrum", "--mode", "union", "--ell", "1.5"});
  CHECK(r.code == 1);
  CHECK(r.err.find("(0,1)") != std::string::npos);
  CHECK_FALSE(fs::exists(d / "spectrum_union_1.5.json"));
  CHECK(run({"--out", d.string(), "spectrum", "--mode", "union"}).code == 1);
  CHECK(run({"--out", d.string(), "spectrum", "--mode", "moon", "--ell", "0.5"}).code == 1);
  CHECK(run({"--out", d.string(), "--format", "xml", "spectrum", "--disk"}).code == 1);
  CHECK(run({"--out", d.string(), "--bogus", "spectrum", "--disk"}).code == 1);
  CHECK(run({"--out", d.string(), "--n-per-arc", "7", "spectrum", "--disk"}).code == 1);
  CHECK(run({}).code == 1);
  // Unreachable accuracy is a convergence failure.
  CHECK(run({"--out", d.string(), "--tol", "1e-15", "--n-per-arc", "8", "spectrum", "--mode", "union", "--ell", "0.95"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("spectrum by alpha picks the normalized domain") {
  const fs::path d = scratch_dir("alpha");
  REQUIRE(run({"--out", d.string(), "spectrum", "--alpha", "1.5", "--k", "4", "--name", "a15"}).code == 0);
  const nlohmann::json j = load(d / "a15.json");
  CHECK(j["domain"]["mode"] == "union");
  CHECK(j["domain"]["ell"].get<double>() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK(run({"--out", d.string(), "spectrum", "--alpha", "1.0"}).code == 1);
}

TEST_CASE("config file and environment") {
  const fs::path d = scratch_dir("config");
  write_atomic(d / "run.cfg", "tol = 1e-6\nn-per-arc = 16\nout = \"" + (d / "from_cfg").string() + "\"\n[spectrum]\nk = 3\n");
  REQUIRE(run({"--config", (d / "run.cfg").string(), "spectrum", "--mode", "union", "--ell", "0.3"}).code == 0);
  nlohmann::json j = load(d / "from_cfg" / "spectrum_union_0.3.json");
  CHECK(j["n_per_arc"] == 16);
  CHECK(j["tol"] == 1e-6);
  CHECK(j["eigenvalues"].size() == 3);
  // Flags beat the file.
  REQUIRE(run({"--config", (d / "run.cfg").string(), "--n-per-arc", "24", "spectrum", "--mode", "union", "--ell", "0.3", "--k", "4"}).code == 0);
  j = load(d / "from_cfg" / "spectrum_union_0.3.json");
  CHECK(j["n_per_arc"] == 24);
  CHECK(j["eigenvalues"].size() == 4);

  ::setenv(out_dir_env, (d / "from_env").string().c_str(), 1);
  const int code = run({"spectrum", "--disk", "--k", "2"}).code;
  ::unsetenv(out_dir_env);
  CHECK(code == 0);
  CHECK(fs::exists(d / "from_env" / "spectrum_disk.json"));
  CHECK(run({"--config", (d / "missing.cfg").string(), "spectrum", "--disk"}).code == 1);
}

TEST_CASE("sweep command") {
  const fs::path d = scratch_dir("sweep");
  Run r = run({"--out", d.string(), "--jobs", "3", "sweep", "--mode", "union", "--ell-range", "0.1:0.9:0.1", "--k", "4", "--svg"});
  REQUIRE(r.code == 0);
  const std::string csv = read_file(d / "sweep_union.csv");
  CHECK(csv.rfind("ell,mu_1,mu_2,mu_3,mu_4,gap_to_1,verdicts\n", 0) == 0);
  const BranchTable t = parse_sweep_csv(csv);
  REQUIRE(t.ell.size() == 9);
  for (std::size_t i = 0; i < 9; ++i) {
    CHECK(t.ell[i] == doctest::Approx(0.1 * (i + 1)).epsilon(1e-12));
    CHECK(t.branches[1][i] < 1);
    CHECK(std::abs(t.branches[2][i] - 1) <= 1e-5);
    CHECK(t.branches[3][i] > 1);
  }
  CHECK(csv.find(",pass\n") != std::string::npos);
  const std::string svg = read_file(d / "sweep_union.svg");
  CHECK(svg.find("class=\"reference\"") != std::string::npos);
  CHECK(svg.find("http://") == svg.find("http://www.w3.org/2000/svg"));

  // Same rows, same bytes, whatever the worker count.
  REQUIRE(run({"--out", (d / "serial").string(), "--jobs", "1", "sweep", "--mode", "union", "--ell", "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9"}).code == 0);
  CHECK(read_file(d / "serial" / "sweep_union.csv") == csv);

  r = run({"--out", d.string(), "sweep", "--mode", "intersection", "--ell-range", "0.1:0.9:0.1", "--format", "csv"});
  REQUIRE(r.code == 0);
  const BranchTable ti = parse_sweep_csv(read_file(d / "sweep_intersection.csv"));
  for (double mu2 : ti.branches[1]) CHECK(std::abs(mu2 - 1) <= 1e-5);

  CHECK(run({"--out", d.string(), "sweep", "--mode", "union"}).code == 1);
  CHECK(run({"--out", d.string(), "sweep", "--mode", "union", "--ell", "0.5,0.3"}).code == 1);
  CHECK(run({"--out", d.string(), "sweep", "--mode", "union", "--ell", "1.2"}).code == 1);
  // A failing row is recorded and the run reports it.
  r = run({"--out", (d / "fail").string(), "--tol", "1e-14", "--n-per-arc", "8", "sweep", "--mode", "union", "--ell", "0.5,0.95"});
  CHECK(r.code == 2);
  const std::string failed = read_file(d / "fail" / "sweep_union.csv");
  CHECK(failed.find("error:NotConverged") != std::string::npos);

  r = run({"--out", d.string(), "sweep", "--alpha", "0.5,1.5", "--k", "3", "--name", "by_alpha"});
  CHECK(r.code == 0);
  CHECK(read_file(d / "by_alpha.csv").rfind("alpha,ell,mu_1", 0) == 0);
}

TEST_CASE("verify command") {
  const fs::path d = scratch_dir("verify");
  Run r = run({"--out", d.string(), "verify", "--alpha", "0.5", "--alpha", "1.5"});
  CHECK(r.code == 0);
  std::istringstream lines(read_file(d / "certificates.jsonl"));
  int n = 0;
  for (std::string line; std::getline(lines, line); ++n) {
    const nlohmann::json j = nlohmann::json::parse(line);
    for (const char* key : {"name", "params", "measured", "reference", "tolerance", "verdict", "provenance"}) {
      CHECK(j.contains(key));
    }
    CHECK(j["verdict"] == "pass");
    CHECK(j["provenance"].get<std::string>().size() > 10);
  }
  CHECK(n == 10);

  r = run({"--out", d.string(), "verify", "--alpha", "1.0"});
  CHECK(r.code == 1);
  CHECK(r.err.find("regular-control") != std::string::npos);
  r = run({"--out", d.string(), "verify", "--alpha", "2.5"});
  CHECK(r.code == 1);
  CHECK(r.err.find("no solution") != std::string::npos);
  CHECK(run({"--out", d.string(), "verify"}).code == 1);

  r = run({"--out", d.string(), "verify", "--regular-control"});
  CHECK(r.code == 0);
  r = run({"--out", d.string(), "--format", "csv", "verify", "--alpha", "0.7"});
  CHECK(r.code == 0);
  CHECK(read_file(d / "certificates.csv").rfind("name,params,check,", 0) == 0);

  r = run({"--out", d.string(), "--tol", "1e-15", "verify", "--alpha", "1.7"});
  CHECK(r.code == 2);
  CHECK(r.err.find("first failing certificate: ") != std::string::npos);
}

TEST_CASE("plot command") {
  const fs::path d = scratch_dir("plot");
  REQUIRE(run({"--out", d.string(), "spectrum", "--mode", "intersection", "--ell", "0.5", "--k", "4"}).code == 0);
  REQUIRE(run({"--out", d.string(), "plot", "--input", (d / "spectrum_intersection_0.5.json").string(), "--index", "2"}).code == 0);
  std::string svg = read_file(d / "spectrum_intersection_0.5.svg");
  std::vector<double> xs = marker_x(svg);
  REQUIRE(xs.size() == 2);
  for (double x : xs) CHECK(x == doctest::Approx(240.0).epsilon(1e-3));

  const DiskPairDomain lens = DiskPairDomain::make(0.5, DomainMode::Intersection);
  const BoundaryDiscretization b = discretize(lens, 32);
  const SteklovSpectrum s = compute_spectrum(b, 2, 1e-5);
  for (Point p : boundary_nodal_points(s.eigenvectors.col(1), b, 1e-10)) {
    CHECK(std::abs(p.x) <= 1e-6);
    CHECK(std::abs(std::abs(p.y) - 0.5) <= 1e-6);
  }

  REQUIRE(run({"--out", d.string(), "spectrum", "--mode", "union", "--ell", "0.5", "--k", "4"}).code == 0);
  REQUIRE(run({"--out", d.string(), "plot", "--input", (d / "spectrum_union_0.5.json").string(), "--index", "3"}).code == 0);
  xs = marker_x(read_file(d / "spectrum_union_0.5.svg"));
  REQUIRE(xs.size() == 2);
  for (double x : xs) CHECK(x == doctest::Approx(240.0).epsilon(1e-3));

  REQUIRE(run({"--out", d.string(), "spectrum", "--disk", "--k", "3"}).code == 0);
  REQUIRE(run({"--out", d.string(), "plot", "--input", (d / "spectrum_disk.json").string(), "--index", "1"}).code == 0);
  CHECK(marker_x(read_file(d / "spectrum_disk.svg")).empty());

  REQUIRE(run({"--out", d.string(), "sweep", "--mode", "union", "--ell", "0.2,0.4"}).code == 0);
  CHECK(run({"--out", d.string(), "plot", "--input", (d / "sweep_union.csv").string(), "--name", "branches"}).code == 0);
  CHECK(read_file(d / "branches.svg").find("polyline") != std::string::npos);

  CHECK(run({"--out", d.string(), "plot"}).code == 1);
  CHECK(run({"--out", d.string(), "plot", "--input", (d / "absent.json").string()}).code == 1);
  write_atomic(d / "junk.json", "{not json");
  CHECK(run({"--out", d.string(), "plot", "--input", (d / "junk.json").string()}).code == 1);
  CHECK(run({"--out", d.string(), "plot", "--input", (d / "spectrum_disk.json").string(), "--index", "9"}).code == 1);
}
