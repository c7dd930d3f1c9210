#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <sstream>
#include <unistd.h>

#include "cli.hpp"
#include "fewnomial/errors.hpp"
#include "fewnomial/io.hpp"
#include "fixtures.hpp"

using namespace fewnomial;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fewnomial_test_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli_run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("spectrum text") {
  const Spectrum s = parse_spectrum("# pentagon\n2 3\n0 1 0 4 1   # x\n\n0 0 1 1 4\n");
  CHECK(s.n() == 2);
  CHECK(s.k() == 3);
  CHECK(s.matrix()(1, 4) == 4);
  CHECK(parse_spectrum("1 2\n0 0.5 1e0\n").matrix()(0, 1) == 0.5);
}

TEST_CASE("spectrum parse errors carry positions") {
  auto where = [](const std::string& text) {
    try {
      parse_spectrum(text);
    } catch (const ParseError& e) {
      return std::make_pair(e.line(), e.column());
    }
    return std::make_pair(-1, -1);
  };
  CHECK(where("2 3\n0 1 x 4 1\n0 0 1 1 4\n") == std::make_pair(2, 5));
  CHECK(where("2 3\n0 1 0 4\n0 0 1 1 4\n").first == 2);
  CHECK(where("2 3\n0 1 0 4 1 7\n0 0 1 1 4\n") == std::make_pair(2, 11));
  CHECK(where("2 3\n0 1 0 4 1\n") == std::make_pair(3, 0));
  CHECK(where("2 3\n0 1 0 4 1\n0 0 1 1 4\n1 1 1 1 1\n").first == 4);
  CHECK(where("0 3\n").first == 1);
  CHECK(where("2 65\n").first == 1);
  CHECK(where("2.5 3\n").first == 1);
  CHECK(where("2\n").first == 1);
  CHECK(where("").first == 1);
  CHECK(where("1 1\n0 1e999\n") == std::make_pair(2, 3));
  // structurally fine but invalid as a spectrum
  CHECK_THROWS_AS(parse_spectrum("1 1\n0 0\n"), InvalidSpectrum);
}

TEST_CASE("coefficient text") {
  const Vector c = parse_coefficients("3.25 1\n-4 # tail\n1 1\n", 5);
  CHECK(c.size() == 5);
  CHECK(c(2) == -4);
  CHECK(parse_coefficients("1 2 3").size() == 3);
  CHECK_THROWS_AS(parse_coefficients("1 2", 3), ParseError);
  CHECK_THROWS_AS(parse_coefficients("1 2 3 4", 3), ParseError);
  CHECK_THROWS_AS(parse_coefficients("1 two 3"), ParseError);
  CHECK_THROWS_AS(parse_coefficients("# nothing\n"), ParseError);
}

TEST_CASE("files") {
  TempDir tmp;
  const std::string p = (tmp.path / "a.txt").string();
  write_file(p, "1 1\n0 2\n");
  CHECK(read_file(p) == "1 1\n0 2\n");
  CHECK(read_spectrum(p).terms() == 2);
  CHECK_THROWS_AS(read_file((tmp.path / "missing.txt").string()), FileError);
  CHECK_THROWS_AS(write_file((tmp.path / "no" / "dir.txt").string(), "x"), FileError);
  CHECK(read_coefficients(fixtures::data("circles_g1.txt"), 5)(0) == 3.25);
}

TEST_CASE("contour csv") {
  ContourCloud cloud;
  cloud.dimension = 2;
  ContourSample a;
  a.point = Eigen::Vector2d(0.1, -2);
  a.sigma = "+-+";
  ContourSample b = a;
  b.face = 1;
  b.sigma = "+*-";
  cloud.samples = {a, b};
  const std::string csv = cloud_csv(cloud);
  std::istringstream in(csv);
  std::string header, l1, l2;
  std::getline(in, header);
  std::getline(in, l1);
  std::getline(in, l2);
  CHECK(header == "u,v,sigma,source");
  CHECK(l1 == "0.10000000000000001,-2,+-+,main");
  CHECK(l2 == "0.10000000000000001,-2,+*-,face:1");
  // round trip of the printed digits
  CHECK(std::stod(l1.substr(0, l1.find(','))) == 0.1);

  cloud.dimension = 3;
  cloud.samples = {a};
  cloud.samples[0].point = Eigen::Vector3d(1, 2, 3);
  CHECK(cloud_csv(cloud).rfind("u,v,w,sigma,source\n1,2,3,+-+,main\n", 0) == 0);
}

TEST_CASE("cli: bounds") {
  const Run r = cli_run({"--json", "bounds", "--n", "2", "--k", "3"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["schema_version"] == "1");
  CHECK(j["bounds"][0]["theorem1"] == 13);
  CHECK(j["bounds"][0]["outer"] == 10);
  CHECK(j["bounds"][0]["simplicial_refined"] == 12);

  const Run table = cli_run({"bounds", "--table", "2", "3"});
  CHECK(table.code == 0);
  CHECK(table.out.find("| n | k | theorem1") != std::string::npos);
  CHECK(table.out.find("| 2 | 3 | 13 |") != std::string::npos);
}

TEST_CASE("cli: usage and input errors") {
  CHECK(cli_run({}).code == 1);
  CHECK(cli_run({"frobnicate"}).code == 1);
  CHECK(cli_run({"--help"}).code == 0);
  CHECK(cli_run({"contour", "--spectrum", "does-not-exist.txt"}).code == 1);
  CHECK(cli_run({"contour"}).code == 1);
  CHECK(cli_run({"reproduce", "hexagon"}).code == 1);

  TempDir tmp;
  const std::string bad = (tmp.path / "bad.txt").string();
  write_file(bad, "2 3\n0 1 0 4 1\n0 0 1 1\n");
  const Run r = cli_run({"contour", "--spectrum", bad});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(cli_run({"contour", "--spectrum", fixtures::data("pentagon.txt"), "--sigma", "+-"}).code == 1);
  CHECK(cli_run({"contour", "--spectrum", fixtures::data("pentagon.txt"), "--reading", "sideways"}).code == 1);
}

TEST_CASE("cli: contour, chambers and components") {
  const std::string pent = fixtures::data("pentagon.txt");
  const Run c = cli_run({"contour", "--spectrum", pent, "--sigma", "+--++", "--resolution", "2000"});
  CHECK(c.code == 0);
  CHECK(c.out.rfind("u,v,sigma,source\n", 0) == 0);
  CHECK(c.out.find("+--++,main") != std::string::npos);

  const Run boxed = cli_run({"contour", "--spectrum", pent, "--resolution", "2000", "--box", "-1,1,-1,1"});
  std::istringstream in(boxed.out);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const double u = std::stod(line.substr(0, line.find(',')));
    CHECK(std::abs(u) <= 1.0);
  }

  // the inner chamber of this class is too thin for a 512 raster
  const Run coarse = cli_run({"--json", "chambers", "--spectrum", pent, "--sigma", "+--++", "--stable", "--resolution", "512"});
  CHECK(coarse.code == 2);
  CHECK(json::parse(coarse.out)["stable"] == false);
  const Run ch = cli_run({"--json", "chambers", "--spectrum", pent, "--sigma", "+--++", "--stable"});
  CHECK(ch.code == 0);
  const json j = json::parse(ch.out);
  CHECK(j["counts"] == json::array({3, 3, 3}));
  CHECK(j["stable"] == true);

  const Run n1 = cli_run({"--json", "components", "--spectrum", fixtures::data("circles.txt"), "--coeffs",
                          fixtures::data("circles_g1.txt")});
  CHECK(n1.code == 0);
  CHECK(json::parse(n1.out)["count"] == 1);
}

TEST_CASE("cli: reproduce circles writes a manifest") {
  TempDir tmp;
  const Run r = cli_run({"--out-dir", tmp.path.string(), "--quiet", "reproduce", "circles"});
  CHECK(r.code == 0);
  const fs::path manifest = tmp.path / "circles" / "manifest.json";
  REQUIRE(fs::exists(manifest));
  const json m = json::parse(read_file(manifest.string()));
  CHECK(m["schema_version"] == "1");
  CHECK(m["pass"] == true);
  CHECK(m["command"] == "reproduce circles");
  for (const auto& f : m["outputs"]) CHECK(fs::exists(tmp.path / f.get<std::string>()));
  for (const auto& a : m["assertions"]) CHECK(a["pass"] == true);
}
