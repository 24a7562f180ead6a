#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

using levymet::cli::run_cli;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) v.push_back(line);
  return v;
}

// "# levymet solve1d --a 1 --b 2" -> {"solve1d", "--a", "1", "--b", "2"}
std::vector<std::string> echo_args(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> v;
  std::string tok;
  in >> tok >> tok;  // "#", "levymet"
  while (in >> tok) v.push_back(tok);
  return v;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("solve1d writes a CSV whose echo line reproduces it") {
  const Run r = run({"solve1d", "--alpha", "1.5", "--lambda", "0.1", "--drift", "linear:-0.5"});
  REQUIRE(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 2 + 319);
  CHECK(lines[0].rfind("# levymet solve1d ", 0) == 0);
  CHECK(lines[1] == "x,u");
  CHECK(lines[0].find("--drift linear:-0.5") != std::string::npos);
  const Run again = run(echo_args(lines[0]));
  REQUIRE(again.code == 0);
  CHECK(again.out == r.out);
}

TEST_CASE("json output starts with command and config") {
  const Run r = run({"solve1d", "--J", "20", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("command") == "solve1d");
  CHECK(j.at("config").at("J") == 20);
  CHECK(j.at("config").at("alpha") == 0.5);
  CHECK(j.at("u").size() == 39);
  CHECK(r.out.find("\"command\"") < r.out.find("\"config\""));
  CHECK(r.out.find("\"config\"") < r.out.find("\"x\""));
}

TEST_CASE("convergence reports a fitted order") {
  const Run r = run({"convergence", "--resolutions", "20,40,80"});
  REQUIRE(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j.at("errors").size() == 3);
  CHECK(j.at("fitted_order").get<double>() > 1.7);

  const Run c = run({"convergence", "--resolutions", "20,40", "--format", "csv"});
  REQUIRE(c.code == 0);
  const auto lines = lines_of(c.out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[1].rfind("# fitted_order ", 0) == 0);
  CHECK(lines[2] == "J,h,error");
}

TEST_CASE("solve2d cases") {
  const Run hv = run({"solve2d", "--case", "hv", "--J", "8"});
  REQUIRE(hv.code == 0);
  const auto lines = lines_of(hv.out);
  CHECK(lines[1] == "x1,x2,u");
  CHECK(lines.size() == 2 + 15 * 15);

  const auto dir = std::filesystem::temp_directory_path() / "levymet_cli_test";
  std::filesystem::create_directories(dir);
  const auto disc = dir / "disc.csv";
  const auto radial = dir / "radial.csv";
  const Run iso = run({"solve2d", "--case", "iso", "--J", "16", "--disc-out", disc.string(),
                       "--disc-points", "11", "--out", radial.string()});
  REQUIRE(iso.code == 0);
  CHECK(iso.out.empty());
  const auto rl = lines_of(slurp(radial));
  CHECK(rl[1] == "r,u");
  CHECK(rl.size() == 2 + 16);  // nodes r = 0 .. (J-1) h
  const auto dl = lines_of(slurp(disc));
  CHECK(dl[1] == "x1,x2,u");
  CHECK(dl.size() == 2 + 11 * 11);
  std::filesystem::remove_all(dir);
}

TEST_CASE("mc is reproducible") {
  const std::vector<std::string> args = {"mc", "--paths", "200", "--seed", "3", "--threads", "1"};
  const Run a = run(args);
  REQUIRE(a.code == 0);
  auto more = args;
  more.back() = "2";
  CHECK(run(more).out == a.out);
  const auto j = json::parse(a.out);
  CHECK(j.at("n_paths") == 200);
  CHECK(j.at("mean").get<double>() > 0.0);
}

TEST_CASE("exit codes") {
  CHECK(run({"convergence", "--resolutions", ""}).code == 2);
  CHECK(run({"solve1d", "--alpha", "1.0"}).code == 2);
  CHECK(run({"solve1d", "--alpha", "2.5"}).code == 2);
  CHECK(run({"solve1d", "--no-such-flag", "1"}).code == 2);
  CHECK(run({"solve1d", "--format", "xml"}).code == 2);
  CHECK(run({"solve1d", "--drift", "quartic:1"}).code == 2);
  CHECK(run({"mc", "--x0", "1.5"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const Run censored = run({"mc", "--alpha", "1.5", "--half-width", "1e6", "--t-max", "0.02",
                            "--paths", "100"});
  CHECK(censored.code == 3);
  CHECK_FALSE(censored.err.empty());
  CHECK(run({"solve1d", "--help"}).code == 0);
}
