#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using painleve::cli::run;

namespace {
struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "painleve_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}
}  // namespace

TEST_CASE("appendix-b") {
  const auto r = call({"appendix-b"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["multipliers"]["s_0"][1].get<double>() == doctest::Approx(-1.6180340).epsilon(1e-7));
  CHECK(j["constraint_residual"].get<double>() < 1e-14);
}

TEST_CASE("classify and params") {
  auto r = call({"classify", "--s2", "0,0.618034"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["class"] == "oscillatory");
  CHECK(j["a"].get<double>() == doctest::Approx(0.1531726).epsilon(1e-5));
  CHECK(j.contains("phi"));

  r = call({"classify", "--s2", "0,-1.618034"});
  j = nlohmann::json::parse(r.out);
  CHECK(j["class"] == "singular");
  CHECK(j["b"].get<double>() == doctest::Approx(0.0765863).epsilon(1e-5));

  r = call({"params", "--s2", "0,0.618034"});
  REQUIRE(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["constraint_residual"].get<double>() < 1e-12);
  CHECK(j["legacy"]["chi_corrected"].get<double>() == doctest::Approx(j["phi"].get<double>()));
}

TEST_CASE("exit codes") {
  CHECK(call({}).code == 2);
  CHECK(call({"classify"}).code == 2);
  CHECK(call({"classify", "--s2", "zero"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"poles", "--s2", "0,-1.618", "--n", "5..2"}).code == 2);
  CHECK(call({"integrate", "--y0", "0", "--x-end", "-1"}).code == 2);
  CHECK(call({"integrate", "--y0", "0", "--dy0", "0", "--x-end", "-1", "--rtol", "-1"}).code == 2);
  CHECK(call({"--help"}).code == 0);

  const auto r = call({"poles", "--s2", "0,0.5", "--n", "1..3"});
  CHECK(r.code == 3);
  CHECK(r.err.rfind("OutOfRegime", 0) == 0);
}

TEST_CASE("poles") {
  const auto r = call({"poles", "--s2", "0,-1.6180339887498949", "--n", "10..10"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "n,x");
  CHECK(std::stod(row.substr(3)) == doctest::Approx(-17.206634616708954217).epsilon(1e-12));
}

TEST_CASE("integrate reproduces the reference solution") {
  const auto r = call({"integrate", "--y0", "0", "--dy0", "0", "--x-end", "-1"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("x,y,dy,H\n", 0) == 0);
  const auto last_line = r.out.substr(r.out.rfind('\n', r.out.size() - 2) + 1);
  const double y = std::stod(last_line.substr(last_line.find(',') + 1));
  CHECK(std::abs(y - -0.1637282137332016522532251) < 1e-9);
}

TEST_CASE("config file overrides and is validated") {
  const fs::path dir = scratch_dir();
  const fs::path good = dir / "good.cfg";
  std::ofstream(good) << "# tighter run\nrtol = 1e-12\natol=1e-14\n";
  CHECK(call({"integrate", "--y0", "0", "--dy0", "0", "--x-end", "-1", "--config", good.string()}).code == 0);
  const fs::path bad = dir / "bad.cfg";
  std::ofstream(bad) << "tolerance = 3\n";
  CHECK(call({"integrate", "--y0", "0", "--dy0", "0", "--x-end", "-1", "--config", bad.string()}).code == 2);
}

TEST_CASE("integrate, fit, classify round trip on the pole preset") {
  const fs::path dir = scratch_dir();
  const auto traj = (dir / "zp.csv").string();
  const auto poles = (dir / "zp_poles.csv").string();
  REQUIRE(call({"integrate", "--pole-p", "0", "--pole-h", "0", "--x-end", "-60", "--out", traj, "--poles-out",
                poles})
              .code == 0);
  CHECK(slurp(poles).rfind("n,p,h\n", 0) == 0);
  for (const auto& extra : std::vector<std::vector<std::string>>{{}, {"--poles", poles}}) {
    std::vector<std::string> args = {"fit", "--traj", traj, "--class", "sing"};
    args.insert(args.end(), extra.begin(), extra.end());
    const auto r = call(args);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["b"]["value"].get<double>() == doctest::Approx(0.0765872).epsilon(0.02));
    const auto s2 = j["s2"];
    const auto c = call({"classify", "--s2", std::to_string(s2[0].get<double>()) + "," +
                                                  std::to_string(s2[1].get<double>())});
    CHECK(nlohmann::json::parse(c.out)["class"] == "singular");
  }
}

TEST_CASE("compare writes the report, grid and trajectory deterministically") {
  const fs::path dir = scratch_dir();
  auto run_once = [&](const std::string& tag) {
    const auto rep = (dir / ("rep" + tag + ".json")).string();
    const auto grid = (dir / ("grid" + tag + ".csv")).string();
    const auto r = call({"compare", "--preset", "zero-ic", "--x-min", "-30", "--out", rep, "--grid-out", grid});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(slurp(rep));
    CHECK(j["preset"] == "zero-ic");
    CHECK(j["files"]["grid"] == grid);
    CHECK(fs::exists(j["files"]["traj"].get<std::string>()));
    return std::make_pair(slurp(grid), slurp(j["files"]["traj"].get<std::string>()));
  };
  const auto a = run_once("a");
  const auto b = run_once("b");
  CHECK(a.first == b.first);
  CHECK(a.second == b.second);
  CHECK(call({"compare", "--preset", "zero-x", "--x-min", "-30", "--out", "r", "--grid-out", "g"}).code == 2);
}
