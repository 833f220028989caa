#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = ctreg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "ctreg_test_cli";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("phantom, project, reconstruct end to end") {
  const fs::path dir = scratch();
  const std::string img = (dir / "g.img").string(), sin = (dir / "g.sin").string(),
                    rec = (dir / "r.img").string();
  REQUIRE(run({"phantom", "--kind", "gaussian", "--M", "128", "--out", img}).code == 0);
  REQUIRE(run({"project", "--in", img, "--p", "180", "--q", "128", "--out", sin}).code == 0);
  const Result r = run({"reconstruct", "--in", sin, "--alpha", "1e-10", "--s", "1.2", "--M", "128",
                        "--reference", img, "--out", rec});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["metrics"][0]["relative_error"].get<double>() <= 0.05);
  CHECK(report["config"]["subcommand"] == "reconstruct");
  CHECK(report["config"]["alpha"] == 1e-10);
  CHECK(report["config"]["M"] == 128);
  CHECK(report["prng"] == "std::mt19937_64");
  CHECK(report["artifacts"]["image"] == rec);
  CHECK(fs::exists(rec));
}

TEST_CASE("error reporting") {
  const fs::path dir = scratch();
  const std::string img = (dir / "d.img").string(), sin = (dir / "d.sin").string(),
                    cut = (dir / "cut.sin").string();
  REQUIRE(run({"phantom", "--kind", "disk", "--M", "16", "--out", img}).code == 0);
  REQUIRE(run({"project", "--in", img, "--p", "20", "--q", "16", "--out", sin}).code == 0);
  {
    const std::string bytes = slurp(sin);
    std::ofstream(cut, std::ios::binary) << bytes.substr(0, 100);
  }
  const Result t = run({"reconstruct", "--in", cut, "--M", "16"});
  CHECK(t.code == 1);
  CHECK(t.err.find("kind=format") != std::string::npos);
  CHECK(t.err.find("byte offset 100") != std::string::npos);

  const Result u = run({"reconstruct", "--bogus", "1"});
  CHECK(u.code == 2);
  CHECK(u.err.rfind("error kind=usage", 0) == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"project", "--out", sin}).code == 2);
  CHECK(run({"reconstruct", "--in", sin, "--alpha", "-1"}).code == 1);
  CHECK(run({"reconstruct", "--in", (dir / "none.sin").string()}).code == 1);
  CHECK(run({"phantom", "--kind", "walnut", "--out", img}).code == 1);
}

TEST_CASE("rates subcommand") {
  const Result r = run({"rates", "--a", "0.5", "--p-exp", "1", "--beta", "1", "--trials", "10"});
  REQUIRE(r.code == 0);
  const double slope = json::parse(r.out)["rates"]["slope"].get<double>();
  CHECK(std::abs(slope - 1.0 / 3.0) <= 0.1);
}

TEST_CASE("config file, explicit flags win") {
  const fs::path dir = scratch();
  const fs::path cfg = dir / "run.cfg";
  std::ofstream(cfg) << "# phantom settings\nkind = disk\nM = 12\n--width = 0.2\n";
  const std::string img = (dir / "c.img").string();
  const Result r = run({"phantom", "--config", cfg.string(), "--M", "10", "--out", img});
  REQUIRE(r.code == 0);
  const json report = json::parse(r.out);
  CHECK(report["config"]["kind"] == "disk");
  CHECK(report["config"]["M"] == 10);
  CHECK(report["config"]["width"] == 0.2);

  std::ofstream(dir / "bad.cfg") << "kind disk\n";
  CHECK(run({"phantom", "--config", (dir / "bad.cfg").string(), "--out", img}).code == 1);
}

TEST_CASE("runs are reproducible and independent of the thread count") {
  const fs::path dir = scratch();
  const std::string img = (dir / "s.img").string(), sin = (dir / "s.sin").string(),
                    noisy = (dir / "n.sin").string();
  REQUIRE(run({"phantom", "--kind", "cheese", "--M", "24", "--out", img}).code == 0);
  REQUIRE(run({"project", "--in", img, "--p", "40", "--q", "24", "--out", sin}).code == 0);
  REQUIRE(run({"noise", "--in", sin, "--delta", "0.3", "--seed", "7", "--out", noisy}).code == 0);
  const std::string once = slurp(noisy);
  REQUIRE(run({"noise", "--in", sin, "--delta", "0.3", "--seed", "7", "--out", noisy}).code == 0);
  CHECK(slurp(noisy) == once);

  const auto sweep = [&](const std::string& threads) {
    const std::string csv = (dir / ("sweep" + threads + ".csv")).string();
    const Result r = run({"sweep", "--in", noisy, "--reference", img, "--M", "24",
                          "--alpha-grid", "1e-6:1:4", "--threads", threads, "--csv", csv});
    REQUIRE(r.code == 0);
    json report = json::parse(r.out);
    return std::make_pair(slurp(csv), report["sweep"]);
  };
  const auto one = sweep("1");
  const auto three = sweep("3");
  CHECK(one.first == three.first);
  CHECK(one.second == three.second);
  CHECK(one.first.rfind("alpha,", 0) == 0);
}

TEST_CASE("lcurve and metrics subcommands") {
  const fs::path dir = scratch();
  const std::string img = (dir / "l.img").string(), sin = (dir / "l.sin").string();
  REQUIRE(run({"phantom", "--kind", "cheese", "--M", "16", "--out", img}).code == 0);
  REQUIRE(run({"project", "--in", img, "--p", "30", "--q", "16", "--out", sin}).code == 0);
  const Result l = run({"lcurve", "--in", sin, "--M", "16", "--alpha-grid", "1e-4:1:5"});
  REQUIRE(l.code == 0);
  CHECK(json::parse(l.out)["lcurve"]["rows"].size() == 5);
  const Result m = run({"metrics", "--in", img, "--reference", img});
  REQUIRE(m.code == 0);
  const json row = json::parse(m.out)["metrics"][0];
  CHECK(row["mse"] == 0.0);
  CHECK(row["ssim"] == 1.0);
}
