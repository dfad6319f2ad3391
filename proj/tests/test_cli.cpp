#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support/temp_dir.hpp"

using namespace latinhib;
using latinhib::testing::slurp;
using latinhib::testing::TempDir;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::vector<std::string> gen_args(const std::filesystem::path& out) {
  return {"gen",    "--clusters", "5",  "--points-per-cluster", "10", "--dim",
          "2",      "--sigma",    "1",  "--center-box",         "20", "--min-separation",
          "10",     "--seed",     "1",  "--out",                out.string()};
}

}  // namespace

TEST_CASE("gen writes a labelled points file") {
  TempDir dir;
  const auto a = run(gen_args(dir / "a.csv"));
  REQUIRE(a.code == cli::exit_code::ok);
  CHECK(has(a.out, "50 points"));
  CHECK(has(a.err, "seed=1"));
  const auto text = slurp(dir / "a.csv");
  CHECK(std::count(text.begin(), text.end(), '\n') == 50);

  REQUIRE(run(gen_args(dir / "b.csv")).code == cli::exit_code::ok);
  CHECK(slurp(dir / "b.csv") == text);

  auto bad = gen_args(dir / "c.csv");
  bad[6 + 2] = "0";  // --sigma 0
  REQUIRE(bad[6 + 1] == "--sigma");
  const auto r = run(bad);
  CHECK(r.code == cli::exit_code::usage);
  CHECK(has(r.err, "sigma"));
}

TEST_CASE("cluster subcommand") {
  TempDir dir;
  SUBCASE("iris inside the three-class plateau") {
    const auto r = run({"cluster", "--iris", "--t", "1.3", "--json", (dir / "r.json").string()});
    REQUIRE(r.code == cli::exit_code::ok);
    CHECK(has(r.out, "k=3\n"));
    CHECK(has(r.err, "alpha=0.05"));
    CHECK(has(r.err, "max_iters=100000"));
    const auto j = nlohmann::json::parse(slurp(dir / "r.json"));
    CHECK(j["k"] == 3);
    CHECK(j["labels"].size() == 150);
  }
  SUBCASE("zero threshold keeps every object apart") {
    run(gen_args(dir / "p.csv"));
    const auto r = run({"cluster", "--points", (dir / "p.csv").string(), "--label-column", "2",
                        "-t", "0"});
    REQUIRE(r.code == cli::exit_code::ok);
    CHECK(has(r.out, "k=50\n"));
  }
  SUBCASE("distance matrix input") {
    const auto path = dir.write("d.csv", "0,1,9\n1,0,8\n9,8,0\n");
    const auto r = run({"cluster", "--distances", path.string(), "-t", "2"});
    REQUIRE(r.code == cli::exit_code::ok);
    CHECK(has(r.out, "k=2\n"));
  }
  SUBCASE("missing input file") {
    const auto r = run({"cluster", "--points", (dir / "nope.csv").string(), "-t", "1"});
    CHECK(r.code == cli::exit_code::input);
    CHECK(has(r.err, "nope.csv"));
  }
  SUBCASE("invalid distance matrix") {
    const auto path = dir.write("d.csv", "0,3\n2,0\n");
    CHECK(run({"cluster", "--distances", path.string(), "-t", "1"}).code ==
          cli::exit_code::input);
  }
  SUBCASE("nonconvergence has its own exit code") {
    const auto r =
        run({"cluster", "--iris", "-t", "2", "--max-iters", "1", "--alpha", "1e-9"});
    CHECK(r.code == cli::exit_code::nonconvergence);
    CHECK(has(r.err, "did not terminate"));
  }
  SUBCASE("usage errors") {
    CHECK(run({"cluster", "-t", "1"}).code == cli::exit_code::usage);
    CHECK(run({"cluster", "--iris", "--distances", "x.csv", "-t", "1"}).code ==
          cli::exit_code::usage);
    CHECK(run({"cluster", "--iris"}).code == cli::exit_code::usage);
    CHECK(run({"cluster", "--iris", "-t", "-1"}).code == cli::exit_code::usage);
    CHECK(run({"cluster", "--iris", "-t", "1", "--alpha", "0"}).code == cli::exit_code::usage);
    CHECK(run({}).code == cli::exit_code::usage);
  }
}

TEST_CASE("sweep subcommand") {
  TempDir dir;
  SUBCASE("iris defaults report the three- and two-class plateaus") {
    const auto r = run({"sweep", "--iris", "--tsv", (dir / "c.tsv").string(), "--plateaus",
                        (dir / "p.json").string(), "--svg", (dir / "c.svg").string()});
    REQUIRE(r.code == cli::exit_code::ok);
    CHECK(has(r.out, "plateau k=3 "));
    CHECK(has(r.out, "plateau k=2 "));
    CHECK(has(r.err, "t_max=7.156"));
    CHECK(has(r.err, "auto"));

    const auto tsv = slurp(dir / "c.tsv");
    CHECK(std::count(tsv.begin(), tsv.end(), '\n') == 201);
    const auto report = nlohmann::json::parse(slurp(dir / "p.json"));
    CHECK(report["grid_points"] == 200);
    CHECK(report["plateaus"][0]["width"] >= report["plateaus"][1]["width"]);
    CHECK(has(slurp(dir / "c.svg"), "</svg>"));
  }
  SUBCASE("generated blobs show five classes") {
    run(gen_args(dir / "b.csv"));
    const auto r = run({"sweep", "--points", (dir / "b.csv").string(), "--label-column", "2",
                        "--steps", "300", "--top", "3"});
    REQUIRE(r.code == cli::exit_code::ok);
    CHECK(has(r.out, "plateau k=5 "));
  }
  SUBCASE("explicit range and quantile grid") {
    const auto r = run({"sweep", "--iris", "--grid", "quantile", "--steps", "50", "--t-max",
                        "3", "--min-class-size", "5"});
    REQUIRE(r.code == cli::exit_code::ok);
    CHECK(has(r.err, "grid=distance-quantile"));
    CHECK(has(r.err, "plateaus_from=filtered"));
    CHECK(has(r.out, "samples=50"));
  }
  SUBCASE("parameter errors") {
    CHECK(run({"sweep", "--iris", "--steps", "1"}).code == cli::exit_code::usage);
    CHECK(run({"sweep", "--iris", "--t-max", "abc"}).code == cli::exit_code::usage);
    CHECK(run({"sweep", "--iris", "--grid", "log"}).code == cli::exit_code::usage);
    CHECK(run({"sweep", "--iris", "--min-class-size", "0"}).code == cli::exit_code::usage);
    CHECK(run({"sweep", "--iris", "--plateaus-from", "x"}).code == cli::exit_code::usage);
  }
}
