#include "salem/cli.hpp"
#include "salem/serialize.hpp"

#include <doctest.h>

#include <filesystem>
#include <sstream>

using namespace salem;
namespace fs = std::filesystem;

namespace {
struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("salem_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}
}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"behrend", "--N", "121"}).code == 2);
  CHECK(run({"behrend", "--N", "121", "--A", "5", "--mode", "fast"}).code == 2);
  auto r = run({"--out-dir", scratch("bad").string(), "behrend", "--N", "4", "--A", "5", "--mode", "fixed"});
  CHECK(r.code == 2);
  CHECK(r.err.find("NoValidDigitCap") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("behrend writes the set and a manifest") {
  auto dir = scratch("behrend");
  auto r = run({"--out-dir", dir.string(), "behrend", "--N", "121", "--A", "5", "--mode", "search"});
  REQUIRE(r.code == 0);
  auto j = read_json_file((dir / "behrend.json").string());
  CHECK(j["elements"].size() >= 2);
  CHECK(j["provenance"]["mode"] == "search");
  auto m = read_json_file((dir / "behrend.manifest.json").string());
  CHECK(m["subcommand"] == "behrend");
  CHECK(m["params"]["--N"] == "121");
  CHECK(m["outputs"][0] == "behrend.json");
}

TEST_CASE("tree build, verify, replay") {
  auto dir = scratch("tree");
  write_text_file((dir / "forms.json").string(), R"({"schema":1,"forms":[{"m0":2,"m":[1,1]}]})");
  auto b = run({"--out-dir", dir.string(), "cantor-build", "--schedule", "uniform", "--M", "4000", "--forms",
                (dir / "forms.json").string(), "--depth", "3", "--cap", "1e12", "--seed", "4", "--measure-level", "2"});
  REQUIRE(b.code == 0);
  auto v = run({"--out-dir", dir.string(), "cantor-verify", "--tree", (dir / "tree.json").string(), "--targets",
                (dir / "forms.json").string(), "--depth", "3"});
  CHECK(v.code == 0);

  // Same seed, same bytes; a replay into another directory reproduces them.
  auto again = scratch("tree_again");
  auto rp = run({"--out-dir", again.string(), "replay", "--manifest", (dir / "cantor-build.manifest.json").string(),
                 "--check"});
  CHECK(rp.code == 0);
  CHECK(read_text_file((again / "tree.json").string()) == read_text_file((dir / "tree.json").string()));

  auto l = run({"--out-dir", dir.string(), "lambda", "--measure", (dir / "measure.json").string(), "--t", "1/2,1/2",
                "--f", "one", "--method", "space"});
  CHECK(l.code == 0);
  auto mass = read_json_file((dir / "lambda.json").string());
  CHECK(mass["method"] == "space-exact");
  CHECK(mass.contains("exact"));

  auto rep = run({"--out-dir", dir.string(), "report", "--tree", (dir / "tree.json").string()});
  CHECK(rep.code == 0);
}

TEST_CASE("a non-avoiding tree yields exit 1 with the witness") {
  auto dir = scratch("witness");
  write_text_file((dir / "forms.json").string(), R"([{"m0":2,"m":[1,1]}])");
  auto b = run({"--out-dir", dir.string(), "cantor-build", "--M", "10", "--L", "5", "--depth", "2"});
  REQUIRE(b.code == 0);
  auto v = run({"--out-dir", dir.string(), "cantor-verify", "--tree", (dir / "tree.json").string(), "--targets",
                (dir / "forms.json").string()});
  CHECK(v.code == 1);
  auto j = read_json_file((dir / "verify.json").string());
  CHECK(j["pass"] == false);
  CHECK(j.contains("witness"));
}

TEST_CASE("fourier, mass identity and coefficient sets") {
  auto dir = scratch("misc");
  REQUIRE(run({"--out-dir", dir.string(), "cantor-build", "--M", "10", "--L", "5", "--depth", "3", "--seed", "2"}).code == 0);
  auto f = run({"--out-dir", dir.string(), "fourier", "--measure", (dir / "measure.json").string(), "--K", "2000"});
  CHECK(f.code == 0);
  CHECK(read_text_file((dir / "profile.csv").string()).rfind("k_band_lo,k_band_hi,band_max\n", 0) == 0);
  CHECK(read_json_file((dir / "fit.json").string()).contains("beta"));
  // Thread count does not change outputs.
  auto one = scratch("misc_one");
  REQUIRE(run({"--threads", "1", "--out-dir", one.string(), "fourier", "--measure", (dir / "measure.json").string(),
               "--K", "2000"}).code == 0);
  CHECK(read_text_file((one / "profile.csv").string()) == read_text_file((dir / "profile.csv").string()));

  CHECK(run({"--out-dir", dir.string(), "mass-identity"}).code == 0);
  CHECK(run({"--out-dir", dir.string(), "coeffset", "member", "--quadratic", "-1,1,5,2"}).code == 0);
  auto half = run({"--out-dir", dir.string(), "coeffset", "member", "--t", "1/2"});
  CHECK(half.code == 1);
  CHECK(read_json_file((dir / "member.json").string())["witness"] == "1/2");
  CHECK(run({"--out-dir", dir.string(), "coeffset", "build", "--depth", "2"}).code == 0);
  CHECK(run({"--out-dir", dir.string(), "coeffset", "build", "--depth", "2", "--schedule", "1:3,5:7"}).code == 0);
  CHECK(run({"--out-dir", dir.string(), "coeffset", "build", "--depth", "2", "--schedule", "1:3,4:7"}).code == 2);
  CHECK(run({"--out-dir", dir.string(), "block", "--kind", "near-rational", "--M", "6400", "--p", "2", "--verify"})
            .code == 0);
  CHECK(run({"--out-dir", dir.string(), "lambda", "--grid", "1/4,3/4;1/2,1/2"}).code == 0);
}
