#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <random>

#include "reslab/catalog.hpp"
#include "reslab/serialize.hpp"

using namespace reslab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string output;  // stdout and stderr interleaved
};

Run run(const std::string& args, const std::string& env = {}) {
  std::string cmd = env + (env.empty() ? "" : " ") + "'" RESLAB_CLI "' " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
  int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("reslab-cli-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    write_text_file((path / name).string(), text);
    return (path / name).string();
  }
};

json output_json(const Run& r) { return parse_json(r.output); }

}  // namespace

TEST_CASE("validate") {
  TempDir tmp;
  auto ok = run("validate lambda2d");
  CHECK(ok.status == 0);
  CHECK(output_json(ok)["valid"] == true);
  CHECK(run("validate sl2").status == 0);
  CHECK(run("validate '" + (fixture_dir() / "lambda2-x-lambda2d.json").string() + "'").status == 0);

  CHECK(run("validate '" + tmp.file("bad.json", "{ not json") + "'").status == 2);
  CHECK(run("validate no-such-fixture").status == 2);

  json broken = to_json(builtin_algebra("lambda2d"));
  broken["diff"][1] = json::parse(R"([["1", "0"]])");  // dx = xy: fine on its own
  broken["diff"][0] = json::parse(R"([["1"], ["0"]])");  // d1 = x breaks d(1 * 1) = 2 d1 and d^2 = 0
  auto bad = run("validate '" + tmp.file("broken.json", dump(broken)) + "'");
  CHECK(bad.status == 1);
  CHECK(output_json(bad)["valid"] == false);
}

TEST_CASE("resonance on the model's line") {
  TempDir tmp;
  auto at = [&](const std::string& t) {
    return run("resonance --algebra lambda2d --rep abelian1 -i 1 --connection '" +
               tmp.file("c.json", "{\"coeffs\": [[\"" + t + "\"], [\"0\"]]}") + "'");
  };
  auto one = at("1");
  CHECK(one.status == 0);
  CHECK(output_json(one)["member"] == true);
  auto three = at("3");
  CHECK(three.status == 0);
  CHECK(output_json(three)["member"] == false);
  CHECK(output_json(three)["twisted_betti"] == 0);

  auto nonflat = run("resonance --algebra lambda2 --rep sl2 -i 1 --connection '" +
                     tmp.file("n.json", R"({"coeffs": [["1","0","0"],["0","1","0"]]})") + "'");
  CHECK(nonflat.status == 1);
  CHECK(output_json(nonflat)["flat"] == false);

  auto shape = run("resonance --algebra lambda2 --rep sl2 -i 1 --connection '" + tmp.file("s.json", R"({"coeffs": [["1"]]})") + "'");
  CHECK(shape.status == 2);
}

TEST_CASE("holonomy") {
  auto r = run("holonomy lambda2d");
  CHECK(r.status == 0);
  CHECK(r.output == "gen: x, y\nrel: [x,y] = y\n");
  CHECK(run("holonomy lambda1").output == "gen: e\n");
}

TEST_CASE("tensor and wedge outputs validate") {
  TempDir tmp;
  auto t = run("tensor lambda1 lambda1 --out '" + (tmp.path / "t.json").string() + "'");
  CHECK(t.status == 0);
  auto tv = run("validate '" + (tmp.path / "t.json").string() + "'");
  CHECK(tv.status == 0);
  CHECK(output_json(tv)["dims"] == json::parse("[1,2,1,0,0]"));

  auto w = run("wedge lambda1 lambda1");
  CHECK(w.status == 0);
  CHECK(output_json(w)["dims"] == json::parse("[1,2,0,0,0]"));
}

TEST_CASE("verify exit codes") {
  CHECK(run("verify --suite ''").status == 2);
  CHECK(run("verify --suite bogus").status == 2);
  CHECK(run("--no-such-flag").status == 2);
  auto ok = run("verify --suite holonomy-sol2,line-resonance --count 5");
  CHECK(ok.status == 0);
}

TEST_CASE("a corrupted fixture set fails the holonomy check") {
  TempDir tmp;
  auto dir = tmp.path / "fixtures";
  CHECK(run("catalog --write '" + dir.string() + "'").status == 0);
  json sol = read_json_file((dir / "sol2.json").string());
  // [a,b] = 2b with a -> diag(2,0) is still a representation.
  sol["lie"]["bracket"][0]["out"][0][0] = "2";
  sol["lie"]["bracket"][1]["out"][0][0] = "-2";
  sol["mats"][0] = json::parse(R"([["2","0"],["0","0"]])");
  write_text_file((dir / "sol2.json").string(), dump(sol));

  const std::string env = "RESLAB_FIXTURES='" + dir.string() + "'";
  auto r = run("verify --suite holonomy-sol2", env);
  CHECK(r.status == 1);
  CHECK(r.output.find("holonomy-sol2") != std::string::npos);
  CHECK(run("validate sol2", env).status == 0);
}
