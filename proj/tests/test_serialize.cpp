#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "reslab/catalog.hpp"
#include "reslab/errors.hpp"
#include "reslab/serialize.hpp"

using namespace reslab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("rationals and matrices") {
  CHECK(to_json(Rat(-3, 6)) == "-1/2");
  CHECK(rat_from_json(json("4/6")) == Rat(2, 3));
  CHECK(rat_from_json(json(5)) == Rat(5));
  CHECK(code_of([] { rat_from_json(json("1/0")); }) == ErrorCode::Parse);
  CHECK(code_of([] { rat_from_json(json(1.5)); }) == ErrorCode::Parse);
  Mat m = Mat::from_rows({{1, Rat(1, 2)}, {0, -3}});
  CHECK(mat_from_json(to_json(m)) == m);
  CHECK(mat_from_json(to_json(m), 2, 2) == m);
  CHECK(code_of([&] { mat_from_json(to_json(m), 3, 2); }) == ErrorCode::Parse);
  CHECK(code_of([] { mat_from_json(json::parse(R"([["1"],["1","2"]])")); }) == ErrorCode::Parse);
}

TEST_CASE("every shipped fixture file round-trips byte for byte") {
  std::size_t files = 0;
  for (const auto& entry : fs::directory_iterator(fixture_dir())) {
    if (entry.path().extension() != ".json") continue;
    CAPTURE(entry.path().string());
    const std::string text = slurp(entry.path());
    json doc = parse_json(text);
    json again;
    if (doc.contains("mats"))
      again = to_json(rep_from_json(doc));
    else
      again = to_json(cdga_from_json(doc));
    CHECK(dump(again) == text);
    ++files;
  }
  CHECK(files == 29);
}

TEST_CASE("shipped files equal the built-in definitions") {
  FixtureSet loaded = load_fixture_set(fixture_dir());
  FixtureSet built = builtin_fixture_set();
  REQUIRE(loaded.base.size() == built.base.size());
  for (std::size_t i = 0; i < built.base.size(); ++i) CHECK(loaded.base[i].algebra == built.base[i].algebra);
  for (std::size_t i = 0; i < built.reps.size(); ++i) CHECK(loaded.reps[i].rep == built.reps[i].rep);
  for (const auto& p : built.products) {
    CAPTURE(p.name);
    CHECK(cdga_from_json(read_json_file((fixture_dir() / (p.name + ".json")).string())) == p.witness.product);
  }
  for (const auto& w : built.wedges) {
    CAPTURE(w.name);
    CHECK(cdga_from_json(read_json_file((fixture_dir() / (w.name + ".json")).string())) == w.witness.wedge);
  }
}

TEST_CASE("Lie algebras and connections round-trip") {
  for (const auto& name : lie_fixture_names()) {
    auto r = builtin(name);
    CHECK(lie_from_json(to_json(r.lie)) == r.lie);
    CHECK(rep_from_json(to_json(r)) == r);
  }
  Connection c{Mat::from_rows({{1, Rat(-2, 3)}, {0, 5}})};
  CHECK(connection_from_json(to_json(c)) == c);
}

TEST_CASE("malformed documents are parse errors") {
  CHECK(code_of([] { parse_json("{\"q\": 1,"); }) == ErrorCode::Parse);
  CHECK(code_of([] { read_json_file("/nonexistent/file.json"); }) == ErrorCode::Parse);
  json a = to_json(builtin_algebra("lambda2d"));
  SUBCASE("missing key") {
    a.erase("diff");
    CHECK(code_of([&] { cdga_from_json(a); }) == ErrorCode::Parse);
  }
  SUBCASE("wrong dims") {
    a["dims"][1] = 5;
    CHECK(code_of([&] { cdga_from_json(a); }) == ErrorCode::Parse);
  }
  SUBCASE("duplicate product entries") {
    a["mult"].push_back(a["mult"][0]);
    CHECK(code_of([&] { cdga_from_json(a); }) == ErrorCode::Parse);
  }
  SUBCASE("out-of-range index") {
    a["mult"][0]["a"] = 9;
    CHECK(code_of([&] { cdga_from_json(a); }) == ErrorCode::Parse);
  }
  SUBCASE("representation with the wrong matrix count") {
    json r = to_json(builtin("sl2"));
    r["mats"].erase(r["mats"].size() - 1);
    CHECK(code_of([&] { rep_from_json(r); }) == ErrorCode::Parse);
  }
}

TEST_CASE("dump is canonical") {
  json j = parse_json("{\"b\":1,\"a\":[1,2]}");
  CHECK(dump(j) == "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 1\n}\n");
}
