#include <doctest.h>

#include <algorithm>

#include "reslab/errors.hpp"
#include "reslab/exactlin.hpp"
#include "reslab/liealg.hpp"
#include "reslab/sampling.hpp"

using namespace reslab;

TEST_CASE("builtin algebras and representations validate") {
  for (const char* name : {"abelian1", "abelian2", "abelian(3)", "sl2", "sol2", "gl2"}) {
    CAPTURE(name);
    auto r = builtin(name);
    CHECK(validate_lie(r.lie).ok());
    CHECK(validate_rep(r).ok());
    CHECK(validate_rep(adjoint(r.lie)).ok());
  }
}

TEST_CASE("sl2 brackets") {
  auto g = builtin("sl2").lie;
  CHECK(g.bracket(0, 1) == Vec{0, 0, 1});   // [e,f] = h
  CHECK(g.bracket(2, 0) == Vec{2, 0, 0});   // [h,e] = 2e
  CHECK(g.bracket(2, 1) == Vec{0, -2, 0});  // [h,f] = -2f
  auto sol = builtin("sol2").lie;
  CHECK(sol.bracket(0, 1) == Vec{0, 1});
}

TEST_CASE("gl2 identity representation") {
  auto r = builtin("gl2");
  CHECK(r.v_dim == 2);
  CHECK(r.apply(Vec{1, 2, 3, 4}) == Mat::from_rows({{1, 2}, {3, 4}}));
}

TEST_CASE("a non-homomorphism is reported at the offending pair") {
  auto r = builtin("sl2");
  r.mats[2] = Mat::identity(2);
  auto report = validate_rep(r);
  REQUIRE_FALSE(report.ok());
  bool found = std::any_of(report.violations.begin(), report.violations.end(), [](const LieViolation& v) {
    return v.axiom == "homomorphism" && std::find(v.indices.begin(), v.indices.end(), 0) != v.indices.end() &&
           std::find(v.indices.begin(), v.indices.end(), 2) != v.indices.end();
  });
  CHECK(found);
}

TEST_CASE("broken structure constants fail validation") {
  LieAlgebra g("bad", 2);
  g.set_bracket(0, 1, Vec{0, 1});
  CHECK_FALSE(validate_lie(g).ok());  // no antisymmetric partner
  g.set_bracket(1, 0, Vec{0, -1});
  CHECK(validate_lie(g).ok());
}

TEST_CASE("commutes") {
  auto g = builtin("sl2").lie;
  CHECK(commutes(Vec{1, 0, 0}, Vec{2, 0, 0}, g));
  CHECK_FALSE(commutes(Vec{1, 0, 0}, Vec{0, 1, 0}, g));
  CHECK(commutes(Vec{0, 0, 0}, Vec{1, 1, 1}, g));
  CHECK(commutes(Vec{1, 0}, Vec{0, 1}, builtin("abelian2").lie));
}

TEST_CASE("unknown names") {
  try {
    builtin("so3");
    FAIL("expected UnknownName");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownName);
  }
}

TEST_CASE("in sl2 and sol2 commuting pairs are colinear") {
  // Oracle: the canonical representations are faithful, so [x,y] = 0 iff the
  // matrices commute.
  Rng rng(21);
  for (const char* name : {"sl2", "sol2"}) {
    auto r = builtin(name);
    const auto n = r.lie.dim();
    std::size_t commuting = 0;
    for (int t = 0; t < 600; ++t) {
      Vec x = rng.vector(n, 4);
      Vec y = t % 3 == 0 ? scale(x, rng.rational(4)) : rng.vector(n, 4);
      Mat mx = r.apply(x), my = r.apply(y);
      bool oracle = mx * my == my * mx;
      CHECK(commutes(x, y, r.lie) == oracle);
      CHECK(oracle == (rank(Mat::from_columns({x, y}, n)) <= 1));
      commuting += oracle;
    }
    CHECK(commuting >= 200);
  }
}

TEST_CASE("commuting basis") {
  CHECK(commuting_basis(builtin("abelian2").lie).size() == 2);
  CHECK(commuting_basis(builtin("sl2").lie).size() == 1);
  CHECK(commuting_basis(builtin("gl2").lie).size() == 2);
}
