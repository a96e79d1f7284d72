#include <doctest.h>

#include "reslab/catalog.hpp"
#include "reslab/errors.hpp"
#include "reslab/flatconn.hpp"
#include "reslab/liealg.hpp"
#include "reslab/sampling.hpp"

using namespace reslab;

namespace {

Connection conn(std::initializer_list<std::initializer_list<Rat>> rows) { return {Mat::from_rows(rows)}; }

// Oracle: d omega + sum_{j<k} (a_j a_k) (x) [omega_j, omega_k], written out
// from the product table one basis pair at a time.
Mat curvature_oracle(const CDGA& a, const LieAlgebra& g, const Connection& w) {
  const auto n1 = a.dim(1), n2 = a.dim(2), m = g.dim();
  Mat f(n2, m);
  for (std::size_t b = 0; b < n2; ++b)
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t s = 0; s < m; ++s) f(b, s) += a.diff(1)(b, j) * w.coeffs(j, s);
  for (std::size_t j = 0; j < n1; ++j)
    for (std::size_t k = j + 1; k < n1; ++k) {
      Vec prod = a.product(1, j, 1, k);
      Vec br = g.bracket(w.coeffs.row(j), w.coeffs.row(k));
      for (std::size_t b = 0; b < n2; ++b)
        for (std::size_t s = 0; s < m; ++s) f(b, s) += prod[b] * br[s];
    }
  return f;
}

}  // namespace

TEST_CASE("curvature examples") {
  CDGA l2 = exterior_algebra({"x", "y"});
  auto sl2 = builtin("sl2").lie;
  // x (x) e + y (x) f has curvature xy (x) h.
  auto w = conn({{1, 0, 0}, {0, 1, 0}});
  CHECK(curvature(l2, sl2, w) == Mat::from_rows({{0, 0, 1}}));
  CHECK_FALSE(is_flat(l2, sl2, w));
  CHECK(is_flat(l2, sl2, conn({{0, 0, 1}, {0, 0, 2}})));
  CHECK(is_flat(l2, sl2, Connection::zero(l2, sl2)));

  // On the model, x (x) a + y (x) b is flat for sol2: d y = -xy cancels [a,b] = b.
  CDGA m = twisted_exterior_algebra();
  auto sol = builtin("sol2").lie;
  CHECK(is_flat(m, sol, conn({{1, 0}, {0, 1}})));
  CHECK_FALSE(is_flat(m, sol, conn({{2, 0}, {0, 1}})));
  CHECK_FALSE(is_flat(m, sol, conn({{0, 0}, {0, 1}})));
}

TEST_CASE("curvature agrees with the pairwise oracle") {
  Rng rng(31);
  for (const auto& name : base_fixture_names())
    for (const auto& lie : lie_fixture_names()) {
      CDGA a = builtin_algebra(name);
      auto g = builtin(lie).lie;
      for (int t = 0; t < 20; ++t) {
        Connection w{Mat(a.dim(1), g.dim())};
        for (std::size_t j = 0; j < a.dim(1); ++j)
          for (std::size_t s = 0; s < g.dim(); ++s) w.coeffs(j, s) = rng.rational(3);
        CHECK(curvature(a, g, w) == curvature_oracle(a, g, w));
      }
    }
}

TEST_CASE("shape mismatch") {
  CDGA l2 = exterior_algebra({"x", "y"});
  try {
    curvature(l2, builtin("sl2").lie, conn({{1, 0}}));
    FAIL("expected ShapeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ShapeMismatch);
  }
}

TEST_CASE("essentially rank one") {
  CDGA l2 = exterior_algebra({"x", "y"});
  CHECK(is_essentially_rank_one(l2, conn({{0, 0, 1}, {0, 0, 0}})));
  CHECK_FALSE(is_essentially_rank_one(l2, conn({{1, 0, 0}, {0, 1, 0}})));
  CHECK(is_essentially_rank_one(l2, Connection::rank_one(Vec{1, 2}, Vec{1, 1, 0})));
  // y is not closed on the model.
  CDGA m = twisted_exterior_algebra();
  CHECK(is_essentially_rank_one(m, conn({{1, 0}, {0, 0}})));
  CHECK_FALSE(is_essentially_rank_one(m, conn({{0, 0}, {1, 0}})));
}

TEST_CASE("holonomy presentations") {
  auto p1 = holonomy_presentation(exterior_algebra({"e"}));
  CHECK(p1.gens == 1);
  CHECK(p1.relation_count() == 0);
  CHECK(format_presentation(p1) == "gen: e\n");

  auto pm = holonomy_presentation(twisted_exterior_algebra());
  CHECK(pm.gens == 2);
  CHECK(pm.relation_count() == 1);
  CHECK(format_presentation(pm) == "gen: x, y\nrel: [x,y] = y\n");

  auto p2 = holonomy_presentation(exterior_algebra({"e1", "e2"}));
  CHECK(format_presentation(p2) == "gen: e1, e2\nrel: [e1,e2] = 0\n");

  auto p3 = holonomy_presentation(exterior_algebra({"a", "b", "c"}));
  CHECK(p3.relation_count() == 3);

  try {
    holonomy_presentation(exterior_algebra({"e"}, 0));
    FAIL("expected DegreeOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeOutOfRange);
  }
}

TEST_CASE("the model's holonomy algebra is sol2") {
  auto nf = normalize_two_generator(holonomy_presentation(twisted_exterior_algebra()));
  REQUIRE(nf);
  CHECK(nf->algebra.bracket(0, 1) == Vec{0, 1});
  CHECK(nf->algebra.bracket(1, 0) == Vec{0, -1});
  CHECK(validate_lie(nf->algebra).ok());
  CHECK_FALSE(normalize_two_generator(holonomy_presentation(exterior_algebra({"e1", "e2"}))));
  CHECK_FALSE(normalize_two_generator(holonomy_presentation(exterior_algebra({"e"}))));
}

TEST_CASE("killing relations") {
  auto pm = holonomy_presentation(twisted_exterior_algebra());
  auto sol = builtin("sol2").lie;
  CHECK(kills_relations(pm, sol, LieMapCandidate{Mat::identity(2)}));
  CHECK_FALSE(kills_relations(pm, sol, LieMapCandidate{Mat::from_rows({{2, 0}, {0, 1}})}));
  CHECK(kills_relations(pm, sol, LieMapCandidate{Mat(2, 2)}));

  auto p2 = holonomy_presentation(exterior_algebra({"e1", "e2"}));
  auto sl2 = builtin("sl2").lie;
  // Columns are the images of the generators.
  CHECK_FALSE(kills_relations(p2, sl2, LieMapCandidate{Mat::from_rows({{1, 0}, {0, 1}, {0, 0}})}));
  CHECK(kills_relations(p2, sl2, LieMapCandidate{Mat::from_rows({{1, 2}, {0, 0}, {0, 0}})}));
  auto values = evaluate_relations(p2, sl2, LieMapCandidate{Mat::from_rows({{1, 0}, {0, 1}, {0, 0}})});
  REQUIRE(values.size() == 1);
  CHECK(values[0] == Vec{0, 0, 1});
}

TEST_CASE("flatness equals killing relations on random points") {
  Rng rng(32);
  for (const auto& name : base_fixture_names()) {
    CDGA a = builtin_algebra(name);
    auto p = holonomy_presentation(a);
    for (const auto& lie : lie_fixture_names()) {
      auto g = builtin(lie).lie;
      for (int t = 0; t < 10; ++t) {
        Connection w{Mat(a.dim(1), g.dim())};
        for (std::size_t j = 0; j < a.dim(1); ++j)
          for (std::size_t s = 0; s < g.dim(); ++s) w.coeffs(j, s) = rng.rational(2);
        CHECK(is_flat(a, g, w) == kills_relations(p, g, to_lie_map(w)));
        CHECK(to_connection(to_lie_map(w)) == w);
      }
    }
  }
}

TEST_CASE("rank of the image") {
  CHECK(has_rank_at_most_one_image(LieMapCandidate{Mat::from_rows({{1, 2}, {0, 0}, {3, 6}})}));
  CHECK_FALSE(has_rank_at_most_one_image(LieMapCandidate{Mat::from_rows({{1, 0}, {0, 1}, {0, 0}})}));
  CHECK(has_rank_at_most_one_image(LieMapCandidate{Mat(3, 2)}));
}
