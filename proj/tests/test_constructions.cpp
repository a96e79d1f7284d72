#include <doctest.h>

#include "reslab/catalog.hpp"
#include "reslab/constructions.hpp"
#include "reslab/errors.hpp"
#include "reslab/flatconn.hpp"
#include "reslab/sampling.hpp"

using namespace reslab;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

Connection random_connection(Rng& rng, std::size_t rows, std::size_t cols) {
  Connection w{Mat(rows, cols)};
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t s = 0; s < cols; ++s) w.coeffs(j, s) = rng.rational(3);
  return w;
}

}  // namespace

TEST_CASE("tensor product of two one-generator algebras") {
  auto w = tensor_product(exterior_algebra({"e"}), exterior_algebra({"e"}));
  const CDGA& p = w.product;
  CHECK(validate(p).ok());
  CHECK(p.dims() == std::vector<std::size_t>{1, 2, 1, 0, 0});
  // Degree 1 is A^0 (x) Abar^1 followed by A^1 (x) Abar^0.
  CHECK(p.label(1, 0) == "e'");
  CHECK(p.label(1, 1) == "e");
  auto lr = p.product(1, 0, 1, 1);
  auto rl = p.product(1, 1, 1, 0);
  CHECK_FALSE(is_zero(lr));
  CHECK(rl == scale(lr, Rat(-1)));
  CHECK(betti_numbers(p) == std::vector<std::size_t>{1, 2, 1, 0});
  CHECK(w.left_one_positions() == std::vector<std::size_t>{1});
  CHECK(w.right_one_positions() == std::vector<std::size_t>{0});
}

TEST_CASE("tensoring with the trivial algebra changes nothing") {
  CDGA m = twisted_exterior_algebra();
  auto w = tensor_product(m, trivial_algebra(3));
  CHECK(w.product.dims() == m.dims());
  for (int i = 0; i <= m.q(); ++i) CHECK(w.product.diff(i) == m.diff(i));
  for (int i = 0; i <= m.top_degree(); ++i)
    for (int j = 0; i + j <= m.top_degree(); ++j) CHECK(w.product.product_table(i, j) == m.product_table(i, j));
}

TEST_CASE("products of shipped algebras are CDGAs with Kunneth Betti numbers") {
  for (const auto& l : base_fixture_names())
    for (const auto& r : base_fixture_names()) {
      CAPTURE(l);
      CAPTURE(r);
      CDGA a = builtin_algebra(l), b = builtin_algebra(r);
      auto w = tensor_product(a, b);
      CHECK(validate(w.product).ok());
      auto ba = betti_numbers(a), bb = betti_numbers(b), bp = betti_numbers(w.product);
      for (int n = 0; n <= w.product.q(); ++n) {
        std::size_t expected = 0;
        for (int i = 0; i <= n; ++i) expected += ba[i] * bb[n - i];
        CHECK(bp[n] == expected);
      }
    }
}

TEST_CASE("wedge of two one-generator algebras") {
  auto w = wedge_sum(exterior_algebra({"e"}), exterior_algebra({"e"}));
  CHECK(validate(w.wedge).ok());
  CHECK(w.wedge.dims() == std::vector<std::size_t>{1, 2, 0, 0, 0});
  CHECK(betti_numbers(w.wedge)[1] == 2);
  for (const auto& l : base_fixture_names())
    for (const auto& r : base_fixture_names()) {
      CDGA a = builtin_algebra(l), b = builtin_algebra(r);
      auto ww = wedge_sum(a, b);
      CHECK(validate(ww.wedge).ok());
      auto ba = betti_numbers(a), bb = betti_numbers(b), bw = betti_numbers(ww.wedge);
      CHECK(bw[0] == 1);
      for (int n = 1; n <= ww.wedge.q(); ++n) CHECK(bw[n] == ba[n] + bb[n]);
      // Mixed products vanish.
      for (auto i : ww.left_one_positions())
        for (auto j : ww.right_one_positions()) CHECK(is_zero(ww.wedge.product(1, i, 1, j)));
    }
}

TEST_CASE("split and merge are inverse") {
  Rng rng(41);
  auto g = builtin("gl2").lie;
  auto pw = tensor_product(builtin_algebra("lambda2d"), builtin_algebra("lambda3"));
  auto ww = wedge_sum(builtin_algebra("lambda2"), builtin_algebra("lambda2d"));
  for (int t = 0; t < 100; ++t) {
    auto w = random_connection(rng, pw.product.dim(1), g.dim());
    auto s = split_connection(pw, w);
    CHECK(s.left.coeffs.rows() == 2);
    CHECK(s.right.coeffs.rows() == 3);
    CHECK(merge_connection(pw, s.left, s.right) == w);
    auto v = random_connection(rng, ww.wedge.dim(1), g.dim());
    auto sv = split_connection(ww, v);
    CHECK(merge_connection(ww, sv.left, sv.right) == v);
  }
  auto zero_left = merge_connection(pw, Connection{Mat(2, 4)}, random_connection(rng, 3, 4));
  for (auto j : pw.left_one_positions()) CHECK(is_zero(zero_left.coeffs.row(j)));
}

TEST_CASE("gl2 on a product of circles: flat iff the values commute") {
  Rng rng(42);
  auto gl2 = builtin("gl2");
  auto w = tensor_product(exterior_algebra({"e"}), exterior_algebra({"e"}));
  std::size_t flat = 0;
  for (int t = 0; t < 200; ++t) {
    Vec g = rng.vector(4, 3);
    // Even draws lie in the centralizer of g: c g + s I.
    Rat s = rng.rational(3);
    Vec h = t % 2 ? rng.vector(4, 3) : add(scale(g, rng.rational(3)), Vec{s, 0, 0, s});
    Connection omega = merge_connection(w, Connection{Mat::from_rows(std::vector<Vec>{g}, 4)},
                                        Connection{Mat::from_rows(std::vector<Vec>{h}, 4)});
    Mat mg = gl2.apply(g), mh = gl2.apply(h);
    bool commute = mg * mh == mh * mg;
    CHECK(is_flat(w.product, gl2.lie, omega) == commute);
    flat += commute;
  }
  CHECK(flat > 0);
}

TEST_CASE("wedge flatness is flatness on both sides") {
  auto sl2 = builtin("sl2").lie;
  auto w = wedge_sum(exterior_algebra({"x", "y"}), exterior_algebra({"e"}));
  Connection bad{Mat::from_rows({{1, 0, 0}, {0, 1, 0}})};
  Connection good{Mat::from_rows({{0, 0, 1}})};
  CHECK_FALSE(is_flat(w.wedge, sl2, merge_connection(w, bad, good)));
  Connection flat_left{Mat::from_rows({{0, 0, 1}, {0, 0, 3}})};
  CHECK(is_flat(w.wedge, sl2, merge_connection(w, flat_left, Connection{Mat::from_rows({{1, 0, 0}})})));
}

TEST_CASE("trichotomy") {
  auto sol = builtin("sol2").lie;
  auto sl2 = builtin("sl2").lie;
  auto lr = tensor_product(twisted_exterior_algebra(), exterior_algebra({"e"}));
  Connection full{Mat::from_rows({{1, 0}, {0, 1}})};
  Connection zero_r{Mat(1, 2)};
  CHECK(trichotomy_classify(lr, sol, merge_connection(lr, full, zero_r)) == Trichotomy::LeftOnly);
  auto rl = tensor_product(exterior_algebra({"e"}), twisted_exterior_algebra());
  CHECK(trichotomy_classify(rl, sol, merge_connection(rl, Connection{Mat(1, 2)}, full)) == Trichotomy::RightOnly);
  auto circles = tensor_product(exterior_algebra({"e"}), exterior_algebra({"e"}));
  Connection h{Mat::from_rows({{0, 0, 1}})};
  Connection h2{Mat::from_rows({{0, 0, 2}})};
  CHECK(trichotomy_classify(circles, sl2, merge_connection(circles, h, h2)) == Trichotomy::RankOne);
  CHECK(trichotomy_classify(circles, sl2, Connection::zero(circles.product, sl2)) == Trichotomy::RankOne);
  CHECK(to_string(Trichotomy::LeftOnly) == "left-only");

  CHECK(code_of([&] { trichotomy_classify(circles, builtin("gl2").lie, Connection::zero(circles.product, builtin("gl2").lie)); }) ==
        ErrorCode::InvalidArgument);
  Connection e{Mat::from_rows({{1, 0, 0}})}, f{Mat::from_rows({{0, 1, 0}})};
  CHECK(code_of([&] { trichotomy_classify(circles, sl2, merge_connection(circles, e, f)); }) == ErrorCode::NotFlat);
}

TEST_CASE("construction errors") {
  CDGA a = exterior_algebra({"x"}, 3), b = exterior_algebra({"y"}, 2);
  CHECK(tensor_product(a, b).product.q() == 2);
  CHECK(code_of([&] { tensor_product(a, b, 3); }) == ErrorCode::TruncationMismatch);
  CHECK(code_of([&] { wedge_sum(a, b, 3); }) == ErrorCode::TruncationMismatch);
  auto w = tensor_product(a, b);
  CHECK(code_of([&] { split_connection(w, Connection{Mat(3, 2)}); }) == ErrorCode::ShapeMismatch);
}
