#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "reslab/errors.hpp"
#include "reslab/exactlin.hpp"
#include "reslab/sampling.hpp"

using namespace reslab;

namespace {

// Independent oracles: plain Gaussian elimination for rank, Leibniz expansion
// for determinants.
std::size_t naive_rank(Mat m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(p, k));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      Rat f = m(i, c) / m(r, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) -= f * m(r, k);
    }
    ++r;
  }
  return r;
}

Rat leibniz_det(const Mat& m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Rat total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    Rat term(inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

Mat random_matrix(Rng& rng, std::size_t r, std::size_t c, int height) {
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rng.rational(height);
  return m;
}

// Low-rank matrices exercise the interesting cases.
Mat random_low_rank(Rng& rng, std::size_t r, std::size_t c, std::size_t k) {
  return random_matrix(rng, r, k, 3) * random_matrix(rng, k, c, 3);
}

}  // namespace

TEST_CASE("rank examples") {
  CHECK(rank(Mat(3, 3)) == 0);
  CHECK(rank(Mat::identity(3)) == 3);
  CHECK(rank(Mat::from_rows({{1, 2}, {2, 4}})) == 1);
  CHECK(rank(Mat(0, 4)) == 0);
  CHECK(rank(Mat(4, 0)) == 0);
}

TEST_CASE("kernel examples") {
  auto k = kernel_basis(Mat::from_rows({{1, -1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == Vec{Rat(1), Rat(1)});

  k = kernel_basis(Mat::from_rows({{1, 2}, {2, 4}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] == Rat(-2) * k[0][1]);
  CHECK_FALSE(is_zero(k[0]));

  CHECK(kernel_basis(Mat::identity(3)).empty());
  CHECK(kernel_basis(Mat(2, 3)).size() == 3);
}

TEST_CASE("determinant examples") {
  CHECK(det(Mat::identity(3)) == Rat(1));
  CHECK(det(Mat::from_rows({{1, 0}, {0, 0}})) == Rat(0));
  CHECK(det(Mat::from_rows({{2, 1}, {1, 1}})) == Rat(1));
  CHECK(det(Mat::from_rows({{0, 1}, {1, 0}})) == Rat(-1));
  CHECK(det(Mat::from_rows({{Rat(1, 2), 0}, {0, Rat(2, 3)}})) == Rat(1, 3));
  CHECK(det(Mat(0, 0)) == Rat(1));
  try {
    det(Mat(2, 3));
    FAIL("expected NonSquare");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonSquare);
  }
}

TEST_CASE("quotient image dimension") {
  // Z = span(e1, e2) in Q^3, B = span(e1 + e2).
  Mat z = Mat::from_columns({Vec{1, 0, 0}, Vec{0, 1, 0}}, 3);
  Mat b = Mat::from_columns({Vec{1, 1, 0}}, 3);
  CHECK(image_dim_in_quotient(b, z) == 1);
  CHECK(image_dim_in_quotient(Mat(3, 0), z) == 2);
  CHECK(image_dim_in_quotient(z, z) == 0);
  Mat outside = Mat::from_columns({Vec{0, 0, 1}}, 3);
  try {
    image_dim_in_quotient(outside, z);
    FAIL("expected NotContained");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotContained);
  }
}

TEST_CASE("solve") {
  Mat a = Mat::from_rows({{1, 2}, {2, 4}});
  auto x = solve(a, Vec{3, 6});
  REQUIRE(x);
  CHECK(a * *x == Vec{3, 6});
  CHECK_FALSE(solve(a, Vec{3, 7}));
}

TEST_CASE("rank agrees with an independent elimination") {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    std::size_t r = 1 + rng.index(5), c = 1 + rng.index(5), k = rng.index(std::min(r, c) + 1);
    Mat m = t % 2 ? random_matrix(rng, r, c, 4) : random_low_rank(rng, r, c, k);
    CAPTURE(m.str());
    std::size_t rk = rank(m);
    CHECK(rk == naive_rank(m));
    CHECK(rk == rank(m.transpose()));
    auto ker = kernel_basis(m);
    CHECK(rk + ker.size() == c);
    for (const auto& v : ker) CHECK(is_zero(m * v));
    Mat scaled = m;
    Rat s = rng.nonzero_rational(5);
    for (std::size_t j = 0; j < c; ++j) scaled(0, j) *= s;
    CHECK(rank(scaled) == rk);
  }
}

TEST_CASE("determinant agrees with the Leibniz expansion") {
  Rng rng(12);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng.index(4);
    Mat m = t % 3 ? random_matrix(rng, n, n, 4) : random_low_rank(rng, n, n, rng.index(n + 1));
    CAPTURE(m.str());
    Rat d = det(m);
    CHECK(d == leibniz_det(m));
    CHECK((!d.is_zero()) == (rank(m) == n));
  }
}

TEST_CASE("64-bit elimination agrees with the arbitrary-precision path") {
  Rng rng(13);
  std::size_t fallbacks = 0;
  for (int t = 0; t < 200; ++t) {
    std::size_t r = 1 + rng.index(5), c = 1 + rng.index(5);
    Mat m = random_matrix(rng, r, c, 5);
    if (t % 4 == 0) m(0, 0) = Rat(mpq_class(mpz_class("9223372036854775000")));
    auto ints = detail::to_integer_rows(m);
    auto fast = detail::bareiss_int64(ints);
    auto slow = detail::bareiss_mpz(ints);
    if (!fast) {
      ++fallbacks;
      continue;
    }
    CHECK(fast->rank == slow.rank);
    CHECK(fast->sign == slow.sign);
    CHECK(fast->last_pivot == slow.last_pivot);
  }
  CHECK(fallbacks > 0);
}
