#include <doctest.h>

#include "reslab/errors.hpp"
#include "reslab/mat.hpp"
#include "reslab/rat.hpp"

using namespace reslab;

TEST_CASE("rationals are kept in lowest terms") {
  CHECK(Rat(6, 4).str() == "3/2");
  CHECK(Rat(-6, -4).str() == "3/2");
  CHECK(Rat(3, -6).str() == "-1/2");
  CHECK(Rat(4, 2).str() == "2");
  CHECK(Rat(0, 5).str() == "0");
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(2, 3) * Rat(3, 2) == Rat(1));
  CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
  CHECK(Rat(-1, 2) < Rat(1, 3));
  CHECK_THROWS_AS(Rat(1) / Rat(0), Error);
}

TEST_CASE("rational parsing") {
  CHECK(Rat::parse("7") == Rat(7));
  CHECK(Rat::parse("-7") == Rat(-7));
  CHECK(Rat::parse("10/4") == Rat(5, 2));
  CHECK(Rat::parse("-3/9") == Rat(-1, 3));
  CHECK(Rat::parse("123456789012345678901234567890").str() == "123456789012345678901234567890");
  for (const char* bad : {"", "1/0", "abc", "1/2/3", "1.5", " 1", "1/", "/2", "--1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rat::parse(bad), Error);
  }
}

TEST_CASE("matrix arithmetic") {
  Mat a = Mat::from_rows({{1, 2}, {3, 4}});
  Mat b = Mat::from_rows({{0, 1}, {1, 0}});
  CHECK(a * b == Mat::from_rows({{2, 1}, {4, 3}}));
  CHECK(a + b == Mat::from_rows({{1, 3}, {4, 4}}));
  CHECK(a - a == Mat(2, 2));
  CHECK((a - a).is_zero());
  CHECK(a.transpose() == Mat::from_rows({{1, 3}, {2, 4}}));
  CHECK(a * Vec{Rat(1), Rat(-1)} == Vec{Rat(-1), Rat(-1)});
  CHECK(Mat::identity(2) * a == a);
  CHECK(Rat(1, 2) * a == Mat::from_rows({{Rat(1, 2), 1}, {Rat(3, 2), 2}}));

  Mat big(3, 4);
  big.set_block(1, 2, a);
  CHECK(big.block(1, 2, 2, 2) == a);
  big.add_block(1, 2, a, Rat(-1));
  CHECK(big.is_zero());

  std::vector<Mat> parts{a, b};
  Mat h = Mat::hstack(parts, 2);
  CHECK(h.cols() == 4);
  CHECK(h.block(0, 2, 2, 2) == b);
  Mat v = Mat::vstack(parts, 2);
  CHECK(v.rows() == 4);
  CHECK(v.block(2, 0, 2, 2) == b);
  CHECK(Mat::from_columns({Vec{Rat(1), Rat(3)}, Vec{Rat(2), Rat(4)}}, 2) == a);
  CHECK(a.row(1) == Vec{Rat(3), Rat(4)});
  CHECK(a.col(1) == Vec{Rat(2), Rat(4)});
}

TEST_CASE("vector helpers") {
  Vec x{Rat(1), Rat(2)};
  Vec y{Rat(3), Rat(-1)};
  CHECK(add(x, y) == Vec{Rat(4), Rat(1)});
  CHECK(scale(x, Rat(-2)) == Vec{Rat(-2), Rat(-4)});
  axpy(x, Rat(2), y);
  CHECK(x == Vec{Rat(7), Rat(0)});
  CHECK(is_zero(Vec{Rat(0), Rat(0)}));
  CHECK_FALSE(is_zero(x));
}
