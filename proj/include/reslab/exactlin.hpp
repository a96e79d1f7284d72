#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "reslab/mat.hpp"

namespace reslab {

/// Rank over the rationals (fraction-free elimination, first-nonzero pivoting).
std::size_t rank(const Mat& m);

/// Basis of the right kernel; cols - rank vectors, empty when m is injective.
/// Each vector has a 1 in its free coordinate (reduced row echelon convention).
std::vector<Vec> kernel_basis(const Mat& m);

/// Throws NonSquare when rows != cols.
Rat det(const Mat& m);

/// dim Z - dim B where Z and B are the column spans of amb_kernel and sub.
/// Throws NotContained when B is not a subspace of Z.
std::size_t image_dim_in_quotient(const Mat& sub, const Mat& amb_kernel);

/// Some x with a x = b, or nullopt when the system is inconsistent.
std::optional<Vec> solve(const Mat& a, const Vec& b);

struct Rref {
  Mat reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Gauss-Jordan reduced row echelon form.
Rref rref(const Mat& m);

namespace detail {

/// Rows rescaled by the lcm of their denominators; row_scale[i] is that lcm.
struct IntegerRows {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<mpz_class> a;
  std::vector<mpz_class> row_scale;
};

IntegerRows to_integer_rows(const Mat& m);

struct BareissResult {
  std::size_t rank = 0;
  int sign = 1;
  mpz_class last_pivot{1};
};

/// Checked 64-bit kernel; nullopt when an entry or intermediate leaves int64.
std::optional<BareissResult> bareiss_int64(const IntegerRows& m);
/// Arbitrary-precision kernel.
BareissResult bareiss_mpz(const IntegerRows& m);

}  // namespace detail

}  // namespace reslab
