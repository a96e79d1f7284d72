#include "reslab/exactlin.hpp"

#include <utility>

#include "reslab/errors.hpp"

namespace reslab {

namespace detail {

IntegerRows to_integer_rows(const Mat& m) {
  IntegerRows out;
  out.rows = m.rows();
  out.cols = m.cols();
  out.a.resize(m.rows() * m.cols());
  out.row_scale.resize(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& den = m(i, j).value().get_den();
      if (den != 1) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
    }
    out.row_scale[i] = l;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const auto& q = m(i, j).value();
      if (sgn(q) == 0) continue;
      mpz_class& dst = out.a[i * m.cols() + j];
      mpz_divexact(dst.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
      dst *= q.get_num();
    }
  }
  return out;
}

std::optional<BareissResult> bareiss_int64(const IntegerRows& m) {
  const std::size_t rows = m.rows;
  const std::size_t cols = m.cols;
  std::vector<std::int64_t> a(rows * cols);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!m.a[k].fits_slong_p()) return std::nullopt;
    a[k] = m.a[k].get_si();
  }
  constexpr __int128 kMax = INT64_MAX;
  constexpr __int128 kMin = INT64_MIN;
  BareissResult res;
  std::int64_t prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p * cols + c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[p * cols + j], a[r * cols + j]);
      res.sign = -res.sign;
    }
    const std::int64_t piv = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const std::int64_t lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        __int128 t = static_cast<__int128>(piv) * a[i * cols + j] -
                     static_cast<__int128>(lead) * a[r * cols + j];
        t /= prev;
        if (t > kMax || t < kMin) return std::nullopt;
        a[i * cols + j] = static_cast<std::int64_t>(t);
      }
      a[i * cols + c] = 0;
    }
    prev = piv;
    ++r;
  }
  res.rank = r;
  res.last_pivot = static_cast<long>(prev);
  return res;
}

BareissResult bareiss_mpz(const IntegerRows& m) {
  const std::size_t rows = m.rows;
  const std::size_t cols = m.cols;
  std::vector<mpz_class> a = m.a;
  BareissResult res;
  mpz_class prev = 1;
  mpz_class t;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && sgn(a[p * cols + c]) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) mpz_swap(a[p * cols + j].get_mpz_t(), a[r * cols + j].get_mpz_t());
      res.sign = -res.sign;
    }
    const mpz_class& piv = a[r * cols + c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      const mpz_class& lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_mul(t.get_mpz_t(), piv.get_mpz_t(), a[i * cols + j].get_mpz_t());
        mpz_submul(t.get_mpz_t(), lead.get_mpz_t(), a[r * cols + j].get_mpz_t());
        mpz_divexact(a[i * cols + j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    for (std::size_t i = r + 1; i < rows; ++i) a[i * cols + c] = 0;
    prev = piv;
    ++r;
  }
  res.rank = r;
  res.last_pivot = prev;
  return res;
}

namespace {

BareissResult bareiss(const IntegerRows& m) {
  if (auto fast = bareiss_int64(m)) return *std::move(fast);
  return bareiss_mpz(m);
}

}  // namespace

}  // namespace detail

std::size_t rank(const Mat& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return detail::bareiss(detail::to_integer_rows(m)).rank;
}

Rat det(const Mat& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquare, "determinant of a non-square matrix");
  if (m.rows() == 0) return Rat(1);
  auto ints = detail::to_integer_rows(m);
  auto res = detail::bareiss(ints);
  if (res.rank < m.rows()) return Rat(0);
  mpz_class den = 1;
  for (const auto& s : ints.row_scale) den *= s;
  return Rat(mpz_class(res.sign * res.last_pivot), den);
}

Rref rref(const Mat& m) {
  Rref out{m, {}};
  Mat& a = out.reduced;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    const Rat inv = Rat(1) / a(r, c);
    for (std::size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      const Rat f = a(i, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  return out;
}

std::vector<Vec> kernel_basis(const Mat& m) {
  const std::size_t cols = m.cols();
  Rref red = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : red.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols);
    v[f] = 1;
    for (std::size_t k = 0; k < red.pivot_cols.size(); ++k) v[red.pivot_cols[k]] = -red.reduced(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t image_dim_in_quotient(const Mat& sub, const Mat& amb_kernel) {
  if (sub.rows() != amb_kernel.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "subspace and ambient space differ in dimension");
  }
  const std::size_t dim_z = rank(amb_kernel);
  const std::size_t dim_b = rank(sub);
  const Mat parts[] = {amb_kernel, sub};
  if (rank(Mat::hstack(parts, sub.rows())) != dim_z) {
    throw Error(ErrorCode::NotContained, "boundary space is not contained in the cycle space");
  }
  return dim_z - dim_b;
}

std::optional<Vec> solve(const Mat& a, const Vec& b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::ShapeMismatch, "right-hand side length mismatch");
  Mat aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, a.cols()) = b[i];
  Rref red = rref(aug);
  if (!red.pivot_cols.empty() && red.pivot_cols.back() == a.cols()) return std::nullopt;
  Vec x(a.cols());
  for (std::size_t k = 0; k < red.pivot_cols.size(); ++k) x[red.pivot_cols[k]] = red.reduced(k, a.cols());
  return x;
}

}  // namespace reslab
