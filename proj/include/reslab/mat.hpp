#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "reslab/rat.hpp"

namespace reslab {

using Vec = std::vector<Rat>;

/// Dense row-major matrix of rationals. Matrices act on column vectors.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t n);
  static Mat from_rows(std::initializer_list<std::initializer_list<Rat>> rows);
  static Mat from_rows(const std::vector<Vec>& rows, std::size_t cols);
  static Mat from_columns(const std::vector<Vec>& cols, std::size_t rows);
  static Mat diagonal(std::span<const Rat> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  Vec col(std::size_t j) const;
  std::span<const Rat> data() const { return a_; }

  Mat transpose() const;
  bool is_zero() const;

  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& b);
  /// a += s * b placed at (r0, c0).
  void add_block(std::size_t r0, std::size_t c0, const Mat& b, const Rat& s = Rat(1));

  static Mat hstack(std::span<const Mat> parts, std::size_t rows);
  static Mat vstack(std::span<const Mat> parts, std::size_t cols);

  Mat& operator+=(const Mat& o);
  Mat& operator-=(const Mat& o);
  Mat& operator*=(const Rat& s);

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, const Rat& s) { return a *= s; }
  friend Mat operator*(const Rat& s, Mat a) { return a *= s; }
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Vec operator*(const Mat& a, const Vec& v);
  friend bool operator==(const Mat& a, const Mat& b) = default;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> a_;
};

bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rat& s);
/// a += s * b
void axpy(Vec& a, const Rat& s, const Vec& b);

}  // namespace reslab
