#include "reslab/cdga.hpp"

#include <sstream>

#include "reslab/errors.hpp"
#include "reslab/exactlin.hpp"

namespace reslab {

CDGA::CDGA(int q, std::vector<std::size_t> dims, std::vector<std::vector<std::string>> labels)
    : q_(q), dims_(std::move(dims)), labels_(std::move(labels)) {
  if (q_ < 0) throw Error(ErrorCode::InvalidArgument, "truncation degree must be non-negative");
  if (dims_.size() != static_cast<std::size_t>(q_) + 2) {
    throw Error(ErrorCode::ShapeMismatch, "expected dims for degrees 0..q+1");
  }
  if (labels_.empty()) {
    labels_.resize(dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i)
      for (std::size_t k = 0; k < dims_[i]; ++k)
        labels_[i].push_back(i == 0 ? std::string("1") : "a" + std::to_string(i) + "_" + std::to_string(k + 1));
  }
  if (labels_.size() != dims_.size()) throw Error(ErrorCode::ShapeMismatch, "labels per degree mismatch");
  for (std::size_t i = 0; i < dims_.size(); ++i)
    if (labels_[i].size() != dims_[i]) throw Error(ErrorCode::ShapeMismatch, "label count mismatch in degree " + std::to_string(i));

  const int top = q_ + 1;
  mult_.resize(static_cast<std::size_t>((top + 1) * (top + 1)));
  for (int i = 0; i <= top; ++i)
    for (int j = 0; i + j <= top; ++j) mult_[table_index(i, j)] = Mat(dims_[i + j], dims_[i] * dims_[j]);
  for (int i = 0; i <= q_; ++i) diff_.emplace_back(dims_[i + 1], dims_[i]);
}

std::size_t CDGA::dim(int i) const {
  if (i < 0 || i > q_ + 1) return 0;
  return dims_[i];
}

std::size_t CDGA::table_index(int i, int j) const {
  const int top = q_ + 1;
  if (i < 0 || j < 0 || i + j > top) {
    throw Error(ErrorCode::DegreeOutOfRange, "product of degrees " + std::to_string(i) + " and " +
                                                 std::to_string(j) + " is beyond the stored range");
  }
  return static_cast<std::size_t>(i * (top + 1) + j);
}

const Mat& CDGA::diff(int i) const {
  if (i < 0 || i > q_) throw Error(ErrorCode::DegreeOutOfRange, "differential d^" + std::to_string(i) + " not stored");
  return diff_[i];
}

void CDGA::set_diff(int i, Mat d) {
  if (i < 0 || i > q_) throw Error(ErrorCode::DegreeOutOfRange, "differential d^" + std::to_string(i) + " not stored");
  if (d.rows() != dims_[i + 1] || d.cols() != dims_[i]) {
    throw Error(ErrorCode::ShapeMismatch, "differential d^" + std::to_string(i) + " has the wrong shape");
  }
  diff_[i] = std::move(d);
}

bool CDGA::has_zero_differential() const {
  for (const auto& d : diff_)
    if (!d.is_zero()) return false;
  return true;
}

const Mat& CDGA::product_table(int i, int j) const { return mult_[table_index(i, j)]; }

Vec CDGA::product(int i, std::size_t a, int j, std::size_t b) const {
  return product_table(i, j).col(a * dims_[j] + b);
}

void CDGA::set_product(int i, std::size_t a, int j, std::size_t b, const Vec& value) {
  Mat& t = mult_[table_index(i, j)];
  if (a >= dims_[i] || b >= dims_[j]) throw Error(ErrorCode::ShapeMismatch, "basis index out of range");
  if (value.size() != dims_[i + j]) throw Error(ErrorCode::ShapeMismatch, "product value has the wrong length");
  for (std::size_t r = 0; r < value.size(); ++r) t(r, a * dims_[j] + b) = value[r];
}

Mat CDGA::left_multiplication(int i, const Vec& x, int j) const {
  const Mat& t = product_table(i, j);
  if (x.size() != dims_[i]) throw Error(ErrorCode::ShapeMismatch, "element has the wrong length");
  Mat out(dims_[i + j], dims_[j]);
  for (std::size_t a = 0; a < dims_[i]; ++a) {
    if (x[a].is_zero()) continue;
    for (std::size_t b = 0; b < dims_[j]; ++b)
      for (std::size_t r = 0; r < out.rows(); ++r) {
        const Rat& c = t(r, a * dims_[j] + b);
        if (!c.is_zero()) out(r, b) += x[a] * c;
      }
  }
  return out;
}

namespace {

Vec unit_vector(std::size_t n, std::size_t k) {
  Vec v(n);
  v[k] = 1;
  return v;
}

std::string vec_str(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

// x * b for x a vector in degree i, b a vector in degree j.
Vec multiply(const CDGA& a, int i, const Vec& x, int j, const Vec& y) {
  return a.left_multiplication(i, x, j) * y;
}

}  // namespace

ValidationReport validate(const CDGA& a) {
  ValidationReport rep;
  auto fail = [&](std::string axiom, std::vector<int> deg, std::vector<std::size_t> idx, std::string detail) {
    rep.violations.push_back({std::move(axiom), std::move(deg), std::move(idx), std::move(detail)});
  };
  const int top = a.top_degree();

  if (a.dim(0) != 1) {
    fail("connectedness", {0}, {}, "dim A^0 = " + std::to_string(a.dim(0)) + ", expected 1");
    return rep;
  }

  for (int j = 0; j <= top; ++j)
    for (std::size_t b = 0; b < a.dim(j); ++b) {
      Vec e = unit_vector(a.dim(j), b);
      if (a.product(0, 0, j, b) != e) fail("unit", {0, j}, {0, b}, "1 * b != b");
      if (a.product(j, b, 0, 0) != e) fail("unit", {j, 0}, {b, 0}, "b * 1 != b");
    }

  for (int i = 1; i <= top; ++i)
    for (int j = i; i + j <= top; ++j)
      for (std::size_t x = 0; x < a.dim(i); ++x)
        for (std::size_t y = 0; y < a.dim(j); ++y) {
          Vec xy = a.product(i, x, j, y);
          Vec yx = a.product(j, y, i, x);
          if ((i * j) % 2 != 0) yx = scale(yx, Rat(-1));
          if (xy != yx) {
            fail("graded commutativity", {i, j}, {x, y}, vec_str(xy) + " vs " + vec_str(yx));
          }
        }

  for (int i = 1; i <= top; ++i)
    for (int j = 1; i + j <= top; ++j)
      for (int k = 1; i + j + k <= top; ++k)
        for (std::size_t x = 0; x < a.dim(i); ++x)
          for (std::size_t y = 0; y < a.dim(j); ++y)
            for (std::size_t z = 0; z < a.dim(k); ++z) {
              Vec left = multiply(a, i + j, a.product(i, x, j, y), k, unit_vector(a.dim(k), z));
              Vec right = multiply(a, i, unit_vector(a.dim(i), x), j + k, a.product(j, y, k, z));
              if (left != right) {
                fail("associativity", {i, j, k}, {x, y, z}, vec_str(left) + " vs " + vec_str(right));
              }
            }

  // d(xy) = dx*y + (-1)^i x*dy, needs i + j <= q.
  for (int i = 0; i <= a.q(); ++i)
    for (int j = 0; i + j <= a.q(); ++j)
      for (std::size_t x = 0; x < a.dim(i); ++x)
        for (std::size_t y = 0; y < a.dim(j); ++y) {
          Vec lhs = a.diff(i + j) * a.product(i, x, j, y);
          Vec ex = unit_vector(a.dim(i), x);
          Vec ey = unit_vector(a.dim(j), y);
          Vec rhs = multiply(a, i + 1, a.diff(i) * ex, j, ey);
          Vec second = multiply(a, i, ex, j + 1, a.diff(j) * ey);
          axpy(rhs, Rat(i % 2 == 0 ? 1 : -1), second);
          if (lhs != rhs) fail("Leibniz", {i, j}, {x, y}, vec_str(lhs) + " vs " + vec_str(rhs));
        }

  for (int i = 0; i + 1 <= a.q(); ++i) {
    Mat dd = a.diff(i + 1) * a.diff(i);
    if (!dd.is_zero()) fail("d^2 = 0", {i}, {}, "d^" + std::to_string(i + 1) + " d^" + std::to_string(i) + " = " + dd.str());
  }
  return rep;
}

CochainComplex::CochainComplex(std::vector<std::size_t> dims, std::vector<Mat> deltas)
    : dims_(std::move(dims)), deltas_(std::move(deltas)) {
  if (deltas_.size() + 1 > dims_.size() && !(dims_.empty() && deltas_.empty())) {
    throw Error(ErrorCode::ShapeMismatch, "more maps than spaces in cochain complex");
  }
  for (std::size_t i = 0; i < deltas_.size(); ++i) {
    if (deltas_[i].rows() != dims_[i + 1] || deltas_[i].cols() != dims_[i]) {
      throw Error(ErrorCode::ShapeMismatch, "delta " + std::to_string(i) + " has the wrong shape");
    }
  }
}

bool CochainComplex::composites_vanish() const {
  for (std::size_t i = 0; i + 1 < deltas_.size(); ++i)
    if (!(deltas_[i + 1] * deltas_[i]).is_zero()) return false;
  return true;
}

std::size_t complex_cohomology_dim(const CochainComplex& c, std::size_t i) {
  if (i >= c.length()) throw Error(ErrorCode::DegreeOutOfRange, "degree " + std::to_string(i) + " not stored");
  const auto& deltas = c.deltas();
  if (i >= 1 && i < deltas.size() && !(deltas[i] * deltas[i - 1]).is_zero()) {
    throw Error(ErrorCode::BrokenComplex, "delta[" + std::to_string(i) + "] * delta[" + std::to_string(i - 1) + "] != 0");
  }
  std::size_t kernel = c.dims()[i] - (i < deltas.size() ? rank(deltas[i]) : 0);
  std::size_t image = i >= 1 ? rank(deltas[i - 1]) : 0;
  return kernel - image;
}

CochainComplex untwisted_complex(const CDGA& a) {
  std::vector<Mat> deltas;
  for (int i = 0; i <= a.q(); ++i) deltas.push_back(a.diff(i));
  return CochainComplex(a.dims(), std::move(deltas));
}

std::size_t cohomology_dim(const CDGA& a, int i) {
  if (i < 0 || i > a.q()) {
    throw Error(ErrorCode::DegreeOutOfRange, "H^" + std::to_string(i) + " requested beyond q = " + std::to_string(a.q()));
  }
  std::size_t kernel = a.dim(i) - rank(a.diff(i));
  std::size_t image = i >= 1 ? rank(a.diff(i - 1)) : 0;
  return kernel - image;
}

std::vector<std::size_t> betti_numbers(const CDGA& a) {
  std::vector<std::size_t> b;
  for (int i = 0; i <= a.q(); ++i) b.push_back(cohomology_dim(a, i));
  return b;
}

std::vector<Vec> closed_one_forms(const CDGA& a) {
  if (a.q() < 1) throw Error(ErrorCode::DegreeOutOfRange, "d^1 is not stored when q = 0");
  return kernel_basis(a.diff(1));
}

}  // namespace reslab
