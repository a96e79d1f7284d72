#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "reslab/mat.hpp"

namespace reslab {

/// Finite-type connected commutative differential graded algebra given by a
/// basis in each degree and structure constants.
///
/// Data is stored for degrees 0..q+1 so that H^q is computable:
///  - the product of basis(i) x basis(j) for every i + j <= q + 1, stored as a
///    dims[i+j] x (dims[i] * dims[j]) matrix whose column a * dims[j] + b is
///    the product of the a-th element of degree i with the b-th of degree j;
///  - differentials d^i : A^i -> A^{i+1} for i <= q, as dims[i+1] x dims[i].
///
/// Nothing is implied: the unit action and graded commutativity must be
/// present in the table, and validate() checks them.
class CDGA {
 public:
  CDGA() = default;
  /// Zero multiplication and differential; fill with set_product / set_diff.
  CDGA(int q, std::vector<std::size_t> dims, std::vector<std::vector<std::string>> labels = {});

  int q() const { return q_; }
  int top_degree() const { return q_ + 1; }
  /// dim A^i for i <= q + 1; 0 beyond.
  std::size_t dim(int i) const;
  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<std::vector<std::string>>& labels() const { return labels_; }
  const std::string& label(int degree, std::size_t idx) const { return labels_[degree][idx]; }

  const Mat& diff(int i) const;
  void set_diff(int i, Mat d);
  bool has_zero_differential() const;

  /// Table for degrees (i, j); requires i + j <= q + 1.
  const Mat& product_table(int i, int j) const;
  Vec product(int i, std::size_t a, int j, std::size_t b) const;
  void set_product(int i, std::size_t a, int j, std::size_t b, const Vec& value);
  /// Matrix of b -> x * b on A^j, for x in A^i; dims[i+j] x dims[j].
  Mat left_multiplication(int i, const Vec& x, int j) const;

  friend bool operator==(const CDGA&, const CDGA&) = default;

 private:
  std::size_t table_index(int i, int j) const;

  int q_ = 0;
  std::vector<std::size_t> dims_;
  std::vector<std::vector<std::string>> labels_;
  std::vector<Mat> mult_;  // indexed by table_index(i, j)
  std::vector<Mat> diff_;
};

struct Violation {
  std::string axiom;
  std::vector<int> degrees;
  std::vector<std::size_t> indices;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks connectedness/unit, graded commutativity, associativity, Leibniz
/// and d o d = 0 on every stored basis pair or triple.
ValidationReport validate(const CDGA& a);

/// A sequence of linear maps deltas[i]: dims[i] -> dims[i+1].
class CochainComplex {
 public:
  CochainComplex() = default;
  CochainComplex(std::vector<std::size_t> dims, std::vector<Mat> deltas);

  const std::vector<std::size_t>& dims() const { return dims_; }
  const std::vector<Mat>& deltas() const { return deltas_; }
  const Mat& delta(std::size_t i) const { return deltas_.at(i); }
  std::size_t length() const { return dims_.size(); }

  /// deltas[i+1] * deltas[i] == 0 for every stored i.
  bool composites_vanish() const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<Mat> deltas_;
};

/// dim ker deltas[i] - rank deltas[i-1]; a missing outgoing map counts as zero.
/// Throws BrokenComplex when deltas[i] * deltas[i-1] != 0.
std::size_t complex_cohomology_dim(const CochainComplex& c, std::size_t i);

/// (A, d) in degrees 0..q+1.
CochainComplex untwisted_complex(const CDGA& a);

/// b_i(A); throws DegreeOutOfRange unless 0 <= i <= q.
std::size_t cohomology_dim(const CDGA& a, int i);
std::vector<std::size_t> betti_numbers(const CDGA& a);

/// Basis of ker d^1. For connected A this is H^1(A).
std::vector<Vec> closed_one_forms(const CDGA& a);

}  // namespace reslab
