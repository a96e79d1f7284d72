#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "reslab/mat.hpp"

namespace reslab {

/// Finite-dimensional Lie algebra by structure constants. The bracket table is
/// dim x dim^2; column i * dim + j holds [x_i, x_j].
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(std::string name, std::size_t dim, std::vector<std::string> labels = {});

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }

  void set_bracket(std::size_t i, std::size_t j, const Vec& value);
  Vec bracket(std::size_t i, std::size_t j) const { return table_.col(i * dim_ + j); }
  Vec bracket(const Vec& x, const Vec& y) const;
  /// Matrix of ad_x.
  Mat ad(const Vec& x) const;
  const Mat& table() const { return table_; }

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

 private:
  std::string name_;
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  Mat table_;
};

/// theta: g -> gl(V), one v_dim x v_dim matrix per basis element of g.
struct Representation {
  LieAlgebra lie;
  std::size_t v_dim = 0;
  std::vector<Mat> mats;
  std::string name;

  /// theta(x) for a coefficient vector x.
  Mat apply(const Vec& x) const;

  friend bool operator==(const Representation&, const Representation&) = default;
};

struct LieViolation {
  std::string axiom;
  std::vector<std::size_t> indices;
  std::string detail;
};

struct LieReport {
  std::vector<LieViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Antisymmetry and Jacobi on all basis pairs and triples.
LieReport validate_lie(const LieAlgebra& g);
/// The homomorphism identity theta([x,y]) = [theta x, theta y] on basis pairs,
/// plus shape and v_dim > 0 checks.
LieReport validate_rep(const Representation& r);

bool commutes(const Vec& x, const Vec& y, const LieAlgebra& g);

/// Catalog: "abelian(n)" (or "abelianN"), "sl2", "sol2", "gl2". Each comes with
/// its canonical representation:
///   sl2  basis (e, f, h), standard 2-dim representation;
///   sol2 basis (a, b) with [a,b] = b, a -> diag(1,0), b -> E_12;
///   gl2  basis (E11, E12, E21, E22), theta = id;
///   abelian(n) on V = C^n with x_k -> E_kk.
/// Throws UnknownName.
Representation builtin(const std::string& name);

/// ad: g -> gl(g).
Representation adjoint(const LieAlgebra& g);

/// A maximal commuting set of basis vectors, chosen greedily in basis order.
std::vector<Vec> commuting_basis(const LieAlgebra& g);

}  // namespace reslab
