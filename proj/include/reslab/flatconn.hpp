#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reslab/cdga.hpp"
#include "reslab/liealg.hpp"

namespace reslab {

/// omega in A^1 (x) g. Entry (j, k) of coeffs is the coefficient of
/// (j-th basis element of A^1) (x) (k-th basis element of g).
struct Connection {
  Mat coeffs;

  static Connection zero(const CDGA& a, const LieAlgebra& g) { return {Mat(a.dim(1), g.dim())}; }
  /// eta (x) x
  static Connection rank_one(const Vec& eta, const Vec& x);

  friend bool operator==(const Connection&, const Connection&) = default;
};

/// phi in Hom(A_1, g): column i is phi(x_i).
struct LieMapCandidate {
  Mat values;

  friend bool operator==(const LieMapCandidate&, const LieMapCandidate&) = default;
};

/// Canonical identification A^1 (x) g = Hom(A_1, g).
LieMapCandidate to_lie_map(const Connection& omega);
Connection to_connection(const LieMapCandidate& phi);

/// Generators dual to the basis of A^1 and one relation per basis element b
/// of A^2:
///   sum_j linear(b, j) x_j + sum_{j<k} quadratic[b](j, k) [x_j, x_k] = 0,
/// where linear is d^1 itself (its transpose is the dual d_1) and
/// quadratic[b](j, k) is the b-coefficient of a_j a_k for j < k, extended
/// antisymmetrically.
struct HolonomyPresentation {
  std::size_t gens = 0;
  Mat rel_linear;
  std::vector<Mat> rel_quadratic;
  std::vector<std::string> labels;

  std::size_t relation_count() const { return rel_quadratic.size(); }

  friend bool operator==(const HolonomyPresentation&, const HolonomyPresentation&) = default;
};

void require_shape(const CDGA& a, const LieAlgebra& g, const Connection& omega);

/// d omega + [omega, omega]/2 expanded in coordinates, as a dim A^2 x dim g
/// coefficient array.
Mat curvature(const CDGA& a, const LieAlgebra& g, const Connection& omega);
bool is_flat(const CDGA& a, const LieAlgebra& g, const Connection& omega);
/// omega = eta (x) x with d eta = 0.
bool is_essentially_rank_one(const CDGA& a, const Connection& omega);

HolonomyPresentation holonomy_presentation(const CDGA& a);
/// Value of every relation under phi, as g-vectors.
std::vector<Vec> evaluate_relations(const HolonomyPresentation& p, const LieAlgebra& g, const LieMapCandidate& phi);
bool kills_relations(const HolonomyPresentation& p, const LieAlgebra& g, const LieMapCandidate& phi);
bool has_rank_at_most_one_image(const LieMapCandidate& phi);

/// Textual export:
///   gen: x, y
///   rel: [x,y] = y
/// The quadratic part sits on the left, the negated linear part on the right.
std::string format_presentation(const HolonomyPresentation& p);

/// For a presentation with two generators and a single relation whose bracket
/// part is nonzero, the 2-dimensional Lie algebra it defines, written in a
/// basis (a, b) with [a, b] = b. Returns nullopt for any other shape or when
/// the relation makes the algebra abelian.
struct TwoGeneratorNormalForm {
  LieAlgebra algebra;
  Mat change_of_basis;  // columns: a and b in terms of the generators
  Rat bracket_sign;     // [x_1, x_2] = bracket_sign * x_2 when the relation has that form
};
std::optional<TwoGeneratorNormalForm> normalize_two_generator(const HolonomyPresentation& p);

}  // namespace reslab
