#include "reslab/flatconn.hpp"

#include <sstream>

#include "reslab/errors.hpp"
#include "reslab/exactlin.hpp"

namespace reslab {

Connection Connection::rank_one(const Vec& eta, const Vec& x) {
  Mat m(eta.size(), x.size());
  for (std::size_t j = 0; j < eta.size(); ++j)
    for (std::size_t k = 0; k < x.size(); ++k) m(j, k) = eta[j] * x[k];
  return {m};
}

LieMapCandidate to_lie_map(const Connection& omega) { return {omega.coeffs.transpose()}; }
Connection to_connection(const LieMapCandidate& phi) { return {phi.values.transpose()}; }

void require_shape(const CDGA& a, const LieAlgebra& g, const Connection& omega) {
  if (omega.coeffs.rows() != a.dim(1) || omega.coeffs.cols() != g.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "connection is not a dim A^1 x dim g array");
  }
}

Mat curvature(const CDGA& a, const LieAlgebra& g, const Connection& omega) {
  require_shape(a, g, omega);
  const std::size_t n1 = a.dim(1);
  const std::size_t n2 = a.dim(2);
  Mat out = a.diff(1) * omega.coeffs;
  const Mat& mult = a.product_table(1, 1);
  std::vector<Vec> values;
  for (std::size_t j = 0; j < n1; ++j) values.push_back(omega.coeffs.row(j));
  for (std::size_t j = 0; j < n1; ++j)
    for (std::size_t k = j + 1; k < n1; ++k) {
      bool any = false;
      for (std::size_t b = 0; b < n2 && !any; ++b) any = !mult(b, j * n1 + k).is_zero();
      if (!any) continue;
      Vec br = g.bracket(values[j], values[k]);
      if (is_zero(br)) continue;
      for (std::size_t b = 0; b < n2; ++b) {
        const Rat& c = mult(b, j * n1 + k);
        if (c.is_zero()) continue;
        for (std::size_t m = 0; m < g.dim(); ++m)
          if (!br[m].is_zero()) out(b, m) += c * br[m];
      }
    }
  return out;
}

bool is_flat(const CDGA& a, const LieAlgebra& g, const Connection& omega) {
  return curvature(a, g, omega).is_zero();
}

bool is_essentially_rank_one(const CDGA& a, const Connection& omega) {
  if (omega.coeffs.rows() != a.dim(1)) throw Error(ErrorCode::ShapeMismatch, "connection does not match A^1");
  return rank(omega.coeffs) <= 1 && (a.diff(1) * omega.coeffs).is_zero();
}

HolonomyPresentation holonomy_presentation(const CDGA& a) {
  if (a.q() < 1) throw Error(ErrorCode::DegreeOutOfRange, "holonomy needs data through degree 2 (q >= 1)");
  HolonomyPresentation p;
  const std::size_t n1 = a.dim(1);
  const std::size_t n2 = a.dim(2);
  p.gens = n1;
  p.labels = a.labels()[1];
  p.rel_linear = a.diff(1);
  const Mat& mult = a.product_table(1, 1);
  for (std::size_t b = 0; b < n2; ++b) {
    Mat q(n1, n1);
    for (std::size_t j = 0; j < n1; ++j)
      for (std::size_t k = j + 1; k < n1; ++k) {
        q(j, k) = mult(b, j * n1 + k);
        q(k, j) = -q(j, k);
      }
    p.rel_quadratic.push_back(std::move(q));
  }
  return p;
}

std::vector<Vec> evaluate_relations(const HolonomyPresentation& p, const LieAlgebra& g, const LieMapCandidate& phi) {
  if (phi.values.rows() != g.dim() || phi.values.cols() != p.gens) {
    throw Error(ErrorCode::ShapeMismatch, "Lie map candidate is not dim g x gens");
  }
  std::vector<Vec> images;
  for (std::size_t j = 0; j < p.gens; ++j) images.push_back(phi.values.col(j));
  std::vector<Vec> out;
  for (std::size_t b = 0; b < p.relation_count(); ++b) {
    Vec r(g.dim());
    for (std::size_t j = 0; j < p.gens; ++j) axpy(r, p.rel_linear(b, j), images[j]);
    const Mat& q = p.rel_quadratic[b];
    for (std::size_t j = 0; j < p.gens; ++j)
      for (std::size_t k = j + 1; k < p.gens; ++k)
        if (!q(j, k).is_zero()) axpy(r, q(j, k), g.bracket(images[j], images[k]));
    out.push_back(std::move(r));
  }
  return out;
}

bool kills_relations(const HolonomyPresentation& p, const LieAlgebra& g, const LieMapCandidate& phi) {
  for (const auto& r : evaluate_relations(p, g, phi))
    if (!is_zero(r)) return false;
  return true;
}

bool has_rank_at_most_one_image(const LieMapCandidate& phi) { return rank(phi.values) <= 1; }

namespace {

// Appends "c*term" with sign handling; first term gets no leading "+".
void append_term(std::ostringstream& os, bool& first, const Rat& c, const std::string& term) {
  if (c.is_zero()) return;
  Rat mag = c.sign() < 0 ? -c : c;
  if (first) {
    if (c.sign() < 0) os << "-";
  } else {
    os << (c.sign() < 0 ? " - " : " + ");
  }
  if (mag != Rat(1)) os << mag << "*";
  os << term;
  first = false;
}

}  // namespace

std::string format_presentation(const HolonomyPresentation& p) {
  std::ostringstream os;
  os << "gen:";
  for (std::size_t j = 0; j < p.gens; ++j) os << (j ? ", " : " ") << p.labels[j];
  os << "\n";
  for (std::size_t b = 0; b < p.relation_count(); ++b) {
    os << "rel:";
    std::ostringstream lhs, rhs;
    bool lfirst = true, rfirst = true;
    const Mat& q = p.rel_quadratic[b];
    for (std::size_t j = 0; j < p.gens; ++j)
      for (std::size_t k = j + 1; k < p.gens; ++k)
        append_term(lhs, lfirst, q(j, k), "[" + p.labels[j] + "," + p.labels[k] + "]");
    for (std::size_t j = 0; j < p.gens; ++j) append_term(rhs, rfirst, -p.rel_linear(b, j), p.labels[j]);
    os << " " << (lfirst ? "0" : lhs.str()) << " = " << (rfirst ? "0" : rhs.str()) << "\n";
  }
  return os.str();
}

std::optional<TwoGeneratorNormalForm> normalize_two_generator(const HolonomyPresentation& p) {
  if (p.gens != 2 || p.relation_count() != 1) return std::nullopt;
  const Rat q = p.rel_quadratic[0](0, 1);
  if (q.is_zero()) return std::nullopt;
  // q [x1, x2] + l1 x1 + l2 x2 = 0, so [x1, x2] = alpha x1 + beta x2.
  const Rat alpha = -p.rel_linear(0, 0) / q;
  const Rat beta = -p.rel_linear(0, 1) / q;
  if (alpha.is_zero() && beta.is_zero()) return std::nullopt;
  // b = alpha x1 + beta x2 spans the derived algebra; [x1, b] = beta b and
  // [x2, b] = -alpha b, so rescale whichever generator acts nontrivially.
  Vec a_vec = beta.is_zero() ? Vec{Rat(0), Rat(-1) / alpha} : Vec{Rat(1) / beta, Rat(0)};
  Vec b_vec{alpha, beta};
  TwoGeneratorNormalForm out;
  out.change_of_basis = Mat::from_columns({a_vec, b_vec}, 2);
  out.algebra = LieAlgebra("h(A)", 2, {"a", "b"});
  // [a, b] in the new basis; equals b by construction, recomputed to keep the
  // table honest.
  const Rat ab_x1 = (a_vec[0] * b_vec[1] - a_vec[1] * b_vec[0]) * alpha;
  const Rat ab_x2 = (a_vec[0] * b_vec[1] - a_vec[1] * b_vec[0]) * beta;
  Vec coords = *solve(out.change_of_basis, Vec{ab_x1, ab_x2});
  out.algebra.set_bracket(0, 1, coords);
  out.algebra.set_bracket(1, 0, scale(coords, Rat(-1)));
  out.bracket_sign = alpha.is_zero() ? beta : Rat(0);
  return out;
}

}  // namespace reslab
