#include "reslab/resonance.hpp"

#include "reslab/errors.hpp"
#include "reslab/exactlin.hpp"

namespace reslab {

namespace {

/// L (x) X accumulated into out.
void add_kronecker(Mat& out, const Mat& left, const Mat& x) {
  const std::size_t v = x.rows();
  for (std::size_t r = 0; r < left.rows(); ++r)
    for (std::size_t c = 0; c < left.cols(); ++c) {
      const Rat& l = left(r, c);
      if (l.is_zero()) continue;
      out.add_block(r * v, c * v, x, l);
    }
}

std::vector<Mat> action_matrices(const Representation& theta, const Connection& omega) {
  std::vector<Mat> xs;
  for (std::size_t j = 0; j < omega.coeffs.rows(); ++j) xs.push_back(theta.apply(omega.coeffs.row(j)));
  return xs;
}

Mat left_mult_by_basis(const CDGA& a, std::size_t j, int i) {
  Vec e(a.dim(1));
  e[j] = 1;
  return a.left_multiplication(1, e, i);
}

void require_flat(const CDGA& a, const Representation& theta, const Connection& omega) {
  if (!is_flat(a, theta.lie, omega)) {
    throw Error(ErrorCode::NotFlat, "connection does not satisfy the Maurer-Cartan equation; curvature " +
                                        curvature(a, theta.lie, omega).str());
  }
}

Mat stacked_actions(const Representation& theta, const LieMapCandidate& phi) {
  std::vector<Mat> parts;
  for (std::size_t j = 0; j < phi.values.cols(); ++j) parts.push_back(theta.apply(phi.values.col(j)));
  return Mat::vstack(parts, theta.v_dim);
}

}  // namespace

std::vector<Mat> aomoto_differentials(const CDGA& a, const Representation& theta, const Connection& omega) {
  require_shape(a, theta.lie, omega);
  const std::size_t v = theta.v_dim;
  const std::vector<Mat> xs = action_matrices(theta, omega);
  const Mat id = Mat::identity(v);
  std::vector<Mat> ds;
  for (int i = 0; i <= a.q(); ++i) {
    Mat d(a.dim(i + 1) * v, a.dim(i) * v);
    add_kronecker(d, a.diff(i), id);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (xs[j].is_zero()) continue;
      add_kronecker(d, left_mult_by_basis(a, j, i), xs[j]);
    }
    ds.push_back(std::move(d));
  }
  return ds;
}

AomotoComplex covariant_derivative(const CDGA& a, const Representation& theta, const Connection& omega) {
  require_flat(a, theta, omega);
  std::vector<std::size_t> dims;
  for (auto d : a.dims()) dims.push_back(d * theta.v_dim);
  AomotoComplex out{CochainComplex(std::move(dims), aomoto_differentials(a, theta, omega)), theta.v_dim};
  if (!out.complex.composites_vanish()) {
    throw Error(ErrorCode::BrokenComplex, "d_omega^2 != 0 at a flat connection; representation is not a homomorphism");
  }
  return out;
}

std::vector<std::size_t> twisted_betti_numbers(const CDGA& a, const Representation& theta, const Connection& omega) {
  require_flat(a, theta, omega);
  const auto ds = aomoto_differentials(a, theta, omega);
  std::vector<std::size_t> ranks;
  for (const auto& d : ds) ranks.push_back(rank(d));
  std::vector<std::size_t> out;
  for (int i = 0; i <= a.q(); ++i) {
    std::size_t kernel = a.dim(i) * theta.v_dim - ranks[i];
    out.push_back(kernel - (i > 0 ? ranks[i - 1] : 0));
  }
  return out;
}

std::size_t twisted_betti(const CDGA& a, const Representation& theta, const Connection& omega, int i) {
  if (i < 0 || i > a.q()) {
    throw Error(ErrorCode::DegreeOutOfRange, "twisted H^" + std::to_string(i) + " beyond q = " + std::to_string(a.q()));
  }
  AomotoComplex c = covariant_derivative(a, theta, omega);
  return complex_cohomology_dim(c.complex, static_cast<std::size_t>(i));
}

bool in_resonance(const CDGA& a, const Representation& theta, const Connection& omega, ResonanceQuery query) {
  std::size_t b = twisted_betti(a, theta, omega, query.degree);
  return b >= query.depth;
}

bool r0_membership_by_kernels(const HolonomyPresentation& p, const Representation& theta, const LieMapCandidate& phi) {
  if (!kills_relations(p, theta.lie, phi)) throw Error(ErrorCode::NotAHomomorphism, "candidate does not kill the relations");
  if (p.gens == 0) return true;
  return rank(stacked_actions(theta, phi)) < theta.v_dim;
}

std::size_t lie_low_cohomology_dim(const HolonomyPresentation& p, const Representation& theta,
                                   const LieMapCandidate& phi, int i) {
  if (i < 0 || i > 1) throw Error(ErrorCode::UnsupportedDegree, "Lie algebra cohomology is only computed in degrees 0 and 1");
  if (!kills_relations(p, theta.lie, phi)) throw Error(ErrorCode::NotAHomomorphism, "candidate does not kill the relations");
  const std::size_t v = theta.v_dim;
  const std::size_t n = p.gens;
  if (i == 0) return n == 0 ? v : v - rank(stacked_actions(theta, phi));

  std::vector<Mat> xs;
  for (std::size_t j = 0; j < n; ++j) xs.push_back(theta.apply(phi.values.col(j)));
  // Constraint for relation b on the block c(x_m): l_m id + sum_j q[j][m] X_j.
  Mat constraints(p.relation_count() * v, n * v);
  for (std::size_t b = 0; b < p.relation_count(); ++b) {
    const Mat& q = p.rel_quadratic[b];
    for (std::size_t m = 0; m < n; ++m) {
      Mat block = Mat::identity(v) * p.rel_linear(b, m);
      for (std::size_t j = 0; j < n; ++j)
        if (!q(j, m).is_zero()) block.add_block(0, 0, xs[j], q(j, m));
      constraints.set_block(b * v, m * v, block);
    }
  }
  const auto cocycles = kernel_basis(constraints);
  const Mat coboundaries = Mat::vstack(xs, v);
  return image_dim_in_quotient(coboundaries, Mat::from_columns(cocycles, n * v));
}

bool rank_one_resonance_criterion(const CDGA& a, const Representation& theta, const Vec& eta, const Vec& x, int i) {
  if (!a.has_zero_differential()) throw Error(ErrorCode::ZeroDifferentialRequired, "criterion needs d = 0");
  if (i < 0 || i > a.q()) throw Error(ErrorCode::DegreeOutOfRange, "degree beyond q");
  if (a.dim(i) == 0) return false;
  const Representation rank_one = builtin("abelian1");
  const Connection line = Connection::rank_one(eta, Vec{Rat(1)});
  const bool eta_resonant = twisted_betti(a, rank_one, line, i) >= 1;
  return eta_resonant || det(theta.apply(x)).is_zero();
}

ChainCheck module_structure_chain_check(const CDGA& a, const Representation& theta, const Connection& omega) {
  ChainCheck res;
  const auto ds = aomoto_differentials(a, theta, omega);
  const std::size_t v = theta.v_dim;
  const Mat id = Mat::identity(v);
  for (int p = 0; p <= a.q(); ++p)
    for (int s = 0; p + s <= a.q(); ++s)
      for (std::size_t x = 0; x < a.dim(p); ++x) {
        Vec ex(a.dim(p));
        ex[x] = 1;
        Mat act_s(a.dim(p + s) * v, a.dim(s) * v);  // x . - on A^s (x) V
        add_kronecker(act_s, a.left_multiplication(p, ex, s), id);
        Mat act_s1(a.dim(p + s + 1) * v, a.dim(s + 1) * v);
        add_kronecker(act_s1, a.left_multiplication(p, ex, s + 1), id);
        Mat dx_act(a.dim(p + s + 1) * v, a.dim(s) * v);  // (dx) . -
        add_kronecker(dx_act, a.left_multiplication(p + 1, a.diff(p) * ex, s), id);

        // Every (b, v) basis pair at once: compare the full matrices.
        Mat lhs = ds[p + s] * act_s;
        Mat rhs = dx_act + act_s1 * ds[s] * Rat(p % 2 == 0 ? 1 : -1);
        res.checked += a.dim(s) * v;
        if (lhs != rhs) res.ok = false;
      }
  return res;
}

}  // namespace reslab
