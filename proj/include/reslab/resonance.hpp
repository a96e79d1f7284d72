#pragma once

#include <cstddef>
#include <vector>

#include "reslab/cdga.hpp"
#include "reslab/flatconn.hpp"
#include "reslab/liealg.hpp"

namespace reslab {

/// (A (x) V, d_omega) in degrees 0..q+1; basis of A^i (x) V ordered by
/// (basis index of A^i, basis index of V).
struct AomotoComplex {
  CochainComplex complex;
  std::size_t v_dim = 0;
};

struct ResonanceQuery {
  int degree = 0;
  std::size_t depth = 1;
};

/// d^i_omega = d^i (x) id_V + sum_j (a_j . -) (x) theta(omega_j) for i = 0..q,
/// without any flatness check. Exposed so callers can inspect d_omega^2 at
/// non-flat points.
std::vector<Mat> aomoto_differentials(const CDGA& a, const Representation& theta, const Connection& omega);

/// Throws NotFlat unless omega is flat; verifies d_omega^2 = 0 on the result.
AomotoComplex covariant_derivative(const CDGA& a, const Representation& theta, const Connection& omega);

/// dim H^i(A (x) V, d_omega). Throws NotFlat / DegreeOutOfRange.
std::size_t twisted_betti(const CDGA& a, const Representation& theta, const Connection& omega, int i);
/// All twisted Betti numbers in degrees 0..q from a single set of ranks.
std::vector<std::size_t> twisted_betti_numbers(const CDGA& a, const Representation& theta, const Connection& omega);

bool in_resonance(const CDGA& a, const Representation& theta, const Connection& omega, ResonanceQuery query);

/// Whether the joint kernel of theta(phi(x_i)) over all generators is nonzero.
/// Throws NotAHomomorphism unless phi kills every relation.
bool r0_membership_by_kernels(const HolonomyPresentation& p, const Representation& theta, const LieMapCandidate& phi);

/// dim H^i(h, V_{theta o phi}) for i in {0, 1}, computed from the
/// presentation: cocycles are assignments c(x_j) in V satisfying, for every
/// relation l + sum q_jk [x_j, x_k],
///   c(l) + sum q_jk (X_j c(x_k) - X_k c(x_j)) = 0,   X = theta o phi,
/// and coboundaries are c_v(x_j) = X_j v.
/// Throws NotAHomomorphism, UnsupportedDegree for i >= 2.
std::size_t lie_low_cohomology_dim(const HolonomyPresentation& p, const Representation& theta,
                                   const LieMapCandidate& phi, int i);

/// For d = 0 and omega = eta (x) x: (eta in R^i_1(A)) or det theta(x) = 0.
/// Returns false when A^i = 0, where nothing can resonate.
/// Throws ZeroDifferentialRequired.
bool rank_one_resonance_criterion(const CDGA& a, const Representation& theta, const Vec& eta, const Vec& x, int i);

struct ChainCheck {
  bool ok = true;
  std::size_t checked = 0;
};

/// d_omega(a.(b(x)v)) = (da).(b(x)v) + (-1)^{|a|} a.d_omega(b(x)v) for every
/// basis triple (a, b, v) with |a| + |b| <= q.
ChainCheck module_structure_chain_check(const CDGA& a, const Representation& theta, const Connection& omega);

}  // namespace reslab
