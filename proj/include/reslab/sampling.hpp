#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "reslab/constructions.hpp"
#include "reslab/flatconn.hpp"

namespace reslab {

inline constexpr std::uint64_t kDefaultSeed = 1729;

/// mt19937_64 with rejection-based bounded integers, so sequences are the
/// same on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  /// Uniform on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1)); }
  /// True with probability num / den.
  bool chance(int num, int den) { return uniform_int(1, den) <= num; }
  /// p / q with |p| <= height, 1 <= q <= height.
  Rat rational(int height);
  Rat nonzero_rational(int height);
  Vec vector(std::size_t n, int height);

 private:
  std::mt19937_64 eng_;
};

/// Stable 64-bit hash of a label, used to derive independent streams.
std::uint64_t stream_id(std::string_view label);
Rng make_rng(std::uint64_t seed, std::string_view label);

struct SamplePlan {
  std::uint64_t seed = kDefaultSeed;
  int height = 5;
  std::size_t count = 100;      // points per flat family
  std::size_t nonflat = 100;    // non-flat candidates per fixture
  int grid = 5;                 // integer grid -grid..grid for 1-parameter families
  std::size_t random_params = 50;
};

/// A named family of flat points; empty families are reported as skipped.
struct PointFamily {
  std::string name;
  std::vector<Connection> points;
  std::size_t rejected = 0;
  bool skipped() const { return points.empty(); }
};

/// Families on a single algebra:
///   rank-one  eta (x) x with eta closed;
///   abelian   sum eta_s (x) h_s with closed eta_s and commuting h_s;
///   solved    generic solutions of the flatness equations, obtained by fixing
///             values on a set of generators that meets every bracket term and
///             solving the remaining linear system.
/// Every returned point has been re-checked with is_flat.
std::vector<PointFamily> sample_flat(const CDGA& a, const LieAlgebra& g, const SamplePlan& plan, std::string_view stream);
/// Products: left-only, right-only, rank-one, commuting (pairs with commuting
/// images; needs a commuting set of size >= 2), and solved on the product.
std::vector<PointFamily> sample_flat(const ProductWitness& w, const LieAlgebra& g, const SamplePlan& plan,
                                     std::string_view stream);
/// Wedges: merged (independent flat points on both sides), one-sided, rank-one.
std::vector<PointFamily> sample_flat(const WedgeWitness& w, const LieAlgebra& g, const SamplePlan& plan,
                                     std::string_view stream);
/// Random and perturbed-flat candidates that fail is_flat; may return fewer
/// than plan.nonflat (none at all when every point is flat).
std::vector<Connection> sample_nonflat(const CDGA& a, const LieAlgebra& g, const SamplePlan& plan, std::string_view stream);

/// A random Lie automorphism: a product of exp(t ad_x) over basis elements
/// with nilpotent ad. Identity for abelian g.
Mat random_inner_automorphism(Rng& rng, const LieAlgebra& g, int height);

}  // namespace reslab
