#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "reslab/catalog.hpp"
#include "reslab/resonance.hpp"
#include "reslab/sampling.hpp"

namespace reslab {

/// Points tested for one (fixture, target, family) cell. Every failure record
/// carries the exact point and both verdicts.
struct FamilyResult {
  std::string fixture;
  std::string lie;
  std::string name;
  std::size_t count = 0;
  std::vector<nlohmann::json> failures;
  nlohmann::json stats = nlohmann::json::object();
};

struct TheoremReport {
  std::string theorem;
  std::vector<std::string> fixtures;
  std::vector<FamilyResult> families;
  std::vector<std::string> notes;
  double wall_seconds = 0;

  bool pass() const;
  std::size_t failure_count() const;
  /// Points over all families matching the fixture (and target, when given).
  std::size_t points(const std::string& fixture, const std::string& lie = {}) const;
  void merge(TheoremReport other);
};

nlohmann::json to_json(const TheoremReport& r, bool with_time = true);
std::string render_text(const TheoremReport& r);

/// Upper bound for products: every sampled flat Omega resonant in
/// degree q has both components resonant in some degree <= q.
TheoremReport check_res_prod_upper_bound(const NamedProduct& p, const NamedRep& theta, int q, const SamplePlan& plan);
/// The gl2 witness (diag(1,0), diag(0,1)) on Lambda(e) (x) Lambda(e'): inside
/// the bound, outside the resonance variety.
TheoremReport check_res_prod_strictness(const NamedProduct& p, const NamedRep& gl2);
/// Equality for d = 0 and sl2 / sol2: Omega resonant in degree q iff
/// omega in R^i and omega' in R^j for some i + j = q.
TheoremReport check_prodres2_equality(const NamedProduct& p, const NamedRep& theta, int q, const SamplePlan& plan);
/// Wedge, i > 1: Omega in R^i iff omega in R^i or omega' in R^i.
TheoremReport check_coproduct_higher(const NamedWedge& w, const NamedRep& theta, int i, const SamplePlan& plan);
/// Wedge, degree 1: every flat point resonates when b1(A), b1(A') > 0 and one
/// exceeds 1; also checks the block form of the twisted differentials and the
/// kernel identities of the comparison map H^1_Omega -> H^1_omega + H^1_omega'.
/// Throws HypothesisUnmet when the Betti conditions fail.
TheoremReport check_coproduct_degree1(const NamedWedge& w, const NamedRep& theta, const SamplePlan& plan);

/// Suite entry point. Known ids, in run order:
///   fixtures holonomy-sol2 line-resonance gl2-products zero-connection
///   degree0-kernels flat-hom rank-one-criterion lie-cohomology product-bound
///   product-equality trichotomy presentations wedge-higher wedge-degree1
///   structural
const std::vector<std::string>& suite_ids();
/// Expands "all", "examples" (the first five checks after fixtures) and comma lists; throws
/// InvalidArgument on unknown or empty selectors.
std::vector<std::string> expand_selector(const std::string& selector);
TheoremReport run_check(const std::string& id, const FixtureSet& fixtures, const SamplePlan& plan);
std::vector<TheoremReport> run_suite(const std::vector<std::string>& ids, const FixtureSet& fixtures, const SamplePlan& plan);
std::vector<TheoremReport> run_golden_examples(const FixtureSet& fixtures, const SamplePlan& plan);

/// Worker count for point loops: $RESLAB_THREADS, else hardware concurrency.
unsigned worker_count();

}  // namespace reslab
