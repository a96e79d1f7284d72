// Runs the full suite once on the shipped fixtures and prints one line per
// acceptance criterion. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>

#include "reslab/catalog.hpp"
#include "reslab/verify.hpp"

using namespace reslab;

namespace {

struct Verdict {
  bool ok = true;
  std::string why;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      why = what;
    }
  }
};

const TheoremReport& find(const std::vector<TheoremReport>& rs, const std::string& id) {
  for (const auto& r : rs)
    if (r.theorem == id) return r;
  throw std::runtime_error("missing report " + id);
}

void require_pass(Verdict& v, const TheoremReport& r) {
  v.require(r.pass(), r.theorem + " has " + std::to_string(r.failure_count()) + " counterexamples");
}

const FamilyResult* family(const TheoremReport& r, const std::string& fixture, const std::string& lie, const std::string& name,
                           int degree = -1) {
  for (const auto& f : r.families)
    if (f.fixture == fixture && f.lie == lie && f.name == name && (degree < 0 || f.stats.value("degree", -1) == degree)) return &f;
  return nullptr;
}

std::size_t stat(const TheoremReport& r, const std::string& key) {
  std::size_t n = 0;
  for (const auto& f : r.families) n += f.stats.value(key, std::size_t{0});
  return n;
}

std::size_t count_at_degree(const TheoremReport& r, const std::string& fixture, const std::string& lie, int degree) {
  std::size_t n = 0;
  for (const auto& f : r.families)
    if (f.fixture == fixture && f.lie == lie && f.stats.value("degree", -1) == degree) n += f.count;
  return n;
}

bool nonabelian(const std::string& lie) { return lie != "abelian1" && lie != "abelian2"; }

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  FixtureSet fx = load_fixture_set(fixture_dir());
  SamplePlan plan;
  auto reports = run_suite(expand_selector("all"), fx, plan);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  std::vector<std::string> cells_fixtures;
  for (const auto& a : fx.base) cells_fixtures.push_back(a.name);
  for (const auto& p : fx.products) cells_fixtures.push_back(p.name);
  for (const auto& w : fx.wedges) cells_fixtures.push_back(w.name);

  std::vector<std::pair<std::string, std::function<Verdict()>>> criteria;

  criteria.push_back({"holonomy of the two-generator model is sol2", [&] {
    Verdict v;
    const auto& r = find(reports, "holonomy-sol2");
    require_pass(v, r);
    const auto* f = family(r, "lambda2d", "sol2", "holonomy");
    v.require(f && f->count == 1, "holonomy check missing");
    v.require(r.wall_seconds < 0.1, "took " + std::to_string(r.wall_seconds) + " s");
    return v;
  }});

  criteria.push_back({"degree-1 resonance of t*x is exactly {0, 1}", [&] {
    Verdict v;
    const auto& r = find(reports, "line-resonance");
    require_pass(v, r);
    const auto* grid = family(r, "lambda2d", "abelian1", "grid");
    const auto* random = family(r, "lambda2d", "abelian1", "random");
    v.require(grid && grid->count == 11, "grid must cover -5..5");
    v.require(random && random->count >= 50, "fewer than 50 random parameters");
    return v;
  }});

  criteria.push_back({"gl2 determinant and commuting-pair criteria, strict product bound", [&] {
    Verdict v;
    const auto& r = find(reports, "gl2-products");
    require_pass(v, r);
    const auto* single = family(r, "lambda1", "gl2", "det-criterion");
    const auto* pairs = family(r, "lambda1-x-lambda1", "gl2", "pair-criterion");
    v.require(single && single->count >= 200, "fewer than 200 single-factor samples");
    v.require(single && single->stats.value("singular", 0) > 0, "no singular samples");
    v.require(pairs && pairs->count >= 200, "fewer than 200 pair samples");
    v.require(pairs && pairs->stats.value("members", 0) > 0 && pairs->stats.value("commuting", 0) > pairs->stats.value("members", 0),
              "pair samples do not separate commuting members from non-members");
    v.require(family(r, "lambda1-x-lambda1", "gl2", "witness") != nullptr, "strictness witness not checked");
    return v;
  }});

  criteria.push_back({"zero connection resonates exactly where b_i != 0", [&] {
    Verdict v;
    const auto& r = find(reports, "zero-connection");
    require_pass(v, r);
    for (const auto& f : cells_fixtures)
      for (const auto& rep : fx.reps) v.require(family(r, f, rep.name, "zero-connection"), "missing " + f + "/" + rep.name);
    return v;
  }});

  criteria.push_back({"flatness equals killing the holonomy relations; rank-one part equals Hom^1", [&] {
    Verdict v;
    const auto& r = find(reports, "flat-hom");
    require_pass(v, r);
    for (const auto& f : cells_fixtures)
      for (const auto& rep : fx.reps) {
        std::size_t flat = 0;
        for (const auto& fam : r.families)
          if (fam.fixture == f && fam.lie == rep.name && fam.name != "non-flat" && fam.name != "random-all-flat") flat += fam.count;
        v.require(flat >= 100, f + "/" + rep.name + ": fewer than 100 flat points");
        const auto* nonflat = family(r, f, rep.name, "non-flat");
        const auto* everywhere = family(r, f, rep.name, "random-all-flat");
        if (nonflat) {
          v.require(nonflat->count >= 100, f + "/" + rep.name + ": fewer than 100 non-flat candidates");
        } else {
          v.require(everywhere && everywhere->count >= 100, f + "/" + rep.name + ": no non-flat candidates and no exemption");
        }
      }
    return v;
  }});

  criteria.push_back({"twisted Betti numbers equal holonomy Lie cohomology in degrees 0 and 1", [&] {
    Verdict v;
    const auto& r = find(reports, "lie-cohomology");
    require_pass(v, r);
    for (const auto& f : cells_fixtures)
      for (const auto& rep : fx.reps) v.require(r.points(f, rep.name) > 0, f + "/" + rep.name + ": no points");
    return v;
  }});

  criteria.push_back({"rank-one criterion matches direct membership on d = 0 fixtures", [&] {
    Verdict v;
    const auto& r = find(reports, "rank-one-criterion");
    require_pass(v, r);
    std::size_t total = 0;
    for (const auto& f : r.families) total += f.count;
    v.require(total >= 200, "fewer than 200 rank-one points");
    v.require(stat(r, "singular") > 0 && stat(r, "nonsingular") > 0, "singular and nonsingular images not both covered");
    return v;
  }});

  criteria.push_back({"product resonance upper bound", [&] {
    Verdict v;
    const auto& r = find(reports, "product-bound");
    require_pass(v, r);
    for (const auto& p : fx.products)
      for (const auto& rep : fx.reps)
        v.require(count_at_degree(r, p.name, rep.name, 0) >= 200, p.name + "/" + rep.name + ": fewer than 200 points");
    return v;
  }});

  criteria.push_back({"product resonance equality for d = 0 and sl2 / sol2", [&] {
    Verdict v;
    const auto& r = find(reports, "product-equality");
    require_pass(v, r);
    const std::string target = product_name("lambda2", "lambda1");
    for (const char* lie : {"sl2", "sol2"})
      for (int q = 0; q <= 2; ++q)
        for (const char* fam : {"left-only", "right-only", "rank-one"}) {
          const auto* f = family(r, target, lie, fam, q);
          v.require(f && f->count >= 100, target + "/" + lie + "/" + fam + " degree " + std::to_string(q) + ": fewer than 100 points");
        }
    return v;
  }});

  criteria.push_back({"trichotomy classifies every flat point on products", [&] {
    Verdict v;
    const auto& r = find(reports, "trichotomy");
    require_pass(v, r);
    for (const auto& p : fx.products)
      for (const char* lie : {"sl2", "sol2"}) v.require(r.points(p.name, lie) > 0, p.name + "/" + lie + ": no points");
    return v;
  }});

  criteria.push_back({"holonomy presentations of products and wedges", [&] {
    Verdict v;
    const auto& r = find(reports, "presentations");
    require_pass(v, r);
    for (const auto& p : fx.products) v.require(family(r, p.name, "", "product-relations"), "missing " + p.name);
    for (const auto& w : fx.wedges) v.require(family(r, w.name, "", "wedge-relations"), "missing " + w.name);
    return v;
  }});

  criteria.push_back({"wedge resonance in degrees > 1 and full degree-1 resonance", [&] {
    Verdict v;
    const auto& higher = find(reports, "wedge-higher");
    const auto& deg1 = find(reports, "wedge-degree1");
    require_pass(v, higher);
    require_pass(v, deg1);
    std::size_t meeting = 0;
    for (const auto& w : fx.wedges)
      for (const auto& rep : fx.reps) {
        v.require(count_at_degree(higher, w.name, rep.name, 2) >= 200, w.name + "/" + rep.name + ": fewer than 200 points");
        if (family(deg1, w.name, rep.name, "hypothesis-unmet")) continue;
        ++meeting;
        v.require(deg1.points(w.name, rep.name) >= 200, w.name + "/" + rep.name + ": fewer than 200 degree-1 points");
      }
    v.require(meeting > 0, "no wedge meets the Betti hypotheses");
    return v;
  }});

  criteria.push_back({"structural identities", [&] {
    Verdict v;
    const auto& r = find(reports, "structural");
    require_pass(v, r);
    require_pass(v, find(reports, "fixtures"));
    for (const auto& f : cells_fixtures)
      for (const auto& rep : fx.reps) {
        v.require(family(r, f, rep.name, "square-zero"), "missing square-zero " + f + "/" + rep.name);
        v.require(family(r, f, rep.name, "module-structure"), "missing module-structure " + f + "/" + rep.name);
      }
    std::size_t witnesses = 0;
    for (const auto& f : r.families) witnesses += f.name == "non-flat-witness";
    v.require(witnesses > 0, "no non-flat witness family");
    for (const auto& base : fx.base)
      for (const auto& rep : fx.reps)
        if (nonabelian(rep.name) && base.algebra.dim(2) > 0)
          v.require(family(r, base.name, rep.name, "non-flat-witness"), "missing witness " + base.name + "/" + rep.name);
    for (const auto& p : fx.products) v.require(family(r, p.name, "", "kunneth"), "missing kunneth " + p.name);
    return v;
  }});

  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v.ok = false;
      v.why = e.what();
    }
    std::cout << (v.ok ? "[PASS] " : "[FAIL] ") << "criterion " << (k + 1) << ": " << criteria[k].first;
    if (!v.ok) std::cout << " -- " << v.why;
    std::cout << "\n";
    failed += !v.ok;
  }
  std::cout << "suite wall time: " << seconds << " s" << (seconds < 60 ? "" : " (over the 60 s target)") << "\n";
  if (seconds >= 60) ++failed;
  for (const auto& r : reports)
    if (!r.pass()) std::cout << render_text(r);
  return failed == 0 ? 0 : 1;
}
