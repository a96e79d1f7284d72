#include "reslab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "reslab/errors.hpp"
#include "reslab/exactlin.hpp"
#include "reslab/serialize.hpp"

namespace reslab {

namespace {

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F f) {
  std::vector<T> out(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    for (std::size_t i; (i = next++) < n;) {
      try {
        out[i] = f(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

json point_json(const Connection& c) { return to_json(c.coeffs); }

bool composites_vanish(const std::vector<Mat>& ds) {
  for (std::size_t i = 0; i + 1 < ds.size(); ++i)
    if (!(ds[i + 1] * ds[i]).is_zero()) return false;
  return true;
}

std::vector<std::size_t> betti_from(const CDGA& a, std::size_t v, const std::vector<Mat>& ds) {
  std::vector<std::size_t> ranks;
  for (const auto& d : ds) ranks.push_back(rank(d));
  std::vector<std::size_t> out;
  for (int i = 0; i <= a.q(); ++i) out.push_back(a.dim(i) * v - ranks[i] - (i > 0 ? ranks[i - 1] : 0));
  return out;
}

bool is_abelian(const LieAlgebra& g) { return g.table().is_zero(); }

// Every connection is flat: no relations, or no brackets and no linear part.
bool flat_everywhere(const CDGA& a, const LieAlgebra& g) {
  if (a.q() < 1 || a.dim(2) == 0) return true;
  return is_abelian(g) && a.diff(1).is_zero();
}

struct PointAnalysis {
  std::string family;
  Connection omega;
  std::vector<std::size_t> betti;
  bool square_zero = true;
  // Components on constructions.
  Connection left, right;
  bool left_flat = true, right_flat = true;
  std::vector<std::size_t> left_betti, right_betti;
};

struct Cell {
  std::string fixture;
  std::string lie;
  std::vector<std::string> families;
  std::map<std::string, std::size_t> rejected;
  std::vector<PointAnalysis> points;
};

PointAnalysis analyze_point(const CDGA& a, const Representation& theta, std::string family, Connection omega) {
  PointAnalysis pa;
  pa.family = std::move(family);
  auto ds = aomoto_differentials(a, theta, omega);
  pa.square_zero = composites_vanish(ds);
  pa.betti = betti_from(a, theta.v_dim, ds);
  pa.omega = std::move(omega);
  return pa;
}

void analyze_components(PointAnalysis& pa, const CDGA& l, const CDGA& r, const Representation& theta, SplitConnection s) {
  pa.left_flat = is_flat(l, theta.lie, s.left);
  pa.right_flat = is_flat(r, theta.lie, s.right);
  if (pa.left_flat) pa.left_betti = twisted_betti_numbers(l, theta, s.left);
  if (pa.right_flat) pa.right_betti = twisted_betti_numbers(r, theta, s.right);
  pa.left = std::move(s.left);
  pa.right = std::move(s.right);
}

Cell make_cell(const std::string& fixture, const NamedRep& rep, const std::vector<PointFamily>& fams) {
  Cell c{fixture, rep.name, {}, {}, {}};
  for (const auto& f : fams) {
    c.families.push_back(f.name);
    c.rejected[f.name] = f.rejected;
  }
  return c;
}

Cell analyze_base(const NamedCDGA& a, const NamedRep& rep, const SamplePlan& plan) {
  auto fams = sample_flat(a.algebra, rep.rep.lie, plan, "base/" + a.name + "/" + rep.name);
  Cell c = make_cell(a.name, rep, fams);
  for (const auto& f : fams)
    for (const auto& p : f.points) c.points.push_back(analyze_point(a.algebra, rep.rep, f.name, p));
  return c;
}

Cell analyze_product(const NamedProduct& p, const NamedRep& rep, const SamplePlan& plan) {
  auto fams = sample_flat(p.witness, rep.rep.lie, plan, "product/" + p.name + "/" + rep.name);
  Cell c = make_cell(p.name, rep, fams);
  for (const auto& f : fams)
    for (const auto& om : f.points) {
      auto pa = analyze_point(p.witness.product, rep.rep, f.name, om);
      analyze_components(pa, p.witness.left, p.witness.right, rep.rep, split_connection(p.witness, om));
      c.points.push_back(std::move(pa));
    }
  return c;
}

Cell analyze_wedge(const NamedWedge& w, const NamedRep& rep, const SamplePlan& plan) {
  auto fams = sample_flat(w.witness, rep.rep.lie, plan, "wedge/" + w.name + "/" + rep.name);
  Cell c = make_cell(w.name, rep, fams);
  for (const auto& f : fams)
    for (const auto& om : f.points) {
      auto pa = analyze_point(w.witness.wedge, rep.rep, f.name, om);
      analyze_components(pa, w.witness.left, w.witness.right, rep.rep, split_connection(w.witness, om));
      c.points.push_back(std::move(pa));
    }
  return c;
}

/// Runs body(point, result) for each point of each family in cell order.
template <class F>
void per_family(const Cell& c, std::vector<FamilyResult>& out, F body) {
  for (const auto& name : c.families) {
    FamilyResult fr{c.fixture, c.lie, name, 0, {}, json::object()};
    for (const auto& p : c.points) {
      if (p.family != name) continue;
      ++fr.count;
      body(p, fr);
    }
    if (fr.count == 0) fr.stats["skipped"] = true;
    out.push_back(std::move(fr));
  }
}

std::size_t count_where(const std::vector<std::size_t>& b, std::size_t upto) {
  std::size_t n = 0;
  for (std::size_t i = 0; i <= upto && i < b.size(); ++i) n += b[i] >= 1;
  return n;
}

void bump(FamilyResult& fr, const char* key) {
  fr.stats[key] = fr.stats.value(key, 0) + 1;
}

Mat gl2_matrix(const Vec& x) { return Mat::from_rows({{x[0], x[1]}, {x[2], x[3]}}); }
Rat det2(const Mat& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }
bool commute2(const Mat& g, const Mat& h) { return g * h == h * g; }
// Nonzero common kernel of two 2x2 matrices: all 2x2 minors of [g; h] vanish.
bool shared_kernel2(const Mat& g, const Mat& h) {
  Mat s = Mat::from_rows({{g(0, 0), g(0, 1)}, {g(1, 0), g(1, 1)}, {h(0, 0), h(0, 1)}, {h(1, 0), h(1, 1)}});
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (!(s(i, 0) * s(j, 1) - s(i, 1) * s(j, 0)).is_zero()) return false;
  return true;
}
Vec gl2_coords(const Mat& m) { return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)}; }

Mat block_diagonal(const Mat& a, const Mat& b) {
  Mat out(a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

/// Predicted holonomy presentation of a product: factor relations embedded
/// via the degree-1 positions, and [x, x'] = 0 for every cross pair.
HolonomyPresentation predicted_product_presentation(const ProductWitness& w) {
  auto pl = holonomy_presentation(w.left);
  auto pr = holonomy_presentation(w.right);
  auto lpos = w.left_one_positions();
  auto rpos = w.right_one_positions();
  HolonomyPresentation p;
  p.gens = lpos.size() + rpos.size();
  const auto& deg2 = w.basis.at(2);
  p.rel_linear = Mat(deg2.size(), p.gens);
  for (std::size_t b = 0; b < deg2.size(); ++b) {
    Mat quad(p.gens, p.gens);
    const auto& idx = deg2[b];
    if (idx.left_degree == 2) {
      for (std::size_t j = 0; j < lpos.size(); ++j) {
        p.rel_linear(b, lpos[j]) = pl.rel_linear(idx.left, j);
        for (std::size_t k = 0; k < lpos.size(); ++k) quad(lpos[j], lpos[k]) = pl.rel_quadratic[idx.left](j, k);
      }
    } else if (idx.left_degree == 0) {
      for (std::size_t j = 0; j < rpos.size(); ++j) {
        p.rel_linear(b, rpos[j]) = pr.rel_linear(idx.right, j);
        for (std::size_t k = 0; k < rpos.size(); ++k) quad(rpos[j], rpos[k]) = pr.rel_quadratic[idx.right](j, k);
      }
    } else {
      quad(lpos[idx.left], rpos[idx.right]) = Rat(1);
      quad(rpos[idx.right], lpos[idx.left]) = Rat(-1);
    }
    p.rel_quadratic.push_back(std::move(quad));
  }
  return p;
}

HolonomyPresentation predicted_wedge_presentation(const WedgeWitness& w) {
  auto pl = holonomy_presentation(w.left);
  auto pr = holonomy_presentation(w.right);
  auto lpos = w.left_one_positions();
  auto rpos = w.right_one_positions();
  HolonomyPresentation p;
  p.gens = lpos.size() + rpos.size();
  const auto& deg2 = w.basis.at(2);
  p.rel_linear = Mat(deg2.size(), p.gens);
  for (std::size_t b = 0; b < deg2.size(); ++b) {
    Mat quad(p.gens, p.gens);
    const bool left = deg2[b].side == WedgeSide::Left;
    const auto& src = left ? pl : pr;
    const auto& pos = left ? lpos : rpos;
    const std::size_t r = deg2[b].index;
    for (std::size_t j = 0; j < pos.size(); ++j) {
      p.rel_linear(b, pos[j]) = src.rel_linear(r, j);
      for (std::size_t k = 0; k < pos.size(); ++k) quad(pos[j], pos[k]) = src.rel_quadratic[r](j, k);
    }
    p.rel_quadratic.push_back(std::move(quad));
  }
  return p;
}

std::size_t cross_relation_count(const HolonomyPresentation& p, const std::vector<std::size_t>& lpos,
                                 const std::vector<std::size_t>& rpos) {
  std::size_t n = 0;
  for (const auto& q : p.rel_quadratic) {
    bool cross = false;
    for (auto j : lpos)
      for (auto k : rpos) cross = cross || !q(j, k).is_zero();
    n += cross;
  }
  return n;
}

// ---- checks on analysed cells ------------------------------------------------

void upper_bound_cell(const Cell& c, int q, std::vector<FamilyResult>& out) {
  per_family(c, out, [&](const PointAnalysis& p, FamilyResult& fr) {
    if (!p.left_flat || !p.right_flat) {
      fr.failures.push_back({{"point", point_json(p.omega)}, {"detail", "component of a flat point is not flat"}});
      return;
    }
    if (p.betti[q] == 0) return;
    bump(fr, "lhs_members");
    const bool left_ok = count_where(p.left_betti, q) > 0;
    const bool right_ok = count_where(p.right_betti, q) > 0;
    if (!left_ok || !right_ok) {
      fr.failures.push_back({{"point", point_json(p.omega)},
                             {"degree", q},
                             {"product_betti", p.betti},
                             {"left_betti", p.left_betti},
                             {"right_betti", p.right_betti},
                             {"lhs_member", true},
                             {"rhs_member", false}});
    }
  });
}

void equality_cell(const Cell& c, int q, std::vector<FamilyResult>& out) {
  per_family(c, out, [&](const PointAnalysis& p, FamilyResult& fr) {
    if (!p.left_flat || !p.right_flat) {
      fr.failures.push_back({{"point", point_json(p.omega)}, {"detail", "component of a flat point is not flat"}});
      return;
    }
    const bool lhs = p.betti[q] >= 1;
    bool rhs = false;
    for (int i = 0; i <= q; ++i) rhs = rhs || (p.left_betti[i] >= 1 && p.right_betti[q - i] >= 1);
    if (lhs) bump(fr, "lhs_members");
    if (rhs) bump(fr, "rhs_members");
    if (lhs != rhs) {
      fr.failures.push_back({{"point", point_json(p.omega)},
                             {"degree", q},
                             {"product_betti", p.betti},
                             {"left_betti", p.left_betti},
                             {"right_betti", p.right_betti},
                             {"lhs_member", lhs},
                             {"rhs_member", rhs}});
    }
  });
}

void coproduct_higher_cell(const Cell& c, int i, std::vector<FamilyResult>& out) {
  per_family(c, out, [&](const PointAnalysis& p, FamilyResult& fr) {
    if (!p.left_flat || !p.right_flat) {
      fr.failures.push_back({{"point", point_json(p.omega)}, {"detail", "component of a flat point is not flat"}});
      return;
    }
    const bool lhs = p.betti[i] >= 1;
    const bool rhs = p.left_betti[i] >= 1 || p.right_betti[i] >= 1;
    if (lhs) bump(fr, "members");
    if (lhs != rhs) {
      fr.failures.push_back({{"point", point_json(p.omega)},
                             {"degree", i},
                             {"wedge_betti", p.betti},
                             {"left_betti", p.left_betti},
                             {"right_betti", p.right_betti},
                             {"lhs_member", lhs},
                             {"rhs_member", rhs}});
    }
  });
}

void coproduct_degree1_cell(const NamedWedge& w, const NamedRep& rep, const Cell& c, std::vector<FamilyResult>& out) {
  const auto& ww = w.witness;
  const std::size_t v = rep.rep.v_dim;
  per_family(c, out, [&](const PointAnalysis& p, FamilyResult& fr) {
    auto fail = [&](const std::string& what, json extra = json::object()) {
      extra["point"] = point_json(p.omega);
      extra["detail"] = what;
      fr.failures.push_back(std::move(extra));
    };
    if (p.betti[1] == 0) fail("flat point outside the degree-1 resonance variety", {{"wedge_betti", p.betti}});
    if (!p.left_flat || !p.right_flat) return fail("component of a flat point is not flat");

    auto dw = aomoto_differentials(ww.wedge, rep.rep, p.omega);
    auto dl = aomoto_differentials(ww.left, rep.rep, p.left);
    auto dr = aomoto_differentials(ww.right, rep.rep, p.right);
    std::vector<Mat> d0{dl[0], dr[0]};
    if (dw[0] != Mat::vstack(d0, v)) fail("degree-0 twisted differential is not the stacked pair");
    for (int i = 1; i <= ww.wedge.q(); ++i)
      if (dw[i] != block_diagonal(dl[i], dr[i])) fail("twisted differential is not block diagonal", {{"degree", i}});

    const long kernel = static_cast<long>(p.betti[1]) - static_cast<long>(p.left_betti[1]) - static_cast<long>(p.right_betti[1]);
    const long by_ranks = static_cast<long>(rank(dl[0])) + static_cast<long>(rank(dr[0])) - static_cast<long>(rank(dw[0]));
    if (kernel != by_ranks) fail("comparison-map kernel dimension mismatch", {{"from_betti", kernel}, {"from_ranks", by_ranks}});
    auto zl = kernel_basis(dl[0]);
    auto zr = kernel_basis(dr[0]);
    zl.insert(zl.end(), zr.begin(), zr.end());
    const bool spans = !zl.empty() && rank(Mat::from_columns(zl, v)) == v;
    if ((kernel == 0) != spans) fail("injectivity criterion mismatch", {{"kernel", kernel}, {"cocycles_span", spans}});
    if (kernel == 0) bump(fr, "injective");
  });
}

void trichotomy_cell(const NamedProduct& p, const NamedRep& rep, const Cell& c, std::vector<FamilyResult>& out) {
  const auto lpos = p.witness.left_one_positions();
  const auto rpos = p.witness.right_one_positions();
  per_family(c, out, [&](const PointAnalysis& pt, FamilyResult& fr) {
    try {
      Trichotomy t = trichotomy_classify(p.witness, rep.rep.lie, pt.omega);
      bool consistent = false;
      if (t == Trichotomy::RankOne) consistent = rank(pt.omega.coeffs) <= 1;
      if (t == Trichotomy::LeftOnly) consistent = pt.right.coeffs.is_zero();
      if (t == Trichotomy::RightOnly) consistent = pt.left.coeffs.is_zero();
      if (!consistent) {
        fr.failures.push_back({{"point", point_json(pt.omega)}, {"class", to_string(t)}, {"detail", "class does not hold"}});
      }
      bump(fr, to_string(t).c_str());
    } catch (const Error& e) {
      fr.failures.push_back({{"point", point_json(pt.omega)}, {"detail", e.what()}});
    }
  });
}

// ---- session -----------------------------------------------------------------

class Session {
 public:
  Session(const FixtureSet& fx, const SamplePlan& plan) : fx_(fx), plan_(plan) {}

  std::shared_ptr<const Cell> base(const NamedCDGA& a, const NamedRep& r) {
    return cached("base/" + a.name + "/" + r.name, [&] { return analyze_base(a, r, plan_); });
  }
  std::shared_ptr<const Cell> product(const NamedProduct& p, const NamedRep& r) {
    return cached("product/" + p.name + "/" + r.name, [&] { return analyze_product(p, r, plan_); });
  }
  std::shared_ptr<const Cell> wedge(const NamedWedge& w, const NamedRep& r) {
    return cached("wedge/" + w.name + "/" + r.name, [&] { return analyze_wedge(w, r, plan_); });
  }

  TheoremReport run(const std::string& id);

 private:
  template <class F>
  std::shared_ptr<const Cell> cached(const std::string& key, F make) {
    {
      std::lock_guard lock(mu_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    auto cell = std::make_shared<const Cell>(make());
    std::lock_guard lock(mu_);
    return cache_.emplace(key, cell).first->second;
  }

  // (fixture kind, fixture index, rep index) over every cell.
  struct CellRef {
    int kind;
    std::size_t fixture;
    std::size_t rep;
  };
  std::vector<CellRef> all_cells(bool base, bool products, bool wedges) const {
    std::vector<CellRef> out;
    for (std::size_t r = 0; r < fx_.reps.size(); ++r) {
      if (base)
        for (std::size_t i = 0; i < fx_.base.size(); ++i) out.push_back({0, i, r});
      if (products)
        for (std::size_t i = 0; i < fx_.products.size(); ++i) out.push_back({1, i, r});
      if (wedges)
        for (std::size_t i = 0; i < fx_.wedges.size(); ++i) out.push_back({2, i, r});
    }
    std::stable_sort(out.begin(), out.end(), [](const CellRef& a, const CellRef& b) {
      return std::tie(a.kind, a.fixture, a.rep) < std::tie(b.kind, b.fixture, b.rep);
    });
    return out;
  }
  std::shared_ptr<const Cell> cell(const CellRef& c) {
    const auto& rep = fx_.reps[c.rep];
    if (c.kind == 0) return base(fx_.base[c.fixture], rep);
    if (c.kind == 1) return product(fx_.products[c.fixture], rep);
    return wedge(fx_.wedges[c.fixture], rep);
  }
  const CDGA& algebra_of(const CellRef& c) const {
    if (c.kind == 0) return fx_.base[c.fixture].algebra;
    if (c.kind == 1) return fx_.products[c.fixture].witness.product;
    return fx_.wedges[c.fixture].witness.wedge;
  }
  std::vector<std::shared_ptr<const Cell>> cells(const std::vector<CellRef>& refs) {
    return parallel_map<std::shared_ptr<const Cell>>(refs.size(), [&](std::size_t i) { return cell(refs[i]); });
  }

  TheoremReport fixtures_check();
  TheoremReport holonomy_sol2();
  TheoremReport line_resonance();
  TheoremReport gl2_products();
  TheoremReport zero_connection();
  TheoremReport degree0_kernels();
  TheoremReport flat_hom();
  TheoremReport rank_one_criterion();
  TheoremReport lie_cohomology();
  TheoremReport product_bound();
  TheoremReport product_equality();
  TheoremReport trichotomy();
  TheoremReport presentations();
  TheoremReport wedge_higher();
  TheoremReport wedge_degree1();
  TheoremReport structural();

  const FixtureSet& fx_;
  SamplePlan plan_;
  std::mutex mu_;
  std::map<std::string, std::shared_ptr<const Cell>> cache_;
};

std::vector<std::string> fixture_names(const FixtureSet& fx, bool base, bool products, bool wedges) {
  std::vector<std::string> out;
  if (base)
    for (const auto& a : fx.base) out.push_back(a.name);
  if (products)
    for (const auto& p : fx.products) out.push_back(p.name);
  if (wedges)
    for (const auto& w : fx.wedges) out.push_back(w.name);
  return out;
}

TheoremReport Session::fixtures_check() {
  TheoremReport r{"fixtures", fixture_names(fx_, true, true, true), {}, {}, 0};
  auto record_cdga = [&](const std::string& name, const CDGA& a) {
    FamilyResult fr{name, "", "cdga-axioms", 1, {}, json::object()};
    for (const auto& v : validate(a).violations)
      fr.failures.push_back({{"axiom", v.axiom}, {"degrees", v.degrees}, {"indices", v.indices}, {"detail", v.detail}});
    r.families.push_back(std::move(fr));
  };
  for (const auto& a : fx_.base) record_cdga(a.name, a.algebra);
  for (const auto& p : fx_.products) record_cdga(p.name, p.witness.product);
  for (const auto& w : fx_.wedges) record_cdga(w.name, w.witness.wedge);
  for (const auto& rep : fx_.reps) {
    r.fixtures.push_back(rep.name);
    FamilyResult fr{"", rep.name, "lie-axioms", 1, {}, json::object()};
    for (const auto& v : validate_lie(rep.rep.lie).violations)
      fr.failures.push_back({{"axiom", v.axiom}, {"indices", v.indices}, {"detail", v.detail}});
    for (const auto& v : validate_rep(rep.rep).violations)
      fr.failures.push_back({{"axiom", v.axiom}, {"indices", v.indices}, {"detail", v.detail}});
    r.families.push_back(std::move(fr));
  }
  return r;
}

TheoremReport Session::holonomy_sol2() {
  TheoremReport r{"holonomy-sol2", {"lambda2d", "sol2"}, {}, {}, 0};
  FamilyResult fr{"lambda2d", "sol2", "holonomy", 1, {}, json::object()};
  const CDGA& a = fx_.algebra("lambda2d").algebra;
  const LieAlgebra& sol2 = fx_.rep("sol2").rep.lie;
  HolonomyPresentation p = holonomy_presentation(a);
  fr.stats["presentation"] = format_presentation(p);
  if (p.gens != 2 || p.relation_count() != 1) {
    fr.failures.push_back({{"detail", "expected 2 generators and 1 relation"}, {"gens", p.gens}, {"relations", p.relation_count()}});
  } else if (auto nf = normalize_two_generator(p); !nf) {
    fr.failures.push_back({{"detail", "relation does not define a non-abelian 2-dimensional algebra"}});
  } else {
    const Rat& eps = nf->bracket_sign;
    fr.stats["epsilon"] = eps.str();
    if (eps != Rat(1) && eps != Rat(-1)) {
      fr.failures.push_back({{"detail", "relation is not [x,y] = +-y"}, {"epsilon", eps.str()}});
    }
    if (nf->algebra.table() != sol2.table()) {
      fr.failures.push_back({{"detail", "normalized structure constants differ from the sol2 catalog entry"},
                             {"normalized", to_json(nf->algebra)},
                             {"catalog", to_json(sol2)}});
    }
  }
  r.families.push_back(std::move(fr));
  return r;
}

TheoremReport Session::line_resonance() {
  TheoremReport r{"line-resonance", {"lambda2d", "abelian1"}, {}, {}, 0};
  const CDGA& a = fx_.algebra("lambda2d").algebra;
  const Representation& theta = fx_.rep("abelian1").rep;
  auto probe = [&](const Rat& t, FamilyResult& fr) {
    Connection om{Mat(a.dim(1), 1)};
    om.coeffs(0, 0) = t;
    const bool member = in_resonance(a, theta, om, {1, 1});
    const bool expected = t == Rat(0) || t == Rat(1);
    ++fr.count;
    if (member) bump(fr, "members");
    if (member != expected) fr.failures.push_back({{"t", t.str()}, {"member", member}, {"expected", expected}});
  };
  FamilyResult grid{"lambda2d", "abelian1", "grid", 0, {}, json::object()};
  for (int t = -plan_.grid; t <= plan_.grid; ++t) probe(Rat(t), grid);
  FamilyResult random{"lambda2d", "abelian1", "random", 0, {}, json::object()};
  Rng rng = make_rng(plan_.seed, "line-resonance");
  for (std::size_t k = 0; k < plan_.random_params; ++k) probe(rng.rational(plan_.height), random);
  r.families.push_back(std::move(grid));
  r.families.push_back(std::move(random));
  return r;
}

TheoremReport Session::gl2_products() {
  TheoremReport r{"gl2-products", {"lambda1", "lambda1-x-lambda1", "gl2"}, {}, {}, 0};
  const CDGA& a = fx_.algebra("lambda1").algebra;
  const Representation& gl2 = fx_.rep("gl2").rep;
  Rng rng = make_rng(plan_.seed, "gl2-products");
  const std::size_t n = std::max<std::size_t>(200, 2 * plan_.count);
  const int h = plan_.height;
  auto random_matrix = [&] { return gl2_matrix(rng.vector(4, h)); };
  auto singular_matrix = [&] {
    Vec u = rng.vector(2, h), v = rng.vector(2, h);
    return Mat::from_rows({{u[0] * v[0], u[0] * v[1]}, {u[1] * v[0], u[1] * v[1]}});
  };
  auto sample_g = [&](std::size_t k) {
    switch (k % 5) {
      case 0: return random_matrix();
      case 1: return singular_matrix();
      case 2: {
        Vec u = rng.vector(2, h);
        Rat c = rng.rational(h);
        return Mat::from_rows({{-u[0] * u[1] * c, u[0] * u[0] * c}, {-u[1] * u[1] * c, u[0] * u[1] * c}});
      }
      case 3: return Mat::from_rows({{rng.rational(h), Rat(0)}, {Rat(0), rng.rational(h)}});
      default: return Mat::identity(2) * rng.nonzero_rational(h) + singular_matrix();
    }
  };

  FamilyResult single{"lambda1", "gl2", "det-criterion", 0, {}, json::object()};
  for (std::size_t k = 0; k < n; ++k) {
    Mat g = sample_g(k);
    Connection om = Connection::rank_one(Vec{Rat(1)}, gl2_coords(g));
    const bool member = in_resonance(a, gl2, om, {0, 1});
    const bool expected = det2(g).is_zero();
    ++single.count;
    if (expected) bump(single, "singular");
    if (member != expected) single.failures.push_back({{"g", to_json(g)}, {"member", member}, {"expected", expected}});
  }
  r.families.push_back(std::move(single));

  const auto& prod = fx_.product("lambda1-x-lambda1");
  FamilyResult pairs{prod.name, "gl2", "pair-criterion", 0, {}, json::object()};
  for (std::size_t k = 0; k < n; ++k) {
    Mat g = sample_g(k), hm;
    switch (k % 6) {
      case 0: hm = Mat::identity(2) * rng.rational(h) + g * rng.rational(h); break;
      case 1:
        g = Mat::from_rows({{rng.rational(h), Rat(0)}, {Rat(0), rng.rational(h)}});
        hm = Mat::from_rows({{rng.rational(h), Rat(0)}, {Rat(0), rng.rational(h)}});
        break;
      case 2: g = singular_matrix(); hm = g * rng.rational(h); break;
      case 3: hm = random_matrix(); break;
      case 4: g = Mat::from_rows({{rng.nonzero_rational(h), Rat(0)}, {Rat(0), Rat(0)}});
              hm = Mat::from_rows({{Rat(0), Rat(0)}, {Rat(0), rng.nonzero_rational(h)}});
              break;
      default: hm = singular_matrix(); break;
    }
    Connection om = merge_connection(prod.witness, Connection::rank_one(Vec{Rat(1)}, gl2_coords(g)),
                                     Connection::rank_one(Vec{Rat(1)}, gl2_coords(hm)));
    const bool flat = is_flat(prod.witness.product, gl2.lie, om);
    const bool member = flat && in_resonance(prod.witness.product, gl2, om, {0, 1});
    const bool commuting = commute2(g, hm);
    const bool expected = commuting && shared_kernel2(g, hm);
    ++pairs.count;
    if (commuting) bump(pairs, "commuting");
    if (expected) bump(pairs, "members");
    if (flat != commuting || member != expected) {
      pairs.failures.push_back({{"g", to_json(g)}, {"h", to_json(hm)}, {"flat", flat}, {"member", member}, {"expected", expected}});
    }
  }
  r.families.push_back(std::move(pairs));
  r.merge(check_res_prod_strictness(prod, fx_.rep("gl2")));
  r.theorem = "gl2-products";
  return r;
}

TheoremReport Session::zero_connection() {
  TheoremReport r{"zero-connection", fixture_names(fx_, true, true, true), {}, {}, 0};
  auto refs = all_cells(true, true, true);
  auto results = parallel_map<FamilyResult>(refs.size(), [&](std::size_t k) {
    const CDGA& a = algebra_of(refs[k]);
    const auto& rep = fx_.reps[refs[k].rep];
    std::string fixture = refs[k].kind == 0 ? fx_.base[refs[k].fixture].name
                          : refs[k].kind == 1 ? fx_.products[refs[k].fixture].name
                                              : fx_.wedges[refs[k].fixture].name;
    FamilyResult fr{fixture, rep.name, "zero-connection", 0, {}, json::object()};
    auto b = betti_numbers(a);
    Connection zero = Connection::zero(a, rep.rep.lie);
    for (int i = 0; i <= a.q(); ++i) {
      const bool member = in_resonance(a, rep.rep, zero, {i, 1});
      ++fr.count;
      if (member != (b[i] != 0)) fr.failures.push_back({{"degree", i}, {"betti", b[i]}, {"member", member}});
    }
    return fr;
  });
  r.families = std::move(results);
  return r;
}

TheoremReport Session::degree0_kernels() {
  TheoremReport r{"degree0-kernels", fixture_names(fx_, true, true, true), {}, {}, 0};
  auto refs = all_cells(true, true, true);
  auto cs = cells(refs);
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const auto& rep = fx_.reps[refs[k].rep];
    HolonomyPresentation p = holonomy_presentation(algebra_of(refs[k]));
    per_family(*cs[k], r.families, [&](const PointAnalysis& pt, FamilyResult& fr) {
      const bool by_kernels = r0_membership_by_kernels(p, rep.rep, to_lie_map(pt.omega));
      const bool direct = pt.betti[0] >= 1;
      if (direct) bump(fr, "members");
      if (by_kernels != direct) fr.failures.push_back({{"point", point_json(pt.omega)}, {"by_kernels", by_kernels}, {"direct", direct}});
    });
  }
  return r;
}

TheoremReport Session::flat_hom() {
  TheoremReport r{"flat-hom", fixture_names(fx_, true, true, true), {}, {}, 0};
  auto refs = all_cells(true, true, true);
  auto cs = cells(refs);
  auto nonflat = parallel_map<FamilyResult>(refs.size(), [&](std::size_t k) {
    const CDGA& a = algebra_of(refs[k]);
    const auto& rep = fx_.reps[refs[k].rep];
    const auto& lie = rep.rep.lie;
    HolonomyPresentation p = holonomy_presentation(a);
    FamilyResult fr{cs[k]->fixture, rep.name, "non-flat", 0, {}, json::object()};
    const bool everywhere = flat_everywhere(a, lie);
    fr.stats["flat_everywhere"] = everywhere;
    std::string stream = "nonflat/" + cs[k]->fixture + "/" + rep.name;
    if (everywhere) {
      // Random candidates must all be flat and kill the relations.
      fr.name = "random-all-flat";
      Rng rng = make_rng(plan_.seed, stream);
      for (std::size_t n = 0; n < plan_.nonflat; ++n) {
        Connection c{Mat(a.dim(1), lie.dim())};
        for (std::size_t j = 0; j < a.dim(1); ++j)
          for (std::size_t m = 0; m < lie.dim(); ++m) c.coeffs(j, m) = rng.rational(plan_.height);
        ++fr.count;
        const bool flat = is_flat(a, lie, c);
        const bool kills = kills_relations(p, lie, to_lie_map(c));
        if (!flat || !kills) fr.failures.push_back({{"point", point_json(c)}, {"flat", flat}, {"kills", kills}});
      }
      return fr;
    }
    for (const auto& c : sample_nonflat(a, lie, plan_, stream)) {
      ++fr.count;
      const bool kills = kills_relations(p, lie, to_lie_map(c));
      const bool rank_one = is_essentially_rank_one(a, c);
      if (kills || rank_one) fr.failures.push_back({{"point", point_json(c)}, {"flat", false}, {"kills", kills}, {"rank_one", rank_one}});
    }
    return fr;
  });
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const CDGA& a = algebra_of(refs[k]);
    const auto& lie = fx_.reps[refs[k].rep].rep.lie;
    HolonomyPresentation p = holonomy_presentation(a);
    per_family(*cs[k], r.families, [&](const PointAnalysis& pt, FamilyResult& fr) {
      LieMapCandidate phi = to_lie_map(pt.omega);
      const bool kills = kills_relations(p, lie, phi);
      const bool rank_one = is_essentially_rank_one(a, pt.omega);
      const bool hom1 = kills && has_rank_at_most_one_image(phi);
      if (rank_one) bump(fr, "rank_one");
      if (!kills || rank_one != hom1) {
        fr.failures.push_back({{"point", point_json(pt.omega)}, {"flat", true}, {"kills", kills}, {"rank_one", rank_one}, {"hom1", hom1}});
      }
    });
    r.families.push_back(std::move(nonflat[k]));
  }
  return r;
}

TheoremReport Session::rank_one_criterion() {
  std::vector<std::pair<std::string, const CDGA*>> targets;
  for (const auto& a : fx_.base)
    if (a.algebra.has_zero_differential()) targets.push_back({a.name, &a.algebra});
  for (const auto& p : fx_.products)
    if (p.witness.product.has_zero_differential()) targets.push_back({p.name, &p.witness.product});
  for (const auto& w : fx_.wedges)
    if (w.witness.wedge.has_zero_differential()) targets.push_back({w.name, &w.witness.wedge});
  TheoremReport r{"rank-one-criterion", {}, {}, {}, 0};
  for (const auto& t : targets) r.fixtures.push_back(t.first);
  struct Job {
    std::size_t target, rep;
  };
  std::vector<Job> jobs;
  for (std::size_t t = 0; t < targets.size(); ++t)
    for (std::size_t rp = 0; rp < fx_.reps.size(); ++rp) jobs.push_back({t, rp});
  r.families = parallel_map<FamilyResult>(jobs.size(), [&](std::size_t k) {
    const auto& [name, a] = targets[jobs[k].target];
    const auto& rep = fx_.reps[jobs[k].rep];
    const std::size_t m = rep.rep.lie.dim();
    // Base algebras get the full count; constructions a quarter of it.
    const bool is_base = name.find('-') == std::string::npos;
    const std::size_t n = is_base ? plan_.count : std::max<std::size_t>(plan_.count / 4, 1);
    FamilyResult fr{name, rep.name, "rank-one", 0, {}, json::object()};
    Rng rng = make_rng(plan_.seed, "rank-one-criterion/" + name + "/" + rep.name);
    for (std::size_t s = 0; s < n; ++s) {
      Vec eta = s % 7 == 0 ? Vec(a->dim(1)) : rng.vector(a->dim(1), plan_.height);
      Vec x(m);
      if (s % 5 == 1) {
        x[rng.index(m)] = rng.nonzero_rational(plan_.height);
      } else if (s % 5 != 3) {
        x = rng.vector(m, plan_.height);
      }
      const bool singular = det(rep.rep.apply(x)).is_zero();
      bump(fr, singular ? "singular" : "nonsingular");
      ++fr.count;
      Connection om = Connection::rank_one(eta, x);
      auto b = twisted_betti_numbers(*a, rep.rep, om);
      for (int i = 0; i <= a->q(); ++i) {
        const bool criterion = rank_one_resonance_criterion(*a, rep.rep, eta, x, i);
        const bool direct = b[i] >= 1;
        if (criterion != direct) {
          fr.failures.push_back({{"eta", to_json(Mat::from_rows({eta}, eta.size()))},
                                 {"x", to_json(Mat::from_rows({x}, m))},
                                 {"degree", i},
                                 {"criterion", criterion},
                                 {"direct", direct}});
        }
      }
    }
    return fr;
  });
  return r;
}

TheoremReport Session::lie_cohomology() {
  TheoremReport r{"lie-cohomology", fixture_names(fx_, true, true, true), {}, {}, 0};
  auto refs = all_cells(true, true, true);
  auto cs = cells(refs);
  auto parts = parallel_map<std::vector<FamilyResult>>(refs.size(), [&](std::size_t k) {
    const auto& rep = fx_.reps[refs[k].rep];
    HolonomyPresentation p = holonomy_presentation(algebra_of(refs[k]));
    std::vector<FamilyResult> out;
    per_family(*cs[k], out, [&](const PointAnalysis& pt, FamilyResult& fr) {
      LieMapCandidate phi = to_lie_map(pt.omega);
      for (int i = 0; i <= 1; ++i) {
        const std::size_t lie_side = lie_low_cohomology_dim(p, rep.rep, phi, i);
        if (lie_side != pt.betti[i]) {
          fr.failures.push_back({{"point", point_json(pt.omega)}, {"degree", i}, {"twisted_betti", pt.betti[i]}, {"lie_cohomology", lie_side}});
        }
      }
    });
    return out;
  });
  for (auto& part : parts)
    for (auto& f : part) r.families.push_back(std::move(f));
  r.notes.push_back("pointwise dimension equality asserted for i = 0, 1");
  return r;
}

TheoremReport Session::product_bound() {
  TheoremReport r{"product-bound", fixture_names(fx_, false, true, false), {}, {}, 0};
  auto refs = all_cells(false, true, false);
  auto cs = cells(refs);
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const auto& prod = fx_.products[refs[k].fixture];
    for (int q = 0; q <= prod.witness.product.q(); ++q) {
      std::vector<FamilyResult> part;
      upper_bound_cell(*cs[k], q, part);
      for (auto& f : part) {
        f.stats["degree"] = q;
        r.families.push_back(std::move(f));
      }
    }
  }
  return r;
}

TheoremReport Session::product_equality() {
  TheoremReport r{"product-equality", {}, {}, {}, 0};
  std::vector<NamedProduct> extra;
  extra.push_back({product_name("lambda2", "lambda1"), "lambda2", "lambda1",
                   tensor_product(fx_.algebra("lambda2").algebra, fx_.algebra("lambda1").algebra)});
  std::vector<const NamedProduct*> prods{&extra[0]};
  for (const auto& p : fx_.products)
    if (p.witness.product.has_zero_differential()) prods.push_back(&p);
  std::vector<std::pair<const NamedProduct*, const NamedRep*>> jobs;
  for (const auto* p : prods) {
    r.fixtures.push_back(p->name);
    for (const char* lie : {"sl2", "sol2"}) jobs.push_back({p, &fx_.rep(lie)});
  }
  auto cs = parallel_map<std::shared_ptr<const Cell>>(jobs.size(), [&](std::size_t k) { return product(*jobs[k].first, *jobs[k].second); });
  for (std::size_t k = 0; k < jobs.size(); ++k)
    for (int q = 0; q <= 2; ++q) {
      std::vector<FamilyResult> part;
      equality_cell(*cs[k], q, part);
      for (auto& f : part) {
        f.stats["degree"] = q;
        r.families.push_back(std::move(f));
      }
    }
  return r;
}

TheoremReport Session::trichotomy() {
  TheoremReport r{"trichotomy", fixture_names(fx_, false, true, false), {}, {}, 0};
  std::vector<std::pair<std::size_t, const NamedRep*>> jobs;
  for (std::size_t i = 0; i < fx_.products.size(); ++i)
    for (const char* lie : {"sl2", "sol2"}) jobs.push_back({i, &fx_.rep(lie)});
  auto cs = parallel_map<std::shared_ptr<const Cell>>(jobs.size(), [&](std::size_t k) {
    return product(fx_.products[jobs[k].first], *jobs[k].second);
  });
  for (std::size_t k = 0; k < jobs.size(); ++k) trichotomy_cell(fx_.products[jobs[k].first], *jobs[k].second, *cs[k], r.families);
  return r;
}

TheoremReport Session::presentations() {
  TheoremReport r{"presentations", fixture_names(fx_, false, true, true), {}, {}, 0};
  for (const auto& p : fx_.products) {
    FamilyResult fr{p.name, "", "product-relations", 1, {}, json::object()};
    auto got = holonomy_presentation(p.witness.product);
    auto want = predicted_product_presentation(p.witness);
    const std::size_t cross = cross_relation_count(got, p.witness.left_one_positions(), p.witness.right_one_positions());
    fr.stats["cross_relations"] = cross;
    if (got.gens != want.gens || got.rel_linear != want.rel_linear || got.rel_quadratic != want.rel_quadratic) {
      fr.failures.push_back({{"computed", format_presentation(got)}, {"predicted", format_presentation(want)}});
    }
    if (cross != p.witness.left.dim(1) * p.witness.right.dim(1)) fr.failures.push_back({{"detail", "cross relations missing"}});
    r.families.push_back(std::move(fr));
  }
  for (const auto& w : fx_.wedges) {
    FamilyResult fr{w.name, "", "wedge-relations", 1, {}, json::object()};
    auto got = holonomy_presentation(w.witness.wedge);
    auto want = predicted_wedge_presentation(w.witness);
    const std::size_t cross = cross_relation_count(got, w.witness.left_one_positions(), w.witness.right_one_positions());
    fr.stats["cross_relations"] = cross;
    if (got.gens != want.gens || got.rel_linear != want.rel_linear || got.rel_quadratic != want.rel_quadratic) {
      fr.failures.push_back({{"computed", format_presentation(got)}, {"predicted", format_presentation(want)}});
    }
    if (cross != 0) fr.failures.push_back({{"detail", "wedge presentation has cross relations"}});
    r.families.push_back(std::move(fr));
  }
  return r;
}

TheoremReport Session::wedge_higher() {
  TheoremReport r{"wedge-higher", fixture_names(fx_, false, false, true), {}, {}, 0};
  auto refs = all_cells(false, false, true);
  auto cs = cells(refs);
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const auto& w = fx_.wedges[refs[k].fixture];
    for (int i = 2; i <= w.witness.wedge.q(); ++i) {
      std::vector<FamilyResult> part;
      coproduct_higher_cell(*cs[k], i, part);
      for (auto& f : part) {
        f.stats["degree"] = i;
        r.families.push_back(std::move(f));
      }
    }
  }
  return r;
}

TheoremReport Session::wedge_degree1() {
  TheoremReport r{"wedge-degree1", fixture_names(fx_, false, false, true), {}, {}, 0};
  auto refs = all_cells(false, false, true);
  auto cs = cells(refs);
  for (std::size_t k = 0; k < refs.size(); ++k) {
    const auto& w = fx_.wedges[refs[k].fixture];
    const auto& rep = fx_.reps[refs[k].rep];
    const std::size_t b1 = cohomology_dim(w.witness.left, 1), b1r = cohomology_dim(w.witness.right, 1);
    if (b1 == 0 || b1r == 0 || std::max(b1, b1r) < 2) {
      FamilyResult fr{w.name, rep.name, "hypothesis-unmet", 0, {}, {{"skipped", true}, {"b1", {b1, b1r}}}};
      r.families.push_back(std::move(fr));
      continue;
    }
    coproduct_degree1_cell(w, rep, *cs[k], r.families);
  }
  return r;
}

TheoremReport Session::structural() {
  TheoremReport r{"structural", fixture_names(fx_, true, true, true), {}, {}, 0};
  auto refs = all_cells(true, true, true);
  auto cs = cells(refs);
  auto parts = parallel_map<std::vector<FamilyResult>>(refs.size(), [&](std::size_t k) {
    const CDGA& a = algebra_of(refs[k]);
    const auto& rep = fx_.reps[refs[k].rep];
    const Cell& c = *cs[k];
    std::vector<FamilyResult> out;

    FamilyResult sq{c.fixture, rep.name, "square-zero", 0, {}, json::object()};
    for (const auto& p : c.points) {
      ++sq.count;
      if (!p.square_zero) sq.failures.push_back({{"point", point_json(p.omega)}, {"detail", "d_omega^2 != 0 at a flat point"}});
    }
    out.push_back(std::move(sq));

    if (!is_abelian(rep.rep.lie) && !flat_everywhere(a, rep.rep.lie)) {
      FamilyResult nf{c.fixture, rep.name, "non-flat-witness", 0, {}, json::object()};
      bool found = false;
      for (const auto& om : sample_nonflat(a, rep.rep.lie, plan_, "witness/" + c.fixture + "/" + rep.name)) {
        ++nf.count;
        bool rejected = false;
        try {
          covariant_derivative(a, rep.rep, om);
        } catch (const Error& e) {
          rejected = e.code() == ErrorCode::NotFlat;
        }
        if (!rejected) nf.failures.push_back({{"point", point_json(om)}, {"detail", "non-flat connection accepted"}});
        if (!composites_vanish(aomoto_differentials(a, rep.rep, om))) {
          found = true;
          nf.stats["witness"] = point_json(om);
          break;
        }
      }
      if (!found) nf.failures.push_back({{"detail", "no non-flat point with d_omega^2 != 0"}});
      out.push_back(std::move(nf));
    }

    // Chain-map identity: every basis triple at the first points of each family.
    const std::size_t per_family_points = refs[k].kind == 0 ? 3 : 1;
    FamilyResult ch{c.fixture, rep.name, "module-structure", 0, {}, json::object()};
    std::map<std::string, std::size_t> seen;
    for (const auto& p : c.points) {
      if (seen[p.family]++ >= per_family_points) continue;
      ++ch.count;
      auto res = module_structure_chain_check(a, rep.rep, p.omega);
      ch.stats["triples"] = ch.stats.value("triples", 0) + res.checked;
      if (!res.ok) ch.failures.push_back({{"point", point_json(p.omega)}, {"detail", "chain-map identity fails"}});
    }
    out.push_back(std::move(ch));

    // Depth monotonicity at the first points.
    FamilyResult mono{c.fixture, rep.name, "depth-monotone", 0, {}, json::object()};
    seen.clear();
    for (const auto& p : c.points) {
      if (seen[p.family]++ >= 1) continue;
      ++mono.count;
      for (int i = 0; i <= a.q(); ++i) {
        const std::size_t b = p.betti[i];
        for (std::size_t m = 1; m <= b + 1; ++m) {
          const bool member = in_resonance(a, rep.rep, p.omega, {i, m});
          if (member != (m <= b)) {
            mono.failures.push_back({{"point", point_json(p.omega)}, {"degree", i}, {"depth", m}, {"member", member}});
          }
        }
      }
    }
    out.push_back(std::move(mono));
    return out;
  });
  for (auto& part : parts)
    for (auto& f : part) r.families.push_back(std::move(f));

  for (const auto& p : fx_.products) {
    FamilyResult fr{p.name, "", "kunneth", 1, {}, json::object()};
    auto b = betti_numbers(p.witness.product);
    auto bl = betti_numbers(p.witness.left);
    auto br = betti_numbers(p.witness.right);
    for (int n = 0; n <= p.witness.product.q(); ++n) {
      std::size_t expected = 0;
      for (int i = 0; i <= n; ++i) expected += bl[i] * br[n - i];
      if (b[n] != expected) fr.failures.push_back({{"degree", n}, {"product", b[n]}, {"expected", expected}});
    }
    r.families.push_back(std::move(fr));
  }
  for (const auto& w : fx_.wedges) {
    FamilyResult fr{w.name, "", "wedge-betti", 1, {}, json::object()};
    auto b = betti_numbers(w.witness.wedge);
    auto bl = betti_numbers(w.witness.left);
    auto br = betti_numbers(w.witness.right);
    for (int n = 1; n <= w.witness.wedge.q(); ++n)
      if (b[n] != bl[n] + br[n]) fr.failures.push_back({{"degree", n}, {"wedge", b[n]}, {"expected", bl[n] + br[n]}});
    r.families.push_back(std::move(fr));
  }
  return r;
}

TheoremReport Session::run(const std::string& id) {
  if (id == "fixtures") return fixtures_check();
  if (id == "holonomy-sol2") return holonomy_sol2();
  if (id == "line-resonance") return line_resonance();
  if (id == "gl2-products") return gl2_products();
  if (id == "zero-connection") return zero_connection();
  if (id == "degree0-kernels") return degree0_kernels();
  if (id == "flat-hom") return flat_hom();
  if (id == "rank-one-criterion") return rank_one_criterion();
  if (id == "lie-cohomology") return lie_cohomology();
  if (id == "product-bound") return product_bound();
  if (id == "product-equality") return product_equality();
  if (id == "trichotomy") return trichotomy();
  if (id == "presentations") return presentations();
  if (id == "wedge-higher") return wedge_higher();
  if (id == "wedge-degree1") return wedge_degree1();
  if (id == "structural") return structural();
  throw Error(ErrorCode::InvalidArgument, "unknown check '" + id + "'");
}

TheoremReport timed(const std::string& id, const std::function<TheoremReport()>& body) {
  const auto start = std::chrono::steady_clock::now();
  TheoremReport r;
  try {
    r = body();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument && std::string(e.what()).rfind("unknown check", 0) == 0) throw;
    r.theorem = id;
    r.families.push_back({"", "", "exception", 1, {json{{"code", std::string(to_string(e.code()))}, {"detail", e.what()}}}, json::object()});
  }
  r.theorem = id;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

}  // namespace

bool TheoremReport::pass() const { return failure_count() == 0; }

std::size_t TheoremReport::failure_count() const {
  std::size_t n = 0;
  for (const auto& f : families) n += f.failures.size();
  return n;
}

std::size_t TheoremReport::points(const std::string& fixture, const std::string& lie) const {
  std::size_t n = 0;
  for (const auto& f : families)
    if (f.fixture == fixture && (lie.empty() || f.lie == lie)) n += f.count;
  return n;
}

void TheoremReport::merge(TheoremReport other) {
  for (auto& f : other.fixtures)
    if (std::find(fixtures.begin(), fixtures.end(), f) == fixtures.end()) fixtures.push_back(std::move(f));
  for (auto& f : other.families) families.push_back(std::move(f));
  for (auto& n : other.notes) notes.push_back(std::move(n));
}

json to_json(const TheoremReport& r, bool with_time) {
  json fams = json::array();
  for (const auto& f : r.families) {
    fams.push_back({{"fixture", f.fixture},
                    {"lie", f.lie},
                    {"name", f.name},
                    {"count", f.count},
                    {"failures", f.failures},
                    {"stats", f.stats}});
  }
  json j{{"theorem", r.theorem}, {"fixture", r.fixtures}, {"families", fams}, {"notes", r.notes}, {"pass", r.pass()}};
  if (with_time) j["wall_seconds"] = r.wall_seconds;
  return j;
}

std::string render_text(const TheoremReport& r) {
  std::ostringstream os;
  std::size_t points = 0;
  for (const auto& f : r.families) points += f.count;
  os << r.theorem << ": " << (r.pass() ? "PASS" : "FAIL") << " (" << points << " points, " << r.failure_count()
     << " failures, " << r.wall_seconds << " s)\n";
  for (const auto& f : r.families) {
    std::string cell = f.fixture;
    if (!f.lie.empty()) cell += (cell.empty() ? "" : "/") + f.lie;
    os << "  " << cell << " " << f.name;
    if (f.stats.contains("degree")) os << " [degree " << f.stats["degree"] << "]";
    os << ": " << f.count;
    if (f.stats.value("skipped", false)) os << " (skipped)";
    if (!f.failures.empty()) os << ", " << f.failures.size() << " FAILED";
    os << "\n";
    for (const auto& fail : f.failures) os << "    " << fail.dump() << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

TheoremReport check_res_prod_upper_bound(const NamedProduct& p, const NamedRep& theta, int q, const SamplePlan& plan) {
  if (q < 0 || q > p.witness.product.q()) throw Error(ErrorCode::DegreeOutOfRange, "degree beyond the product truncation");
  TheoremReport r{"product-bound", {p.name, theta.name}, {}, {}, 0};
  upper_bound_cell(analyze_product(p, theta, plan), q, r.families);
  return r;
}

TheoremReport check_res_prod_strictness(const NamedProduct& p, const NamedRep& gl2) {
  TheoremReport r{"product-bound-strict", {p.name, gl2.name}, {}, {}, 0};
  const CDGA& ab = p.witness.product;
  auto verdicts = [&](const Mat& g, const Mat& h) {
    Connection l = Connection::rank_one(Vec{Rat(1)}, gl2_coords(g));
    Connection rr = Connection::rank_one(Vec{Rat(1)}, gl2_coords(h));
    Connection om = merge_connection(p.witness, l, rr);
    const bool flat = is_flat(ab, gl2.rep.lie, om);
    const bool lhs = flat && in_resonance(ab, gl2.rep, om, {0, 1});
    const bool rhs = flat && in_resonance(p.witness.left, gl2.rep, l, {0, 1}) && in_resonance(p.witness.right, gl2.rep, rr, {0, 1});
    return std::pair{lhs, rhs};
  };
  auto add = [&](const char* name, const Mat& g, const Mat& h, bool want_lhs, bool want_rhs) {
    FamilyResult fr{p.name, gl2.name, name, 1, {}, json::object()};
    auto [lhs, rhs] = verdicts(g, h);
    fr.stats["lhs_member"] = lhs;
    fr.stats["rhs_member"] = rhs;
    if (lhs != want_lhs || rhs != want_rhs) {
      fr.failures.push_back({{"g", to_json(g)}, {"h", to_json(h)}, {"lhs_member", lhs}, {"rhs_member", rhs}});
    }
    r.families.push_back(std::move(fr));
  };
  Mat g = Mat::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(0)}});
  Mat h = Mat::from_rows({{Rat(0), Rat(0)}, {Rat(0), Rat(1)}});
  add("witness", g, h, false, true);
  add("shared-kernel", g, g, true, true);
  add("invertible", Mat::identity(2), Mat::from_rows({{Rat(2), Rat(0)}, {Rat(0), Rat(3)}}), false, false);
  return r;
}

TheoremReport check_prodres2_equality(const NamedProduct& p, const NamedRep& theta, int q, const SamplePlan& plan) {
  if (!p.witness.left.has_zero_differential() || !p.witness.right.has_zero_differential()) {
    throw Error(ErrorCode::ZeroDifferentialRequired, "both factors must have zero differential");
  }
  if (theta.rep.lie.name() != "sl2" && theta.rep.lie.name() != "sol2") {
    throw Error(ErrorCode::InvalidArgument, "the equality is stated for sl2 and sol2 only");
  }
  TheoremReport r{"product-equality", {p.name, theta.name}, {}, {}, 0};
  equality_cell(analyze_product(p, theta, plan), q, r.families);
  return r;
}

TheoremReport check_coproduct_higher(const NamedWedge& w, const NamedRep& theta, int i, const SamplePlan& plan) {
  if (i < 2 || i > w.witness.wedge.q()) throw Error(ErrorCode::DegreeOutOfRange, "degree must satisfy 1 < i <= q");
  TheoremReport r{"wedge-higher", {w.name, theta.name}, {}, {}, 0};
  coproduct_higher_cell(analyze_wedge(w, theta, plan), i, r.families);
  return r;
}

TheoremReport check_coproduct_degree1(const NamedWedge& w, const NamedRep& theta, const SamplePlan& plan) {
  const std::size_t b1 = cohomology_dim(w.witness.left, 1), b1r = cohomology_dim(w.witness.right, 1);
  if (b1 == 0 || b1r == 0 || std::max(b1, b1r) < 2) {
    throw Error(ErrorCode::HypothesisUnmet, "needs b1 > 0 on both sides and b1 > 1 on one");
  }
  TheoremReport r{"wedge-degree1", {w.name, theta.name}, {}, {}, 0};
  coproduct_degree1_cell(w, theta, analyze_wedge(w, theta, plan), r.families);
  return r;
}

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids{
      "fixtures",       "holonomy-sol2",  "line-resonance", "gl2-products",  "zero-connection", "degree0-kernels",
      "flat-hom",       "rank-one-criterion", "lie-cohomology", "product-bound", "product-equality", "trichotomy",
      "presentations",  "wedge-higher",   "wedge-degree1",  "structural"};
  return ids;
}

std::vector<std::string> expand_selector(const std::string& selector) {
  std::vector<std::string> out;
  auto add = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  std::stringstream ss(selector);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "all") {
      for (const auto& id : suite_ids()) add(id);
    } else if (item == "examples") {
      for (const char* id : {"holonomy-sol2", "line-resonance", "gl2-products", "zero-connection", "degree0-kernels"}) add(id);
    } else if (std::find(suite_ids().begin(), suite_ids().end(), item) != suite_ids().end()) {
      add(item);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown check '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty suite selector");
  return out;
}

TheoremReport run_check(const std::string& id, const FixtureSet& fixtures, const SamplePlan& plan) {
  Session s(fixtures, plan);
  return timed(id, [&] { return s.run(id); });
}

std::vector<TheoremReport> run_suite(const std::vector<std::string>& ids, const FixtureSet& fixtures, const SamplePlan& plan) {
  Session s(fixtures, plan);
  std::vector<TheoremReport> out;
  for (const auto& id : ids) out.push_back(timed(id, [&] { return s.run(id); }));
  return out;
}

std::vector<TheoremReport> run_golden_examples(const FixtureSet& fixtures, const SamplePlan& plan) {
  return run_suite(expand_selector("examples"), fixtures, plan);
}

unsigned worker_count() {
  if (const char* env = std::getenv("RESLAB_THREADS"); env && *env) {
    int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace reslab
