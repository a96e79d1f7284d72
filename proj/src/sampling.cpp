#include "reslab/sampling.hpp"

#include <limits>

#include "reslab/exactlin.hpp"

namespace reslab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Vec unit(std::size_t n, std::size_t k, const Rat& c = Rat(1)) {
  Vec v(n);
  v[k] = c;
  return v;
}

Vec random_lie_element(Rng& rng, std::size_t n, int height) {
  switch (rng.uniform_int(0, 3)) {
    case 0:
      return unit(n, rng.index(n), rng.nonzero_rational(height));
    case 1: {
      Vec v = unit(n, rng.index(n), rng.nonzero_rational(height));
      v[rng.index(n)] += rng.nonzero_rational(height);
      return v;
    }
    default:
      return rng.vector(n, height);
  }
}

Vec random_combination(Rng& rng, const std::vector<Vec>& basis, std::size_t n, int height) {
  Vec v(n);
  if (basis.empty()) return v;
  if (rng.chance(1, 4)) return scale(basis[rng.index(basis.size())], rng.nonzero_rational(height));
  for (const auto& b : basis) axpy(v, rng.rational(height), b);
  return v;
}

void set_row(Mat& m, std::size_t r, const Vec& v) {
  for (std::size_t k = 0; k < v.size(); ++k) m(r, k) = v[k];
}

Connection apply_automorphism(const Connection& c, const Mat& sigma) { return {c.coeffs * sigma.transpose()}; }

bool is_abelian(const LieAlgebra& g) { return g.table().is_zero(); }

struct FamilyBuilder {
  const CDGA& a;
  const LieAlgebra& g;
  const SamplePlan& plan;
  Rng rng;

  PointFamily finish(std::string name, std::vector<Connection> candidates, std::size_t rejected) {
    PointFamily fam{std::move(name), {}, rejected};
    for (auto& c : candidates) {
      if (is_flat(a, g, c)) {
        fam.points.push_back(std::move(c));
      } else {
        ++fam.rejected;
      }
    }
    return fam;
  }

  PointFamily rank_one() {
    auto closed = closed_one_forms(a);
    std::vector<Connection> out;
    if (closed.empty() || g.dim() == 0) return finish("rank-one", {}, 0);
    for (std::size_t k = 0; k < plan.count; ++k) {
      Vec eta = random_combination(rng, closed, a.dim(1), plan.height);
      if (k == 0) eta = Vec(a.dim(1));
      out.push_back(Connection::rank_one(eta, random_lie_element(rng, g.dim(), plan.height)));
    }
    return finish("rank-one", std::move(out), 0);
  }

  PointFamily abelian() {
    auto closed = closed_one_forms(a);
    auto span = commuting_basis(g);
    if (closed.size() < 2 || span.size() < 2) return finish("abelian", {}, 0);
    std::vector<Connection> out;
    for (std::size_t k = 0; k < plan.count; ++k) {
      Mat c(a.dim(1), g.dim());
      std::size_t terms = 2 + rng.index(std::min(closed.size(), span.size()) - 1);
      for (std::size_t s = 0; s < terms; ++s) {
        Vec eta = random_combination(rng, closed, a.dim(1), plan.height);
        Vec h = random_combination(rng, span, g.dim(), plan.height);
        c += Connection::rank_one(eta, h).coeffs;
      }
      out.push_back(apply_automorphism({c}, random_inner_automorphism(rng, g, plan.height)));
    }
    return finish("abelian", std::move(out), 0);
  }

  PointFamily solved() {
    if (a.q() < 1 || g.dim() == 0 || a.dim(1) == 0) return finish("solved", {}, 0);
    HolonomyPresentation p = holonomy_presentation(a);
    const std::size_t n = p.gens;
    const std::size_t m = g.dim();
    auto bracket_linked = [&](std::size_t j, std::size_t k) {
      for (const auto& q : p.rel_quadratic)
        if (!q(j, k).is_zero()) return true;
      return false;
    };
    // Generators left free of bracket terms among themselves: solved for linearly.
    std::vector<bool> solved_for(n, false);
    for (std::size_t j = n; j-- > 0;) {
      bool ok = true;
      for (std::size_t k = 0; k < n && ok; ++k)
        if (solved_for[k] && bracket_linked(j, k)) ok = false;
      solved_for[j] = ok;
    }
    // Scales that make ad_{y_s} hit the eigenvalue a single relation asks for.
    std::vector<Rat> targets;
    for (std::size_t b = 0; b < p.relation_count(); ++b)
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = 0; t < n; ++t)
          if (!solved_for[s] && solved_for[t] && !p.rel_quadratic[b](s, t).is_zero()) {
            Rat lambda = -p.rel_linear(b, t) / p.rel_quadratic[b](s, t);
            if (!lambda.is_zero()) targets.push_back(lambda);
          }
    std::vector<std::vector<Rat>> eigen(m);
    static const std::vector<Rat> candidates{Rat(1), Rat(-1), Rat(2), Rat(-2), Rat(3), Rat(-3), Rat(1, 2), Rat(-1, 2)};
    for (std::size_t k = 0; k < m; ++k) {
      Mat ad = g.ad(unit(m, k));
      for (const auto& mu : candidates)
        if (rank(ad - Mat::identity(m) * mu) < m) eigen[k].push_back(mu);
    }

    auto flat_residual = [&](const Mat& c) {
      Mat f = curvature(a, g, {c});
      return Vec(f.data().begin(), f.data().end());
    };

    std::vector<Connection> out;
    std::size_t rejected = 0;
    for (std::size_t attempt = 0; out.size() < plan.count && attempt < 6 * plan.count; ++attempt) {
      Mat c(n, m);
      for (std::size_t s = 0; s < n; ++s) {
        if (solved_for[s]) continue;
        auto roll = rng.uniform_int(0, 9);
        if (roll < 2) continue;
        if (roll < 4) {
          set_row(c, s, rng.vector(m, plan.height));
          continue;
        }
        std::size_t k = rng.index(m);
        Rat scale_by = rng.nonzero_rational(plan.height);
        if (!targets.empty() && !eigen[k].empty() && rng.chance(2, 3)) {
          scale_by = targets[rng.index(targets.size())] / eigen[k][rng.index(eigen[k].size())];
        }
        set_row(c, s, unit(m, k, scale_by));
      }
      std::vector<std::size_t> unknowns;
      for (std::size_t t = 0; t < n; ++t)
        if (solved_for[t]) unknowns.push_back(t);
      Vec base = flat_residual(c);
      Mat lin(base.size(), unknowns.size() * m);
      for (std::size_t u = 0; u < unknowns.size(); ++u)
        for (std::size_t k = 0; k < m; ++k) {
          Mat probe = c;
          probe(unknowns[u], k) += Rat(1);
          Vec r = flat_residual(probe);
          for (std::size_t e = 0; e < r.size(); ++e) lin(e, u * m + k) = r[e] - base[e];
        }
      auto z = solve(lin, scale(base, Rat(-1)));
      if (!z) {
        ++rejected;
        continue;
      }
      for (const auto& kv : kernel_basis(lin))
        if (rng.chance(1, 2)) axpy(*z, rng.rational(plan.height), kv);
      for (std::size_t u = 0; u < unknowns.size(); ++u)
        for (std::size_t k = 0; k < m; ++k) c(unknowns[u], k) = (*z)[u * m + k];
      out.push_back(apply_automorphism({c}, random_inner_automorphism(rng, g, plan.height)));
    }
    return finish("solved", std::move(out), rejected);
  }
};

std::vector<Connection> pool_of(const std::vector<PointFamily>& fams) {
  std::vector<Connection> pool;
  for (const auto& f : fams) pool.insert(pool.end(), f.points.begin(), f.points.end());
  return pool;
}

std::vector<PointFamily> plain_families(const CDGA& a, const LieAlgebra& g, const SamplePlan& plan, Rng rng) {
  FamilyBuilder fb{a, g, plan, rng};
  std::vector<PointFamily> out;
  out.push_back(fb.rank_one());
  out.push_back(fb.abelian());
  out.push_back(fb.solved());
  return out;
}

std::string sub(std::string_view stream, const char* part) { return std::string(stream) + "/" + part; }

}  // namespace

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return static_cast<std::int64_t>(eng_());
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

Rat Rng::rational(int height) {
  auto p = uniform_int(-height, height);
  auto q = uniform_int(1, height);
  return Rat(static_cast<long>(p), static_cast<long>(q));
}

Rat Rng::nonzero_rational(int height) {
  Rat r;
  do {
    r = rational(height);
  } while (r.is_zero());
  return r;
}

Vec Rng::vector(std::size_t n, int height) {
  Vec v(n);
  for (auto& x : v) x = rational(height);
  return v;
}

std::uint64_t stream_id(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng make_rng(std::uint64_t seed, std::string_view label) { return Rng(splitmix64(seed ^ splitmix64(stream_id(label)))); }

Mat random_inner_automorphism(Rng& rng, const LieAlgebra& g, int height) {
  const std::size_t m = g.dim();
  Mat sigma = Mat::identity(m);
  std::vector<Mat> nilpotent;
  for (std::size_t k = 0; k < m; ++k) {
    Mat ad = g.ad(unit(m, k));
    if (ad.is_zero()) continue;
    Mat power = ad;
    for (std::size_t e = 1; e < m && !power.is_zero(); ++e) power = power * ad;
    if (power.is_zero()) nilpotent.push_back(ad);
  }
  if (nilpotent.empty()) return sigma;
  const std::size_t factors = rng.index(4);
  const int h = std::min(height, 2);
  for (std::size_t f = 0; f < factors; ++f) {
    Mat n = nilpotent[rng.index(nilpotent.size())] * rng.nonzero_rational(h);
    Mat term = Mat::identity(m);
    Mat e = Mat::identity(m);
    for (long k = 1; !term.is_zero() && k <= static_cast<long>(m); ++k) {
      term = term * n * Rat(1, k);
      e += term;
    }
    sigma = e * sigma;
  }
  return sigma;
}

std::vector<PointFamily> sample_flat(const CDGA& a, const LieAlgebra& g, const SamplePlan& plan, std::string_view stream) {
  return plain_families(a, g, plan, make_rng(plan.seed, stream));
}

std::vector<PointFamily> sample_flat(const ProductWitness& w, const LieAlgebra& g, const SamplePlan& plan,
                                     std::string_view stream) {
  Rng rng = make_rng(plan.seed, stream);
  const CDGA& ab = w.product;
  auto left = pool_of(sample_flat(w.left, g, plan, sub(stream, "left")));
  auto right = pool_of(sample_flat(w.right, g, plan, sub(stream, "right")));
  Connection zl = Connection::zero(w.left, g);
  Connection zr = Connection::zero(w.right, g);
  FamilyBuilder fb{ab, g, plan, make_rng(plan.seed, sub(stream, "product"))};

  std::vector<PointFamily> out;
  std::vector<Connection> cand;
  for (std::size_t k = 0; k < plan.count && !left.empty(); ++k) cand.push_back(merge_connection(w, left[rng.index(left.size())], zr));
  out.push_back(fb.finish("left-only", std::move(cand), 0));
  cand.clear();
  for (std::size_t k = 0; k < plan.count && !right.empty(); ++k) cand.push_back(merge_connection(w, zl, right[rng.index(right.size())]));
  out.push_back(fb.finish("right-only", std::move(cand), 0));
  out.push_back(fb.rank_one());

  cand.clear();
  if (is_abelian(g)) {
    for (std::size_t k = 0; k < plan.count && !left.empty() && !right.empty(); ++k)
      cand.push_back(merge_connection(w, left[rng.index(left.size())], right[rng.index(right.size())]));
  } else if (auto span = commuting_basis(g); span.size() >= 2) {
    auto cl = closed_one_forms(w.left);
    auto cr = closed_one_forms(w.right);
    for (std::size_t k = 0; k < plan.count && !cl.empty() && !cr.empty(); ++k) {
      Mat l(w.left.dim(1), g.dim());
      Mat r(w.right.dim(1), g.dim());
      for (int s = 0; s < 2; ++s) {
        l += Connection::rank_one(random_combination(rng, cl, w.left.dim(1), plan.height),
                                  random_combination(rng, span, g.dim(), plan.height)).coeffs;
        r += Connection::rank_one(random_combination(rng, cr, w.right.dim(1), plan.height),
                                  random_combination(rng, span, g.dim(), plan.height)).coeffs;
      }
      cand.push_back(apply_automorphism(merge_connection(w, {l}, {r}), random_inner_automorphism(rng, g, plan.height)));
    }
  }
  out.push_back(fb.finish("commuting", std::move(cand), 0));
  out.push_back(fb.solved());
  return out;
}

std::vector<PointFamily> sample_flat(const WedgeWitness& w, const LieAlgebra& g, const SamplePlan& plan,
                                     std::string_view stream) {
  Rng rng = make_rng(plan.seed, stream);
  auto left = pool_of(sample_flat(w.left, g, plan, sub(stream, "left")));
  auto right = pool_of(sample_flat(w.right, g, plan, sub(stream, "right")));
  Connection zl = Connection::zero(w.left, g);
  Connection zr = Connection::zero(w.right, g);
  FamilyBuilder fb{w.wedge, g, plan, make_rng(plan.seed, sub(stream, "wedge"))};

  std::vector<PointFamily> out;
  std::vector<Connection> cand;
  for (std::size_t k = 0; k < plan.count && !left.empty() && !right.empty(); ++k)
    cand.push_back(merge_connection(w, left[rng.index(left.size())], right[rng.index(right.size())]));
  out.push_back(fb.finish("merged", std::move(cand), 0));
  cand.clear();
  for (std::size_t k = 0; k < plan.count; ++k) {
    if (k % 2 == 0 && !left.empty()) cand.push_back(merge_connection(w, left[rng.index(left.size())], zr));
    if (k % 2 == 1 && !right.empty()) cand.push_back(merge_connection(w, zl, right[rng.index(right.size())]));
  }
  out.push_back(fb.finish("one-sided", std::move(cand), 0));
  out.push_back(fb.rank_one());
  out.push_back(fb.solved());
  return out;
}

std::vector<Connection> sample_nonflat(const CDGA& a, const LieAlgebra& g, const SamplePlan& plan, std::string_view stream) {
  std::vector<Connection> out;
  if (a.q() < 1 || a.dim(2) == 0 || a.dim(1) == 0 || g.dim() == 0) return out;
  if (is_abelian(g) && a.diff(1).is_zero()) return out;
  Rng rng = make_rng(plan.seed, stream);
  auto flat = pool_of(sample_flat(a, g, plan, sub(stream, "seed-points")));
  for (std::size_t attempt = 0; out.size() < plan.nonflat && attempt < 20 * plan.nonflat; ++attempt) {
    Connection c;
    if (attempt % 2 == 1 && !flat.empty()) {
      c = flat[rng.index(flat.size())];
      c.coeffs(rng.index(a.dim(1)), rng.index(g.dim())) += rng.nonzero_rational(plan.height);
    } else {
      c.coeffs = Mat(a.dim(1), g.dim());
      for (std::size_t j = 0; j < a.dim(1); ++j)
        for (std::size_t k = 0; k < g.dim(); ++k)
          if (rng.chance(1, 2)) c.coeffs(j, k) = rng.rational(plan.height);
    }
    if (!is_flat(a, g, c)) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace reslab
