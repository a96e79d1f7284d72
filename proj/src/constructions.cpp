#include "reslab/constructions.hpp"

#include <algorithm>

#include "reslab/errors.hpp"
#include "reslab/exactlin.hpp"

namespace reslab {

namespace {

std::string product_label(const std::string& l, const std::string& r) {
  if (l == "1") return r;
  if (r == "1") return l;
  return l + "." + r;
}

std::vector<std::vector<std::string>> primed(const CDGA& a) {
  auto labels = a.labels();
  for (std::size_t i = 1; i < labels.size(); ++i)
    for (auto& s : labels[i]) s += "'";
  return labels;
}

int resolve_truncation(const CDGA& a, const CDGA& abar, std::optional<int> q) {
  const int qmin = std::min(a.q(), abar.q());
  if (!q) return qmin;
  if (*q > qmin || *q < 0) {
    throw Error(ErrorCode::TruncationMismatch, "requested truncation " + std::to_string(*q) +
                                                   " exceeds the factors' common truncation " + std::to_string(qmin));
  }
  return *q;
}

}  // namespace

std::size_t ProductWitness::index_of(int degree, ProductIndex idx) const {
  const auto& b = basis.at(degree);
  auto it = std::find(b.begin(), b.end(), idx);
  if (it == b.end()) throw Error(ErrorCode::InvalidArgument, "no such product basis element");
  return static_cast<std::size_t>(it - b.begin());
}

std::vector<std::size_t> ProductWitness::left_one_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < left.dim(1); ++k) out.push_back(index_of(1, {1, k, 0}));
  return out;
}

std::vector<std::size_t> ProductWitness::right_one_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < right.dim(1); ++k) out.push_back(index_of(1, {0, 0, k}));
  return out;
}

ProductWitness tensor_product(const CDGA& a, const CDGA& abar, std::optional<int> q_request) {
  const int q = resolve_truncation(a, abar, q_request);
  const int top = q + 1;
  ProductWitness w;
  w.left = a;
  w.right = abar;
  auto right_labels = primed(abar);
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  for (int n = 0; n <= top; ++n) {
    std::vector<ProductIndex> idx;
    std::vector<std::string> lab;
    for (int i = 0; i <= n; ++i)
      for (std::size_t x = 0; x < a.dim(i); ++x)
        for (std::size_t y = 0; y < abar.dim(n - i); ++y) {
          idx.push_back({i, x, y});
          lab.push_back(product_label(a.label(i, x), right_labels[n - i][y]));
        }
    dims.push_back(idx.size());
    labels.push_back(std::move(lab));
    w.basis.push_back(std::move(idx));
  }
  CDGA p(q, dims, labels);

  // Position lookup: (n, i, x, y) -> index.
  auto pos = [&](int n, int i, std::size_t x, std::size_t y) {
    std::size_t off = 0;
    for (int k = 0; k < i; ++k) off += a.dim(k) * abar.dim(n - k);
    return off + x * abar.dim(n - i) + y;
  };

  // (x (x) xbar)(y (x) ybar) = (-1)^{|xbar||y|} xy (x) xbar ybar
  for (int n1 = 0; n1 <= top; ++n1)
    for (int n2 = 0; n1 + n2 <= top; ++n2)
      for (std::size_t s = 0; s < dims[n1]; ++s)
        for (std::size_t t = 0; t < dims[n2]; ++t) {
          const ProductIndex u = w.basis[n1][s];
          const ProductIndex v = w.basis[n2][t];
          const int i1 = u.left_degree, j1 = n1 - i1;
          const int i2 = v.left_degree, j2 = n2 - i2;
          Vec left = a.product(i1, u.left, i2, v.left);
          Vec right = abar.product(j1, u.right, j2, v.right);
          Vec out(dims[n1 + n2]);
          const Rat sign = (j1 * i2) % 2 == 0 ? Rat(1) : Rat(-1);
          for (std::size_t x = 0; x < left.size(); ++x) {
            if (left[x].is_zero()) continue;
            for (std::size_t y = 0; y < right.size(); ++y) {
              if (right[y].is_zero()) continue;
              out[pos(n1 + n2, i1 + i2, x, y)] += sign * left[x] * right[y];
            }
          }
          p.set_product(n1, s, n2, t, out);
        }

  // D(x (x) xbar) = dx (x) xbar + (-1)^{|x|} x (x) dbar xbar
  for (int n = 0; n <= q; ++n) {
    Mat d(dims[n + 1], dims[n]);
    for (std::size_t s = 0; s < dims[n]; ++s) {
      const ProductIndex u = w.basis[n][s];
      const int i = u.left_degree, j = n - i;
      const Mat& da = a.diff(i);
      for (std::size_t x = 0; x < a.dim(i + 1); ++x)
        if (!da(x, u.left).is_zero()) d(pos(n + 1, i + 1, x, u.right), s) += da(x, u.left);
      const Mat& db = abar.diff(j);
      const Rat sign = i % 2 == 0 ? Rat(1) : Rat(-1);
      for (std::size_t y = 0; y < abar.dim(j + 1); ++y)
        if (!db(y, u.right).is_zero()) d(pos(n + 1, i, u.left, y), s) += sign * db(y, u.right);
    }
    p.set_diff(n, std::move(d));
  }
  w.product = std::move(p);
  return w;
}

std::size_t WedgeWitness::index_of(int degree, WedgeIndex idx) const {
  const auto& b = basis.at(degree);
  auto it = std::find(b.begin(), b.end(), idx);
  if (it == b.end()) throw Error(ErrorCode::InvalidArgument, "no such wedge basis element");
  return static_cast<std::size_t>(it - b.begin());
}

std::vector<std::size_t> WedgeWitness::left_one_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < left.dim(1); ++k) out.push_back(index_of(1, {WedgeSide::Left, k}));
  return out;
}

std::vector<std::size_t> WedgeWitness::right_one_positions() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < right.dim(1); ++k) out.push_back(index_of(1, {WedgeSide::Right, k}));
  return out;
}

WedgeWitness wedge_sum(const CDGA& a, const CDGA& abar, std::optional<int> q_request) {
  const int q = resolve_truncation(a, abar, q_request);
  const int top = q + 1;
  WedgeWitness w;
  w.left = a;
  w.right = abar;
  auto right_labels = primed(abar);
  std::vector<std::size_t> dims{1};
  std::vector<std::vector<std::string>> labels{{"1"}};
  w.basis.emplace_back();
  for (int n = 1; n <= top; ++n) {
    std::vector<WedgeIndex> idx;
    std::vector<std::string> lab;
    for (std::size_t x = 0; x < a.dim(n); ++x) {
      idx.push_back({WedgeSide::Left, x});
      lab.push_back(a.label(n, x));
    }
    for (std::size_t y = 0; y < abar.dim(n); ++y) {
      idx.push_back({WedgeSide::Right, y});
      lab.push_back(right_labels[n][y]);
    }
    dims.push_back(idx.size());
    labels.push_back(std::move(lab));
    w.basis.push_back(std::move(idx));
  }
  CDGA p(q, dims, labels);
  for (int n = 0; n <= top; ++n)
    for (std::size_t s = 0; s < dims[n]; ++s) {
      Vec e(dims[n]);
      e[s] = 1;
      p.set_product(0, 0, n, s, e);
      p.set_product(n, s, 0, 0, e);
    }
  for (int n1 = 1; n1 <= top; ++n1)
    for (int n2 = 1; n1 + n2 <= top; ++n2) {
      for (std::size_t x = 0; x < a.dim(n1); ++x)
        for (std::size_t y = 0; y < a.dim(n2); ++y) {
          Vec v = a.product(n1, x, n2, y);
          Vec out(dims[n1 + n2]);
          for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k];
          p.set_product(n1, x, n2, y, out);
        }
      const std::size_t off1 = a.dim(n1), off2 = a.dim(n2), off = a.dim(n1 + n2);
      for (std::size_t x = 0; x < abar.dim(n1); ++x)
        for (std::size_t y = 0; y < abar.dim(n2); ++y) {
          Vec v = abar.product(n1, x, n2, y);
          Vec out(dims[n1 + n2]);
          for (std::size_t k = 0; k < v.size(); ++k) out[off + k] = v[k];
          p.set_product(n1, off1 + x, n2, off2 + y, out);
        }
    }
  for (int n = 0; n <= q; ++n) {
    Mat d(dims[n + 1], dims[n]);
    d.set_block(0, 0, a.diff(n));
    d.add_block(a.dim(n + 1), n == 0 ? 0 : a.dim(n), abar.diff(n));
    p.set_diff(n, std::move(d));
  }
  w.wedge = std::move(p);
  return w;
}

namespace {

template <class W>
SplitConnection split_impl(const W& w, const CDGA& whole, const Connection& omega) {
  if (omega.coeffs.rows() != whole.dim(1)) throw Error(ErrorCode::ShapeMismatch, "connection does not live on the construction");
  const std::size_t g = omega.coeffs.cols();
  SplitConnection out{Connection{Mat(w.left.dim(1), g)}, Connection{Mat(w.right.dim(1), g)}};
  auto lp = w.left_one_positions();
  auto rp = w.right_one_positions();
  for (std::size_t k = 0; k < lp.size(); ++k)
    for (std::size_t c = 0; c < g; ++c) out.left.coeffs(k, c) = omega.coeffs(lp[k], c);
  for (std::size_t k = 0; k < rp.size(); ++k)
    for (std::size_t c = 0; c < g; ++c) out.right.coeffs(k, c) = omega.coeffs(rp[k], c);
  return out;
}

template <class W>
Connection merge_impl(const W& w, const CDGA& whole, const Connection& left, const Connection& right) {
  if (left.coeffs.rows() != w.left.dim(1) || right.coeffs.rows() != w.right.dim(1) ||
      left.coeffs.cols() != right.coeffs.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "connection pieces do not match the factors");
  }
  const std::size_t g = left.coeffs.cols();
  Connection out{Mat(whole.dim(1), g)};
  auto lp = w.left_one_positions();
  auto rp = w.right_one_positions();
  for (std::size_t k = 0; k < lp.size(); ++k)
    for (std::size_t c = 0; c < g; ++c) out.coeffs(lp[k], c) = left.coeffs(k, c);
  for (std::size_t k = 0; k < rp.size(); ++k)
    for (std::size_t c = 0; c < g; ++c) out.coeffs(rp[k], c) = right.coeffs(k, c);
  return out;
}

}  // namespace

SplitConnection split_connection(const ProductWitness& w, const Connection& omega) {
  return split_impl(w, w.product, omega);
}
SplitConnection split_connection(const WedgeWitness& w, const Connection& omega) {
  return split_impl(w, w.wedge, omega);
}
Connection merge_connection(const ProductWitness& w, const Connection& left, const Connection& right) {
  return merge_impl(w, w.product, left, right);
}
Connection merge_connection(const WedgeWitness& w, const Connection& left, const Connection& right) {
  return merge_impl(w, w.wedge, left, right);
}

std::string to_string(Trichotomy t) {
  switch (t) {
    case Trichotomy::LeftOnly: return "left-only";
    case Trichotomy::RightOnly: return "right-only";
    case Trichotomy::RankOne: return "rank-one";
  }
  return "?";
}

Trichotomy trichotomy_classify(const ProductWitness& w, const LieAlgebra& g, const Connection& omega) {
  if (g.name() != "sl2" && g.name() != "sol2") {
    throw Error(ErrorCode::InvalidArgument, "trichotomy only holds for sl2 and sol2, got " + g.name());
  }
  if (!is_flat(w.product, g, omega)) throw Error(ErrorCode::NotFlat, "trichotomy needs a flat connection");
  if (rank(omega.coeffs) <= 1) return Trichotomy::RankOne;
  auto parts = split_connection(w, omega);
  if (parts.right.coeffs.is_zero()) return Trichotomy::LeftOnly;
  if (parts.left.coeffs.is_zero()) return Trichotomy::RightOnly;
  throw Error(ErrorCode::ClassificationFailure,
              "flat connection with both sides nonzero and rank > 1: " + omega.coeffs.str());
}

}  // namespace reslab
