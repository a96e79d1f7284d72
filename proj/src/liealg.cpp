#include "reslab/liealg.hpp"

#include <cctype>

#include "reslab/errors.hpp"

namespace reslab {

LieAlgebra::LieAlgebra(std::string name, std::size_t dim, std::vector<std::string> labels)
    : name_(std::move(name)), dim_(dim), labels_(std::move(labels)), table_(dim, dim * dim) {
  if (labels_.empty())
    for (std::size_t k = 0; k < dim; ++k) labels_.push_back("x" + std::to_string(k + 1));
  if (labels_.size() != dim) throw Error(ErrorCode::ShapeMismatch, "label count mismatch");
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const Vec& value) {
  if (i >= dim_ || j >= dim_ || value.size() != dim_) throw Error(ErrorCode::ShapeMismatch, "bracket entry out of range");
  for (std::size_t r = 0; r < dim_; ++r) table_(r, i * dim_ + j) = value[r];
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw Error(ErrorCode::ShapeMismatch, "Lie element has the wrong length");
  Vec out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (y[j].is_zero()) continue;
      const Rat c = x[i] * y[j];
      for (std::size_t r = 0; r < dim_; ++r) {
        const Rat& t = table_(r, i * dim_ + j);
        if (!t.is_zero()) out[r] += c * t;
      }
    }
  }
  return out;
}

Mat LieAlgebra::ad(const Vec& x) const {
  Mat m(dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Vec e(dim_);
    e[j] = 1;
    Vec col = bracket(x, e);
    for (std::size_t r = 0; r < dim_; ++r) m(r, j) = col[r];
  }
  return m;
}

Mat Representation::apply(const Vec& x) const {
  if (x.size() != lie.dim()) throw Error(ErrorCode::ShapeMismatch, "Lie element has the wrong length");
  Mat out(v_dim, v_dim);
  for (std::size_t k = 0; k < x.size(); ++k) out.add_block(0, 0, mats[k], x[k]);
  return out;
}

namespace {

Vec unit(std::size_t n, std::size_t k) {
  Vec v(n);
  v[k] = 1;
  return v;
}

}  // namespace

LieReport validate_lie(const LieAlgebra& g) {
  LieReport rep;
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (g.bracket(i, j) != scale(g.bracket(j, i), Rat(-1)))
        rep.violations.push_back({"antisymmetry", {i, j}, "[x_i,x_j] != -[x_j,x_i]"});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec xi = unit(n, i), xj = unit(n, j), xk = unit(n, k);
        Vec s = g.bracket(xi, g.bracket(xj, xk));
        s = add(s, g.bracket(xj, g.bracket(xk, xi)));
        s = add(s, g.bracket(xk, g.bracket(xi, xj)));
        if (!is_zero(s)) rep.violations.push_back({"Jacobi", {i, j, k}, "cyclic sum is nonzero"});
      }
  return rep;
}

LieReport validate_rep(const Representation& r) {
  LieReport rep;
  const std::size_t n = r.lie.dim();
  if (r.v_dim == 0) rep.violations.push_back({"nonzero module", {}, "dim V = 0"});
  if (r.mats.size() != n) {
    rep.violations.push_back({"shape", {}, "one matrix per basis element required"});
    return rep;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (r.mats[k].rows() != r.v_dim || r.mats[k].cols() != r.v_dim) {
      rep.violations.push_back({"shape", {k}, "matrix is not dim V x dim V"});
      return rep;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat lhs = r.apply(r.lie.bracket(i, j));
      Mat rhs = r.mats[i] * r.mats[j] - r.mats[j] * r.mats[i];
      if (lhs != rhs) rep.violations.push_back({"homomorphism", {i, j}, "theta([x,y]) != [theta x, theta y]"});
    }
  return rep;
}

bool commutes(const Vec& x, const Vec& y, const LieAlgebra& g) { return is_zero(g.bracket(x, y)); }

namespace {

Mat elementary(std::size_t n, std::size_t i, std::size_t j, const Rat& v = Rat(1)) {
  Mat m(n, n);
  m(i, j) = v;
  return m;
}

Representation make_abelian(std::size_t n) {
  LieAlgebra g("abelian" + std::to_string(n), n);
  Representation r{g, n, {}, "diagonal"};
  for (std::size_t k = 0; k < n; ++k) r.mats.push_back(elementary(n, k, k));
  return r;
}

Representation make_sl2() {
  LieAlgebra g("sl2", 3, {"e", "f", "h"});
  // [h,e] = 2e, [h,f] = -2f, [e,f] = h
  g.set_bracket(2, 0, {2, 0, 0});
  g.set_bracket(0, 2, {-2, 0, 0});
  g.set_bracket(2, 1, {0, -2, 0});
  g.set_bracket(1, 2, {0, 2, 0});
  g.set_bracket(0, 1, {0, 0, 1});
  g.set_bracket(1, 0, {0, 0, -1});
  Representation r{g, 2, {}, "standard"};
  r.mats.push_back(elementary(2, 0, 1));
  r.mats.push_back(elementary(2, 1, 0));
  r.mats.push_back(Mat::from_rows({{1, 0}, {0, -1}}));
  return r;
}

Representation make_sol2() {
  LieAlgebra g("sol2", 2, {"a", "b"});
  g.set_bracket(0, 1, {0, 1});
  g.set_bracket(1, 0, {0, -1});
  Representation r{g, 2, {}, "standard"};
  r.mats.push_back(elementary(2, 0, 0));
  r.mats.push_back(elementary(2, 0, 1));
  return r;
}

Representation make_gl2() {
  LieAlgebra g("gl2", 4, {"E11", "E12", "E21", "E22"});
  Representation r{g, 2, {}, "identity"};
  for (std::size_t k = 0; k < 4; ++k) r.mats.push_back(elementary(2, k / 2, k % 2));
  // Structure constants are read off the defining representation.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      Mat c = r.mats[i] * r.mats[j] - r.mats[j] * r.mats[i];
      g.set_bracket(i, j, {c(0, 0), c(0, 1), c(1, 0), c(1, 1)});
    }
  r.lie = g;
  return r;
}

bool parse_abelian(const std::string& name, std::size_t& n) {
  std::string digits;
  if (name.rfind("abelian(", 0) == 0 && name.back() == ')') {
    digits = name.substr(8, name.size() - 9);
  } else if (name.rfind("abelian", 0) == 0) {
    digits = name.substr(7);
  } else {
    return false;
  }
  if (digits.empty() || digits.size() > 3) return false;
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  n = std::stoul(digits);
  return n > 0;
}

}  // namespace

Representation builtin(const std::string& name) {
  if (name == "sl2") return make_sl2();
  if (name == "sol2") return make_sol2();
  if (name == "gl2") return make_gl2();
  std::size_t n = 0;
  if (parse_abelian(name, n)) return make_abelian(n);
  throw Error(ErrorCode::UnknownName, "no built-in Lie algebra named '" + name + "'");
}

Representation adjoint(const LieAlgebra& g) {
  Representation r{g, g.dim(), {}, "adjoint"};
  for (std::size_t k = 0; k < g.dim(); ++k) r.mats.push_back(g.ad(unit(g.dim(), k)));
  return r;
}

std::vector<Vec> commuting_basis(const LieAlgebra& g) {
  std::vector<Vec> picked;
  for (std::size_t k = 0; k < g.dim(); ++k) {
    Vec x = unit(g.dim(), k);
    bool ok = true;
    for (const auto& y : picked) ok = ok && commutes(x, y, g);
    if (ok) picked.push_back(std::move(x));
  }
  return picked;
}

}  // namespace reslab
