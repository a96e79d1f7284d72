#include "reslab/serialize.hpp"

#include <fstream>
#include <sstream>

#include "reslab/errors.hpp"

namespace reslab {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    // Shape errors raised while assembling a document are malformed input.
    if (e.code() == ErrorCode::Parse) throw;
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::Parse, std::string(what) + ": " + e.what());
  }
}

json sparse_vector(const Vec& v) {
  json out = json::array();
  for (std::size_t k = 0; k < v.size(); ++k)
    if (!v[k].is_zero()) out.push_back(json::array({to_json(v[k]), k}));
  return out;
}

Vec dense_vector(const json& j, std::size_t n) {
  Vec v(n);
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::Parse, "sparse entry must be [\"p/q\", index]");
    std::size_t k = e.at(1).get<std::size_t>();
    if (k >= n) throw Error(ErrorCode::Parse, "sparse index " + std::to_string(k) + " out of range");
    v[k] += rat_from_json(e.at(0));
  }
  return v;
}

std::size_t checked_index(const json& j, const char* key, std::size_t bound) {
  std::size_t v = j.at(key).get<std::size_t>();
  if (v >= bound) throw Error(ErrorCode::Parse, std::string("index '") + key + "' out of range");
  return v;
}

}  // namespace

json to_json(const Rat& r) { return r.str(); }

Rat rat_from_json(const json& j) {
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw Error(ErrorCode::Parse, "rational must be a string \"p/q\"");
}

json to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const json& j, std::size_t rows, std::size_t cols) {
  return guarded("matrix", [&] {
    if (!j.is_array() || j.size() != rows) throw Error(ErrorCode::Parse, "matrix must have " + std::to_string(rows) + " rows");
    Mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      const auto& row = j[i];
      if (!row.is_array() || row.size() != cols) {
        throw Error(ErrorCode::Parse, "matrix row " + std::to_string(i) + " must have " + std::to_string(cols) + " entries");
      }
      for (std::size_t k = 0; k < cols; ++k) m(i, k) = rat_from_json(row[k]);
    }
    return m;
  });
}

Mat mat_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorCode::Parse, "matrix must be an array of rows");
  std::size_t cols = j.empty() ? 0 : j[0].size();
  return mat_from_json(j, j.size(), cols);
}

json to_json(const CDGA& a) {
  json j;
  j["q"] = a.q();
  j["dims"] = a.dims();
  j["labels"] = a.labels();
  json mult = json::array();
  const int top = a.top_degree();
  for (int i = 0; i <= top; ++i)
    for (int k = 0; i + k <= top; ++k)
      for (std::size_t x = 0; x < a.dim(i); ++x)
        for (std::size_t y = 0; y < a.dim(k); ++y) {
          Vec v = a.product(i, x, k, y);
          if (is_zero(v)) continue;
          mult.push_back({{"i", i}, {"j", k}, {"a", x}, {"b", y}, {"out", sparse_vector(v)}});
        }
  j["mult"] = std::move(mult);
  json diff = json::array();
  for (int i = 0; i <= a.q(); ++i) diff.push_back(to_json(a.diff(i)));
  j["diff"] = std::move(diff);
  return j;
}

CDGA cdga_from_json(const json& j) {
  return guarded("cdga", [&] {
    int q = j.at("q").get<int>();
    auto dims = j.at("dims").get<std::vector<std::size_t>>();
    std::vector<std::vector<std::string>> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::vector<std::string>>>();
    if (q < 0 || dims.size() != static_cast<std::size_t>(q) + 2) {
      throw Error(ErrorCode::Parse, "dims must list degrees 0..q+1");
    }
    CDGA a(q, dims, labels);
    const int top = q + 1;
    std::vector<std::vector<bool>> seen;
    for (const auto& e : j.at("mult")) {
      int i = e.at("i").get<int>();
      int k = e.at("j").get<int>();
      if (i < 0 || k < 0 || i + k > top) throw Error(ErrorCode::Parse, "mult entry beyond degree q+1");
      std::size_t x = checked_index(e, "a", dims[i]);
      std::size_t y = checked_index(e, "b", dims[k]);
      Vec prev = a.product(i, x, k, y);
      if (!is_zero(prev)) throw Error(ErrorCode::Parse, "duplicate mult entry");
      a.set_product(i, x, k, y, dense_vector(e.at("out"), dims[i + k]));
    }
    const auto& diff = j.at("diff");
    if (!diff.is_array() || diff.size() != static_cast<std::size_t>(q) + 1) {
      throw Error(ErrorCode::Parse, "diff must list d^0..d^q");
    }
    for (int i = 0; i <= q; ++i) a.set_diff(i, mat_from_json(diff[i], dims[i + 1], dims[i]));
    return a;
  });
}

json to_json(const LieAlgebra& g) {
  json j;
  j["name"] = g.name();
  j["dim"] = g.dim();
  j["labels"] = g.labels();
  json br = json::array();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t k = 0; k < g.dim(); ++k) {
      Vec v = g.bracket(i, k);
      if (!is_zero(v)) br.push_back({{"i", i}, {"j", k}, {"out", sparse_vector(v)}});
    }
  j["bracket"] = std::move(br);
  return j;
}

LieAlgebra lie_from_json(const json& j) {
  return guarded("lie algebra", [&] {
    std::size_t n = j.at("dim").get<std::size_t>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    LieAlgebra g(j.value("name", std::string("g")), n, labels);
    for (const auto& e : j.at("bracket")) {
      std::size_t i = checked_index(e, "i", n);
      std::size_t k = checked_index(e, "j", n);
      if (!is_zero(g.bracket(i, k))) throw Error(ErrorCode::Parse, "duplicate bracket entry");
      g.set_bracket(i, k, dense_vector(e.at("out"), n));
    }
    return g;
  });
}

json to_json(const Representation& r) {
  json j;
  j["lie"] = to_json(r.lie);
  j["name"] = r.name;
  j["v_dim"] = r.v_dim;
  json mats = json::array();
  for (const auto& m : r.mats) mats.push_back(to_json(m));
  j["mats"] = std::move(mats);
  return j;
}

Representation rep_from_json(const json& j) {
  return guarded("representation", [&] {
    Representation r;
    r.lie = lie_from_json(j.at("lie"));
    r.name = j.value("name", std::string());
    r.v_dim = j.at("v_dim").get<std::size_t>();
    const auto& mats = j.at("mats");
    if (!mats.is_array() || mats.size() != r.lie.dim()) throw Error(ErrorCode::Parse, "one matrix per Lie basis element required");
    for (const auto& m : mats) r.mats.push_back(mat_from_json(m, r.v_dim, r.v_dim));
    return r;
  });
}

json to_json(const Connection& c) { return json{{"coeffs", to_json(c.coeffs)}}; }

Connection connection_from_json(const json& j) {
  return guarded("connection", [&] { return Connection{mat_from_json(j.at("coeffs"))}; });
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << text;
}

}  // namespace reslab
