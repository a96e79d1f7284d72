#include "reslab/catalog.hpp"

#include <algorithm>
#include <cstdlib>

#include "reslab/errors.hpp"
#include "reslab/serialize.hpp"

namespace reslab {

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t s = start; s < n; ++s) {
      cur.push_back(s);
      self(self, s + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Sign of the shuffle sorting s followed by t, or 0 when they overlap.
int merge_sign(const std::vector<std::size_t>& s, const std::vector<std::size_t>& t) {
  int inversions = 0;
  for (auto x : s)
    for (auto y : t) {
      if (x == y) return 0;
      if (x > y) ++inversions;
    }
  return inversions % 2 ? -1 : 1;
}

template <class T>
const T& find_named(const std::vector<T>& items, const std::string& name, const char* what) {
  for (const auto& it : items)
    if (it.name == name) return it;
  throw Error(ErrorCode::UnknownName, std::string("unknown ") + what + " '" + name + "'");
}

void assemble_constructions(FixtureSet& set) {
  for (std::size_t l = 0; l < set.base.size(); ++l)
    for (std::size_t r = l; r < set.base.size(); ++r) {
      const auto& a = set.base[l];
      const auto& b = set.base[r];
      set.products.push_back({product_name(a.name, b.name), a.name, b.name, tensor_product(a.algebra, b.algebra)});
      set.wedges.push_back({wedge_name(a.name, b.name), a.name, b.name, wedge_sum(a.algebra, b.algebra)});
    }
}

}  // namespace

CDGA exterior_algebra(const std::vector<std::string>& generators, int q) {
  const std::size_t n = generators.size();
  std::vector<std::vector<std::vector<std::size_t>>> basis;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::string>> labels;
  for (int k = 0; k <= q + 1; ++k) {
    basis.push_back(subsets(n, static_cast<std::size_t>(k)));
    dims.push_back(basis.back().size());
    std::vector<std::string> ls;
    for (const auto& s : basis.back()) {
      std::string l;
      for (auto g : s) l += generators[g];
      ls.push_back(s.empty() ? "1" : l);
    }
    labels.push_back(std::move(ls));
  }
  CDGA a(q, dims, labels);
  for (int i = 0; i <= q + 1; ++i)
    for (int j = 0; i + j <= q + 1; ++j)
      for (std::size_t x = 0; x < dims[i]; ++x)
        for (std::size_t y = 0; y < dims[j]; ++y) {
          int sign = merge_sign(basis[i][x], basis[j][y]);
          if (sign == 0) continue;
          auto merged = basis[i][x];
          merged.insert(merged.end(), basis[j][y].begin(), basis[j][y].end());
          std::sort(merged.begin(), merged.end());
          auto pos = std::find(basis[i + j].begin(), basis[i + j].end(), merged) - basis[i + j].begin();
          Vec v(dims[i + j]);
          v[pos] = Rat(sign);
          a.set_product(i, x, j, y, v);
        }
  return a;
}

CDGA twisted_exterior_algebra(int q) {
  CDGA a = exterior_algebra({"x", "y"}, q);
  if (q >= 1) a.set_diff(1, Mat::from_rows({{Rat(0), Rat(-1)}}));
  return a;
}

CDGA trivial_algebra(int q) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(q) + 2, 0);
  dims[0] = 1;
  CDGA a(q, dims);
  a.set_product(0, 0, 0, 0, Vec{Rat(1)});
  return a;
}

const NamedCDGA& FixtureSet::algebra(const std::string& name) const { return find_named(base, name, "algebra"); }
const NamedRep& FixtureSet::rep(const std::string& name) const { return find_named(reps, name, "Lie target"); }
const NamedProduct& FixtureSet::product(const std::string& name) const { return find_named(products, name, "product"); }
const NamedWedge& FixtureSet::wedge(const std::string& name) const { return find_named(wedges, name, "wedge"); }

std::string product_name(const std::string& left, const std::string& right) { return left + "-x-" + right; }
std::string wedge_name(const std::string& left, const std::string& right) { return left + "-v-" + right; }

CDGA builtin_algebra(const std::string& name) {
  if (name == "lambda1") return exterior_algebra({"e"});
  if (name == "lambda2") return exterior_algebra({"e1", "e2"});
  if (name == "lambda3") return exterior_algebra({"e1", "e2", "e3"});
  if (name == "lambda2d") return twisted_exterior_algebra();
  throw Error(ErrorCode::UnknownName, "unknown algebra '" + name + "'");
}

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("RESLAB_FIXTURES"); env && *env) return env;
  return RESLAB_DEFAULT_FIXTURE_DIR;
}

FixtureSet load_fixture_set(const std::filesystem::path& dir) {
  FixtureSet set;
  for (const auto& name : base_fixture_names()) {
    auto path = (dir / (name + ".json")).string();
    CDGA a = cdga_from_json(read_json_file(path));
    set.base.push_back({name, std::move(a)});
  }
  for (const auto& name : lie_fixture_names()) {
    auto path = (dir / (name + ".json")).string();
    Representation r = rep_from_json(read_json_file(path));
    set.reps.push_back({name, std::move(r)});
  }
  assemble_constructions(set);
  return set;
}

FixtureSet builtin_fixture_set() {
  FixtureSet set;
  for (const auto& name : base_fixture_names()) set.base.push_back({name, builtin_algebra(name)});
  for (const auto& name : lie_fixture_names()) set.reps.push_back({name, builtin(name)});
  assemble_constructions(set);
  return set;
}

void write_fixture_files(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  FixtureSet set = builtin_fixture_set();
  auto write = [&](const std::string& name, const json& doc) { write_text_file((dir / (name + ".json")).string(), dump(doc)); };
  for (const auto& a : set.base) write(a.name, to_json(a.algebra));
  for (const auto& r : set.reps) write(r.name, to_json(r.rep));
  for (const auto& p : set.products) write(p.name, to_json(p.witness.product));
  for (const auto& w : set.wedges) write(w.name, to_json(w.witness.wedge));
}

}  // namespace reslab
