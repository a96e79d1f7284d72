#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "reslab/cdga.hpp"
#include "reslab/constructions.hpp"
#include "reslab/liealg.hpp"

namespace reslab {

/// Exterior algebra on degree-1 generators with d = 0, truncated at q.
/// Degree-k basis: k-subsets in lexicographic order, labelled by concatenation.
CDGA exterior_algebra(const std::vector<std::string>& generators, int q = 3);
/// Exterior algebra on x, y with dx = 0, dy = y x = -x y.
CDGA twisted_exterior_algebra(int q = 3);
/// Only the unit in degree 0.
CDGA trivial_algebra(int q);

struct NamedCDGA {
  std::string name;
  CDGA algebra;
};
struct NamedRep {
  std::string name;
  Representation rep;
};
struct NamedProduct {
  std::string name;
  std::string left_name;
  std::string right_name;
  ProductWitness witness;
};
struct NamedWedge {
  std::string name;
  std::string left_name;
  std::string right_name;
  WedgeWitness witness;
};

/// Base algebras, Lie targets, and the tensor products and wedges of every
/// unordered pair of base algebras (with repetition).
struct FixtureSet {
  std::vector<NamedCDGA> base;
  std::vector<NamedRep> reps;
  std::vector<NamedProduct> products;
  std::vector<NamedWedge> wedges;

  const NamedCDGA& algebra(const std::string& name) const;
  const NamedRep& rep(const std::string& name) const;
  const NamedProduct& product(const std::string& name) const;
  const NamedWedge& wedge(const std::string& name) const;
};

inline const std::vector<std::string>& base_fixture_names() {
  static const std::vector<std::string> names{"lambda1", "lambda2", "lambda3", "lambda2d"};
  return names;
}
inline const std::vector<std::string>& lie_fixture_names() {
  static const std::vector<std::string> names{"abelian1", "abelian2", "sl2", "sol2", "gl2"};
  return names;
}
std::string product_name(const std::string& left, const std::string& right);
std::string wedge_name(const std::string& left, const std::string& right);

/// Built-in definition of a shipped base algebra.
CDGA builtin_algebra(const std::string& name);

/// $RESLAB_FIXTURES if set, else the directory compiled into the library.
std::filesystem::path fixture_dir();

/// Reads <dir>/<name>.json for base algebras and Lie targets and assembles
/// products and wedges. Axioms are not checked here; the "fixtures" suite
/// check does that. Throws Error(Parse) on missing or malformed files.
FixtureSet load_fixture_set(const std::filesystem::path& dir);
/// Same set without touching the filesystem.
FixtureSet builtin_fixture_set();

/// Writes every shipped fixture file (base, Lie, products, wedges) to dir.
void write_fixture_files(const std::filesystem::path& dir);

}  // namespace reslab
