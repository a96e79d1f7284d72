#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "reslab/cdga.hpp"
#include "reslab/flatconn.hpp"

namespace reslab {

/// Basis element a (x) abar of (A (x) Abar)^n with |a| = left_degree.
struct ProductIndex {
  int left_degree;
  std::size_t left;
  std::size_t right;

  friend bool operator==(const ProductIndex&, const ProductIndex&) = default;
};

/// A (x) Abar with the identification of each degree as the direct sum of
/// A^i (x) Abar^j, ordered lexicographically by (i, left index, right index).
struct ProductWitness {
  CDGA product;
  CDGA left;
  CDGA right;
  std::vector<std::vector<ProductIndex>> basis;  // per degree

  std::size_t index_of(int degree, ProductIndex idx) const;
  /// Positions of A^1 and Abar^1 inside (A (x) Abar)^1.
  std::vector<std::size_t> left_one_positions() const;
  std::vector<std::size_t> right_one_positions() const;
};

enum class WedgeSide { Left, Right };

struct WedgeIndex {
  WedgeSide side;
  std::size_t index;

  friend bool operator==(const WedgeIndex&, const WedgeIndex&) = default;
};

/// A v Abar: positive degrees are A^n (+) Abar^n, left block first.
struct WedgeWitness {
  CDGA wedge;
  CDGA left;
  CDGA right;
  std::vector<std::vector<WedgeIndex>> basis;  // per degree; degree 0 is empty

  std::size_t index_of(int degree, WedgeIndex idx) const;
  std::vector<std::size_t> left_one_positions() const;
  std::vector<std::size_t> right_one_positions() const;
};

/// Truncation defaults to min(q, qbar); a larger request throws
/// TruncationMismatch. Right-hand labels get a trailing prime.
ProductWitness tensor_product(const CDGA& a, const CDGA& abar, std::optional<int> q = std::nullopt);
WedgeWitness wedge_sum(const CDGA& a, const CDGA& abar, std::optional<int> q = std::nullopt);

struct SplitConnection {
  Connection left;
  Connection right;
};

SplitConnection split_connection(const ProductWitness& w, const Connection& omega);
SplitConnection split_connection(const WedgeWitness& w, const Connection& omega);
Connection merge_connection(const ProductWitness& w, const Connection& left, const Connection& right);
Connection merge_connection(const WedgeWitness& w, const Connection& left, const Connection& right);

enum class Trichotomy { LeftOnly, RightOnly, RankOne };
std::string to_string(Trichotomy t);

/// Which family of the product decomposition for sl2/sol2 contains a flat
/// Omega. Rank <= 1 takes precedence, so the zero connection and one-sided
/// rank-one points are reported as RankOne.
/// Throws InvalidArgument unless g is sl2 or sol2, NotFlat, and
/// ClassificationFailure when Omega is in none of the families.
Trichotomy trichotomy_classify(const ProductWitness& w, const LieAlgebra& g, const Connection& omega);

}  // namespace reslab
