#pragma once

#include <string>

#include "json.hpp"
#include "reslab/cdga.hpp"
#include "reslab/flatconn.hpp"
#include "reslab/liealg.hpp"

namespace reslab {

using json = nlohmann::json;

/// Rationals are strings "p/q" ("p" when q = 1); matrices are arrays of rows.
json to_json(const Rat& r);
Rat rat_from_json(const json& j);
json to_json(const Mat& m);
Mat mat_from_json(const json& j, std::size_t rows, std::size_t cols);
/// Shape taken from the data; a matrix with no rows has zero columns.
Mat mat_from_json(const json& j);

/// { "q", "dims", "labels", "mult": [{"i","j","a","b","out": [["p/q", idx], ...]}],
///   "diff": [d^0, ..., d^q] }  with d^i stored as dims[i+1] rows of dims[i] entries.
/// Zero products are omitted; nothing else is implied.
json to_json(const CDGA& a);
CDGA cdga_from_json(const json& j);

/// { "name", "dim", "labels", "bracket": [{"i","j","out": [["p/q", idx], ...]}] }
json to_json(const LieAlgebra& g);
LieAlgebra lie_from_json(const json& j);

/// { "lie": {...}, "name", "v_dim", "mats": [matrix, ...] }
json to_json(const Representation& r);
Representation rep_from_json(const json& j);

/// { "coeffs": rows }
json to_json(const Connection& c);
Connection connection_from_json(const json& j);

/// Canonical text of a document: two-space indentation, trailing newline.
std::string dump(const json& j);
/// Parses text, mapping syntax errors to Error(Parse).
json parse_json(const std::string& text);
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace reslab
