#pragma once

#include "stochdil/coarse_grain.hpp"
#include "stochdil/core.hpp"
#include "stochdil/matrix.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>

namespace stochdil::io {

using nlohmann::json;

// Matrix schema: {"mode": "exact"|"float", "rows": N, "cols": M, "data": [[...]]}.
// Exact entries are "p/q" strings or integers; float entries are JSON numbers
// written in shortest round-trip form. Vectors are N x 1 matrices.
json to_json(const Matrix& m);
json to_json(const ProbVec& p);
json to_json(const Partition& p);

Matrix matrix_from_json(const json& j);
/// Accepts an N x 1 matrix (data [[x], [y], ...]) or a flat data list.
ProbVec probvec_from_json(const json& j);
Partition partition_from_json(const json& j);

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

std::string serialize(const Matrix& m);
Matrix parse_matrix(const std::string& text);

}  // namespace stochdil::io
