#pragma once

// JSON serialization for the CLI and for persisted factorizations.
//
// Schemas (all numbers are finite doubles unless noted):
//
//   matrix        {"kind": "toeplitz" | "hankel", "col": [...], "row": [...]}
//                 Toeplitz: col = (a_0, a_-1, ..., a_{1-m}) walks the first
//                 column, row = (a_0, a_1, ..., a_{n-1}) the first row, and
//                 col[0] == row[0].  Hankel: col = first column top-down,
//                 row = last row left-right, col[m-1] == row[0].
//   vector        bare array: [b_0, ..., b_{m-1}]
//   factor        {"n": n, "rows": [[r_11..r_1n], [r_22..r_2n], ...],
//                  "tally": t?}  (packed upper-triangular rows)
//   rotation log  {"n": n, "rotations": [[c, s, "update" | "downdate"], ...],
//                  "last_column": [r_1n, ..., r_nn]}
//                 (the carried vectors after the final step are exact zeros
//                 and are not serialized)
//   solve report  {"x": [...], "residual": r, "normal_residual": nr,
//                  "tally": t, "cond1": c?, "metrics": {"e1":?, "e2":?,
//                  "e3":?}?}  (optional fields omitted when absent)
//
// Readers validate shape and finiteness and throw IoError / ShapeError /
// MismatchedCorner / NonFiniteInput; they never return a partially
// constructed object.

#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "toepqr/lattice.hpp"
#include "toepqr/seminormal.hpp"
#include "toepqr/toeplitz.hpp"

namespace toepqr::io {

using MatrixVariant = std::variant<Toeplitz, Hankel>;

MatrixVariant parse_matrix(const nlohmann::json& j);
std::vector<double> parse_vector(const nlohmann::json& j);
RFactor rfactor_from_json(const nlohmann::json& j);
RotationLog rotation_log_from_json(const nlohmann::json& j);

MatrixVariant read_matrix_file(const std::string& path);
std::vector<double> read_vector_file(const std::string& path);

nlohmann::ordered_json rfactor_to_json(const RFactor& rf, bool include_tally = false);
nlohmann::ordered_json rotation_log_to_json(const RotationLog& log);
nlohmann::ordered_json solve_report_to_json(const SolveReport& report);
nlohmann::ordered_json vector_to_json(std::span<const double> v);

// Parse a file as JSON (IoError on missing file or malformed payload).
nlohmann::json read_json_file(const std::string& path);

// Serialize with 2-space indent and trailing newline; "-" writes to stdout.
void write_json_output(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace toepqr::io
