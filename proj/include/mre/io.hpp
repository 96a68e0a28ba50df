#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mre/entropy.hpp"
#include "mre/optimizer.hpp"
#include "mre/states.hpp"

namespace mre::io {

using nlohmann::json;

// Matrix format: {"dim": n, "entries": [[[re, im], ...], ...]}, row-major.
json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);

DensityOperator density_from_json(const json& j);

// PVM format: {"dim": n, "blocks": [{"lambda": x, "projector": <matrix>}, ...]}.
json to_json(const ProjectiveDecomposition& pvm);
ProjectiveDecomposition pvm_from_json(const json& j);

/// Finite values as numbers, +infinity as the string "inf".
json to_json(const ExtendedReal& x);

/// {"converged", "iterations", "objective", "min_directional_derivative",
///  "trace_distance_to_analytic"}; absent optionals are null.
json to_json(const MinimizationResult& r);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// "0.3,0.7" -> {0.3, 0.7}. Throws ParseError on malformed input.
std::vector<double> parse_doubles(std::string_view csv);
std::vector<Eigen::Index> parse_indices(std::string_view csv);

}  // namespace mre::io
