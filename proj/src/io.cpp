#include "mre/io.hpp"

#include <fstream>
#include <sstream>

#include "mre/errors.hpp"

namespace mre::io {

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

template <typename T>
std::vector<T> parse_list(std::string_view csv, const char* what) {
  std::vector<T> out;
  if (csv.empty()) throw ParseError(std::string("empty ") + what + " list");
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto end = std::min(csv.find(',', start), csv.size());
    std::string item(csv.substr(start, end - start));
    // strtod/strtoll accept leading whitespace; reject trailing garbage.
    std::istringstream is(item);
    T value{};
    is >> value;
    if (is.fail()) throw ParseError(std::string("bad ") + what + " entry '" + item + "'");
    is >> std::ws;
    if (!is.eof()) throw ParseError(std::string("bad ") + what + " entry '" + item + "'");
    out.push_back(value);
    if (end == csv.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  try {
    const auto n = j.at("dim").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (n <= 0) throw ParseError("dim must be positive");
    if (!entries.is_array() || static_cast<Eigen::Index>(entries.size()) != n) {
      throw ParseError("entries must have dim rows");
    }
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = entries.at(static_cast<std::size_t>(i));
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
        throw ParseError("every row must have dim entries");
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        const auto& z = row.at(static_cast<std::size_t>(k));
        if (!z.is_array() || z.size() != 2) throw ParseError("entries are [re, im] pairs");
        m(i, k) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what());
  }
}

DensityOperator density_from_json(const json& j) {
  const ComplexMatrix m = matrix_from_json(j);
  try {
    return DensityOperator(m);
  } catch (const Error& e) {
    throw ParseError(std::string("not a density operator: ") + e.what());
  }
}

json to_json(const ProjectiveDecomposition& pvm) {
  json blocks = json::array();
  for (const auto& b : pvm.blocks()) {
    blocks.push_back({{"lambda", b.eigenvalue}, {"projector", to_json(b.projector)}});
  }
  return {{"dim", pvm.dim()}, {"blocks", std::move(blocks)}};
}

ProjectiveDecomposition pvm_from_json(const json& j) {
  std::vector<SpectralBlock> blocks;
  Eigen::Index dim = 0;
  try {
    dim = j.at("dim").get<Eigen::Index>();
    for (const auto& b : j.at("blocks")) {
      blocks.push_back({b.at("lambda").get<double>(), matrix_from_json(b.at("projector")), 0});
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("PVM JSON: ") + e.what());
  }
  for (const auto& b : blocks) {
    if (b.projector.rows() != dim) throw ParseError("projector dim differs from PVM dim");
  }
  try {
    return ProjectiveDecomposition(std::move(blocks));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid PVM: ") + e.what());
  }
}

json to_json(const ExtendedReal& x) {
  if (x.is_infinite()) return "inf";
  return x.value();
}

json to_json(const MinimizationResult& r) {
  return {{"converged", r.converged},
          {"iterations", r.iterations},
          {"objective", to_json(r.objective)},
          {"min_directional_derivative", optional_number(r.min_directional_derivative)},
          {"trace_distance_to_analytic", optional_number(r.trace_distance_to_analytic)}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<double> parse_doubles(std::string_view csv) { return parse_list<double>(csv, "number"); }

std::vector<Eigen::Index> parse_indices(std::string_view csv) {
  return parse_list<Eigen::Index>(csv, "integer");
}

}  // namespace mre::io
