#include "stochdil/io.hpp"

#include "stochdil/error.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace stochdil::io {

namespace {

json scalar_to_json(const Scalar& s) {
  if (!s.is_exact()) return s.to_double();
  const Rational& r = s.rational();
  if (denominator(r) == 1 && numerator(r) >= std::numeric_limits<std::int64_t>::min() &&
      numerator(r) <= std::numeric_limits<std::int64_t>::max()) {
    return numerator(r).convert_to<std::int64_t>();
  }
  return s.to_string();
}

Scalar scalar_from_json(const json& j, Mode mode) {
  if (mode == Mode::Exact) {
    if (j.is_string()) return Scalar::parse_exact(j.get<std::string>());
    if (j.is_number_integer()) return Scalar(Rational(j.get<std::int64_t>()));
    throw Error(ErrorKind::Parse, "exact entries must be \"p/q\" strings or integers, got " + j.dump());
  }
  if (j.is_number()) return Scalar(j.get<double>());
  throw Error(ErrorKind::Parse, "float entries must be JSON numbers, got " + j.dump());
}

template <typename T>
T field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(ErrorKind::Parse, std::string("missing field '") + name + "'");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("field '") + name + "': " + e.what());
  }
}

}  // namespace

json to_json(const Matrix& m) {
  json data = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    data.push_back(std::move(row));
  }
  return {{"mode", std::string(to_string(m.mode()))}, {"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

json to_json(const ProbVec& p) { return to_json(Matrix::column_vector(p.entries())); }

json to_json(const Partition& p) { return {{"d", p.size()}, {"classes", p.classes()}}; }

Matrix matrix_from_json(const json& j) {
  const Mode mode = parse_mode(field<std::string>(j, "mode"));
  const auto rows = field<std::size_t>(j, "rows");
  const auto cols = field<std::size_t>(j, "cols");
  const json& data = j.at("data");
  if (!data.is_array() || data.size() != rows) throw Error(ErrorKind::Parse, "data must hold 'rows' rows");
  if (rows == 0 || cols == 0) throw Error(ErrorKind::Parse, "matrix must be non-empty");
  Matrix m(rows, cols, mode);
  for (std::size_t r = 0; r < rows; ++r) {
    const json& row = data[r];
    if (!row.is_array() || row.size() != cols) {
      throw Error(ErrorKind::Parse, "row " + std::to_string(r) + " must hold 'cols' entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, scalar_from_json(row[c], mode));
  }
  return m;
}

ProbVec probvec_from_json(const json& j) {
  const Mode mode = parse_mode(field<std::string>(j, "mode"));
  if (field<std::size_t>(j, "cols") != 1) throw Error(ErrorKind::Parse, "vectors must have cols = 1");
  const auto rows = field<std::size_t>(j, "rows");
  const json& data = j.at("data");
  if (!data.is_array() || data.size() != rows) throw Error(ErrorKind::Parse, "data must hold 'rows' entries");
  Vector v;
  v.reserve(rows);
  for (const auto& cell : data) {
    if (cell.is_array() && cell.size() != 1) throw Error(ErrorKind::Parse, "vector rows hold one entry");
    v.push_back(scalar_from_json(cell.is_array() ? cell[0] : cell, mode));
  }
  return ProbVec(std::move(v));
}

Partition partition_from_json(const json& j) {
  return Partition(field<std::size_t>(j, "d"), field<std::vector<std::vector<std::size_t>>>(j, "classes"));
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Parse, "cannot write " + path.string());
  out << text;
}

std::string serialize(const Matrix& m) { return to_json(m).dump() + "\n"; }

Matrix parse_matrix(const std::string& text) {
  try {
    return matrix_from_json(json::parse(text));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

}  // namespace stochdil::io
