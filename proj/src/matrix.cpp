#include "stochdil/matrix.hpp"

#include "stochdil/error.hpp"

#include <algorithm>
#include <cmath>

namespace stochdil {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  if (a.mode() != b.mode()) throw Error(ErrorKind::ModeMismatch, op);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, Mode mode)
    : rows_(rows), cols_(cols), mode_(mode), data_(rows * cols, Scalar::zero(mode)) {}

Matrix Matrix::identity(std::size_t n, Mode mode) {
  Matrix m(n, n, mode);
  for (std::size_t k = 0; k < n; ++k) m.data_[k * n + k] = Scalar::one(mode);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix needs at least one row and column");
  }
  Matrix m(rows.size(), rows.front().size(), rows.front().front().mode());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw Error(ErrorKind::DimensionMismatch, "ragged rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

Matrix Matrix::from_doubles(const std::vector<std::vector<double>>& rows) {
  std::vector<Vector> scalars;
  scalars.reserve(rows.size());
  for (const auto& row : rows) scalars.emplace_back(row.begin(), row.end());
  return from_rows(scalars);
}

Matrix Matrix::exact(const std::vector<std::vector<std::string>>& rows) {
  std::vector<Vector> scalars;
  scalars.reserve(rows.size());
  for (const auto& row : rows) {
    Vector v;
    v.reserve(row.size());
    for (const auto& cell : row) v.push_back(Scalar::parse_exact(cell));
    scalars.push_back(std::move(v));
  }
  return from_rows(scalars);
}

Matrix Matrix::column_vector(const Vector& entries) {
  if (entries.empty()) throw Error(ErrorKind::DimensionMismatch, "empty vector");
  Matrix m(entries.size(), 1, entries.front().mode());
  for (std::size_t r = 0; r < entries.size(); ++r) m.set(r, 0, entries[r]);
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, Scalar value) {
  if (value.mode() != mode_) throw Error(ErrorKind::ModeMismatch, "entry mode differs from matrix mode");
  data_[r * cols_ + c] = std::move(value);
}

void Matrix::add_to(std::size_t r, std::size_t c, const Scalar& value) { data_[r * cols_ + c] += value; }

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Vector Matrix::column_sums() const {
  Vector sums(cols_, Scalar::zero(mode_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) sums[c] += (*this)(r, c);
  return sums;
}

Vector Matrix::row_sums() const {
  Vector sums(rows_, Scalar::zero(mode_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) sums[r] += (*this)(r, c);
  return sums;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, mode_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = (*this)(r, c);
  return t;
}

Matrix Matrix::to_mode(Mode mode) const {
  if (mode == mode_) return *this;
  Matrix out(rows_, cols_, mode);
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = data_[k].to_mode(mode);
  return out;
}

std::vector<double> Matrix::to_doubles() const {
  std::vector<double> out;
  out.reserve(data_.size());
  for (const auto& s : data_) out.push_back(s.to_double());
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) {
    throw Error(ErrorKind::DimensionMismatch, "product of " + std::to_string(a.rows_) + "x" +
                                                  std::to_string(a.cols_) + " and " + std::to_string(b.rows_) +
                                                  "x" + std::to_string(b.cols_));
  }
  if (a.mode_ != b.mode_) throw Error(ErrorKind::ModeMismatch, "matrix product");
  Matrix out(a.rows_, b.cols_, a.mode_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& lhs = a(r, k);
      if (lhs.is_zero()) continue;
      for (std::size_t c = 0; c < b.cols_; ++c) {
        const Scalar& rhs = b(k, c);
        if (!rhs.is_zero()) out.data_[r * out.cols_ + c] += lhs * rhs;
      }
    }
  }
  return out;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols_ != v.size()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(a.cols_) +
                                                  " columns, vector has " + std::to_string(v.size()) + " entries");
  }
  if (!v.empty() && v.front().mode() != a.mode_) throw Error(ErrorKind::ModeMismatch, "matrix-vector product");
  Vector out(a.rows_, Scalar::zero(a.mode_));
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < a.cols_; ++c)
      if (!a(r, c).is_zero() && !v[c].is_zero()) out[r] += a(r, c) * v[c];
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "sum");
  Matrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] += b.data_[k];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "difference");
  Matrix out = a;
  for (std::size_t k = 0; k < out.data_.size(); ++k) out.data_[k] -= b.data_[k];
  return out;
}

Matrix Matrix::scaled(const Scalar& factor) const {
  Matrix out = *this;
  for (auto& s : out.data_) s *= factor;
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.mode_ == b.mode_ && a.data_ == b.data_;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      worst = std::max(worst, std::abs(a(r, c).to_double() - b(r, c).to_double()));
  return worst;
}

double max_abs_diff(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k].to_double() - b[k].to_double()));
  return worst;
}

Mode vector_mode(const Vector& v) {
  if (v.empty()) return Mode::Exact;
  Mode mode = v.front().mode();
  for (const auto& s : v)
    if (s.mode() != mode) throw Error(ErrorKind::ModeMismatch, "vector mixes modes");
  return mode;
}

Vector to_mode(const Vector& v, Mode mode) {
  Vector out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.to_mode(mode));
  return out;
}

std::vector<double> to_doubles(const Vector& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& s : v) out.push_back(s.to_double());
  return out;
}

Scalar sum(const Vector& v) {
  Scalar total = Scalar::zero(vector_mode(v));
  for (const auto& s : v) total += s;
  return total;
}

}  // namespace stochdil
