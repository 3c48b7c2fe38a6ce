#pragma once

#include "stochdil/scalar.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace stochdil {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix whose entries all share one Mode.
///
/// Stochastic matrices follow the column convention: entry (m, n) is the
/// probability of the transition n -> m, so a left-stochastic matrix has unit
/// column sums and acts on column vectors from the left.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, Mode mode = Mode::Exact);

  static Matrix identity(std::size_t n, Mode mode = Mode::Exact);
  static Matrix from_rows(const std::vector<Vector>& rows);
  static Matrix from_doubles(const std::vector<std::vector<double>>& rows);
  /// Rows of "p/q" or integer strings.
  static Matrix exact(const std::vector<std::vector<std::string>>& rows);
  /// Column vector (cols() == 1).
  static Matrix column_vector(const Vector& entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Mode mode() const noexcept { return mode_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Scalar value);
  void add_to(std::size_t r, std::size_t c, const Scalar& value);

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  Vector column_sums() const;
  Vector row_sums() const;

  Matrix transpose() const;
  Matrix to_mode(Mode mode) const;
  std::vector<double> to_doubles() const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Vector operator*(const Matrix& a, const Vector& v);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  Matrix scaled(const Scalar& factor) const;

  friend bool operator==(const Matrix& a, const Matrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Mode mode_ = Mode::Exact;
  std::vector<Scalar> data_;
};

/// Largest absolute entrywise difference, evaluated in double precision.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(const Vector& a, const Vector& b);

Mode vector_mode(const Vector& v);
Vector to_mode(const Vector& v, Mode mode);
std::vector<double> to_doubles(const Vector& v);
Scalar sum(const Vector& v);

}  // namespace stochdil
