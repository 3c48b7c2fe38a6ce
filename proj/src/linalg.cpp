#include "stochdil/linalg.hpp"

#include "stochdil/error.hpp"

#include <Eigen/Dense>

#include <utility>

namespace stochdil::linalg {

namespace {

using RationalRows = std::vector<std::vector<Rational>>;

RationalRows to_rational_rows(const Matrix& a) {
  RationalRows rows(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) rows[r][c] = a(r, c).rational();
  return rows;
}

Eigen::MatrixXd to_eigen(const Matrix& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a(r, c).to_double();
  return out;
}

// Reduces `rows` in place to row echelon form over the first `cols` columns
// and returns the pivot columns.
std::vector<std::size_t> echelon(RationalRows& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows.size(); ++c) {
    std::size_t found = pivot_row;
    while (found < rows.size() && rows[found][c] == 0) ++found;
    if (found == rows.size()) continue;
    std::swap(rows[pivot_row], rows[found]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == pivot_row || rows[r][c] == 0) continue;
      Rational factor = rows[r][c] / rows[pivot_row][c];
      for (std::size_t k = c; k < rows[r].size(); ++k) rows[r][k] -= factor * rows[pivot_row][k];
    }
    pivots.push_back(c);
    ++pivot_row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const Matrix& a, double threshold) {
  if (a.empty()) return 0;
  if (a.mode() == Mode::Exact) {
    RationalRows rows = to_rational_rows(a);
    return echelon(rows, a.cols()).size();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  std::size_t count = 0;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k)
    if (svd.singularValues()(k) > threshold) ++count;
  return count;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b, double threshold) {
  if (!a.is_square() || a.rows() != b.size()) throw Error(ErrorKind::DimensionMismatch, "linalg::solve");
  const std::size_t n = a.rows();
  if (a.mode() == Mode::Exact) {
    RationalRows rows = to_rational_rows(a);
    for (std::size_t r = 0; r < n; ++r) rows[r].push_back(b[r].rational());
    if (echelon(rows, n).size() < n) return std::nullopt;
    Vector x;
    x.reserve(n);
    for (std::size_t r = 0; r < n; ++r) x.emplace_back(Rational(rows[r][n] / rows[r][r]));
    return x;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(a));
  lu.setThreshold(threshold);
  if (static_cast<std::size_t>(lu.rank()) < n) return std::nullopt;
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) rhs(static_cast<Eigen::Index>(r)) = b[r].to_double();
  Eigen::VectorXd sol = lu.solve(rhs);
  Vector x;
  x.reserve(n);
  for (std::size_t r = 0; r < n; ++r) x.emplace_back(sol(static_cast<Eigen::Index>(r)));
  return x;
}

}  // namespace stochdil::linalg
