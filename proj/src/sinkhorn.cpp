#include "stochdil/sinkhorn.hpp"

#include "stochdil/error.hpp"

#include <algorithm>
#include <cmath>

namespace stochdil {

namespace {

double balance_defect(const std::vector<double>& s, std::size_t n) {
  double worst = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double row = 0.0, col = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      row += s[r * n + c];
      col += s[c * n + r];
    }
    worst = std::max({worst, std::abs(row - 1.0), std::abs(col - 1.0)});
  }
  return worst;
}

}  // namespace

SinkhornResult sinkhorn_knopp(const Matrix& t, double tol, int max_iter) {
  if (!t.is_square()) throw Error(ErrorKind::NotSquare, "Sinkhorn balancing needs a square matrix");
  if (!(tol > 0.0)) throw Error(ErrorKind::ParameterOutOfRange, "tol must be positive");
  const std::size_t n = t.rows();
  const std::vector<double> base = t.to_doubles();
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (!(base[k] > 0.0)) {
      throw Error(ErrorKind::NonPositiveEntry,
                  "entry (" + std::to_string(k / n) + ", " + std::to_string(k % n) + ") is not positive");
    }
  }

  std::vector<double> d1(n, 1.0), d2(n, 1.0), s = base;
  double defect = balance_defect(s, n);
  int it = 0;
  while (defect > tol && it < max_iter) {
    for (std::size_t r = 0; r < n; ++r) {
      double row = 0.0;
      for (std::size_t c = 0; c < n; ++c) row += base[r * n + c] * d2[c];
      d1[r] = 1.0 / row;
    }
    for (std::size_t c = 0; c < n; ++c) {
      double col = 0.0;
      for (std::size_t r = 0; r < n; ++r) col += d1[r] * base[r * n + c];
      d2[c] = 1.0 / col;
    }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) s[r * n + c] = d1[r] * base[r * n + c] * d2[c];
    defect = balance_defect(s, n);
    ++it;
  }
  if (defect > tol) {
    throw Error(ErrorKind::NotConverged,
                "defect " + std::to_string(defect) + " after " + std::to_string(max_iter) + " sweeps");
  }

  SinkhornResult out{std::move(d1), std::move(d2), Matrix(n, n, Mode::Float), it, defect};
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out.s.set(r, c, Scalar(s[r * n + c]));
  return out;
}

Sinkhorn2x2 sinkhorn_2x2(double a, double b) {
  if (!(a > 0.0 && a < 1.0 && b > 0.0 && b < 1.0)) {
    throw Error(ErrorKind::ParameterOutOfRange, "need 0 < a, b < 1");
  }
  const double stay = std::sqrt((1.0 - a) * (1.0 - b));
  const double swap = std::sqrt(a * b);
  const double z = stay + swap;
  Sinkhorn2x2 out;
  out.d1 = {std::sqrt((1.0 - a) / (1.0 - b)), std::sqrt(a / b)};
  // With this gauge the first column scale is 1/z; the second follows from the
  // first row of S summing to one.
  out.d2 = {1.0 / z, std::sqrt(((1.0 - b) * b) / ((1.0 - a) * a)) / z};
  out.p = swap / z;
  return out;
}

}  // namespace stochdil
