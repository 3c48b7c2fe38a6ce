#pragma once

#include "stochdil/matrix.hpp"

#include <array>
#include <vector>

namespace stochdil {

struct SinkhornResult {
  std::vector<double> d1;  // row scaling
  std::vector<double> d2;  // column scaling
  Matrix s;                // diag(d1) T diag(d2)
  int iterations = 0;
  double final_defect = 0.0;
};

/// Sinkhorn-Knopp balancing of a strictly positive square matrix: each sweep
/// normalizes rows, then columns, and the defect max |row/col sum - 1| is
/// measured after the sweep. Throws NonPositiveEntry or NotConverged.
SinkhornResult sinkhorn_knopp(const Matrix& t, double tol = 1e-10, int max_iter = 10000);

/// Closed-form balancing of T = [[1-b, a], [b, 1-a]] for 0 < a, b < 1, gauged
/// so that d1[0] = sqrt((1-a)/(1-b)); the balanced matrix is
/// [[1-p, p], [p, 1-p]].
struct Sinkhorn2x2 {
  std::array<double, 2> d1{};
  std::array<double, 2> d2{};
  double p = 0.0;
};

Sinkhorn2x2 sinkhorn_2x2(double a, double b);

}  // namespace stochdil
