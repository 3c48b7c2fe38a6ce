#pragma once

#include "stochdil/matrix.hpp"

#include <cstddef>
#include <optional>

namespace stochdil::linalg {

/// Rank by exact fraction-preserving Gaussian elimination (exact mode) or by
/// counting singular values above `threshold` (float mode).
std::size_t rank(const Matrix& a, double threshold = 1e-10);

/// Solves the square system a x = b; returns nullopt when a is singular
/// (exactly singular in exact mode, rank-deficient under `threshold` in float
/// mode).
std::optional<Vector> solve(const Matrix& a, const Vector& b, double threshold = 1e-10);

}  // namespace stochdil::linalg
