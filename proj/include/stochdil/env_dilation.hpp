#pragma once

#include "stochdil/coarse_grain.hpp"
#include "stochdil/core.hpp"
#include "stochdil/matrix.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace stochdil {

/// Environment dilation (M, rho, R) of an N x N stochastic matrix: R acts on
/// the product space N x M, indexed by flat_index(m, i, N).
struct EnvDilation {
  std::size_t object_size = 0;
  std::size_t env_size = 0;
  ProbVec rho;
  Matrix r;
};

/// Standard dilation with the "noisy" choice
///   R[(m,i)][(n,0)] = T(m,i) delta_in,
///   R[(m,i)][(n,j)] = (1 - T(m,i)) / (N (N-1))   for j != 0,
/// environment size M = N and rho = delta_0. Exact when T is exact.
EnvDilation noisy_dilation(const Matrix& t);

/// T(m, n) = sum_i R[(m,i)][(n,zero_index)], with N = sqrt(dim R).
Matrix extract_dilated(const Matrix& r, std::size_t zero_index);
Matrix extract_dilated(const Matrix& r, std::size_t object_size, std::size_t zero_index);

/// Checks R bi-stochastic and sum_{ij,n} R[(m,i)][(n,j)] p_n rho_j = (T p)_m.
/// Exact inputs are checked symbolically (sum_j R[(m,i)][(n,j)] rho_j summed
/// over i equals T(m, n)); float inputs on all simplex vertices plus `trials`
/// seeded pseudorandom points, to within `tol`.
bool verify_env_dilation(const Matrix& t, const EnvDilation& e, int trials = 32,
                         double tol = tolerance::kValidation);

/// Partition {n} x M and product lift p -> p (x) rho, so that X R Y = T.
std::pair<Partition, RightInverse> as_coarse_graining(const EnvDilation& e);

/// Real non-negative Kraus operators A_0..A_{N-1}, each N x N.
struct KrausSet {
  std::size_t n = 0;
  std::vector<Matrix> operators;

  /// max |sum_i A_i^T A_i - 1|.
  double completeness_defect() const;
};

/// A_i has the single non-zero column i, A_i(m, i) = sqrt(T(m, i)). Operators
/// are always float.
KrausSet kraus_from_stochastic(const Matrix& t);

/// T(m, n) = sum_i A_i(m, n)^2. Throws IncompleteKrausSet if the completeness
/// defect exceeds 1e-10.
Matrix stochastic_from_kraus(const KrausSet& k);

struct UnitaryDilation {
  Matrix u;  // N^2 x N^2, real orthogonal
  Matrix r;  // entrywise square of u
  double orthogonality_defect = 0.0;
};

/// Builds the isometry columns U[:, (n,0)] = sum_i A_i|n> (x) |i> from
/// kraus_from_stochastic, completes them to an orthogonal matrix by
/// Gram-Schmidt over the standard basis (two passes per candidate) and squares
/// entrywise. Exact inputs are converted to float.
UnitaryDilation unistochastic_dilation(const Matrix& t);

}  // namespace stochdil
