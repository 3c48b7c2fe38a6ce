#pragma once

#include "stochdil/core.hpp"
#include "stochdil/matrix.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace stochdil {

/// Shannon entropy in nats; zero entries contribute nothing. Exact inputs are
/// evaluated in double precision.
double shannon_entropy(const ProbVec& p);
double shannon_entropy(std::span<const double> p);

/// Slack used by every membership test of the entropy-decreasing region.
inline constexpr double kRegionSlack = 1e-12;

/// p lies in D(T) iff H(T p) <= H(p) + kRegionSlack.
bool in_decreasing_region(const Matrix& t, const ProbVec& p);

struct RaySample {
  double t = 0.0;
  std::vector<double> point;
  double h_point = 0.0;
  double h_image = 0.0;
};

struct RayScan {
  std::vector<RaySample> samples;  // resolution + 1 evenly spaced points on [0, 1]
  RaySample boundary;              // last point of the ray inside D(T)
  bool whole_segment_inside = false;
};

/// For each direction q, walks p(t) = (1-t) anchor + t q on a grid of
/// `resolution` steps, then bisects the first inside/outside bracket of
/// g(t) = H(T p(t)) - H(p(t)) down to a parameter width of 1e-9. Results are
/// in direction order.
std::vector<RayScan> region_boundary_scan(const Matrix& t, const ProbVec& anchor,
                                          const std::vector<ProbVec>& directions, int resolution);

struct EntropyLedger {
  double h_input = 0.0;       // H(p)
  double h_lifted = 0.0;      // H(p (x) delta_0) = H(p)
  double h_evolved = 0.0;     // H(R (p (x) delta_0))
  double h_marginal_1 = 0.0;  // object marginal, equals H(T p)
  double h_marginal_2 = 0.0;  // environment marginal
  double h_output = 0.0;      // H(T p)

  double marginal_total() const { return h_marginal_1 + h_marginal_2; }
};

/// Entropy bookkeeping across the noisy standard dilation of T.
EntropyLedger entropy_ledger(const Matrix& t, const ProbVec& p);

struct BirkhoffTerm {
  Scalar weight;
  /// Column n of the permutation matrix has its one in row perm[n].
  std::vector<std::size_t> perm;
};

struct BirkhoffDecomposition {
  std::vector<BirkhoffTerm> terms;

  Matrix reconstruct(std::size_t n, Mode mode) const;
  Scalar weight_sum(Mode mode) const;
};

/// Greedy peeling: take a perfect matching on the support of the residual
/// (augmenting paths, lowest indices first), subtract its smallest entry times
/// the permutation, repeat. Exact inputs decompose exactly.
BirkhoffDecomposition birkhoff_decompose(const Matrix& s);

Matrix permutation_matrix(const std::vector<std::size_t>& perm, Mode mode = Mode::Exact);

}  // namespace stochdil
