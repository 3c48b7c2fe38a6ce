#pragma once

#include "stochdil/matrix.hpp"

#include <cstddef>
#include <vector>

namespace stochdil {

namespace tolerance {
inline constexpr double kValidation = 1e-9;
inline constexpr double kProbSum = 1e-12;
inline constexpr double kFixedPointResidual = 1e-12;
inline constexpr double kRank = 1e-10;
inline constexpr double kConvergence = 1e-12;
}  // namespace tolerance

/// A point of the probability simplex: non-negative entries that sum to one
/// (exactly in exact mode, within tolerance::kProbSum in float mode).
class ProbVec {
 public:
  explicit ProbVec(Vector entries);

  static ProbVec uniform(std::size_t n, Mode mode = Mode::Exact);
  static ProbVec vertex(std::size_t n, std::size_t k, Mode mode = Mode::Exact);
  static ProbVec from_doubles(const std::vector<double>& entries);
  static ProbVec exact(const std::vector<std::string>& entries);
  /// Skips validation; the caller guarantees the simplex invariant (e.g. the
  /// image of a valid vector under a validated stochastic matrix).
  static ProbVec assume_valid(Vector entries);

  std::size_t size() const noexcept { return entries_.size(); }
  Mode mode() const { return vector_mode(entries_); }
  const Scalar& operator[](std::size_t k) const { return entries_[k]; }
  const Vector& entries() const noexcept { return entries_; }
  std::vector<double> to_doubles() const { return stochdil::to_doubles(entries_); }
  ProbVec to_mode(Mode mode) const { return assume_valid(stochdil::to_mode(entries_, mode)); }

  /// All entries strictly positive.
  bool is_interior() const;

  friend bool operator==(const ProbVec& a, const ProbVec& b) { return a.entries_ == b.entries_; }

 private:
  struct Unchecked {};
  ProbVec(Vector entries, Unchecked) : entries_(std::move(entries)) {}
  Vector entries_;
};

struct StochasticityReport {
  bool left = false;
  bool right = false;
  bool bi = false;
  bool irreducible = false;
  Scalar max_column_defect;
  Scalar max_row_defect;
};

StochasticityReport validate(const Matrix& m, double tol = tolerance::kValidation);

/// Throws NotSquare / NotStochastic unless `t` is a square left-stochastic matrix.
void require_stochastic(const Matrix& t, double tol = tolerance::kValidation);

/// Strongly connected components of the support digraph (edge n -> m iff
/// t(m, n) > 0), each sorted ascending, listed by smallest member.
std::vector<std::vector<std::size_t>> strongly_connected_components(const Matrix& t);

bool is_irreducible(const Matrix& t);

struct FixedPointResult {
  ProbVec representative;
  std::size_t face_dimension = 0;
  bool is_unique = true;
  /// Extreme points of the fixed-point face: the stationary distribution of
  /// each closed communicating class, ordered by the class's smallest state.
  std::vector<ProbVec> vertices;
  /// vertices[k] - vertices[0] for k >= 1; spans the face's direction space.
  std::vector<Vector> basis;
};

FixedPointResult fixed_point(const Matrix& t);

ProbVec apply(const Matrix& t, const ProbVec& p);

struct Trajectory {
  std::vector<ProbVec> states;
  bool converged = false;
};

/// [p, Tp, ..., T^steps p]; `converged` is set when the last two iterates
/// differ by at most tolerance::kConvergence in max norm.
Trajectory iterate(const Matrix& t, const ProbVec& p, int steps);

}  // namespace stochdil
