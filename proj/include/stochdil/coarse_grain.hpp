#pragma once

#include "stochdil/core.hpp"
#include "stochdil/matrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace stochdil {

/// Ordered partition of {0, ..., d-1} into non-empty, pairwise disjoint classes.
class Partition {
 public:
  Partition(std::size_t d, std::vector<std::vector<std::size_t>> classes);

  /// Classes of the given sizes over consecutive indices: {0..s0-1}, {s0..}, ...
  static Partition consecutive(const std::vector<std::size_t>& sizes);
  static Partition singletons(std::size_t n);
  /// Classes {n} x {0..env_size-1} of the product space, laid out with
  /// flat_index(n, i, n_objects).
  static Partition product(std::size_t n_objects, std::size_t env_size);

  std::size_t size() const noexcept { return d_; }
  std::size_t num_classes() const noexcept { return classes_.size(); }
  const std::vector<std::vector<std::size_t>>& classes() const noexcept { return classes_; }
  std::size_t class_size(std::size_t n) const { return classes_[n].size(); }
  std::vector<std::size_t> class_sizes() const;
  std::size_t class_of(std::size_t index) const { return owner_[index]; }
  /// Some class holds more than one index.
  bool is_proper() const;

  friend bool operator==(const Partition& a, const Partition& b) { return a.d_ == b.d_ && a.classes_ == b.classes_; }

 private:
  std::size_t d_;
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> owner_;
};

/// Composite index (object m, environment i) -> i * n_objects + m.
constexpr std::size_t flat_index(std::size_t m, std::size_t i, std::size_t n_objects) noexcept {
  return i * n_objects + m;
}

enum class RightInverseKind { Uniform, Product, Custom };

/// A d x N left-stochastic lift Y with X Y = 1 for the partition's projection X.
struct RightInverse {
  Matrix y;
  RightInverseKind kind = RightInverseKind::Custom;
};

/// X(n, nu) = 1 iff nu is in class n.
Matrix projection_matrix(const Partition& p, Mode mode = Mode::Exact);

/// Y(nu, n) = 1/d_n on class n: spreads p_n evenly over its class.
RightInverse uniform_right_inverse(const Partition& p, Mode mode = Mode::Exact);

/// Y((m,i), k) = delta_mk rho_i, so Y p = p (x) rho. Pair with Partition::product.
RightInverse product_right_inverse(std::size_t n_objects, const ProbVec& rho);

/// Validates an arbitrary column-stochastic d x N matrix as a right inverse of
/// the partition's projection; throws InvalidRightInverse otherwise.
RightInverse custom_right_inverse(const Partition& p, Matrix y);

/// T = X S Y.
Matrix coarse_grain(const Matrix& s, const Partition& p, const RightInverse& y);

struct Check {
  std::string name;
  bool passed = false;
  double defect = 0.0;
};

struct UniformDilation {
  Partition partition;
  Matrix s;
  RightInverse y;
  std::vector<Check> verification;

  bool verified() const;
};

/// Dilation of T by uniform coarse graining around an exact, strictly positive
/// fixed point p: d is the least common denominator of p, class n has
/// d_n = p_n d consecutive indices and S = Y T X is bi-stochastic.
UniformDilation uniform_dilation(const Matrix& t, const ProbVec& p);

}  // namespace stochdil
