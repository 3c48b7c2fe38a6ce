#include "stochdil/coarse_grain.hpp"

#include "stochdil/error.hpp"

#include <algorithm>
#include <limits>

namespace stochdil {

namespace {

constexpr std::size_t kUnassigned = std::numeric_limits<std::size_t>::max();
// S is materialized densely as d x d.
constexpr std::size_t kMaxLiftedSize = 1024;

}  // namespace

Partition::Partition(std::size_t d, std::vector<std::vector<std::size_t>> classes)
    : d_(d), classes_(std::move(classes)), owner_(d, kUnassigned) {
  if (classes_.empty()) throw Error(ErrorKind::InvalidPartition, "no classes");
  std::size_t covered = 0;
  for (std::size_t n = 0; n < classes_.size(); ++n) {
    if (classes_[n].empty()) throw Error(ErrorKind::InvalidPartition, "class " + std::to_string(n) + " is empty");
    for (std::size_t idx : classes_[n]) {
      if (idx >= d_) throw Error(ErrorKind::InvalidPartition, "index " + std::to_string(idx) + " outside 0..d-1");
      if (owner_[idx] != kUnassigned) {
        throw Error(ErrorKind::InvalidPartition, "index " + std::to_string(idx) + " appears twice");
      }
      owner_[idx] = n;
      ++covered;
    }
  }
  if (covered != d_) throw Error(ErrorKind::InvalidPartition, "classes do not cover 0..d-1");
}

Partition Partition::consecutive(const std::vector<std::size_t>& sizes) {
  std::vector<std::vector<std::size_t>> classes;
  std::size_t next = 0;
  for (std::size_t s : sizes) {
    std::vector<std::size_t> cls(s);
    for (auto& idx : cls) idx = next++;
    classes.push_back(std::move(cls));
  }
  return Partition(next, std::move(classes));
}

Partition Partition::singletons(std::size_t n) { return consecutive(std::vector<std::size_t>(n, 1)); }

Partition Partition::product(std::size_t n_objects, std::size_t env_size) {
  std::vector<std::vector<std::size_t>> classes(n_objects);
  for (std::size_t m = 0; m < n_objects; ++m)
    for (std::size_t i = 0; i < env_size; ++i) classes[m].push_back(flat_index(m, i, n_objects));
  return Partition(n_objects * env_size, std::move(classes));
}

std::vector<std::size_t> Partition::class_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(classes_.size());
  for (const auto& c : classes_) sizes.push_back(c.size());
  return sizes;
}

bool Partition::is_proper() const {
  return std::any_of(classes_.begin(), classes_.end(), [](const auto& c) { return c.size() > 1; });
}

Matrix projection_matrix(const Partition& p, Mode mode) {
  Matrix x(p.num_classes(), p.size(), mode);
  for (std::size_t n = 0; n < p.num_classes(); ++n)
    for (std::size_t idx : p.classes()[n]) x.set(n, idx, Scalar::one(mode));
  return x;
}

RightInverse uniform_right_inverse(const Partition& p, Mode mode) {
  Matrix y(p.size(), p.num_classes(), mode);
  for (std::size_t n = 0; n < p.num_classes(); ++n) {
    const auto dn = static_cast<std::int64_t>(p.class_size(n));
    Scalar share = mode == Mode::Exact ? Scalar::fraction(1, dn) : Scalar(1.0 / static_cast<double>(dn));
    for (std::size_t idx : p.classes()[n]) y.set(idx, n, share);
  }
  return {std::move(y), RightInverseKind::Uniform};
}

RightInverse product_right_inverse(std::size_t n_objects, const ProbVec& rho) {
  if (n_objects == 0) throw Error(ErrorKind::DimensionTooSmall, "product lift needs at least one object state");
  const std::size_t env = rho.size();
  const Mode mode = rho.mode();
  Matrix y(n_objects * env, n_objects, mode);
  for (std::size_t m = 0; m < n_objects; ++m)
    for (std::size_t i = 0; i < env; ++i) y.set(flat_index(m, i, n_objects), m, rho[i]);
  return {std::move(y), RightInverseKind::Product};
}

RightInverse custom_right_inverse(const Partition& p, Matrix y) {
  if (y.rows() != p.size() || y.cols() != p.num_classes()) {
    throw Error(ErrorKind::DimensionMismatch, "right inverse must be d x N");
  }
  auto report = validate(y);
  if (!report.left) throw Error(ErrorKind::InvalidRightInverse, "columns of Y must sum to 1");
  const Matrix xy = projection_matrix(p, y.mode()) * y;
  if (max_abs_diff(xy, Matrix::identity(p.num_classes(), y.mode())) > (y.mode() == Mode::Exact ? 0.0 : tolerance::kValidation)) {
    throw Error(ErrorKind::InvalidRightInverse, "X Y differs from the identity");
  }
  return {std::move(y), RightInverseKind::Custom};
}

Matrix coarse_grain(const Matrix& s, const Partition& p, const RightInverse& y) {
  if (!s.is_square() || s.rows() != p.size()) {
    throw Error(ErrorKind::DimensionMismatch, "S must be d x d with d = " + std::to_string(p.size()));
  }
  if (y.y.rows() != p.size() || y.y.cols() != p.num_classes()) {
    throw Error(ErrorKind::DimensionMismatch, "Y must be d x N");
  }
  require_stochastic(s);
  const Matrix x = projection_matrix(p, s.mode());
  const Matrix lift = y.y.to_mode(s.mode());
  const double slack = s.mode() == Mode::Exact ? 0.0 : tolerance::kValidation;
  if (max_abs_diff(x * lift, Matrix::identity(p.num_classes(), s.mode())) > slack) {
    throw Error(ErrorKind::InvalidRightInverse, "X Y differs from the identity");
  }
  return x * (s * lift);
}

bool UniformDilation::verified() const {
  return std::all_of(verification.begin(), verification.end(), [](const Check& c) { return c.passed; });
}

UniformDilation uniform_dilation(const Matrix& t, const ProbVec& p) {
  require_stochastic(t);
  if (p.mode() != Mode::Exact || t.mode() != Mode::Exact) {
    throw Error(ErrorKind::NotExact, "uniform dilation needs exact rational T and p");
  }
  if (p.size() != t.rows()) throw Error(ErrorKind::DimensionMismatch, "p does not match T");
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (p[n].is_zero()) throw Error(ErrorKind::ZeroComponent, "p_" + std::to_string(n) + " = 0");
  }
  if (t * p.entries() != p.entries()) throw Error(ErrorKind::NotFixedPoint, "T p differs from p");

  BigInt d = 1;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const BigInt den = denominator(p[n].rational());
    d = d / boost::multiprecision::gcd(d, den) * den;
  }
  if (d > kMaxLiftedSize) {
    throw Error(ErrorKind::ParameterOutOfRange,
                "least common denominator " + d.str() + " exceeds " + std::to_string(kMaxLiftedSize));
  }
  std::vector<std::size_t> sizes;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const Rational dn = p[n].rational() * Rational(d);
    sizes.push_back(numerator(dn).convert_to<std::size_t>());
  }

  Partition partition = Partition::consecutive(sizes);
  RightInverse y = uniform_right_inverse(partition);
  const Matrix x = projection_matrix(partition);
  Matrix s = y.y * (t * x);

  auto report = validate(s);
  Matrix back = coarse_grain(s, partition, y);
  std::vector<Check> checks{
      {"S bi-stochastic", report.bi, std::max(report.max_column_defect.to_double(), report.max_row_defect.to_double())},
      {"X S Y == T", back == t, max_abs_diff(back, t)},
  };
  return {std::move(partition), std::move(s), std::move(y), std::move(checks)};
}

}  // namespace stochdil
