#include "stochdil/entropy.hpp"

#include "stochdil/coarse_grain.hpp"
#include "stochdil/env_dilation.hpp"
#include "stochdil/error.hpp"

#include <cmath>

namespace stochdil {

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

double shannon_entropy(const ProbVec& p) {
  const std::vector<double> values = p.to_doubles();
  return shannon_entropy(values);
}

namespace {

std::vector<double> image(const std::vector<double>& t, std::size_t n, const std::vector<double>& p) {
  std::vector<double> out(n, 0.0);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k) out[m] += t[m * n + k] * p[k];
  return out;
}

RaySample sample_at(const std::vector<double>& t, std::size_t n, const std::vector<double>& a,
                    const std::vector<double>& q, double s) {
  RaySample out;
  out.t = s;
  out.point.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.point[k] = (1.0 - s) * a[k] + s * q[k];
  out.h_point = shannon_entropy(out.point);
  out.h_image = shannon_entropy(image(t, n, out.point));
  return out;
}

bool inside(const RaySample& s) { return s.h_image <= s.h_point + kRegionSlack; }

}  // namespace

bool in_decreasing_region(const Matrix& t, const ProbVec& p) {
  const ProbVec q = apply(t, p.to_mode(t.mode()));
  return shannon_entropy(q) <= shannon_entropy(p) + kRegionSlack;
}

std::vector<RayScan> region_boundary_scan(const Matrix& t, const ProbVec& anchor,
                                          const std::vector<ProbVec>& directions, int resolution) {
  require_stochastic(t);
  const std::size_t n = t.rows();
  if (resolution < 1) throw Error(ErrorKind::ParameterOutOfRange, "resolution must be at least 1");
  if (anchor.size() != n) throw Error(ErrorKind::DimensionMismatch, "anchor does not match T");
  if (!in_decreasing_region(t, anchor)) throw Error(ErrorKind::AnchorOutsideRegion, "H(T a) > H(a)");

  const std::vector<double> tt = t.to_doubles();
  const std::vector<double> a = anchor.to_doubles();
  std::vector<RayScan> scans;
  scans.reserve(directions.size());
  for (const auto& dir : directions) {
    if (dir.size() != n) throw Error(ErrorKind::DimensionMismatch, "direction does not match T");
    const std::vector<double> q = dir.to_doubles();
    RayScan scan;
    std::size_t first_out = 0;
    for (int k = 0; k <= resolution; ++k) {
      scan.samples.push_back(sample_at(tt, n, a, q, static_cast<double>(k) / resolution));
      if (first_out == 0 && k > 0 && !inside(scan.samples.back())) first_out = static_cast<std::size_t>(k);
    }
    if (first_out == 0) {
      scan.whole_segment_inside = true;
      scan.boundary = scan.samples.back();
    } else {
      double lo = scan.samples[first_out - 1].t;
      double hi = scan.samples[first_out].t;
      while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (inside(sample_at(tt, n, a, q, mid)) ? lo : hi) = mid;
      }
      scan.boundary = sample_at(tt, n, a, q, lo);
    }
    scans.push_back(std::move(scan));
  }
  return scans;
}

EntropyLedger entropy_ledger(const Matrix& t, const ProbVec& p_in) {
  const EnvDilation dil = noisy_dilation(t);
  const std::size_t n = t.rows();
  if (p_in.size() != n) throw Error(ErrorKind::DimensionMismatch, "p does not match T");
  const ProbVec p = p_in.to_mode(t.mode());

  const RightInverse lift = product_right_inverse(n, dil.rho);
  const Vector lifted = lift.y * p.entries();
  const Vector evolved = dil.r * lifted;

  Vector marginal_1(n, Scalar::zero(t.mode()));
  Vector marginal_2(n, Scalar::zero(t.mode()));
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t i = 0; i < n; ++i) {
      marginal_1[m] += evolved[flat_index(m, i, n)];
      marginal_2[i] += evolved[flat_index(m, i, n)];
    }
  }

  EntropyLedger ledger;
  ledger.h_input = shannon_entropy(p);
  ledger.h_lifted = shannon_entropy(to_doubles(lifted));
  ledger.h_evolved = shannon_entropy(to_doubles(evolved));
  ledger.h_marginal_1 = shannon_entropy(to_doubles(marginal_1));
  ledger.h_marginal_2 = shannon_entropy(to_doubles(marginal_2));
  ledger.h_output = shannon_entropy(apply(t, p));
  return ledger;
}

// ---------------------------------------------------------------------------
// Birkhoff-von Neumann

Matrix permutation_matrix(const std::vector<std::size_t>& perm, Mode mode) {
  Matrix p(perm.size(), perm.size(), mode);
  for (std::size_t c = 0; c < perm.size(); ++c) p.set(perm[c], c, Scalar::one(mode));
  return p;
}

Matrix BirkhoffDecomposition::reconstruct(std::size_t n, Mode mode) const {
  Matrix out(n, n, mode);
  for (const auto& term : terms) {
    const Scalar w = term.weight.to_mode(mode);
    for (std::size_t c = 0; c < n; ++c) out.add_to(term.perm[c], c, w);
  }
  return out;
}

Scalar BirkhoffDecomposition::weight_sum(Mode mode) const {
  Scalar total = Scalar::zero(mode);
  for (const auto& term : terms) total += term.weight.to_mode(mode);
  return total;
}

namespace {

constexpr double kSupportThreshold = 1e-12;

class SupportMatcher {
 public:
  explicit SupportMatcher(std::vector<std::vector<std::size_t>> adjacency)
      : adj_(std::move(adjacency)), row_owner_(adj_.size(), kFree) {}

  // Column -> matched row, or empty if the support has no perfect matching.
  std::vector<std::size_t> perfect_matching() {
    for (std::size_t col = 0; col < adj_.size(); ++col) {
      visited_.assign(adj_.size(), false);
      if (!augment(col)) return {};
    }
    std::vector<std::size_t> perm(adj_.size());
    for (std::size_t row = 0; row < row_owner_.size(); ++row) perm[row_owner_[row]] = row;
    return perm;
  }

 private:
  static constexpr std::size_t kFree = static_cast<std::size_t>(-1);

  bool augment(std::size_t col) {
    for (std::size_t row : adj_[col]) {
      if (visited_[row]) continue;
      visited_[row] = true;
      if (row_owner_[row] == kFree || augment(row_owner_[row])) {
        row_owner_[row] = col;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> row_owner_;
  std::vector<bool> visited_;
};

bool in_support(const Scalar& v) {
  return v.is_exact() ? v.sign() > 0 : v.to_double() > kSupportThreshold;
}

}  // namespace

BirkhoffDecomposition birkhoff_decompose(const Matrix& s) {
  if (!s.is_square()) throw Error(ErrorKind::NotSquare, "Birkhoff decomposition needs a square matrix");
  if (!validate(s).bi) throw Error(ErrorKind::NotBiStochastic, "input is not bi-stochastic");
  const std::size_t n = s.rows();
  const Mode mode = s.mode();
  Matrix residual = s;
  BirkhoffDecomposition out;

  for (std::size_t guard = 0; guard <= n * n; ++guard) {
    std::vector<std::vector<std::size_t>> adjacency(n);
    bool any = false;
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t r = 0; r < n; ++r)
        if (in_support(residual(r, c))) {
          adjacency[c].push_back(r);
          any = true;
        }
    if (!any) return out;

    std::vector<std::size_t> perm = SupportMatcher(std::move(adjacency)).perfect_matching();
    if (perm.empty()) throw Error(ErrorKind::NoPerfectMatching, "support admits no perfect matching");

    std::size_t argmin = 0;
    for (std::size_t c = 1; c < n; ++c)
      if (residual(perm[c], c) < residual(perm[argmin], argmin)) argmin = c;
    const Scalar weight = residual(perm[argmin], argmin);
    for (std::size_t c = 0; c < n; ++c) residual.set(perm[c], c, residual(perm[c], c) - weight);
    residual.set(perm[argmin], argmin, Scalar::zero(mode));
    out.terms.push_back({weight, std::move(perm)});
  }
  throw Error(ErrorKind::NoPerfectMatching, "peeling did not terminate");
}

}  // namespace stochdil
