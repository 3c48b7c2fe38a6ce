#include "stochdil/core.hpp"

#include "stochdil/error.hpp"
#include "stochdil/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace stochdil {

// ---------------------------------------------------------------------------
// ProbVec

ProbVec::ProbVec(Vector entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw Error(ErrorKind::InvalidProbVec, "empty distribution");
  const Mode mode = vector_mode(entries_);
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    if (entries_[k].sign() < 0) {
      throw Error(ErrorKind::InvalidProbVec, "negative entry at index " + std::to_string(k));
    }
  }
  Scalar total = sum(entries_);
  bool ok = mode == Mode::Exact ? total == Scalar::one(Mode::Exact)
                                : std::abs(total.to_double() - 1.0) <= tolerance::kProbSum;
  if (!ok) throw Error(ErrorKind::InvalidProbVec, "entries sum to " + total.to_string());
}

ProbVec ProbVec::uniform(std::size_t n, Mode mode) {
  if (n == 0) throw Error(ErrorKind::InvalidProbVec, "empty distribution");
  Scalar share = mode == Mode::Exact ? Scalar(Rational(1, static_cast<long long>(n)))
                                     : Scalar(1.0 / static_cast<double>(n));
  return assume_valid(Vector(n, share));
}

ProbVec ProbVec::vertex(std::size_t n, std::size_t k, Mode mode) {
  if (k >= n) throw Error(ErrorKind::IndexOutOfRange, "vertex index " + std::to_string(k));
  Vector v(n, Scalar::zero(mode));
  v[k] = Scalar::one(mode);
  return assume_valid(std::move(v));
}

ProbVec ProbVec::from_doubles(const std::vector<double>& entries) {
  return ProbVec(Vector(entries.begin(), entries.end()));
}

ProbVec ProbVec::exact(const std::vector<std::string>& entries) {
  Vector v;
  v.reserve(entries.size());
  for (const auto& e : entries) v.push_back(Scalar::parse_exact(e));
  return ProbVec(std::move(v));
}

ProbVec ProbVec::assume_valid(Vector entries) { return ProbVec(std::move(entries), Unchecked{}); }

bool ProbVec::is_interior() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Scalar& s) { return s.sign() > 0; });
}

// ---------------------------------------------------------------------------
// Validation

namespace {

bool within(const Scalar& defect, double tol) {
  return defect.is_exact() ? defect.is_zero() : defect.to_double() <= tol;
}

Scalar max_defect(const Vector& sums) {
  Scalar worst = Scalar::zero(vector_mode(sums));
  for (const auto& s : sums) worst = max(worst, (s - Scalar::one(s.mode())).abs());
  return worst;
}

}  // namespace

StochasticityReport validate(const Matrix& m, double tol) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Scalar& v = m(r, c);
      bool negative = v.is_exact() ? v.sign() < 0 : v.to_double() < -tol;
      if (negative) {
        throw Error(ErrorKind::NegativeEntry,
                    "entry (" + std::to_string(r) + ", " + std::to_string(c) + ") = " + v.to_string());
      }
    }
  }
  StochasticityReport report;
  report.max_column_defect = max_defect(m.column_sums());
  report.max_row_defect = max_defect(m.row_sums());
  report.left = within(report.max_column_defect, tol);
  report.right = within(report.max_row_defect, tol);
  report.bi = report.left && report.right;
  report.irreducible = m.is_square() && report.left && strongly_connected_components(m).size() == 1;
  return report;
}

void require_stochastic(const Matrix& t, double tol) {
  if (!t.is_square()) {
    throw Error(ErrorKind::NotSquare, std::to_string(t.rows()) + "x" + std::to_string(t.cols()));
  }
  auto report = validate(t, tol);
  if (!report.left) {
    throw Error(ErrorKind::NotStochastic, "column sums deviate from 1 by " + report.max_column_defect.to_string());
  }
}

// ---------------------------------------------------------------------------
// Support digraph

std::vector<std::vector<std::size_t>> strongly_connected_components(const Matrix& t) {
  const std::size_t n = t.rows();
  std::vector<std::vector<std::size_t>> out_edges(n), in_edges(n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t src = 0; src < n; ++src) {
      if (t(m, src).sign() > 0) {
        out_edges[src].push_back(m);
        in_edges[m].push_back(src);
      }
    }
  }

  // Kosaraju: finish order on the forward graph, then sweep the reverse graph.
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    seen[root] = true;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < out_edges[node].size()) {
        std::size_t child = out_edges[node][next++];
        if (!seen[child]) {
          seen[child] = true;
          stack.emplace_back(child, 0);
        }
      } else {
        order.push_back(node);
        stack.pop_back();
      }
    }
  }

  std::vector<int> component(n, -1);
  std::vector<std::vector<std::size_t>> components;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (component[*it] >= 0) continue;
    const int id = static_cast<int>(components.size());
    components.emplace_back();
    std::vector<std::size_t> stack{*it};
    component[*it] = id;
    while (!stack.empty()) {
      std::size_t node = stack.back();
      stack.pop_back();
      components.back().push_back(node);
      for (std::size_t prev : in_edges[node]) {
        if (component[prev] < 0) {
          component[prev] = id;
          stack.push_back(prev);
        }
      }
    }
  }
  for (auto& c : components) std::sort(c.begin(), c.end());
  std::sort(components.begin(), components.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return components;
}

bool is_irreducible(const Matrix& t) {
  require_stochastic(t);
  return strongly_connected_components(t).size() == 1;
}

// ---------------------------------------------------------------------------
// Fixed points

namespace {

// Closed classes are the components no probability mass can leave.
std::vector<std::vector<std::size_t>> closed_classes(const Matrix& t) {
  std::vector<std::vector<std::size_t>> closed;
  for (auto& cls : strongly_connected_components(t)) {
    bool leaks = false;
    for (std::size_t src : cls) {
      for (std::size_t m = 0; m < t.rows() && !leaks; ++m) {
        if (t(m, src).sign() > 0 && !std::binary_search(cls.begin(), cls.end(), m)) leaks = true;
      }
    }
    if (!leaks) closed.push_back(std::move(cls));
  }
  return closed;
}

// Stationary distribution of T restricted to a closed class: solve
// (T_CC - 1) q = 0 with the last equation replaced by sum(q) = 1.
ProbVec class_stationary(const Matrix& t, const std::vector<std::size_t>& cls) {
  const Mode mode = t.mode();
  const std::size_t k = cls.size();
  Matrix system(k, k, mode);
  Vector rhs(k, Scalar::zero(mode));
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) {
      Scalar v = t(cls[r], cls[c]);
      if (r == c) v -= Scalar::one(mode);
      system.set(r, c, std::move(v));
    }
  }
  for (std::size_t c = 0; c < k; ++c) system.set(k - 1, c, Scalar::one(mode));
  rhs[k - 1] = Scalar::one(mode);

  auto solution = linalg::solve(system, rhs, 1e-14);
  if (!solution) throw Error(ErrorKind::NotStochastic, "closed class has a singular stationary system");

  Vector full(t.rows(), Scalar::zero(mode));
  if (mode == Mode::Exact) {
    for (std::size_t r = 0; r < k; ++r) full[cls[r]] = (*solution)[r];
    return ProbVec(std::move(full));
  }
  // Clip round-off negatives and renormalize.
  double total = 0.0;
  std::vector<double> q(k);
  for (std::size_t r = 0; r < k; ++r) {
    q[r] = std::max(0.0, (*solution)[r].to_double());
    total += q[r];
  }
  for (std::size_t r = 0; r < k; ++r) full[cls[r]] = Scalar(q[r] / total);
  return ProbVec::assume_valid(std::move(full));
}

double residual(const Matrix& t, const Vector& p) { return max_abs_diff(t * p, p); }

std::optional<ProbVec> power_iteration(const Matrix& t) {
  constexpr int kMaxIterations = 100000;
  Vector p = ProbVec::uniform(t.rows(), Mode::Float).entries();
  double last = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kMaxIterations; ++it) {
    Vector next = t * p;
    const double step = max_abs_diff(next, p);
    // Past the tolerance, keep going while the steps still shrink.
    if (step <= tolerance::kFixedPointResidual && step >= last) return ProbVec::assume_valid(std::move(p));
    if (step == 0.0) return ProbVec::assume_valid(std::move(next));
    last = step;
    p = std::move(next);
  }
  if (last <= tolerance::kFixedPointResidual) return ProbVec::assume_valid(std::move(p));
  return std::nullopt;
}

}  // namespace

FixedPointResult fixed_point(const Matrix& t) {
  require_stochastic(t);
  const std::size_t n = t.rows();
  const Mode mode = t.mode();

  Matrix shifted = t - Matrix::identity(n, mode);
  const std::size_t nullity = n - linalg::rank(shifted, tolerance::kRank);

  std::vector<ProbVec> vertices;
  for (const auto& cls : closed_classes(t)) vertices.push_back(class_stationary(t, cls));

  if (mode == Mode::Exact && nullity != vertices.size()) {
    throw Error(ErrorKind::NotStochastic, "fixed-point space does not match the closed classes");
  }

  const std::size_t face_dimension = nullity == 0 ? 0 : nullity - 1;
  FixedPointResult result{vertices.front(), face_dimension, face_dimension == 0, vertices, {}};
  for (std::size_t k = 1; k < vertices.size(); ++k) {
    Vector dir = vertices[k].entries();
    for (std::size_t r = 0; r < n; ++r) dir[r] -= vertices[0][r];
    result.basis.push_back(std::move(dir));
  }

  if (mode == Mode::Float && result.face_dimension == 0) {
    if (auto p = power_iteration(t); p && residual(t, p->entries()) <= tolerance::kFixedPointResidual) {
      result.representative = *p;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Evolution

ProbVec apply(const Matrix& t, const ProbVec& p) {
  if (t.cols() != p.size()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix has " + std::to_string(t.cols()) +
                                                  " columns, distribution has " + std::to_string(p.size()));
  }
  if (!validate(t).left) throw Error(ErrorKind::NotStochastic, "apply needs a left-stochastic matrix");
  return ProbVec::assume_valid(t * p.entries());
}

Trajectory iterate(const Matrix& t, const ProbVec& p, int steps) {
  if (steps < 0) throw Error(ErrorKind::ParameterOutOfRange, "steps must be non-negative");
  if (t.cols() != p.size() || !t.is_square()) {
    throw Error(ErrorKind::DimensionMismatch, "iterate needs a square matrix matching the distribution");
  }
  if (!validate(t).left) throw Error(ErrorKind::NotStochastic, "iterate needs a left-stochastic matrix");
  Trajectory traj;
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.states.push_back(p);
  for (int k = 0; k < steps; ++k) {
    traj.states.push_back(ProbVec::assume_valid(t * traj.states.back().entries()));
  }
  if (steps > 0) {
    const auto& last = traj.states.back().entries();
    const auto& prev = traj.states[traj.states.size() - 2].entries();
    traj.converged = max_abs_diff(last, prev) <= tolerance::kConvergence;
  }
  return traj;
}

}  // namespace stochdil
