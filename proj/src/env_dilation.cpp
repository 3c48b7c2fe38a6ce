#include "stochdil/env_dilation.hpp"

#include "stochdil/error.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace stochdil {

EnvDilation noisy_dilation(const Matrix& t) {
  require_stochastic(t);
  const std::size_t n_obj = t.rows();
  if (n_obj < 2) throw Error(ErrorKind::DimensionTooSmall, "noisy dilation needs N >= 2");
  const Mode mode = t.mode();
  const std::size_t dim = n_obj * n_obj;
  const auto spread = static_cast<std::int64_t>(n_obj * (n_obj - 1));
  const Scalar one = Scalar::one(mode);
  const Scalar denom = Scalar::integer(spread, mode);

  Matrix r(dim, dim, mode);
  for (std::size_t m = 0; m < n_obj; ++m) {
    for (std::size_t i = 0; i < n_obj; ++i) {
      const std::size_t row = flat_index(m, i, n_obj);
      const Scalar& tmi = t(m, i);
      const Scalar noise = (one - tmi) / denom;
      for (std::size_t n = 0; n < n_obj; ++n) {
        // j == 0 column block
        if (i == n) r.set(row, flat_index(n, 0, n_obj), tmi);
        for (std::size_t j = 1; j < n_obj; ++j) r.set(row, flat_index(n, j, n_obj), noise);
      }
    }
  }
  return {n_obj, n_obj, ProbVec::vertex(n_obj, 0, mode), std::move(r)};
}

Matrix extract_dilated(const Matrix& r, std::size_t zero_index) {
  const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(r.rows()))));
  if (root * root != r.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "standard dilation size " + std::to_string(r.rows()) + " is not a perfect square");
  }
  return extract_dilated(r, root, zero_index);
}

Matrix extract_dilated(const Matrix& r, std::size_t object_size, std::size_t zero_index) {
  if (!r.is_square() || object_size == 0 || r.rows() % object_size != 0) {
    throw Error(ErrorKind::DimensionMismatch, "R must be (N M) x (N M)");
  }
  const std::size_t env = r.rows() / object_size;
  if (zero_index >= env) {
    throw Error(ErrorKind::IndexOutOfRange, "zero index " + std::to_string(zero_index) + " >= " + std::to_string(env));
  }
  if (!validate(r).bi) throw Error(ErrorKind::NotBiStochastic, "R must be bi-stochastic");
  Matrix t(object_size, object_size, r.mode());
  for (std::size_t m = 0; m < object_size; ++m)
    for (std::size_t n = 0; n < object_size; ++n)
      for (std::size_t i = 0; i < env; ++i)
        t.add_to(m, n, r(flat_index(m, i, object_size), flat_index(n, zero_index, object_size)));
  return t;
}

namespace {

std::vector<double> random_simplex_point(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& v : p) total += (v = expo(rng));
  for (auto& v : p) v /= total;
  return p;
}

}  // namespace

bool verify_env_dilation(const Matrix& t, const EnvDilation& e, int trials, double tol) {
  const std::size_t n_obj = t.rows();
  const std::size_t env = e.env_size;
  if (!t.is_square() || e.rho.size() != env || e.r.rows() != n_obj * env || !e.r.is_square()) {
    throw Error(ErrorKind::DimensionMismatch, "dilation does not match T");
  }
  if (!validate(t, tol).left) return false;
  if (!validate(e.r, tol).bi) return false;

  if (t.mode() == Mode::Exact && e.r.mode() == Mode::Exact && e.rho.mode() == Mode::Exact) {
    for (std::size_t m = 0; m < n_obj; ++m) {
      for (std::size_t n = 0; n < n_obj; ++n) {
        Scalar acc = Scalar::zero(Mode::Exact);
        for (std::size_t i = 0; i < env; ++i)
          for (std::size_t j = 0; j < env; ++j)
            acc += e.r(flat_index(m, i, n_obj), flat_index(n, j, n_obj)) * e.rho[j];
        if (acc != t(m, n)) return false;
      }
    }
    return true;
  }

  const std::vector<double> r = e.r.to_doubles();
  const std::vector<double> tt = t.to_doubles();
  const std::vector<double> rho = e.rho.to_doubles();
  const std::size_t dim = n_obj * env;
  auto check = [&](const std::vector<double>& p) {
    for (std::size_t m = 0; m < n_obj; ++m) {
      double lhs = 0.0;
      for (std::size_t n = 0; n < n_obj; ++n) lhs += tt[m * n_obj + n] * p[n];
      double rhs = 0.0;
      for (std::size_t i = 0; i < env; ++i)
        for (std::size_t j = 0; j < env; ++j)
          for (std::size_t n = 0; n < n_obj; ++n)
            rhs += r[flat_index(m, i, n_obj) * dim + flat_index(n, j, n_obj)] * p[n] * rho[j];
      if (std::abs(lhs - rhs) > tol) return false;
    }
    return true;
  };
  for (std::size_t k = 0; k < n_obj; ++k) {
    std::vector<double> vertex(n_obj, 0.0);
    vertex[k] = 1.0;
    if (!check(vertex)) return false;
  }
  std::mt19937_64 rng(0x5eed5eedULL);
  for (int trial = 0; trial < trials; ++trial)
    if (!check(random_simplex_point(n_obj, rng))) return false;
  return true;
}

std::pair<Partition, RightInverse> as_coarse_graining(const EnvDilation& e) {
  return {Partition::product(e.object_size, e.env_size), product_right_inverse(e.object_size, e.rho)};
}

// ---------------------------------------------------------------------------
// Kraus route

double KrausSet::completeness_defect() const {
  Matrix acc(n, n, Mode::Float);
  for (const auto& a : operators) acc = acc + a.to_mode(Mode::Float).transpose() * a.to_mode(Mode::Float);
  return max_abs_diff(acc, Matrix::identity(n, Mode::Float));
}

KrausSet kraus_from_stochastic(const Matrix& t) {
  require_stochastic(t);
  const std::size_t n = t.rows();
  KrausSet k{n, {}};
  for (std::size_t i = 0; i < n; ++i) {
    Matrix a(n, n, Mode::Float);
    for (std::size_t m = 0; m < n; ++m) a.set(m, i, Scalar(std::sqrt(t(m, i).to_double())));
    k.operators.push_back(std::move(a));
  }
  return k;
}

Matrix stochastic_from_kraus(const KrausSet& k) {
  for (const auto& a : k.operators) {
    if (a.rows() != k.n || a.cols() != k.n) throw Error(ErrorKind::DimensionMismatch, "Kraus operator size");
  }
  if (double defect = k.completeness_defect(); defect > 1e-10) {
    throw Error(ErrorKind::IncompleteKrausSet, "completeness defect " + std::to_string(defect));
  }
  Matrix t(k.n, k.n, Mode::Float);
  for (const auto& a : k.operators)
    for (std::size_t m = 0; m < k.n; ++m)
      for (std::size_t n = 0; n < k.n; ++n) {
        const double v = a(m, n).to_double();
        t.add_to(m, n, Scalar(v * v));
      }
  return t;
}

UnitaryDilation unistochastic_dilation(const Matrix& t_in) {
  const Matrix t = t_in.to_mode(Mode::Float);
  const KrausSet kraus = kraus_from_stochastic(t);
  const std::size_t n_obj = t.rows();
  const std::size_t dim = n_obj * n_obj;

  // Columns of U, dense.
  std::vector<std::vector<double>> cols(dim);
  for (std::size_t n = 0; n < n_obj; ++n) {
    std::vector<double> v(dim, 0.0);
    for (std::size_t i = 0; i < n_obj; ++i)
      for (std::size_t m = 0; m < n_obj; ++m) v[flat_index(m, i, n_obj)] = kraus.operators[i](m, n).to_double();
    cols[flat_index(n, 0, n_obj)] = std::move(v);
  }

  std::vector<std::size_t> filled;
  for (std::size_t n = 0; n < n_obj; ++n) filled.push_back(flat_index(n, 0, n_obj));
  std::vector<std::size_t> open_slots;
  for (std::size_t c = 0; c < dim; ++c)
    if (cols[c].empty()) open_slots.push_back(c);

  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
  };

  std::size_t next_slot = 0;
  for (std::size_t cand = 0; cand < dim && next_slot < open_slots.size(); ++cand) {
    std::vector<double> v(dim, 0.0);
    v[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t c : filled) {
        const double proj = dot(cols[c], v);
        for (std::size_t k = 0; k < dim; ++k) v[k] -= proj * cols[c][k];
      }
    }
    const double norm = std::sqrt(dot(v, v));
    if (norm < 1e-8) continue;
    for (auto& x : v) x /= norm;
    const std::size_t slot = open_slots[next_slot++];
    cols[slot] = std::move(v);
    filled.push_back(slot);
  }
  if (next_slot < open_slots.size()) {
    throw Error(ErrorKind::CompletionFailure, "found only " + std::to_string(next_slot) + " of " +
                                                  std::to_string(open_slots.size()) + " completion columns");
  }

  UnitaryDilation out{Matrix(dim, dim, Mode::Float), Matrix(dim, dim, Mode::Float), 0.0};
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) {
      out.u.set(r, c, Scalar(cols[c][r]));
      out.r.set(r, c, Scalar(cols[c][r] * cols[c][r]));
    }
  }
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      out.orthogonality_defect = std::max(out.orthogonality_defect, std::abs(dot(cols[a], cols[b]) - (a == b ? 1.0 : 0.0)));
  return out;
}

}  // namespace stochdil
