#include "stochdil/coarse_grain.hpp"
#include "stochdil/entropy.hpp"
#include "stochdil/env_dilation.hpp"
#include "stochdil/models.hpp"

#include <gtest/gtest.h>

#include "errors.hpp"
#include "oracles.hpp"
#include "reference.hpp"

using namespace stochdil;

namespace {

// R[(m,i)][(n,j)] straight from the noisy construction, indexed without flat_index.
Matrix noisy_oracle(const Matrix& t) {
  const std::size_t n = t.rows();
  const Scalar one = Scalar::one(t.mode());
  const Scalar spread = Scalar::integer(static_cast<std::int64_t>(n * (n - 1)), t.mode());
  Matrix r(n * n, n * n, t.mode());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t row = i * n + m, col = j * n + k;
          if (j == 0) {
            r.set(row, col, k == i ? t(m, i) : Scalar::zero(t.mode()));
          } else {
            r.set(row, col, (one - t(m, i)) / spread);
          }
        }
  return r;
}

}  // namespace

TEST(NoisyDilation, TwoStateGolden) {
  const Matrix t = models::two_state(Scalar::fraction(3, 10), Scalar::fraction(7, 10));
  const EnvDilation e = noisy_dilation(t);
  EXPECT_EQ(e.env_size, 2u);
  EXPECT_EQ(e.rho, ProbVec::vertex(2, 0));
  EXPECT_EQ(e.r, reference::r4(Scalar::fraction(3, 10), Scalar::fraction(7, 10)));
  EXPECT_TRUE(validate(e.r).bi);
  EXPECT_EQ(extract_dilated(e.r, 0), t);
}

TEST(NoisyDilation, DemonGolden) {
  const EnvDilation e = noisy_dilation(models::maxwell_demon());
  EXPECT_EQ(e.r, reference::maxwell_r());
  EXPECT_EQ(extract_dilated(reference::maxwell_r(), 0), models::maxwell_demon());
  EXPECT_EQ(extract_dilated(reference::maxwell_r(), 4, 0), models::maxwell_demon());
}

TEST(NoisyDilation, IdentityExample) {
  const EnvDilation e = noisy_dilation(Matrix::identity(2));
  for (std::size_t m = 0; m < 2; ++m)
    for (std::size_t i = 0; i < 2; ++i) {
      const std::size_t row = flat_index(m, i, 2);
      for (std::size_t n = 0; n < 2; ++n) {
        EXPECT_EQ(e.r(row, flat_index(n, 0, 2)), Scalar::integer(m == i && i == n, Mode::Exact));
        EXPECT_EQ(e.r(row, flat_index(n, 1, 2)), m == i ? Scalar::zero(Mode::Exact) : Scalar::fraction(1, 2));
      }
    }
}

TEST(NoisyDilation, MatchesOracleAndIsBiStochastic) {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = gen.size(2, 6);
    const Matrix t = gen.rational_stochastic(n, gen.integer(1, 10));
    const EnvDilation e = noisy_dilation(t);
    EXPECT_EQ(e.r, noisy_oracle(t));
    const auto report = validate(e.r);
    EXPECT_TRUE(report.bi);
    EXPECT_EQ(extract_dilated(e.r, 0), t);
    EXPECT_TRUE(verify_env_dilation(t, e));

    const auto [part, y] = as_coarse_graining(e);
    EXPECT_EQ(coarse_grain(e.r, part, y), t);

    // Marginals of Q = R (p (x) delta_0).
    const ProbVec p(gen.rational_simplex(n, 12, false));
    const Vector q = e.r * (y.y * p.entries());
    Vector first(n, Scalar::zero(Mode::Exact)), second(n, Scalar::zero(Mode::Exact));
    for (std::size_t m = 0; m < n; ++m)
      for (std::size_t i = 0; i < n; ++i) {
        first[m] += q[flat_index(m, i, n)];
        second[i] += q[flat_index(m, i, n)];
      }
    EXPECT_EQ(first, t * p.entries());
    EXPECT_EQ(second, p.entries());
  }
}

TEST(NoisyDilation, FloatModeStaysFloat) {
  oracle::Gen gen(42);
  const Matrix t = gen.float_stochastic(3);
  const EnvDilation e = noisy_dilation(t);
  EXPECT_EQ(e.r.mode(), Mode::Float);
  EXPECT_TRUE(validate(e.r, 1e-12).bi);
  EXPECT_LE(max_abs_diff(extract_dilated(e.r, 0), t), 1e-15);
  EXPECT_TRUE(verify_env_dilation(t, e));
}

TEST(NoisyDilation, Errors) {
  EXPECT_EQ(kind_of([] { noisy_dilation(Matrix::identity(1)); }), ErrorKind::DimensionTooSmall);
  EXPECT_EQ(kind_of([] { noisy_dilation(Matrix::exact({{"1", "1"}, {"0", "1"}})); }), ErrorKind::NotStochastic);
  EXPECT_EQ(kind_of([] { noisy_dilation(Matrix(2, 3)); }), ErrorKind::NotSquare);
}

TEST(Extract, PermutationFixingEnvironment) {
  // Swap the object states whatever the environment: R = 1_M (x) swap.
  Matrix r(6, 6);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t m = 0; m < 2; ++m) r.set(flat_index(1 - m, i, 2), flat_index(m, i, 2), Scalar::one(Mode::Exact));
  for (std::size_t z = 0; z < 3; ++z) EXPECT_EQ(extract_dilated(r, 2, z), permutation_matrix({1, 0}));
}

TEST(Extract, Errors) {
  EXPECT_EQ(kind_of([] { extract_dilated(reference::maxwell_r(), 4); }), ErrorKind::IndexOutOfRange);
  EXPECT_EQ(kind_of([] { extract_dilated(Matrix::identity(5), 0); }), ErrorKind::DimensionMismatch);
  EXPECT_EQ(kind_of([] { extract_dilated(Matrix::identity(6), 4, 0); }), ErrorKind::DimensionMismatch);
  Matrix not_bi = reference::maxwell_r();
  not_bi.set(0, 0, Scalar::fraction(23, 24));
  EXPECT_EQ(kind_of([&] { extract_dilated(not_bi, 0); }), ErrorKind::NotBiStochastic);
}

TEST(VerifyDilation, DetectsPerturbation) {
  const Matrix t = models::maxwell_demon();
  const EnvDilation good = noisy_dilation(t);
  EXPECT_TRUE(verify_env_dilation(t, good));

  EnvDilation bumped = good;
  bumped.r.set(1, 4, Scalar::fraction(3, 24));
  EXPECT_FALSE(verify_env_dilation(t, bumped));

  // Bi-stochastic but dilating a different matrix: swap two columns.
  EnvDilation swapped = good;
  for (std::size_t row = 0; row < 16; ++row) {
    swapped.r.set(row, 1, good.r(row, 2));
    swapped.r.set(row, 2, good.r(row, 1));
  }
  EXPECT_TRUE(validate(swapped.r).bi);
  EXPECT_FALSE(verify_env_dilation(t, swapped));
  EXPECT_FALSE(verify_env_dilation(t.to_mode(Mode::Float), EnvDilation{4, 4, ProbVec::vertex(4, 0, Mode::Float),
                                                                        swapped.r.to_mode(Mode::Float)}));

  EXPECT_EQ(kind_of([&] { verify_env_dilation(Matrix::identity(3), good); }), ErrorKind::DimensionMismatch);
}

TEST(AsCoarseGraining, TrivialEnvironment) {
  const Matrix t = models::two_state(Scalar::fraction(1, 4), Scalar::fraction(1, 4));
  const EnvDilation e{2, 1, ProbVec::vertex(1, 0), t};
  const auto [part, y] = as_coarse_graining(e);
  EXPECT_EQ(part.num_classes(), 2u);
  EXPECT_EQ(coarse_grain(e.r, part, y), t);
}

TEST(AsCoarseGraining, DemonClasses) {
  const auto [part, y] = as_coarse_graining(noisy_dilation(models::maxwell_demon()));
  EXPECT_EQ(part.num_classes(), 4u);
  EXPECT_EQ(part.class_sizes(), (std::vector<std::size_t>{4, 4, 4, 4}));
  EXPECT_EQ(coarse_grain(reference::maxwell_r(), part, y), models::maxwell_demon());
}

TEST(Kraus, IdentityGivesMatrixUnits) {
  const KrausSet k = kraus_from_stochastic(Matrix::identity(2));
  ASSERT_EQ(k.operators.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(k.operators[i](r, c).to_double(), (r == i && c == i) ? 1.0 : 0.0);
  }
}

TEST(Kraus, HalfHalfIsComplete) {
  const Matrix t = models::two_state(Scalar::fraction(1, 2), Scalar::fraction(1, 2));
  const KrausSet k = kraus_from_stochastic(t);
  EXPECT_LE(k.completeness_defect(), 1e-15);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t m = 0; m < 2; ++m) {
      EXPECT_NEAR(k.operators[i](m, i).to_double(), std::sqrt(0.5), 1e-16);
      EXPECT_EQ(k.operators[i](m, 1 - i).to_double(), 0.0);
    }
}

TEST(Kraus, RoundTrip) {
  EXPECT_LE(max_abs_diff(stochastic_from_kraus(kraus_from_stochastic(models::maxwell_demon())),
                         models::maxwell_demon().to_mode(Mode::Float)),
            1e-15);
  const Matrix t = models::two_state(Scalar::fraction(1, 4), Scalar::fraction(3, 4));
  EXPECT_LE(max_abs_diff(stochastic_from_kraus(kraus_from_stochastic(t)), t.to_mode(Mode::Float)), 1e-15);
  EXPECT_EQ(stochastic_from_kraus(KrausSet{2, {Matrix::identity(2, Mode::Float)}}), Matrix::identity(2, Mode::Float));

  oracle::Gen gen(43);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix r = gen.float_stochastic(gen.size(1, 6), 0.2);
    const KrausSet k = kraus_from_stochastic(r);
    EXPECT_LE(k.completeness_defect(), 1e-12);
    // T(m, n) = sum_i A_i(m, n)^2, summed here without the library.
    const std::size_t n = r.rows();
    oracle::Dense back(n, std::vector<double>(n, 0.0));
    for (const auto& a : k.operators)
      for (std::size_t m = 0; m < n; ++m)
        for (std::size_t c = 0; c < n; ++c) back[m][c] += a(m, c).to_double() * a(m, c).to_double();
    EXPECT_LE(oracle::max_diff(back, oracle::dense(r)), 1e-15);
  }
}

TEST(Kraus, IncompleteSetRejected) {
  KrausSet k{2, {Matrix::from_doubles({{1.0, 0.0}, {0.0, 0.5}})}};
  EXPECT_EQ(kind_of([&] { stochastic_from_kraus(k); }), ErrorKind::IncompleteKrausSet);
  KrausSet wrong{2, {Matrix::identity(3, Mode::Float)}};
  EXPECT_EQ(kind_of([&] { stochastic_from_kraus(wrong); }), ErrorKind::DimensionMismatch);
}

TEST(Unistochastic, IdentityGivesPermutation) {
  const UnitaryDilation d = unistochastic_dilation(Matrix::identity(2));
  for (std::size_t c = 0; c < 4; ++c) {
    int ones = 0;
    for (std::size_t r = 0; r < 4; ++r) {
      const double v = d.r(r, c).to_double();
      EXPECT_TRUE(std::abs(v) < 1e-15 || std::abs(v - 1.0) < 1e-15);
      ones += v > 0.5;
    }
    EXPECT_EQ(ones, 1);
  }
  EXPECT_LE(max_abs_diff(extract_dilated(d.r, 0), Matrix::identity(2, Mode::Float)), 1e-15);
}

TEST(Unistochastic, Examples) {
  for (const Matrix& t : {models::two_state(Scalar(0.3), Scalar(0.7)), models::maxwell_demon(Mode::Float),
                          models::maxwell_demon(Mode::Exact)}) {
    const UnitaryDilation d = unistochastic_dilation(t);
    const std::size_t dim = t.rows() * t.rows();
    EXPECT_EQ(d.u.rows(), dim);
    const auto ud = oracle::dense(d.u);
    oracle::Dense utu(dim, std::vector<double>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        for (std::size_t k = 0; k < dim; ++k) utu[i][j] += ud[k][i] * ud[k][j];
    double defect = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) defect = std::max(defect, std::abs(utu[i][j] - (i == j ? 1.0 : 0.0)));
    EXPECT_LE(defect, 1e-12);
    EXPECT_LE(d.orthogonality_defect, 1e-12);
    EXPECT_TRUE(validate(d.r, 1e-12).bi);
    EXPECT_LE(max_abs_diff(extract_dilated(d.r, 0), t.to_mode(Mode::Float)), 1e-12);
    EnvDilation e{t.rows(), t.rows(), ProbVec::vertex(t.rows(), 0, Mode::Float), d.r};
    EXPECT_TRUE(verify_env_dilation(t.to_mode(Mode::Float), e, 32, 1e-12));
  }
}

TEST(Unistochastic, RandomMatricesIncludingSparse) {
  oracle::Gen gen(44);
  for (int trial = 0; trial < 40; ++trial) {
    const Matrix t = gen.float_stochastic(gen.size(1, 5), trial % 2 ? 0.5 : 0.0);
    const UnitaryDilation d = unistochastic_dilation(t);
    EXPECT_LE(d.orthogonality_defect, 1e-12);
    EXPECT_TRUE(validate(d.r, 1e-12).bi);
    EXPECT_LE(max_abs_diff(extract_dilated(d.r, 0), t), 1e-12);
  }
}
