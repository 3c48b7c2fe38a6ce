#include "stochdil/models.hpp"
#include "stochdil/sinkhorn.hpp"

#include <gtest/gtest.h>

#include "errors.hpp"
#include "oracles.hpp"

using namespace stochdil;

namespace {

Matrix two_state(double a, double b) { return models::two_state(Scalar(a), Scalar(b)); }

// Balanced 2x2 matrix [[1-p, p], [p, 1-p]] from the closed form, evaluated here from scratch.
double closed_form_p(double a, double b) {
  const double root_ab = std::sqrt(a * b);
  return root_ab / (std::sqrt((1 - a) * (1 - b)) + root_ab);
}

}  // namespace

TEST(Sinkhorn2x2, Examples) {
  const auto half = sinkhorn_2x2(0.5, 0.5);
  EXPECT_NEAR(half.p, 0.5, 1e-15);
  EXPECT_NEAR(half.d1[0], 1.0, 1e-15);
  EXPECT_NEAR(half.d1[1], 1.0, 1e-15);
  EXPECT_NEAR(sinkhorn_2x2(0.3, 0.7).p, 0.5, 1e-15);
  EXPECT_NEAR(sinkhorn_2x2(0.25, 0.75).p, 0.5, 1e-15);
  EXPECT_NEAR(sinkhorn_2x2(0.2, 0.2).p, 0.2, 1e-15);
}

TEST(Sinkhorn2x2, DiagonalsBalance) {
  oracle::Gen gen(61);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = gen.uniform(0.01, 0.99), b = gen.uniform(0.01, 0.99);
    const auto c = sinkhorn_2x2(a, b);
    EXPECT_GT(c.p, 0.0);
    EXPECT_LT(c.p, 1.0);
    EXPECT_NEAR(c.p, closed_form_p(a, b), 1e-14);
    EXPECT_NEAR(c.d1[0], std::sqrt((1 - a) / (1 - b)), 1e-14);
    const oracle::Dense t{{1 - b, a}, {b, 1 - a}};
    for (std::size_t r = 0; r < 2; ++r) {
      double row = 0.0, col = 0.0;
      for (std::size_t k = 0; k < 2; ++k) {
        row += c.d1[r] * t[r][k] * c.d2[k];
        col += c.d1[k] * t[k][r] * c.d2[r];
      }
      EXPECT_NEAR(row, 1.0, 1e-12);
      EXPECT_NEAR(col, 1.0, 1e-12);
    }
    EXPECT_NEAR(c.d1[0] * t[0][1] * c.d2[1], c.p, 1e-12);
  }
}

TEST(Sinkhorn2x2, Errors) {
  for (auto [a, b] : {std::pair{0.0, 0.5}, {1.0, 0.5}, {0.5, 0.0}, {0.5, 1.0}, {-0.1, 0.5}}) {
    EXPECT_EQ(kind_of([&] { sinkhorn_2x2(a, b); }), ErrorKind::ParameterOutOfRange);
  }
}

TEST(SinkhornKnopp, AgreesWithClosedForm) {
  oracle::Gen gen(62);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = gen.uniform(0.05, 0.95), b = gen.uniform(0.05, 0.95);
    const auto it = sinkhorn_knopp(two_state(a, b));
    const double p = closed_form_p(a, b);
    const oracle::Dense expected{{1 - p, p}, {p, 1 - p}};
    EXPECT_LE(oracle::max_diff(oracle::dense(it.s), expected), 1e-8);
    // Diagonals agree after fixing the gauge on d1[0].
    const auto c = sinkhorn_2x2(a, b);
    const double scale = c.d1[0] / it.d1[0];
    EXPECT_NEAR(it.d1[1] * scale, c.d1[1], 1e-8 * c.d1[1]);
    EXPECT_NEAR(it.d2[0] / scale, c.d2[0], 1e-8 * c.d2[0]);
    EXPECT_NEAR(it.d2[1] / scale, c.d2[1], 1e-8 * c.d2[1]);
  }
}

TEST(SinkhornKnopp, SymmetricFamilies) {
  const auto r = sinkhorn_knopp(two_state(0.3, 0.7));
  EXPECT_NEAR(r.s(0, 1).to_double(), 0.5, 1e-9);
  const Matrix sym = two_state(0.2, 0.2);
  const auto s = sinkhorn_knopp(sym);
  EXPECT_LE(max_abs_diff(s.s, sym), 1e-12);
  EXPECT_LE(s.iterations, 1);
}

TEST(SinkhornKnopp, RandomPositiveMatrices) {
  oracle::Gen gen(63);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = gen.size(1, 7);
    Matrix t(n, n, Mode::Float);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) t.set(r, c, gen.uniform(0.05, 3.0));
    const double tol = 1e-10;
    const auto res = sinkhorn_knopp(t, tol);
    EXPECT_LE(res.final_defect, tol);
    for (std::size_t k = 0; k < n; ++k) {
      double row = 0.0, col = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        row += res.s(k, j).to_double();
        col += res.s(j, k).to_double();
      }
      EXPECT_NEAR(row, 1.0, tol);
      EXPECT_NEAR(col, 1.0, tol);
    }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        EXPECT_NEAR(res.s(r, c).to_double(), res.d1[r] * t(r, c).to_double() * res.d2[c], 10 * tol);
  }
}

TEST(SinkhornKnopp, Errors) {
  EXPECT_EQ(kind_of([] { sinkhorn_knopp(models::maxwell_demon(Mode::Float)); }), ErrorKind::NonPositiveEntry);
  EXPECT_EQ(kind_of([] { sinkhorn_knopp(Matrix::from_doubles({{1.0, 2.0}})); }), ErrorKind::NotSquare);
  EXPECT_EQ(kind_of([] { sinkhorn_knopp(two_state(0.3, 0.4), 0.0); }), ErrorKind::ParameterOutOfRange);
  const Matrix skewed = Matrix::from_doubles({{1.0, 1e-6}, {1.0, 1.0}});
  EXPECT_EQ(kind_of([&] { sinkhorn_knopp(skewed, 1e-14, 2); }), ErrorKind::NotConverged);
}
