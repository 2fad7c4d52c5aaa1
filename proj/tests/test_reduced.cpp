#include <gtest/gtest.h>

#include <cmath>

#include "gll/gll.hpp"

using namespace gll;

TEST(FromTest, ClosedForms) {
  const auto rej = TestOutcome::rejected, acc = TestOutcome::not_rejected;
  EXPECT_DOUBLE_EQ(glr_from_test(PowerFunction::one_sided(0.05), rej), 20.0);
  EXPECT_DOUBLE_EQ(glr_from_test(PowerFunction::one_sided(0.05), acc), 0.95);
  EXPECT_DOUBLE_EQ(glr_from_test(PowerFunction::two_sided_point_null(0.05), rej), 20.0);
  EXPECT_DOUBLE_EQ(glr_from_test(PowerFunction::two_sided_point_null(0.05), acc), 1.0);
  EXPECT_DOUBLE_EQ(glr_from_test(PowerFunction::equivalence(0.05, 0.8), rej), 16.0);
  EXPECT_DOUBLE_EQ(glr_from_test(PowerFunction::equivalence(0.05, 0.8), acc), 0.95);
}

TEST(FromTest, Validation) {
  EXPECT_THROW(PowerFunction::one_sided(0.0), DomainError);
  EXPECT_THROW(PowerFunction::one_sided(1.0), DomainError);
  EXPECT_THROW(PowerFunction::equivalence(0.05, 0.04), DomainError);
}

TEST(FromTest, TabulatedReproducesTheOneSidedArchetype) {
  // A fine one-sided normal power curve: pi(theta) = 1 - Phi(z_{1-a} - theta).
  const double a = 0.05, z = normal_quantile(1 - a);
  std::vector<double> grid, power;
  for (int i = 0; i <= 2000; ++i) {
    const double t = -10 + 0.01 * i;
    grid.push_back(t);
    power.push_back(1 - normal_cdf(z - t));
  }
  const auto pf = PowerFunction::tabulated(grid, power, ScalarRegion({Interval::make(-inf, 0, false, true)}),
                                           ScalarRegion({Interval::make(0, inf, false, false)}));
  EXPECT_NEAR(glr_from_test(pf, TestOutcome::rejected), 1 / a, 1e-3);
  EXPECT_NEAR(glr_from_test(pf, TestOutcome::not_rejected), 1 - a, 1e-3);
}

TEST(FromTest, TabulatedValidation) {
  const ScalarRegion h({Interval::closed(0, 1)});
  EXPECT_THROW(PowerFunction::tabulated({0, 0}, {0.1, 0.2}, h, h), DomainError);
  EXPECT_THROW(PowerFunction::tabulated({0, 1}, {0.1, 1.2}, h, h), DomainError);
  EXPECT_THROW(PowerFunction::tabulated({0, 1}, {0.1}, h, h), DomainError);
}

TEST(FromPValue, SymmetryAndMonotonicity) {
  EXPECT_EQ(glr_from_pvalue_normal(0.5), 1.0);
  double prev = inf;
  for (int i = 1; i < 1000; ++i) {
    const double u = i / 1000.0;
    const double r = glr_from_pvalue_normal(u);
    EXPECT_LT(r, prev);
    prev = r;
    EXPECT_NEAR(r * glr_from_pvalue_normal(1 - u), 1.0, 1e-12);
  }
  EXPECT_THROW(glr_from_pvalue_normal(0.0), DomainError);
  EXPECT_THROW(glr_from_pvalue_normal(1.0), DomainError);
}

TEST(FromPValue, GeneralReducesToTheNormalForm) {
  const ScalarRegion h1({Interval::make(-inf, 0, false, true)}), h2({Interval::make(0, inf, false, false)});
  for (double u : {0.001, 0.05, 0.3, 0.5, 0.7, 0.99}) {
    for (double scale : {0.5, 1.0, 7.0}) {
      const double g = glr_from_pvalue_general(u, ShiftFamily{scale}, h1, h2);
      EXPECT_NEAR(g, glr_from_pvalue_normal(u), 1e-12 * glr_from_pvalue_normal(u)) << u << ' ' << scale;
    }
  }
}

TEST(FromPValue, SwappingHypothesesInverts) {
  const ScalarRegion a({Interval::closed(-0.2, 0.2)});
  const ScalarRegion b({Interval::make(-inf, -0.2, false, false), Interval::make(0.2, inf, false, false)});
  const auto fam = ShiftFamily::one_sample(25, 1.0);
  for (double u : {0.01, 0.2, 0.5, 0.9}) {
    EXPECT_NEAR(glr_from_pvalue_general(u, fam, a, b) * glr_from_pvalue_general(u, fam, b, a), 1.0, 1e-12);
  }
}

TEST(ShiftFamily, Scales) {
  EXPECT_DOUBLE_EQ(ShiftFamily::one_sample(16, 2.0).scale, 2.0);
  EXPECT_DOUBLE_EQ(ShiftFamily::two_sample(8, 8, 1.0).scale, 2.0);
  EXPECT_THROW(ShiftFamily::one_sample(0, 1.0), DomainError);
}
