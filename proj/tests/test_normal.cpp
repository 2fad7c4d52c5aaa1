#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "gll/normal.hpp"
#include "gll/region.hpp"

TEST(Normal, QuantileMatchesBoost) {
  const boost::math::normal_distribution<double> nd;
  for (double p : {1e-12, 1e-6, 0.001, 0.025, 0.05, 0.3, 0.5, 0.7, 0.95, 0.975, 0.999, 1 - 1e-9}) {
    const double ref = boost::math::quantile(nd, p);
    EXPECT_NEAR(gll::normal_quantile(p), ref, 1e-9 * std::max(1.0, std::abs(ref))) << p;
  }
  EXPECT_EQ(gll::normal_quantile(0.5), 0.0);
}

TEST(Normal, QuantileInvertsCdf) {
  for (double x = -6; x <= 6; x += 0.25) EXPECT_NEAR(gll::normal_quantile(gll::normal_cdf(x)), x, 1e-8) << x;
}

TEST(Normal, QuantileDomain) {
  EXPECT_EQ(gll::normal_quantile(0.0), -gll::inf);
  EXPECT_EQ(gll::normal_quantile(1.0), gll::inf);
  EXPECT_THROW(gll::normal_quantile(-0.1), gll::DomainError);
  EXPECT_THROW(gll::normal_quantile(1.5), gll::DomainError);
}

TEST(ChiSquare, Cdf) {
  EXPECT_NEAR(gll::chisq_cdf(3.841458820694124, 1), 0.95, 1e-12);
  const boost::math::chi_squared_distribution<double> c3(3);
  EXPECT_NEAR(gll::chisq_cdf(2.5, 3), boost::math::cdf(c3, 2.5), 1e-14);
  EXPECT_EQ(gll::chisq_cdf(-1, 2), 0.0);
}
