#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "gll/gll.hpp"
#include "oracles.hpp"

using namespace gll;

namespace {

const PairedSample& sample() {
  static const PairedSample s = synthetic_paired_sample(24, {3.1, 3.0, 0.3, 0.25, 0.6}, 11);
  return s;
}

oracle::Paired as_oracle(const PairedSample& s) { return {s.test(), s.reference()}; }

}  // namespace

TEST(Binomial, DataValidation) {
  EXPECT_THROW(BinomialData(5, 4), DomainError);
  EXPECT_THROW(BinomialData(-1, 4), DomainError);
  EXPECT_THROW(BinomialData(0, 0), DomainError);
  EXPECT_DOUBLE_EQ(binomial_loglik(BinomialData(0, 5), 0.0), 0.0);
  EXPECT_EQ(binomial_loglik(BinomialData(1, 5), 0.0), -inf);
}

TEST(TwoBinomial, ProfileMatchesOracle) {
  const TwoBinomialData d(83, 88, 69, 76);
  for (double delta : {-0.9, -0.3, -0.1, 0.0, 0.05, 0.12, 0.4, 0.95}) {
    const double got = two_binomial_profile_loglik(d, delta);
    EXPECT_NEAR(got, oracle::two_binom_profile(83, 88, 69, 76, delta), 1e-9) << delta;
  }
}

TEST(TwoBinomial, EndpointsOfTheDifference) {
  const TwoBinomialData d(83, 88, 69, 76);
  EXPECT_EQ(two_binomial_profile_loglik(d, 1.0), -inf);
  EXPECT_EQ(two_binomial_profile_loglik(d, -1.0), -inf);
  const TwoBinomialData all(5, 5, 0, 7);
  EXPECT_NEAR(two_binomial_profile_loglik(all, 1.0), 0.0, 1e-12);
}

TEST(TwoBinomial, GlrAgainstOracleRatio) {
  const auto m = two_binomial_model(TwoBinomialData(83, 88, 69, 76));
  const auto rep = evidence_vs_complement(m, parse_region("delta > -0.1", m.space()));
  const double top = oracle::two_binom_profile(83, 88, 69, 76, 83.0 / 88 - 69.0 / 76);
  EXPECT_NEAR(rep.log_glr, top - oracle::two_binom_profile(83, 88, 69, 76, -0.1), 1e-8);
}

TEST(BivariateNormal, MleAndMaximum) {
  const auto& s = sample();
  const auto hat = bivnorm_mle(s);
  EXPECT_NEAR(bivnorm_loglik(s, hat), bivnorm_max_loglik(s), 1e-9);
  auto nudged = hat;
  nudged.rho += 0.01;
  EXPECT_LT(bivnorm_loglik(s, nudged), bivnorm_max_loglik(s));
  EXPECT_NEAR(bivnorm_max_loglik(s) + s.size() * std::log(2 * M_PI), oracle::paired_max_loglik(as_oracle(s)), 1e-9);
}

TEST(BivariateNormal, MeanDiffProfileMatchesClosedForm) {
  const auto& s = sample();
  const auto os = as_oracle(s);
  const double top = bivnorm_max_loglik(s);
  for (double g : {-1.0, -0.2, 0.0, 0.1, 0.223, 3.0, 1e4}) {
    EXPECT_NEAR(bivnorm_profile_mean_diff(s, g) - top, oracle::mean_diff_log_ratio(os, g),
                1e-8 * std::max(1.0, std::abs(oracle::mean_diff_log_ratio(os, g))))
        << g;
  }
}

TEST(BivariateNormal, SdRatioProfileMatchesGridOracle) {
  const auto& s = sample();
  const auto os = as_oracle(s);
  const double top = bivnorm_max_loglik(s), otop = oracle::paired_max_loglik(os);
  for (double r : {0.5, 0.8, 1.0, 1.25, 2.0}) {
    EXPECT_NEAR(bivnorm_profile_sd_ratio(s, r) - top, oracle::sd_ratio_profile(os, r) - otop, 1e-6) << r;
  }
}

TEST(BivariateNormal, ModelsExposeProfileAxes) {
  const auto md = bivnorm_mean_diff_model(sample());
  EXPECT_EQ(default_interest(md), "gamma");
  const auto sr = bivnorm_sd_ratio_model(sample());
  EXPECT_EQ(default_interest(sr), "ratio");
  EXPECT_THROW(parse_region("ratio < 0", sr.space()), EmptyRegionError);
}

TEST(PairedCsv, RoundTrip) {
  std::stringstream io;
  write_paired_csv(io, sample());
  const auto back = read_paired_csv(io);
  EXPECT_EQ(back.test(), sample().test());
  EXPECT_EQ(back.reference(), sample().reference());
}

TEST(PairedCsv, Errors) {
  std::istringstream bad_header("t,r\n1,2\n");
  EXPECT_THROW(read_paired_csv(bad_header), DomainError);
  std::istringstream bad_number("y_t,y_r\n1,2\n3,x\n4,5\n");
  EXPECT_THROW(read_paired_csv(bad_number), DomainError);
  std::istringstream one_column("y_t,y_r\n1\n");
  EXPECT_THROW(read_paired_csv(one_column), DomainError);
  std::istringstream too_short("y_t,y_r\n1,2\n3,4\n");
  EXPECT_THROW(read_paired_csv(too_short), DomainError);
}

TEST(PairedSample, SingularCovarianceIsRejected) {
  const PairedSample s({1, 2, 3, 4}, {2, 4, 6, 8});
  EXPECT_THROW(bivnorm_profile_mean_diff(s, 0.0), DomainError);
}
