// Acceptance run: one PASS/FAIL line per criterion, with the measured values
// and wall time. Exit status is the number of failed criteria (capped at 1).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include <boost/math/distributions/normal.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "../checks.hpp"
#include "../oracles.hpp"
#include "gll/gll.hpp"
#include "gll/io.hpp"

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (time_limit > 0 && secs >= time_limit) {
    o.pass = false;
    o.detail += "; over the " + gll::format12(time_limit) + " s limit";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d: %s  %s (%.3f s)\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string f12(double x) { return gll::format12(x); }

oracle::Paired as_oracle(const gll::PairedSample& s) {
  return {s.test(), s.reference()};
}

gll::SimulationConfig sim(double theta0, const char* h1) {
  gll::SimulationConfig c;
  c.family = gll::Family::binomial;
  c.theta0 = theta0;
  const auto space = gll::binomial_space();
  c.h1 = gll::parse_region(h1, space);
  c.h2 = gll::complement(c.h1);
  c.n = 2500;
  c.replications = 20000;
  c.seed = 20261017;
  return c;
}

}  // namespace

int main() {
  run(1, 1.0, [] {
    const auto m = gll::binomial_model(gll::BinomialData(9, 17));
    const auto rep = gll::glr(m, gll::parse_region("theta > 0.2", m.space()),
                              gll::parse_region("theta <= 0.2", m.space()));
    const double exact = std::exp(9 * std::log(9.0 / 17) + 8 * std::log(8.0 / 17) - 9 * std::log(0.2) - 8 * std::log(0.8));
    const bool ok = rep.glr >= 89.5 && rep.glr <= 92.5 && std::abs(rep.glr - exact) <= 1e-8 * exact;
    return Outcome{ok, "binomial 9/17 GLR " + f12(rep.glr) + ", closed form " + f12(exact)};
  });

  run(2, 1.0, [] {
    const auto m = gll::two_binomial_model(gll::TwoBinomialData(83, 88, 69, 76));
    const double ni = gll::evidence_vs_complement(m, gll::parse_region("delta > -0.1", m.space())).glr;
    const double sup = gll::evidence_vs_complement(m, gll::parse_region("delta > 0", m.space())).glr;
    const bool ok = std::abs(ni - 138) <= 0.05 * 138 && std::abs(sup - 1.4) <= 0.1;
    return Outcome{ok, "non-inferiority GLR " + f12(ni) + " (138 +- 5%), superiority GLR " + f12(sup) + " (1.4 +- 0.1)"};
  });

  run(3, 0, [] {
    const auto sample = gll::synthetic_paired_sample(30, {4.0, 4.05, 0.25, 0.30, 0.7}, 7);
    const auto os = as_oracle(sample);

    const auto md = gll::bivnorm_mean_diff_model(sample);
    const double dbar = gll::bivnorm_mle(sample).mu_t - gll::bivnorm_mle(sample).mu_r;
    const auto c1 = gll::profile_curve(md, "gamma", {dbar - 0.3, dbar + 0.3, 101});
    double err1 = 0;
    for (std::size_t i = 0; i < c1.grid.size(); ++i)
      err1 = std::max(err1, std::abs((c1.log_profile[i] - c1.peak_log_value) - oracle::mean_diff_log_ratio(os, c1.grid[i])));

    const auto sr = gll::bivnorm_sd_ratio_model(sample);
    const auto c2 = gll::profile_curve(sr, "ratio", {0.5, 1.6, 101});
    const double top = oracle::paired_max_loglik(os);
    double err2 = 0;
    for (std::size_t i = 0; i < c2.grid.size(); ++i)
      err2 = std::max(err2, std::abs((c2.log_profile[i] - c2.peak_log_value) - (oracle::sd_ratio_profile(os, c2.grid[i]) - top)));

    const bool ok = err1 <= 1e-6 && err2 <= 1e-5;
    return Outcome{ok, "synthetic paired data (n=30): mean-diff max error " + f12(err1) +
                           " at 101 points (<= 1e-6), sd-ratio max error " + f12(err2) + " (<= 1e-5)"};
  });

  run(4, 0, [] {
    using gll::PowerFunction;
    const auto rej = gll::TestOutcome::rejected, acc = gll::TestOutcome::not_rejected;
    const double a = gll::glr_from_test(PowerFunction::one_sided(0.05), rej);
    const double b = gll::glr_from_test(PowerFunction::one_sided(0.025), rej);
    const double c = gll::glr_from_test(PowerFunction::one_sided(0.05), acc);
    const double d = gll::glr_from_test(PowerFunction::point_null_one_sided(0.05), acc);
    const double e = gll::glr_from_test(PowerFunction::equivalence(0.05, 0.9), rej);
    const bool ok = a == 1.0 / 0.05 && b == 1.0 / 0.025 && c == 1.0 - 0.05 && d == 1.0 && e == 0.9 / 0.05 &&
                    a == 20 && b == 40;
    return Outcome{ok, "test-result GLRs " + f12(a) + ", " + f12(b) + ", " + f12(c) + ", " + f12(d) + ", " + f12(e) +
                           " (20, 40, 0.95, 1, 0.9/0.05)"};
  });

  run(5, 0, [] {
    using big = boost::multiprecision::cpp_bin_float_50;
    const double half = gll::glr_from_pvalue_normal(0.5);
    double worst = 0;
    for (int i = 1; i <= 99; ++i) {
      const double u = i / 100.0;
      worst = std::max(worst, std::abs(gll::glr_from_pvalue_normal(u) * gll::glr_from_pvalue_normal(1.0 - u) - 1.0));
    }
    const big q = boost::math::quantile(boost::math::normal_distribution<big>(), big(95) / 100);
    const double ref = static_cast<double>(exp(q * q / 2));
    const double got = gll::glr_from_pvalue_normal(0.05);
    const double rel = std::abs(got - ref) / ref;
    const bool ok = half == 1.0 && worst <= 1e-12 && rel <= 1e-8;
    return Outcome{ok, "r(0.5) = " + f12(half) + ", max |r(u) r(1-u) - 1| = " + f12(worst) + ", r(0.05) = " +
                           f12(got) + " vs 50-digit " + f12(ref) + " (rel " + f12(rel) + ")"};
  });

  run(6, 30.0, [] {
    const auto t = checks::theorem_suite(100, 6);
    return Outcome{t.violations == 0, std::to_string(t.cases) + " random binomial instances (" +
                                          std::to_string(t.superset_checks) + " superset checks, " +
                                          std::to_string(t.k_star_checks) + " k* checks), " +
                                          std::to_string(t.violations) + " violations" +
                                          (t.first.empty() ? "" : " (first: " + t.first + ")")};
  });

  run(7, 60.0, [] {
    const auto cfg = sim(0.2, "theta > 0.2");
    const auto e = gll::simulate_glr(cfg);
    const double ks = gll::ks_distance(e, gll::LimitSpec::boundary_mixture());
    const double fp = e.fraction_positive();
    const bool ok = ks < 0.02 && fp >= 0.48 && fp <= 0.52;
    return Outcome{ok, "boundary theta0=0.2, n=2500, R=20000, seed 20261017: KS " + f12(ks) +
                           " (< 0.02), fraction positive " + f12(fp) + " (in [0.48, 0.52])"};
  });

  run(8, 0, [] {
    const auto cfg = sim(0.5, "theta == 0.5");
    const auto e = gll::simulate_glr(cfg);
    const double ks = gll::ks_distance(e, gll::LimitSpec::point_null(1.0));
    return Outcome{ks < 0.02, "point null theta0=0.5 vs complement, n=2500, R=20000, seed 20261017: KS to -chi2_1 " +
                                  f12(ks) + " (< 0.02)"};
  });

  run(9, 0, [] {
    std::ostringstream s;
    bool ok = true;
    for (double theta0 : {0.1, 0.5}) {
      gll::SimulationConfig c;
      c.theta0 = theta0;
      c.h1 = gll::parse_region("theta <= 0.2", gll::binomial_space());
      c.h2 = gll::complement(c.h1);
      c.replications = 2000;
      c.seed = 20261017;
      const auto r = gll::consistency_trend(c, {50, 200, 800});
      const int expect = theta0 < 0.2 ? 1 : -1;
      ok = ok && r.strictly_monotone && r.direction == expect;
      s << "theta0=" << theta0 << " medians";
      for (double m : r.medians) s << ' ' << f12(m);
      s << (r.direction > 0 ? " (towards H1)" : " (towards H2)") << "; ";
    }
    return Outcome{ok, s.str() + "strictly monotone in the predicted direction"};
  });

  run(10, 0, [] {
    const auto t = checks::invariant_suite(1000, 10);
    return Outcome{t.violations == 0, std::to_string(t.cases) + " random cases (" + std::to_string(t.sub_checks) +
                                          " sub-hypothesis, " + std::to_string(t.nesting_checks) + " nesting checks), " +
                                          std::to_string(t.violations) +
                                          " violations" + (t.first.empty() ? "" : " (first: " + t.first + ")")};
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
