#pragma once

// Randomized property suites shared by the unit tests and the acceptance run.

#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gll/gll.hpp"
#include "oracles.hpp"

namespace checks {

struct Tally {
  int cases = 0;
  int superset_checks = 0;  // instances where the ratio condition held
  int k_star_checks = 0;    // instances with ratio > 1
  int sub_checks = 0;       // sub-hypothesis GLR checks (non-empty intersections)
  int nesting_checks = 0;   // support-set pairs compared
  int violations = 0;
  std::string first;  // description of the first violation

  void fail(const std::string& what) {
    if (violations++ == 0) first = what;
  }
};

inline gll::Interval random_interval(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::bernoulli_distribution coin(0.5);
  double a = u(rng), b = u(rng);
  if (a > b) std::swap(a, b);
  if (b - a < 1e-6) b = std::min(hi, a + 0.05);
  return gll::Interval::make(a, b, coin(rng), coin(rng));
}

inline gll::ScalarRegion random_scalar_region(std::mt19937_64& rng, double lo, double hi) {
  std::vector<gll::Interval> ivs{random_interval(rng, lo, hi)};
  if (std::bernoulli_distribution(0.4)(rng)) ivs.push_back(random_interval(rng, lo, hi));
  return gll::ScalarRegion(std::move(ivs));
}

inline bool inside(const gll::ScalarRegion& inner, const gll::ScalarRegion& outer, double tol) {
  for (const auto& iv : inner.intervals()) {
    bool ok = false;
    for (const auto& ov : outer.intervals()) ok = ok || (ov.lower <= iv.lower + tol && ov.upper >= iv.upper - tol);
    if (!ok) return false;
  }
  return true;
}

/// Minimum supported superset and k*, on random binomial instances:
/// sup L(S)/sup L(S^c) >= k must force S_k inside S on a 10^4 grid, and k*
/// must equal that ratio whenever it exceeds 1.
inline Tally theorem_suite(int instances, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  gll::OptimizerConfig cfg;
  cfg.scan_points = 10001;
  for (int i = 0; i < instances; ++i) {
    const int n = std::uniform_int_distribution<int>(1, 50)(rng);
    const int x = std::uniform_int_distribution<int>(0, n)(rng);
    const auto m = gll::binomial_model(gll::BinomialData(x, n));
    // Mostly regions around the MLE, so the ratio condition actually fires.
    const double hat = static_cast<double>(x) / n;
    std::uniform_real_distribution<double> width(0.0, 0.5);
    std::bernoulli_distribution coin(0.5);
    const gll::ScalarRegion shape =
        std::bernoulli_distribution(0.75)(rng)
            ? gll::ScalarRegion({gll::Interval::make(hat - width(rng), hat + width(rng), coin(rng), coin(rng))})
            : random_scalar_region(rng, 0.0, 1.0);
    const gll::Region s = gll::Region::constrain(m.space(), "theta", shape);
    if (s.empty() || s.is_full()) {
      --i;
      continue;
    }
    ++t.cases;

    auto sup_closed = [&](const gll::Region& r) {
      double v = oracle::ninf;
      const gll::ScalarRegion shape = r.projection(0);
      for (const auto& iv : shape.intervals())
        v = std::max(v, oracle::binom_sup_closed(x, n, iv.lower, iv.upper));
      return v;
    };
    const double log_r = sup_closed(s) - sup_closed(gll::complement(s));
    // Half the time k sits below the ratio (condition holds), else anywhere.
    const double u = std::uniform_real_distribution<double>(0.001, 1.0)(rng);
    const double k = log_r > 0.01 && coin(rng) ? std::exp(u * log_r) : std::exp(u * std::log(200.0));
    const double peak = oracle::binom_loglik(x, n, static_cast<double>(x) / n);
    std::ostringstream tag;
    tag << "x=" << x << " n=" << n << " S=" << s.projection(0) << " k=" << k;

    if (log_r >= std::log(k)) {
      ++t.superset_checks;
      for (int j = 0; j <= 10000; ++j) {
        const double th = j / 10000.0;
        if (oracle::binom_loglik(x, n, th) > peak - std::log(k) && !s.contains({th})) {
          t.fail("S_k leaves S at theta=" + std::to_string(th) + " (" + tag.str() + ")");
          break;
        }
      }
      if (!gll::min_supported_superset_check(m, s, k, cfg).consistent()) t.fail("library check: " + tag.str());
    }
    if (log_r > 0) {
      ++t.k_star_checks;
      const double ks = gll::k_star(m, s, cfg);
      const double r = std::exp(log_r);
      if (!(std::abs(ks - r) <= 1e-6 * r)) t.fail("k* " + std::to_string(ks) + " vs " + std::to_string(r) + " (" + tag.str() + ")");
    }
  }
  return t;
}

/// Core invariants: reciprocity, sup monotonicity, offset invariance,
/// support-set nesting, and GLR <= 1 for a sub-hypothesis.
inline Tally invariant_suite(int instances, std::uint64_t seed) {
  Tally t;
  std::mt19937_64 rng(seed);
  const gll::OptimizerConfig cfg;
  for (int i = 0; i < instances; ++i) {
    const bool two = std::bernoulli_distribution(0.3)(rng);
    gll::LikelihoodModel m = [&] {
      if (!two) {
        const int n = std::uniform_int_distribution<int>(1, 200)(rng);
        return gll::binomial_model(gll::BinomialData(std::uniform_int_distribution<int>(0, n)(rng), n));
      }
      const int n1 = std::uniform_int_distribution<int>(1, 100)(rng);
      const int n2 = std::uniform_int_distribution<int>(1, 100)(rng);
      return gll::two_binomial_model(gll::TwoBinomialData(std::uniform_int_distribution<int>(0, n1)(rng), n1,
                                                          std::uniform_int_distribution<int>(0, n2)(rng), n2));
    }();
    const std::string axis = m.space()[0].name;
    const double lo = m.space()[0].range.lower, hi = m.space()[0].range.upper;
    const gll::ScalarRegion a_s = random_scalar_region(rng, lo, hi);
    const gll::ScalarRegion b_s = random_scalar_region(rng, lo, hi);
    const gll::Region a = gll::Region::constrain(m.space(), axis, a_s);
    const gll::Region b = gll::Region::constrain(m.space(), axis, b_s);
    const gll::Region ab = gll::intersect(a, b);
    const gll::Region aub = gll::Region::constrain(m.space(), axis, unite(a_s, b_s));
    ++t.cases;
    std::ostringstream tag;
    tag << "case " << i << " A=" << a_s << " B=" << b_s;

    try {
      const auto r1 = gll::glr(m, a, b, cfg);
      const auto r2 = gll::glr(m, b, a, cfg);
      if (std::isfinite(r1.log_glr) && !(std::abs(r1.log_glr + r2.log_glr) <= 1e-12 * std::max(1.0, std::abs(r1.log_glr))))
        t.fail("reciprocity " + tag.str());

      const double sa = gll::sup_log_lik(m, a, cfg).max_value;
      const double sb = gll::sup_log_lik(m, b, cfg).max_value;
      const double su = gll::sup_log_lik(m, aub, cfg).max_value;
      if (su < std::max(sa, sb) - 1e-9) t.fail("sup monotonicity (union) " + tag.str());
      if (!ab.empty()) {
        const double si = gll::sup_log_lik(m, ab, cfg).max_value;
        if (si > std::min(sa, sb) + 1e-9) t.fail("sup monotonicity (intersection) " + tag.str());
        if (si > -gll::inf) {
          ++t.sub_checks;
          const auto sub = gll::glr(m, ab, a, cfg);
          if (sub.log_glr > 1e-9) t.fail("sub-hypothesis GLR > 1 " + tag.str());
        }
      }

      const double c = std::uniform_real_distribution<double>(-50, 50)(rng);
      const auto shifted = gll::glr(m.with_offset(c), a, b, cfg);
      if (std::isfinite(r1.log_glr) && !(std::abs(shifted.log_glr - r1.log_glr) <= 1e-8 * std::max(1.0, std::abs(r1.log_glr))))
        t.fail("offset invariance " + tag.str());

      double k1 = std::exp(std::uniform_real_distribution<double>(0.05, 4.0)(rng));
      double k2 = std::exp(std::uniform_real_distribution<double>(0.05, 4.0)(rng));
      if (k1 > k2) std::swap(k1, k2);
      if (k2 > k1) {
        ++t.nesting_checks;
        const auto s1 = gll::support_set(m, k1, cfg);
        const auto s2 = gll::support_set(m, k2, cfg);
        if (!inside(s1.set, s2.set, 1e-9)) t.fail("support nesting " + tag.str());
      }
    } catch (const std::exception& e) {
      t.fail(std::string("exception ") + e.what() + " " + tag.str());
    }
  }
  return t;
}

}  // namespace checks
