#ifndef GLL_ASYMPTOTICS_HPP
#define GLL_ASYMPTOTICS_HPP

// Monte Carlo checks of the large-sample behaviour of 2 log GLR: divergence
// when one hypothesis holds the limit maximizer (consistency), the signed
// chi-square mixture at a shared boundary point, and -chi^2_d for a point
// null against its complement.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "gll/error.hpp"
#include "gll/likelihood.hpp"
#include "gll/models.hpp"
#include "gll/normal.hpp"
#include "gll/optimize.hpp"
#include "gll/region.hpp"

namespace gll {

/// Sampling families with a sufficient statistic that is cheap to draw.
/// binomial: n Bernoulli(theta) trials. normal_mean: n draws of N(mu, 1).
enum class Family { binomial, normal_mean };

inline const char* to_string(Family f) {
  return f == Family::binomial ? "binomial" : "normal_mean";
}

inline ParameterSpace family_space(Family f) {
  if (f == Family::binomial) return binomial_space();
  return ParameterSpace({{"mu", Interval::real_line()}});
}

struct SimulationConfig {
  Family family = Family::binomial;
  double theta0 = 0.2;
  Region h1;
  Region h2;
  int n = 100;
  int replications = 1000;
  std::uint64_t seed = 1;
  OptimizerConfig optimizer;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const {
    if (replications < 1) throw DomainError("replications must be at least 1");
    if (n < 1) throw DomainError("sample size must be at least 1");
    const ParameterSpace space = family_space(family);
    if (!space[0].range.contains(theta0)) throw DomainError("theta0 lies outside the model space");
    if (h1.empty() || h2.empty()) throw EmptyRegionError("simulation regions must be non-empty");
    if (!(h1.space() == space) || !(h2.space() == space))
      throw DomainError("simulation regions must live in the family's parameter space");
  }
};

/// Sorted sample of 2 log GLR.
struct EmpiricalDistribution {
  std::vector<double> values;
  int failures = 0;

  std::size_t size() const { return values.size(); }

  /// Type-7 (linear interpolation) quantile.
  double quantile(double p) const {
    if (values.empty()) throw DomainError("quantile of an empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
    const double h = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double a = values[lo], b = values[hi];
    if (a == b) return a;
    return a + (h - static_cast<double>(lo)) * (b - a);
  }

  double median() const { return quantile(0.5); }

  double fraction_positive() const {
    const auto pos = std::count_if(values.begin(), values.end(), [](double v) { return v > 0; });
    return static_cast<double>(pos) / static_cast<double>(values.size());
  }
};

namespace detail {

inline std::uint64_t replication_seed(std::uint64_t seed, std::uint64_t rep) {
  return splitmix64(seed ^ splitmix64(rep + 0x632be59bd9b4e019ULL));
}

// Log-likelihood of the drawn sufficient statistic, as a model.
inline LikelihoodModel replicate_model(Family family, int n, std::mt19937_64& rng, double theta0) {
  if (family == Family::binomial) {
    std::binomial_distribution<int> draw(n, theta0);
    return binomial_model(BinomialData(draw(rng), n));
  }
  std::normal_distribution<double> draw(theta0, 1.0 / std::sqrt(static_cast<double>(n)));
  const double xbar = draw(rng);
  return LikelihoodModel(
      family_space(family),
      [xbar, n](std::span<const double> p) { return -0.5 * n * (p[0] - xbar) * (p[0] - xbar); },
      {xbar});
}

// Expected per-observation log-likelihood under theta0.
inline LikelihoodModel population_model(Family family, double theta0) {
  if (family == Family::binomial) {
    return LikelihoodModel(
        family_space(family),
        [theta0](std::span<const double> p) {
          const double t = std::clamp(p[0], 0.0, 1.0);
          double v = 0.0;
          if (theta0 > 0) v += theta0 * std::log(t);
          if (theta0 < 1) v += (1.0 - theta0) * std::log1p(-t);
          return v;
        },
        {std::clamp(theta0, 0.01, 0.99)});
  }
  return LikelihoodModel(
      family_space(family),
      [theta0](std::span<const double> p) { return -0.5 * (p[0] - theta0) * (p[0] - theta0); },
      {theta0});
}

}  // namespace detail

/// Draws cfg.replications data sets under theta0 and records
/// 2 (log sup L_n(h1) - log sup L_n(h2)) for each. Replication i uses its own
/// generator seeded from (cfg.seed, i), so the result does not depend on the
/// thread count. Throws NumericError when more than 0.1% of replications fail.
inline EmpiricalDistribution simulate_glr(const SimulationConfig& cfg) {
  cfg.validate();
  const auto reps = static_cast<std::size_t>(cfg.replications);
  std::vector<double> values(reps);
  std::vector<char> failed(reps, 0);

  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 rng(detail::replication_seed(cfg.seed, i));
      try {
        const LikelihoodModel m = detail::replicate_model(cfg.family, cfg.n, rng, cfg.theta0);
        const EvidenceReport r = glr(m, cfg.h1, cfg.h2, cfg.optimizer);
        values[i] = 2.0 * r.log_glr;
        failed[i] = !(r.sup1.converged && r.sup2.converged) || std::isnan(r.log_glr);
      } catch (const NumericError&) {
        values[i] = std::numeric_limits<double>::quiet_NaN();
        failed[i] = 1;
      }
    }
  };

  unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, reps));
  if (threads <= 1) {
    run(0, reps);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (reps + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t b = t * chunk, e = std::min(reps, b + chunk);
      if (b < e) pool.emplace_back(run, b, e);
    }
  }

  EmpiricalDistribution out;
  out.failures = static_cast<int>(std::count(failed.begin(), failed.end(), 1));
  if (out.failures * 1000 > cfg.replications)
    throw NumericError(std::to_string(out.failures) + " of " + std::to_string(cfg.replications) +
                       " replications failed");
  out.values.reserve(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    if (!std::isnan(values[i])) out.values.push_back(values[i]);
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

/// Limit law of 2 log GLR.
struct LimitSpec {
  enum class Kind { signed_chisq_mixture, neg_chisq, divergent };
  Kind kind = Kind::signed_chisq_mixture;
  double df = 1.0;
  double weight_positive = 0.5;  // mixture: P(+chi^2); the rest is -chi^2
  bool diverges_up = true;       // divergent: +inf (true) or -inf

  /// Boundary point shared by two half-lines: +Z^2 or -Z^2 with equal odds.
  static LimitSpec boundary_mixture(double df = 1.0) {
    return make(Kind::signed_chisq_mixture, df, 0.5, true);
  }
  static LimitSpec signed_mixture(double weight_positive, double df) {
    return make(Kind::signed_chisq_mixture, df, weight_positive, true);
  }
  /// Interior point null against its complement.
  static LimitSpec point_null(double df = 1.0) { return make(Kind::neg_chisq, df, 0.0, false); }
  static LimitSpec divergent(bool up) { return make(Kind::divergent, 1.0, 0.0, up); }

private:
  static LimitSpec make(Kind kind, double df, double w, bool up) {
    if (!(df >= 1.0)) throw DomainError("limit degrees of freedom must be at least 1");
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("mixture weights must lie in [0, 1]");
    LimitSpec s;
    s.kind = kind;
    s.df = df;
    s.weight_positive = w;
    s.diverges_up = up;
    return s;
  }
};

inline const char* to_string(LimitSpec::Kind k) {
  switch (k) {
    case LimitSpec::Kind::signed_chisq_mixture: return "signed_chisq_mixture";
    case LimitSpec::Kind::neg_chisq: return "neg_chisq";
    case LimitSpec::Kind::divergent: return "divergent";
  }
  return "";
}

/// CDF of the limit law at x.
inline double limit_cdf(const LimitSpec& spec, double x) {
  if (std::isnan(x)) throw DomainError("limit_cdf of NaN");
  // P(-chi^2 <= x) and P(+chi^2 <= x)
  auto neg = [&](double v) { return v >= 0 ? 1.0 : 1.0 - chisq_cdf(-v, spec.df); };
  auto pos = [&](double v) { return v <= 0 ? 0.0 : chisq_cdf(v, spec.df); };
  switch (spec.kind) {
    case LimitSpec::Kind::signed_chisq_mixture:
      return (1.0 - spec.weight_positive) * neg(x) + spec.weight_positive * pos(x);
    case LimitSpec::Kind::neg_chisq: return neg(x);
    case LimitSpec::Kind::divergent:
      if (spec.diverges_up) return x == inf ? 1.0 : 0.0;
      return 1.0;
  }
  return 0.0;
}

/// Kolmogorov-Smirnov distance sup_x |F_R(x) - F(x)| between the sample and
/// the limit, evaluated at the sample points from both sides.
inline double ks_distance(const EmpiricalDistribution& e, const LimitSpec& spec) {
  if (e.size() < 100) throw DomainError("ks_distance needs at least 100 values");
  const double r = static_cast<double>(e.size());
  double d = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double f = limit_cdf(spec, e.values[i]);
    d = std::max({d, static_cast<double>(i + 1) / r - f, f - static_cast<double>(i) / r});
  }
  return d;
}

struct ConsistencyReport {
  std::vector<int> sample_sizes;
  std::vector<double> medians;  // median log GLR per sample size
  int direction = 0;            // +1: h1 should dominate, -1: h2, 0: tie
  bool strictly_monotone = false;
};

/// Which hypothesis the population log-likelihood favours: sign of
/// sup l_inf(h1) - sup l_inf(h2).
inline int favoured_direction(Family family, double theta0, const Region& h1, const Region& h2,
                              const OptimizerConfig& cfg = {}) {
  const LikelihoodModel pop = detail::population_model(family, theta0);
  const double diff = sup_log_lik(pop, h1, cfg).max_value - sup_log_lik(pop, h2, cfg).max_value;
  if (std::abs(diff) <= 1e-9) return 0;
  return diff > 0 ? 1 : -1;
}

/// Median log GLR for each sample size, and whether the medians move strictly
/// in the direction the population log-likelihood predicts.
inline ConsistencyReport consistency_trend(const SimulationConfig& base,
                                           const std::vector<int>& sample_sizes) {
  if (sample_sizes.empty()) throw DomainError("consistency_trend needs sample sizes");
  ConsistencyReport rep;
  rep.sample_sizes = sample_sizes;
  rep.direction = favoured_direction(base.family, base.theta0, base.h1, base.h2, base.optimizer);
  for (int n : sample_sizes) {
    SimulationConfig cfg = base;
    cfg.n = n;
    rep.medians.push_back(0.5 * simulate_glr(cfg).median());
  }
  rep.strictly_monotone = rep.direction != 0;
  for (std::size_t i = 1; i < rep.medians.size() && rep.strictly_monotone; ++i) {
    const double step = rep.medians[i] - rep.medians[i - 1];
    rep.strictly_monotone = rep.direction > 0 ? step > 0 : step < 0;
  }
  return rep;
}

}  // namespace gll

#endif  // GLL_ASYMPTOTICS_HPP
