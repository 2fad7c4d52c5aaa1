#ifndef GLL_MODELS_HPP
#define GLL_MODELS_HPP

// Likelihoods for a single binomial proportion, the difference of two
// binomial proportions (nuisance profiled out), and the paired bivariate
// normal crossover model with mean-difference and sd-ratio profiles.
// Data-only constants (binomial coefficients) are dropped; ratios are
// unaffected.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gll/error.hpp"
#include "gll/likelihood.hpp"
#include "gll/optimize.hpp"
#include "gll/region.hpp"

namespace gll {

// ---------------------------------------------------------------- binomial

struct BinomialData {
  int x = 0;
  int n = 1;

  BinomialData() = default;
  BinomialData(int successes, int trials) : x(successes), n(trials) {
    if (n < 1) throw DomainError("binomial needs n >= 1");
    if (x < 0 || x > n) throw DomainError("binomial needs 0 <= x <= n");
  }

  double mle() const { return static_cast<double>(x) / n; }
};

/// x ln(theta) + (n - x) ln(1 - theta), with 0 ln 0 = 0.
inline double binomial_loglik(const BinomialData& d, double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) throw DomainError("binomial theta must lie in [0, 1]");
  double v = 0.0;
  if (d.x > 0) v += d.x * std::log(theta);
  if (d.n - d.x > 0) v += (d.n - d.x) * std::log1p(-theta);
  return v;
}

inline ParameterSpace binomial_space() {
  return ParameterSpace({{"theta", Interval::closed(0.0, 1.0)}});
}

inline LikelihoodModel binomial_model(const BinomialData& d) {
  return LikelihoodModel(
      binomial_space(),
      [d](std::span<const double> p) { return binomial_loglik(d, std::clamp(p[0], 0.0, 1.0)); },
      {(d.x + 0.5) / (d.n + 1.0)});
}

// ------------------------------------------------------------ two binomials

/// Group 1 minus group 2: delta = p1 - p2, with p2 the nuisance.
struct TwoBinomialData {
  BinomialData group1;
  BinomialData group2;

  TwoBinomialData() = default;
  TwoBinomialData(int x1, int n1, int x2, int n2) : group1(x1, n1), group2(x2, n2) {}

  double mle_difference() const { return group1.mle() - group2.mle(); }
};

/// Feasible p2 for a given delta: [max(0, -delta), min(1, 1 - delta)].
inline Interval two_binomial_nuisance_range(double delta) {
  if (!(delta >= -1.0 && delta <= 1.0)) throw DomainError("delta must lie in [-1, 1]");
  return Interval::closed(std::max(0.0, -delta), std::min(1.0, 1.0 - delta));
}

inline double two_binomial_loglik(const TwoBinomialData& d, double delta, double p2) {
  const double p1 = std::clamp(p2 + delta, 0.0, 1.0);
  return binomial_loglik(d.group1, p1) + binomial_loglik(d.group2, std::clamp(p2, 0.0, 1.0));
}

/// max over the feasible p2 of the joint log-likelihood at p1 = p2 + delta.
inline double two_binomial_profile_loglik(const TwoBinomialData& d, double delta,
                                          const OptimizerConfig& cfg = {}) {
  const Interval nuisance = two_binomial_nuisance_range(delta);
  auto f = [&](double p2) { return two_binomial_loglik(d, delta, p2); };
  if (nuisance.degenerate()) return f(nuisance.lower);
  try {
    return maximize_1d(f, nuisance.lower, nuisance.upper, cfg).max_value;
  } catch (const NumericError&) {
    return -inf;  // zero likelihood for every feasible p2
  }
}

inline ParameterSpace two_binomial_space() {
  return ParameterSpace({{"delta", Interval::closed(-1.0, 1.0)}});
}

/// One-parameter model in delta whose likelihood is the profile likelihood.
inline LikelihoodModel two_binomial_model(const TwoBinomialData& d, const OptimizerConfig& cfg = {}) {
  auto profile = [d, cfg](double delta) {
    return two_binomial_profile_loglik(d, std::clamp(delta, -1.0, 1.0), cfg);
  };
  return LikelihoodModel(
      two_binomial_space(), [profile](std::span<const double> p) { return profile(p[0]); },
      {d.mle_difference()}, ProfileAxis{"delta", {"p2"}, profile});
}

// --------------------------------------------------- paired bivariate normal

struct BivariateNormalParams {
  double mu_t = 0.0;
  double mu_r = 0.0;
  double sd_t = 1.0;
  double sd_r = 1.0;
  double rho = 0.0;

  bool valid() const {
    return std::isfinite(mu_t) && std::isfinite(mu_r) && sd_t > 0 && sd_r > 0 &&
           std::isfinite(sd_t) && std::isfinite(sd_r) && rho > -1.0 && rho < 1.0;
  }
};

/// n pairs (y_t, y_r) of log-AUC values measured on the same subject.
class PairedSample {
public:
  PairedSample() = default;
  PairedSample(std::vector<double> y_t, std::vector<double> y_r)
      : y_t_(std::move(y_t)), y_r_(std::move(y_r)) {
    if (y_t_.size() != y_r_.size()) throw DomainError("paired sample columns differ in length");
    if (y_t_.size() < 3) throw DomainError("paired sample needs at least 3 pairs");
    for (std::size_t i = 0; i < y_t_.size(); ++i) {
      if (!std::isfinite(y_t_[i]) || !std::isfinite(y_r_[i]))
        throw DomainError("paired sample values must be finite");
    }
  }

  std::size_t size() const noexcept { return y_t_.size(); }
  const std::vector<double>& test() const noexcept { return y_t_; }
  const std::vector<double>& reference() const noexcept { return y_r_; }

private:
  std::vector<double> y_t_;
  std::vector<double> y_r_;
};

/// Sample means and covariance with divisor n (the MLE).
struct PairedSummary {
  double n = 0;
  double mean_t = 0, mean_r = 0;
  double var_t = 0, var_r = 0, cov = 0;

  double det() const { return var_t * var_r - cov * cov; }
};

inline PairedSummary summarize(const PairedSample& s) {
  PairedSummary m;
  const auto& t = s.test();
  const auto& r = s.reference();
  m.n = static_cast<double>(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    m.mean_t += t[i];
    m.mean_r += r[i];
  }
  m.mean_t /= m.n;
  m.mean_r /= m.n;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double a = t[i] - m.mean_t, b = r[i] - m.mean_r;
    m.var_t += a * a;
    m.var_r += b * b;
    m.cov += a * b;
  }
  m.var_t /= m.n;
  m.var_r /= m.n;
  m.cov /= m.n;
  return m;
}

/// Exact bivariate normal log-density summed over the pairs.
inline double bivnorm_loglik(const PairedSample& s, const BivariateNormalParams& p) {
  if (!p.valid()) throw DomainError("bivariate normal needs sd > 0 and |rho| < 1");
  const double one_m_r2 = 1.0 - p.rho * p.rho;
  const double log_norm =
      -std::log(2.0 * std::numbers::pi) - std::log(p.sd_t) - std::log(p.sd_r) - 0.5 * std::log(one_m_r2);
  double quad = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double zt = (s.test()[i] - p.mu_t) / p.sd_t;
    const double zr = (s.reference()[i] - p.mu_r) / p.sd_r;
    quad += zt * zt - 2.0 * p.rho * zt * zr + zr * zr;
  }
  return static_cast<double>(s.size()) * log_norm - 0.5 * quad / one_m_r2;
}

/// Same value as bivnorm_loglik, computed from the sufficient statistics.
inline double bivnorm_loglik(const PairedSummary& m, const BivariateNormalParams& p) {
  const double one_m_r2 = 1.0 - p.rho * p.rho;
  const double st2 = p.sd_t * p.sd_t, sr2 = p.sd_r * p.sd_r, c = p.rho * p.sd_t * p.sd_r;
  const double det = st2 * sr2 * one_m_r2;
  const double dt = m.mean_t - p.mu_t, dr = m.mean_r - p.mu_r;
  // tr(Sigma^-1 (S + d d'))
  const double at = m.var_t + dt * dt, ar = m.var_r + dr * dr, atr = m.cov + dt * dr;
  const double tr = (sr2 * at - 2.0 * c * atr + st2 * ar) / det;
  return -m.n * std::log(2.0 * std::numbers::pi) - 0.5 * m.n * std::log(det) - 0.5 * m.n * tr;
}

inline BivariateNormalParams bivnorm_mle(const PairedSample& s) {
  const PairedSummary m = summarize(s);
  if (!(m.var_t > 0) || !(m.var_r > 0) || !(m.det() > 0))
    throw DomainError("sample covariance is singular");
  return {m.mean_t, m.mean_r, std::sqrt(m.var_t), std::sqrt(m.var_r),
          m.cov / std::sqrt(m.var_t * m.var_r)};
}

/// -n (ln 2 pi + 1 + 1/2 ln det S), the log-likelihood at the sample MLE.
inline double bivnorm_max_loglik(const PairedSample& s) {
  const PairedSummary m = summarize(s);
  if (!(m.det() > 0)) throw DomainError("sample covariance is singular");
  return -m.n * (std::log(2.0 * std::numbers::pi) + 1.0 + 0.5 * std::log(m.det()));
}

inline OptimizerConfig bivnorm_default_config() {
  OptimizerConfig cfg;
  cfg.max_iters = 4000;
  cfg.multistart_count = 4;
  return cfg;
}

/// Profile log-likelihood of gamma = mu_t - mu_r, maximized numerically over
/// the four remaining parameters. The bivariate normal is written as
/// D = Y_T - Y_R ~ N(gamma, sd_d^2) and Y_R | D ~ N(a + b D, tau^2), a
/// one-to-one reparametrization. In (mu, sd, rho) form a far-off gamma drives
/// rho towards +-1 and the quadratic form cancels catastrophically; here every
/// term stays well conditioned.
inline double bivnorm_profile_mean_diff(const PairedSample& s, double gamma,
                                        const OptimizerConfig& cfg = bivnorm_default_config()) {
  if (!std::isfinite(gamma)) throw DomainError("mean difference must be finite");
  const PairedSummary m = summarize(s);
  const double mean_d = m.mean_t - m.mean_r;
  const double var_d = m.var_t + m.var_r - 2.0 * m.cov, cov_dr = m.cov - m.var_r;
  if (!(var_d > 0) || !(m.det() > 0)) throw DomainError("sample covariance is singular");
  const double sd_d0 = std::sqrt(var_d), sd_r0 = std::sqrt(m.var_r);
  const double log2pi = std::log(2.0 * std::numbers::pi);
  auto f = [&](std::span<const double> z) {
    const double sd_d = sd_d0 * std::exp(z[0]);
    const double a = m.mean_r + sd_r0 * z[1];
    const double b = (sd_r0 / sd_d0) * z[2];
    const double tau = sd_r0 * std::exp(z[3]);
    const double shift = mean_d - gamma, resid = m.mean_r - a - b * mean_d;
    // per-observation means of the squared residuals
    const double ss_d = var_d + shift * shift;
    const double ss_r = resid * resid + m.var_r - 2.0 * b * cov_dr + b * b * var_d;
    const double v = -m.n * (log2pi + std::log(sd_d) + std::log(tau)) -
                     0.5 * m.n * (ss_d / (sd_d * sd_d) + ss_r / (tau * tau));
    return std::isfinite(v) ? v : -inf;
  };
  const double start[] = {0.0, 0.0, 0.0, 0.0};
  const Box box(4, Interval::real_line());
  const MaxResult r = maximize_box(f, box, start, cfg);
  if (!r.converged) throw NumericError("mean-difference profile did not converge");
  return r.max_value;
}

/// Profile log-likelihood of ratio = sd_t / sd_r. The means sit at the sample
/// means; maximizes over (log sd_r, atanh rho).
inline double bivnorm_profile_sd_ratio(const PairedSample& s, double ratio,
                                       const OptimizerConfig& cfg = bivnorm_default_config()) {
  if (!(ratio > 0) || !std::isfinite(ratio)) throw DomainError("sd ratio must be positive");
  const PairedSummary m = summarize(s);
  const BivariateNormalParams hat = bivnorm_mle(s);
  // Centre sd_r on the value that balances both marginal variances.
  const double sd_r0 = std::sqrt(0.5 * (m.var_r + m.var_t / (ratio * ratio)));
  auto f = [&](std::span<const double> z) {
    BivariateNormalParams p;
    p.mu_t = m.mean_t;
    p.mu_r = m.mean_r;
    p.sd_r = sd_r0 * std::exp(z[0]);
    p.sd_t = ratio * p.sd_r;
    p.rho = std::tanh(std::atanh(hat.rho) + z[1]);
    if (!p.valid()) return -inf;
    return bivnorm_loglik(m, p);
  };
  const double start[] = {0.0, 0.0};
  const Box box(2, Interval::real_line());
  const MaxResult r = maximize_box(f, box, start, cfg);
  if (!r.converged) throw NumericError("sd-ratio profile did not converge");
  return r.max_value;
}

/// One-parameter model in gamma = mu_t - mu_r (profile likelihood).
inline LikelihoodModel bivnorm_mean_diff_model(const PairedSample& s,
                                               const OptimizerConfig& cfg = bivnorm_default_config()) {
  auto profile = [s, cfg](double gamma) {
    if (!std::isfinite(gamma)) return -inf;
    return bivnorm_profile_mean_diff(s, gamma, cfg);
  };
  const BivariateNormalParams hat = bivnorm_mle(s);
  return LikelihoodModel(
      ParameterSpace({{"gamma", Interval::real_line()}}),
      [profile](std::span<const double> p) { return profile(p[0]); }, {hat.mu_t - hat.mu_r},
      ProfileAxis{"gamma", {"mu_r", "sd_t", "sd_r", "rho"}, profile});
}

/// One-parameter model in ratio = sd_t / sd_r (profile likelihood).
inline LikelihoodModel bivnorm_sd_ratio_model(const PairedSample& s,
                                              const OptimizerConfig& cfg = bivnorm_default_config()) {
  auto profile = [s, cfg](double ratio) {
    if (!(ratio > 0) || !std::isfinite(ratio)) return -inf;
    return bivnorm_profile_sd_ratio(s, ratio, cfg);
  };
  const BivariateNormalParams hat = bivnorm_mle(s);
  return LikelihoodModel(
      ParameterSpace({{"ratio", Interval::open(0.0, inf)}}),
      [profile](std::span<const double> p) { return profile(p[0]); }, {hat.sd_t / hat.sd_r},
      ProfileAxis{"ratio", {"mu_t", "mu_r", "sd_r", "rho"}, profile});
}

/// Full five-parameter model (mu_t, mu_r, sd_t, sd_r, rho).
inline LikelihoodModel bivnorm_model(const PairedSample& s) {
  const PairedSummary m = summarize(s);
  const BivariateNormalParams hat = bivnorm_mle(s);
  ParameterSpace space({{"mu_t", Interval::real_line()},
                        {"mu_r", Interval::real_line()},
                        {"sd_t", Interval::open(0.0, inf)},
                        {"sd_r", Interval::open(0.0, inf)},
                        {"rho", Interval::open(-1.0, 1.0)}});
  return LikelihoodModel(
      std::move(space),
      [m](std::span<const double> p) {
        const BivariateNormalParams q{p[0], p[1], p[2], p[3], p[4]};
        if (!q.valid()) return -inf;
        return bivnorm_loglik(m, q);
      },
      {hat.mu_t, hat.mu_r, hat.sd_t, hat.sd_r, hat.rho});
}

/// n pairs drawn from the bivariate normal; deterministic given seed.
inline PairedSample synthetic_paired_sample(std::size_t n, const BivariateNormalParams& p,
                                            std::uint64_t seed) {
  if (!p.valid()) throw DomainError("bivariate normal needs sd > 0 and |rho| < 1");
  std::mt19937_64 rng(detail::splitmix64(seed));
  std::normal_distribution<double> z(0.0, 1.0);
  std::vector<double> t(n), r(n);
  const double c = std::sqrt(1.0 - p.rho * p.rho);
  for (std::size_t i = 0; i < n; ++i) {
    const double z1 = z(rng), z2 = z(rng);
    r[i] = p.mu_r + p.sd_r * z1;
    t[i] = p.mu_t + p.sd_t * (p.rho * z1 + c * z2);
  }
  return PairedSample(std::move(t), std::move(r));
}

namespace detail {
inline std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}
}  // namespace detail

/// Reads CSV with the exact header `y_t,y_r`.
inline PairedSample read_paired_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != "y_t,y_r")
    throw DomainError("paired CSV must start with header 'y_t,y_r'");
  std::vector<double> t, r;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw DomainError("row " + std::to_string(row) + ": expected two columns");
    try {
      std::size_t used = 0;
      const std::string a = detail::trim(line.substr(0, comma));
      const std::string b = detail::trim(line.substr(comma + 1));
      t.push_back(std::stod(a, &used));
      if (used != a.size()) throw std::invalid_argument(a);
      r.push_back(std::stod(b, &used));
      if (used != b.size()) throw std::invalid_argument(b);
    } catch (const std::logic_error&) {
      throw DomainError("row " + std::to_string(row) + ": bad number");
    }
  }
  return PairedSample(std::move(t), std::move(r));
}

inline void write_paired_csv(std::ostream& out, const PairedSample& s) {
  out << "y_t,y_r\n";
  out.precision(17);
  for (std::size_t i = 0; i < s.size(); ++i) out << s.test()[i] << ',' << s.reference()[i] << '\n';
}

}  // namespace gll

#endif  // GLL_MODELS_HPP
