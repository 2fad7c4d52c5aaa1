#ifndef GLL_REDUCED_HPP
#define GLL_REDUCED_HPP

// Evidence from reduced data: the GLR of the alternative H2 over the null H1
// when only a test decision T or a p-value U was published.
//
//   r_T(t) = sup_{H2} P(T = t) / sup_{H1} P(T = t)
//   r_U(u) = sup_{H2} f_U(u)   / sup_{H1} f_U(u)
//
// Bounds based on the smallest significance level that rejects (and its dual)
// are deliberately absent: they depend on a data-chosen alpha, so the fixed-
// alpha argument behind r_T no longer applies to them.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gll/error.hpp"
#include "gll/normal.hpp"
#include "gll/region.hpp"

namespace gll {

/// Power function pi(theta) = P_theta(reject H1). The archetype kinds encode
/// the usual monotone shapes; `tabulated` takes an arbitrary curve.
struct PowerFunction {
  enum class Kind { one_sided, point_null_one_sided, two_sided_point_null, equivalence, tabulated };

  Kind kind = Kind::one_sided;
  double alpha = 0.05;
  double pi_max = 1.0;  // equivalence only
  // tabulated only: pi on an ascending grid, with null and alternative regions.
  std::vector<double> grid;
  std::vector<double> power;
  ScalarRegion null_region;
  ScalarRegion alternative_region;

  /// H1: theta <= theta*, H2: theta > theta*; pi rises from 0 through alpha to 1.
  static PowerFunction one_sided(double alpha) { return archetype(Kind::one_sided, alpha); }
  /// H1: theta = theta*, H2: theta > theta*, same test.
  static PowerFunction point_null_one_sided(double alpha) {
    return archetype(Kind::point_null_one_sided, alpha);
  }
  /// H1: theta = theta*, H2: theta != theta*; pi = alpha at theta*, rising to 1.
  static PowerFunction two_sided_point_null(double alpha) {
    return archetype(Kind::two_sided_point_null, alpha);
  }
  /// H1: |theta - theta*| >= delta, H2: |theta - theta*| < delta; pi peaks at
  /// pi_max, equals alpha at the margins and falls to 0.
  static PowerFunction equivalence(double alpha, double pi_max) {
    PowerFunction pf = archetype(Kind::equivalence, alpha);
    if (!(pi_max > alpha && pi_max <= 1.0)) throw DomainError("equivalence needs alpha < pi_max <= 1");
    pf.pi_max = pi_max;
    return pf;
  }
  static PowerFunction tabulated(std::vector<double> grid, std::vector<double> power,
                                 ScalarRegion null_region, ScalarRegion alternative_region) {
    if (grid.size() < 2 || grid.size() != power.size())
      throw DomainError("tabulated power needs matching grid and power of length >= 2");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1])))
        throw DomainError("tabulated grid must be finite and strictly increasing");
      if (!(power[i] >= 0.0 && power[i] <= 1.0)) throw DomainError("power values must lie in [0, 1]");
    }
    if (null_region.empty() || alternative_region.empty())
      throw EmptyRegionError("tabulated power needs non-empty hypotheses");
    PowerFunction pf;
    pf.kind = Kind::tabulated;
    pf.alpha = std::numeric_limits<double>::quiet_NaN();
    pf.grid = std::move(grid);
    pf.power = std::move(power);
    pf.null_region = std::move(null_region);
    pf.alternative_region = std::move(alternative_region);
    return pf;
  }

private:
  static PowerFunction archetype(Kind kind, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
    PowerFunction pf;
    pf.kind = kind;
    pf.alpha = alpha;
    return pf;
  }
};

enum class TestOutcome { not_rejected = 0, rejected = 1 };

namespace detail {

struct PowerRange {
  double min;
  double max;
};

// Extremes of the piecewise-linear interpolant of pi over the closure of a
// region: they occur at grid nodes inside it or at its endpoints.
inline PowerRange power_range(const PowerFunction& pf, const ScalarRegion& region) {
  const ScalarRegion closed = region.closure();
  const double lo = pf.grid.front(), hi = pf.grid.back();
  auto interp = [&](double x) {
    const auto it = std::upper_bound(pf.grid.begin(), pf.grid.end(), x);
    if (it == pf.grid.begin()) return pf.power.front();
    if (it == pf.grid.end()) return pf.power.back();
    const auto j = static_cast<std::size_t>(it - pf.grid.begin());
    const double w = (x - pf.grid[j - 1]) / (pf.grid[j] - pf.grid[j - 1]);
    return pf.power[j - 1] + w * (pf.power[j] - pf.power[j - 1]);
  };
  PowerRange r{inf, -inf};
  auto take = [&](double v) {
    r.min = std::min(r.min, v);
    r.max = std::max(r.max, v);
  };
  for (std::size_t i = 0; i < pf.grid.size(); ++i) {
    if (closed.contains(pf.grid[i])) take(pf.power[i]);
  }
  for (const auto& iv : closed.intervals()) {
    for (double e : {iv.lower, iv.upper}) {
      if (std::isfinite(e) && e >= lo && e <= hi) take(interp(e));
    }
  }
  if (!(r.max >= r.min)) throw DomainError("tabulated grid does not cover a hypothesis");
  return r;
}

inline double ratio(double num, double den) {
  if (den == 0.0) {
    if (num == 0.0) throw NumericError("both hypotheses give probability zero");
    return inf;
  }
  return num / den;
}

}  // namespace detail

/// GLR of H2 over H1 from the test outcome.
inline double glr_from_test(const PowerFunction& pf, TestOutcome t) {
  const bool rejected = t == TestOutcome::rejected;
  switch (pf.kind) {
    case PowerFunction::Kind::one_sided: return rejected ? 1.0 / pf.alpha : 1.0 - pf.alpha;
    case PowerFunction::Kind::point_null_one_sided:
    case PowerFunction::Kind::two_sided_point_null: return rejected ? 1.0 / pf.alpha : 1.0;
    case PowerFunction::Kind::equivalence: return rejected ? pf.pi_max / pf.alpha : 1.0 - pf.alpha;
    case PowerFunction::Kind::tabulated: {
      const auto null = detail::power_range(pf, pf.null_region);
      const auto alt = detail::power_range(pf, pf.alternative_region);
      if (rejected) return detail::ratio(alt.max, null.max);
      return detail::ratio(1.0 - alt.min, 1.0 - null.min);
    }
  }
  return 1.0;
}

/// GLR of mu > 0 over mu <= 0 from a one-sided normal p-value:
/// exp(+q^2 / 2) for u <= 0.5 and exp(-q^2 / 2) otherwise, q = Phi^-1(1 - u).
inline double glr_from_pvalue_normal(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("p-value must lie in (0, 1)");
  const double q = normal_quantile(1.0 - u);
  return u <= 0.5 ? std::exp(q * q / 2.0) : std::exp(-q * q / 2.0);
}

/// Maps a mean (or mean difference) to the shift of the standardized statistic
/// V ~ N(shift, 1): shift = scale * mu.
struct ShiftFamily {
  double scale = 1.0;

  /// V = sqrt(n) mean(Y) / sigma.
  static ShiftFamily one_sample(int n, double sigma) {
    if (n < 1 || !(sigma > 0)) throw DomainError("one-sample shift needs n >= 1 and sigma > 0");
    return ShiftFamily{std::sqrt(static_cast<double>(n)) / sigma};
  }
  /// V = (1/n1 + 1/n2)^(-1/2) (mean(Y2) - mean(Y1)) / sigma; mu = mu2 - mu1.
  static ShiftFamily two_sample(int n1, int n2, double sigma) {
    if (n1 < 1 || n2 < 1 || !(sigma > 0))
      throw DomainError("two-sample shift needs n1, n2 >= 1 and sigma > 0");
    return ShiftFamily{1.0 / (std::sqrt(1.0 / n1 + 1.0 / n2) * sigma)};
  }
};

/// GLR of H2 over H1 from U = 1 - Phi(V), V ~ N(scale * mu, 1), with H1 and
/// H2 given as regions of mu: the ratio of sup phi(Phi^-1(1 - u) - scale * mu)
/// over each region.
inline double glr_from_pvalue_general(double u, const ShiftFamily& family, const ScalarRegion& h1,
                                      const ScalarRegion& h2) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("p-value must lie in (0, 1)");
  if (!(family.scale > 0) || !std::isfinite(family.scale)) throw DomainError("shift scale must be positive");
  if (h1.empty() || h2.empty()) throw EmptyRegionError("p-value hypotheses must be non-empty");
  const double q = normal_quantile(1.0 - u);
  auto scaled = [&](const ScalarRegion& r) {
    std::vector<Interval> out;
    for (const auto& iv : r.intervals()) {
      out.push_back(Interval::make(iv.lower * family.scale, iv.upper * family.scale,
                                   iv.lower_closed, iv.upper_closed));
    }
    return ScalarRegion(std::move(out));
  };
  const double d1 = scaled(h1).distance(q);
  const double d2 = scaled(h2).distance(q);
  return std::exp(0.5 * (d1 * d1 - d2 * d2));
}

}  // namespace gll

#endif  // GLL_REDUCED_HPP
