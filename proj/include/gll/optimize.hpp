#ifndef GLL_OPTIMIZE_HPP
#define GLL_OPTIMIZE_HPP

// Derivative-free maximizers for log-likelihoods: Brent's golden-section /
// parabolic search on intervals, Nelder-Mead on boxes, and bisection for
// support-interval endpoints. Everything maximizes; -inf is a legal value.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "gll/error.hpp"
#include "gll/region.hpp"

namespace gll {

struct OptimizerConfig {
  double abs_tol_x = 1e-10;
  double abs_tol_f = 1e-12;
  int max_iters = 500;
  int multistart_count = 8;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  // Grid resolution for support-set scans and superset checks.
  int scan_points = 2001;

  void validate() const {
    if (!(abs_tol_x > 0) || !(abs_tol_f > 0)) throw DomainError("tolerances must be positive");
    if (max_iters < 1) throw DomainError("max_iters must be at least 1");
    if (multistart_count < 1) throw DomainError("multistart_count must be at least 1");
    if (scan_points < 3) throw DomainError("scan_points must be at least 3");
  }
};

struct MaxResult {
  std::vector<double> argmax;
  double max_value = -inf;
  int iterations = 0;
  bool converged = false;
  // False when the supremum sits on an endpoint excluded from the region.
  bool attained = true;
};

namespace detail {

// Maps u in a finite parameter interval onto the (possibly infinite) x interval.
// Finite intervals use the identity; half-lines use a + u/(1-u) on [0,1);
// the real line uses u/(1-u^2) on (-1,1).
class AxisMap {
public:
  AxisMap(double lower, double upper) : lower_(lower), upper_(upper) {
    if (std::isfinite(lower) && std::isfinite(upper)) {
      kind_ = Kind::identity;
      u_lo_ = lower;
      u_hi_ = upper;
    } else if (std::isfinite(lower)) {
      kind_ = Kind::upper_half;
      u_lo_ = 0.0;
      u_hi_ = 1.0;
    } else if (std::isfinite(upper)) {
      kind_ = Kind::lower_half;
      u_lo_ = 0.0;
      u_hi_ = 1.0;
    } else {
      kind_ = Kind::line;
      u_lo_ = -1.0;
      u_hi_ = 1.0;
    }
  }

  double u_lower() const { return u_lo_; }
  double u_upper() const { return u_hi_; }
  bool finite() const { return kind_ == Kind::identity; }
  // Whether the u endpoints map to real points (false => they map to +-inf).
  bool lower_reachable() const { return kind_ == Kind::identity || kind_ == Kind::upper_half; }
  bool upper_reachable() const { return kind_ == Kind::identity || kind_ == Kind::lower_half; }

  double to_x(double u) const {
    switch (kind_) {
      case Kind::identity: return u;
      case Kind::upper_half: return u >= 1.0 ? inf : lower_ + u / (1.0 - u);
      case Kind::lower_half: return u >= 1.0 ? -inf : upper_ - u / (1.0 - u);
      case Kind::line:
        if (u <= -1.0) return -inf;
        if (u >= 1.0) return inf;
        return u / (1.0 - u * u);
    }
    return u;
  }

private:
  enum class Kind { identity, upper_half, lower_half, line };
  Kind kind_ = Kind::identity;
  double lower_, upper_;
  double u_lo_ = 0.0, u_hi_ = 0.0;
};

struct Brent1dResult {
  double x;
  double fx;
  int iterations;
  bool converged;
};

// Brent's method (golden section + successive parabolic interpolation),
// maximizing f on [a, b]. Non-finite values force golden steps.
template <typename F>
Brent1dResult brent_maximize(F&& f, double a, double b, double tol, int max_iters) {
  constexpr double golden = 0.3819660112501051;  // (3 - sqrt 5) / 2
  const double rel = std::sqrt(std::numeric_limits<double>::epsilon());
  auto neg = [&](double x) {
    const double v = f(x);
    return std::isnan(v) ? inf : -v;
  };
  double x = a + golden * (b - a);
  double w = x, v = x;
  double fx = neg(x);
  double fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  int it = 0;
  for (; it < max_iters; ++it) {
    const double xm = 0.5 * (a + b);
    const double tol1 = rel * std::abs(x) + tol / 3.0;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) return {x, -fx, it, true};
    bool golden_step = true;
    if (std::abs(e) > tol1 && std::isfinite(fx) && std::isfinite(fw) && std::isfinite(fv)) {
      double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) && p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = xm >= x ? tol1 : -tol1;
        golden_step = false;
      }
    }
    if (golden_step) {
      e = (x >= xm) ? a - x : b - x;
      d = golden * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + (d >= 0 ? tol1 : -tol1);
    const double fu = neg(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; fv = fw;
      w = x; fw = fx;
      x = u; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; fv = fw;
        w = u; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u; fv = fu;
      }
    }
  }
  return {x, -fx, it, false};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Maximizes a scalar function over the closed interval [lower, upper]
/// (either end may be infinite). A grid of multistart_count + 1 points seeds
/// Brent refinements around every grid-local maximum; grid points themselves,
/// including finite endpoints, are always candidates.
template <typename F>
MaxResult maximize_1d(F&& f, double lower, double upper, const OptimizerConfig& cfg = {}) {
  cfg.validate();
  if (std::isnan(lower) || std::isnan(upper) || lower > upper)
    throw DomainError("maximize_1d needs lower <= upper");
  MaxResult best;
  if (lower == upper) {
    best.argmax = {lower};
    best.max_value = f(lower);
    best.converged = true;
    if (!(best.max_value > -inf)) throw NumericError("objective is -inf everywhere");
    return best;
  }

  const detail::AxisMap map(lower, upper);
  auto g = [&](double u) {
    const double x = map.to_x(u);
    if (!std::isfinite(x)) return -inf;
    const double v = f(x);
    return std::isnan(v) ? -inf : v;
  };

  const int cells = std::max(cfg.multistart_count, 2);
  std::vector<double> us(cells + 1), gs(cells + 1);
  for (int i = 0; i <= cells; ++i) {
    us[i] = map.u_lower() + (map.u_upper() - map.u_lower()) * i / cells;
    if (i == cells) us[i] = map.u_upper();
    gs[i] = g(us[i]);
  }
  // Unreachable ends of a half-line/line map to +-inf; nudge them inside.
  if (!map.lower_reachable()) {
    us[0] = map.u_lower() + 1e-6 * (us[1] - us[0]);
    gs[0] = g(us[0]);
  }
  if (!map.upper_reachable()) {
    us[cells] = map.u_upper() - 1e-6 * (us[cells] - us[cells - 1]);
    gs[cells] = g(us[cells]);
  }

  double best_u = us[0];
  double best_g = gs[0];
  for (int i = 1; i <= cells; ++i) {
    if (gs[i] > best_g) {
      best_g = gs[i];
      best_u = us[i];
    }
  }

  bool all_converged = true;
  int iterations = 0;
  int runs = 0;
  // Tolerance in u; the axis map has unit slope at its anchor.
  const double tol = cfg.abs_tol_x;
  for (int i = 0; i <= cells && runs < cfg.multistart_count; ++i) {
    const double left = i > 0 ? gs[i - 1] : -inf;
    const double right = i < cells ? gs[i + 1] : -inf;
    if (!(gs[i] > -inf) || gs[i] < left || gs[i] < right) continue;
    // Skip the plateau interior so a flat run costs one refinement.
    if (i > 0 && gs[i] == left) continue;
    const double a = us[std::max(i - 1, 0)];
    const double b = us[std::min(i + 1, cells)];
    const auto r = detail::brent_maximize(g, a, b, tol, cfg.max_iters);
    ++runs;
    iterations += r.iterations;
    all_converged = all_converged && r.converged;
    if (r.fx > best_g) {
      best_g = r.fx;
      best_u = r.x;
    }
  }
  if (!(best_g > -inf)) throw NumericError("objective is -inf everywhere on the interval");

  double best_x = map.to_x(best_u);
  // Far out on a mapped axis the u tolerance is coarse in x; polish in x.
  if (!map.finite()) {
    const double h = 1e-4 * (map.u_upper() - map.u_lower());
    const double ua = std::max(best_u - h, map.u_lower()), ub = std::min(best_u + h, map.u_upper());
    double xa = map.to_x(ua), xb = map.to_x(ub);
    if (!std::isfinite(xa)) xa = best_x - std::max(1.0, std::abs(best_x));
    if (!std::isfinite(xb)) xb = best_x + std::max(1.0, std::abs(best_x));
    xa = std::max(xa, lower);
    xb = std::min(xb, upper);
    if (xa < xb) {
      auto fx = [&](double x) {
        const double v = f(x);
        return std::isnan(v) ? -inf : v;
      };
      const auto r = detail::brent_maximize(fx, xa, xb, tol, cfg.max_iters);
      iterations += r.iterations;
      if (r.fx >= best_g) {
        best_g = r.fx;
        best_x = r.x;
      }
    }
  }

  best.argmax = {best_x};
  best.max_value = best_g;
  best.iterations = iterations;
  best.converged = all_converged;
  return best;
}

namespace detail {

struct SimplexResult {
  std::vector<double> x;
  double fx;
  int iterations;
  bool converged;
};

inline void clamp_to_box(std::vector<double>& p, const Box& box) {
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::clamp(p[i], box[i].lower, box[i].upper);
}

// Nelder-Mead maximization with projection onto the box. Stops when the
// simplex diameter (max vertex distance from the best vertex) drops below
// tol_x.
template <typename F>
SimplexResult nelder_mead(F&& f, std::vector<double> start, const std::vector<double>& step,
                          const Box& box, double tol_x, double tol_f, int max_iters) {
  const std::size_t n = start.size();
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
  auto eval = [&](const std::vector<double>& p) {
    const double v = f(std::span<const double>(p));
    return std::isnan(v) ? -inf : v;
  };
  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i + 1][i] += step[i];
    if (pts[i + 1][i] > box[i].upper) pts[i + 1][i] = start[i] - step[i];
    clamp_to_box(pts[i + 1], box);
  }
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  int it = 0;
  bool converged = false;
  for (; it < max_iters; ++it) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];

    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < n; ++k) d2 += (pts[i][k] - pts[best][k]) * (pts[i][k] - pts[best][k]);
      diameter = std::max(diameter, std::sqrt(d2));
    }
    const bool flat = std::isfinite(vals[best]) && std::isfinite(vals[worst]) &&
                      vals[best] - vals[worst] <= tol_f * 1e-3;
    if (diameter < tol_x || (flat && diameter < std::sqrt(tol_x))) {
      converged = diameter < tol_x || flat;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[order[i]][k] / static_cast<double>(n);
    }
    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + alpha * (centroid[k] - pts[worst][k]);
    clamp_to_box(trial, box);
    const double fr = eval(trial);
    if (fr > vals[best]) {
      for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + gamma * (trial[k] - centroid[k]);
      clamp_to_box(trial2, box);
      const double fe = eval(trial2);
      if (fe > fr) {
        pts[worst] = trial2;
        vals[worst] = fe;
      } else {
        pts[worst] = trial;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr > vals[second]) {
      pts[worst] = trial;
      vals[worst] = fr;
      continue;
    }
    // Contraction: outside if the reflection beat the worst vertex, else inside.
    const bool outside = fr > vals[worst];
    for (std::size_t k = 0; k < n; ++k) {
      const double towards = outside ? trial[k] : pts[worst][k];
      trial2[k] = centroid[k] + rho * (towards - centroid[k]);
    }
    clamp_to_box(trial2, box);
    const double fc = eval(trial2);
    if (fc > (outside ? fr : vals[worst])) {
      pts[worst] = trial2;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= n; ++i) {
      auto& p = pts[order[i]];
      for (std::size_t k = 0; k < n; ++k) p[k] = pts[best][k] + sigma * (p[k] - pts[best][k]);
      vals[order[i]] = eval(p);
    }
  }
  const auto best = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], it, converged};
}

}  // namespace detail

/// Maximizes f(span<const double>) over a closed box by Nelder-Mead from
/// `start` plus multistart_count - 1 pseudo-random seeds derived from
/// cfg.seed, then polishes the winner with fresh simplices. Unbounded axes are
/// sampled around `start`. A one-dimensional box delegates to maximize_1d.
template <typename F>
MaxResult maximize_box(F&& f, const Box& box, std::span<const double> start,
                       const OptimizerConfig& cfg = {}) {
  cfg.validate();
  const std::size_t n = box.size();
  if (n == 0) throw DomainError("maximize_box needs at least one dimension");
  if (start.size() != n) throw DomainError("start point dimension does not match box");
  for (const auto& iv : box) {
    if (iv.empty()) throw DomainError("maximize_box needs a non-empty box");
  }
  if (n == 1) {
    auto g = [&](double x) { return f(std::span<const double>(&x, 1)); };
    return maximize_1d(g, box[0].lower, box[0].upper, cfg);
  }

  std::vector<double> origin(start.begin(), start.end());
  detail::clamp_to_box(origin, box);
  std::vector<double> step(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double width = box[i].upper - box[i].lower;
    step[i] = std::isfinite(width) ? 0.1 * width : 0.25 * std::max(1.0, std::abs(origin[i]));
    if (width == 0.0) step[i] = 0.0;
  }

  std::mt19937_64 rng(detail::splitmix64(cfg.seed));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  MaxResult best;
  int iterations = 0;
  bool have_best = false;
  for (int s = 0; s < cfg.multistart_count; ++s) {
    std::vector<double> seed = origin;
    if (s > 0) {
      for (std::size_t i = 0; i < n; ++i) {
        const auto& iv = box[i];
        if (std::isfinite(iv.lower) && std::isfinite(iv.upper)) {
          seed[i] = iv.lower + unit(rng) * (iv.upper - iv.lower);
        } else {
          seed[i] = origin[i] + 4.0 * step[i] * normal(rng);
        }
      }
      detail::clamp_to_box(seed, box);
    }
    const auto r = detail::nelder_mead(f, seed, step, box, cfg.abs_tol_x, cfg.abs_tol_f,
                                       cfg.max_iters);
    iterations += r.iterations;
    if (!have_best || r.fx > best.max_value) {
      best.argmax = r.x;
      best.max_value = r.fx;
      best.converged = r.converged;
      have_best = true;
    }
  }

  // Restart from the best vertex until a restart no longer improves it.
  for (int polish = 0; polish < 5 && best.max_value > -inf; ++polish) {
    std::vector<double> small(n);
    for (std::size_t i = 0; i < n; ++i)
      small[i] = step[i] == 0.0 ? 0.0 : std::max(1e-3 * step[i], 1e3 * cfg.abs_tol_x);
    const auto r = detail::nelder_mead(f, best.argmax, small, box, cfg.abs_tol_x, cfg.abs_tol_f,
                                       cfg.max_iters);
    iterations += r.iterations;
    const bool improved = r.fx > best.max_value + cfg.abs_tol_f;
    if (r.fx >= best.max_value) {
      best.argmax = r.x;
      best.max_value = r.fx;
      best.converged = r.converged;
    }
    if (!improved) break;
  }
  if (!(best.max_value > -inf)) throw NumericError("objective is -inf everywhere on the box");
  best.iterations = iterations;
  return best;
}

template <typename F>
MaxResult maximize_box(F&& f, const Box& box, const OptimizerConfig& cfg = {}) {
  std::vector<double> centre(box.size());
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto& iv = box[i];
    if (std::isfinite(iv.lower) && std::isfinite(iv.upper)) {
      centre[i] = 0.5 * (iv.lower + iv.upper);
    } else if (std::isfinite(iv.lower)) {
      centre[i] = iv.lower + 1.0;
    } else if (std::isfinite(iv.upper)) {
      centre[i] = iv.upper - 1.0;
    }
  }
  return maximize_box(std::forward<F>(f), box, centre, cfg);
}

/// Bisection on a bracket with g(a) * g(b) <= 0; returns the midpoint of the
/// final bracket of width <= abs_tol_x.
template <typename G>
double find_root_1d(G&& g, double a, double b, const OptimizerConfig& cfg = {}) {
  cfg.validate();
  if (a > b) std::swap(a, b);
  double ga = g(a);
  const double gb = g(b);
  if (std::isnan(ga) || std::isnan(gb)) throw NumericError("root bracket evaluates to NaN");
  if (ga == 0.0) return a;
  if (gb == 0.0) return b;
  if ((ga > 0) == (gb > 0)) throw DomainError("bracket does not straddle a sign change");
  const int limit = std::max(cfg.max_iters, 2000);
  for (int it = 0; it < limit && b - a > cfg.abs_tol_x; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0) == (ga > 0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace gll

#endif  // GLL_OPTIMIZE_HPP
