#ifndef GLL_LIKELIHOOD_HPP
#define GLL_LIKELIHOOD_HPP

// Evidence for composite hypotheses: suprema of the likelihood over regions,
// generalized likelihood ratios, support sets S_k = {L > sup L / k}, the
// largest k with S_k inside a hypothesis, and normalized profile curves.
// All work is on the log scale.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gll/error.hpp"
#include "gll/optimize.hpp"
#include "gll/region.hpp"

namespace gll {

using Point = std::vector<double>;
using LogLikelihood = std::function<double(std::span<const double>)>;

/// A log profile likelihood along one interest parameter, with the names of
/// the nuisance parameters it maximizes out.
struct ProfileAxis {
  std::string interest;
  std::vector<std::string> nuisance;
  std::function<double(double)> log_profile;
};

class LikelihoodModel {
public:
  /// `start` must be a point of the space with a finite log-likelihood; it
  /// anchors optimizer seeds on unbounded axes.
  LikelihoodModel(ParameterSpace space, LogLikelihood log_lik, Point start,
                  std::optional<ProfileAxis> profile = std::nullopt)
      : space_(std::move(space)),
        log_lik_(std::move(log_lik)),
        start_(std::move(start)),
        profile_(std::move(profile)) {
    if (!log_lik_) throw DomainError("model needs a log-likelihood");
    if (!space_.contains(start_)) throw DomainError("start point lies outside the parameter space");
    if (!std::isfinite(log_lik_(start_)))
      throw DomainError("log-likelihood must be finite at the start point");
    if (profile_) {
      if (!space_.find(profile_->interest))
        throw DomainError("profile interest '" + profile_->interest + "' is not a parameter");
      if (!profile_->log_profile) throw DomainError("profile axis needs an evaluator");
    }
  }

  const ParameterSpace& space() const noexcept { return space_; }
  const Point& start() const noexcept { return start_; }
  const std::optional<ProfileAxis>& profile() const noexcept { return profile_; }

  double log_lik(std::span<const double> p) const { return log_lik_(p); }
  double operator()(std::span<const double> p) const { return log_lik_(p); }

  /// Same model with a constant added to the log-likelihood (a data-free
  /// factor in the likelihood). No ratio may change.
  LikelihoodModel with_offset(double c) const {
    LogLikelihood shifted = [f = log_lik_, c](std::span<const double> p) { return f(p) + c; };
    std::optional<ProfileAxis> axis = profile_;
    if (axis) {
      axis->log_profile = [g = profile_->log_profile, c](double x) { return g(x) + c; };
    }
    return LikelihoodModel(space_, std::move(shifted), start_, std::move(axis));
  }

private:
  ParameterSpace space_;
  LogLikelihood log_lik_;
  Point start_;
  std::optional<ProfileAxis> profile_;
};

enum class Favors { h1, h2, neither };

inline const char* to_string(Favors f) {
  switch (f) {
    case Favors::h1: return "H1";
    case Favors::h2: return "H2";
    case Favors::neither: return "neither";
  }
  return "neither";
}

/// Descriptive strength on the usual benchmarks: 8 is fairly strong, 32 is
/// strong. Never used to gate a computation.
struct Strength {
  Favors favors = Favors::neither;
  std::string label = "neutral";
};

inline Strength classify_strength(double log_glr) {
  if (std::isnan(log_glr)) return {};
  if (std::abs(log_glr) <= 1e-12) return {};
  // Compare on the log scale so a ratio of exactly 8 or 32 is not lost to rounding.
  const double a = std::abs(log_glr) + 1e-12;
  Strength s;
  s.favors = log_glr > 0 ? Favors::h1 : Favors::h2;
  s.label = a >= std::log(32.0) ? "strong" : a >= std::log(8.0) ? "fairly strong" : "weak";
  return s;
}

struct EvidenceReport {
  double glr = 1.0;
  double log_glr = 0.0;
  MaxResult sup1;
  MaxResult sup2;
  Strength strength;
};

namespace detail {

inline bool all_degenerate(const Box& b) {
  return std::all_of(b.begin(), b.end(), [](const Interval& iv) { return iv.degenerate(); });
}

inline Box close_box(const Box& b, const ParameterSpace& space) {
  Box c = b;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Interval& range = space[k].range;
    const bool lc = !(c[k].lower == range.lower && !range.lower_closed);
    const bool uc = !(c[k].upper == range.upper && !range.upper_closed);
    c[k] = Interval::make(c[k].lower, c[k].upper, lc, uc);
  }
  return c;
}

// Supremum over one box: optimize over its closure, then move the maximizer
// onto an excluded face when it sits there within tolerance.
inline MaxResult sup_over_box(const LikelihoodModel& m, const Box& box, const OptimizerConfig& cfg) {
  const std::size_t n = box.size();
  const Box closed = close_box(box, m.space());
  MaxResult r;
  if (all_degenerate(closed)) {
    r.argmax.resize(n);
    for (std::size_t k = 0; k < n; ++k) r.argmax[k] = closed[k].lower;
    r.max_value = m.log_lik(r.argmax);
    r.converged = true;
    return r;
  }
  // Optimize over the free axes only.
  std::vector<std::size_t> free_axes;
  for (std::size_t k = 0; k < n; ++k) {
    if (!closed[k].degenerate()) free_axes.push_back(k);
  }
  Point full(n);
  for (std::size_t k = 0; k < n; ++k) full[k] = closed[k].lower;
  auto embed = [&](std::span<const double> z) {
    Point p = full;
    for (std::size_t j = 0; j < free_axes.size(); ++j) p[free_axes[j]] = z[j];
    return p;
  };
  if (free_axes.size() == 1) {
    const std::size_t axis = free_axes[0];
    auto f = [&](double x) {
      Point p = full;
      p[axis] = x;
      return m.log_lik(p);
    };
    r = maximize_1d(f, closed[axis].lower, closed[axis].upper, cfg);
    r.argmax = embed(r.argmax);
  } else {
    Box sub;
    Point start;
    for (std::size_t k : free_axes) {
      sub.push_back(closed[k]);
      start.push_back(std::clamp(m.start()[k], closed[k].lower, closed[k].upper));
    }
    auto f = [&](std::span<const double> z) { return m.log_lik(embed(z)); };
    r = maximize_box(f, sub, start, cfg);
    r.argmax = embed(r.argmax);
  }

  // Snap onto excluded endpoints.
  for (std::size_t k : free_axes) {
    const double x = r.argmax[k];
    const double snap = 10.0 * cfg.abs_tol_x * std::max(1.0, std::abs(x));
    for (const auto& [end, open] : {std::pair{box[k].lower, !box[k].lower_closed},
                                    std::pair{box[k].upper, !box[k].upper_closed}}) {
      if (!open || !std::isfinite(end) || x == end || std::abs(x - end) > snap) continue;
      Point p = r.argmax;
      p[k] = end;
      const double v = m.log_lik(p);
      if (v >= r.max_value - cfg.abs_tol_f) {
        r.argmax = p;
        r.max_value = std::max(r.max_value, v);
      }
    }
  }
  return r;
}

}  // namespace detail

/// sup of the log-likelihood over a region, computed over its closure piece by
/// piece. `attained` is false when the supremum is only approached.
inline MaxResult sup_log_lik(const LikelihoodModel& m, const Region& r, const OptimizerConfig& cfg = {}) {
  if (r.empty()) throw EmptyRegionError("supremum over an empty region is undefined");
  if (!(r.space() == m.space())) throw DomainError("region and model use different spaces");
  std::optional<MaxResult> best;
  std::optional<NumericError> failure;
  int iterations = 0;
  for (const auto& box : r.boxes()) {
    MaxResult res;
    try {
      res = detail::sup_over_box(m, box, cfg);
    } catch (const NumericError& e) {
      failure = e;
      continue;
    }
    iterations += res.iterations;
    if (!best || res.max_value > best->max_value) best = std::move(res);
  }
  if (!best) throw *failure;
  best->iterations = iterations;
  best->attained = r.contains(best->argmax);
  return *best;
}

/// Generalized likelihood ratio sup L(h1) / sup L(h2).
inline EvidenceReport glr(const LikelihoodModel& m, const Region& h1, const Region& h2,
                          const OptimizerConfig& cfg = {}) {
  EvidenceReport rep;
  rep.sup1 = sup_log_lik(m, h1, cfg);
  rep.sup2 = sup_log_lik(m, h2, cfg);
  if (!(rep.sup1.max_value > -inf) && !(rep.sup2.max_value > -inf))
    throw NumericError("likelihood is zero on both hypotheses");
  rep.log_glr = rep.sup1.max_value - rep.sup2.max_value;
  rep.glr = std::exp(rep.log_glr);
  rep.strength = classify_strength(rep.log_glr);
  return rep;
}

/// Evidence for h against its complement.
inline EvidenceReport evidence_vs_complement(const LikelihoodModel& m, const Region& h,
                                             const OptimizerConfig& cfg = {}) {
  return glr(m, h, complement(h), cfg);
}

/// The range of one axis, and the log (profile) likelihood along it. One
/// dimensional models use the likelihood itself, a declared profile axis uses
/// its evaluator, anything else is profiled numerically over the other axes.
inline std::function<double(double)> profile_function(const LikelihoodModel& m,
                                                      std::string_view interest,
                                                      const OptimizerConfig& cfg = {}) {
  const std::size_t axis = m.space().index_of(interest);
  if (m.space().dim() == 1) {
    return [&m](double x) { return m.log_lik(std::span<const double>(&x, 1)); };
  }
  if (m.profile() && m.profile()->interest == interest) return m.profile()->log_profile;
  return [&m, axis, cfg](double x) {
    Box box = Region::space_box(m.space());
    box[axis] = Interval::point(x);
    return detail::sup_over_box(m, box, cfg).max_value;
  };
}

inline std::string default_interest(const LikelihoodModel& m) {
  if (m.profile()) return m.profile()->interest;
  return m.space()[0].name;
}

/// 1/k support set along one axis, as intervals.
struct SupportSet {
  std::string interest;
  double k = 1.0;
  double peak_location = 0.0;
  double peak_log_value = 0.0;
  double log_threshold = 0.0;  // peak_log_value - ln k
  ScalarRegion set;
};

namespace detail {

inline double axis_to_u(const AxisMap& map, double lower, double upper, double x) {
  if (map.finite()) return x;
  if (std::isfinite(lower)) return (x - lower) / (1.0 + x - lower);
  if (std::isfinite(upper)) return (upper - x) / (1.0 + upper - x);
  if (x == 0.0) return 0.0;
  return (-1.0 + std::sqrt(1.0 + 4.0 * x * x)) / (2.0 * x);
}

struct ScanPoint {
  double x;
  double value;
};

// Grid of the axis range in mapped coordinates, plus any extra points, sorted.
template <typename F>
std::vector<ScanPoint> scan_axis(F&& f, const Interval& range, int points,
                                 std::span<const double> extra) {
  const AxisMap map(range.lower, range.upper);
  std::vector<double> xs;
  const double ulo = map.u_lower(), uhi = map.u_upper();
  for (int i = 0; i < points; ++i) {
    double u = ulo + (uhi - ulo) * i / (points - 1);
    if (i == 0 && !map.lower_reachable()) u = ulo + 1e-6 * (uhi - ulo) / (points - 1);
    if (i == points - 1 && !map.upper_reachable()) u = uhi - 1e-6 * (uhi - ulo) / (points - 1);
    if (i == points - 1 && map.upper_reachable()) u = uhi;
    xs.push_back(map.to_x(u));
  }
  for (double x : extra) {
    if (range.closure().contains(x)) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<ScanPoint> out;
  out.reserve(xs.size());
  for (double x : xs) {
    double v = f(x);
    if (std::isnan(v)) v = -inf;
    out.push_back({x, v});
  }
  return out;
}

inline Interval axis_range(const LikelihoodModel& m, std::string_view interest) {
  const Interval& r = m.space()[m.space().index_of(interest)].range;
  return r;
}

}  // namespace detail

/// S_k = {x : L(x) > sup L / k} along `interest` (defaults to the profile
/// axis, or the only parameter). Endpoints come from bisection between the
/// grid points of a cfg.scan_points scan that bracket each crossing.
inline SupportSet support_set(const LikelihoodModel& m, double k, const OptimizerConfig& cfg = {},
                              std::string interest = {}) {
  if (!(k > 1.0)) throw DomainError("support sets need k > 1");
  cfg.validate();
  if (interest.empty()) interest = default_interest(m);
  const auto prof = profile_function(m, interest, cfg);
  const Interval range = detail::axis_range(m, interest);

  const MaxResult peak = maximize_1d(prof, range.lower, range.upper, cfg);
  SupportSet s;
  s.interest = interest;
  s.k = k;
  s.peak_location = peak.argmax[0];
  s.peak_log_value = peak.max_value;
  s.log_threshold = peak.max_value - std::log(k);

  auto g = [&](double x) { return prof(x) - s.log_threshold; };
  const double extra[] = {s.peak_location};
  const auto scan = detail::scan_axis(g, range, cfg.scan_points, extra);

  std::vector<Interval> pieces;
  const std::size_t n = scan.size();
  for (std::size_t i = 0; i < n;) {
    if (!(scan[i].value > 0)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && scan[j + 1].value > 0) ++j;
    Interval piece;
    if (i == 0) {
      piece.lower = std::isfinite(range.lower) ? scan[0].x : -inf;
      piece.lower_closed = std::isfinite(range.lower) && range.lower_closed;
      if (std::isfinite(range.lower) && !range.lower_closed) piece.lower = range.lower;
    } else {
      piece.lower = find_root_1d(g, scan[i - 1].x, scan[i].x, cfg);
      piece.lower_closed = false;
    }
    if (j == n - 1) {
      piece.upper = std::isfinite(range.upper) ? scan[n - 1].x : inf;
      piece.upper_closed = std::isfinite(range.upper) && range.upper_closed;
      if (std::isfinite(range.upper) && !range.upper_closed) piece.upper = range.upper;
    } else {
      piece.upper = find_root_1d(g, scan[j].x, scan[j + 1].x, cfg);
      piece.upper_closed = false;
    }
    pieces.push_back(piece);
    i = j + 1;
  }
  s.set = ScalarRegion(std::move(pieces));
  return s;
}

/// Outcome of checking "sup L(S) / sup L(S^c) >= k implies S_k inside S".
struct SupersetCheck {
  double log_ratio = 0.0;       // log sup L(S) - log sup L(S^c)
  bool condition = false;       // ratio >= k
  bool verified = false;        // S_k inside S on the grid (only if condition)
  std::optional<double> witness;  // a grid point of S_k outside S

  bool consistent() const { return !condition || verified; }
};

/// Checks the ratio condition and, when it holds, that every point of a
/// cfg.scan_points grid (plus the endpoints of S) lying in S_k also lies in S.
/// Needs a one-dimensional model.
inline SupersetCheck min_supported_superset_check(const LikelihoodModel& m, const Region& s,
                                                  double k, const OptimizerConfig& cfg = {}) {
  if (m.space().dim() != 1) throw DomainError("superset check needs a one-dimensional model");
  if (!(k > 1.0)) throw DomainError("support sets need k > 1");
  SupersetCheck out;
  double peak = 0.0;
  if (s.is_full()) {
    out.log_ratio = inf;
    peak = sup_log_lik(m, s, cfg).max_value;
  } else {
    const auto rep = evidence_vs_complement(m, s, cfg);
    out.log_ratio = rep.log_glr;
    peak = std::max(rep.sup1.max_value, rep.sup2.max_value);
  }
  const double log_k = std::log(k);
  out.condition = out.log_ratio >= log_k - 1e-12 * std::max(1.0, log_k);
  if (!out.condition) return out;

  const double threshold = peak - log_k;
  std::vector<double> extra;
  const ScalarRegion shape = s.projection(0);
  for (const auto& iv : shape.intervals()) {
    extra.push_back(iv.lower);
    extra.push_back(iv.upper);
  }
  auto f = [&](double x) { return m.log_lik(std::span<const double>(&x, 1)); };
  const auto scan = detail::scan_axis(f, m.space()[0].range, cfg.scan_points, extra);
  out.verified = true;
  for (const auto& p : scan) {
    if (p.value > threshold + 1e-9 && !s.contains({p.x})) {
      out.verified = false;
      out.witness = p.x;
      break;
    }
  }
  return out;
}

/// sup{k > 1 : S_k inside a}, or 1 when no k qualifies. Equals the GLR of a
/// against its complement whenever that exceeds 1; +inf for the whole space.
inline double k_star(const LikelihoodModel& m, const Region& a, const OptimizerConfig& cfg = {}) {
  if (a.empty()) throw EmptyRegionError("k* of an empty region is undefined");
  if (a.is_full()) return inf;
  const auto rep = evidence_vs_complement(m, a, cfg);
  return rep.log_glr > 0 ? rep.glr : 1.0;
}

struct GridSpec {
  double lower = 0.0;
  double upper = 1.0;
  int steps = 101;

  std::vector<double> points() const {
    if (steps < 1) throw DomainError("grid needs at least one step");
    if (!(lower <= upper)) throw DomainError("grid needs lower <= upper");
    if (steps == 1) return {lower};
    std::vector<double> xs(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) xs[i] = lower + (upper - lower) * i / (steps - 1);
    xs.back() = upper;
    return xs;
  }
};

/// Profile likelihood on a grid, divided by its maximum so the peak is 1.
struct ProfileCurve {
  std::string interest;
  std::vector<double> grid;
  std::vector<double> log_profile;
  std::vector<double> normalized;
  std::size_t peak_index = 0;
  double peak_location = 0.0;  // off-grid maximizer
  double peak_log_value = 0.0;
};

inline ProfileCurve profile_curve(const LikelihoodModel& m, std::string interest,
                                  const GridSpec& grid, const OptimizerConfig& cfg = {}) {
  if (interest.empty()) interest = default_interest(m);
  const Interval range = detail::axis_range(m, interest);
  const Interval feasible = range.closure();
  ProfileCurve c;
  c.interest = interest;
  c.grid = grid.points();
  for (double x : c.grid) {
    if (!feasible.contains(x)) throw DomainError("grid point outside the feasible range of " + interest);
  }
  const auto prof = profile_function(m, interest, cfg);
  const MaxResult peak = maximize_1d(prof, range.lower, range.upper, cfg);
  c.peak_location = peak.argmax[0];
  double top = peak.max_value;
  c.log_profile.reserve(c.grid.size());
  for (double x : c.grid) {
    const double v = range.contains(x) ? prof(x) : -inf;
    c.log_profile.push_back(std::isnan(v) ? -inf : v);
    top = std::max(top, c.log_profile.back());
  }
  c.peak_log_value = top;
  c.normalized.reserve(c.grid.size());
  for (double v : c.log_profile) c.normalized.push_back(std::exp(v - top));
  c.peak_index = static_cast<std::size_t>(
      std::max_element(c.log_profile.begin(), c.log_profile.end()) - c.log_profile.begin());
  return c;
}

}  // namespace gll

#endif  // GLL_LIKELIHOOD_HPP
