#ifndef GLL_IO_HPP
#define GLL_IO_HPP

// JSON and CSV output. Numbers carry 12 significant digits; non-finite values
// are written as the strings "inf", "-inf" and "nan".

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "gll/asymptotics.hpp"
#include "gll/likelihood.hpp"
#include "gll/optimize.hpp"
#include "gll/region.hpp"

namespace gll {

using json = nlohmann::json;

inline std::string format12(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// A double rounded to 12 significant digits, or a string when non-finite.
inline json number(double x) {
  if (!std::isfinite(x)) return format12(x);
  return std::strtod(format12(x).c_str(), nullptr);
}

inline json to_json(const Interval& iv) {
  return {{"lower", number(iv.lower)},
          {"upper", number(iv.upper)},
          {"lower_closed", iv.lower_closed},
          {"upper_closed", iv.upper_closed}};
}

inline json to_json(const ScalarRegion& r) {
  json a = json::array();
  for (const auto& iv : r.intervals()) a.push_back(to_json(iv));
  return a;
}

/// {"parameters": [...], "boxes": [{name: interval, ...}, ...]}
inline json to_json(const Region& r) {
  json params = json::array();
  for (const auto& p : r.space().params()) {
    json q = to_json(p.range);
    q["name"] = p.name;
    params.push_back(std::move(q));
  }
  json boxes = json::array();
  for (const auto& b : r.boxes()) {
    json box = json::object();
    for (std::size_t k = 0; k < b.size(); ++k) box[r.space()[k].name] = to_json(b[k]);
    boxes.push_back(std::move(box));
  }
  return {{"parameters", params}, {"boxes", boxes}};
}

inline json to_json(const MaxResult& m, const ParameterSpace& space) {
  json at = json::object();
  for (std::size_t k = 0; k < m.argmax.size() && k < space.dim(); ++k)
    at[space[k].name] = number(m.argmax[k]);
  return {{"log_sup", number(m.max_value)},
          {"argmax", at},
          {"attained", m.attained},
          {"converged", m.converged},
          {"iterations", m.iterations}};
}

inline json to_json(const Strength& s) {
  return {{"label", s.label}, {"favors", to_string(s.favors)}, {"descriptive_only", true}};
}

inline json to_json(const EvidenceReport& r, const ParameterSpace& space) {
  return {{"glr", number(r.glr)},
          {"log_glr", number(r.log_glr)},
          {"h1", to_json(r.sup1, space)},
          {"h2", to_json(r.sup2, space)},
          {"strength", to_json(r.strength)}};
}

inline json to_json(const SupportSet& s) {
  return {{"interest", s.interest},
          {"k", number(s.k)},
          {"peak_location", number(s.peak_location)},
          {"peak_log_value", number(s.peak_log_value)},
          {"log_threshold", number(s.log_threshold)},
          {"intervals", to_json(s.set)}};
}

inline json to_json(const LimitSpec& l) {
  json j = {{"kind", to_string(l.kind)}, {"df", number(l.df)}};
  if (l.kind == LimitSpec::Kind::signed_chisq_mixture) j["weight_positive"] = number(l.weight_positive);
  if (l.kind == LimitSpec::Kind::divergent) j["direction"] = l.diverges_up ? "+inf" : "-inf";
  return j;
}

inline json quantiles_json(const EmpiricalDistribution& e) {
  json q = json::object();
  for (double p : {0.01, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99}) q[format12(p)] = number(e.quantile(p));
  return q;
}

inline json to_json(const ConsistencyReport& r) {
  json meds = json::array();
  for (double m : r.medians) meds.push_back(number(m));
  return {{"sample_sizes", r.sample_sizes},
          {"median_log_glr", meds},
          {"direction", r.direction > 0 ? "H1" : r.direction < 0 ? "H2" : "tie"},
          {"strictly_monotone", r.strictly_monotone}};
}

inline json to_json(const OptimizerConfig& c) {
  return {{"abs_tol_x", c.abs_tol_x},
          {"abs_tol_f", c.abs_tol_f},
          {"max_iters", c.max_iters},
          {"multistart_count", c.multistart_count},
          {"seed", c.seed},
          {"scan_points", c.scan_points}};
}

/// Overrides the fields present in `j`; unknown keys are rejected.
inline OptimizerConfig apply_config(OptimizerConfig c, const json& j) {
  if (!j.is_object()) throw DomainError("optimizer config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "abs_tol_x") c.abs_tol_x = value.get<double>();
    else if (key == "abs_tol_f") c.abs_tol_f = value.get<double>();
    else if (key == "max_iters") c.max_iters = value.get<int>();
    else if (key == "multistart_count") c.multistart_count = value.get<int>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "scan_points") c.scan_points = value.get<int>();
    else throw DomainError("unknown optimizer config key '" + key + "'");
  }
  c.validate();
  return c;
}

namespace detail {

inline void dump12(std::ostream& os, const json& j, int indent, int depth) {
  const auto pad = [&](int d) {
    if (indent < 0) return;
    os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
  };
  const char* colon = indent < 0 ? ":" : ": ";
  if (j.is_number_float()) {
    os << format12(j.get<double>());
  } else if (j.is_object() && !j.empty()) {
    os << '{';
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) os << ',';
      first = false;
      pad(depth + 1);
      os << json(key).dump() << colon;
      dump12(os, value, indent, depth + 1);
    }
    pad(depth);
    os << '}';
  } else if (j.is_array() && !j.empty()) {
    os << '[';
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ',';
      pad(depth + 1);
      dump12(os, j[i], indent, depth + 1);
    }
    pad(depth);
    os << ']';
  } else {
    os << j.dump();
  }
}

}  // namespace detail

/// Serializes like json::dump, but floating-point values get exactly 12
/// significant digits. indent < 0 gives a single line.
inline std::string dump12(const json& j, int indent = 2) {
  std::ostringstream os;
  detail::dump12(os, j, indent, 0);
  return os.str();
}

/// CSV with header `gamma,normalized_likelihood`.
inline void write_profile_csv(std::ostream& out, const ProfileCurve& c) {
  out << "gamma,normalized_likelihood\n";
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    out << format12(c.grid[i]) << ',' << format12(c.normalized[i]) << '\n';
}

}  // namespace gll

#endif  // GLL_IO_HPP
