#ifndef GLL_REGION_HPP
#define GLL_REGION_HPP

// Hypothesis sets over named scalar parameters.
//
// A Region is a finite union of pairwise-disjoint axis-aligned boxes inside the
// box of a ParameterSpace. That class is closed under intersection and
// complement, which is all the predicate grammar needs:
//
//   expr  := unary ('and' unary)*
//   unary := 'not' '(' expr ')' | '(' expr ')' | atom
//   atom  := name OP number
//          | 'abs' '(' name [('-' | '+') number] ')' OP number
//   OP    := '<' | '<=' | '>' | '>=' | '=='

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gll/error.hpp"

namespace gll {

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct Interval {
  double lower = -inf;
  double upper = inf;
  bool lower_closed = false;
  bool upper_closed = false;

  /// Builds an interval; infinite ends are always open.
  static Interval make(double lower, double upper, bool lower_closed, bool upper_closed) {
    return Interval{lower, upper, lower_closed && std::isfinite(lower),
                    upper_closed && std::isfinite(upper)};
  }
  static Interval closed(double a, double b) { return make(a, b, true, true); }
  static Interval open(double a, double b) { return make(a, b, false, false); }
  static Interval point(double c) { return make(c, c, true, true); }
  static Interval real_line() { return Interval{}; }

  bool empty() const {
    return !(lower <= upper) || (lower == upper && !(lower_closed && upper_closed));
  }
  bool degenerate() const { return lower == upper; }

  bool contains(double x) const {
    const bool above = lower_closed ? x >= lower : x > lower;
    const bool below = upper_closed ? x <= upper : x < upper;
    return above && below;
  }

  Interval closure() const { return make(lower, upper, true, true); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval intersect(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lower > b.lower) {
    r.lower = a.lower;
    r.lower_closed = a.lower_closed;
  } else if (b.lower > a.lower) {
    r.lower = b.lower;
    r.lower_closed = b.lower_closed;
  } else {
    r.lower = a.lower;
    r.lower_closed = a.lower_closed && b.lower_closed;
  }
  if (a.upper < b.upper) {
    r.upper = a.upper;
    r.upper_closed = a.upper_closed;
  } else if (b.upper < a.upper) {
    r.upper = b.upper;
    r.upper_closed = b.upper_closed;
  } else {
    r.upper = a.upper;
    r.upper_closed = a.upper_closed && b.upper_closed;
  }
  return r;
}

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  if (iv.degenerate() && !iv.empty()) return os << '{' << iv.lower << '}';
  return os << (iv.lower_closed ? '[' : '(') << iv.lower << ", " << iv.upper
            << (iv.upper_closed ? ']' : ')');
}

/// Sorted, pairwise-disjoint, non-empty intervals on one axis.
class ScalarRegion {
public:
  ScalarRegion() = default;
  explicit ScalarRegion(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
    normalize();
  }
  ScalarRegion(std::initializer_list<Interval> intervals)
      : ScalarRegion(std::vector<Interval>(intervals)) {}

  static ScalarRegion full() { return ScalarRegion({Interval::real_line()}); }

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool empty() const noexcept { return intervals_.empty(); }

  bool contains(double x) const {
    return std::any_of(intervals_.begin(), intervals_.end(),
                       [x](const Interval& iv) { return iv.contains(x); });
  }

  ScalarRegion closure() const {
    std::vector<Interval> out;
    out.reserve(intervals_.size());
    for (const auto& iv : intervals_) out.push_back(iv.closure());
    return ScalarRegion(std::move(out));
  }

  /// Distance from x to the closure of the region; +inf when empty.
  double distance(double x) const {
    double d = inf;
    for (const auto& iv : intervals_) {
      if (x < iv.lower) {
        d = std::min(d, iv.lower - x);
      } else if (x > iv.upper) {
        d = std::min(d, x - iv.upper);
      } else {
        return 0.0;
      }
    }
    return d;
  }

  friend bool operator==(const ScalarRegion&, const ScalarRegion&) = default;

  friend ScalarRegion intersect(const ScalarRegion& a, const ScalarRegion& b) {
    std::vector<Interval> out;
    for (const auto& x : a.intervals_) {
      for (const auto& y : b.intervals_) {
        const Interval z = intersect(x, y);
        if (!z.empty()) out.push_back(z);
      }
    }
    return ScalarRegion(std::move(out));
  }

  friend ScalarRegion unite(const ScalarRegion& a, const ScalarRegion& b) {
    std::vector<Interval> out = a.intervals_;
    out.insert(out.end(), b.intervals_.begin(), b.intervals_.end());
    return ScalarRegion(std::move(out));
  }

  /// Complement relative to `domain`.
  friend ScalarRegion complement(const ScalarRegion& a, const Interval& domain) {
    const ScalarRegion inside = intersect(a, ScalarRegion({domain}));
    std::vector<Interval> gaps;
    double lo = domain.lower;
    bool lo_closed = domain.lower_closed;
    for (const auto& iv : inside.intervals_) {
      gaps.push_back(Interval::make(lo, iv.lower, lo_closed, !iv.lower_closed));
      lo = iv.upper;
      lo_closed = !iv.upper_closed;
    }
    gaps.push_back(Interval::make(lo, domain.upper, lo_closed, domain.upper_closed));
    return ScalarRegion(std::move(gaps));
  }

private:
  void normalize() {
    std::erase_if(intervals_, [](const Interval& iv) { return iv.empty(); });
    std::sort(intervals_.begin(), intervals_.end(), [](const Interval& x, const Interval& y) {
      if (x.lower != y.lower) return x.lower < y.lower;
      return x.lower_closed && !y.lower_closed;
    });
    std::vector<Interval> merged;
    for (const auto& iv : intervals_) {
      if (!merged.empty()) {
        Interval& cur = merged.back();
        const bool touches = iv.lower < cur.upper ||
                             (iv.lower == cur.upper && (cur.upper_closed || iv.lower_closed));
        if (touches) {
          if (iv.upper > cur.upper) {
            cur.upper = iv.upper;
            cur.upper_closed = iv.upper_closed;
          } else if (iv.upper == cur.upper) {
            cur.upper_closed = cur.upper_closed || iv.upper_closed;
          }
          continue;
        }
      }
      merged.push_back(iv);
    }
    intervals_ = std::move(merged);
  }

  std::vector<Interval> intervals_;
};

inline std::ostream& operator<<(std::ostream& os, const ScalarRegion& r) {
  if (r.empty()) return os << "{}";
  for (std::size_t i = 0; i < r.intervals().size(); ++i) {
    if (i) os << " U ";
    os << r.intervals()[i];
  }
  return os;
}

struct Parameter {
  std::string name;
  Interval range;
};

/// Ordered named scalar parameters, each with its own range.
class ParameterSpace {
public:
  ParameterSpace() = default;
  explicit ParameterSpace(std::vector<Parameter> params) : params_(std::move(params)) {
    for (std::size_t i = 0; i < params_.size(); ++i) {
      const auto& p = params_[i];
      if (!valid_identifier(p.name)) throw DomainError("invalid parameter name '" + p.name + "'");
      if (!(p.range.lower < p.range.upper))
        throw DomainError("parameter '" + p.name + "' needs lower < upper");
      params_[i].range = Interval::make(p.range.lower, p.range.upper, p.range.lower_closed,
                                        p.range.upper_closed);
      for (std::size_t j = 0; j < i; ++j) {
        if (params_[j].name == p.name) throw DomainError("duplicate parameter '" + p.name + "'");
      }
    }
  }

  std::size_t dim() const noexcept { return params_.size(); }
  const Parameter& operator[](std::size_t i) const { return params_[i]; }
  const std::vector<Parameter>& params() const noexcept { return params_; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < params_.size(); ++i) {
      if (params_[i].name == name) return i;
    }
    return std::nullopt;
  }

  std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw DomainError("unknown parameter '" + std::string(name) + "'");
  }

  bool contains(std::span<const double> p) const {
    if (p.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (!params_[i].range.contains(p[i])) return false;
    }
    return true;
  }

  friend bool operator==(const ParameterSpace& a, const ParameterSpace& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a.params_[i].name != b.params_[i].name || !(a.params_[i].range == b.params_[i].range))
        return false;
    }
    return true;
  }

  static bool valid_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    });
  }

private:
  std::vector<Parameter> params_;
};

/// One interval per parameter, in space order.
using Box = std::vector<Interval>;

inline bool box_empty(const Box& b) {
  return std::any_of(b.begin(), b.end(), [](const Interval& iv) { return iv.empty(); });
}

inline Box intersect(const Box& a, const Box& b) {
  Box r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = intersect(a[i], b[i]);
  return r;
}

class Region {
public:
  Region() = default;

  /// Boxes are clipped to the space and must be pairwise disjoint.
  Region(ParameterSpace space, std::vector<Box> boxes)
      : space_(std::move(space)), boxes_(std::move(boxes)) {
    const Box whole = space_box();
    for (auto& b : boxes_) {
      if (b.size() != space_.dim()) throw DomainError("box dimension does not match space");
      b = intersect(b, whole);
    }
    normalize();
  }

  static Region full(const ParameterSpace& space) { return Region(space, {space_box(space)}); }

  /// Constrains one named parameter; the others stay unconstrained.
  static Region constrain(const ParameterSpace& space, std::string_view name,
                          const ScalarRegion& constraint) {
    const std::size_t k = space.index_of(name);
    std::vector<Box> boxes;
    for (const auto& iv : constraint.intervals()) {
      Box b = space_box(space);
      b[k] = intersect(b[k], iv);
      boxes.push_back(std::move(b));
    }
    return Region(space, std::move(boxes));
  }

  static Region point(const ParameterSpace& space, std::span<const double> p) {
    if (p.size() != space.dim()) throw DomainError("point dimension does not match space");
    Box b;
    for (double x : p) b.push_back(Interval::point(x));
    return Region(space, {b});
  }

  const ParameterSpace& space() const noexcept { return space_; }
  const std::vector<Box>& boxes() const noexcept { return boxes_; }
  bool empty() const noexcept { return boxes_.empty(); }

  bool contains(std::span<const double> p) const {
    if (p.size() != space_.dim()) throw DomainError("point dimension does not match space");
    return std::any_of(boxes_.begin(), boxes_.end(), [&](const Box& b) {
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (!b[i].contains(p[i])) return false;
      }
      return true;
    });
  }
  bool contains(std::initializer_list<double> p) const {
    return contains(std::span<const double>(p.begin(), p.size()));
  }

  /// Union of the box sides along one axis. Exact for one-dimensional spaces.
  ScalarRegion projection(std::size_t axis) const {
    std::vector<Interval> ivs;
    for (const auto& b : boxes_) ivs.push_back(b[axis]);
    return ScalarRegion(std::move(ivs));
  }

  bool is_full() const { return boxes_.size() == 1 && boxes_[0] == space_box(); }

  Box space_box() const { return space_box(space_); }

  static Box space_box(const ParameterSpace& space) {
    Box b;
    for (const auto& p : space.params()) b.push_back(p.range);
    return b;
  }

  friend bool operator==(const Region& a, const Region& b) {
    return a.space_ == b.space_ && a.boxes_ == b.boxes_;
  }

private:
  void normalize() {
    std::erase_if(boxes_, box_empty);
    // Merge boxes that differ along a single axis where their sides join.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < boxes_.size() && !changed; ++i) {
        for (std::size_t j = i + 1; j < boxes_.size() && !changed; ++j) {
          std::size_t diff_axis = 0;
          int diffs = 0;
          for (std::size_t k = 0; k < space_.dim(); ++k) {
            if (!(boxes_[i][k] == boxes_[j][k])) {
              ++diffs;
              diff_axis = k;
            }
          }
          if (diffs != 1) continue;
          const ScalarRegion joined({boxes_[i][diff_axis], boxes_[j][diff_axis]});
          if (joined.intervals().size() != 1) continue;
          boxes_[i][diff_axis] = joined.intervals()[0];
          boxes_.erase(boxes_.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
        }
      }
    }
    std::sort(boxes_.begin(), boxes_.end(), [](const Box& x, const Box& y) {
      for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k].lower != y[k].lower) return x[k].lower < y[k].lower;
        if (x[k].lower_closed != y[k].lower_closed) return x[k].lower_closed;
      }
      return false;
    });
  }

  ParameterSpace space_;
  std::vector<Box> boxes_;
};

inline std::ostream& operator<<(std::ostream& os, const Region& r) {
  if (r.empty()) return os << "{}";
  for (std::size_t i = 0; i < r.boxes().size(); ++i) {
    if (i) os << " U ";
    os << '{';
    for (std::size_t k = 0; k < r.space().dim(); ++k) {
      if (k) os << ", ";
      os << r.space()[k].name << " in " << r.boxes()[i][k];
    }
    os << '}';
  }
  return os;
}

inline Region intersect(const Region& a, const Region& b) {
  if (!(a.space() == b.space())) throw DomainError("regions live in different spaces");
  std::vector<Box> out;
  for (const auto& x : a.boxes()) {
    for (const auto& y : b.boxes()) {
      Box z = intersect(x, y);
      if (!box_empty(z)) out.push_back(std::move(z));
    }
  }
  return Region(a.space(), std::move(out));
}

namespace detail {

// Complement of one box inside the space box as disjoint slabs: slab i takes
// the box sides on axes < i, the outside of side i, and the full range after.
inline std::vector<Box> box_complement(const Box& box, const Box& whole) {
  std::vector<Box> out;
  for (std::size_t i = 0; i < box.size(); ++i) {
    const ScalarRegion outside = complement(ScalarRegion({box[i]}), whole[i]);
    for (const auto& iv : outside.intervals()) {
      Box slab(box.size());
      for (std::size_t k = 0; k < box.size(); ++k) slab[k] = k < i ? box[k] : whole[k];
      slab[i] = iv;
      out.push_back(std::move(slab));
    }
  }
  return out;
}

inline Region complement_unchecked(const Region& r) {
  Region acc = Region::full(r.space());
  for (const auto& b : r.boxes()) {
    acc = intersect(acc, Region(r.space(), box_complement(b, r.space_box())));
  }
  return acc;
}

}  // namespace detail

/// Set complement inside the space box. Throws EmptyRegionError if r is the
/// whole space.
inline Region complement(const Region& r) {
  Region c = detail::complement_unchecked(r);
  if (c.empty()) throw EmptyRegionError("complement of the full parameter space is empty");
  return c;
}

/// Closes every endpoint, except those on an open bound of the space.
inline Region closure(const Region& r) {
  std::vector<Box> boxes = r.boxes();
  for (auto& b : boxes) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      const Interval& range = r.space()[k].range;
      const bool lc = !(b[k].lower == range.lower && !range.lower_closed);
      const bool uc = !(b[k].upper == range.upper && !range.upper_closed);
      b[k] = Interval::make(b[k].lower, b[k].upper, lc, uc);
    }
  }
  // Closed boxes may overlap on shared faces; rebuild as a disjoint union.
  Region acc(r.space(), {});
  for (auto& b : boxes) {
    Region piece(r.space(), {b});
    if (!acc.empty()) piece = intersect(piece, detail::complement_unchecked(acc));
    std::vector<Box> merged = acc.boxes();
    merged.insert(merged.end(), piece.boxes().begin(), piece.boxes().end());
    acc = Region(r.space(), std::move(merged));
  }
  return acc;
}

inline bool contains(const Region& r, std::span<const double> p) { return r.contains(p); }

namespace detail {

class PredicateParser {
public:
  PredicateParser(std::string_view text, const ParameterSpace& space)
      : text_(text), space_(space) {}

  Region parse() {
    Region r = parse_conjunction();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return r;
  }

private:
  enum class Op { lt, le, gt, ge, eq };

  Region parse_conjunction() {
    Region r = parse_unary();
    while (accept_keyword("and")) r = intersect(r, parse_unary());
    return r;
  }

  Region parse_unary() {
    skip_ws();
    if (accept_keyword("not")) {
      expect('(');
      Region inner = parse_conjunction();
      expect(')');
      return complement_unchecked(inner);
    }
    if (accept('(')) {
      Region inner = parse_conjunction();
      expect(')');
      return inner;
    }
    return parse_atom();
  }

  Region parse_atom() {
    skip_ws();
    if (accept_keyword("abs")) {
      expect('(');
      const auto [axis, at] = parse_name();
      double centre = 0.0;
      skip_ws();
      if (accept('-')) {
        centre = parse_number();
      } else if (accept('+')) {
        centre = -parse_number();
      }
      expect(')');
      const Op op = parse_op();
      const double radius = parse_number();
      return Region::constrain(space_, space_[axis].name, abs_constraint(centre, op, radius));
    }
    const auto [axis, at] = parse_name();
    const Op op = parse_op();
    const double c = parse_number();
    return Region::constrain(space_, space_[axis].name, compare_constraint(op, c));
  }

  static ScalarRegion compare_constraint(Op op, double c) {
    switch (op) {
      case Op::lt: return ScalarRegion({Interval::make(-inf, c, false, false)});
      case Op::le: return ScalarRegion({Interval::make(-inf, c, false, true)});
      case Op::gt: return ScalarRegion({Interval::make(c, inf, false, false)});
      case Op::ge: return ScalarRegion({Interval::make(c, inf, true, false)});
      case Op::eq: return ScalarRegion({Interval::point(c)});
    }
    return {};
  }

  // |x - c| OP r
  static ScalarRegion abs_constraint(double c, Op op, double r) {
    const ScalarRegion all = ScalarRegion::full();
    switch (op) {
      case Op::lt: return ScalarRegion({Interval::open(c - r, c + r)});
      case Op::le: return ScalarRegion({Interval::closed(c - r, c + r)});
      case Op::gt:
        if (r < 0) return all;
        return ScalarRegion({Interval::make(-inf, c - r, false, false),
                             Interval::make(c + r, inf, false, false)});
      case Op::ge:
        if (r <= 0) return all;
        return ScalarRegion({Interval::make(-inf, c - r, false, true),
                             Interval::make(c + r, inf, true, false)});
      case Op::eq:
        if (r < 0) return {};
        return ScalarRegion({Interval::point(c - r), Interval::point(c + r)});
    }
    return {};
  }

  std::pair<std::size_t, std::size_t> parse_name() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ < text_.size() &&
        (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
    }
    if (pos_ == start) fail("expected parameter name");
    const std::string_view name = text_.substr(start, pos_ - start);
    const auto idx = space_.find(name);
    if (!idx) {
      pos_ = start;
      fail("unknown parameter '" + std::string(name) + "'");
    }
    return {*idx, start};
  }

  Op parse_op() {
    skip_ws();
    auto next_is = [&](std::string_view s) { return text_.substr(pos_, s.size()) == s; };
    if (next_is("<=")) return pos_ += 2, Op::le;
    if (next_is(">=")) return pos_ += 2, Op::ge;
    if (next_is("==")) return pos_ += 2, Op::eq;
    if (next_is("<")) return pos_ += 1, Op::lt;
    if (next_is(">")) return pos_ += 1, Op::gt;
    fail("expected comparison operator");
  }

  double parse_number() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    if (end < text_.size() && (text_[end] == '-' || text_[end] == '+')) ++end;
    bool digits = false;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) {
      ++end;
      digits = true;
    }
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) {
        ++end;
        digits = true;
      }
    }
    if (!digits) fail("expected decimal constant");
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t e = end + 1;
      if (e < text_.size() && (text_[e] == '-' || text_[e] == '+')) ++e;
      if (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) {
        while (e < text_.size() && std::isdigit(static_cast<unsigned char>(text_[e]))) ++e;
        end = e;
      }
    }
    std::string_view lit = text_.substr(start, end - start);
    if (!lit.empty() && lit.front() == '+') lit.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(lit.data(), lit.data() + lit.size(), value);
    if (res.ec != std::errc() || res.ptr != lit.data() + lit.size()) fail("bad decimal constant");
    pos_ = end;
    return value;
  }

  bool accept_keyword(std::string_view kw) {
    skip_ws();
    if (text_.substr(pos_, kw.size()) != kw) return false;
    const std::size_t after = pos_ + kw.size();
    if (after < text_.size() &&
        (std::isalnum(static_cast<unsigned char>(text_[after])) || text_[after] == '_'))
      return false;
    pos_ = after;
    return true;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  std::string_view text_;
  const ParameterSpace& space_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a hypothesis predicate into a Region of `space`. Throws ParseError
/// on bad syntax or unknown names and EmptyRegionError if nothing satisfies it.
inline Region parse_region(std::string_view text, const ParameterSpace& space) {
  Region r = detail::PredicateParser(text, space).parse();
  if (r.empty()) throw EmptyRegionError("hypothesis '" + std::string(text) + "' is empty");
  return r;
}

}  // namespace gll

#endif  // GLL_REGION_HPP
