#pragma once

// Common supporting lines of two bodies and the slide-turning trace.
//
// A directed line of direction alpha supports both D and L exactly when the
// support gap h_D(alpha) - h_L(alpha) vanishes, so common supporting lines are
// the zeros of a continuous, piecewise-smooth periodic function.  The zeros
// are isolated on a uniform grid, refined by bisection (sign changes) or by
// golden-section minimization of |gap| (grazing zeros), and stretches where
// the gap vanishes identically are reported as intervals.

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "crosskit/body.hpp"
#include "crosskit/numeric.hpp"

namespace crosskit {

struct TangencyConfig {
  int grid_n = 4096;
  double zero_tol = 1e-9;
  double dedup_angle = 1e-6;
  /// Along-line gaps at or below this are ties.
  double tie_tol = kTieTol;
  /// Along-line gaps in (tie_tol, ambiguity_tol] are not decided.
  double ambiguity_tol = 1e-6;
  /// Roots this close to the direction of a straight edge snap onto it when
  /// the gap vanishes there.
  double snap_angle = 1e-4;
};

enum class Owner { kDOnly, kLOnly, kBoth, kAmbiguous };

inline const char* to_string(Owner o) {
  switch (o) {
    case Owner::kDOnly: return "D only";
    case Owner::kLOnly: return "L only";
    case Owner::kBoth: return "both";
    case Owner::kAmbiguous: return "ambiguous";
  }
  return "?";
}

struct ClassifiedPoint {
  Point2 point;
  Owner owner = Owner::kAmbiguous;
};

struct CommonSupportingLine {
  DirectedLine line;
  ContactSet contact_d;
  ContactSet contact_l;
  ClassifiedPoint first;
  ClassifiedPoint last;
  /// Picked from a zero interval rather than an isolated zero.
  bool from_interval = false;

  double alpha() const { return line.dir.alpha(); }
  bool ambiguous() const {
    return first.owner == Owner::kAmbiguous || last.owner == Owner::kAmbiguous;
  }
};

inline double support_gap(const ConvexBody& d, const ConvexBody& l, Direction dir) {
  return support_value(d, dir) - support_value(l, dir);
}

/// Extremes of contact_D u contact_L along the line, with the set they belong
/// to.  On a common supporting line t, a point of t lies in a body exactly
/// when it lies in that body's contact segment, so membership reduces to an
/// along-line comparison.
inline std::pair<ClassifiedPoint, ClassifiedPoint> classify_extremes(
    const ContactSet& cd, const ContactSet& cl, const TangencyConfig& cfg = {}) {
  const Vec2 u = cd.dir.unit();
  const double d0 = dot(cd.first, u), d1 = dot(cd.last, u);
  const double l0 = dot(cl.first, u), l1 = dot(cl.last, u);

  auto decide = [&](double gap, Owner solo) {
    if (gap <= cfg.tie_tol) return Owner::kBoth;
    if (gap <= cfg.ambiguity_tol) return Owner::kAmbiguous;
    return solo;
  };

  ClassifiedPoint first, last;
  if (d0 <= l0) {
    first = {cd.first, decide(l0 - d0, Owner::kDOnly)};
  } else {
    first = {cl.first, decide(d0 - l0, Owner::kLOnly)};
  }
  if (d1 >= l1) {
    last = {cd.last, decide(d1 - l1, Owner::kDOnly)};
  } else {
    last = {cl.last, decide(l1 - d1, Owner::kLOnly)};
  }
  return {first, last};
}

inline CommonSupportingLine make_common_line(const ConvexBody& d, const ConvexBody& l,
                                             Direction dir, const TangencyConfig& cfg = {}) {
  CommonSupportingLine t;
  t.contact_d = contact_set(d, dir, cfg.tie_tol);
  t.contact_l = contact_set(l, dir, cfg.tie_tol);
  t.line = {dir, 0.5 * (t.contact_d.offset + t.contact_l.offset)};
  std::tie(t.first, t.last) = classify_extremes(t.contact_d, t.contact_l, cfg);
  return t;
}

/// Directions [begin, end] (end > begin, end - begin <= 2pi) on which the gap
/// vanishes identically.
struct ZeroInterval {
  double begin = 0.0;
  double end = 0.0;

  bool full() const { return end - begin >= kTwoPi - 1e-12; }
  bool contains(double alpha, double slack) const {
    if (full()) return true;
    return reduce_angle(alpha - begin + slack) <= (end - begin) + 2.0 * slack;
  }
};

struct CommonLines {
  std::vector<CommonSupportingLine> lines;  // sorted by direction
  std::vector<ZeroInterval> intervals;
};

inline CommonLines common_supporting_lines(const ConvexBody& d, const ConvexBody& l,
                                           const TangencyConfig& cfg = {}) {
  const int n = std::max(cfg.grid_n, 8);
  const double step = kTwoPi / n;
  auto gap = [&](double a) { return support_gap(d, l, Direction(a)); };

  std::vector<double> g(n);
  std::vector<char> z(n);
  for (int k = 0; k < n; ++k) {
    g[k] = gap(k * step);
    z[k] = std::abs(g[k]) <= cfg.zero_tol;
  }
  auto at = [n](int k) { return ((k % n) + n) % n; };

  CommonLines out;
  if (std::all_of(z.begin(), z.end(), [](char c) { return c != 0; })) {
    out.intervals.push_back({0.0, kTwoPi});
    return out;
  }

  std::vector<double> roots;
  const auto is_zero = [&](double a) { return std::abs(gap(a)) <= cfg.zero_tol; };

  // Runs of grid zeros, starting after a non-zero sample so runs do not wrap.
  int first_nonzero = 0;
  while (z[first_nonzero]) ++first_nonzero;
  for (int i = 1; i <= n; ++i) {
    const int k = first_nonzero + i;
    if (!z[at(k)] || z[at(k - 1)]) continue;
    int len = 0;
    while (z[at(k + len)]) ++len;
    const double a0 = k * step;
    const double a1 = (k + len - 1) * step;
    if (len == 1) {
      const double lo = a0 - step, hi = a0 + step;
      const double glo = g[at(k - 1)], ghi = g[at(k + 1)];
      if ((glo < 0.0) != (ghi < 0.0)) {
        roots.push_back(numeric::bisect(gap, lo, hi));
      } else {
        roots.push_back(numeric::golden_min([&](double a) { return std::abs(gap(a)); }, lo, hi).first);
      }
    } else {
      const double b = numeric::bisect_predicate(is_zero, a0, a0 - step);
      const double e = numeric::bisect_predicate(is_zero, a1, a1 + step);
      out.intervals.push_back({reduce_angle(b), reduce_angle(b) + (e - b)});
    }
  }

  for (int k = 0; k < n; ++k) {
    const int k1 = at(k + 1);
    if (z[k] || z[k1]) continue;
    const double a = k * step;
    if ((g[k] < 0.0) != (g[k1] < 0.0)) {
      roots.push_back(numeric::bisect(gap, a, a + step));
      continue;
    }
    // Grazing zero: a local minimum of |gap| between same-sign samples.
    const int km = at(k - 1);
    if (!z[km] && (g[km] < 0.0) == (g[k] < 0.0) && std::abs(g[k]) < std::abs(g[km]) &&
        std::abs(g[k]) <= std::abs(g[k1])) {
      const auto [am, vm] =
          numeric::golden_min([&](double x) { return std::abs(gap(x)); }, a - step, a + step);
      if (vm <= cfg.zero_tol) roots.push_back(am);
    }
  }

  // Next to a shared edge whose neighbours meet it tangentially the gap is
  // flat to high order, so refinement alone cannot locate the zero.  Lines
  // through straight edges are taken at the exact edge direction.
  std::vector<double> edge_dirs;
  for (const ConvexBody* b : {&d, &l}) {
    for (std::size_t k = 0; k < b->size(); ++k) {
      if (std::holds_alternative<Segment>(b->pieces()[k])) edge_dirs.push_back(b->ranges()[k].begin);
    }
  }
  for (double& r : roots) {
    r = reduce_angle(r);
    double best = cfg.snap_angle;
    for (double e : edge_dirs) {
      const double off = std::abs(wrap_pi(r - e));
      if (off <= best && is_zero(e)) {
        best = off;
        r = e;
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  std::vector<double> unique;
  for (double r : roots) {
    if (!unique.empty() && r - unique.back() <= cfg.dedup_angle) continue;
    unique.push_back(r);
  }
  if (unique.size() > 1 && unique.front() + kTwoPi - unique.back() <= cfg.dedup_angle) {
    unique.pop_back();
  }
  for (double r : unique) {
    const bool inside = std::any_of(out.intervals.begin(), out.intervals.end(),
                                    [&](const ZeroInterval& iv) { return iv.contains(r, cfg.dedup_angle); });
    if (inside) continue;
    out.lines.push_back(make_common_line(d, l, Direction(r), cfg));
  }
  return out;
}

// ---- slide-turning ----------------------------------------------------------------------

struct SlideTurnSample {
  Point2 point;
  Direction dir;
  /// Direction accumulated since the first sample.
  double unwrapped = 0.0;
  /// Global boundary parameter of the point.
  double position = 0.0;
};

/// Samples of the closed curve of pointed supporting lines (P, dir) in the
/// cylinder R^2 x S^1, traversed counterclockwise from the first contact point
/// of direction 0.  `closing` is the sample one full turn later.
struct SlideTurnTrace {
  std::vector<SlideTurnSample> samples;
  SlideTurnSample closing;
  bool closed = true;

  /// Polygonal length in the cylinder metric sqrt(|dP|^2 + dtheta^2).
  double length() const {
    double len = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& a = samples[i];
      const auto& b = (i + 1 < samples.size()) ? samples[i + 1] : closing;
      len += std::hypot(distance(a.point, b.point), b.unwrapped - a.unwrapped);
    }
    return len;
  }
};

namespace detail {

// One step of slide-turning: a boundary piece (position and direction move
// together) or a corner (the direction turns about a fixed point).
struct TraceElement {
  bool corner = false;
  std::size_t piece = 0;
  double dir_begin = 0.0;  // unwrapped
  double turn = 0.0;
  double weight = 0.0;
  double offset = 0.0;  // cumulative weight before this element
};

}  // namespace detail

inline SlideTurnTrace slide_turn_trace(const ConvexBody& body, int n) {
  if (body.is_point()) throw GeometryError("trace undefined for singleton");
  if (n < 8) throw GeometryError("slide-turn trace needs at least 8 samples");

  const auto& pieces = body.pieces();
  const auto& ranges = body.ranges();
  std::vector<detail::TraceElement> elems;
  double dir = ranges.front().begin;
  double total = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    detail::TraceElement e;
    e.piece = k;
    e.dir_begin = dir;
    e.turn = ranges[k].turn;
    e.weight = length(pieces[k]) + e.turn;
    e.offset = total;
    total += e.weight;
    dir += e.turn;
    elems.push_back(e);
    const std::size_t next = (k + 1) % pieces.size();
    const double vt = wrap_pi(ranges[next].begin - ranges[k].end());
    if (vt > 0.0) {
      detail::TraceElement c;
      c.corner = true;
      c.piece = k;
      c.dir_begin = dir;
      c.turn = vt;
      c.weight = vt;
      c.offset = total;
      total += c.weight;
      dir += vt;
      elems.push_back(c);
    }
  }

  // Locates cylinder parameter T (in [0, total]).
  auto eval = [&](double t) {
    auto it = std::upper_bound(elems.begin(), elems.end(), t,
                               [](double v, const detail::TraceElement& e) { return v < e.offset; });
    const auto& e = *(it == elems.begin() ? it : std::prev(it));
    const double f = e.weight > 0.0 ? std::clamp((t - e.offset) / e.weight, 0.0, 1.0) : 0.0;
    SlideTurnSample s;
    if (e.corner) {
      s.point = end_point(pieces[e.piece]);
      s.unwrapped = e.dir_begin + f * e.turn;
      s.position = static_cast<double>((e.piece + 1) % pieces.size());
    } else {
      s.point = point_at(pieces[e.piece], f);
      s.unwrapped = e.dir_begin + tangent_offset(pieces[e.piece], f);
      s.position = static_cast<double>(e.piece) + f;
    }
    return s;
  };

  // Start where the direction first reaches 0 (mod 2pi).
  double t0 = 0.0;
  for (const auto& e : elems) {
    const double off = reduce_angle(-e.dir_begin);
    if (e.turn == 0.0) {
      if (off < 1e-12 || off > kTwoPi - 1e-12) {
        t0 = e.offset;
        break;
      }
      continue;
    }
    if (off < e.turn || off > kTwoPi - 1e-12) {
      const double o = off > kTwoPi - 1e-12 ? 0.0 : off;
      if (e.corner) {
        t0 = e.offset + e.weight * (o / e.turn);
      } else {
        t0 = e.offset + e.weight * contact(pieces[e.piece], e.dir_begin + o).param;
      }
      break;
    }
  }

  const SlideTurnSample origin = eval(t0);
  // Direction gained over one full traversal of the element chain.
  const double full_turn = eval(total).unwrapped - eval(0.0).unwrapped;
  auto sample = [&](double t) {
    double wraps = 0.0;
    while (t > total) {
      t -= total;
      wraps += full_turn;
    }
    SlideTurnSample s = eval(t);
    s.unwrapped = s.unwrapped - origin.unwrapped + wraps;
    s.dir = Direction(s.unwrapped);
    return s;
  };

  SlideTurnTrace trace;
  trace.samples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) trace.samples.push_back(sample(t0 + total * i / n));
  trace.closing = t0 > 0.0 ? sample(t0 + total) : sample(total);
  if (t0 == 0.0) {
    trace.closing.unwrapped = eval(total).unwrapped - origin.unwrapped;
    trace.closing.dir = Direction(trace.closing.unwrapped);
  }
  return trace;
}

}  // namespace crosskit
