#pragma once

// Boundary pieces of a convex body.  Every piece is traversed
// counterclockwise (body on the left) and exposes:
//   - a point parametrization on s in [0, 1];
//   - its tangent-direction range [theta_begin, theta_begin + turn];
//   - the contact point for any direction inside that range;
//   - the residual of its tangent-envelope constraint.
// For a piece whose tangent direction at a point is theta, the supporting
// line of direction theta touches the body there, so the contact point of a
// direction is found by inverting the tangent map.

#include <algorithm>
#include <cmath>
#include <string_view>
#include <variant>

#include "crosskit/geom.hpp"
#include "crosskit/numeric.hpp"

namespace crosskit {

struct Segment {
  Point2 a;
  Point2 b;
};

/// Counterclockwise arc of polar angles [start_angle, end_angle].
struct CircularArc {
  Point2 center;
  double radius = 1.0;
  double start_angle = 0.0;
  double end_angle = kTwoPi;
};

/// Arc of the ellipse center + R(rotation) (a cos t, b sin t), t ascending
/// over [t_begin, t_end].
struct EllipticArc {
  Point2 center;
  double a = 1.0;
  double b = 1.0;
  double rotation = 0.0;
  double t_begin = 0.0;
  double t_end = kTwoPi;
};

enum class GraphProfile { kParabolic, kQuartic };

inline std::string_view to_string(GraphProfile p) {
  return p == GraphProfile::kParabolic ? "parabolic" : "quartic";
}

/// Graph of f(x) = (1 - x^2)/2 or g(x) = (1 - x^4)/4 over x in [-1, 1],
/// placed by origin + scale * R(rotation) (x, y) and traversed from x = 1 to
/// x = -1 so the region below the graph stays on the left.
struct GraphArc {
  GraphProfile profile = GraphProfile::kParabolic;
  Point2 origin;
  double scale = 1.0;
  double rotation = 0.0;

  static double height(GraphProfile p, double x) {
    return p == GraphProfile::kParabolic ? 0.5 * (1.0 - x * x)
                                         : 0.25 * (1.0 - x * x * x * x);
  }
  static double slope(GraphProfile p, double x) {
    return p == GraphProfile::kParabolic ? -x : -x * x * x;
  }
  /// Abscissa whose tangent slope is m, m in [-1, 1].
  static double abscissa_for_slope(GraphProfile p, double m) {
    const double x = p == GraphProfile::kParabolic ? -m : -std::cbrt(m);
    return std::clamp(x, -1.0, 1.0);
  }
  Point2 to_world(Vec2 canonical) const {
    return origin + rotated(canonical, rotation) * scale;
  }
  Vec2 to_canonical(Point2 p) const {
    return rotated(p - origin, -rotation) / scale;
  }
};

using BoundaryPiece = std::variant<Segment, CircularArc, EllipticArc, GraphArc>;

inline std::string_view piece_kind(const BoundaryPiece& p) {
  switch (p.index()) {
    case 0: return "segment";
    case 1: return "circular_arc";
    case 2: return "elliptic_arc";
    default: return "graph_arc";
  }
}

namespace detail {

inline Vec2 ellipse_local(const EllipticArc& e, double t) {
  return {e.a * std::cos(t), e.b * std::sin(t)};
}

inline double ellipse_tangent(const EllipticArc& e, double t) {
  return e.rotation + std::atan2(e.b * std::cos(t), -e.a * std::sin(t));
}

/// Ellipse parameter of the contact point for direction theta.
inline double ellipse_param_for(const EllipticArc& e, double theta) {
  const Vec2 n = Direction(theta - e.rotation).normal();
  // Contact in local coordinates is (a^2 nx, b^2 ny) / h.
  return std::atan2(e.b * n.y, e.a * n.x);
}

inline double graph_tangent(const GraphArc& g, double x) {
  return g.rotation + std::atan2(-GraphArc::slope(g.profile, x), -1.0);
}

}  // namespace detail

// ---- point parametrization -------------------------------------------------

inline Point2 point_at(const Segment& s, double u) { return s.a + (s.b - s.a) * u; }
inline Point2 point_at(const CircularArc& c, double u) {
  const double psi = c.start_angle + u * (c.end_angle - c.start_angle);
  return c.center + Vec2{std::cos(psi), std::sin(psi)} * c.radius;
}
inline Point2 point_at(const EllipticArc& e, double u) {
  const double t = e.t_begin + u * (e.t_end - e.t_begin);
  return e.center + rotated(detail::ellipse_local(e, t), e.rotation);
}
inline Point2 point_at(const GraphArc& g, double u) {
  const double x = 1.0 - 2.0 * u;
  return g.to_world({x, GraphArc::height(g.profile, x)});
}
inline Point2 point_at(const BoundaryPiece& p, double u) {
  return std::visit([u](const auto& q) { return point_at(q, u); }, p);
}
inline Point2 start_point(const BoundaryPiece& p) { return point_at(p, 0.0); }
inline Point2 end_point(const BoundaryPiece& p) { return point_at(p, 1.0); }

// ---- tangent range -----------------------------------------------------------

struct TangentRange {
  double begin = 0.0;  // reduced into [0, 2pi)
  double turn = 0.0;   // >= 0 for a well-formed piece

  bool contains(double alpha, double slack = 1e-12) const {
    const double off = reduce_angle(alpha - begin);
    return off <= turn + slack || off >= kTwoPi - slack;
  }
  /// Offset of alpha from the range start, in [0, turn].
  double offset(double alpha) const {
    double off = reduce_angle(alpha - begin);
    if (off > turn) off = (off > 0.5 * (turn + kTwoPi)) ? 0.0 : turn;
    return off;
  }
  double end() const { return begin + turn; }
};

inline TangentRange tangent_range(const Segment& s) {
  const Vec2 d = s.b - s.a;
  return {reduce_angle(std::atan2(d.y, d.x)), 0.0};
}
inline TangentRange tangent_range(const CircularArc& c) {
  return {reduce_angle(c.start_angle + 0.5 * kPi), c.end_angle - c.start_angle};
}
inline TangentRange tangent_range(const EllipticArc& e) {
  const double sweep = e.t_end - e.t_begin;
  const double begin = detail::ellipse_tangent(e, e.t_begin);
  if (sweep >= kTwoPi - 1e-15) return {reduce_angle(begin), kTwoPi};
  const double turn = reduce_angle(detail::ellipse_tangent(e, e.t_end) - begin);
  return {reduce_angle(begin), turn};
}
inline TangentRange tangent_range(const GraphArc& g) {
  return {reduce_angle(detail::graph_tangent(g, 1.0)), 0.5 * kPi};
}
inline TangentRange tangent_range(const BoundaryPiece& p) {
  return std::visit([](const auto& q) { return tangent_range(q); }, p);
}

/// Tangent direction at local parameter u, as an offset into the piece's
/// tangent range (so it is monotone in u).
inline double tangent_offset(const BoundaryPiece& piece, double u) {
  const TangentRange r = tangent_range(piece);
  double theta = r.begin;
  if (const auto* c = std::get_if<CircularArc>(&piece)) {
    return u * (c->end_angle - c->start_angle);
  } else if (const auto* e = std::get_if<EllipticArc>(&piece)) {
    theta = detail::ellipse_tangent(*e, e->t_begin + u * (e->t_end - e->t_begin));
  } else if (const auto* g = std::get_if<GraphArc>(&piece)) {
    theta = detail::graph_tangent(*g, 1.0 - 2.0 * u);
  } else {
    return 0.0;
  }
  double off = reduce_angle(theta - r.begin);
  if (off > r.turn + 1e-9) off = (u < 0.5) ? 0.0 : r.turn;
  if (u >= 1.0) off = r.turn;
  return std::min(off, r.turn);
}

// ---- contact for a direction inside the tangent range ------------------------

struct PieceContact {
  Point2 point;
  double param = 0.0;
};

inline PieceContact contact(const Segment& s, double) { return {s.a, 0.0}; }
inline PieceContact contact(const CircularArc& c, double theta) {
  const TangentRange r = tangent_range(c);
  const double off = r.offset(theta);
  const double sweep = c.end_angle - c.start_angle;
  const double u = sweep > 0.0 ? off / sweep : 0.0;
  return {c.center + Direction(theta).normal() * c.radius, u};
}
inline PieceContact contact(const EllipticArc& e, double theta) {
  const double t = detail::ellipse_param_for(e, theta);
  const double sweep = e.t_end - e.t_begin;
  double off = reduce_angle(t - e.t_begin);
  if (off > sweep) off = (off > 0.5 * (sweep + kTwoPi)) ? 0.0 : sweep;
  const double u = off / sweep;
  return {point_at(e, u), u};
}
inline PieceContact contact(const GraphArc& g, double theta) {
  const double m = std::tan(theta - g.rotation - kPi);
  const double x = GraphArc::abscissa_for_slope(g.profile, std::clamp(m, -1.0, 1.0));
  const double u = 0.5 * (1.0 - x);
  return {point_at(g, u), u};
}
inline PieceContact contact(const BoundaryPiece& p, double theta) {
  return std::visit([theta](const auto& q) { return contact(q, theta); }, p);
}

// ---- length --------------------------------------------------------------------

inline double length(const Segment& s) { return distance(s.a, s.b); }
inline double length(const CircularArc& c) {
  return c.radius * (c.end_angle - c.start_angle);
}
template <class Piece>
double polyline_length(const Piece& p, int n = 256) {
  double len = 0.0;
  Point2 prev = point_at(p, 0.0);
  for (int i = 1; i <= n; ++i) {
    const Point2 q = point_at(p, static_cast<double>(i) / n);
    len += distance(prev, q);
    prev = q;
  }
  return len;
}
inline double length(const EllipticArc& e) { return polyline_length(e, 1024); }
inline double length(const GraphArc& g) { return polyline_length(g, 1024); }
inline double length(const BoundaryPiece& p) {
  return std::visit([](const auto& q) { return length(q); }, p);
}

// ---- tangent-envelope residual ---------------------------------------------------
//
// max over theta in the tangent range of <P - C(theta), n(theta)>: positive
// when P is strictly on the right of some tangent line of the piece.  Inside
// the arc's span this is "below the arc", outside it the extended endpoint
// tangents take over.

inline double envelope_residual(const Segment& s, Point2 p) {
  // Signed distance to the right of the directed segment line.
  const Vec2 d = s.b - s.a;
  return cross(p - s.a, d) / norm(d);
}
inline double envelope_residual(const CircularArc& c, Point2 p) {
  const Vec2 v = p - c.center;
  const double d = norm(v);
  if (d == 0.0) return -c.radius;
  const double phi = std::atan2(v.y, v.x);
  const double sweep = c.end_angle - c.start_angle;
  if (reduce_angle(phi - c.start_angle) <= sweep) return d - c.radius;
  const double e0 = d * std::cos(c.start_angle - phi);
  const double e1 = d * std::cos(c.end_angle - phi);
  return std::max(e0, e1) - c.radius;
}
// In the local frame of an ellipse (a cos t, b sin t) the outward normal at t
// is (b cos t, a sin t) up to length, so the signed distance to the tangent
// line at t is (b cos t x + a sin t y - a b) / |(b cos t, a sin t)|.
inline double envelope_residual(const EllipticArc& e, Point2 p) {
  const Vec2 q = rotated(p - e.center, -e.rotation);
  auto f = [&](double t) {
    const double c = std::cos(t), s = std::sin(t);
    return (e.b * c * q.x + e.a * s * q.y - e.a * e.b) / std::hypot(e.b * c, e.a * s);
  };
  if (e.t_end - e.t_begin < kTwoPi - 1e-15) {
    return numeric::scan_max(f, e.t_begin, e.t_end, 16, 1e-8).second;
  }
  // Closed ellipse: f is periodic, so refine around the best sample without
  // stopping at the parameter seam.
  constexpr int kSamples = 16;
  const double step = kTwoPi / kSamples;
  double best_t = 0.0, best_v = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < kSamples; ++k) {
    const double v = f(step * k);
    if (v > best_v) best_v = v, best_t = step * k;
  }
  return std::max(best_v, numeric::golden_max(f, best_t - step, best_t + step, 1e-8).second);
}
// In canonical coordinates the tangent line at x0 is y = h(x0) + h'(x0)(x - x0)
// with the body below it; the world residual is the canonical one times the
// scale.
inline double envelope_residual(const GraphArc& g, Point2 p) {
  const Vec2 q = g.to_canonical(p);
  auto f = [&](double x0) {
    const double m = GraphArc::slope(g.profile, x0);
    return (q.y - GraphArc::height(g.profile, x0) - m * (q.x - x0)) / std::sqrt(1.0 + m * m);
  };
  return g.scale * numeric::scan_max(f, -1.0, 1.0, 16, 1e-8).second;
}
inline double envelope_residual(const BoundaryPiece& piece, Point2 p) {
  return std::visit([p](const auto& q) { return envelope_residual(q, p); }, piece);
}

// ---- nearest point ------------------------------------------------------------------

inline double nearest_param(const Segment& s, Point2 p) {
  const Vec2 d = s.b - s.a;
  const double len2 = dot(d, d);
  if (len2 == 0.0) return 0.0;
  return std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0);
}
inline double nearest_param(const CircularArc& c, Point2 p) {
  const Vec2 v = p - c.center;
  const double sweep = c.end_angle - c.start_angle;
  const double off = reduce_angle(std::atan2(v.y, v.x) - c.start_angle);
  if (off <= sweep) return off / sweep;
  // Outside the span: the closer endpoint.
  return distance(p, point_at(c, 0.0)) <= distance(p, point_at(c, 1.0)) ? 0.0 : 1.0;
}
template <class Piece>
double numeric_nearest_param(const Piece& piece, Point2 p) {
  auto f = [&](double u) { return -distance(point_at(piece, u), p); };
  return numeric::scan_max(f, 0.0, 1.0, 64, 1e-13).first;
}
inline double nearest_param(const EllipticArc& e, Point2 p) {
  return numeric_nearest_param(e, p);
}
inline double nearest_param(const GraphArc& g, Point2 p) {
  return numeric_nearest_param(g, p);
}
inline double nearest_param(const BoundaryPiece& piece, Point2 p) {
  return std::visit([p](const auto& q) { return nearest_param(q, p); }, piece);
}

// ---- rigid motions ----------------------------------------------------------------
//
// A reflection reverses orientation; the mapped piece is reversed so the body
// stays on the left.

inline Segment transformed(const Segment& s, const RigidMotion& m) {
  if (m.reflect) return {m.apply(s.b), m.apply(s.a)};
  return {m.apply(s.a), m.apply(s.b)};
}
inline CircularArc transformed(const CircularArc& c, const RigidMotion& m) {
  CircularArc out = c;
  out.center = m.apply(c.center);
  if (m.reflect) {
    out.start_angle = m.apply_angle(c.end_angle);
    out.end_angle = m.apply_angle(c.start_angle);
  } else {
    out.start_angle = m.apply_angle(c.start_angle);
    out.end_angle = m.apply_angle(c.end_angle);
  }
  const double sweep = c.end_angle - c.start_angle;
  out.start_angle = reduce_angle(out.start_angle);
  out.end_angle = out.start_angle + sweep;
  return out;
}
inline EllipticArc transformed(const EllipticArc& e, const RigidMotion& m) {
  EllipticArc out = e;
  out.center = m.apply(e.center);
  const double sweep = e.t_end - e.t_begin;
  if (m.reflect) {
    // S R(phi) = R(-phi) S and S(a cos t, b sin t) = (a cos(-t), b sin(-t)).
    out.rotation = reduce_angle(m.angle - e.rotation);
    out.t_begin = reduce_angle(-e.t_end);
  } else {
    out.rotation = reduce_angle(m.angle + e.rotation);
    out.t_begin = e.t_begin;
  }
  out.t_end = out.t_begin + sweep;
  return out;
}
inline GraphArc transformed(const GraphArc& g, const RigidMotion& m) {
  GraphArc out = g;
  out.origin = m.apply(g.origin);
  // With reflection, S R(phi) (x, y) = R(pi - phi) (-x, y); the profile is even,
  // so the image is the canonical arc traversed in reverse, which the
  // reversal of the chain undoes.
  out.rotation = reduce_angle(m.reflect ? m.angle + kPi - g.rotation : m.angle + g.rotation);
  return out;
}
inline BoundaryPiece transformed(const BoundaryPiece& p, const RigidMotion& m) {
  return std::visit([&m](const auto& q) -> BoundaryPiece { return transformed(q, m); }, p);
}

}  // namespace crosskit
