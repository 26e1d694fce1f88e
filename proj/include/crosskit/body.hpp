#pragma once

// Nonempty compact convex bodies with piecewise boundaries.
//
// A non-degenerate body is a counterclockwise cyclic chain of pieces.  Two
// degenerate forms are first-class: a single point (no pieces, an anchor
// point) and a segment (two opposite Segment pieces).

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "crosskit/geom.hpp"
#include "crosskit/pieces.hpp"

namespace crosskit {

/// Malformed shape description; `field` names the offending field.
class ShapeError : public GeometryError {
 public:
  ShapeError(std::string field, const std::string& what)
      : GeometryError(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class BodyKind { kPoint, kSegment, kRegion };

class ConvexBody {
 public:
  static ConvexBody point(Point2 p) {
    ConvexBody b;
    b.kind_ = BodyKind::kPoint;
    b.anchor_ = p;
    return b;
  }

  static ConvexBody segment(Point2 a, Point2 b) {
    if (distance(a, b) <= kTieTol) return point(a);
    ConvexBody body;
    body.kind_ = BodyKind::kSegment;
    body.anchor_ = a;
    body.set_pieces({Segment{a, b}, Segment{b, a}});
    return body;
  }

  /// Wraps a counterclockwise piece chain without validating it.
  static ConvexBody from_pieces(std::vector<BoundaryPiece> pieces) {
    ConvexBody body;
    body.kind_ = BodyKind::kRegion;
    if (!pieces.empty()) body.anchor_ = start_point(pieces.front());
    body.set_pieces(std::move(pieces));
    return body;
  }

  BodyKind kind() const { return kind_; }
  bool is_point() const { return kind_ == BodyKind::kPoint; }
  bool is_degenerate() const { return kind_ != BodyKind::kRegion; }
  Point2 anchor() const { return anchor_; }

  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  const std::vector<TangentRange>& ranges() const { return ranges_; }
  std::size_t size() const { return pieces_.size(); }
  bool all_segments() const { return all_segments_; }

  /// Boundary point at global parameter tau in [0, size()): piece floor(tau),
  /// local parameter tau - floor(tau).
  Point2 point_at(double tau) const {
    if (pieces_.empty()) return anchor_;
    const double n = static_cast<double>(pieces_.size());
    tau = std::fmod(tau, n);
    if (tau < 0.0) tau += n;
    auto k = static_cast<std::size_t>(tau);
    if (k >= pieces_.size()) k = pieces_.size() - 1;
    return crosskit::point_at(pieces_[k], tau - static_cast<double>(k));
  }

  /// Cyclic parameter period.
  double period() const { return static_cast<double>(pieces_.size()); }

 private:
  void set_pieces(std::vector<BoundaryPiece> pieces) {
    pieces_ = std::move(pieces);
    ranges_.clear();
    all_segments_ = true;
    for (const auto& p : pieces_) {
      ranges_.push_back(tangent_range(p));
      if (!std::holds_alternative<Segment>(p)) all_segments_ = false;
    }
  }

  BodyKind kind_ = BodyKind::kPoint;
  Point2 anchor_{};
  std::vector<BoundaryPiece> pieces_;
  std::vector<TangentRange> ranges_;
  bool all_segments_ = true;
};

// ---- support function --------------------------------------------------------------

/// max over the body of <P, n(alpha)>; the line {<P, n> = value} is the unique
/// supporting line of direction alpha.
inline double support_value(const ConvexBody& body, Direction d) {
  const Vec2 n = d.normal();
  if (body.is_point()) return dot(body.anchor(), n);
  double best = -std::numeric_limits<double>::infinity();
  const auto& pieces = body.pieces();
  const auto& ranges = body.ranges();
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    best = std::max(best, dot(start_point(pieces[k]), n));
    if (ranges[k].turn > 0.0 && ranges[k].contains(d.alpha())) {
      best = std::max(best, dot(contact(pieces[k], d.alpha()).point, n));
    }
  }
  return best;
}

/// Intersection of the body with its supporting line of direction `dir`,
/// as the segment [first, last] ordered along the line.  The *_pos fields are
/// global boundary parameters (0 for a point body).
struct ContactSet {
  Direction dir;
  double offset = 0.0;
  Point2 first;
  Point2 last;
  double first_pos = 0.0;
  double last_pos = 0.0;

  bool is_point(double tol = kTieTol) const { return distance(first, last) <= tol; }
  DirectedLine line() const { return {dir, offset}; }
};

inline ContactSet contact_set(const ConvexBody& body, Direction d, double tol = kTieTol) {
  ContactSet cs;
  cs.dir = d;
  cs.offset = support_value(body, d);
  if (body.is_point()) {
    cs.first = cs.last = body.anchor();
    return cs;
  }
  const Vec2 n = d.normal();
  const Vec2 u = d.unit();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  auto consider = [&](Point2 p, double pos) {
    if (dot(p, n) < cs.offset - tol) return;
    const double s = dot(p, u);
    if (s < lo) {
      lo = s;
      cs.first = p;
      cs.first_pos = pos;
    }
    if (s > hi) {
      hi = s;
      cs.last = p;
      cs.last_pos = pos;
    }
  };
  const auto& pieces = body.pieces();
  const auto& ranges = body.ranges();
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const double base = static_cast<double>(k);
    consider(start_point(pieces[k]), base);
    if (ranges[k].turn > 0.0 && ranges[k].contains(d.alpha())) {
      const PieceContact c = contact(pieces[k], d.alpha());
      consider(c.point, base + c.param);
    }
  }
  return cs;
}

// ---- membership -----------------------------------------------------------------------

/// Signed constraint residual: <= 0 inside, 0 on the boundary, > 0 outside.
/// Inside the body it equals minus the distance to the boundary; outside it is
/// positive and bounded by the distance.
inline double body_residual(const ConvexBody& body, Point2 p) {
  switch (body.kind()) {
    case BodyKind::kPoint:
      return distance(p, body.anchor());
    case BodyKind::kSegment: {
      const auto& s = std::get<Segment>(body.pieces().front());
      return distance(p, point_at(s, nearest_param(s, p)));
    }
    case BodyKind::kRegion:
      break;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& piece : body.pieces()) best = std::max(best, envelope_residual(piece, p));
  return best;
}

enum class Membership { kInterior, kBoundary, kOutside };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::kInterior: return "interior";
    case Membership::kBoundary: return "boundary";
    case Membership::kOutside: return "outside";
  }
  return "?";
}

inline Membership classify_residual(double r, double tol = kTieTol) {
  if (r > tol) return Membership::kOutside;
  if (r >= -tol) return Membership::kBoundary;
  return Membership::kInterior;
}

inline Membership contains(const ConvexBody& body, Point2 p, double tol = kTieTol) {
  return classify_residual(body_residual(body, p), tol);
}

/// Closed-set membership: interior or boundary.
inline bool is_member(const ConvexBody& body, Point2 p, double tol = kTieTol) {
  return body_residual(body, p) <= tol;
}

// ---- validation -------------------------------------------------------------------------

struct Violation {
  std::string what;
  std::size_t piece = 0;
};

inline std::vector<Violation> validate(const ConvexBody& body, double closure_tol = 1e-8,
                                       double angle_tol = 1e-9) {
  std::vector<Violation> out;
  if (body.is_point()) {
    if (!is_finite(body.anchor())) out.push_back({"non-finite coordinates", 0});
    return out;
  }
  const auto& pieces = body.pieces();
  const auto& ranges = body.ranges();
  if (pieces.empty()) {
    out.push_back({"empty piece chain", 0});
    return out;
  }
  double total = 0.0;
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const auto& p = pieces[k];
    const std::size_t next = (k + 1) % pieces.size();
    if (!is_finite(start_point(p)) || !is_finite(end_point(p))) {
      out.push_back({"non-finite coordinates", k});
      continue;
    }
    if (length(p) <= kTieTol) out.push_back({"piece has zero length", k});
    if (const auto* c = std::get_if<CircularArc>(&p)) {
      if (!(c->radius > 0.0)) out.push_back({"radius must be positive", k});
      if (c->end_angle - c->start_angle > kTwoPi + angle_tol) {
        out.push_back({"arc sweep exceeds 2pi", k});
      }
    }
    if (distance(end_point(p), start_point(pieces[next])) > closure_tol) {
      out.push_back({"chain not closed", k});
    }
    if (ranges[k].turn < -angle_tol) out.push_back({"tangent turn negative", k});
    total += ranges[k].turn;
    const double vertex_turn = wrap_pi(ranges[next].begin - ranges[k].end());
    if (vertex_turn < -angle_tol) out.push_back({"tangent turn negative", k});
    total += vertex_turn;
  }
  if (std::abs(total - kTwoPi) > 1e-6) out.push_back({"total tangent turn is not 2pi", 0});
  return out;
}

inline bool is_valid(const ConvexBody& body) { return validate(body).empty(); }

inline void require_valid(const ConvexBody& body) {
  const auto v = validate(body);
  if (!v.empty()) {
    throw GeometryError("invalid body: " + v.front().what + " (piece " +
                        std::to_string(v.front().piece) + ")");
  }
}

// ---- builders ---------------------------------------------------------------------------

inline ConvexBody make_disk(Point2 center, double radius) {
  if (!is_finite(center)) throw ShapeError("center", "must be finite");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ShapeError("radius", "must be positive");
  }
  // Starts at the bottom so the first tangent direction is 0.
  return ConvexBody::from_pieces({CircularArc{center, radius, -0.5 * kPi, 1.5 * kPi}});
}

/// Convex polygon from counterclockwise vertices.
inline ConvexBody make_polygon(const std::vector<Point2>& vertices) {
  if (vertices.size() < 3) throw ShapeError("vertices", "need at least 3 vertices");
  for (const auto& v : vertices) {
    if (!is_finite(v)) throw ShapeError("vertices", "must be finite");
  }
  std::vector<BoundaryPiece> pieces;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    pieces.push_back(Segment{vertices[i], vertices[(i + 1) % vertices.size()]});
  }
  ConvexBody body = ConvexBody::from_pieces(std::move(pieces));
  if (const auto v = validate(body); !v.empty()) {
    throw ShapeError("vertices", "not a counterclockwise convex polygon (" + v.front().what + ")");
  }
  return body;
}

/// Regular n-gon with a horizontal bottom edge, rotated by `rotation` about
/// its center.
inline ConvexBody make_regular_polygon(int n, double circumradius, Point2 center = {},
                                       double rotation = 0.0) {
  if (n < 3) throw ShapeError("n", "need at least 3 vertices");
  if (!(circumradius > 0.0)) throw ShapeError("circumradius", "must be positive");
  std::vector<Point2> v;
  const double start = -0.5 * kPi - kPi / n + rotation;
  for (int k = 0; k < n; ++k) {
    const double a = start + kTwoPi * k / n;
    v.push_back(center + Vec2{std::cos(a), std::sin(a)} * circumradius);
  }
  return make_polygon(v);
}

/// Smooth ellipse with semi-axes a (along `rotation`) and b.
inline ConvexBody make_ellipse(Point2 center, double a, double b, double rotation = 0.0) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ShapeError("a", "must be positive");
  if (!(b > 0.0) || !std::isfinite(b)) throw ShapeError("b", "must be positive");
  if (!is_finite(center)) throw ShapeError("center", "must be finite");
  return ConvexBody::from_pieces(
      {EllipticArc{center, a, b, reduce_angle(rotation), -0.5 * kPi, 1.5 * kPi}});
}

/// Smallest convex body containing the points: a polygon, or a segment or
/// point when the input is degenerate.  Every vertex is an input point.
inline ConvexBody convex_hull(std::vector<Point2> pts, double tol = 1e-12) {
  if (pts.empty()) throw ShapeError("points", "convex hull of an empty set");
  for (const auto& p : pts) {
    if (!is_finite(p)) throw ShapeError("points", "must be finite");
  }
  std::sort(pts.begin(), pts.end(),
            [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return ConvexBody::point(pts.front());
  // Andrew's monotone chain; collinear points are dropped.
  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= tol) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= tol) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return ConvexBody::segment(pts.front(), pts.back());
  return make_polygon(hull);
}

// ---- rigid motions ----------------------------------------------------------------------

inline ConvexBody apply_motion(const RigidMotion& m, const ConvexBody& body) {
  switch (body.kind()) {
    case BodyKind::kPoint:
      return ConvexBody::point(m.apply(body.anchor()));
    case BodyKind::kSegment: {
      const auto& s = std::get<Segment>(body.pieces().front());
      return ConvexBody::segment(m.apply(s.a), m.apply(s.b));
    }
    case BodyKind::kRegion:
      break;
  }
  std::vector<BoundaryPiece> pieces;
  pieces.reserve(body.size());
  for (const auto& p : body.pieces()) pieces.push_back(transformed(p, m));
  if (m.reflect) std::reverse(pieces.begin(), pieces.end());
  return ConvexBody::from_pieces(std::move(pieces));
}

// ---- boundary queries -------------------------------------------------------------------

/// Global boundary parameter of the boundary point nearest to p.
inline double locate(const ConvexBody& body, Point2 p) {
  double best = std::numeric_limits<double>::infinity();
  double pos = 0.0;
  const auto& pieces = body.pieces();
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const double u = nearest_param(pieces[k], p);
    const double d = distance(point_at(pieces[k], u), p);
    if (d < best) {
      best = d;
      pos = static_cast<double>(k) + u;
    }
  }
  return pos;
}

struct Box {
  double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

  bool contains(const Box& o) const {
    return o.xmin >= xmin && o.xmax <= xmax && o.ymin >= ymin && o.ymax <= ymax;
  }
  Box united(const Box& o) const {
    return {std::min(xmin, o.xmin), std::min(ymin, o.ymin), std::max(xmax, o.xmax),
            std::max(ymax, o.ymax)};
  }
};

inline Box bounding_box(const ConvexBody& body) {
  return {-support_value(body, Direction(1.5 * kPi)), -support_value(body, Direction(0.0)),
          support_value(body, Direction(0.5 * kPi)), support_value(body, Direction(kPi))};
}

/// Boundary points in counterclockwise order: segment pieces contribute their
/// start, curved pieces `per_curve` samples.  The polygon they span lies in
/// the body.
inline std::vector<Point2> boundary_polyline(const ConvexBody& body, int per_curve = 64) {
  std::vector<Point2> out;
  if (body.is_point()) return {body.anchor()};
  for (const auto& p : body.pieces()) {
    if (std::holds_alternative<Segment>(p)) {
      out.push_back(start_point(p));
      continue;
    }
    for (int i = 0; i < per_curve; ++i) out.push_back(point_at(p, static_cast<double>(i) / per_curve));
  }
  return out;
}

}  // namespace crosskit
