#pragma once

// Planar primitives: points, directions, directed lines and rigid motions.
//
// Sign convention: a direction alpha has unit vector u = (cos a, sin a) and
// right normal n = (sin a, -cos a).  A directed line is {P : <P, n> = offset};
// its left closed half-plane is {P : <P, n> <= offset}.  With this choice the
// support value of a body is the maximum of a linear functional.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace crosskit {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Global tie tolerance in shape units.  Catalog shapes have diameter O(1).
inline constexpr double kTieTol = 1e-9;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr bool operator==(const Vec2&) const = default;
};

using Point2 = Vec2;

constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Rotates v counterclockwise by angle.
inline Vec2 rotated(Vec2 v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Reduces an angle into [0, 2pi).
inline double reduce_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Reduces an angle difference into (-pi, pi].
inline double wrap_pi(double a) {
  double r = reduce_angle(a);
  if (r > kPi) r -= kTwoPi;
  return r;
}

namespace detail {

// Kept out of line so every call site sees the same rounding of cos and sin
// (an inlined pair may be fused into sincos, which can differ by an ulp).
[[gnu::noinline]] inline Vec2 unit_vector(double alpha) {
  return {std::cos(alpha), std::sin(alpha)};
}

}  // namespace detail

/// A direction on the unit circle, stored as its angle in [0, 2pi).
class Direction {
 public:
  Direction() = default;
  explicit Direction(double alpha)
      : alpha_(reduce_angle(alpha)), unit_(detail::unit_vector(alpha_)) {}

  double alpha() const { return alpha_; }
  Vec2 unit() const { return unit_; }
  Vec2 normal() const { return {unit_.y, -unit_.x}; }
  Direction reversed() const { return Direction(alpha_ + kPi); }

  bool operator==(const Direction& o) const { return alpha_ == o.alpha_; }

 private:
  double alpha_ = 0.0;
  Vec2 unit_{1.0, 0.0};
};

/// Right normal n(alpha) = (sin alpha, -cos alpha).
inline Vec2 direction_normal(Direction d) { return d.normal(); }

enum class AlongOrder { kBefore, kEqual, kAfter };

inline const char* to_string(AlongOrder o) {
  switch (o) {
    case AlongOrder::kBefore: return "before";
    case AlongOrder::kEqual: return "equal";
    case AlongOrder::kAfter: return "after";
  }
  return "?";
}

struct DirectedLine {
  Direction dir;
  double offset = 0.0;

  /// Positive on the right of the line, negative on the left.
  double residual(Point2 p) const { return dot(p, dir.normal()) - offset; }
  bool contains(Point2 p, double tol = kTieTol) const {
    return std::abs(residual(p)) <= tol;
  }
  bool in_left_halfplane(Point2 p, double tol = kTieTol) const {
    return residual(p) <= tol;
  }
  DirectedLine reversed() const { return {dir.reversed(), -offset}; }
  /// Foot of the perpendicular from the origin.
  Point2 anchor() const { return dir.normal() * offset; }
};

/// Order of P and Q along t: kBefore means P <_t Q.
inline AlongOrder along_order(const DirectedLine& t, Point2 p, Point2 q,
                              double tie_tol = kTieTol,
                              double line_tol = 1e-7) {
  if (!t.contains(p, line_tol) || !t.contains(q, line_tol)) {
    throw GeometryError("point not on line");
  }
  const double s = dot(q - p, t.dir.unit());
  if (s > tie_tol) return AlongOrder::kBefore;
  if (s < -tie_tol) return AlongOrder::kAfter;
  return AlongOrder::kEqual;
}

/// p -> R(angle) * S(p) + translation, where S mirrors in the x-axis when
/// reflect is set.
struct RigidMotion {
  double angle = 0.0;
  Vec2 translation{};
  bool reflect = false;

  static RigidMotion identity() { return {}; }
  static RigidMotion translate(Vec2 v) { return {0.0, v, false}; }
  static RigidMotion rotate_about(Point2 center, double angle) {
    return {angle, center - rotated(center, angle), false};
  }
  /// Mirror in the line through `on_axis` with direction angle `axis_angle`.
  static RigidMotion reflect_across(Point2 on_axis, double axis_angle) {
    // R(2a) S maps the axis direction onto itself.
    RigidMotion m{2.0 * axis_angle, {}, true};
    m.translation = on_axis - m.linear(on_axis);
    return m;
  }

  Vec2 linear(Vec2 v) const {
    if (reflect) v.y = -v.y;
    return rotated(v, angle);
  }
  Point2 apply(Point2 p) const { return linear(p) + translation; }
  /// Image of a direction angle under the linear part.
  double apply_angle(double a) const { return reflect ? angle - a : angle + a; }

  /// (*this) after `first`.
  RigidMotion after(const RigidMotion& first) const {
    RigidMotion m;
    m.reflect = reflect != first.reflect;
    m.angle = reflect ? angle - first.angle : angle + first.angle;
    m.translation = linear(first.translation) + translation;
    return m;
  }

  RigidMotion inverse() const {
    RigidMotion m;
    m.reflect = reflect;
    m.angle = reflect ? angle : -angle;
    m.translation = -m.linear(translation);
    return m;
  }

  /// Displacement of a reference point, used to measure how far a motion is
  /// from the identity on a body.
  double displacement(Point2 p) const { return distance(apply(p), p); }
};

inline Point2 apply_motion(const RigidMotion& m, Point2 p) { return m.apply(p); }

}  // namespace crosskit
