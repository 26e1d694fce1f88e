#pragma once

// Named body pairs: the octagon pair with parabolic and quartic arcs, the
// hexagon pair with circular arcs, the ellipse pair, disk pairs, and a seeded
// generator of random convex-polygon pairs.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "crosskit/body.hpp"
#include "crosskit/geom.hpp"
#include "crosskit/pieces.hpp"

namespace crosskit {

/// The five crossing truth values in the order beta, lambda, rho, epsilon, tau.
struct CrossingTruth {
  bool beta = false;
  bool lambda = false;
  bool rho = false;
  bool epsilon = false;
  bool tau = false;

  bool operator==(const CrossingTruth&) const = default;
};

struct NamedPair {
  std::string name;
  ConvexBody d;
  ConvexBody l;
  CrossingTruth expected;
  /// Rigid motion taking D onto L.
  RigidMotion motion;
  std::string provenance;
};

namespace detail {

/// Vertex k of the regular n-gon of circumradius 1 at the origin whose edge
/// k runs in direction 2 pi k / n (edge 0 is the horizontal bottom edge).
inline Point2 flat_polygon_vertex(int n, int k) {
  const double a = -0.5 * kPi - kPi / n + kTwoPi * k / n;
  return {std::cos(a), std::sin(a)};
}

}  // namespace detail

/// Regular octagon (circumradius 1, centered at the origin, bottom edge
/// horizontal) with edges 0, 2, 4, 6 kept straight, edges 1 and 5 replaced by
/// the parabolic arc (1 - x^2)/2 and edges 3 and 7 by the quartic arc
/// (1 - x^4)/4, each scaled by half the edge length.  The arcs meet their
/// neighbours with matching tangents.
inline ConvexBody make_octagon_body() {
  std::vector<BoundaryPiece> pieces;
  for (int k = 0; k < 8; ++k) {
    const Point2 a = detail::flat_polygon_vertex(8, k);
    const Point2 b = detail::flat_polygon_vertex(8, k + 1);
    if (k % 2 == 0) {
      pieces.push_back(Segment{a, b});
      continue;
    }
    const double theta = kTwoPi * k / 8;
    const GraphProfile profile = (k == 1 || k == 5) ? GraphProfile::kParabolic : GraphProfile::kQuartic;
    pieces.push_back(GraphArc{profile, 0.5 * (a + b), 0.5 * distance(a, b), theta - kPi});
  }
  return ConvexBody::from_pieces(std::move(pieces));
}

/// X is the arc octagon and Y is X turned by 90 degrees counterclockwise about
/// its center.  They cross in the Fejes-Toth sense without either sliding
/// across the other.
inline NamedPair make_octagon_pair() {
  NamedPair p;
  p.name = "octagon_pair";
  p.d = make_octagon_body();
  p.motion = RigidMotion::rotate_about({0, 0}, 0.5 * kPi);
  p.l = apply_motion(p.motion, p.d);
  p.expected = {false, false, false, false, true};
  p.provenance = "arc octagon and its quarter turn";
  return p;
}

/// Regular hexagon (circumradius and edge 1, centered at the origin, bottom
/// edge horizontal) whose edges in directions 60 and 240 degrees are replaced
/// by circular arcs tangent to the lines of the neighbouring edges.  Each arc
/// turns by 120 degrees over a unit chord, so its radius is 1 / sqrt(3).
inline ConvexBody make_hexagon_body() {
  const double radius = 1.0 / std::sqrt(3.0);
  std::vector<BoundaryPiece> pieces;
  for (int k = 0; k < 6; ++k) {
    const Point2 a = detail::flat_polygon_vertex(6, k);
    const Point2 b = detail::flat_polygon_vertex(6, k + 1);
    if (k != 1 && k != 4) {
      pieces.push_back(Segment{a, b});
      continue;
    }
    const double theta = kTwoPi * k / 6;
    const Direction chord(theta);
    // Center lies left of the chord midpoint at distance R cos 60.
    const Point2 center = 0.5 * (a + b) - chord.normal() * (0.5 * radius);
    const double start = theta - kPi / 3 - 0.5 * kPi;
    pieces.push_back(CircularArc{center, radius, start, start + 2.0 * kPi / 3});
  }
  return ConvexBody::from_pieces(std::move(pieces));
}

/// D is the arc hexagon and L is D turned by 60 degrees counterclockwise about
/// its center.  D slides across L but L does not slide across D.
inline NamedPair make_hexagon_pair() {
  NamedPair p;
  p.name = "hexagon_pair";
  p.d = make_hexagon_body();
  p.motion = RigidMotion::rotate_about({0, 0}, kPi / 3);
  p.l = apply_motion(p.motion, p.d);
  p.expected = {false, true, false, true, true};
  p.provenance = "arc hexagon and its sixth turn";
  return p;
}

/// Ellipse with semi-axes a > b at the origin and its quarter turn.
inline NamedPair make_ellipse_pair(double a, double b) {
  if (!(a > b) || !(b > 0.0)) throw ShapeError("a", "not an eccentric ellipse");
  NamedPair p;
  p.name = "ellipse_pair";
  p.d = make_ellipse({0, 0}, a, b);
  p.motion = RigidMotion::rotate_about({0, 0}, 0.5 * kPi);
  p.l = apply_motion(p.motion, p.d);
  p.expected = {true, true, true, true, true};
  p.provenance = "ellipse and its quarter turn";
  return p;
}

/// Unit disk at the origin and its image under `motion`.
inline NamedPair make_disk_pair(const RigidMotion& motion) {
  NamedPair p;
  p.name = "disk_pair";
  p.d = make_disk({0, 0}, 1.0);
  p.motion = motion;
  p.l = apply_motion(motion, p.d);
  p.expected = {};
  p.provenance = "unit disk and a congruent copy";
  return p;
}

inline std::vector<std::string> named_pair_names() {
  return {"octagon_pair", "hexagon_pair", "ellipse_pair", "disk_pair"};
}

/// Catalog lookup by name; throws ShapeError("name") for unknown names.
inline NamedPair make_named_pair(const std::string& name) {
  if (name == "octagon_pair") return make_octagon_pair();
  if (name == "hexagon_pair") return make_hexagon_pair();
  if (name == "ellipse_pair") return make_ellipse_pair(2.0, 1.0);
  if (name == "disk_pair") return make_disk_pair(RigidMotion::translate({1.0, 0.0}));
  throw ShapeError("name", "unknown named construction '" + name + "'");
}

// ---- random pairs -----------------------------------------------------------------------

/// Uniform random rigid motion: angle in [0, 2pi), translation of magnitude
/// in [0, max_shift] in a uniform direction, reflection with probability
/// `reflect_p`.
inline RigidMotion random_motion(std::mt19937_64& rng, double max_shift = 2.0,
                                 double reflect_p = 0.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double angle = kTwoPi * unit(rng);
  const double shift = max_shift * unit(rng);
  const double heading = kTwoPi * unit(rng);
  const bool reflect = unit(rng) < reflect_p;
  return {angle, {shift * std::cos(heading), shift * std::sin(heading)}, reflect};
}

/// Convex hull of k uniform points in the unit disk, k uniform in [3, 12].
inline ConvexBody random_polygon(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(3, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int k = count(rng);
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const double r = std::sqrt(unit(rng));
    const double a = kTwoPi * unit(rng);
    pts.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return convex_hull(pts);
}

/// Random polygon pair for seed `seed`: D is a random polygon; L is either an
/// independent random polygon or a congruent copy of D (each half the time),
/// placed by a random rigid motion with translation magnitude in [0, 2].
inline NamedPair random_polygon_pair(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  NamedPair p;
  p.name = "random_" + std::to_string(seed);
  p.d = random_polygon(rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool congruent = unit(rng) < 0.5;
  const ConvexBody base = congruent ? p.d : random_polygon(rng);
  p.motion = random_motion(rng);
  p.l = apply_motion(p.motion, base);
  p.provenance = congruent ? "random polygon and a congruent copy" : "two random polygons";
  return p;
}

}  // namespace crosskit
