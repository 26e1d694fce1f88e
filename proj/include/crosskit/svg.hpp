#pragma once

// SVG pictures of a pair: both boundaries piece by piece, the components of
// D \ L (dark) and L \ D (light), and every common supporting line drawn as a
// directed line with a half-arrowhead at its midpoint and an arrowhead at
// its end.  Output is deterministic: fixed element order and six decimals.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "crosskit/body.hpp"
#include "crosskit/crossing.hpp"

namespace crosskit {

struct SvgOptions {
  int width_px = 800;
  /// Polyline samples per curved piece.
  int per_curve = 96;
  /// Margin around the union of both bodies, relative to its larger side.
  double margin = 0.15;
  std::string dark = "#4a4a8c";
  std::string light = "#b9b9e6";
};

namespace detail {

inline std::string fmt(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;  // no "-0.000000"
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// SVG user coordinates flip y so that the picture has y pointing up.
inline std::string svg_xy(Point2 p) { return fmt(p.x) + "," + fmt(-p.y); }

/// Boundary points from global parameter begin to end (end > begin, may
/// exceed the period).  Straight pieces contribute their ends only.
inline std::vector<Point2> trace(const ConvexBody& body, double begin, double end, int per_curve) {
  std::vector<Point2> out{body.point_at(begin)};
  const double n = body.period();
  double pos = begin;
  while (pos < end) {
    const double next_break = std::min(std::floor(pos) + 1.0, end);
    auto k = static_cast<std::size_t>(std::fmod(std::floor(pos), n));
    if (k >= body.size()) k = body.size() - 1;
    if (!std::holds_alternative<Segment>(body.pieces()[k])) {
      const int steps = std::max(1, static_cast<int>(std::ceil((next_break - pos) * per_curve)));
      for (int i = 1; i < steps; ++i) out.push_back(body.point_at(pos + (next_break - pos) * i / steps));
    }
    out.push_back(body.point_at(next_break));
    pos = next_break;
  }
  return out;
}

inline std::string path_data(const std::vector<Point2>& pts, bool close) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i == 0 ? "M" : " L") + svg_xy(pts[i]);
  if (close) s += " Z";
  return s;
}

inline std::string closed_boundary(const ConvexBody& body, int per_curve) {
  auto pts = trace(body, 0.0, body.period(), per_curve);
  pts.pop_back();
  return path_data(pts, true);
}

/// Outlines of the components of d \ l, one path each.
inline std::vector<std::string> difference_paths(const ConvexBody& d, const ConvexBody& l,
                                                 int per_curve) {
  if (d.is_degenerate()) return {};
  const BoundaryAnalysis ba = classify_boundary(d, l);
  if (ba.arcs.size() == 1) {
    if (!ba.arcs.front().outside) return {};
    // No crossings: l is disjoint from d or sits inside it.
    std::string s = closed_boundary(d, per_curve);
    if (!l.is_degenerate() && is_member(d, l.point_at(0.0))) s += " " + closed_boundary(l, per_curve);
    return {s};
  }
  std::vector<std::string> out;
  for (const auto& arc : ba.arcs) {
    if (!arc.outside) continue;
    auto pts = trace(d, arc.begin, arc.end, per_curve);
    if (!l.is_degenerate()) {
      const BoundaryRange back = ccw_range(l, arc.start, arc.finish);
      auto rim = trace(l, back.begin, back.end, per_curve);
      pts.insert(pts.end(), rim.rbegin() + 1, rim.rend());
    }
    out.push_back(path_data(pts, true));
  }
  return out;
}

inline std::string body_elements(const ConvexBody& body, const char* name, int per_curve,
                                 const std::string& stroke) {
  std::string s;
  const std::string common = std::string("data-body=\"") + name + "\" fill=\"none\" stroke=\"" +
                             stroke + "\" stroke-width=\"var\"";
  if (body.is_point()) {
    return "  <circle class=\"body\" data-body=\"" + std::string(name) + "\" cx=\"" +
           fmt(body.anchor().x) + "\" cy=\"" + fmt(-body.anchor().y) + "\" r=\"sw\" fill=\"" + stroke +
           "\"/>\n";
  }
  if (body.size() == 1) {
    if (const auto* c = std::get_if<CircularArc>(&body.pieces()[0]);
        c && c->end_angle - c->start_angle >= kTwoPi - 1e-12) {
      return "  <circle class=\"body\" " + common + " cx=\"" + fmt(c->center.x) + "\" cy=\"" +
             fmt(-c->center.y) + "\" r=\"" + fmt(c->radius) + "\"/>\n";
    }
  }
  for (std::size_t k = 0; k < body.size(); ++k) {
    const auto& piece = body.pieces()[k];
    s += "  <path class=\"piece\" " + common + " data-piece=\"" + std::to_string(k) +
         "\" data-kind=\"" + std::string(piece_kind(piece)) + "\"";
    if (const auto* g = std::get_if<GraphArc>(&piece)) {
      s += " data-profile=\"" + std::string(to_string(g->profile)) + "\"";
    }
    const double kd = static_cast<double>(k);
    s += " d=\"" + path_data(trace(body, kd, kd + 1.0, per_curve), false) + "\"/>\n";
  }
  return s;
}

inline void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t at = s.find(from); at != std::string::npos; at = s.find(from, at + to.size())) {
    s.replace(at, from.size(), to);
  }
}

}  // namespace detail

inline std::string render_svg(const ConvexBody& d, const ConvexBody& l, const CrossingReport& report,
                              const SvgOptions& opt = {}) {
  using namespace detail;
  const Box box = bounding_box(d).united(bounding_box(l));
  const double side = std::max({box.xmax - box.xmin, box.ymax - box.ymin, 1e-6});
  const double pad = opt.margin * side;
  const double vx = box.xmin - pad, vy = -box.ymax - pad;
  const double vw = box.xmax - box.xmin + 2 * pad, vh = box.ymax - box.ymin + 2 * pad;
  const double sw = 0.004 * side;
  const int height_px = std::max(1, static_cast<int>(std::lround(opt.width_px * vh / vw)));

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width_px) +
       "\" height=\"" + std::to_string(height_px) + "\" viewBox=\"" + fmt(vx) + " " + fmt(vy) + " " +
       fmt(vw) + " " + fmt(vh) + "\">\n";
  s += "  <defs>\n";
  s += "    <marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" "
       "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 Z\" fill=\"#c03030\"/></marker>\n";
  // Only the barb on the left of the line, the side the bodies lie on.
  s += "    <marker id=\"half-arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"6\" "
       "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,5 Z\" fill=\"#c03030\"/></marker>\n";
  s += "  </defs>\n";

  s += "  <g class=\"ears\" stroke=\"none\">\n";
  for (const auto& p : difference_paths(d, l, opt.per_curve)) {
    s += "    <path class=\"ear ear-d\" fill=\"" + opt.dark + "\" fill-rule=\"evenodd\" d=\"" + p + "\"/>\n";
  }
  for (const auto& p : difference_paths(l, d, opt.per_curve)) {
    s += "    <path class=\"ear ear-l\" fill=\"" + opt.light + "\" fill-rule=\"evenodd\" d=\"" + p + "\"/>\n";
  }
  s += "  </g>\n";

  s += body_elements(d, "D", opt.per_curve, "#202020");
  s += body_elements(l, "L", opt.per_curve, "#606060");

  const double reach = 0.08 * side;
  for (std::size_t i = 0; i < report.lines.size(); ++i) {
    const auto& t = report.lines[i];
    const Vec2 u = t.line.dir.unit();
    const Point2 a = t.first.point - u * reach, b = t.last.point + u * reach;
    s += "  <polyline class=\"support-line\" data-line=\"" + std::to_string(i) + "\" data-alpha=\"" +
         fmt(t.alpha()) + "\" data-first=\"" + to_string(t.first.owner) + "\" data-last=\"" +
         to_string(t.last.owner) + "\" fill=\"none\" stroke=\"#c03030\" stroke-width=\"var\" "
         "marker-mid=\"url(#half-arrow)\" marker-end=\"url(#arrow)\" points=\"" + svg_xy(a) + " " +
         svg_xy(0.5 * (a + b)) + " " + svg_xy(b) + "\"/>\n";
  }
  s += "</svg>\n";
  detail::replace_all(s, "stroke-width=\"var\"", "stroke-width=\"" + fmt(sw) + "\"");
  detail::replace_all(s, "r=\"sw\"", "r=\"" + fmt(2 * sw) + "\"");
  return s;
}

}  // namespace crosskit
