#pragma once

// Brute-force referee: rasterize bodies on a square grid and count connected
// components of set differences by 4-connected flood fill.
//
// Two cell rules are provided.  rasterize() marks a cell when its center is a
// member of the body.  The component oracle marks a cell of D \ L when the
// closed cell meets D \ L; the cells met by a connected set form a
// 4-connected set, so thin wedges at boundary crossings cannot split into
// spurious fragments the way center samples do.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "crosskit/body.hpp"
#include "crosskit/numeric.hpp"

namespace crosskit {

/// Square viewport split into n x n cells; cell (i, j) is row i (bottom up),
/// column j, with center (x0 + (j + 1/2) h, y0 + (i + 1/2) h).
struct RasterGrid {
  Box viewport;
  int n = 0;

  double cell_size() const { return (viewport.xmax - viewport.xmin) / n; }
  double x_at(int j) const { return viewport.xmin + j * cell_size(); }
  double y_at(int i) const { return viewport.ymin + i * cell_size(); }
  Point2 center(int i, int j) const {
    const double h = cell_size();
    return {viewport.xmin + (j + 0.5) * h, viewport.ymin + (i + 0.5) * h};
  }
};

/// Square viewport holding the box with a relative margin on each side.
inline RasterGrid make_grid(const Box& box, int n, double margin = 0.05) {
  if (n < 64) throw GeometryError("raster resolution below 64");
  const double w = box.xmax - box.xmin, h = box.ymax - box.ymin;
  const double side = std::max({w, h, 1e-9}) * (1.0 + 2.0 * margin);
  const double cx = 0.5 * (box.xmin + box.xmax), cy = 0.5 * (box.ymin + box.ymax);
  return {{cx - 0.5 * side, cy - 0.5 * side, cx + 0.5 * side, cy + 0.5 * side}, n};
}

inline RasterGrid make_grid(const ConvexBody& d, const ConvexBody& l, int n, double margin = 0.05) {
  return make_grid(bounding_box(d).united(bounding_box(l)), n, margin);
}

/// Marked cells as half-open column runs [first, second) per row.
struct RunImage {
  RasterGrid grid;
  std::vector<std::vector<std::pair<int, int>>> rows;

  bool marked(int i, int j) const {
    for (const auto& [lo, hi] : rows[i]) {
      if (j >= lo && j < hi) return true;
    }
    return false;
  }
  std::int64_t count() const {
    std::int64_t c = 0;
    for (const auto& row : rows) {
      for (const auto& [lo, hi] : row) c += hi - lo;
    }
    return c;
  }
  std::vector<std::uint8_t> bitmap() const {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(grid.n) * grid.n, 0);
    for (int i = 0; i < grid.n; ++i) {
      for (const auto& [lo, hi] : rows[i]) {
        for (int j = lo; j < hi; ++j) bits[static_cast<std::size_t>(i) * grid.n + j] = 1;
      }
    }
    return bits;
  }
};

namespace detail {

/// Closed interval of x with (x, y) in the body, if any.  The residual is
/// convex along the line, so any inside point seeds a bisection to both ends;
/// the minimizer is only searched for when no coarse sample is inside.  The
/// interval of a nearby line, when given, supplies the seed and brackets.
inline std::optional<std::pair<double, double>> row_interval(
    const ConvexBody& body, double y, double x0, double x1, double tol,
    const std::optional<std::pair<double, double>>& near = std::nullopt) {
  auto r = [&](double x) { return body_residual(body, {x, y}); };
  auto in = [&](double x) { return r(x) <= tol; };
  const double width = 1e-12 * std::max(1.0, x1 - x0);
  constexpr int kSamples = 32;
  std::optional<double> seed;
  if (near) {
    const double mid = 0.5 * (near->first + near->second);
    if (in(mid)) seed = mid;
  }
  double best_x = x0, best_v = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kSamples && !seed; ++k) {
    const double x = x0 + (x1 - x0) * k / kSamples;
    const double v = r(x);
    if (v <= tol) seed = x;
    if (v < best_v) best_v = v, best_x = x;
  }
  if (!seed) {
    const double step = (x1 - x0) / kSamples;
    const auto [xm, vm] = numeric::golden_min(r, std::max(x0, best_x - step),
                                              std::min(x1, best_x + step), width);
    if (vm > tol) return std::nullopt;
    seed = xm;
  }
  // Boundary crossing between the seed and `bound`, bracketed first around
  // `guess` by doubling steps when a guess is available.
  auto end_toward = [&](double bound, std::optional<double> guess) {
    if (in(bound)) return bound;
    double inside = *seed, outside = bound;
    if (guess && (*guess - inside) * (bound - inside) > 0.0) {
      const double sign = bound > inside ? 1.0 : -1.0;
      double g = *guess, step = 1e-3 * std::abs(x1 - x0);
      if (in(g)) {
        inside = g;
        for (double t = g + sign * step; (t - bound) * sign < 0.0; step *= 2, t = g + sign * step) {
          if (!in(t)) { outside = t; break; }
          inside = t;
        }
      } else {
        outside = g;
        for (double t = g - sign * step; (t - *seed) * sign > 0.0; step *= 2, t = g - sign * step) {
          if (in(t)) { inside = t; break; }
          outside = t;
        }
      }
    }
    return numeric::bisect_predicate(in, inside, outside, width);
  };
  const double a = end_toward(x0, near ? std::optional<double>(near->first) : std::nullopt);
  const double b = end_toward(x1, near ? std::optional<double>(near->second) : std::nullopt);
  return std::make_pair(a, b);
}

}  // namespace detail

/// Marks the cells whose centers are members of the body (interior or
/// boundary).
inline RunImage rasterize(const ConvexBody& body, const RasterGrid& grid, double tol = kTieTol) {
  if (grid.n < 64) throw GeometryError("raster resolution below 64");
  if (!grid.viewport.contains(bounding_box(body))) throw GeometryError("viewport too small");
  RunImage img{grid, std::vector<std::vector<std::pair<int, int>>>(grid.n)};
  const double h = grid.cell_size();
  const double x0 = grid.viewport.xmin;
  std::optional<std::pair<double, double>> prev;
  for (int i = 0; i < grid.n; ++i) {
    const double y = grid.center(i, 0).y;
    const auto iv = detail::row_interval(body, y, x0, grid.viewport.xmax, tol, prev);
    prev = iv;
    if (!iv) continue;
    // Centers x0 + (j + 1/2) h inside [a, b], settled by direct membership at
    // the two ends.
    int lo = std::max(0, static_cast<int>(std::ceil((iv->first - x0) / h - 0.5)) - 1);
    int hi = std::min(grid.n - 1, static_cast<int>(std::floor((iv->second - x0) / h - 0.5)) + 1);
    while (lo <= hi && !is_member(body, grid.center(i, lo), tol)) ++lo;
    while (hi >= lo && !is_member(body, grid.center(i, hi), tol)) --hi;
    if (lo <= hi) img.rows[i].push_back({lo, hi + 1});
  }
  return img;
}

/// Cells whose centers lie in D and not in L.
inline RunImage center_difference(const RunImage& d, const RunImage& l) {
  RunImage out{d.grid, std::vector<std::vector<std::pair<int, int>>>(d.grid.n)};
  for (int i = 0; i < d.grid.n; ++i) {
    for (const auto& [alo, ahi] : d.rows[i]) {
      int cur = alo;
      for (const auto& [blo, bhi] : l.rows[i]) {
        if (bhi <= cur || blo >= ahi) continue;
        if (blo > cur) out.rows[i].push_back({cur, blo});
        cur = std::max(cur, bhi);
      }
      if (cur < ahi) out.rows[i].push_back({cur, ahi});
    }
  }
  return out;
}

namespace detail {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// Box [x0, x1] x [y0, y1].
struct Cell {
  double x0, y0, x1, y1;
  bool holds(Point2 p, double slack) const {
    return p.x >= x0 - slack && p.x <= x1 + slack && p.y >= y0 - slack && p.y <= y1 + slack;
  }
};

/// Axis-aligned box of a boundary piece: its ends and its contacts for the
/// axis normals inside its tangent range.
inline Box piece_box(const BoundaryPiece& piece) {
  const Point2 a = start_point(piece), b = end_point(piece);
  Box box{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
  if (std::holds_alternative<Segment>(piece)) return box;
  const TangentRange range = tangent_range(piece);
  for (int q = 0; q < 4; ++q) {
    const double alpha = 0.5 * kPi * q;
    if (!range.contains(alpha)) continue;
    const Point2 p = contact(piece, alpha).point;
    box.xmin = std::min(box.xmin, p.x);
    box.ymin = std::min(box.ymin, p.y);
    box.xmax = std::max(box.xmax, p.x);
    box.ymax = std::max(box.ymax, p.y);
  }
  return box;
}

/// Part of segment ab inside the closed cell (Liang-Barsky).
inline std::optional<std::pair<Point2, Point2>> clip_to_cell(Point2 a, Point2 b, const Cell& c) {
  const Vec2 d = b - a;
  double t0 = 0.0, t1 = 1.0;
  const double p[4] = {-d.x, d.x, -d.y, d.y};
  const double q[4] = {a.x - c.x0, c.x1 - a.x, a.y - c.y0, c.y1 - a.y};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0.0) {
      if (q[k] < 0.0) return std::nullopt;
      continue;
    }
    const double t = q[k] / p[k];
    if (p[k] < 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return std::nullopt;
  }
  return std::make_pair(a + d * t0, a + d * t1);
}

/// Residual of L at p, less the distance of p outside D.  L's residual is
/// 1-Lipschitz, so a score above tol certifies a point of D that is outside L
/// by more than tol even when p itself sits a rounding error outside D.
inline double difference_score(const ConvexBody& d, const ConvexBody& l, Point2 p, double tol) {
  const double rd = body_residual(d, p);
  if (rd > tol) return -std::numeric_limits<double>::infinity();
  return body_residual(l, p) - std::max(rd, 0.0);
}

/// Whether the closed cell meets D \ L: the largest residual of L over the
/// convex set cell n D exceeds tol.  A convex function peaks at an extreme
/// point, and the extreme points of cell n D are cell corners in D, points
/// where the boundary of D crosses the cell edges, and boundary points of D
/// inside the cell.
inline bool cell_meets_difference(const ConvexBody& d, const ConvexBody& l, const Cell& c,
                                  double tol) {
  double best = -std::numeric_limits<double>::infinity();
  auto consider = [&](Point2 p) { best = std::max(best, difference_score(d, l, p, tol)); };
  if (d.is_point()) {
    if (c.holds(d.anchor(), 0.0)) consider(d.anchor());
    return best > tol;
  }

  const Point2 corners[4] = {{c.x0, c.y0}, {c.x1, c.y0}, {c.x1, c.y1}, {c.x0, c.y1}};
  bool any_corner_in = false;
  for (const Point2 p : corners) {
    if (body_residual(d, p) <= tol) any_corner_in = true;
    consider(p);
  }
  if (best > tol) return true;

  // When only straight pieces of D reach the cell, the boundary points of D
  // in the cell are the clipped pieces, whose ends are the remaining extreme
  // points.
  bool straight = true;
  std::vector<std::size_t> near;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const Box b = piece_box(d.pieces()[k]);
    if (b.xmax < c.x0 - tol || b.xmin > c.x1 + tol || b.ymax < c.y0 - tol || b.ymin > c.y1 + tol) {
      continue;
    }
    near.push_back(k);
    if (!std::holds_alternative<Segment>(d.pieces()[k])) straight = false;
  }
  if (straight) {
    for (const std::size_t k : near) {
      const auto& seg = std::get<Segment>(d.pieces()[k]);
      if (const auto clipped = clip_to_cell(seg.a, seg.b, c)) {
        consider(clipped->first);
        consider(clipped->second);
      }
    }
    return best > tol;
  }

  const double width = 1e-13;
  std::vector<Point2> crossings;
  for (int k = 0; k < 4; ++k) {
    const Point2 a = corners[k], b = corners[(k + 1) % 4];
    auto at = [&](double t) { return a + (b - a) * t; };
    auto f = [&](double t) { return body_residual(d, at(t)); };
    auto in = [&](double t) { return f(t) <= tol; };
    const bool in0 = in(0.0), in1 = in(1.0);
    if (in0 && in1) continue;
    if (in0 != in1) {
      crossings.push_back(at(in0 ? numeric::bisect_predicate(in, 0.0, 1.0, width)
                                 : numeric::bisect_predicate(in, 1.0, 0.0, width)));
      continue;
    }
    const auto [tm, vm] = numeric::golden_min(f, 0.0, 1.0, width);
    if (vm > tol) continue;
    crossings.push_back(at(numeric::bisect_predicate(in, tm, 0.0, width)));
    crossings.push_back(at(numeric::bisect_predicate(in, tm, 1.0, width)));
  }
  for (const Point2 p : crossings) consider(p);
  if (best > tol) return true;

  // Largest residual of L along the boundary of D between two parameters.
  auto scan_boundary = [&](double s0, double s1) {
    for (std::size_t k = 0; k < d.size(); ++k) {
      const double a = std::max(s0, static_cast<double>(k));
      const double b = std::min(s1, static_cast<double>(k + 1));
      if (b < a) continue;
      // Wrapped ranges are handled by the caller shifting s0, s1.
      consider(d.point_at(a));
      consider(d.point_at(b));
      if (!std::holds_alternative<Segment>(d.pieces()[k]) && b > a) {
        const double v = numeric::scan_max(
            [&](double s) { return difference_score(d, l, d.point_at(s), tol); }, a, b, 16, width).second;
        best = std::max(best, v);
      }
    }
  };

  if (crossings.empty()) {
    if (any_corner_in) return best > tol;  // the whole cell lies in D
    if (!c.holds(d.anchor(), 0.0)) return false;
    scan_boundary(0.0, d.period());  // D lies inside the cell
    return best > tol;
  }
  std::vector<double> params;
  for (const Point2 p : crossings) params.push_back(locate(d, p));
  std::sort(params.begin(), params.end());
  const double period = d.period();
  const double slack = 1e-9 * (c.x1 - c.x0);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double s0 = params[i];
    const double s1 = (i + 1 < params.size()) ? params[i + 1] : params.front() + period;
    if (s1 - s0 <= 0.0) continue;
    if (!c.holds(d.point_at(0.5 * (s0 + s1)), slack)) continue;
    if (s1 <= period) {
      scan_boundary(s0, s1);
    } else {
      scan_boundary(s0, period);
      scan_boundary(0.0, s1 - period);
    }
    if (best > tol) return true;
  }
  return best > tol;
}

/// Cells of one grid row strip met by a body: the x-extent of the body
/// inside the strip, from the two strip lines and the leftmost and rightmost
/// contact points.
struct StripExtent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool empty() const { return lo > hi; }
  void add(double x) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
};

struct BodyLines {
  std::vector<std::optional<std::pair<double, double>>> lines;  // per grid line y_k
  ContactSet left, right;                                       // extreme contacts in x
};

inline BodyLines body_lines(const ConvexBody& body, const RasterGrid& grid, double tol) {
  BodyLines bl;
  bl.lines.resize(static_cast<std::size_t>(grid.n) + 1);
  for (int k = 0; k <= grid.n; ++k) {
    bl.lines[k] = row_interval(body, grid.y_at(k), grid.viewport.xmin, grid.viewport.xmax, tol,
                               k > 0 ? bl.lines[k - 1] : std::nullopt);
  }
  bl.left = contact_set(body, Direction(1.5 * kPi));
  bl.right = contact_set(body, Direction(0.5 * kPi));
  return bl;
}

inline StripExtent strip_extent(const BodyLines& bl, double yb, double yt, int i) {
  StripExtent e;
  for (const auto& iv : {bl.lines[i], bl.lines[i + 1]}) {
    if (iv) {
      e.add(iv->first);
      e.add(iv->second);
    }
  }
  for (const ContactSet* cs : {&bl.left, &bl.right}) {
    for (const Point2 p : {cs->first, cs->last}) {
      if (p.y >= yb && p.y <= yt) e.add(p.x);
    }
  }
  return e;
}

}  // namespace detail

namespace detail {
inline RunImage cover_difference(const ConvexBody& d, const ConvexBody& l, const RasterGrid& grid,
                                 const BodyLines& dl, const BodyLines& ll, double tol);
}  // namespace detail

/// Cells that meet D \ L.
inline RunImage cover_difference(const ConvexBody& d, const ConvexBody& l, const RasterGrid& grid,
                                 double tol = kTieTol) {
  if (grid.n < 64) throw GeometryError("raster resolution below 64");
  if (!grid.viewport.contains(bounding_box(d)) || !grid.viewport.contains(bounding_box(l))) {
    throw GeometryError("viewport too small");
  }
  return detail::cover_difference(d, l, grid, detail::body_lines(d, grid, tol),
                                  detail::body_lines(l, grid, tol), tol);
}

namespace detail {

inline RunImage cover_difference(const ConvexBody& d, const ConvexBody& l, const RasterGrid& grid,
                                 const BodyLines& dl, const BodyLines& ll, double tol) {
  const double h = grid.cell_size();
  const double x0 = grid.viewport.xmin;
  RunImage out{grid, std::vector<std::vector<std::pair<int, int>>>(grid.n)};

  auto col_floor = [&](double x) { return std::clamp(static_cast<int>(std::floor((x - x0) / h)), 0, grid.n - 1); };
  for (int i = 0; i < grid.n; ++i) {
    const double yb = grid.y_at(i), yt = grid.y_at(i + 1);
    const StripExtent de = strip_extent(dl, yb, yt, i);
    if (de.empty()) continue;
    const StripExtent le = strip_extent(ll, yb, yt, i);
    // Cells inside L have all four corners in L.
    double in_lo = 1.0, in_hi = 0.0;
    if (ll.lines[i] && ll.lines[i + 1]) {
      in_lo = std::max(ll.lines[i]->first, ll.lines[i + 1]->first);
      in_hi = std::min(ll.lines[i]->second, ll.lines[i + 1]->second);
    }
    auto& row = out.rows[i];
    auto mark = [&](int j) {
      if (!row.empty() && row.back().second == j) {
        row.back().second = j + 1;
      } else {
        row.push_back({j, j + 1});
      }
    };
    for (int j = col_floor(de.lo); j <= col_floor(de.hi); ++j) {
      const double cx0 = grid.x_at(j), cx1 = grid.x_at(j + 1);
      if (cx0 >= in_lo && cx1 <= in_hi) continue;
      if (le.empty() || cx1 < le.lo || cx0 > le.hi) {
        mark(j);
        continue;
      }
      // Cheap witnesses first: center, corners and edge midpoints.
      bool hit = false;
      for (double fx : {0.5, 0.0, 1.0}) {
        for (double fy : {0.5, 0.0, 1.0}) {
          const Point2 p{cx0 + fx * h, yb + fy * h};
          if (detail::difference_score(d, l, p, tol) > tol) {
            hit = true;
            break;
          }
        }
        if (hit) break;
      }
      if (hit || cell_meets_difference(d, l, {cx0, yb, cx1, yt}, tol)) mark(j);
    }
  }
  return out;
}

}  // namespace detail

/// 4-connected components of marked cells: runs in adjacent rows connect
/// when they share a column.
inline int count_components(const RunImage& img) {
  const int n = img.grid.n;
  std::vector<std::size_t> start(static_cast<std::size_t>(n) + 1, 0);
  std::size_t total = 0;
  for (int i = 0; i < n; ++i) {
    start[i] = total;
    total += img.rows[i].size();
  }
  start[n] = total;
  detail::DisjointSets sets(total);
  for (int i = 1; i < n; ++i) {
    const auto& up = img.rows[i];
    const auto& down = img.rows[i - 1];
    std::size_t p = 0, q = 0;
    while (p < down.size() && q < up.size()) {
      if (down[p].first < up[q].second && up[q].first < down[p].second) {
        sets.unite(static_cast<int>(start[i - 1] + p), static_cast<int>(start[i] + q));
      }
      (down[p].second < up[q].second) ? ++p : ++q;
    }
  }
  int count = 0;
  for (std::size_t k = 0; k < total; ++k) count += sets.find(static_cast<int>(k)) == static_cast<int>(k);
  return count;
}

/// Components of D \ L at resolution n over the shared viewport of D and L.
inline int oracle_component_count(const ConvexBody& d, const ConvexBody& l, int n = 2048) {
  return count_components(cover_difference(d, l, make_grid(d, l, n)));
}

/// Components of the cells whose centers lie in D and not in L.
inline int center_component_count(const ConvexBody& d, const ConvexBody& l, int n = 2048) {
  const RasterGrid grid = make_grid(d, l, n);
  return count_components(center_difference(rasterize(d, grid), rasterize(l, grid)));
}

struct OracleCounts {
  int dl = 0;
  int ld = 0;
  bool crossing() const { return dl >= 2 && ld >= 2; }
};

inline OracleCounts oracle_counts(const ConvexBody& d, const ConvexBody& l, int n = 2048) {
  const RasterGrid grid = make_grid(d, l, n);
  if (!grid.viewport.contains(bounding_box(d)) || !grid.viewport.contains(bounding_box(l))) {
    throw GeometryError("viewport too small");
  }
  const detail::BodyLines dl = detail::body_lines(d, grid, kTieTol);
  const detail::BodyLines ll = detail::body_lines(l, grid, kTieTol);
  return {count_components(detail::cover_difference(d, l, grid, dl, ll, kTieTol)),
          count_components(detail::cover_difference(l, d, grid, ll, dl, kTieTol))};
}

inline bool oracle_ft_crossing(const ConvexBody& d, const ConvexBody& l, int n = 2048) {
  return oracle_counts(d, l, n).crossing();
}

/// Writes a binary PGM: 0 outside both, 255 in D only, 128 in L only, 64 in
/// both.  Row 0 of the image is the top row of the grid.
inline void write_pgm(std::ostream& os, const RunImage& d, const RunImage& l) {
  const int n = d.grid.n;
  const auto bd = d.bitmap(), bl = l.bitmap();
  os << "P5\n" << n << ' ' << n << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(n));
  for (int i = n - 1; i >= 0; --i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * n + j;
      row[j] = static_cast<char>(bd[k] && bl[k] ? 64 : bd[k] ? 255 : bl[k] ? 128 : 0);
    }
    os.write(row.data(), n);
  }
}

}  // namespace crosskit
