#pragma once

// Crossing relations between two compact convex bodies: Fejes-Toth crossing
// (tau) via boundary-arc connectivity, and the slide-across relations
// (lambda, rho) with their strong and weak combinations (beta, epsilon).

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crosskit/body.hpp"
#include "crosskit/geom.hpp"
#include "crosskit/numeric.hpp"
#include "crosskit/tangency.hpp"

namespace crosskit {

/// Raised when a theorem-level implication fails on computed values.
class ConsistencyError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

struct CrossingConfig {
  TangencyConfig tangency;
  /// Boundary points with residual <= member_tol count as members.
  double member_tol = kTieTol;
  /// Arcs whose extreme residual stays inside this band are not trusted.
  double band = 1e-7;
  int samples_per_segment = 64;
  int samples_per_curve = 256;
  /// Throw ConsistencyError when a report has epsilon without tau.  Suites
  /// that count violations themselves turn this off.
  bool assert_consistency = true;
};

// ---- boundary arcs ----------------------------------------------------------------------

/// A maximal stretch of the boundary of D that is either outside L or on/in L.
/// Parameters are global boundary parameters of D with begin <= end; end may
/// exceed the period when the arc wraps past parameter 0.
struct BoundaryArcClass {
  double begin = 0.0;
  double end = 0.0;
  Point2 start;
  Point2 finish;
  bool outside = false;
  /// Largest residual of L along an outside arc, smallest along an inside arc.
  double extreme = 0.0;

  bool contains(double pos, double period) const {
    if (end - begin >= period) return true;
    double p = pos;
    while (p < begin) p += period;
    return p <= end;
  }
  double midpoint() const { return 0.5 * (begin + end); }
};

struct BoundaryAnalysis {
  std::vector<BoundaryArcClass> arcs;  // cyclic order along the boundary of D
  /// Near-degenerate configurations met while classifying.
  std::vector<std::string> flags;

  std::size_t outside_count() const {
    return static_cast<std::size_t>(
        std::count_if(arcs.begin(), arcs.end(), [](const auto& a) { return a.outside; }));
  }
};

namespace detail {

struct BoundarySample {
  double pos = 0.0;
  double r = 0.0;
};

}  // namespace detail

/// Splits the boundary of a two-dimensional D into arcs outside L and arcs
/// on or in L.  Classification samples each piece, looks for hidden sign
/// changes between samples using that the residual of L is 1-Lipschitz, and
/// refines every change by bisection.
inline BoundaryAnalysis classify_boundary(const ConvexBody& d, const ConvexBody& l,
                                          const CrossingConfig& cfg = {}) {
  if (d.is_degenerate()) throw GeometryError("boundary arcs need a two-dimensional body");
  const double tol = cfg.member_tol;
  const double period = d.period();
  auto residual = [&](double pos) { return body_residual(l, d.point_at(pos)); };
  auto outside = [&](double r) { return r > tol; };

  std::vector<detail::BoundarySample> samples;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const bool straight = std::holds_alternative<Segment>(d.pieces()[k]);
    const int m = straight ? cfg.samples_per_segment : cfg.samples_per_curve;
    for (int i = 0; i < m; ++i) {
      const double pos = static_cast<double>(k) + static_cast<double>(i) / m;
      samples.push_back({pos, residual(pos)});
    }
  }

  // Insert the extremum of any interval that could hide a change of class.
  std::vector<detail::BoundarySample> refined;
  refined.reserve(samples.size() + 16);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto a = samples[i];
    auto b = samples[(i + 1) % samples.size()];
    const double b_pos = (i + 1 == samples.size()) ? b.pos + period : b.pos;
    refined.push_back(a);
    if (outside(a.r) != outside(b.r)) continue;
    const double chord = distance(d.point_at(a.pos), d.point_at(b_pos));
    const double reach = 1.05 * chord + 2.0 * tol;
    if (std::abs(a.r) + std::abs(b.r) > reach) continue;
    if (outside(a.r)) {
      const auto [x, v] = numeric::golden_min(residual, a.pos, b_pos, 1e-13);
      if (!outside(v)) refined.push_back({x, v});
    } else {
      const auto [x, v] = numeric::golden_max(residual, a.pos, b_pos, 1e-13);
      if (outside(v)) refined.push_back({x, v});
    }
  }

  BoundaryAnalysis out;
  // Unwrapped event positions where the class changes, with the class after.
  struct Event {
    double pos;
    bool outside_after;
  };
  std::vector<Event> events;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    const auto a = refined[i];
    const auto b = refined[(i + 1) % refined.size()];
    const double b_pos = (i + 1 == refined.size()) ? b.pos + period : b.pos;
    if (outside(a.r) == outside(b.r)) continue;
    const bool a_out = outside(a.r);
    auto pred = [&](double pos) { return outside(residual(pos)) == a_out; };
    const double e = numeric::bisect_predicate(pred, a.pos, b_pos, 1e-13);
    events.push_back({e, !a_out});
  }

  if (events.empty()) {
    const bool out_all = outside(refined.front().r);
    double lo = refined.front().r, hi = lo;
    for (const auto& s : refined) {
      lo = std::min(lo, s.r);
      hi = std::max(hi, s.r);
    }
    out.arcs.push_back({0.0, period, d.point_at(0.0), d.point_at(0.0), out_all, out_all ? hi : lo});
    if (out_all && lo <= cfg.band) out.flags.push_back("boundary grazes the other body");
    return out;
  }

  // Arcs run between consecutive events; the samples inside give the extreme.
  for (std::size_t i = 0; i < events.size(); ++i) {
    const auto& e0 = events[i];
    double e1 = events[(i + 1) % events.size()].pos;
    if (i + 1 == events.size()) e1 += period;
    BoundaryArcClass arc;
    arc.begin = e0.pos;
    arc.end = std::max(e1, e0.pos);
    arc.outside = e0.outside_after;
    arc.start = d.point_at(arc.begin);
    arc.finish = d.point_at(arc.end);
    double extreme = arc.outside ? -1.0 : 1.0;
    for (const auto& s : refined) {
      if (!arc.contains(s.pos, period)) continue;
      if (outside(s.r) != arc.outside) continue;
      extreme = arc.outside ? std::max(extreme, s.r) : std::min(extreme, s.r);
    }
    // The sampled extreme of a short arc may be missing; probe its middle.
    const double mid_r = residual(arc.midpoint());
    extreme = arc.outside ? std::max(extreme, mid_r) : std::min(extreme, mid_r);
    arc.extreme = extreme;
    out.arcs.push_back(arc);
  }
  // Start the cyclic list at the arc with the smallest start parameter.
  for (auto& a : out.arcs) {
    if (a.begin >= period) {
      a.begin -= period;
      a.end -= period;
    }
  }
  std::rotate(out.arcs.begin(),
              std::min_element(out.arcs.begin(), out.arcs.end(),
                               [](const auto& x, const auto& y) { return x.begin < y.begin; }),
              out.arcs.end());

  for (const auto& a : out.arcs) {
    if (a.outside && a.extreme <= cfg.band) {
      out.flags.push_back("outside arc thinner than the tolerance band");
    }
    if (!a.outside && a.end - a.begin < 1e-6 && a.extreme > -cfg.band) {
      out.flags.push_back("boundaries touch without crossing");
    }
  }
  return out;
}

inline std::vector<BoundaryArcClass> boundary_outside_arcs(const ConvexBody& d,
                                                           const ConvexBody& l,
                                                           const CrossingConfig& cfg = {}) {
  std::vector<BoundaryArcClass> out;
  for (const auto& a : classify_boundary(d, l, cfg).arcs) {
    if (a.outside) out.push_back(a);
  }
  return out;
}

// ---- connectivity of D \ L ----------------------------------------------------------------

struct ComponentCount {
  int count = 0;
  std::vector<std::string> flags;
};

namespace detail {

/// Parameters t in [0, 1] with a + t (b - a) in the body, as [lo, hi];
/// empty when lo > hi.
inline std::pair<double, double> clip_segment(const ConvexBody& body, Point2 a, Point2 b,
                                              double tol) {
  auto r = [&](double t) { return body_residual(body, a + (b - a) * t); };
  // The residual is convex along a line, so its sublevel set is an interval.
  const auto [tm, vm] = numeric::scan_max([&](double t) { return -r(t); }, 0.0, 1.0, 64, 1e-14);
  if (-vm > tol) return {1.0, 0.0};
  auto in = [&](double t) { return r(t) <= tol; };
  const double lo = in(0.0) ? 0.0 : numeric::bisect_predicate(in, tm, 0.0, 1e-14);
  const double hi = in(1.0) ? 1.0 : numeric::bisect_predicate(in, tm, 1.0, 1e-14);
  return {lo, hi};
}

inline ComponentCount degenerate_count(const ConvexBody& d, const ConvexBody& l, double tol) {
  ComponentCount out;
  if (d.is_point()) {
    out.count = is_member(l, d.anchor(), tol) ? 0 : 1;
    return out;
  }
  if (d.kind() == BodyKind::kSegment) {
    const auto& s = std::get<Segment>(d.pieces().front());
    const auto [lo, hi] = clip_segment(l, s.a, s.b, tol);
    if (lo > hi) {
      out.count = 1;
      return out;
    }
    const double len = distance(s.a, s.b);
    out.count = static_cast<int>(lo * len > tol) + static_cast<int>((1.0 - hi) * len > tol);
    return out;
  }
  // D is two-dimensional and L is a point or a segment.
  if (l.is_point()) {
    out.count = 1;
    return out;
  }
  const auto& s = std::get<Segment>(l.pieces().front());
  const auto [lo, hi] = clip_segment(d, s.a, s.b, tol);
  if (lo > hi) {
    out.count = 1;
    return out;
  }
  const Point2 p = s.a + (s.b - s.a) * lo, q = s.a + (s.b - s.a) * hi;
  // A chord through the interior with both ends on the boundary cuts D in two.
  const bool ends_on_boundary = body_residual(d, p) >= -tol && body_residual(d, q) >= -tol;
  const bool through_interior = body_residual(d, 0.5 * (p + q)) < -tol;
  out.count = (ends_on_boundary && through_interior && distance(p, q) > tol) ? 2 : 1;
  return out;
}

}  // namespace detail

/// Number of connected components of D \ L.
///
/// The count is 0 when D is inside L, 1 when the boundary of D misses L, and
/// otherwise the number of maximal arcs of the boundary of D outside L.
inline ComponentCount difference_components(const ConvexBody& d, const ConvexBody& l,
                                            const CrossingConfig& cfg = {}) {
  if (d.is_degenerate() || l.is_degenerate()) return detail::degenerate_count(d, l, cfg.member_tol);
  const BoundaryAnalysis ba = classify_boundary(d, l, cfg);
  ComponentCount out;
  out.flags = ba.flags;
  out.count = static_cast<int>(ba.outside_count());
  return out;
}

inline int difference_component_count(const ConvexBody& d, const ConvexBody& l,
                                      const CrossingConfig& cfg = {}) {
  return difference_components(d, l, cfg).count;
}

inline bool ft_crossing(const ConvexBody& d, const ConvexBody& l, const CrossingConfig& cfg = {}) {
  return difference_component_count(d, l, cfg) >= 2 && difference_component_count(l, d, cfg) >= 2;
}

// ---- slides across ----------------------------------------------------------------------

/// Two lines witnessing that one body slides across the other.
struct SlideWitness {
  CommonSupportingLine t;
  CommonSupportingLine t2;
  /// t2 is t reversed (same undirected line).
  bool opposite = false;
};

struct SlideResult {
  bool holds = false;
  std::optional<SlideWitness> witness;
  /// Candidate lines left out because an extreme was not decided.
  int ambiguous_lines = 0;
};

/// Candidate common supporting lines: every isolated line plus the two ends
/// and the midpoint of every zero interval.
inline std::vector<CommonSupportingLine> candidate_lines(const ConvexBody& d, const ConvexBody& l,
                                                         const CommonLines& common,
                                                         const TangencyConfig& cfg = {}) {
  std::vector<CommonSupportingLine> out = common.lines;
  for (const auto& iv : common.intervals) {
    const double probes[] = {iv.begin, 0.5 * (iv.begin + iv.end), iv.end};
    for (double a : probes) {
      auto t = make_common_line(d, l, Direction(a), cfg);
      t.from_interval = true;
      out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.alpha() < b.alpha(); });
  std::vector<CommonSupportingLine> unique;
  for (const auto& t : out) {
    if (!unique.empty() && t.alpha() - unique.back().alpha() <= cfg.dedup_angle) continue;
    unique.push_back(t);
  }
  if (unique.size() > 1 && unique.front().alpha() + kTwoPi - unique.back().alpha() <= cfg.dedup_angle) {
    unique.pop_back();
  }
  return unique;
}

/// Slide test over given candidate lines: a line qualifies when its first
/// point has owner `first` and its last point has owner `last`.
inline SlideResult slides_over(const std::vector<CommonSupportingLine>& lines, Owner first,
                               Owner last, const TangencyConfig& cfg = {}) {
  SlideResult out;
  std::vector<const CommonSupportingLine*> good;
  for (const auto& t : lines) {
    const bool first_ok = t.first.owner == first, last_ok = t.last.owner == last;
    const bool first_open = first_ok || t.first.owner == Owner::kAmbiguous;
    const bool last_open = last_ok || t.last.owner == Owner::kAmbiguous;
    if (t.ambiguous()) {
      if (first_open && last_open) ++out.ambiguous_lines;
      continue;
    }
    if (first_ok && last_ok) good.push_back(&t);
  }
  if (good.size() >= 2) {
    out.holds = true;
    SlideWitness w{*good[0], *good[1], false};
    w.opposite = std::abs(wrap_pi(w.t2.alpha() - w.t.alpha() - kPi)) <= cfg.dedup_angle &&
                 std::abs(w.t2.line.offset + w.t.line.offset) <= 1e-7;
    out.witness = w;
  }
  return out;
}

/// Whether D slides across L: two distinct common supporting lines whose
/// first point is in D \ L and whose last point is in L \ D.
inline SlideResult slides_across(const ConvexBody& d, const ConvexBody& l,
                                 const CrossingConfig& cfg = {}) {
  const auto common = common_supporting_lines(d, l, cfg.tangency);
  return slides_over(candidate_lines(d, l, common, cfg.tangency), Owner::kDOnly, Owner::kLOnly,
                     cfg.tangency);
}

// ---- report -----------------------------------------------------------------------------

struct CrossingReport {
  bool beta = false;
  bool lambda = false;
  bool rho = false;
  bool epsilon = false;
  bool tau = false;
  std::optional<SlideWitness> lambda_witness;
  std::optional<SlideWitness> rho_witness;
  int components_dl = 0;  // components of D \ L
  int components_ld = 0;  // components of L \ D
  std::vector<CommonSupportingLine> lines;
  std::vector<ZeroInterval> intervals;
  std::vector<std::string> flags;

  bool ambiguous() const { return !flags.empty(); }
};

inline CrossingReport crossing_report(const ConvexBody& d, const ConvexBody& l,
                                      const CrossingConfig& cfg = {}) {
  CrossingReport rep;
  const auto common = common_supporting_lines(d, l, cfg.tangency);
  rep.lines = common.lines;
  rep.intervals = common.intervals;
  const auto candidates = candidate_lines(d, l, common, cfg.tangency);

  const SlideResult lam = slides_over(candidates, Owner::kDOnly, Owner::kLOnly, cfg.tangency);
  const SlideResult rho = slides_over(candidates, Owner::kLOnly, Owner::kDOnly, cfg.tangency);
  rep.lambda = lam.holds;
  rep.rho = rho.holds;
  rep.lambda_witness = lam.witness;
  rep.rho_witness = rho.witness;
  rep.beta = rep.lambda && rep.rho;
  rep.epsilon = rep.lambda || rep.rho;
  if (lam.ambiguous_lines > 0) rep.flags.push_back("undecided extreme on a candidate line for lambda");
  if (rho.ambiguous_lines > 0) rep.flags.push_back("undecided extreme on a candidate line for rho");
  if (rep.lambda_witness && rep.lambda_witness->opposite) {
    rep.flags.push_back("lambda witnessed by a line and its reverse");
  }
  if (rep.rho_witness && rep.rho_witness->opposite) {
    rep.flags.push_back("rho witnessed by a line and its reverse");
  }

  const ComponentCount dl = difference_components(d, l, cfg);
  const ComponentCount ld = difference_components(l, d, cfg);
  rep.components_dl = dl.count;
  rep.components_ld = ld.count;
  for (const auto& f : dl.flags) rep.flags.push_back("D\\L: " + f);
  for (const auto& f : ld.flags) rep.flags.push_back("L\\D: " + f);
  rep.tau = dl.count >= 2 && ld.count >= 2;

  if (cfg.assert_consistency && rep.epsilon && !rep.tau) {
    throw ConsistencyError("weak crossing without Fejes-Toth crossing (components " +
                           std::to_string(dl.count) + ", " + std::to_string(ld.count) + ")");
  }
  return rep;
}

// ---- ears -------------------------------------------------------------------------------

enum class EarOwner { kD, kL };

inline const char* to_string(EarOwner o) { return o == EarOwner::kD ? "D" : "L"; }

/// Parameter range on one body's boundary, counterclockwise from begin to end.
struct BoundaryRange {
  double begin = 0.0;
  double end = 0.0;
  double midpoint() const { return 0.5 * (begin + end); }
};

/// Region cut off by a common supporting line: bounded by the owner's arc
/// from start to terminus (dark) and the other boundary's arc between the
/// same points (light).
struct Ear {
  EarOwner owner = EarOwner::kD;
  Point2 apex;  // first or last point of the union on the line
  Point2 start;
  Point2 terminus;
  BoundaryRange dark;
  BoundaryRange light;
};

namespace detail {

inline BoundaryRange ccw_range(const ConvexBody& body, Point2 from, Point2 to) {
  BoundaryRange r{locate(body, from), locate(body, to)};
  if (r.end <= r.begin) r.end += body.period();
  return r;
}

inline Ear ear_from(const ConvexBody& own, const ConvexBody& other, Point2 apex, EarOwner owner,
                    const CrossingConfig& cfg) {
  const BoundaryAnalysis ba = classify_boundary(own, other, cfg);
  if (ba.arcs.size() < 2) throw GeometryError("interiors do not meet");
  const double pos = locate(own, apex);
  const auto it = std::find_if(ba.arcs.begin(), ba.arcs.end(), [&](const auto& a) {
    return a.outside && a.contains(pos, own.period());
  });
  if (it == ba.arcs.end()) throw GeometryError("line does not start in D \\ L and end in L \\ D");
  Ear ear;
  ear.owner = owner;
  ear.apex = apex;
  ear.start = it->start;
  ear.terminus = it->finish;
  ear.dark = {it->begin, it->end};
  ear.light = ccw_range(other, ear.start, ear.terminus);
  // The light arc lies in the owner; it reaches the interior unless the two
  // bodies only touch.
  if (body_residual(own, other.point_at(ear.light.midpoint())) >= -cfg.member_tol) {
    throw GeometryError("interiors do not meet");
  }
  return ear;
}

}  // namespace detail

/// The ears E_D and E_L of a common supporting line t whose first point is
/// in D \ L and whose last point is in L \ D.
inline std::pair<Ear, Ear> extract_ears(const ConvexBody& d, const ConvexBody& l,
                                        const CommonSupportingLine& t,
                                        const CrossingConfig& cfg = {}) {
  if (t.first.owner != Owner::kDOnly || t.last.owner != Owner::kLOnly) {
    throw GeometryError("line does not start in D \\ L and end in L \\ D");
  }
  if (d.is_degenerate() || l.is_degenerate()) throw GeometryError("interiors do not meet");
  Ear ed = detail::ear_from(d, l, t.first.point, EarOwner::kD, cfg);
  Ear el = detail::ear_from(l, d, t.last.point, EarOwner::kL, cfg);
  if (distance(ed.apex, ed.start) <= cfg.member_tol || distance(ed.apex, ed.terminus) <= cfg.member_tol) {
    throw ConsistencyError("first point coincides with an ear end");
  }
  return {ed, el};
}

/// Checks the ear invariants: both ends on both boundaries and the dark arc
/// strictly outside the other body away from its ends.
inline bool ear_is_sound(const Ear& ear, const ConvexBody& d, const ConvexBody& l,
                         double tol = 1e-7) {
  const ConvexBody& own = ear.owner == EarOwner::kD ? d : l;
  const ConvexBody& other = ear.owner == EarOwner::kD ? l : d;
  for (const Point2 p : {ear.start, ear.terminus}) {
    if (std::abs(body_residual(d, p)) > tol || std::abs(body_residual(l, p)) > tol) return false;
  }
  const int n = 64;
  for (int i = 1; i < n; ++i) {
    const double pos = ear.dark.begin + (ear.dark.end - ear.dark.begin) * i / n;
    if (body_residual(other, own.point_at(pos)) <= 0.0) return false;
  }
  return true;
}

/// Whether ears met while walking around the boundary of D n L alternate
/// between the two owners.  Each ear is placed by the midpoint of its light
/// arc, which lies on that boundary.
inline bool ears_alternate(const std::vector<Ear>& ears, const ConvexBody& d, const ConvexBody& l) {
  if (ears.size() < 2 || ears.size() % 2 != 0) return false;
  Point2 c{};
  for (const auto& e : ears) c = c + 0.5 * (e.start + e.terminus);
  c = c * (1.0 / static_cast<double>(ears.size()));
  std::vector<std::pair<double, EarOwner>> order;
  for (const auto& e : ears) {
    const ConvexBody& other = e.owner == EarOwner::kD ? l : d;
    const Point2 m = other.point_at(e.light.midpoint());
    order.push_back({std::atan2(m.y - c.y, m.x - c.x), e.owner});
  }
  std::sort(order.begin(), order.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i].second == order[(i + 1) % order.size()].second) return false;
  }
  return true;
}

}  // namespace crosskit
