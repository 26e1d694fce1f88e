#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "crosskit/constructions.hpp"
#include "crosskit/crossing.hpp"

namespace crosskit {
namespace {

const double kRoot3 = std::sqrt(3.0);

void ExpectNear(Point2 a, Point2 b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
}

// True when {a, b} and {c, d} are the same point pair up to order.
bool SamePair(Point2 a, Point2 b, Point2 c, Point2 d, double tol) {
  return (distance(a, c) <= tol && distance(b, d) <= tol) ||
         (distance(a, d) <= tol && distance(b, c) <= tol);
}

CrossingTruth Truth(const CrossingReport& r) { return {r.beta, r.lambda, r.rho, r.epsilon, r.tau}; }

// ---- boundary arcs ----------------------------------------------------------------------

TEST(BoundaryArcsTest, OverlappingUnitDisks) {
  const auto d = make_disk({0, 0}, 1.0), l = make_disk({1, 0}, 1.0);
  const auto arcs = boundary_outside_arcs(d, l);
  ASSERT_EQ(arcs.size(), 1u);
  // Events sit where the residual of L crosses the member tolerance.
  EXPECT_TRUE(SamePair(arcs[0].start, arcs[0].finish, {0.5, kRoot3 / 2}, {0.5, -kRoot3 / 2}, 1e-8));
  // The outside arc passes through the far point (-1, 0).
  EXPECT_TRUE(arcs[0].contains(locate(d, {-1, 0}), d.period()));
}

TEST(BoundaryArcsTest, InnerBodyLeavesWholeBoundaryOutside) {
  const auto d = make_disk({0, 0}, 2.0), l = make_disk({0.3, 0.1}, 1.0);
  const auto ba = classify_boundary(d, l);
  ASSERT_EQ(ba.arcs.size(), 1u);
  EXPECT_TRUE(ba.arcs[0].outside);
  EXPECT_NEAR(ba.arcs[0].end - ba.arcs[0].begin, d.period(), 1e-12);
}

TEST(BoundaryArcsTest, ContainedBodyHasNoOutsideArcs) {
  const auto d = make_disk({0, 0}, 1.0), l = make_regular_polygon(4, 3.0);
  EXPECT_TRUE(boundary_outside_arcs(d, l).empty());
}

TEST(BoundaryArcsTest, SharedEdgeCountsAsInside) {
  // Unit square and the square shifted right by one share the edge x = 1.
  const auto d = make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto l = make_polygon({{1, 0}, {2, 0}, {2, 1}, {1, 1}});
  const auto arcs = boundary_outside_arcs(d, l);
  ASSERT_EQ(arcs.size(), 1u);
  EXPECT_TRUE(SamePair(arcs[0].start, arcs[0].finish, {1, 0}, {1, 1}, 1e-8));
}

TEST(BoundaryArcsTest, DegenerateBodyIsRejected) {
  EXPECT_THROW(classify_boundary(ConvexBody::point({0, 0}), make_disk({0, 0}, 1.0)), GeometryError);
}

// ---- component counts -------------------------------------------------------------------

TEST(ComponentCountTest, Examples) {
  EXPECT_EQ(difference_component_count(make_disk({0, 0}, 2.0), make_disk({0, 0}, 1.0)), 1);
  EXPECT_EQ(difference_component_count(make_disk({0, 0}, 1.0), make_disk({0, 0}, 2.0)), 0);
  EXPECT_EQ(difference_component_count(make_disk({0, 0}, 1.0), make_disk({1, 0}, 1.0)), 1);
  EXPECT_EQ(difference_component_count(make_disk({0, 0}, 1.0), make_disk({4, 0}, 1.0)), 1);
  const auto d = make_disk({0, 0}, 1.0);
  EXPECT_EQ(difference_component_count(d, d), 0);
}

TEST(ComponentCountTest, CrossShapeSplitsBothBodies) {
  const auto h = make_polygon({{-2, -0.5}, {2, -0.5}, {2, 0.5}, {-2, 0.5}});
  const auto v = make_polygon({{-0.5, -2}, {0.5, -2}, {0.5, 2}, {-0.5, 2}});
  EXPECT_EQ(difference_component_count(h, v), 2);
  EXPECT_EQ(difference_component_count(v, h), 2);
  EXPECT_TRUE(ft_crossing(h, v));
}

TEST(ComponentCountTest, DegenerateBodies) {
  const auto square = make_polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  EXPECT_EQ(difference_component_count(ConvexBody::point({1, 1}), square), 0);
  EXPECT_EQ(difference_component_count(ConvexBody::point({3, 1}), square), 1);
  // A segment through the square leaves two pieces outside it.
  const auto chord = ConvexBody::segment({-1, 1}, {3, 1});
  EXPECT_EQ(difference_component_count(chord, square), 2);
  EXPECT_EQ(difference_component_count(ConvexBody::segment({-1, 1}, {1, 1}), square), 1);
  EXPECT_EQ(difference_component_count(ConvexBody::segment({0.5, 1}, {1.5, 1}), square), 0);
  // A chord across the square cuts it in two; a stub does not.
  EXPECT_EQ(difference_component_count(square, chord), 2);
  EXPECT_EQ(difference_component_count(square, ConvexBody::segment({-1, 1}, {1, 1})), 1);
}

TEST(FtCrossingTest, Examples) {
  EXPECT_FALSE(ft_crossing(make_disk({0, 0}, 1.0), make_disk({1, 0}, 1.0)));
  const auto e = make_ellipse_pair(2.0, 1.0);
  EXPECT_TRUE(ft_crossing(e.d, e.l));
  const auto o = make_octagon_pair();
  EXPECT_TRUE(ft_crossing(o.d, o.l));
}

// ---- slides across ----------------------------------------------------------------------

TEST(SlidesAcrossTest, HexagonPair) {
  const auto p = make_hexagon_pair();
  const auto fwd = slides_across(p.d, p.l);
  EXPECT_TRUE(fwd.holds);
  ASSERT_TRUE(fwd.witness.has_value());
  EXPECT_NE(fwd.witness->t.alpha(), fwd.witness->t2.alpha());
  for (const auto* t : {&fwd.witness->t, &fwd.witness->t2}) {
    EXPECT_EQ(t->first.owner, Owner::kDOnly);
    EXPECT_EQ(t->last.owner, Owner::kLOnly);
  }
  EXPECT_FALSE(slides_across(p.l, p.d).holds);
}

TEST(SlidesAcrossTest, CongruentDisksNeverSlide) {
  std::mt19937_64 rng(3);
  const auto d = make_disk({0, 0}, 1.0);
  for (int i = 0; i < 50; ++i) {
    const auto l = apply_motion(random_motion(rng, 3.0), d);
    EXPECT_FALSE(slides_across(d, l).holds) << i;
    EXPECT_FALSE(slides_across(l, d).holds) << i;
  }
}

// ---- report -----------------------------------------------------------------------------

TEST(CrossingReportTest, CatalogPairsMatchExpectations) {
  for (const auto& name : named_pair_names()) {
    const auto p = make_named_pair(name);
    const auto r = crossing_report(p.d, p.l);
    EXPECT_EQ(Truth(r), p.expected) << name;
    EXPECT_FALSE(r.ambiguous()) << name;
    EXPECT_EQ(r.beta, r.lambda && r.rho);
    EXPECT_EQ(r.epsilon, r.lambda || r.rho);
  }
}

TEST(CrossingReportTest, IdenticalDisksAreAllFalse) {
  const auto p = make_disk_pair(RigidMotion{});
  const auto r = crossing_report(p.d, p.l);
  EXPECT_EQ(Truth(r), CrossingTruth{});
  EXPECT_EQ(r.components_dl, 0);
  EXPECT_EQ(r.components_ld, 0);
}

TEST(CrossingReportTest, SwappingBodiesSwapsLambdaAndRho) {
  std::vector<NamedPair> pairs = {make_octagon_pair(), make_hexagon_pair(), make_ellipse_pair(2.0, 1.0)};
  for (std::uint64_t seed = 1; seed <= 40; ++seed) pairs.push_back(random_polygon_pair(seed));
  for (const auto& p : pairs) {
    const auto a = crossing_report(p.d, p.l), b = crossing_report(p.l, p.d);
    EXPECT_EQ(a.lambda, b.rho) << p.name;
    EXPECT_EQ(a.rho, b.lambda) << p.name;
    EXPECT_EQ(a.beta, b.beta) << p.name;
    EXPECT_EQ(a.epsilon, b.epsilon) << p.name;
    EXPECT_EQ(a.tau, b.tau) << p.name;
    EXPECT_EQ(a.components_dl, b.components_ld) << p.name;
    EXPECT_EQ(ft_crossing(p.d, p.l), ft_crossing(p.l, p.d)) << p.name;
  }
}

TEST(CrossingReportTest, CongruenceInvariance) {
  std::mt19937_64 rng(17);
  for (const auto& name : named_pair_names()) {
    const auto p = make_named_pair(name);
    const auto base = crossing_report(p.d, p.l);
    for (int i = 0; i < 100; ++i) {
      const RigidMotion m = random_motion(rng, 5.0, 0.5);
      const auto r = crossing_report(apply_motion(m, p.d), apply_motion(m, p.l));
      // A reflection reverses every supporting line, which swaps the first
      // and last points and with them lambda and rho.
      CrossingTruth expected = Truth(base);
      if (m.reflect) std::swap(expected.lambda, expected.rho);
      ASSERT_EQ(Truth(r), expected) << name << " motion " << i;
      EXPECT_EQ(r.components_dl, base.components_dl) << name;
      EXPECT_EQ(r.components_ld, base.components_ld) << name;
      EXPECT_EQ(r.lines.size(), base.lines.size()) << name;
      EXPECT_EQ(r.intervals.size(), base.intervals.size()) << name;
      EXPECT_EQ(r.flags.size(), base.flags.size()) << name;
    }
  }
}

// ---- ears -------------------------------------------------------------------------------

TEST(EarsTest, LensOfUnitDisks) {
  const auto d = make_disk({0, 0}, 1.0), l = make_disk({1, 0}, 1.0);
  const auto bottom = make_common_line(d, l, Direction(0.0));
  const auto [ed, el] = extract_ears(d, l, bottom);
  EXPECT_EQ(ed.owner, EarOwner::kD);
  EXPECT_EQ(el.owner, EarOwner::kL);
  ExpectNear(ed.apex, {0, -1}, 1e-9);
  ExpectNear(el.apex, {1, -1}, 1e-9);
  EXPECT_TRUE(SamePair(ed.start, ed.terminus, {0.5, -kRoot3 / 2}, {0.5, kRoot3 / 2}, 1e-8));
  EXPECT_TRUE(SamePair(el.start, el.terminus, {0.5, -kRoot3 / 2}, {0.5, kRoot3 / 2}, 1e-8));
  EXPECT_TRUE(ear_is_sound(ed, d, l));
  EXPECT_TRUE(ear_is_sound(el, d, l));
}

TEST(EarsTest, LensEarsMirrorUnderSwap) {
  const auto d = make_disk({0, 0}, 1.0), l = make_disk({1, 0}, 1.0);
  const auto ed = extract_ears(d, l, make_common_line(d, l, Direction(0.0))).first;
  // With the bodies swapped the top line starts in L \ D.
  const auto el = extract_ears(l, d, make_common_line(l, d, Direction(kPi))).first;
  const auto mirror = RigidMotion::reflect_across({0.5, 0.0}, 0.5 * kPi);
  EXPECT_TRUE(SamePair(mirror.apply(ed.start), mirror.apply(ed.terminus), el.start, el.terminus, 1e-9));
  ExpectNear(mirror.apply(d.point_at(ed.dark.midpoint())), l.point_at(el.dark.midpoint()), 1e-9);
}

TEST(EarsTest, PreconditionErrors) {
  const auto d = make_disk({0, 0}, 1.0), l = make_disk({1, 0}, 1.0);
  const auto top = make_common_line(d, l, Direction(kPi));
  EXPECT_THROW(extract_ears(d, l, top), GeometryError);
  // Externally tangent disks: the line starts in D and ends in L but the
  // interiors do not meet.
  const auto far = make_disk({2, 0}, 1.0);
  try {
    extract_ears(d, far, make_common_line(d, far, Direction(0.0)));
    FAIL() << "expected an error";
  } catch (const GeometryError& e) {
    EXPECT_STREQ(e.what(), "interiors do not meet");
  }
}

TEST(EarsTest, HexagonWitnessEars) {
  const auto p = make_hexagon_pair();
  const auto r = crossing_report(p.d, p.l);
  ASSERT_TRUE(r.lambda_witness.has_value());
  const auto [ed, el] = extract_ears(p.d, p.l, r.lambda_witness->t);
  const auto [ed2, el2] = extract_ears(p.d, p.l, r.lambda_witness->t2);
  for (const Ear* e : {&ed, &el, &ed2, &el2}) {
    EXPECT_TRUE(ear_is_sound(*e, p.d, p.l));
    EXPECT_GT(distance(e->apex, e->start), 1e-6);
    EXPECT_GT(distance(e->apex, e->terminus), 1e-6);
  }
  // Distinct witness lines give distinct D-ears.
  EXPECT_FALSE(SamePair(ed.start, ed.terminus, ed2.start, ed2.terminus, 1e-6));
  // The terminus of each D-ear starts an L-ear.
  EXPECT_TRUE(ears_alternate({ed, el, ed2, el2}, p.d, p.l));
}

TEST(EarsTest, EllipseEarsAlternate) {
  const auto p = make_ellipse_pair(2.0, 1.0);
  const auto r = crossing_report(p.d, p.l);
  ASSERT_TRUE(r.beta);
  ASSERT_TRUE(r.lambda_witness.has_value());
  const auto [ed, el] = extract_ears(p.d, p.l, r.lambda_witness->t);
  const auto [ed2, el2] = extract_ears(p.d, p.l, r.lambda_witness->t2);
  for (const Ear* e : {&ed, &el, &ed2, &el2}) EXPECT_TRUE(ear_is_sound(*e, p.d, p.l));
  EXPECT_FALSE(SamePair(ed.start, ed.terminus, ed2.start, ed2.terminus, 1e-6));
  EXPECT_TRUE(ears_alternate({ed, el, ed2, el2}, p.d, p.l));
  // Two ears of one owner never alternate.
  EXPECT_FALSE(ears_alternate({ed, ed2}, p.d, p.l));
}

}  // namespace
}  // namespace crosskit
