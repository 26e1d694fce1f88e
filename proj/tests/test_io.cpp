#include <gtest/gtest.h>

#include <regex>
#include <string>

#include "crosskit/constructions.hpp"
#include "crosskit/crossing.hpp"
#include "crosskit/io.hpp"
#include "crosskit/svg.hpp"

namespace crosskit {
namespace {

std::string ErrorPath(const std::string& text) {
  try {
    parse_shape_text(text);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<no error>";
}

int Count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (auto at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++n;
  return n;
}

void ExpectSameSupport(const ConvexBody& a, const ConvexBody& b, double tol) {
  for (int i = 0; i < 64; ++i) {
    const Direction dir(kTwoPi * i / 64);
    EXPECT_NEAR(support_value(a, dir), support_value(b, dir), tol) << i;
  }
}

// ---- shape files ------------------------------------------------------------------------

TEST(ShapeFileTest, AllKinds) {
  const auto file = parse_shape_text(R"({
    "version": 1,
    "shapes": [
      {"id": "a", "kind": "disk", "center": [1, 2], "radius": 0.5},
      {"kind": "polygon", "vertices": [[0, 0], [2, 0], [0, 1]]},
      {"kind": "ellipse", "center": [0, 0], "a": 2, "b": 1, "angle": 90},
      {"kind": "pieces", "pieces": [
        {"type": "segment", "from": [-1, 0], "to": [1, 0]},
        {"type": "circular_arc", "center": [0, 0], "radius": 1, "start_deg": 0, "end_deg": 180}]},
      {"kind": "named", "name": "hexagon"},
      {"id": "pair", "kind": "named", "name": "octagon_pair"},
      {"kind": "transform", "base": {"kind": "polygon", "vertices": [[0, 0], [1, 0], [0, 1]]},
       "rotate_deg": 90, "about": [0, 0], "translate": [5, 0]}
    ],
    "pairs": [{"d": "a", "l": 1}, {"d": "pair.D", "l": "pair.L", "expect": {"tau": true}}]
  })");
  ASSERT_EQ(file.shapes.size(), 8u);
  EXPECT_EQ(file.shapes[0].id, "a");
  EXPECT_EQ(file.shapes[1].id, "shapes[1]");
  EXPECT_NEAR(support_value(file.shapes[0].body, Direction(0.5 * kPi)), 1.5, 1e-15);
  // The ellipse's long axis is vertical after a quarter turn.
  EXPECT_NEAR(support_value(file.shapes[2].body, Direction(0.5 * kPi)), 1.0, 1e-12);
  EXPECT_NEAR(support_value(file.shapes[2].body, Direction(kPi)), 2.0, 1e-12);
  EXPECT_NEAR(support_value(file.shapes[3].body, Direction(kPi)), 1.0, 1e-12);
  EXPECT_EQ(file.shapes[5].id, "pair.D");
  EXPECT_EQ(file.shapes[6].label, "shapes[5].L");
  ExpectSameSupport(file.shapes[6].body, make_octagon_pair().l, 0.0);
  // Triangle turned to the second quadrant, then shifted right by 5.
  ExpectSameSupport(file.shapes[7].body, make_polygon({{5, 0}, {5, 1}, {4, 0}}), 1e-12);
  ASSERT_EQ(file.pairs.size(), 2u);
  EXPECT_EQ(file.pairs[0].d, 0u);
  EXPECT_EQ(file.pairs[0].l, 1u);
  EXPECT_FALSE(file.pairs[0].expect);
  EXPECT_EQ(file.pairs[1].d, 5u);
  ASSERT_TRUE(file.pairs[1].expect);
  EXPECT_TRUE(file.pairs[1].expect->tau);
  EXPECT_FALSE(file.pairs[1].expect->beta);
}

TEST(ShapeFileTest, TransformReflectsBeforeTurning) {
  const auto file = parse_shape_text(R"({"version": 1, "shapes": [
    {"kind": "transform", "reflect": true, "rotate_deg": 90, "about": [0, 1],
     "base": {"kind": "polygon", "vertices": [[0, 1], [2, 1], [0, 2]]}}]})");
  // Mirror in y = 1 gives (0,1), (2,1), (0,0); a quarter turn about (0,1)
  // gives (0,1), (0,3), (1,1).
  ExpectSameSupport(file.shapes[0].body, make_polygon({{0, 1}, {1, 1}, {0, 3}}), 1e-12);
}

TEST(ShapeFileTest, ErrorsNameTheField) {
  EXPECT_EQ(ErrorPath("{"), "$");
  EXPECT_EQ(ErrorPath(R"({"shapes": []})"), "version");
  EXPECT_EQ(ErrorPath(R"({"version": 2, "shapes": []})"), "version");
  EXPECT_EQ(ErrorPath(R"({"version": 1})"), "shapes");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "blob"}]})"), "shapes[0].kind");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "disk", "center": [0, 0]}]})"),
            "shapes[0].radius");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "disk", "center": [0], "radius": 1}]})"),
            "shapes[0].center");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "disk", "center": [0, 0], "radius": -1}]})"),
            "shapes[0].radius");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "polygon", "vertices": [[0, 0], [1, "x"]]}]})"),
            "shapes[0].vertices[1][1]");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "polygon", "vertices": []}]})"),
            "shapes[0].vertices");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "named", "name": "heptagon"}]})"),
            "shapes[0].name");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "pieces", "pieces": [{"type": "spline"}]}]})"),
            "shapes[0].pieces[0].type");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "pieces", "pieces": [
              {"type": "segment", "from": [0, 0], "to": [1, 0]},
              {"type": "segment", "from": [1, 0], "to": [0, 1]}]}]})"),
            "shapes[0].pieces[1]");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "transform", "base": {"kind": "disk"}}]})"),
            "shapes[0].base.center");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "named", "name": "disk_pair"}],
              "pairs": [{"d": 0, "l": 7}]})"),
            "pairs[0].l");
  EXPECT_EQ(ErrorPath(R"({"version": 1, "shapes": [{"kind": "named", "name": "disk_pair"}],
              "pairs": [{"d": 0, "l": 1, "expect": {"gamma": true}}]})"),
            "pairs[0].expect.gamma");
}

TEST(ShapeFileTest, BodyExportReparses) {
  for (const auto& name : named_pair_names()) {
    const auto p = make_named_pair(name);
    for (const auto* body : {&p.d, &p.l}) {
      Json doc = {{"version", 1}, {"shapes", Json::array({body_json(*body)})}};
      const auto back = parse_shape_file(Json::parse(doc.dump()));
      ExpectSameSupport(back.shapes[0].body, *body, 1e-12);
    }
  }
  // Polygons keep their vertices bit for bit.
  const auto r = random_polygon_pair(3);
  const auto back = parse_shape_file(Json::parse(
      Json{{"version", 1}, {"shapes", Json::array({body_json(r.l)})}}.dump()));
  ASSERT_EQ(back.shapes[0].body.size(), r.l.size());
  for (std::size_t k = 0; k < r.l.size(); ++k) {
    EXPECT_EQ(start_point(back.shapes[0].body.pieces()[k]), start_point(r.l.pieces()[k]));
  }
  EXPECT_EQ(body_json(make_disk({1, 2}, 3))["kind"], "disk");
}

// ---- report documents -------------------------------------------------------------------

ReportDocument CatalogDocument() {
  ReportDocument doc;
  doc.grid_n = 2048;
  doc.tol = 1e-9;
  for (const auto& name : named_pair_names()) {
    const auto p = make_named_pair(name);
    doc.pairs.push_back({p.name + ".D", p.name + ".L", crossing_report(p.d, p.l), std::nullopt,
                         std::nullopt, std::nullopt});
  }
  doc.pairs[0].oracle = OracleResult{2048, 2, 2, true, true};
  doc.pairs[1].timing_ms = 0.1 + 0.2;
  doc.pairs.push_back({"x", "y", {}, std::nullopt, std::string("interiors do not meet"), std::nullopt});
  return doc;
}

TEST(ReportDocumentTest, RoundTripIsLossless) {
  const ReportDocument doc = CatalogDocument();
  const std::string text = document_json(doc).dump(2);
  const ReportDocument back = document_from_json(Json::parse(text));
  EXPECT_EQ(document_json(back).dump(2), text);
  ASSERT_EQ(back.pairs.size(), doc.pairs.size());
  for (std::size_t i = 0; i + 1 < doc.pairs.size(); ++i) {
    const auto& a = doc.pairs[i].report;
    const auto& b = back.pairs[i].report;
    ASSERT_EQ(a.lines.size(), b.lines.size());
    for (std::size_t k = 0; k < a.lines.size(); ++k) {
      EXPECT_EQ(a.lines[k].alpha(), b.lines[k].alpha());
      EXPECT_EQ(a.lines[k].line.dir.unit(), b.lines[k].line.dir.unit());
      EXPECT_EQ(a.lines[k].first.point, b.lines[k].first.point);
      EXPECT_EQ(a.lines[k].last.owner, b.lines[k].last.owner);
      EXPECT_EQ(a.lines[k].contact_d.last_pos, b.lines[k].contact_d.last_pos);
    }
    EXPECT_EQ(a.lambda_witness.has_value(), b.lambda_witness.has_value());
    EXPECT_EQ(a.components_dl, b.components_dl);
    EXPECT_EQ(a.flags, b.flags);
  }
  EXPECT_EQ(back.pairs[1].timing_ms, 0.1 + 0.2);
  EXPECT_EQ(*back.pairs.back().error, "interiors do not meet");
}

TEST(ReportDocumentTest, SerializationIsDeterministic) {
  EXPECT_EQ(document_json(CatalogDocument()).dump(2), document_json(CatalogDocument()).dump(2));
}

TEST(ReportDocumentTest, MalformedDocumentNamesTheField) {
  Json j = document_json(CatalogDocument());
  j["pairs"][1]["report"]["lines"][2]["first"]["owner"] = "nobody";
  try {
    document_from_json(j);
    FAIL() << "expected an error";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.path(), "pairs[1].report.lines[2].first.owner");
  }
}

// ---- svg ---------------------------------------------------------------------------------

std::string Render(const NamedPair& p) { return render_svg(p.d, p.l, crossing_report(p.d, p.l)); }

TEST(SvgTest, OctagonShowsTwoArcProfilesPerBody) {
  const std::string svg = Render(make_octagon_pair());
  EXPECT_EQ(Count(svg, "data-body=\"D\" fill=\"none\""), 8);
  EXPECT_EQ(Count(svg, "data-profile=\"parabolic\""), 4);
  EXPECT_EQ(Count(svg, "data-profile=\"quartic\""), 4);
  EXPECT_EQ(Count(svg, "class=\"support-line\""), 4);
  EXPECT_EQ(Count(svg, "class=\"ear ear-d\""), 2);
  EXPECT_EQ(Count(svg, "class=\"ear ear-l\""), 2);
}

TEST(SvgTest, HexagonHasFourDirectedLines) {
  const std::string svg = Render(make_hexagon_pair());
  EXPECT_EQ(Count(svg, "<polyline class=\"support-line\""), 4);
  EXPECT_EQ(Count(svg, "marker-end=\"url(#arrow)\""), 4);
  EXPECT_EQ(Count(svg, "marker-mid=\"url(#half-arrow)\""), 4);
  EXPECT_EQ(Count(svg, "data-first=\"D only\""), 2);
  EXPECT_EQ(Count(svg, "data-kind=\"circular_arc\""), 4);
}

TEST(SvgTest, DiskIsOneCircle) {
  const std::string svg = Render(make_disk_pair(RigidMotion::translate({1.0, 0.0})));
  EXPECT_EQ(Count(svg, "<circle class=\"body\" data-body=\"D\""), 1);
  EXPECT_EQ(Count(svg, "<circle"), 2);
  EXPECT_EQ(Count(svg, "data-body=\"D\" fill=\"none\" stroke=\"#202020\" stroke-width=\"0.012000\""), 1);
}

TEST(SvgTest, NestedBodiesShadeARing) {
  const std::string svg = render_svg(make_disk({0, 0}, 2), make_disk({0, 0}, 1), {});
  EXPECT_EQ(Count(svg, "class=\"ear ear-d\""), 1);
  EXPECT_EQ(Count(svg, "class=\"ear ear-l\""), 0);
  const std::regex two_loops("class=\"ear ear-d\"[^>]*d=\"M[^Z]*Z M[^Z]*Z\"");
  EXPECT_TRUE(std::regex_search(svg, two_loops));
}

TEST(SvgTest, CoordinatesAreFlippedAndFixedPrecision) {
  const std::string svg = render_svg(make_polygon({{0, 0}, {1, 0}, {1, 2}}), make_disk({5, 0}, 1), {});
  EXPECT_NE(svg.find("viewBox=\"-0.900000 -2.900000 7.800000 4.800000\""), std::string::npos);
  EXPECT_NE(svg.find("M1.000000,0.000000 L1.000000,-2.000000"), std::string::npos);
  EXPECT_EQ(svg, render_svg(make_polygon({{0, 0}, {1, 0}, {1, 2}}), make_disk({5, 0}, 1), {}));
}

}  // namespace
}  // namespace crosskit
