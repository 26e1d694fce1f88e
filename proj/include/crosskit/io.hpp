#pragma once

// Shape files and report documents as JSON.
//
// A shape file is {"version": 1, "shapes": [...], "pairs": [...]} where each
// shape record has a "kind" of disk, polygon, ellipse, pieces, named or
// transform.  Angles are in degrees in files and radians in memory.  The
// optional "pairs" list names the body pairs to evaluate by index or id.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "crosskit/body.hpp"
#include "crosskit/constructions.hpp"
#include "crosskit/crossing.hpp"

namespace crosskit {

using Json = nlohmann::ordered_json;

/// Invalid shape file or report document; path names the offending field,
/// e.g. "shapes[2].radius".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

struct ShapeEntry {
  std::string id;     // user id, or the record path when none is given
  std::string label;  // record path, e.g. "shapes[1]" or "shapes[0].L"
  ConvexBody body;
};

struct PairSpec {
  std::size_t d = 0;
  std::size_t l = 1;
  std::optional<CrossingTruth> expect;
};

struct ShapeFile {
  std::vector<ShapeEntry> shapes;
  std::vector<PairSpec> pairs;
};

inline double deg_to_rad(double deg) { return deg * (kPi / 180.0); }
inline double rad_to_deg(double rad) { return rad * (180.0 / kPi); }

namespace detail {

inline std::string at_key(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}
inline std::string at_index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

inline const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(at_key(path, key), "missing required field");
  return *it;
}

inline double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

inline Point2 as_point(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [x, y]");
  return {as_number(j[0], at_index(path, 0)), as_number(j[1], at_index(path, 1))};
}

inline bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) throw SchemaError(path, "expected true or false");
  return j.get<bool>();
}

inline std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

inline double number_or(const Json& obj, const std::string& key, const std::string& path,
                        double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : as_number(*it, at_key(path, key));
}

inline Point2 point_or(const Json& obj, const std::string& key, const std::string& path,
                       Point2 fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : as_point(*it, at_key(path, key));
}

inline double positive(const Json& obj, const std::string& key, const std::string& path) {
  const double v = as_number(require(obj, key, path), at_key(path, key));
  if (!(v > 0.0)) throw SchemaError(at_key(path, key), "must be positive");
  return v;
}

inline BoundaryPiece parse_piece(const Json& j, const std::string& path) {
  const std::string type = as_string(require(j, "type", path), at_key(path, "type"));
  if (type == "segment") {
    const Point2 from = as_point(require(j, "from", path), at_key(path, "from"));
    return Segment{from, as_point(require(j, "to", path), at_key(path, "to"))};
  }
  if (type == "circular_arc") {
    const double start = as_number(require(j, "start_deg", path), at_key(path, "start_deg"));
    const double end = as_number(require(j, "end_deg", path), at_key(path, "end_deg"));
    if (!(end > start) || end - start > 360.0) {
      throw SchemaError(at_key(path, "end_deg"), "must exceed start_deg by at most 360");
    }
    const Point2 center = as_point(require(j, "center", path), at_key(path, "center"));
    const double radius = positive(j, "radius", path);
    return CircularArc{center, radius, deg_to_rad(start), deg_to_rad(end)};
  }
  if (type == "elliptic_arc") {
    const double t0 = as_number(require(j, "t_begin_deg", path), at_key(path, "t_begin_deg"));
    const double t1 = as_number(require(j, "t_end_deg", path), at_key(path, "t_end_deg"));
    if (!(t1 > t0) || t1 - t0 > 360.0) {
      throw SchemaError(at_key(path, "t_end_deg"), "must exceed t_begin_deg by at most 360");
    }
    const Point2 center = as_point(require(j, "center", path), at_key(path, "center"));
    const double a = positive(j, "a", path);
    const double b = positive(j, "b", path);
    const double rotation = reduce_angle(deg_to_rad(number_or(j, "rotation_deg", path, 0.0)));
    return EllipticArc{center, a, b, rotation, deg_to_rad(t0), deg_to_rad(t1)};
  }
  if (type == "graph_arc") {
    const std::string profile = as_string(require(j, "profile", path), at_key(path, "profile"));
    GraphProfile gp;
    if (profile == "parabolic") {
      gp = GraphProfile::kParabolic;
    } else if (profile == "quartic") {
      gp = GraphProfile::kQuartic;
    } else {
      throw SchemaError(at_key(path, "profile"), "expected \"parabolic\" or \"quartic\"");
    }
    const Point2 origin = as_point(require(j, "origin", path), at_key(path, "origin"));
    const double scale = positive(j, "scale", path);
    return GraphArc{gp, origin, scale, deg_to_rad(number_or(j, "rotation_deg", path, 0.0))};
  }
  throw SchemaError(at_key(path, "type"),
                    "unknown piece type \"" + type + "\" (segment, circular_arc, elliptic_arc, graph_arc)");
}

inline ConvexBody named_body(const std::string& name, const std::string& path) {
  if (name == "octagon") return make_octagon_body();
  if (name == "hexagon") return make_hexagon_body();
  if (name == "unit_disk") return make_disk({0, 0}, 1.0);
  throw SchemaError(path, "unknown named construction \"" + name + "\"");
}

inline bool is_pair_name(const std::string& name) {
  for (const auto& n : named_pair_names()) {
    if (n == name) return true;
  }
  return false;
}

/// Parses one shape record into one body, or two for a named pair.
inline std::vector<ConvexBody> parse_bodies(const Json& j, const std::string& path) {
  const std::string kind = as_string(require(j, "kind", path), at_key(path, "kind"));
  try {
    if (kind == "disk") {
      const Point2 center = as_point(require(j, "center", path), at_key(path, "center"));
      return {make_disk(center, positive(j, "radius", path))};
    }
    if (kind == "polygon") {
      const Json& vs = require(j, "vertices", path);
      const std::string vpath = at_key(path, "vertices");
      if (!vs.is_array()) throw SchemaError(vpath, "expected an array of [x, y]");
      std::vector<Point2> pts;
      for (std::size_t i = 0; i < vs.size(); ++i) pts.push_back(as_point(vs[i], at_index(vpath, i)));
      return {make_polygon(pts)};
    }
    if (kind == "ellipse") {
      const Point2 center = as_point(require(j, "center", path), at_key(path, "center"));
      const double a = positive(j, "a", path);
      const double b = positive(j, "b", path);
      return {make_ellipse(center, a, b, deg_to_rad(number_or(j, "angle", path, 0.0)))};
    }
    if (kind == "pieces") {
      const Json& ps = require(j, "pieces", path);
      const std::string ppath = at_key(path, "pieces");
      if (!ps.is_array() || ps.empty()) throw SchemaError(ppath, "expected a non-empty array");
      std::vector<BoundaryPiece> pieces;
      for (std::size_t i = 0; i < ps.size(); ++i) pieces.push_back(parse_piece(ps[i], at_index(ppath, i)));
      ConvexBody body = ConvexBody::from_pieces(std::move(pieces));
      if (const auto v = validate(body); !v.empty()) {
        throw SchemaError(at_index(ppath, v.front().piece), v.front().what);
      }
      return {body};
    }
    if (kind == "named") {
      const std::string name = as_string(require(j, "name", path), at_key(path, "name"));
      if (!is_pair_name(name)) return {named_body(name, at_key(path, "name"))};
      NamedPair p;
      if (name == "ellipse_pair") {
        p = make_ellipse_pair(number_or(j, "a", path, 2.0), number_or(j, "b", path, 1.0));
      } else {
        p = make_named_pair(name);
      }
      return {p.d, p.l};
    }
    if (kind == "transform") {
      const std::string bpath = at_key(path, "base");
      const auto base = parse_bodies(require(j, "base", path), bpath);
      if (base.size() != 1) throw SchemaError(bpath, "must describe a single body");
      const Point2 about = point_or(j, "about", path, {0, 0});
      const double turn = deg_to_rad(number_or(j, "rotate_deg", path, 0.0));
      const Vec2 shift = point_or(j, "translate", path, {0, 0});
      bool reflect = false;
      if (const auto it = j.find("reflect"); it != j.end()) reflect = as_bool(*it, at_key(path, "reflect"));
      // Mirror in the horizontal line through `about`, turn about it, then shift.
      RigidMotion m = reflect ? RigidMotion::reflect_across(about, 0.0) : RigidMotion{};
      m = RigidMotion::rotate_about(about, turn).after(m);
      m = RigidMotion::translate(shift).after(m);
      return {apply_motion(m, base.front())};
    }
  } catch (const ShapeError& e) {
    const std::string what = e.what();
    const std::string prefix = e.field() + ": ";
    throw SchemaError(at_key(path, e.field()),
                      what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what);
  }
  throw SchemaError(at_key(path, "kind"), "unknown kind \"" + kind +
                                              "\" (disk, polygon, ellipse, pieces, named, transform)");
}

inline std::size_t resolve_ref(const Json& j, const std::vector<ShapeEntry>& shapes,
                               const std::string& path) {
  if (j.is_number_integer()) {
    const auto i = j.get<long long>();
    if (i < 0 || static_cast<std::size_t>(i) >= shapes.size()) throw SchemaError(path, "index out of range");
    return static_cast<std::size_t>(i);
  }
  if (j.is_string()) {
    const std::string id = j.get<std::string>();
    for (std::size_t i = 0; i < shapes.size(); ++i) {
      if (shapes[i].id == id) return i;
    }
    throw SchemaError(path, "no shape with id \"" + id + "\"");
  }
  throw SchemaError(path, "expected a shape index or id");
}

inline CrossingTruth parse_truth(const Json& j, const std::string& path, CrossingTruth base) {
  if (!j.is_object()) throw SchemaError(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string p = at_key(path, key);
    if (key == "beta") base.beta = as_bool(value, p);
    else if (key == "lambda") base.lambda = as_bool(value, p);
    else if (key == "rho") base.rho = as_bool(value, p);
    else if (key == "epsilon") base.epsilon = as_bool(value, p);
    else if (key == "tau") base.tau = as_bool(value, p);
    else throw SchemaError(p, "unknown predicate (beta, lambda, rho, epsilon, tau)");
  }
  return base;
}

}  // namespace detail

/// Parses a shape document.  Named pairs contribute two bodies, labelled
/// "<path>.D" and "<path>.L" (ids "<id>.D" and "<id>.L").
inline ShapeFile parse_shape_file(const Json& doc) {
  using namespace detail;
  if (!doc.is_object()) throw SchemaError("$", "expected an object");
  const Json& version = require(doc, "version", "");
  if (!version.is_number_integer() || version.get<long long>() != 1) {
    throw SchemaError("version", "unsupported version (expected 1)");
  }
  const Json& shapes = require(doc, "shapes", "");
  if (!shapes.is_array()) throw SchemaError("shapes", "expected an array");
  ShapeFile file;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    const std::string path = at_index("shapes", i);
    std::string id = path;
    if (shapes[i].is_object()) {
      if (const auto it = shapes[i].find("id"); it != shapes[i].end()) id = as_string(*it, at_key(path, "id"));
    }
    const auto bodies = parse_bodies(shapes[i], path);
    if (bodies.size() == 1) {
      file.shapes.push_back({id, path, bodies[0]});
    } else {
      file.shapes.push_back({id + ".D", path + ".D", bodies[0]});
      file.shapes.push_back({id + ".L", path + ".L", bodies[1]});
    }
  }
  if (const auto it = doc.find("pairs"); it != doc.end()) {
    if (!it->is_array()) throw SchemaError("pairs", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string path = at_index("pairs", i);
      const Json& pj = (*it)[i];
      PairSpec ps;
      ps.d = resolve_ref(require(pj, "d", path), file.shapes, at_key(path, "d"));
      ps.l = resolve_ref(require(pj, "l", path), file.shapes, at_key(path, "l"));
      if (const auto e = pj.find("expect"); e != pj.end()) {
        ps.expect = parse_truth(*e, at_key(path, "expect"), {});
      }
      file.pairs.push_back(ps);
    }
  }
  return file;
}

inline ShapeFile parse_shape_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("$", std::string("invalid JSON: ") + e.what());
  }
  return parse_shape_file(doc);
}

// ---- bodies to JSON ---------------------------------------------------------------------

inline Json point_json(Point2 p) { return Json::array({p.x, p.y}); }

inline Json piece_json(const BoundaryPiece& piece) {
  if (const auto* s = std::get_if<Segment>(&piece)) {
    return {{"type", "segment"}, {"from", point_json(s->a)}, {"to", point_json(s->b)}};
  }
  if (const auto* c = std::get_if<CircularArc>(&piece)) {
    return {{"type", "circular_arc"}, {"center", point_json(c->center)}, {"radius", c->radius},
            {"start_deg", rad_to_deg(c->start_angle)}, {"end_deg", rad_to_deg(c->end_angle)}};
  }
  if (const auto* e = std::get_if<EllipticArc>(&piece)) {
    return {{"type", "elliptic_arc"}, {"center", point_json(e->center)}, {"a", e->a}, {"b", e->b},
            {"rotation_deg", rad_to_deg(e->rotation)}, {"t_begin_deg", rad_to_deg(e->t_begin)},
            {"t_end_deg", rad_to_deg(e->t_end)}};
  }
  const auto& g = std::get<GraphArc>(piece);
  return {{"type", "graph_arc"}, {"profile", std::string(to_string(g.profile))},
          {"origin", point_json(g.origin)}, {"scale", g.scale}, {"rotation_deg", rad_to_deg(g.rotation)}};
}

/// Shape record for a two-dimensional body.  Polygons keep their exact
/// vertices; curved pieces go through degrees.
inline Json body_json(const ConvexBody& body) {
  if (body.is_degenerate()) throw GeometryError("cannot serialize a degenerate body");
  if (body.all_segments()) {
    Json vs = Json::array();
    for (const auto& piece : body.pieces()) vs.push_back(point_json(std::get<Segment>(piece).a));
    return {{"kind", "polygon"}, {"vertices", vs}};
  }
  if (body.size() == 1) {
    if (const auto* c = std::get_if<CircularArc>(&body.pieces()[0]);
        c && c->end_angle - c->start_angle >= kTwoPi - 1e-15) {
      return {{"kind", "disk"}, {"center", point_json(c->center)}, {"radius", c->radius}};
    }
  }
  Json ps = Json::array();
  for (const auto& piece : body.pieces()) ps.push_back(piece_json(piece));
  return {{"kind", "pieces"}, {"pieces", ps}};
}

inline Json truth_json(const CrossingTruth& t) {
  return {{"beta", t.beta}, {"lambda", t.lambda}, {"rho", t.rho}, {"epsilon", t.epsilon}, {"tau", t.tau}};
}

// ---- report documents -------------------------------------------------------------------

struct OracleResult {
  int grid_n = 0;
  int dl = 0;
  int ld = 0;
  bool tau = false;
  bool agrees = false;
};

struct PairResult {
  std::string d;
  std::string l;
  CrossingReport report;
  std::optional<OracleResult> oracle;
  std::optional<std::string> error;
  /// Wall time, only recorded on request so default output stays
  /// byte-identical between runs.
  std::optional<double> timing_ms;
};

struct ReportDocument {
  int version = 1;
  int grid_n = 0;
  double tol = 0.0;
  std::vector<PairResult> pairs;
};

namespace detail {

inline const char* owner_key(Owner o) {
  switch (o) {
    case Owner::kDOnly: return "D";
    case Owner::kLOnly: return "L";
    case Owner::kBoth: return "both";
    case Owner::kAmbiguous: return "ambiguous";
  }
  return "ambiguous";
}

inline Owner owner_from(const Json& j, const std::string& path) {
  const std::string s = as_string(j, path);
  if (s == "D") return Owner::kDOnly;
  if (s == "L") return Owner::kLOnly;
  if (s == "both") return Owner::kBoth;
  if (s == "ambiguous") return Owner::kAmbiguous;
  throw SchemaError(path, "unknown owner \"" + s + "\"");
}

inline Json contact_json(const ContactSet& c) {
  return {{"alpha", c.dir.alpha()}, {"offset", c.offset}, {"first", point_json(c.first)},
          {"last", point_json(c.last)}, {"first_pos", c.first_pos}, {"last_pos", c.last_pos}};
}

inline ContactSet contact_from(const Json& j, const std::string& path) {
  ContactSet c;
  c.dir = Direction(as_number(require(j, "alpha", path), at_key(path, "alpha")));
  c.offset = as_number(require(j, "offset", path), at_key(path, "offset"));
  c.first = as_point(require(j, "first", path), at_key(path, "first"));
  c.last = as_point(require(j, "last", path), at_key(path, "last"));
  c.first_pos = as_number(require(j, "first_pos", path), at_key(path, "first_pos"));
  c.last_pos = as_number(require(j, "last_pos", path), at_key(path, "last_pos"));
  return c;
}

inline Json line_json(const CommonSupportingLine& t) {
  return {{"alpha", t.alpha()},
          {"offset", t.line.offset},
          {"first", {{"point", point_json(t.first.point)}, {"owner", owner_key(t.first.owner)}}},
          {"last", {{"point", point_json(t.last.point)}, {"owner", owner_key(t.last.owner)}}},
          {"contact_d", contact_json(t.contact_d)},
          {"contact_l", contact_json(t.contact_l)},
          {"from_interval", t.from_interval}};
}

inline ClassifiedPoint classified_from(const Json& j, const std::string& path) {
  return {as_point(require(j, "point", path), at_key(path, "point")),
          owner_from(require(j, "owner", path), at_key(path, "owner"))};
}

inline CommonSupportingLine line_from(const Json& j, const std::string& path) {
  CommonSupportingLine t;
  t.line.dir = Direction(as_number(require(j, "alpha", path), at_key(path, "alpha")));
  t.line.offset = as_number(require(j, "offset", path), at_key(path, "offset"));
  t.first = classified_from(require(j, "first", path), at_key(path, "first"));
  t.last = classified_from(require(j, "last", path), at_key(path, "last"));
  t.contact_d = contact_from(require(j, "contact_d", path), at_key(path, "contact_d"));
  t.contact_l = contact_from(require(j, "contact_l", path), at_key(path, "contact_l"));
  t.from_interval = as_bool(require(j, "from_interval", path), at_key(path, "from_interval"));
  return t;
}

inline Json witness_json(const std::optional<SlideWitness>& w) {
  if (!w) return nullptr;
  return {{"t", line_json(w->t)}, {"t2", line_json(w->t2)}, {"opposite", w->opposite}};
}

inline std::optional<SlideWitness> witness_from(const Json& j, const std::string& path) {
  if (j.is_null()) return std::nullopt;
  return SlideWitness{line_from(require(j, "t", path), at_key(path, "t")),
                      line_from(require(j, "t2", path), at_key(path, "t2")),
                      as_bool(require(j, "opposite", path), at_key(path, "opposite"))};
}

inline int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw SchemaError(path, "expected an integer");
  return j.get<int>();
}

}  // namespace detail

inline Json report_json(const CrossingReport& r) {
  using namespace detail;
  Json lines = Json::array(), intervals = Json::array(), flags = Json::array();
  for (const auto& t : r.lines) lines.push_back(line_json(t));
  for (const auto& iv : r.intervals) intervals.push_back({{"begin", iv.begin}, {"end", iv.end}});
  for (const auto& f : r.flags) flags.push_back(f);
  return {{"beta", r.beta},
          {"lambda", r.lambda},
          {"rho", r.rho},
          {"epsilon", r.epsilon},
          {"tau", r.tau},
          {"components", {{"d_minus_l", r.components_dl}, {"l_minus_d", r.components_ld}}},
          {"lambda_witness", witness_json(r.lambda_witness)},
          {"rho_witness", witness_json(r.rho_witness)},
          {"lines", lines},
          {"intervals", intervals},
          {"flags", flags}};
}

inline CrossingReport report_from_json(const Json& j, const std::string& path) {
  using namespace detail;
  CrossingReport r;
  r.beta = as_bool(require(j, "beta", path), at_key(path, "beta"));
  r.lambda = as_bool(require(j, "lambda", path), at_key(path, "lambda"));
  r.rho = as_bool(require(j, "rho", path), at_key(path, "rho"));
  r.epsilon = as_bool(require(j, "epsilon", path), at_key(path, "epsilon"));
  r.tau = as_bool(require(j, "tau", path), at_key(path, "tau"));
  const std::string cpath = at_key(path, "components");
  const Json& comp = require(j, "components", path);
  r.components_dl = as_int(require(comp, "d_minus_l", cpath), at_key(cpath, "d_minus_l"));
  r.components_ld = as_int(require(comp, "l_minus_d", cpath), at_key(cpath, "l_minus_d"));
  r.lambda_witness = witness_from(require(j, "lambda_witness", path), at_key(path, "lambda_witness"));
  r.rho_witness = witness_from(require(j, "rho_witness", path), at_key(path, "rho_witness"));
  const Json& lines = require(j, "lines", path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    r.lines.push_back(line_from(lines[i], at_index(at_key(path, "lines"), i)));
  }
  const Json& intervals = require(j, "intervals", path);
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const std::string ip = at_index(at_key(path, "intervals"), i);
    r.intervals.push_back({as_number(require(intervals[i], "begin", ip), at_key(ip, "begin")),
                           as_number(require(intervals[i], "end", ip), at_key(ip, "end"))});
  }
  const Json& flags = require(j, "flags", path);
  for (std::size_t i = 0; i < flags.size(); ++i) {
    r.flags.push_back(as_string(flags[i], at_index(at_key(path, "flags"), i)));
  }
  return r;
}

inline Json document_json(const ReportDocument& doc) {
  Json pairs = Json::array();
  for (const auto& p : doc.pairs) {
    Json pj = {{"d", p.d}, {"l", p.l}};
    if (p.error) {
      pj["error"] = *p.error;
    } else {
      pj["report"] = report_json(p.report);
    }
    if (p.oracle) {
      pj["oracle"] = {{"grid_n", p.oracle->grid_n},
                      {"d_minus_l", p.oracle->dl},
                      {"l_minus_d", p.oracle->ld},
                      {"tau", p.oracle->tau},
                      {"agrees", p.oracle->agrees}};
    }
    if (p.timing_ms) pj["timing_ms"] = *p.timing_ms;
    pairs.push_back(pj);
  }
  return {{"version", doc.version}, {"grid_n", doc.grid_n}, {"tol", doc.tol}, {"pairs", pairs}};
}

inline ReportDocument document_from_json(const Json& j) {
  using namespace detail;
  ReportDocument doc;
  doc.version = as_int(require(j, "version", ""), "version");
  doc.grid_n = as_int(require(j, "grid_n", ""), "grid_n");
  doc.tol = as_number(require(j, "tol", ""), "tol");
  const Json& pairs = require(j, "pairs", "");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string path = at_index("pairs", i);
    const Json& pj = pairs[i];
    PairResult p;
    p.d = as_string(require(pj, "d", path), at_key(path, "d"));
    p.l = as_string(require(pj, "l", path), at_key(path, "l"));
    if (const auto it = pj.find("error"); it != pj.end()) {
      p.error = as_string(*it, at_key(path, "error"));
    } else {
      p.report = report_from_json(require(pj, "report", path), at_key(path, "report"));
    }
    if (const auto it = pj.find("oracle"); it != pj.end()) {
      const std::string op = at_key(path, "oracle");
      p.oracle = OracleResult{as_int(require(*it, "grid_n", op), at_key(op, "grid_n")),
                              as_int(require(*it, "d_minus_l", op), at_key(op, "d_minus_l")),
                              as_int(require(*it, "l_minus_d", op), at_key(op, "l_minus_d")),
                              as_bool(require(*it, "tau", op), at_key(op, "tau")),
                              as_bool(require(*it, "agrees", op), at_key(op, "agrees"))};
    }
    if (const auto it = pj.find("timing_ms"); it != pj.end()) {
      p.timing_ms = as_number(*it, at_key(path, "timing_ms"));
    }
    doc.pairs.push_back(std::move(p));
  }
  return doc;
}

}  // namespace crosskit
