// crosskit: evaluate, check and draw crossing predicates of convex bodies.
//
//   crosskit eval [FILE] [--pair NAME]... [--grid-n N] [--tol T] [--oracle] [--json]
//   crosskit hierarchy [--random N] [--seed S] [--file FILE] [--replay-out PATH]
//   crosskit render [FILE] [--pair NAME] [-o OUT.svg]
//   crosskit export NAME
//
// Exit codes: 0 clean, 1 error, 2 ambiguity flags, 3 hierarchy violation.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crosskit/constructions.hpp"
#include "crosskit/crossing.hpp"
#include "crosskit/io.hpp"
#include "crosskit/raster.hpp"
#include "crosskit/svg.hpp"

namespace {

using namespace crosskit;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAmbiguous = 2;
constexpr int kExitViolation = 3;

struct LoadedPair {
  std::string d_name;
  std::string l_name;
  ConvexBody d;
  ConvexBody l;
  std::optional<CrossingTruth> expect;
};

/// Catalog pair names, plus random_<seed> for the seeded random pairs.
NamedPair named_or_random(const std::string& name) {
  const std::string prefix = "random_";
  if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
    const std::string digits = name.substr(prefix.size());
    if (digits.find_first_not_of("0123456789") == std::string::npos) {
      return random_polygon_pair(std::stoull(digits));
    }
  }
  return make_named_pair(name);
}

LoadedPair from_named(const NamedPair& p) {
  return {p.name + ".D", p.name + ".L", p.d, p.l, p.expected};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<LoadedPair> pairs_from_file(const std::string& path) {
  const ShapeFile file = parse_shape_text(read_file(path));
  std::vector<PairSpec> specs = file.pairs;
  if (specs.empty()) {
    if (file.shapes.size() != 2) {
      throw SchemaError("pairs", "required unless the file describes exactly two bodies");
    }
    specs.push_back({0, 1, std::nullopt});
  }
  std::vector<LoadedPair> out;
  for (const auto& s : specs) {
    out.push_back({file.shapes[s.d].id, file.shapes[s.l].id, file.shapes[s.d].body,
                   file.shapes[s.l].body, s.expect});
  }
  return out;
}

std::vector<LoadedPair> select_pairs(const std::string& file, const std::vector<std::string>& names) {
  std::vector<LoadedPair> out;
  if (!file.empty()) out = pairs_from_file(file);
  for (const auto& n : names) {
    try {
      out.push_back(from_named(named_or_random(n)));
    } catch (const ShapeError&) {
      throw SchemaError("--pair", "unknown pair \"" + n + "\"");
    }
  }
  if (file.empty() && names.empty()) {
    for (const auto& n : named_pair_names()) out.push_back(from_named(make_named_pair(n)));
  }
  return out;
}

int default_grid() {
  const char* env = std::getenv("CROSSKIT_DEFAULT_GRID");
  if (env == nullptr || *env == '\0') return 2048;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 64 || v > 65536) {
    throw SchemaError("CROSSKIT_DEFAULT_GRID", "expected an integer in [64, 65536]");
  }
  return static_cast<int>(v);
}

CrossingTruth truth_of(const CrossingReport& r) { return {r.beta, r.lambda, r.rho, r.epsilon, r.tau}; }

std::string truth_letters(const CrossingTruth& t) {
  std::string s;
  for (bool b : {t.beta, t.lambda, t.rho, t.epsilon, t.tau}) s += b ? 'T' : 'F';
  return s;
}

void print_text(std::ostream& os, const PairResult& p, const std::optional<CrossingTruth>& expect) {
  os << p.d << " vs " << p.l << ": ";
  if (p.error) {
    os << "error: " << *p.error << "\n";
    return;
  }
  const auto& r = p.report;
  os << "beta=" << r.beta << " lambda=" << r.lambda << " rho=" << r.rho << " epsilon=" << r.epsilon
     << " tau=" << r.tau << " (" << truth_letters(truth_of(r)) << ")  components " << r.components_dl
     << "/" << r.components_ld << "  common lines " << r.lines.size();
  if (!r.intervals.empty()) os << "  zero intervals " << r.intervals.size();
  os << "\n";
  for (const auto& t : r.lines) {
    os << "  line alpha=" << detail::fmt(t.alpha()) << " offset=" << detail::fmt(t.line.offset)
       << " first " << to_string(t.first.owner) << " last " << to_string(t.last.owner) << "\n";
  }
  if (p.oracle) {
    os << "  raster " << p.oracle->grid_n << ": components " << p.oracle->dl << "/" << p.oracle->ld
       << " tau=" << p.oracle->tau << (p.oracle->agrees ? " (agrees)" : " (DISAGREES)") << "\n";
  }
  if (expect && !(*expect == truth_of(r))) {
    os << "  expected " << truth_letters(*expect) << "\n";
  }
  for (const auto& f : r.flags) os << "  flag: " << f << "\n";
  if (p.timing_ms) os << "  time " << detail::fmt(*p.timing_ms) << " ms\n";
}

// ---- eval -------------------------------------------------------------------------------

struct EvalOptions {
  std::string file;
  std::vector<std::string> names;
  std::optional<int> grid_n;
  double tol = kTieTol;
  bool oracle = false;
  bool json = false;
  bool timing = false;
};

int run_eval(const EvalOptions& o) {
  const int grid_n = o.grid_n ? *o.grid_n : default_grid();
  if (grid_n < 64) throw SchemaError("--grid-n", "raster resolution below 64");
  if (!(o.tol > 0.0)) throw SchemaError("--tol", "must be positive");
  CrossingConfig cfg;
  cfg.member_tol = o.tol;
  cfg.assert_consistency = false;

  ReportDocument doc;
  doc.grid_n = grid_n;
  doc.tol = o.tol;
  bool ambiguous = false, failed = false, mismatch = false;
  std::vector<std::optional<CrossingTruth>> expects;
  for (const auto& lp : select_pairs(o.file, o.names)) {
    PairResult pr;
    pr.d = lp.d_name;
    pr.l = lp.l_name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      pr.report = crossing_report(lp.d, lp.l, cfg);
      if (o.oracle) {
        const OracleCounts oc = oracle_counts(lp.d, lp.l, grid_n);
        pr.oracle = OracleResult{grid_n, oc.dl, oc.ld, oc.crossing(), oc.crossing() == pr.report.tau};
      }
      ambiguous = ambiguous || pr.report.ambiguous();
      if (lp.expect && !(*lp.expect == truth_of(pr.report))) mismatch = true;
    } catch (const GeometryError& e) {
      pr.error = e.what();
      failed = true;
    }
    if (o.timing) {
      pr.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
    doc.pairs.push_back(std::move(pr));
    expects.push_back(lp.expect);
  }

  if (o.json) {
    std::cout << document_json(doc).dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < doc.pairs.size(); ++i) print_text(std::cout, doc.pairs[i], expects[i]);
  }
  if (mismatch) std::cerr << "error: a report differs from its expected values\n";
  if (failed || mismatch) return kExitError;
  return ambiguous ? kExitAmbiguous : kExitOk;
}

// ---- hierarchy --------------------------------------------------------------------------

struct HierarchyOptions {
  int random = 10000;
  std::uint64_t seed = 1;
  bool catalog = true;
  std::string file;
  std::string replay_out = "crosskit-replay.json";
  double tol = kTieTol;
};

struct Implication {
  const char* name;
  bool (*holds)(const CrossingTruth&);
};

const Implication kImplications[] = {
    {"beta => lambda", [](const CrossingTruth& t) { return !t.beta || t.lambda; }},
    {"beta => rho", [](const CrossingTruth& t) { return !t.beta || t.rho; }},
    {"lambda => epsilon", [](const CrossingTruth& t) { return !t.lambda || t.epsilon; }},
    {"rho => epsilon", [](const CrossingTruth& t) { return !t.rho || t.epsilon; }},
    {"epsilon => tau", [](const CrossingTruth& t) { return !t.epsilon || t.tau; }},
};

void write_replay(const std::string& path, const LoadedPair& p, const std::string& reason) {
  Json doc = {{"version", 1},
              {"note", reason},
              {"shapes", Json::array({body_json(p.d), body_json(p.l)})},
              {"pairs", Json::array({Json{{"d", 0}, {"l", 1}}})}};
  doc["shapes"][0]["id"] = p.d_name;
  doc["shapes"][1]["id"] = p.l_name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

int run_hierarchy(const HierarchyOptions& o) {
  if (o.random < 0) throw SchemaError("--random", "must not be negative");
  CrossingConfig cfg;
  cfg.member_tol = o.tol;
  cfg.assert_consistency = false;

  std::vector<LoadedPair> pairs;
  if (o.catalog) {
    for (const auto& n : named_pair_names()) pairs.push_back(from_named(make_named_pair(n)));
  }
  if (!o.file.empty()) {
    for (auto& p : pairs_from_file(o.file)) pairs.push_back(std::move(p));
  }
  for (int i = 0; i < o.random; ++i) pairs.push_back(from_named(random_polygon_pair(o.seed + i)));

  int evaluated = 0, excluded = 0, violations = 0;
  int counts[5] = {0, 0, 0, 0, 0};
  std::optional<std::string> first_violation;
  for (const auto& p : pairs) {
    CrossingReport r;
    try {
      r = crossing_report(p.d, p.l, cfg);
    } catch (const GeometryError& e) {
      std::cerr << "error: " << p.d_name << " vs " << p.l_name << ": " << e.what() << "\n";
      return kExitError;
    }
    if (r.ambiguous()) {
      ++excluded;
      std::cerr << "excluded " << p.d_name << " vs " << p.l_name << ":";
      for (const auto& f : r.flags) std::cerr << " [" << f << "]";
      std::cerr << "\n";
      continue;
    }
    ++evaluated;
    const CrossingTruth t = truth_of(r);
    int k = 0;
    for (bool b : {t.beta, t.lambda, t.rho, t.epsilon, t.tau}) counts[k++] += b ? 1 : 0;
    for (const auto& imp : kImplications) {
      if (imp.holds(t)) continue;
      ++violations;
      std::cout << "VIOLATION " << imp.name << ": " << p.d_name << " vs " << p.l_name << " ("
                << truth_letters(t) << ")\n";
      if (!first_violation) {
        first_violation = std::string(imp.name) + " fails";
        write_replay(o.replay_out, p, *first_violation);
      }
    }
  }

  bool separations = true;
  if (o.catalog) {
    // Strict separations: the hexagon slides over without sliding across,
    // the octagon crosses without sliding over.
    const auto hex = crossing_report(make_hexagon_pair().d, make_hexagon_pair().l, cfg);
    const auto oct = crossing_report(make_octagon_pair().d, make_octagon_pair().l, cfg);
    const bool hex_ok = hex.lambda && !hex.rho && hex.epsilon && !hex.beta && !hex.ambiguous();
    const bool oct_ok = oct.tau && !oct.epsilon && !oct.ambiguous();
    std::cout << "separation hexagon_pair lambda without rho, epsilon without rho, lambda without beta: "
              << (hex_ok ? "ok" : "FAILED") << "\n";
    std::cout << "separation octagon_pair tau without epsilon: " << (oct_ok ? "ok" : "FAILED") << "\n";
    if (!hex_ok && !first_violation) {
      write_replay(o.replay_out, from_named(make_hexagon_pair()), "hexagon separation fails");
    }
    if (!oct_ok && !first_violation && hex_ok) {
      write_replay(o.replay_out, from_named(make_octagon_pair()), "octagon separation fails");
    }
    separations = hex_ok && oct_ok;
  }

  const int total = evaluated + excluded;
  std::cout << "pairs " << total << "  evaluated " << evaluated << "  excluded (ambiguous) " << excluded;
  if (total > 0) std::cout << " (" << detail::fmt(100.0 * excluded / total) << "%)";
  std::cout << "\n";
  std::cout << "beta " << counts[0] << "  lambda " << counts[1] << "  rho " << counts[2] << "  epsilon "
            << counts[3] << "  tau " << counts[4] << "\n";
  std::cout << "violations " << violations << "\n";
  if (violations > 0 || !separations) {
    std::cerr << "replay written to " << o.replay_out << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

// ---- render / export --------------------------------------------------------------------

int run_render(const std::string& file, const std::vector<std::string>& names, const std::string& out) {
  auto pairs = select_pairs(file, names);
  if (file.empty() && names.empty()) pairs.resize(1);
  if (pairs.size() != 1) throw SchemaError(file.empty() ? "--pair" : "pairs", "render draws exactly one pair");
  CrossingConfig cfg;
  cfg.assert_consistency = false;
  const auto& p = pairs.front();
  const std::string svg = render_svg(p.d, p.l, crossing_report(p.d, p.l, cfg));
  if (out.empty() || out == "-") {
    std::cout << svg;
  } else {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + out);
    os << svg;
  }
  return kExitOk;
}

int run_export(const std::string& name) {
  NamedPair p;
  try {
    p = named_or_random(name);
  } catch (const ShapeError&) {
    throw SchemaError("NAME", "unknown pair \"" + name + "\"");
  }
  Json d = body_json(p.d), l = body_json(p.l);
  d["id"] = p.name + ".D";
  l["id"] = p.name + ".L";
  Json doc = {{"version", 1},
              {"shapes", Json::array({d, l})},
              {"pairs", Json::array({Json{{"d", 0}, {"l", 1}, {"expect", truth_json(p.expected)}}})}};
  std::cout << doc.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crossing predicates of planar convex bodies"};
  app.require_subcommand(1);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate the crossing report of body pairs");
  eval_cmd->add_option("file", eval.file, "Shape file (JSON)");
  eval_cmd->add_option("--pair", eval.names, "Catalog pair name or random_<seed>");
  eval_cmd->add_option("--grid-n", eval.grid_n, "Raster resolution for --oracle");
  eval_cmd->add_option("--tol", eval.tol, "Membership tolerance");
  eval_cmd->add_flag("--oracle", eval.oracle, "Also run the raster referee");
  eval_cmd->add_flag("--json", eval.json, "Print a JSON report document");
  eval_cmd->add_flag("--timing", eval.timing, "Record wall time per pair");

  HierarchyOptions hier;
  bool no_catalog = false;
  auto* hier_cmd = app.add_subcommand("hierarchy", "Check the implications between the predicates");
  hier_cmd->add_option("--random", hier.random, "Number of random polygon pairs");
  hier_cmd->add_option("--seed", hier.seed, "Seed of the first random pair");
  hier_cmd->add_option("--file", hier.file, "Extra pairs from a shape file");
  hier_cmd->add_option("--replay-out", hier.replay_out, "Where to write an offending pair");
  hier_cmd->add_option("--tol", hier.tol, "Membership tolerance");
  hier_cmd->add_flag("--no-catalog", no_catalog, "Skip the catalog pairs and separations");

  std::string render_file, render_out;
  std::vector<std::string> render_names;
  auto* render_cmd = app.add_subcommand("render", "Draw a pair as SVG");
  render_cmd->add_option("file", render_file, "Shape file (JSON)");
  render_cmd->add_option("--pair", render_names, "Catalog pair name or random_<seed>");
  render_cmd->add_option("-o,--output", render_out, "Output path (default stdout)");

  std::string export_name;
  auto* export_cmd = app.add_subcommand("export", "Print a catalog or random pair as a shape file");
  export_cmd->add_option("name", export_name, "Pair name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*eval_cmd) return run_eval(eval);
    if (*hier_cmd) {
      hier.catalog = !no_catalog;
      return run_hierarchy(hier);
    }
    if (*render_cmd) return run_render(render_file, render_names, render_out);
    if (*export_cmd) return run_export(export_name);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
