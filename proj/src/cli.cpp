#include "tcx/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>

#include "tcx/cat0.hpp"
#include "tcx/folding.hpp"
#include "tcx/geodesic.hpp"
#include "tcx/homology.hpp"
#include "tcx/json_io.hpp"
#include "tcx/link.hpp"
#include "tcx/rationality.hpp"
#include "tcx/svg.hpp"
#include "tcx/witness.hpp"

namespace tcx {

namespace {

int parse_vertex(const TriangleComplex& X, const std::string& name) {
  auto v = X.vertex_by_name(name);
  if (!v) throw Error("BadDocument", "unknown vertex '" + name + "'");
  return *v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int parse_edge(const TriangleComplex& X, const std::string& spec) {
  auto parts = split(spec, ',');
  if (parts.size() != 2) throw Error("BadDocument", "edge spec must be A,B");
  auto e = X.edge_between(parse_vertex(X, parts[0]), parse_vertex(X, parts[1]));
  if (!e) throw Error("UnknownEdge", "no edge " + spec);
  return *e;
}

int parse_triangle(const TriangleComplex& X, const std::string& spec) {
  auto parts = split(spec, ',');
  if (parts.size() != 3) throw Error("BadDocument", "triangle spec must be A,B,C");
  std::array<int, 3> want{parse_vertex(X, parts[0]), parse_vertex(X, parts[1]),
                          parse_vertex(X, parts[2])};
  std::sort(want.begin(), want.end());
  for (int t = 0; t < X.triangle_count(); ++t) {
    std::array<int, 3> have = X.triangle(t).v;
    std::sort(have.begin(), have.end());
    if (have == want) return t;
  }
  throw Error("UnknownTriangle", "no triangle " + spec);
}

std::string edge_name(const TriangleComplex& X, int e) {
  return X.vertex_name(X.edge(e).a) + "," + X.vertex_name(X.edge(e).b);
}

std::string tri_name(const TriangleComplex& X, int t) {
  const Triangle& tr = X.triangle(t);
  return X.vertex_name(tr.v[0]) + "," + X.vertex_name(tr.v[1]) + "," +
         X.vertex_name(tr.v[2]);
}

Json girth_json(const TriangleComplex& X, const GirthResult& g) {
  Json j = Json::object();
  j["finite"] = g.finite;
  if (g.finite) {
    j["exact"] = angle_to_json(g.exact);
    j["numeric"] = g.numeric;
  }
  return j;
}

void write_svg(const std::string& path, const std::string& content,
               std::ostream& err) {
  std::ofstream f(path);
  if (!f) {
    err << "cannot write svg to " << path << "\n";
    return;
  }
  f << content;
}

Json word_json(const Word& w) { return word_str(w); }

struct CommonOpts {
  double budget = 8.0;
  int offsets = 16;
  int word_length = 4;
  double tolerance = 1e-9;
  int threads = 1;
  std::string svg;
};

int cmd_validate(const TriangleComplex& X, std::ostream& out) {
  Json j = Json::object();
  j["vertices"] = X.vertex_count();
  j["edges"] = X.edge_count();
  j["triangles"] = X.triangle_count();
  j["euler_characteristic"] = X.euler_characteristic();
  auto c = X.classify();
  j["essential"] = c.essential;
  j["thick"] = c.thick;
  j["components"] = c.components;
  Json bl = Json::array();
  for (int e : X.branching_locus()) bl.push_back(edge_name(X, e));
  j["branching_locus"] = bl;
  out << dump_deterministic(j);
  return 0;
}

int cmd_check(const TriangleComplex& X, const CommonOpts& o, std::ostream& out) {
  auto rep = check_local_cat0(X, o.threads);
  auto betti = homology(X);
  Json j = Json::object();
  j["locally_cat0"] = rep.pass;
  Json fails = Json::array();
  for (const auto& f : rep.failures) {
    Json jf = Json::object();
    jf["vertex"] = X.vertex_name(f.vertex);
    jf["girth"] = girth_json(X, f.girth);
    fails.push_back(jf);
  }
  j["failures"] = fails;
  j["euler_characteristic"] = X.euler_characteristic();
  j["betti"] = {{"b0", betti.b0}, {"b1", betti.b1}, {"b2", betti.b2}};
  j["note"] =
      "local CAT(0) only; simple connectivity is reported via betti numbers "
      "and must be asserted by the caller for universal-cover semantics";
  out << dump_deterministic(j);
  return rep.pass ? 0 : 1;
}

int cmd_links(const TriangleComplex& X, const CommonOpts& o, std::ostream& out,
              std::ostream& err) {
  Json verts = Json::array();
  for (int v = 0; v < X.vertex_count(); ++v) {
    LinkGraph L = link_of_vertex(X, v);
    Json j = Json::object();
    j["vertex"] = X.vertex_name(v);
    j["nodes"] = L.node_count();
    j["arcs"] = L.arc_count();
    j["girth"] = girth_json(X, girth(L, X.atoms()));
    auto d = decompose(L, X.atoms());
    j["cycles"] = d.cycles.size();
    j["segments"] = d.segments.size();
    j["hairs"] = d.hairs.size();
    auto cl = classify_clover(L, X.atoms());
    j["clover"] = cl.is_clover;
    auto un = find_unfoldable(L, X.atoms());
    j["unfoldable"] = un.has_value();
    verts.push_back(j);
  }
  Json edges = Json::array();
  for (int e = 0; e < X.edge_count(); ++e) {
    Json j = Json::object();
    j["edge"] = edge_name(X, e);
    j["degree"] = X.edge_degree(e);
    edges.push_back(j);
  }
  Json doc = Json::object();
  doc["vertex_links"] = verts;
  doc["edge_links"] = edges;
  out << dump_deterministic(doc);
  if (!o.svg.empty()) write_svg(o.svg, svg_links(X), err);
  return 0;
}

int cmd_unfold(const TriangleComplex& X, std::ostream& out) {
  auto run = unfold_all(X);
  Json steps = Json::array();
  for (const auto& s : run.steps) {
    Json j = Json::object();
    j["vertex"] = s.vertex;
    j["wedge_edge"] = s.wedge_edge;
    j["v1"] = run.fixpoint.vertex_name(s.v1);
    j["v2"] = run.fixpoint.vertex_name(s.v2);
    steps.push_back(j);
  }
  Json doc = Json::object();
  doc["steps"] = steps;
  doc["complex"] = complex_to_json(run.fixpoint);
  verify_folding_properties(X, run.fixpoint);
  doc["properties_preserved"] = true;
  out << dump_deterministic(doc);
  return 0;
}

int cmd_patches(const TriangleComplex& X, const CommonOpts& o, std::ostream& out,
                std::ostream& err) {
  Json arr = Json::array();
  for (const auto& p : X.patches()) {
    Json j = Json::object();
    j["id"] = p.id;
    Json tris = Json::array();
    for (int t : p.tris) tris.push_back(tri_name(X, t));
    j["triangles"] = tris;
    j["interior_edges"] = p.interior_edges.size();
    j["boundary_sides"] = p.boundary.size();
    j["orientable"] = p.orientable;
    j["euler_characteristic"] = p.completion_euler();
    j["boundary_components"] = p.completion_boundary_components;
    arr.push_back(j);
  }
  Json doc = Json::object();
  doc["patches"] = arr;
  out << dump_deterministic(doc);
  if (!o.svg.empty()) write_svg(o.svg, svg_patches(X), err);
  return 0;
}

int cmd_rational(const TriangleComplex& X, std::ostream& out) {
  Json doc = Json::object();
  auto rat = check_rational(X);
  doc["rational"] = rat.rational;
  Json wit = Json::array();
  for (const auto& w : rat.witnesses) {
    Json j = Json::object();
    j["vertex"] = X.vertex_name(w.vertex);
    j["kind"] = w.kind;
    j["length"] = angle_report_json(w.length, X.atoms());
    wit.push_back(j);
  }
  doc["rational_witnesses"] = wit;
  if (!rat.rational) {
    out << dump_deterministic(doc);
    return 1;
  }
  auto ext = check_extrational(X);
  doc["extrational"] = ext.extrational;
  Json circ = Json::array();
  for (const auto& c : ext.circle_failures) {
    Json j = Json::object();
    j["vertex"] = X.vertex_name(c.vertex);
    j["length"] = angle_report_json(c.length, X.atoms());
    circ.push_back(j);
  }
  doc["circle_failures"] = circ;
  Json psif = Json::array();
  for (const auto& [pid, val] : ext.psi_failures) {
    Json j = Json::object();
    j["patch"] = pid;
    j["psi"] = angle_to_json(val);
    psif.push_back(j);
  }
  doc["psi_failures"] = psif;
  Json undet = Json::array();
  for (int pid : ext.undetermined_patches) undet.push_back(pid);
  doc["undetermined_patches"] = undet;
  if (ext.extrational) {
    Json spectra = Json::array();
    for (const auto& p : X.patches()) {
      if (!p.orientable || p.boundary.empty()) continue;
      auto sp = shear_spectrum(X, p);
      Json j = Json::object();
      j["patch"] = sp.patch_id;
      j["q"] = sp.q;
      j["q_prime"] = sp.q_prime;
      Json hol = Json::array();
      for (const auto& h : sp.holonomies) hol.push_back(angle_to_json(h));
      j["holonomies"] = hol;
      spectra.push_back(j);
    }
    doc["shear_spectra"] = spectra;
  }
  out << dump_deterministic(doc);
  return ext.extrational ? 0 : 1;
}

int cmd_trace(const TriangleComplex& X, const CommonOpts& o,
              const std::string& edge_spec, double offset,
              const std::string& tri_spec, const std::string& angle_pi_spec,
              double angle_numeric, std::ostream& out, std::ostream& err) {
  EdgeStart s;
  s.edge = parse_edge(X, edge_spec);
  s.offset = offset;
  s.tri = parse_triangle(X, tri_spec);
  if (!angle_pi_spec.empty())
    s.angle = AngleExpr::pi(parse_rational(angle_pi_spec));
  else
    s.angle_numeric = angle_numeric;
  TraceOptions opt;
  opt.budget = o.budget;
  opt.vertex_tolerance = o.tolerance;
  GeodesicPath p = trace_from_edge(X, s, opt);
  Json doc = Json::object();
  doc["length"] = p.length;
  const char* status = p.status == EndStatus::BudgetExhausted    ? "BudgetExhausted"
                       : p.status == EndStatus::HitBranchingEdge ? "HitBranchingEdge"
                       : p.status == EndStatus::HitBoundary      ? "HitBoundary"
                       : p.status == EndStatus::HitVertex        ? "HitVertex"
                       : p.status == EndStatus::StoppedAtEdge    ? "StoppedAtEdge"
                                                                 : "ReachedTarget";
  doc["status"] = status;
  if (p.end_edge >= 0) {
    doc["end_edge"] = edge_name(X, p.end_edge);
    doc["end_offset"] = p.end_offset;
    doc["end_triangle"] = tri_name(X, p.end_tri);
    if (p.end_angle) doc["end_angle"] = angle_report_json(*p.end_angle, X.atoms());
    doc["end_angle_numeric"] = p.end_angle_numeric;
  }
  if (p.status == EndStatus::HitVertex) doc["vertex"] = X.vertex_name(p.hit_vertex);
  Json crossings = Json::array();
  for (const auto& c : p.crossings) {
    Json j = Json::object();
    j["triangle"] = tri_name(X, c.tri);
    if (c.entry_edge >= 0) {
      j["entry_edge"] = edge_name(X, c.entry_edge);
      j["entry_offset"] = c.entry_offset;
    }
    if (c.exit_edge >= 0) {
      j["exit_edge"] = edge_name(X, c.exit_edge);
      j["exit_offset"] = c.exit_offset;
    }
    j["development"] = {{"entry", {c.entry_xy.x, c.entry_xy.y}},
                        {"exit", {c.exit_xy.x, c.exit_xy.y}}};
    crossings.push_back(j);
  }
  doc["crossings"] = crossings;
  out << dump_deterministic(doc);
  if (!o.svg.empty()) write_svg(o.svg, svg_trace(X, p), err);
  return 0;
}

int cmd_witness(const TriangleComplex& X, const CommonOpts& o,
                const std::string& edge_spec, std::ostream& out) {
  int e = parse_edge(X, edge_spec);
  Presentation pres = fundamental_group(X, 0);
  ConnectionParams params;
  params.offsets = o.offsets;
  params.budget = o.budget;
  auto conns = find_sheared_connections(X, pres, e, params);

  Json doc = Json::object();
  Json jconns = Json::array();
  for (const auto& c : conns) {
    Json j = Json::object();
    j["start_triangle"] = tri_name(X, c.start_tri);
    j["start_offset"] = c.start_offset;
    j["end_edge"] = edge_name(X, c.end_edge);
    j["end_triangle"] = tri_name(X, c.end_tri);
    j["end_offset"] = c.end_offset;
    j["length"] = c.path.length;
    j["exact_perpendicular"] = c.exact;
    if (c.word) j["word"] = word_json(*c.word);
    jconns.push_back(j);
  }
  doc["connections"] = jconns;

  // deterministic pattern search for (c_ab, c_ca, c_bc)
  std::optional<GammaGraph> gamma;
  for (size_t i = 0; i < conns.size() && !gamma; ++i)
    for (size_t j = 0; j < conns.size() && !gamma; ++j)
      for (size_t k = 0; k < conns.size() && !gamma; ++k) {
        if (i == j || j == k || i == k) continue;
        const auto& ab = conns[i];
        const auto& ca = conns[j];
        const auto& bc = conns[k];
        if (ab.end_edge != e || ca.end_edge != e || bc.end_edge != e) continue;
        if (ca.end_tri != ab.start_tri) continue;
        if (ab.end_tri != bc.start_tri) continue;
        if (bc.end_tri != ca.start_tri) continue;
        try {
          gamma = build_gamma(X, pres, e, ab, ca, bc);
        } catch (const Error&) {
        }
      }
  if (!gamma) {
    doc["gamma"] = nullptr;
    doc["error"] = "TrianglePatternMismatch";
    out << dump_deterministic(doc);
    return 1;
  }
  Json jg = Json::object();
  jg["edge"] = edge_name(X, gamma->edge);
  jg["f"] = word_json(gamma->f);
  jg["f_prime"] = word_json(gamma->f_prime);
  jg["offsets"] = {{"a", gamma->a},   {"b", gamma->b},   {"c", gamma->c},
                   {"a2", gamma->a2}, {"b2", gamma->b2}, {"c2", gamma->c2}};
  doc["gamma"] = jg;

  FreeWitness fw = free_subgroup_certificate(X, *gamma, o.word_length, o.threads);
  doc["word_length_bound"] = fw.word_length_bound;
  doc["complete"] = fw.complete;
  if (!fw.complete) {
    doc["failure_kind"] = fw.failure_kind;
    doc["failure_word"] = fw.failure_word;
  }
  Json checks = Json::array();
  double min_sep = std::numeric_limits<double>::infinity();
  for (const auto& wc : fw.checks) {
    Json j = Json::object();
    j["word"] = wc.word;
    j["sheared_ok"] = wc.sheared_ok;
    j["endpoints_distinct"] = wc.endpoints_distinct;
    j["monotone"] = wc.monotone;
    j["separation"] = wc.separation;
    checks.push_back(j);
    min_sep = std::min(min_sep, wc.separation);
  }
  doc["checks"] = checks;
  doc["words_verified"] = fw.checks.size();
  doc["min_separation"] = min_sep;
  out << dump_deterministic(doc);
  return fw.complete ? 0 : 1;
}

int cmd_render(const TriangleComplex& X, const CommonOpts& o, std::ostream& out,
               std::ostream& err) {
  if (o.svg.empty()) {
    err << "render requires --svg <path>\n";
    return 2;
  }
  write_svg(o.svg, svg_links(X) + svg_patches(X), err);
  Json doc = Json::object();
  doc["svg"] = o.svg;
  out << dump_deterministic(doc);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"piecewise-Euclidean triangle complex toolkit"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string file;
  std::string edge_spec, tri_spec, angle_pi_spec;
  double offset = 0.5, angle_numeric = kPi / 2;

  auto add_common = [&](CLI::App* sub, bool needs_file = true) {
    if (needs_file) sub->add_option("file", file, "complex JSON file")->required();
    sub->add_option("--budget", opts.budget, "length budget");
    sub->add_option("--offsets", opts.offsets, "offset samples per edge");
    sub->add_option("--word-length", opts.word_length, "certificate word length");
    sub->add_option("--tolerance", opts.tolerance, "numeric tolerance");
    sub->add_option("--threads", opts.threads, "worker threads");
    sub->add_option("--svg", opts.svg, "write an SVG rendering here");
  };

  auto* validate = app.add_subcommand("validate", "load and validate a complex");
  add_common(validate);
  auto* check = app.add_subcommand("check", "local CAT(0) link condition");
  add_common(check);
  auto* links = app.add_subcommand("links", "vertex and edge link analysis");
  add_common(links);
  auto* unfold = app.add_subcommand("unfold", "unfold until no link is unfoldable");
  add_common(unfold);
  auto* trace = app.add_subcommand("trace", "trace a geodesic by development");
  add_common(trace);
  trace->add_option("--edge", edge_spec, "start edge A,B")->required();
  trace->add_option("--offset", offset, "offset along the edge");
  trace->add_option("--tri", tri_spec, "start triangle A,B,C")->required();
  trace->add_option("--angle-pi", angle_pi_spec, "exact angle as rational multiple of pi");
  trace->add_option("--angle", angle_numeric, "numeric angle (radians)");
  auto* patches = app.add_subcommand("patches", "branching locus and patches");
  add_common(patches);
  auto* rational = app.add_subcommand("rational", "rationality and extrationality");
  add_common(rational);
  auto* witness = app.add_subcommand("witness", "free subgroup witness search");
  add_common(witness);
  witness->add_option("--edge", edge_spec, "thick edge A,B")->required();
  auto* render = app.add_subcommand("render", "render links and patches to SVG");
  add_common(render);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    TriangleComplex X = load_complex_file(file);
    if (validate->parsed()) return cmd_validate(X, out);
    if (check->parsed()) return cmd_check(X, opts, out);
    if (links->parsed()) return cmd_links(X, opts, out, err);
    if (unfold->parsed()) return cmd_unfold(X, out);
    if (trace->parsed())
      return cmd_trace(X, opts, edge_spec, offset, tri_spec, angle_pi_spec,
                       angle_numeric, out, err);
    if (patches->parsed()) return cmd_patches(X, opts, out, err);
    if (rational->parsed()) return cmd_rational(X, out);
    if (witness->parsed()) return cmd_witness(X, opts, edge_spec, out);
    if (render->parsed()) return cmd_render(X, opts, out, err);
    err << "no subcommand\n";
    return 2;
  } catch (const Error& e) {
    err << e.what() << "\n";
    // analysis-level errors exit 1; input-side errors exit 2
    static const std::set<std::string> analysis_codes = {
        "NotThick",        "NoConnectionsWithinBudget", "TrianglePatternMismatch",
        "OffsetsNotOnOneEdge", "PropertyViolation",     "NotRational",
        "NotExtrational",  "BudgetTooSmall",            "NotUnfoldable"};
    return analysis_codes.count(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace tcx
