// Acceptance suite: runs each criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "support/fixtures.hpp"
#include "tcx/cat0.hpp"
#include "tcx/cli.hpp"
#include "tcx/folding.hpp"
#include "tcx/geodesic.hpp"
#include "tcx/json_io.hpp"
#include "tcx/link.hpp"
#include "tcx/rationality.hpp"
#include "tcx/witness.hpp"

using namespace tcx;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, const std::function<void()>& body) {
  try {
    body();
    std::cout << "PASS  criterion " << number << ": " << name << "\n";
  } catch (const std::exception& e) {
    ++failures;
    std::cout << "FAIL  criterion " << number << ": " << name << " — " << e.what()
              << "\n";
  }
}

void expect(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

void criterion1_link_condition() {
  auto t0 = Clock::now();
  auto hexa = fixtures::equilateral_fan(6);
  auto rep6 = check_local_cat0(hexa);
  expect(rep6.pass, "hexagonal fan must pass");
  GirthResult g6 = girth(link_of_vertex(hexa, 0), hexa.atoms());
  expect(g6.finite && g6.exact == angle_pi(2), "hexagonal fan girth must be exactly 2pi");
  expect(seconds_since(t0) < 1.0, "hexagonal fan check exceeded 1s");

  t0 = Clock::now();
  auto fan5 = fixtures::equilateral_fan(5);
  auto rep5 = check_local_cat0(fan5);
  expect(!rep5.pass, "5-fan must fail");
  expect(rep5.failures.size() == 1 && rep5.failures[0].girth.exact == angle_pi(5, 3),
         "5-fan girth must be exactly 5pi/3");
  expect(seconds_since(t0) < 1.0, "5-fan check exceeded 1s");

  t0 = Clock::now();
  auto C3 = fixtures::c3_theta_circle();
  auto rep3 = check_local_cat0(C3);
  expect(rep3.pass, "C3 must pass");
  for (int v = 0; v < C3.vertex_count(); ++v) {
    GirthResult g = girth(link_of_vertex(C3, v), C3.atoms());
    expect(g.finite && g.exact == angle_pi(2), "every C3 vertex link girth is 2pi");
  }
  expect(seconds_since(t0) < 1.0, "C3 check exceeded 1s");
}

void criterion2_tracer_vs_planar_oracle() {
  auto X = fixtures::c1_square();
  std::mt19937 rng(20240809);
  std::uniform_real_distribution<double> unif(0.05, 0.95);
  int done = 0;
  while (done < 100) {
    double x0 = unif(rng), y0 = unif(rng), x1 = unif(rng), y1 = unif(rng);
    if (std::abs(x0 - y0) < 0.02 || std::abs(x1 - y1) < 0.02) continue;
    double dist = std::hypot(x1 - x0, y1 - y0);
    if (dist < 0.05) continue;
    int tri = y0 < x0 ? 0 : 1;
    std::array<double, 3> bary;
    if (tri == 0)
      bary = {1 - (x0 - y0) - y0, x0 - y0, y0};
    else
      bary = {1 - x0 - (y0 - x0), x0, y0 - x0};
    double base = tri == 0 ? 0.0 : tcx::kPi / 4;
    TriStart s;
    s.tri = tri;
    s.bary = bary;
    s.angle_numeric = std::atan2(y1 - y0, x1 - x0) - base;
    TraceOptions opt;
    opt.budget = dist;
    opt.vertex_tolerance = 1e-12;
    GeodesicPath p = trace_from_tri(X, s, opt);
    expect(p.status == EndStatus::BudgetExhausted, "trace must stop at budget");
    expect(std::abs(p.length - dist) <= 1e-12, "traced length must equal planar distance within 1e-12");
    bool crosses = (y0 < x0) != (y1 < x1);
    if (crosses) {
      expect(p.crossings.size() == 2, "crossing count");
      double t = (x0 - y0) / ((x0 - y0) - (x1 - y1));
      double cx = x0 + t * (x1 - x0);
      expect(std::abs(p.crossings[0].exit_offset - cx * std::sqrt(2.0)) <= 1e-9,
             "crossing offset must match the planar intersection within 1e-9");
    }
    ++done;
  }
}

void criterion3_local_geodesic_criterion() {
  auto X = fixtures::c1_square();
  EdgeStart s;
  s.edge = *X.edge_between(0, 1);
  s.offset = 0.25;
  s.tri = 0;
  s.angle = angle_pi(1, 2);
  TraceOptions stop1;
  stop1.budget = 10;
  stop1.stop_after_crossings = 1;
  GeodesicPath piece1 = trace_from_edge(X, s, stop1);
  TraceOptions rest;
  rest.budget = 10;
  GeodesicPath straight = trace_from_edge(
      X, EdgeStart{piece1.end_edge, piece1.end_offset, 1, *piece1.end_angle, 0},
      rest);
  PiecewiseGeodesic ok;
  ok.pieces = {piece1, straight};
  auto rep = verify_local_geodesic(X, ok);
  expect(rep.ok, "straight developed path must verify");
  expect(rep.breakpoints.size() == 1 && rep.breakpoints[0].distance.has_exact &&
             rep.breakpoints[0].distance.exact == angle_pi(1),
         "breakpoint link distance must be exactly pi");

  GeodesicPath reflected = trace_from_edge(
      X, EdgeStart{piece1.end_edge, piece1.end_offset, 0, *piece1.end_angle, 0},
      rest);
  PiecewiseGeodesic bad;
  bad.pieces = {piece1, reflected};
  expect(!verify_local_geodesic(X, bad).ok, "reflected path must fail");
}

void criterion4_folding_suite() {
  struct Fixture {
    std::string name;
    TriangleComplex X;
  };
  std::vector<Fixture> corpus;
  corpus.push_back({"wedge_hex_hex", fixtures::wedge_hex_hex()});
  corpus.push_back({"wedge_sq_hex", fixtures::wedge_sq_hex()});
  corpus.push_back({"wedge_sq_sq", fixtures::wedge_sq_sq()});
  corpus.push_back({"chain3_hex", fixtures::chain3_hex()});
  corpus.push_back({"clover3_wedge", fixtures::clover3_wedge()});
  corpus.push_back({"torus_pair", fixtures::torus_pair()});
  int with_unfoldable = 0;
  for (auto& f : corpus) {
    auto t0 = Clock::now();
    bool has_unfoldable = false;
    for (int v = 0; v < f.X.vertex_count(); ++v)
      if (find_unfoldable(link_of_vertex(f.X, v), f.X.atoms())) has_unfoldable = true;
    if (has_unfoldable) ++with_unfoldable;

    // step-by-step: every unfold preserves the invariants exactly
    TriangleComplex cur = f.X;
    size_t steps = 0;
    size_t corner_bound = 3u * static_cast<size_t>(f.X.triangle_count());
    for (;;) {
      std::optional<Unfoldable> u;
      int at = -1;
      for (int v = 0; v < cur.vertex_count() && !u; ++v) {
        u = find_unfoldable(link_of_vertex(cur, v), cur.atoms());
        if (u) at = v;
      }
      if (!u) break;
      auto [next, step] = unfold_once(cur, at, *u);
      ++steps;
      expect(steps <= corner_bound, f.name + ": steps exceeded the corner count");
      expect(next.euler_characteristic() == cur.euler_characteristic(),
             f.name + ": euler characteristic changed");
      expect(next.classify().components == cur.classify().components,
             f.name + ": component count changed");
      expect(next.classify().essential == cur.classify().essential,
             f.name + ": essentialness changed");
      expect(!check_local_cat0(cur).pass || check_local_cat0(next).pass,
             f.name + ": local CAT(0) verdict lost");
      cur = std::move(next);
    }
    for (int v = 0; v < cur.vertex_count(); ++v)
      expect(!find_unfoldable(link_of_vertex(cur, v), cur.atoms()),
             f.name + ": fixpoint still unfoldable");
    auto run = unfold_all(f.X);
    expect(run.steps.size() == steps, f.name + ": unfold_all step count differs");
    verify_folding_properties(f.X, run.fixpoint);
    expect(seconds_since(t0) < 1.0, f.name + ": exceeded 1s");
  }
  expect(with_unfoldable >= 5, "corpus must contain >= 5 unfoldable fixtures");
}

void criterion5_extrationality() {
  auto C3 = fixtures::c3_theta_circle();
  expect(check_extrational(C3).extrational, "C3 must be extrational");

  auto fan7 = fixtures::equilateral_fan(7);
  auto rep7 = check_extrational(fan7);
  expect(!rep7.extrational && !rep7.circle_links_ok, "7-fan must fail bullet one");
  expect(rep7.circle_failures.size() == 1 &&
             rep7.circle_failures[0].length == angle_pi(7, 3),
         "7-fan circle length must be exactly 7pi/3");

  AtomEnv env;
  env.declare("alpha", 0.3);
  auto annulus = fixtures::cone_annulus(7, AngleExpr::atom("alpha", 1), env);
  auto repa = check_extrational(annulus);
  expect(!repa.extrational && repa.circle_links_ok && !repa.psi_trivial,
         "cone annulus must fail via psi");
  bool exact_alpha = false;
  for (const auto& [pid, val] : repa.psi_failures) {
    if (val.pi_coeff() == 0 && val.atom_terms().size() == 1 &&
        val.atom_terms().count("alpha") &&
        val.atom_terms().at("alpha") == Rational(1))
      exact_alpha = true;
  }
  expect(exact_alpha, "psi failure must be alpha with coefficient exactly 1");

  for (const auto& X : {C3, fan7, annulus, fixtures::c2_book(3), fixtures::c1_square()}) {
    for (int t = 0; t < X.triangle_count(); ++t) {
      AngleExpr b = triangle_boundary_psi(X, t);
      expect(b == angle_pi(1) || b == angle_pi(-1),
             "triangle boundary psi must be exactly +-pi");
    }
  }
}

void criterion6_perpendicularity_propagation() {
  auto C3 = fixtures::c3_theta_circle();
  int shots = 0;
  for (int e : C3.branching_locus()) {
    const Edge& ed = C3.edge(e);
    for (int j = 1; j <= 16; ++j) {
      double off = ed.length * j / 17.0;
      for (int tri : ed.tris) {
        TraceOptions opt;
        opt.budget = 3.0;
        GeodesicPath p = shoot_perpendicular(C3, e, off, tri, opt);
        expect(p.status == EndStatus::HitBranchingEdge,
               "perpendicular shot must reach a branching circle");
        expect(p.end_angle.has_value() && *p.end_angle == angle_pi(1, 2),
               "arrival angle must be exactly pi/2");
        ++shots;
      }
    }
  }
  expect(shots == 6 * 16 * 3, "every edge, offset and triangle must be covered");
  for (const auto& p : C3.patches()) {
    auto sp = shear_spectrum(C3, p);
    expect(sp.q_prime == 2, "q' must be 2 on every C3 patch");
  }
}

void criterion7_sheared_never_close() {
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  int total = 0;
  auto run_fixture = [&](const TriangleComplex& X, int count) {
    auto branching = X.branching_locus();
    int made = 0, guard = 0;
    while (made < count && ++guard < count * 100) {
      int e = branching[rng() % branching.size()];
      const Edge& ed = X.edge(e);
      int tri = ed.tris[rng() % ed.tris.size()];
      double off = ed.length * unif(rng);
      ShearedPath path;
      int pieces = 1 + static_cast<int>(rng() % 4);
      int cur_edge = e, cur_tri = tri;
      double cur_off = off;
      bool ok = true;
      for (int k = 0; k < pieces; ++k) {
        TraceOptions opt;
        opt.budget = 4.5;
        GeodesicPath p;
        try {
          p = shoot_perpendicular(X, cur_edge, cur_off, cur_tri, opt);
        } catch (const Error&) {
          ok = false;
          break;
        }
        if (p.status != EndStatus::HitBranchingEdge ||
            !p.perpendicular_end(X.atoms())) {
          ok = false;
          break;
        }
        const Edge& ae = X.edge(p.end_edge);
        double to = ae.length * unif(rng);
        path.legs.push_back({p, to});
        std::vector<int> candidates;
        for (int t : ae.tris)
          if (t != p.end_tri) candidates.push_back(t);
        if (candidates.empty()) {
          ok = false;
          break;
        }
        cur_edge = p.end_edge;
        cur_off = to;
        cur_tri = candidates[rng() % candidates.size()];
      }
      if (!ok || path.legs.empty()) continue;
      expect(verify_sheared(X, path).ok, "randomized path must verify sheared");
      auto dev = develop_sheared(X, path);
      expect(dev.final_separation > 1e-9, "endpoints must be separated > 1e-9");
      expect(dev.all_positive, "every prefix must stay away from the start");
      expect(dev.monotone, "prefix separations must be monotone");
      ++made;
      ++total;
    }
    expect(made == count, "fixture did not yield enough sheared geodesics");
  };
  run_fixture(fixtures::c3_theta_circle(), 120);
  run_fixture(fixtures::theta_interval(), 80);
  expect(total == 200, "need 200 randomized sheared geodesics");
}

void criterion8_free_subgroup_witness() {
  auto t0 = Clock::now();
  auto X = fixtures::c3_theta_circle();
  auto pres = fundamental_group(X, 0);
  int e = *X.edge_between(*X.vertex_by_name("u.0"), *X.vertex_by_name("u.1"));
  ConnectionParams params;
  params.offsets = 4;
  params.budget = 4.5;
  auto conns = find_sheared_connections(X, pres, e, params);
  int loops = 0;
  for (const auto& c : conns)
    if (c.end_edge == e) ++loops;
  expect(loops >= 3, "witness needs at least three connections on the edge");

  const auto& tris = X.edge(e).tris;
  const PerpConnection* ab = nullptr;
  const PerpConnection* ca = nullptr;
  const PerpConnection* bc = nullptr;
  for (const auto& c : conns) {
    if (c.end_edge != e) continue;
    if (c.start_tri == tris[0] && c.end_tri == tris[1]) ab = &c;
    if (c.start_tri == tris[2] && c.end_tri == tris[0]) ca = &c;
    if (c.start_tri == tris[1] && c.end_tri == tris[2]) bc = &c;
  }
  expect(ab && ca && bc, "pattern connections must exist");
  GammaGraph g = build_gamma(X, pres, e, *ab, *ca, *bc);
  FreeWitness fw = free_subgroup_certificate(X, g, 4);
  expect(fw.complete, "certificate must complete");
  int length4 = 0;
  for (const auto& wc : fw.checks) {
    expect(wc.sheared_ok && wc.endpoints_distinct, "every word must verify");
    expect(wc.separation >= 1.0, "per-word separation must be >= the strip width");
    if (wc.word.size() == 4) ++length4;
  }
  expect(length4 == 108, "all 108 reduced words of length 4 must be verified");
  expect(seconds_since(t0) < 10.0, "witness must finish within 10s");

  GammaGraph bad = g;
  bad.c_ca.end_tri = bad.c_bc.start_tri;
  bad.c_ca.path.end_tri = bad.c_bc.path.start_tri;
  FreeWitness neg = free_subgroup_certificate(X, bad, 2);
  expect(!neg.complete && neg.failure_kind == "ShearedCheckFailed" &&
             neg.failure_word.size() <= 2,
         "corrupted gamma must fail at word length <= 2");
}

void criterion9_determinism() {
  auto dir = std::filesystem::temp_directory_path() / "tcx_acceptance";
  std::filesystem::create_directories(dir);
  struct Entry {
    std::string file;
    TriangleComplex X;
  };
  std::vector<Entry> corpus;
  corpus.push_back({"c1.json", fixtures::c1_square()});
  corpus.push_back({"c2.json", fixtures::c2_book(3)});
  corpus.push_back({"c3.json", fixtures::c3_theta_circle()});
  corpus.push_back({"fan5.json", fixtures::equilateral_fan(5)});
  corpus.push_back({"fan6.json", fixtures::equilateral_fan(6)});
  corpus.push_back({"fan7.json", fixtures::equilateral_fan(7)});
  corpus.push_back({"wedge.json", fixtures::wedge_hex_hex()});
  corpus.push_back({"chain3.json", fixtures::chain3_hex()});
  AtomEnv env;
  env.declare("alpha", 0.3);
  corpus.push_back(
      {"cone_alpha.json", fixtures::cone_annulus(7, AngleExpr::atom("alpha", 1), env)});
  corpus.push_back({"cone_third.json", fixtures::cone_annulus(7, angle_pi(1, 3))});

  for (auto& entry : corpus) {
    std::ofstream f(dir / entry.file);
    f << dump_deterministic(complex_to_json(entry.X));
  }
  auto run_once = [&](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    run_cli(args, out, err);
    return out.str();
  };
  for (auto& entry : corpus) {
    std::string path = (dir / entry.file).string();
    for (const char* sub : {"validate", "check", "links", "patches", "rational",
                            "unfold"}) {
      auto a = run_once({sub, path});
      auto b = run_once({sub, path});
      expect(a == b, std::string(sub) + " output must be byte-identical on " +
                         entry.file);
      expect(!a.empty(), std::string(sub) + " must print a report");
    }
  }
  std::string c3 = (dir / "c3.json").string();
  auto t1 = run_once({"trace", c3, "--edge", "u.0,u.1", "--offset", "0.3", "--tri",
                      "u.0,mx.1,u.1", "--angle-pi", "1/2", "--budget", "5"});
  auto t2 = run_once({"trace", c3, "--edge", "u.0,u.1", "--offset", "0.3", "--tri",
                      "u.0,mx.1,u.1", "--angle-pi", "1/2", "--budget", "5"});
  expect(!t1.empty() && t1 == t2, "trace output must be byte-identical");
  auto w1 = run_once({"witness", c3, "--edge", "u.0,u.1", "--offsets", "3",
                      "--budget", "4.5", "--word-length", "2"});
  auto w2 = run_once({"witness", c3, "--edge", "u.0,u.1", "--offsets", "3",
                      "--budget", "4.5", "--word-length", "2"});
  expect(!w1.empty() && w1 == w2, "witness output must be byte-identical");
}

}  // namespace

int main() {
  criterion(1, "link condition (girth exactly 2pi / 5pi/3)", criterion1_link_condition);
  criterion(2, "geodesic tracer vs planar oracle (1e-12 / 1e-9)",
            criterion2_tracer_vs_planar_oracle);
  criterion(3, "local-geodesic criterion (breakpoints exactly pi)",
            criterion3_local_geodesic_criterion);
  criterion(4, "folding suite preserves invariants at every step",
            criterion4_folding_suite);
  criterion(5, "extrationality verdicts with exact witnesses",
            criterion5_extrationality);
  criterion(6, "perpendicularity propagation on C3 with q' = 2",
            criterion6_perpendicularity_propagation);
  criterion(7, "200 randomized sheared geodesics never close",
            criterion7_sheared_never_close);
  criterion(8, "free-subgroup witness certificate on C3",
            criterion8_free_subgroup_witness);
  criterion(9, "byte-identical CLI output on the corpus", criterion9_determinism);
  if (failures) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
