#include "tcx/witness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <thread>

namespace tcx {

namespace {

std::vector<int> edge_sequence_of(const GeodesicPath& p) {
  std::vector<int> seq;
  if (!p.crossings.empty()) {
    seq.push_back(p.crossings.front().entry_edge);
    for (const auto& c : p.crossings) seq.push_back(c.exit_edge);
  }
  return seq;
}

// Closed-up loop word of a connection whose start and end edges agree:
// the path is homotoped into the 1-skeleton through the crossed triangles.
Word connection_word(const TriangleComplex& X, const Presentation& pres,
                     const GeodesicPath& p) {
  std::vector<int> verts;
  verts.push_back(X.edge(p.crossings.front().entry_edge).a);
  for (const auto& c : p.crossings) verts.push_back(X.edge(c.exit_edge).a);
  return pres.word_of_closed_path(verts);
}

}  // namespace

std::vector<PerpConnection> find_sheared_connections(const TriangleComplex& X,
                                                     const Presentation& pres,
                                                     int edge,
                                                     const ConnectionParams& params) {
  if (X.edge_degree(edge) < 3)
    throw Error("NotThick", "connections are sought at edges of degree >= 3");
  const Edge& ed = X.edge(edge);
  std::vector<PerpConnection> out;
  std::set<std::tuple<int, std::vector<int>, int>> seen;
  int m = std::max(1, params.offsets);
  for (int j = 1; j <= m; ++j) {
    double offset = ed.length * j / (m + 1);
    for (int tri : ed.tris) {
      EdgeStart s;
      s.edge = edge;
      s.offset = offset;
      s.tri = tri;
      s.angle = angle_pi(1, 2);
      for (GeodesicPath& p : trace_enumerate(X, s, params.budget)) {
        if (p.status != EndStatus::HitBranchingEdge) continue;
        if (!p.perpendicular_end(X.atoms())) continue;
        if (p.length <= 1e-12) continue;
        PerpConnection c;
        c.start_edge = edge;
        c.start_offset = offset;
        c.start_tri = tri;
        c.end_edge = p.end_edge;
        c.end_offset = p.end_offset;
        c.end_tri = p.end_tri;
        c.edge_sequence = edge_sequence_of(p);
        c.exact = p.end_angle.has_value();
        auto key = std::make_tuple(tri, c.edge_sequence, c.end_tri);
        if (!seen.insert(key).second) continue;
        if (c.end_edge == edge) c.word = connection_word(X, pres, p);
        c.path = std::move(p);
        out.push_back(std::move(c));
        if (static_cast<int>(out.size()) >= params.max_connections) break;
      }
    }
  }
  if (out.empty())
    throw Error("NoConnectionsWithinBudget",
                "no perpendicular connections found within the budget");
  std::sort(out.begin(), out.end(), [](const PerpConnection& x, const PerpConnection& y) {
    if (x.path.length != y.path.length) return x.path.length < y.path.length;
    if (x.start_tri != y.start_tri) return x.start_tri < y.start_tri;
    return x.edge_sequence < y.edge_sequence;
  });
  return out;
}

namespace {

GeodesicPath reverse_connection(const TriangleComplex& X, const PerpConnection& c) {
  EdgeStart s;
  s.edge = c.end_edge;
  s.offset = c.end_offset;
  s.tri = c.end_tri;
  if (c.path.end_angle)
    s.angle = angle_pi(1) - *c.path.end_angle;
  else
    s.angle_numeric = kPi - c.path.end_angle_numeric;
  TraceOptions opt;
  opt.budget = c.path.length + 1e-6;
  // replay branch choices in reverse: the triangles entered after each
  // branching edge, read backwards
  std::vector<int> tri_seq;
  tri_seq.push_back(c.path.crossings.front().tri);
  for (const auto& cr : c.path.crossings)
    if (&cr != &c.path.crossings.front()) tri_seq.push_back(cr.tri);
  std::vector<int> choices;
  for (size_t i = tri_seq.size(); i-- > 1;) {
    int e = c.path.crossings[i].entry_edge;
    if (X.edge(e).degree() >= 3) choices.push_back(tri_seq[i - 1]);
  }
  opt.branch_choices = choices;
  GeodesicPath rev = trace_from_edge(X, s, opt);
  if (rev.status != EndStatus::HitBranchingEdge &&
      rev.status != EndStatus::HitBoundary) {
    // The reverse trace must stop where the forward one started; with the
    // branch choices consumed it stops at the original branching edge.
    throw Error("Internal", "reverse trace did not terminate on an edge");
  }
  if (rev.end_edge != c.start_edge ||
      std::abs(rev.end_offset - c.start_offset) > 1e-7 ||
      rev.end_tri != c.start_tri)
    throw Error("Internal", "reverse trace did not return to the start");
  return rev;
}

}  // namespace

GammaGraph build_gamma(const TriangleComplex& X, const Presentation& pres, int edge,
                       const PerpConnection& c_ab, const PerpConnection& c_ca,
                       const PerpConnection& c_bc) {
  for (const PerpConnection* c : {&c_ab, &c_ca, &c_bc})
    if (c->start_edge != edge || c->end_edge != edge)
      throw Error("OffsetsNotOnOneEdge",
                  "all three connections must start and end on the chosen edge");
  int Ta = c_ab.start_tri, Tc = c_ca.start_tri, Tb = c_bc.start_tri;
  if (Ta == Tb || Tb == Tc || Ta == Tc)
    throw Error("TrianglePatternMismatch",
                "connections must start in three distinct triangles");
  if (c_ab.end_tri != Tb || c_ca.end_tri != Ta || c_bc.end_tri != Tc)
    throw Error("TrianglePatternMismatch",
                "connection ends do not match the a->b, c->a, b->c pattern");
  GammaGraph g;
  g.edge = edge;
  g.c_ab = c_ab;
  g.c_ca = c_ca;
  g.c_bc = c_bc;
  g.rev_ab = reverse_connection(X, c_ab);
  g.rev_ca = reverse_connection(X, c_ca);
  g.rev_bc = reverse_connection(X, c_bc);
  g.a = c_ab.start_offset;
  g.b = c_ab.end_offset;
  g.c = c_ca.start_offset;
  g.a2 = c_ca.end_offset;
  g.b2 = c_bc.start_offset;
  g.c2 = c_bc.end_offset;
  if (!c_ab.word || !c_ca.word || !c_bc.word)
    throw Error("OffsetsNotOnOneEdge", "connection words unavailable");
  g.f = *c_ab.word;
  Word conj = *c_ca.word;
  Word mid = *c_bc.word;
  Word inv = invert_word(conj);
  Word fp = conj;
  fp.insert(fp.end(), mid.begin(), mid.end());
  fp.insert(fp.end(), inv.begin(), inv.end());
  g.f_prime = reduce_word(fp);
  return g;
}

ShearedCheck verify_sheared(const TriangleComplex& X, const ShearedPath& p) {
  ShearedCheck out;
  const AtomEnv& env = X.atoms();
  if (p.legs.empty()) return {false, "empty path"};
  for (size_t i = 0; i < p.legs.size(); ++i) {
    const GeodesicPath& geo = p.legs[i].geo;
    if (geo.end_edge < 0) return {false, "piece does not end on an edge"};
    if (!geo.perpendicular_end(env))
      return {false, "piece does not end perpendicularly"};
    const Edge& ed = X.edge(geo.end_edge);
    double off = geo.end_offset, to = p.legs[i].slide_to_offset;
    if (!(off > 1e-12 && off < ed.length - 1e-12) ||
        !(to > 1e-12 && to < ed.length - 1e-12))
      return {false, "slide leaves the open edge"};
    if (i + 1 < p.legs.size()) {
      const GeodesicPath& nxt = p.legs[i + 1].geo;
      if (nxt.start_edge != geo.end_edge)
        return {false, "consecutive pieces on different edges"};
      if (std::abs(nxt.start_offset - to) > 1e-9)
        return {false, "slide does not reach the next start"};
      bool perp_start = nxt.start_angle
                            ? (*nxt.start_angle == angle_pi(1, 2))
                            : std::abs(nxt.start_angle_numeric - kPi / 2) < 1e-9;
      if (!perp_start) return {false, "piece does not start perpendicularly"};
      if (nxt.start_tri == geo.end_tri)
        return {false, "junction triangles are not distinct"};
    }
  }
  return out;
}

ShearedDevelopment develop_sheared(const TriangleComplex& X, const ShearedPath& p) {
  ShearedDevelopment dev;
  if (p.legs.empty()) throw Error("Internal", "empty sheared path");
  EdgePlacement cur;
  const Edge& e0 = X.edge(p.legs.front().geo.start_edge);
  cur.a = {0, 0};
  cur.b = {e0.length, 0};
  int side = 1;
  dev.start = {p.legs.front().geo.start_offset, 0};
  Vec2 pos = dev.start;
  double prev_sep = 0;
  for (const auto& leg : p.legs) {
    Frame f = frame_onto(cur, side);
    GeodesicPath placed = transformed(leg.geo, f);
    // the leg must begin where the previous slide ended
    if (norm(placed.start_xy - pos) > 1e-6)
      throw Error("Internal", "sheared development lost continuity");
    EdgePlacement arr = arrival_edge_placement(X, placed);
    int arr_side = arrival_side(X, placed);
    // slide along the placed arrival edge
    const Edge& ae = X.edge(placed.end_edge);
    Vec2 u = (1.0 / norm(arr.b - arr.a)) * (arr.b - arr.a);
    Vec2 slid = arr.a + leg.slide_to_offset * u;
    (void)ae;
    pos = slid;
    double sep = norm(pos - dev.start);
    dev.junction_separations.push_back(sep);
    if (sep <= 1e-9) dev.all_positive = false;
    if (sep < prev_sep - 1e-12) dev.monotone = false;
    prev_sep = sep;
    cur = arr;
    side = -arr_side;
  }
  dev.end = pos;
  dev.final_separation = norm(dev.end - dev.start);
  return dev;
}

std::vector<std::string> reduced_words(int n) {
  const std::string letters = "hHjJ";
  auto inverse = [](char c) -> char {
    switch (c) {
      case 'h': return 'H';
      case 'H': return 'h';
      case 'j': return 'J';
      default: return 'j';
    }
  };
  std::vector<std::string> cur = {""};
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const auto& w : cur)
      for (char l : letters) {
        if (!w.empty() && w.back() == inverse(l)) continue;
        next.push_back(w + l);
      }
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

ShearedPath word_path(const TriangleComplex& X, const GammaGraph& g,
                      const std::string& word) {
  (void)X;
  if (word.empty()) throw Error("BadWord", "word must be nonempty");
  ShearedPath path;
  // Position state: which lift interval we sit on ('I' or 'J' for I') and
  // the current offset on the edge.
  char interval = 0;
  double offset = 0;

  auto push_leg = [&](const GeodesicPath& geo, double end_offset) {
    // slide_to fixed later; initialize to arrival
    path.legs.push_back({geo, end_offset});
  };
  auto set_slide = [&](double to) {
    if (!path.legs.empty()) path.legs.back().slide_to_offset = to;
  };

  for (size_t i = 0; i < word.size(); ++i) {
    char l = word[i];
    bool needs_I = (l == 'h' || l == 'H');
    if (interval == 0) {
      interval = needs_I ? 'I' : 'J';
      offset = (l == 'h')   ? g.a
               : (l == 'H') ? g.b
               : (l == 'j') ? g.b2
                            : g.c2;
    }
    if (needs_I && interval == 'J') {
      // transfer I' -> I via c_ca reversed
      set_slide(g.a2);
      push_leg(g.rev_ca, g.c);
      interval = 'I';
      offset = g.c;
    } else if (!needs_I && interval == 'I') {
      // transfer I -> I' via c_ca forward
      set_slide(g.c);
      push_leg(g.c_ca.path, g.a2);
      interval = 'J';
      offset = g.a2;
    }
    switch (l) {
      case 'h':
        set_slide(g.a);
        push_leg(g.c_ab.path, g.b);
        offset = g.b;
        break;
      case 'H':
        set_slide(g.b);
        push_leg(g.rev_ab, g.a);
        offset = g.a;
        break;
      case 'j':
        set_slide(g.b2);
        push_leg(g.c_bc.path, g.c2);
        offset = g.c2;
        break;
      case 'J':
        set_slide(g.c2);
        push_leg(g.rev_bc, g.b2);
        offset = g.b2;
        break;
      default:
        throw Error("BadWord", "letters must be h, H, j, J");
    }
  }
  return path;
}

FreeWitness free_subgroup_certificate(const TriangleComplex& X, const GammaGraph& g,
                                      int N, int threads) {
  FreeWitness fw;
  fw.gamma = g;
  fw.word_length_bound = N;
  fw.complete = true;
  std::vector<std::string> words;
  for (int n = 1; n <= N; ++n)
    for (std::string& w : reduced_words(n)) words.push_back(std::move(w));

  std::vector<WordCheck> results(words.size());
  auto check_one = [&](size_t i) {
    WordCheck wc;
    wc.word = words[i];
    ShearedPath sp = word_path(X, g, words[i]);
    ShearedCheck sc = verify_sheared(X, sp);
    wc.sheared_ok = sc.ok;
    if (sc.ok) {
      ShearedDevelopment dev = develop_sheared(X, sp);
      wc.separation = dev.final_separation;
      wc.endpoints_distinct = dev.final_separation > 1e-9 && dev.all_positive;
      wc.monotone = dev.monotone;
    }
    results[i] = std::move(wc);
  };
  if (threads <= 1 || words.size() < 8) {
    for (size_t i = 0; i < words.size(); ++i) check_one(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    int k = std::min<size_t>(threads, words.size());
    for (int t = 0; t < k; ++t)
      pool.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= results.size()) return;
          check_one(i);
        }
      });
    for (auto& t : pool) t.join();
  }
  for (auto& wc : results) {
    if (!wc.sheared_ok) {
      fw.complete = false;
      if (fw.failure_kind.empty()) {
        fw.failure_kind = "ShearedCheckFailed";
        fw.failure_word = wc.word;
      }
    } else if (!wc.endpoints_distinct) {
      fw.complete = false;
      if (fw.failure_kind.empty()) {
        fw.failure_kind = "EndpointsCoincide";
        fw.failure_word = wc.word;
      }
    }
    fw.checks.push_back(std::move(wc));
  }
  return fw;
}

}  // namespace tcx
