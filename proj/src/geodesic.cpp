#include "tcx/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace tcx {

namespace {

double wrap_pi(double a) {
  while (a > kPi) a -= 2 * kPi;
  while (a <= -kPi) a += 2 * kPi;
  return a;
}

bool ang_close(double a, double b, double tol = 1e-6) {
  return std::abs(wrap_pi(a - b)) < tol;
}

// base + delta or base - delta, whichever matches `target` mod 2*pi.
AngleExpr pick_rotation(const AngleExpr& base, const AngleExpr& delta,
                        double target, const AtomEnv& env) {
  AngleExpr plus = base + delta;
  if (ang_close(plus.numeric(env), target)) return plus;
  AngleExpr minus = base - delta;
  if (ang_close(minus.numeric(env), target)) return minus;
  throw Error("Internal", "exact direction propagation lost track of the numerics");
}

// Exact value of the unsigned angle in (0,pi) between two directions whose
// exact difference is `delta`; `target` is the numeric unsigned angle.
AngleExpr unsigned_from_delta(const AngleExpr& delta, double target,
                              const AtomEnv& env) {
  double d = delta.numeric(env);
  for (int sign : {1, -1}) {
    double k = std::round((target - sign * d) / (2 * kPi));
    double cand = sign * d + 2 * kPi * k;
    if (std::abs(cand - target) < 1e-6) {
      AngleExpr out = sign > 0 ? delta : -delta;
      return out + angle_pi(2 * static_cast<long>(k));
    }
  }
  throw Error("Internal", "cannot express unsigned angle exactly");
}

struct DevTriangle {
  int tri = -1;
  std::array<Vec2, 3> pos{};  // positions of triangle(tri).v[i]
  bool exact = false;
  std::array<AngleExpr, 3> side_dir{};  // direction of (v[i] -> v[i+1])
};

// Local side j of a triangle joins v[j] and v[j+1]; it is the edge opposite
// corner (j+2)%3.
int side_edge(const Triangle& tr, int j) { return tr.edge[(j + 2) % 3]; }

int side_with_edge(const Triangle& tr, int e) {
  for (int j = 0; j < 3; ++j)
    if (side_edge(tr, j) == e) return j;
  return -1;
}

double side_dir_numeric(const DevTriangle& dt, int j) {
  Vec2 d = dt.pos[(j + 1) % 3] - dt.pos[j];
  return std::atan2(d.y, d.x);
}

// Fill exact side directions given one known oriented side direction.
void fill_side_dirs(DevTriangle& dt, const Triangle& tr, int known_side,
                    const AngleExpr& known_dir, const AtomEnv& env) {
  dt.side_dir[known_side] = known_dir;
  int j = known_side;
  for (int step = 0; step < 2; ++step) {
    int n = (j + 1) % 3;
    // germ at shared vertex v[n]: (v[n] -> v[j]) = side_dir[j] + pi
    AngleExpr back = dt.side_dir[j] + angle_pi(1);
    // corner angle at v[n]
    const AngleExpr& corner = tr.angle[n];
    AngleExpr next = pick_rotation(back, corner, side_dir_numeric(dt, n), env);
    dt.side_dir[n] = next;
    j = n;
  }
  dt.exact = true;
}

// Exact direction of the canonical a->b germ of edge e inside dt.
AngleExpr canonical_edge_dir(const DevTriangle& dt, const Triangle& tr,
                             const TriangleComplex& X, int e) {
  int j = side_with_edge(tr, e);
  if (j < 0) throw Error("Internal", "edge not on triangle");
  const Edge& ed = X.edge(e);
  if (tr.v[j] == ed.a) return dt.side_dir[j];
  return dt.side_dir[j] + angle_pi(1);
}

Vec2 placed_vertex(const DevTriangle& dt, const Triangle& tr, int vertex) {
  for (int i = 0; i < 3; ++i)
    if (tr.v[i] == vertex) return dt.pos[i];
  throw Error("Internal", "vertex not on triangle");
}

// Place triangle `nt` of X across edge e, given the placed positions of e's
// endpoints and a point on the far side to avoid.
DevTriangle place_across(const TriangleComplex& X, int nt, int e, Vec2 pa, Vec2 pb,
                         Vec2 avoid) {
  const Triangle& tr = X.triangle(nt);
  const Edge& ed = X.edge(e);
  int ja = -1, jb = -1, jc = -1;
  for (int i = 0; i < 3; ++i) {
    if (tr.v[i] == ed.a) ja = i;
    else if (tr.v[i] == ed.b) jb = i;
    else jc = i;
  }
  if (ja < 0 || jb < 0) throw Error("Internal", "triangle does not contain edge");
  double ac = tr.side[jb];  // side opposite v[jb] joins v[ja], v[jc]
  double bc = tr.side[ja];
  Vec2 ab = pb - pa;
  double L = norm(ab);
  Vec2 u{ab.x / L, ab.y / L};
  Vec2 n{-u.y, u.x};
  double x = (L * L + ac * ac - bc * bc) / (2 * L);
  double h2 = std::max(0.0, ac * ac - x * x);
  double h = std::sqrt(h2);
  double side_of_avoid = cross(ab, avoid - pa);
  double sgn = side_of_avoid > 0 ? -1.0 : 1.0;
  Vec2 pc = pa + x * u + (sgn * h) * n;
  DevTriangle dt;
  dt.tri = nt;
  dt.pos[ja] = pa;
  dt.pos[jb] = pb;
  dt.pos[jc] = pc;
  return dt;
}

struct TraceState {
  DevTriangle dt;
  int entry_side = -1;      // local side index, or -1
  int skip_vertex = -1;     // for vertex starts: exclude sides at this vertex once
  Vec2 origin;              // ray origin (trace start)
  Vec2 dir;                 // unit ray direction
  double t = 0;             // ray parameter consumed so far
  std::optional<AngleExpr> dir_exact;
};

GeodesicPath run_trace(const TriangleComplex& X, TraceState st,
                       const TraceOptions& opt, GeodesicPath path) {
  const AtomEnv& env = X.atoms();
  if (opt.budget <= 0) throw Error("ZeroBudget", "trace budget must be positive");
  size_t next_choice = 0;
  path.dir_numeric = std::atan2(st.dir.y, st.dir.x);
  path.dir_exact = st.dir_exact;

  auto finish_at_edge = [&](int e, Vec2 hit, double offset, int local_side) {
    path.end_edge = e;
    path.end_offset = offset;
    path.end_tri = st.dt.tri;
    path.end_xy = hit;
    path.length = st.t;
    const Triangle& tr = X.triangle(st.dt.tri);
    Vec2 ce;
    {
      const Edge& ed = X.edge(e);
      Vec2 p0 = placed_vertex(st.dt, tr, ed.a);
      Vec2 p1 = placed_vertex(st.dt, tr, ed.b);
      Vec2 d = p1 - p0;
      double L = norm(d);
      ce = {d.x / L, d.y / L};
    }
    double cosang = std::clamp(dot(st.dir, ce), -1.0, 1.0);
    path.end_angle_numeric = std::acos(cosang);
    if (st.dt.exact && st.dir_exact) {
      AngleExpr delta = *st.dir_exact - canonical_edge_dir(st.dt, tr, X, e);
      path.end_angle = unsigned_from_delta(delta, path.end_angle_numeric, env);
      path.end_side_dirs = st.dt.side_dir;
    }
    (void)local_side;
  };

  for (int guard = 0; guard < 100000; ++guard) {
    const Triangle& tr = X.triangle(st.dt.tri);
    // Intersect the ray with candidate exit sides.
    int best_side = -1;
    double best_t = std::numeric_limits<double>::infinity();
    double best_s = 0;
    for (int j = 0; j < 3; ++j) {
      if (j == st.entry_side) continue;
      if (st.skip_vertex >= 0 &&
          (tr.v[j] == st.skip_vertex || tr.v[(j + 1) % 3] == st.skip_vertex))
        continue;
      Vec2 A = st.dt.pos[j], B = st.dt.pos[(j + 1) % 3];
      Vec2 ab = B - A;
      double denom = cross(st.dir, ab);
      if (std::abs(denom) < 1e-15) continue;
      double tt = cross(A - (st.origin + st.t * st.dir), ab) / denom;
      double ss = cross(A - (st.origin + st.t * st.dir), st.dir) / denom;
      if (tt <= 1e-12) continue;
      if (ss < -1e-9 || ss > 1 + 1e-9) continue;
      if (tt < best_t) {
        best_t = tt;
        best_side = j;
        best_s = ss;
      }
    }
    st.skip_vertex = -1;
    if (best_side < 0)
      throw Error("Internal", "ray found no exit side; degenerate geometry");

    double t_exit = st.t + best_t;
    Crossing c;
    c.tri = st.dt.tri;
    c.entry_edge = st.entry_side >= 0 ? side_edge(tr, st.entry_side) : path.start_edge;
    c.placed = st.dt.pos;
    if (st.entry_side >= 0) {
      c.entry_xy = st.origin + st.t * st.dir;
      const Edge& ed = X.edge(side_edge(tr, st.entry_side));
      c.entry_offset = norm(c.entry_xy - placed_vertex(st.dt, tr, ed.a));
    } else {
      c.entry_xy = st.origin + st.t * st.dir;
      c.entry_offset = path.start_offset;
      c.entry_edge = path.start_edge;
    }

    if (t_exit > opt.budget) {
      // stop inside this triangle
      c.exit_edge = -1;
      c.exit_xy = st.origin + opt.budget * st.dir;
      path.crossings.push_back(c);
      path.length = opt.budget;
      path.status = EndStatus::BudgetExhausted;
      path.end_tri = st.dt.tri;
      path.end_xy = c.exit_xy;
      if (st.dt.exact) path.end_side_dirs = st.dt.side_dir;
      return path;
    }

    Vec2 hit = st.origin + t_exit * st.dir;
    // vertex proximity check
    for (int i = 0; i < 3; ++i) {
      if (norm(hit - st.dt.pos[i]) < opt.vertex_tolerance) {
        c.exit_edge = -1;
        c.exit_xy = hit;
        path.crossings.push_back(c);
        path.length = t_exit;
        path.status = EndStatus::HitVertex;
        path.hit_vertex = tr.v[i];
        path.end_tri = st.dt.tri;
        path.end_xy = hit;
        if (st.dt.exact) path.end_side_dirs = st.dt.side_dir;
        return path;
      }
    }

    int e = side_edge(tr, best_side);
    const Edge& ed = X.edge(e);
    Vec2 pa = placed_vertex(st.dt, tr, ed.a);
    Vec2 pb = placed_vertex(st.dt, tr, ed.b);
    double offset = norm(hit - pa);
    c.exit_edge = e;
    c.exit_offset = offset;
    c.exit_xy = hit;
    path.crossings.push_back(c);
    st.t = t_exit;

    if (opt.stop_after_crossings >= 0 &&
        static_cast<int>(path.crossings.size()) >= opt.stop_after_crossings) {
      finish_at_edge(e, hit, offset, best_side);
      path.status = EndStatus::StoppedAtEdge;
      return path;
    }

    int deg = ed.degree();
    int next_tri = -1;
    if (deg == 1) {
      finish_at_edge(e, hit, offset, best_side);
      path.status = EndStatus::HitBoundary;
      return path;
    } else if (deg == 2) {
      next_tri = ed.tris[0] == st.dt.tri ? ed.tris[1] : ed.tris[0];
    } else {
      if (next_choice < opt.branch_choices.size()) {
        next_tri = opt.branch_choices[next_choice++];
        if (next_tri == st.dt.tri || !X.triangle(next_tri).has_edge(e))
          throw Error("InvalidDirection", "branch choice not incident to edge");
      } else {
        finish_at_edge(e, hit, offset, best_side);
        path.status = EndStatus::HitBranchingEdge;
        return path;
      }
    }
    // develop next triangle on the far side
    Vec2 apex;
    for (int i = 0; i < 3; ++i)
      if (tr.v[i] != ed.a && tr.v[i] != ed.b) apex = st.dt.pos[i];
    DevTriangle nt = place_across(X, next_tri, e, pa, pb, apex);
    if (st.dt.exact && st.dir_exact) {
      AngleExpr germ = canonical_edge_dir(st.dt, tr, X, e);
      const Triangle& ntr = X.triangle(next_tri);
      int nj = side_with_edge(ntr, e);
      AngleExpr nd = (ntr.v[nj] == ed.a) ? germ : germ + angle_pi(1);
      fill_side_dirs(nt, ntr, nj, nd, env);
    }
    st.dt = nt;
    st.entry_side = side_with_edge(X.triangle(next_tri), e);
  }
  throw Error("Internal", "trace exceeded the step guard");
}

}  // namespace

bool GeodesicPath::perpendicular_end(const AtomEnv& env) const {
  if (end_angle) return *end_angle == angle_pi(1, 2);
  (void)env;
  return std::abs(end_angle_numeric - kPi / 2) < 1e-9;
}

GeodesicPath trace_from_edge(const TriangleComplex& X, const EdgeStart& s,
                             const TraceOptions& opt) {
  if (s.edge < 0 || s.edge >= X.edge_count()) throw Error("UnknownEdge", "bad edge");
  const Edge& ed = X.edge(s.edge);
  if (!(s.offset > 0) || !(s.offset < ed.length))
    throw Error("BadOffset", "edge offset must be strictly interior");
  bool incident = false;
  for (int t : ed.tris) incident |= (t == s.tri);
  if (!incident) throw Error("TriangleNotIncident", "triangle does not contain edge");
  double ang = s.angle ? s.angle->numeric(X.atoms()) : s.angle_numeric;
  if (!(ang > 0) || !(ang < kPi))
    throw Error("InvalidDirection", "launch angle must lie in (0, pi)");

  const Triangle& tr = X.triangle(s.tri);
  TraceState st;
  st.dt.tri = s.tri;
  int ja = -1, jb = -1, jc = -1;
  for (int i = 0; i < 3; ++i) {
    if (tr.v[i] == ed.a) ja = i;
    else if (tr.v[i] == ed.b) jb = i;
    else jc = i;
  }
  st.dt.pos[ja] = {0, 0};
  st.dt.pos[jb] = {ed.length, 0};
  double ac = tr.side[jb], bc = tr.side[ja];
  double x = (ed.length * ed.length + ac * ac - bc * bc) / (2 * ed.length);
  double h = std::sqrt(std::max(0.0, ac * ac - x * x));
  st.dt.pos[jc] = {x, h};  // triangle above the edge
  st.entry_side = side_with_edge(tr, s.edge);
  st.origin = {s.offset, 0};
  st.dir = {std::cos(ang), std::sin(ang)};
  if (s.angle) {
    // canonical a->b direction is 0 in this frame
    int j = st.entry_side;
    fill_side_dirs(st.dt, tr, j, (tr.v[j] == ed.a) ? AngleExpr() : angle_pi(1),
                   X.atoms());
    st.dir_exact = *s.angle;
  }

  GeodesicPath path;
  path.start_edge = s.edge;
  path.start_offset = s.offset;
  path.start_tri = s.tri;
  path.start_angle = s.angle;
  path.start_angle_numeric = ang;
  path.start_xy = st.origin;
  return run_trace(X, std::move(st), opt, std::move(path));
}

GeodesicPath trace_from_tri(const TriangleComplex& X, const TriStart& s,
                            const TraceOptions& opt) {
  if (s.tri < 0 || s.tri >= X.triangle_count())
    throw Error("UnknownTriangle", "bad triangle");
  const Triangle& tr = X.triangle(s.tri);
  double bsum = s.bary[0] + s.bary[1] + s.bary[2];
  if (std::abs(bsum - 1) > 1e-9 || s.bary[0] <= 0 || s.bary[1] <= 0 || s.bary[2] <= 0)
    throw Error("BadStart", "barycentric coordinates must be interior");

  TraceState st;
  st.dt.tri = s.tri;
  double l01 = tr.side[2], l02 = tr.side[1], l12 = tr.side[0];
  st.dt.pos[0] = {0, 0};
  st.dt.pos[1] = {l01, 0};
  double x = (l01 * l01 + l02 * l02 - l12 * l12) / (2 * l01);
  double h = std::sqrt(std::max(0.0, l02 * l02 - x * x));
  st.dt.pos[2] = {x, h};
  st.origin = s.bary[0] * st.dt.pos[0] + s.bary[1] * st.dt.pos[1] +
              s.bary[2] * st.dt.pos[2];
  double ang = s.angle ? s.angle->numeric(X.atoms()) : s.angle_numeric;
  st.dir = {std::cos(ang), std::sin(ang)};
  if (s.angle) {
    fill_side_dirs(st.dt, tr, 0, AngleExpr(), X.atoms());
    st.dir_exact = *s.angle;
  }
  GeodesicPath path;
  path.start_tri = s.tri;
  path.start_angle = s.angle;
  path.start_angle_numeric = ang;
  path.start_xy = st.origin;
  return run_trace(X, std::move(st), opt, std::move(path));
}

GeodesicPath trace_from_vertex(const TriangleComplex& X, const VertexStart& s,
                               const TraceOptions& opt) {
  if (s.vertex < 0 || s.vertex >= X.vertex_count())
    throw Error("UnknownVertex", "bad vertex");
  const Triangle& tr = X.triangle(s.tri);
  int corner = tr.corner_of(s.vertex);
  if (corner < 0) throw Error("TriangleNotIncident", "vertex not on triangle");
  const Edge& ref = X.edge(s.ref_edge);
  if (side_with_edge(tr, s.ref_edge) < 0 ||
      (ref.a != s.vertex && ref.b != s.vertex))
    throw Error("TriangleNotIncident", "reference edge must contain the vertex");
  double ang = s.angle ? s.angle->numeric(X.atoms()) : s.angle_numeric;
  double corner_num = tr.angle[corner].numeric(X.atoms());
  if (!(ang > 0) || !(ang < corner_num))
    throw Error("InvalidDirection", "angle must rotate into the corner");

  int w = ref.a == s.vertex ? ref.b : ref.a;
  TraceState st;
  st.dt.tri = s.tri;
  int jv = corner, jw = -1, jc = -1;
  for (int i = 0; i < 3; ++i) {
    if (i == jv) continue;
    if (tr.v[i] == w) jw = i;
    else jc = i;
  }
  st.dt.pos[jv] = {0, 0};
  st.dt.pos[jw] = {ref.length, 0};
  double vc = 0, wc = 0;  // |v-c| and |w-c|
  vc = tr.side[jw];
  wc = tr.side[jv];
  double x = (ref.length * ref.length + vc * vc - wc * wc) / (2 * ref.length);
  double h = std::sqrt(std::max(0.0, vc * vc - x * x));
  st.dt.pos[jc] = {x, h};
  st.origin = {0, 0};
  st.dir = {std::cos(ang), std::sin(ang)};
  st.skip_vertex = s.vertex;
  if (s.angle) {
    // germ (v -> w) has direction 0; the local side from v to w is jv if
    // v[jv+1]==w else the side jw with reversed orientation.
    if ((jv + 1) % 3 == jw)
      fill_side_dirs(st.dt, tr, jv, AngleExpr(), X.atoms());
    else
      fill_side_dirs(st.dt, tr, jw, angle_pi(1), X.atoms());
    st.dir_exact = *s.angle;
  }
  GeodesicPath path;
  path.start_vertex = s.vertex;
  path.start_tri = s.tri;
  path.start_ref_edge = s.ref_edge;
  path.start_angle = s.angle;
  path.start_angle_numeric = ang;
  path.start_xy = st.origin;
  return run_trace(X, std::move(st), opt, std::move(path));
}

GeodesicPath shoot_perpendicular(const TriangleComplex& X, int e, double offset,
                                 int tri, const TraceOptions& opt) {
  EdgeStart s;
  s.edge = e;
  s.offset = offset;
  s.tri = tri;
  s.angle = angle_pi(1, 2);
  return trace_from_edge(X, s, opt);
}

EdgePlacement arrival_edge_placement(const TriangleComplex& X,
                                     const GeodesicPath& path) {
  if (path.end_edge < 0 || path.crossings.empty())
    throw Error("Internal", "path did not end on an edge");
  const Crossing& last = path.crossings.back();
  const Triangle& tr = X.triangle(last.tri);
  const Edge& ed = X.edge(path.end_edge);
  EdgePlacement out;
  for (int i = 0; i < 3; ++i) {
    if (tr.v[i] == ed.a) out.a = last.placed[i];
    if (tr.v[i] == ed.b) out.b = last.placed[i];
  }
  return out;
}

int arrival_side(const TriangleComplex& X, const GeodesicPath& path) {
  const Crossing& last = path.crossings.back();
  const Triangle& tr = X.triangle(last.tri);
  const Edge& ed = X.edge(path.end_edge);
  Vec2 pa{}, pb{}, apex{};
  for (int i = 0; i < 3; ++i) {
    if (tr.v[i] == ed.a)
      pa = last.placed[i];
    else if (tr.v[i] == ed.b)
      pb = last.placed[i];
    else
      apex = last.placed[i];
  }
  return cross(pb - pa, apex - pa) > 0 ? 1 : -1;
}

Frame frame_onto(const EdgePlacement& target, int body_side) {
  Vec2 d = target.b - target.a;
  double L = norm(d);
  Frame f;
  f.origin = target.a;
  f.u = {d.x / L, d.y / L};
  Vec2 ccw{-f.u.y, f.u.x};
  f.n = body_side > 0 ? ccw : Vec2{-ccw.x, -ccw.y};
  return f;
}

GeodesicPath transformed(const GeodesicPath& path, const Frame& f) {
  GeodesicPath out = path;
  out.start_xy = f.apply(path.start_xy);
  out.end_xy = f.apply(path.end_xy);
  for (auto& c : out.crossings) {
    c.entry_xy = f.apply(c.entry_xy);
    c.exit_xy = f.apply(c.exit_xy);
    for (auto& p : c.placed) p = f.apply(p);
  }
  Vec2 d{std::cos(path.dir_numeric), std::sin(path.dir_numeric)};
  Vec2 dt = (d.x * f.u) + (d.y * f.n);
  out.dir_numeric = std::atan2(dt.y, dt.x);
  // Exact direction bookkeeping stays frame-local: unsigned comparisons
  // between dir_exact and end_side_dirs are reflection invariant.
  return out;
}

namespace {

// Append `tail` (a trace launched from head's end edge) onto head, mapping
// the tail's geometry into the head's development frame on the far side of
// the shared edge.
GeodesicPath concat_paths(const TriangleComplex& X, const GeodesicPath& head,
                          const GeodesicPath& tail) {
  EdgePlacement target = arrival_edge_placement(X, head);
  int side = arrival_side(X, head);
  Frame f = frame_onto(target, -side);
  GeodesicPath t = transformed(tail, f);
  GeodesicPath out = head;
  out.crossings.insert(out.crossings.end(), t.crossings.begin(), t.crossings.end());
  out.length = head.length + tail.length;
  out.status = t.status;
  out.hit_vertex = t.hit_vertex;
  out.end_edge = t.end_edge;
  out.end_offset = t.end_offset;
  out.end_tri = t.end_tri;
  out.end_xy = t.end_xy;
  out.end_angle = t.end_angle;
  out.end_angle_numeric = t.end_angle_numeric;
  out.end_side_dirs = t.end_side_dirs;
  out.dir_numeric = t.dir_numeric;
  return out;
}

}  // namespace

std::vector<GeodesicPath> trace_enumerate(const TriangleComplex& X,
                                          const EdgeStart& s, double budget,
                                          double vertex_tolerance) {
  std::vector<GeodesicPath> out;
  TraceOptions opt;
  opt.budget = budget;
  opt.vertex_tolerance = vertex_tolerance;
  GeodesicPath first = trace_from_edge(X, s, opt);
  struct Item {
    GeodesicPath path;
  };
  std::vector<Item> queue;
  queue.push_back({std::move(first)});
  while (!queue.empty()) {
    Item it = std::move(queue.back());
    queue.pop_back();
    if (it.path.status != EndStatus::HitBranchingEdge) {
      out.push_back(std::move(it.path));
      continue;
    }
    double remaining = budget - it.path.length;
    out.push_back(it.path);
    if (remaining <= 1e-12) continue;
    const Edge& ed = X.edge(it.path.end_edge);
    for (int t : ed.tris) {
      if (t == it.path.end_tri) continue;
      EdgeStart cont;
      cont.edge = it.path.end_edge;
      cont.offset = it.path.end_offset;
      cont.tri = t;
      cont.angle = it.path.end_angle;
      cont.angle_numeric = it.path.end_angle_numeric;
      TraceOptions copt;
      copt.budget = remaining;
      copt.vertex_tolerance = vertex_tolerance;
      GeodesicPath tail = trace_from_edge(X, cont, copt);
      queue.push_back({concat_paths(X, it.path, tail)});
    }
  }
  std::sort(out.begin(), out.end(), [](const GeodesicPath& a, const GeodesicPath& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.crossings.size() < b.crossings.size();
  });
  return out;
}

namespace {

// Link position of a direction germ at an edge-interior point: the germ in
// triangle `tri` making unsigned angle `phi` with the canonical a->b vector
// sits on tri's arc at distance (pi - phi) from the "toward a" node.
LinkPoint edge_link_point(const TriangleComplex& X, const LinkGraph& L, int edge,
                          int tri, const std::optional<AngleExpr>& phi,
                          double phi_numeric) {
  const Edge& ed = X.edge(edge);
  int arc = -1;
  for (int i = 0; i < static_cast<int>(ed.tris.size()); ++i)
    if (ed.tris[i] == tri) arc = i;
  if (arc < 0) throw Error("Internal", "triangle not at edge");
  LinkPoint p;
  p.arc = arc;
  p.offset = phi ? angle_pi(1) - *phi : AngleExpr();
  p.numeric_offset = kPi - phi_numeric;
  if (!phi) p.offset = AngleExpr::pi(Rational(0));
  (void)L;
  return p;
}

struct JunctionInfo {
  Breakpoint bp;
};

// Directions of arrival (backward germ) and departure at the junction of
// consecutive pieces; throws DiscontinuousPath when they do not meet.
Breakpoint junction_breakpoint(const TriangleComplex& X, const GeodesicPath& A,
                               const GeodesicPath& B) {
  const AtomEnv& env = X.atoms();
  Breakpoint bp;
  if (A.status == EndStatus::HitVertex) {
    if (B.start_vertex != A.hit_vertex)
      throw Error("DiscontinuousPath", "pieces do not share the vertex");
    int v = A.hit_vertex;
    bp.at_vertex = true;
    bp.vertex = v;
    LinkGraph L = link_of_vertex(X, v);
    // incoming backward germ inside A.end_tri
    const Triangle& tra = X.triangle(A.end_tri);
    int ca = tra.corner_of(v);
    int e1 = tra.edge[(ca + 1) % 3], e2 = tra.edge[(ca + 2) % 3];
    int emin = std::min(e1, e2);
    // arc index: position of A.end_tri among triangles at v (insertion order)
    int arc = -1, k = 0;
    for (int t = 0; t < X.triangle_count(); ++t) {
      if (X.triangle(t).corner_of(v) < 0) continue;
      if (t == A.end_tri) arc = k;
      ++k;
    }
    if (arc < 0) throw Error("Internal", "end triangle not at vertex");
    // Exact germ offset: angle between backward ray and germ (v -> x) where
    // (v,x) = emin.
    if (!A.dir_exact || !A.end_side_dirs)
      throw Error("DiscontinuousPath",
                  "vertex junctions need exact launch directions");
    const Edge& em = X.edge(emin);
    int x = em.a == v ? em.b : em.a;
    // find the oriented germ (v -> x) in A.end_side_dirs
    AngleExpr germ;
    bool found = false;
    for (int j = 0; j < 3; ++j) {
      if (tra.v[j] == v && tra.v[(j + 1) % 3] == x) {
        germ = (*A.end_side_dirs)[j];
        found = true;
      } else if (tra.v[(j + 1) % 3] == v && tra.v[j] == x) {
        germ = (*A.end_side_dirs)[j] + angle_pi(1);
        found = true;
      }
    }
    if (!found) throw Error("Internal", "germ not found");
    AngleExpr back = *A.dir_exact + angle_pi(1);
    // numeric target
    double bn = wrap_pi(A.dir_numeric + kPi);
    double gn = germ.numeric(env);
    double target = std::abs(wrap_pi(bn - gn));
    LinkPoint pin;
    pin.arc = arc;
    pin.offset = unsigned_from_delta(back - germ, target, env);
    pin.numeric_offset = target;

    // outgoing germ from B (a vertex start)
    if (B.start_vertex != v || !B.start_angle)
      throw Error("DiscontinuousPath", "outgoing piece must start at the vertex");
    const Triangle& trb = X.triangle(B.start_tri);
    int cb = trb.corner_of(v);
    int f1 = trb.edge[(cb + 1) % 3], f2 = trb.edge[(cb + 2) % 3];
    int fmin = std::min(f1, f2);
    int arcb = -1;
    k = 0;
    for (int t = 0; t < X.triangle_count(); ++t) {
      if (X.triangle(t).corner_of(v) < 0) continue;
      if (t == B.start_tri) arcb = k;
      ++k;
    }
    LinkPoint pout;
    pout.arc = arcb;
    if (B.start_ref_edge == fmin) {
      pout.offset = *B.start_angle;
    } else {
      pout.offset = trb.angle[cb] - *B.start_angle;
    }
    pout.numeric_offset = pout.offset.numeric(env);
    bp.distance = link_distance(L, env, pin, pout);
    return bp;
  }
  // edge junction
  if (A.end_edge < 0 || B.start_edge != A.end_edge ||
      std::abs(B.start_offset - A.end_offset) > 1e-9)
    throw Error("DiscontinuousPath", "pieces do not meet on a common edge point");
  bp.at_vertex = false;
  bp.edge = A.end_edge;
  LinkGraph L = link_of_edge_point(X, A.end_edge);
  // incoming backward germ: unsigned angle pi - theta_arr
  std::optional<AngleExpr> in_phi;
  if (A.end_angle) in_phi = angle_pi(1) - *A.end_angle;
  LinkPoint pin = edge_link_point(X, L, A.end_edge, A.end_tri, in_phi,
                                  kPi - A.end_angle_numeric);
  if (!A.end_angle) {
    pin.offset = AngleExpr();  // exact part unavailable
  }
  std::optional<AngleExpr> out_phi = B.start_angle;
  LinkPoint pout = edge_link_point(X, L, B.start_edge, B.start_tri, out_phi,
                                   B.start_angle_numeric);
  bp.distance = link_distance(L, env, pin, pout);
  if (!A.end_angle || !B.start_angle) bp.distance.has_exact = false;
  return bp;
}

}  // namespace

LocalGeodesicReport verify_local_geodesic(const TriangleComplex& X,
                                          const PiecewiseGeodesic& p) {
  LocalGeodesicReport rep;
  if (p.pieces.empty()) throw Error("DiscontinuousPath", "no pieces");
  rep.min_breakpoint_distance = std::numeric_limits<double>::infinity();
  const AngleExpr pi1 = angle_pi(1);
  for (size_t i = 0; i + 1 < p.pieces.size(); ++i) {
    Breakpoint bp = junction_breakpoint(X, p.pieces[i], p.pieces[i + 1]);
    rep.min_breakpoint_distance =
        std::min(rep.min_breakpoint_distance, bp.distance.numeric);
    bool ok;
    if (bp.distance.has_exact)
      ok = compare(bp.distance.exact, pi1, X.atoms()) >= 0;
    else
      ok = bp.distance.numeric >= kPi - 1e-9;
    if (!ok) rep.ok = false;
    rep.breakpoints.push_back(std::move(bp));
  }
  if (p.pieces.size() == 1)
    rep.min_breakpoint_distance = kPi;  // no breakpoints; straight by construction
  return rep;
}

std::optional<int> is_curved(const TriangleComplex& X, const PiecewiseGeodesic& p) {
  const AngleExpr pi1 = angle_pi(1);
  for (size_t i = 0; i + 1 < p.pieces.size(); ++i) {
    Breakpoint bp = junction_breakpoint(X, p.pieces[i], p.pieces[i + 1]);
    if (!bp.at_vertex) continue;
    bool curved;
    if (bp.distance.has_exact)
      curved = compare(bp.distance.exact, pi1, X.atoms()) > 0;
    else
      curved = bp.distance.numeric > kPi + 1e-9;
    if (curved) return bp.vertex;
  }
  return std::nullopt;
}

XPoint tri_point(int tri, std::array<double, 3> bary) {
  XPoint p;
  p.tri = tri;
  p.bary = bary;
  return p;
}

XPoint edge_point(int edge, double offset) {
  XPoint p;
  p.edge = edge;
  p.offset = offset;
  return p;
}

namespace {

struct SearchState {
  int tri = -1;
  int entry_edge = -1;
  std::array<Vec2, 3> placed{};
  double wlo = 0, whi = 0;  // direction window from the source point
  double bound = 0;
  int parent = -1;
};

Vec2 placed_of(const TriangleComplex& X, const SearchState& s, int vertex) {
  const Triangle& tr = X.triangle(s.tri);
  for (int i = 0; i < 3; ++i)
    if (tr.v[i] == vertex) return s.placed[i];
  throw Error("Internal", "vertex not in state triangle");
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double L2 = dot(ab, ab);
  if (L2 <= 0) return norm(p - a);
  double t = std::clamp(dot(p - a, ab) / L2, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

// Distance from the origin-point to the part of segment [A,B] whose
// direction from `p` lies in [wlo, whi].
double window_distance(Vec2 p, Vec2 A, Vec2 B, double wlo, double whi,
                       double alo, double ahi) {
  // alo/ahi: unwrapped direction angles of A and B from p
  double lo = std::max(wlo, std::min(alo, ahi));
  double hi = std::min(whi, std::max(alo, ahi));
  if (lo > hi) return std::numeric_limits<double>::infinity();
  auto point_at = [&](double ang) {
    // intersect ray from p at angle ang with segment AB
    Vec2 d{std::cos(ang), std::sin(ang)};
    Vec2 ab = B - A;
    double denom = cross(d, ab);
    if (std::abs(denom) < 1e-15) return A;
    double s = cross(A - p, d) / denom;
    s = std::clamp(s, 0.0, 1.0);
    return A + s * ab;
  };
  Vec2 pa = point_at(lo), pb = point_at(hi);
  return point_segment_distance(p, pa, pb);
}

double unwrap_near(double ang, double ref) {
  while (ang < ref - kPi) ang += 2 * kPi;
  while (ang > ref + kPi) ang -= 2 * kPi;
  return ang;
}

}  // namespace

GeodesicPath geodesic_between(const TriangleComplex& X, const XPoint& p,
                              const XPoint& q, double budget,
                              bool simply_connected_asserted) {
  if (!simply_connected_asserted)
    throw Error("NotSimplyConnectedAsserted",
                "geodesic_between requires the caller to assert simple "
                "connectivity (or accept shortest-path semantics)");
  if (budget <= 0) throw Error("ZeroBudget", "budget must be positive");

  auto bary_of = [&](const XPoint& pt, const SearchState& s) -> Vec2 {
    // position of pt inside state triangle s
    if (pt.tri == s.tri) {
      const Triangle& tr = X.triangle(s.tri);
      (void)tr;
      return pt.bary[0] * s.placed[0] + pt.bary[1] * s.placed[1] +
             pt.bary[2] * s.placed[2];
    }
    const Edge& ed = X.edge(pt.edge);
    Vec2 a = placed_of(X, s, ed.a), b = placed_of(X, s, ed.b);
    double t = pt.offset / ed.length;
    return a + t * (b - a);
  };
  auto hosts = [&](const XPoint& pt) {
    std::vector<int> out;
    if (pt.tri >= 0) {
      out.push_back(pt.tri);
    } else {
      for (int t : X.edge(pt.edge).tris) out.push_back(t);
    }
    return out;
  };
  auto hosted_by = [&](const XPoint& pt, int tri) {
    if (pt.tri >= 0) return pt.tri == tri;
    return X.triangle(tri).has_edge(pt.edge);
  };

  // same-edge special case: the edge itself is a geodesic
  if (p.edge >= 0 && q.edge >= 0 && p.edge == q.edge) {
    GeodesicPath out;
    out.length = std::abs(p.offset - q.offset);
    if (out.length <= 0) throw Error("BadQuery", "p and q must be distinct");
    out.status = EndStatus::ReachedTarget;
    out.start_xy = {p.offset, 0};
    out.end_xy = {q.offset, 0};
    out.start_edge = p.edge;
    out.start_offset = p.offset;
    out.end_edge = q.edge;
    out.end_offset = q.offset;
    return out;
  }

  struct Candidate {
    double length = std::numeric_limits<double>::infinity();
    int state = -1;
    Vec2 q_dev;
    Vec2 p_dev;
  };
  Candidate best;
  std::vector<SearchState> pool;
  using QItem = std::pair<double, int>;
  std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;

  for (int host : hosts(p)) {
    SearchState root;
    root.tri = host;
    root.entry_edge = -1;
    const Triangle& tr = X.triangle(host);
    double l01 = tr.side[2], l02 = tr.side[1], l12 = tr.side[0];
    root.placed[0] = {0, 0};
    root.placed[1] = {l01, 0};
    double x = (l01 * l01 + l02 * l02 - l12 * l12) / (2 * l01);
    double h = std::sqrt(std::max(0.0, l02 * l02 - x * x));
    root.placed[2] = {x, h};
    root.wlo = -2 * kPi;
    root.whi = 2 * kPi;
    root.bound = 0;
    root.parent = -1;
    pool.push_back(root);
    pq.push({0.0, static_cast<int>(pool.size()) - 1});
  }

  auto p_dev_of_rootchain = [&](int state_idx) {
    int cur = state_idx;
    while (pool[cur].parent >= 0) cur = pool[cur].parent;
    return bary_of(p, pool[cur]);
  };

  int guard = 0;
  while (!pq.empty()) {
    auto [bound, idx] = pq.top();
    pq.pop();
    if (++guard > 2000000) throw Error("Internal", "geodesic search exploded");
    if (bound >= best.length) break;
    if (bound > budget) break;
    SearchState st = pool[idx];
    Vec2 pd = p_dev_of_rootchain(idx);

    if (hosted_by(q, st.tri)) {
      Vec2 qd = bary_of(q, st);
      double len = norm(qd - pd);
      double ang = std::atan2(qd.y - pd.y, qd.x - pd.x);
      bool dir_ok = true;
      if (st.entry_edge >= 0) {
        double mid = 0.5 * (st.wlo + st.whi);
        double a = unwrap_near(ang, mid);
        dir_ok = (a >= st.wlo - 1e-12 && a <= st.whi + 1e-12);
      }
      if (dir_ok && len > 1e-12 && len < best.length && len <= budget) {
        best.length = len;
        best.state = idx;
        best.q_dev = qd;
        best.p_dev = pd;
      }
    }
    const Triangle& tr = X.triangle(st.tri);
    for (int j = 0; j < 3; ++j) {
      int e = side_edge(tr, j);
      if (e == st.entry_edge) continue;
      // A straight segment from a point on an edge cannot exit through the
      // same edge again.
      if (st.entry_edge < 0 && p.edge >= 0 && e == p.edge) continue;
      Vec2 A = st.placed[j], B = st.placed[(j + 1) % 3];
      double mid = st.entry_edge >= 0 ? 0.5 * (st.wlo + st.whi)
                                      : std::atan2((0.5 * (A + B) - pd).y,
                                                   (0.5 * (A + B) - pd).x);
      double aA = unwrap_near(std::atan2(A.y - pd.y, A.x - pd.x), mid);
      double aB = unwrap_near(std::atan2(B.y - pd.y, B.x - pd.x), mid);
      double lo = std::max(st.wlo, std::min(aA, aB));
      double hi = std::min(st.whi, std::max(aA, aB));
      if (lo > hi - 1e-14) continue;
      double dist = window_distance(pd, A, B, st.wlo, st.whi, std::min(aA, aB),
                                    std::max(aA, aB));
      if (dist > budget || dist >= best.length) continue;
      const Edge& ed = X.edge(e);
      for (int nt : ed.tris) {
        if (nt == st.tri) continue;
        Vec2 apex = st.placed[(j + 2) % 3];
        DevTriangle dt = place_across(X, nt, e, placed_of(X, st, ed.a),
                                      placed_of(X, st, ed.b), apex);
        SearchState child;
        child.tri = nt;
        child.entry_edge = e;
        child.placed = dt.pos;
        child.wlo = lo;
        child.whi = hi;
        child.bound = dist;
        child.parent = idx;
        pool.push_back(child);
        pq.push({dist, static_cast<int>(pool.size()) - 1});
      }
    }
  }

  if (best.state < 0)
    throw Error("BudgetTooSmall", "no path to target within budget");

  // Reconstruct crossings along the winning chain.
  std::vector<int> chain;
  for (int cur = best.state; cur >= 0; cur = pool[cur].parent) chain.push_back(cur);
  std::reverse(chain.begin(), chain.end());
  GeodesicPath out;
  out.length = best.length;
  out.status = EndStatus::ReachedTarget;
  out.start_xy = best.p_dev;
  out.end_xy = best.q_dev;
  Vec2 dirv = best.q_dev - best.p_dev;
  out.dir_numeric = std::atan2(dirv.y, dirv.x);
  if (p.tri >= 0) out.start_tri = p.tri;
  if (p.edge >= 0) {
    out.start_edge = p.edge;
    out.start_offset = p.offset;
  }
  if (q.edge >= 0) {
    out.end_edge = q.edge;
    out.end_offset = q.offset;
  }
  out.end_tri = pool[best.state].tri;
  Vec2 u = (1.0 / best.length) * dirv;
  for (size_t i = 0; i < chain.size(); ++i) {
    const SearchState& st = pool[chain[i]];
    Crossing c;
    c.tri = st.tri;
    c.placed = st.placed;
    c.entry_edge = st.entry_edge;
    if (st.entry_edge >= 0) {
      const Edge& ed = X.edge(st.entry_edge);
      Vec2 A = placed_of(X, st, ed.a), B = placed_of(X, st, ed.b);
      Vec2 ab = B - A;
      double denom = cross(u, ab);
      double tt = std::abs(denom) < 1e-15
                      ? 0
                      : cross(A - best.p_dev, ab) / denom;
      c.entry_xy = best.p_dev + tt * u;
      c.entry_offset = norm(c.entry_xy - A);
    } else {
      c.entry_xy = best.p_dev;
    }
    if (i + 1 < chain.size()) {
      const SearchState& nx = pool[chain[i + 1]];
      const Edge& ed = X.edge(nx.entry_edge);
      Vec2 A = placed_of(X, st, ed.a), B = placed_of(X, st, ed.b);
      Vec2 ab = B - A;
      double denom = cross(u, ab);
      double tt = std::abs(denom) < 1e-15 ? 0 : cross(A - best.p_dev, ab) / denom;
      c.exit_edge = nx.entry_edge;
      c.exit_xy = best.p_dev + tt * u;
      c.exit_offset = norm(c.exit_xy - A);
    } else {
      c.exit_edge = -1;
      c.exit_xy = best.q_dev;
    }
    out.crossings.push_back(c);
  }
  return out;
}

}  // namespace tcx
