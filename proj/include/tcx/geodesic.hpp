#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <vector>

#include "tcx/complex.hpp"
#include "tcx/link.hpp"

namespace tcx {

struct Vec2 {
  double x = 0, y = 0;
};
inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

enum class EndStatus {
  BudgetExhausted,
  HitBranchingEdge,
  HitBoundary,
  HitVertex,
  ReachedTarget,
  StoppedAtEdge,  // stop_after_crossings reached
};

struct Crossing {
  int tri = -1;
  int entry_edge = -1;  // -1 for the first triangle of an interior start
  double entry_offset = 0;  // along the canonical a->b direction
  int exit_edge = -1;
  double exit_offset = 0;
  Vec2 entry_xy, exit_xy;
  std::array<Vec2, 3> placed;  // development position of tri's vertices
};

struct GeodesicPath {
  Vec2 start_xy;
  std::vector<Crossing> crossings;
  double length = 0;
  EndStatus status = EndStatus::BudgetExhausted;
  int hit_vertex = -1;
  int end_edge = -1;
  double end_offset = 0;
  int end_tri = -1;  // triangle the path ends in
  Vec2 end_xy;
  // Unsigned angle in (0,pi) between the ray and the canonical direction of
  // end_edge; exact when the launch direction was exact.
  std::optional<AngleExpr> end_angle;
  double end_angle_numeric = 0;
  // Ray direction in the development frame.
  std::optional<AngleExpr> dir_exact;
  double dir_numeric = 0;
  // Exact oriented side directions (v[i] -> v[i+1]) of end_tri at arrival.
  std::optional<std::array<AngleExpr, 3>> end_side_dirs;

  // Launch bookkeeping, used when verifying concatenations.
  int start_edge = -1;
  double start_offset = 0;
  int start_tri = -1;
  std::optional<AngleExpr> start_angle;
  double start_angle_numeric = 0;
  int start_vertex = -1;
  int start_ref_edge = -1;

  bool perpendicular_end(const AtomEnv& env) const;
};

// Launch from an edge-interior point into a named incident triangle, at the
// unsigned angle `angle` from the canonical a->b direction of the edge.
struct EdgeStart {
  int edge = -1;
  double offset = 0;
  int tri = -1;
  std::optional<AngleExpr> angle;  // exact mode when set
  double angle_numeric = 0;
};

// Launch from a triangle-interior point (barycentric w.r.t. v[0],v[1],v[2]),
// direction measured counterclockwise from the oriented side v[0]->v[1] in
// the canonical placement (v[2] in the upper half plane).
struct TriStart {
  int tri = -1;
  std::array<double, 3> bary{1.0 / 3, 1.0 / 3, 1.0 / 3};
  std::optional<AngleExpr> angle;
  double angle_numeric = 0;
};

// Launch from a vertex of a triangle into its corner: direction at `angle`
// from the oriented germ (vertex -> other end of ref_edge), rotating into
// the triangle; 0 < angle < corner angle.
struct VertexStart {
  int vertex = -1;
  int tri = -1;
  int ref_edge = -1;
  std::optional<AngleExpr> angle;
  double angle_numeric = 0;
};

struct TraceOptions {
  double budget = 0;
  // Triangles to continue into at successive degree>=3 edges; when exhausted
  // the trace stops there with HitBranchingEdge.
  std::vector<int> branch_choices;
  double vertex_tolerance = 1e-9;
  // Stop on the exit edge of the k-th crossing (with arrival data), -1 = off.
  int stop_after_crossings = -1;
};

GeodesicPath trace_from_edge(const TriangleComplex& X, const EdgeStart& s,
                             const TraceOptions& opt);
GeodesicPath trace_from_tri(const TriangleComplex& X, const TriStart& s,
                            const TraceOptions& opt);
GeodesicPath trace_from_vertex(const TriangleComplex& X, const VertexStart& s,
                               const TraceOptions& opt);

// All straight extensions within budget, branching over every continuation
// at degree>=3 edges. Paths ending at a branching edge are included (they
// are the prefixes at which enumeration forked).
std::vector<GeodesicPath> trace_enumerate(const TriangleComplex& X,
                                          const EdgeStart& s, double budget,
                                          double vertex_tolerance = 1e-9);

GeodesicPath shoot_perpendicular(const TriangleComplex& X, int e, double offset,
                                 int tri, const TraceOptions& opt);

struct PiecewiseGeodesic {
  std::vector<GeodesicPath> pieces;
};

struct Breakpoint {
  bool at_vertex = false;
  int vertex = -1;
  int edge = -1;
  LinkDistance distance;  // between incoming and outgoing directions
};

struct LocalGeodesicReport {
  bool ok = true;
  double min_breakpoint_distance = 0;
  std::vector<Breakpoint> breakpoints;
};

LocalGeodesicReport verify_local_geodesic(const TriangleComplex& X,
                                          const PiecewiseGeodesic& p);

// First vertex on the path where incoming/outgoing directions are at link
// distance strictly greater than pi.
std::optional<int> is_curved(const TriangleComplex& X, const PiecewiseGeodesic& p);

// A point of X: either triangle-interior (tri >= 0) or edge-interior.
struct XPoint {
  int tri = -1;
  std::array<double, 3> bary{0, 0, 0};
  int edge = -1;
  double offset = 0;
};
XPoint tri_point(int tri, std::array<double, 3> bary);
XPoint edge_point(int edge, double offset);

// Shortest straight-in-development path from p to q over all crossing
// sequences of developed length <= budget, certified locally geodesic.
GeodesicPath geodesic_between(const TriangleComplex& X, const XPoint& p,
                              const XPoint& q, double budget,
                              bool simply_connected_asserted);

// Development-frame helpers. Every traced path lives in the frame of its
// start edge (canonical endpoints at (0,0) and (L,0), first triangle above).
struct EdgePlacement {
  Vec2 a, b;  // canonical endpoints
};
// Placement of the arrival edge of a path that ended on an edge.
EdgePlacement arrival_edge_placement(const TriangleComplex& X,
                                     const GeodesicPath& path);
// Side (+1/-1) of the arrival edge line on which the path's final triangle
// lies, relative to the canonical a->b direction.
int arrival_side(const TriangleComplex& X, const GeodesicPath& path);
// Rigid motion mapping the frame ((0,0),(L,0), body above) onto the given
// placement with the prescribed body side.
struct Frame {
  Vec2 origin;
  Vec2 u;  // image of (1,0)
  Vec2 n;  // image of (0,1)
  Vec2 apply(Vec2 p) const { return origin + p.x * u + p.y * n; }
};
Frame frame_onto(const EdgePlacement& target, int body_side);
// Rewrites all of `path`'s geometry through the frame map.
GeodesicPath transformed(const GeodesicPath& path, const Frame& f);

}  // namespace tcx
