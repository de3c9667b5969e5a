#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tcx/angle.hpp"

namespace tcx {

// Corner i of a triangle sits at vertex v[i]; side[i] / edge[i] is the side
// opposite corner i (joining the other two vertices).
struct Triangle {
  std::array<int, 3> v;
  std::array<AngleExpr, 3> angle;
  std::array<double, 3> side;
  std::array<int, 3> edge;  // filled by finalize()

  int corner_of(int vertex) const {
    for (int i = 0; i < 3; ++i)
      if (v[i] == vertex) return i;
    return -1;
  }
  bool has_edge(int e) const {
    return edge[0] == e || edge[1] == e || edge[2] == e;
  }
  // Local index of an edge (the corner it is opposite to), or -1.
  int side_of(int e) const {
    for (int i = 0; i < 3; ++i)
      if (edge[i] == e) return i;
    return -1;
  }
};

struct Edge {
  int a = -1, b = -1;  // a < b
  double length = 0;
  std::vector<int> tris;  // triangles containing this edge, ascending
  int degree() const { return static_cast<int>(tris.size()); }
};

struct Classification {
  bool essential = false;
  bool thick = false;
  int components = 0;
};

// A maximal connected piece of X off the branching locus, with the
// combinatorics of its completion (a surface with boundary).
struct Patch {
  int id = 0;
  std::vector<int> tris;            // ascending triangle ids
  std::vector<int> interior_edges;  // edges gluing two patch triangles
  struct BoundarySide {             // one completion boundary edge per
    int tri;                        // (triangle, branching-or-free edge)
    int edge;
  };
  std::vector<BoundarySide> boundary;
  bool orientable = false;
  // orientation[k] in {+1,-1} for tris[k]; meaningful when orientable.
  std::vector<int> orientation;
  int completion_vertices = 0;
  int completion_boundary_components = 0;
  long long completion_euler() const {
    return static_cast<long long>(completion_vertices) -
           (static_cast<long long>(interior_edges.size()) +
            static_cast<long long>(boundary.size())) +
           static_cast<long long>(tris.size());
  }
  // Link length of each completion boundary vertex (sum of the sector's
  // corner angles), for the q of the shear spectrum.
  std::vector<AngleExpr> boundary_vertex_links;
};

class TriangleComplex {
 public:
  // -- construction ---------------------------------------------------------
  int add_vertex(const std::string& name);
  void add_triangle(const std::array<int, 3>& v,
                    const std::array<AngleExpr, 3>& angles,
                    const std::array<double, 3>& sides);
  void add_bare_edge(int a, int b, double length);
  void set_atoms(AtomEnv env) { atoms_ = std::move(env); }
  // Derives edges and checks every invariant; throws Error on violation.
  void finalize();

  // -- accessors ------------------------------------------------------------
  const AtomEnv& atoms() const { return atoms_; }
  int vertex_count() const { return static_cast<int>(vertex_names_.size()); }
  int triangle_count() const { return static_cast<int>(tris_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::string& vertex_name(int v) const { return vertex_names_[v]; }
  std::optional<int> vertex_by_name(const std::string& name) const;
  const Triangle& triangle(int t) const { return tris_[t]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Triangle>& triangles() const { return tris_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::optional<int> edge_between(int a, int b) const;
  // Third vertex of triangle t across edge e.
  int apex(int t, int e) const;

  // -- analyses -------------------------------------------------------------
  int edge_degree(int e) const;
  Classification classify() const;
  std::vector<int> branching_locus() const;  // ascending edge ids, degree >= 3
  std::vector<Patch> patches() const;
  long long euler_characteristic() const;
  std::vector<std::vector<int>> vertex_components() const;

 private:
  std::vector<std::string> vertex_names_;
  std::map<std::string, int> vertex_index_;
  std::vector<Triangle> tris_;
  std::vector<Edge> edges_;
  std::map<std::pair<int, int>, int> edge_index_;
  AtomEnv atoms_;
  bool finalized_ = false;

  int intern_edge(int a, int b, double length);
  void check_finalized() const;
};

}  // namespace tcx
