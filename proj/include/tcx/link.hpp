#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcx/angle.hpp"
#include "tcx/complex.hpp"

namespace tcx {

// Metric graph of directions at a point of X. Nodes are tagged with the edge
// of X they run along; arcs come from triangle corners and carry exact
// lengths. Parallel arcs are allowed (edge-interior links), self-loops are
// not produced by complexes but are tolerated by girth().
class LinkGraph {
 public:
  struct Node {
    int edge = -1;  // edge of X, or -1 for synthetic test graphs
    std::string label;
  };
  struct Arc {
    int a = -1, b = -1;
    AngleExpr length;
    int tri = -1;  // triangle of X contributing this arc, if any
  };

  int add_node(int edge = -1, std::string label = "");
  int add_arc(int a, int b, AngleExpr length, int tri = -1);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const Node& node(int i) const { return nodes_[i]; }
  const Arc& arc(int i) const { return arcs_[i]; }
  std::optional<int> node_of_edge(int edge) const;
  int degree(int node) const;  // self-loops count twice
  const std::vector<int>& arcs_at(int node) const { return incidence_[node]; }
  int other_end(int arc, int node) const;
  AngleExpr total_length() const;

 private:
  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> incidence_;
};

LinkGraph link_of_vertex(const TriangleComplex& X, int v);
LinkGraph link_of_edge_point(const TriangleComplex& X, int e);

struct GirthResult {
  bool finite = false;
  AngleExpr exact;
  double numeric = 0;
  std::vector<int> cycle_arcs;  // a witnessing shortest cycle
};
GirthResult girth(const LinkGraph& L, const AtomEnv& env);

// Maximal chains through degree-2 nodes. Segments have both endpoints of
// degree >= 3 (closed chains at one such node included); hairs end at a
// degree <= 1 node; cycles are components with all nodes of degree 2.
struct Chain {
  std::vector<int> arcs;
  AngleExpr length;
  int end_a = -1, end_b = -1;
};
struct LinkDecomposition {
  std::vector<Chain> cycles;
  std::vector<Chain> segments;
  std::vector<Chain> hairs;
};
LinkDecomposition decompose(const LinkGraph& L, const AtomEnv& env);

// A point inside an arc, at exact offset from the arc's `a` node.
struct LinkPoint {
  int arc = -1;
  AngleExpr offset;
  double numeric_offset = 0;
};
struct LinkDistance {
  double numeric = 0;
  AngleExpr exact;
  bool has_exact = false;
};
LinkDistance link_distance(const LinkGraph& L, const AtomEnv& env,
                           const LinkPoint& p, const LinkPoint& q);

struct CloverResult {
  bool is_clover = false;
  int basepoint = -1;
};
// Clover with a prescribed basepoint (all strands of exact length pi from b,
// tips meeting >= 2 strands), or searching over all basepoints.
bool is_clover_with_basepoint(const LinkGraph& L, const AtomEnv& env, int b);
CloverResult classify_clover(const LinkGraph& L, const AtomEnv& env);

struct Unfoldable {
  int y = -1;                      // wedge node
  std::vector<int> cycle_arcs;    // Gamma_1, ordered along the cycle from y
  std::vector<int> clover_arcs;   // Gamma_2 arcs (ascending ids)
};
std::optional<Unfoldable> find_unfoldable(const LinkGraph& L, const AtomEnv& env);

}  // namespace tcx
