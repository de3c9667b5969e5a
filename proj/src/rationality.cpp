#include "tcx/rationality.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "tcx/homology.hpp"

namespace tcx {

RationalReport check_rational(const TriangleComplex& X) {
  RationalReport rep;
  for (int v = 0; v < X.vertex_count(); ++v) {
    LinkGraph L = link_of_vertex(X, v);
    LinkDecomposition d = decompose(L, X.atoms());
    for (const auto& c : d.cycles)
      if (!c.length.is_pi_commensurable()) {
        rep.rational = false;
        rep.witnesses.push_back({v, "cycle", c.length});
      }
    for (const auto& s : d.segments)
      if (!s.length.is_pi_commensurable()) {
        rep.rational = false;
        rep.witnesses.push_back({v, "segment", s.length});
      }
  }
  return rep;
}

std::vector<CircleLink> circle_link_report(const TriangleComplex& X) {
  std::vector<CircleLink> out;
  const AngleExpr two_pi = angle_pi(2);
  for (int v = 0; v < X.vertex_count(); ++v) {
    LinkGraph L = link_of_vertex(X, v);
    LinkDecomposition d = decompose(L, X.atoms());
    for (const auto& c : d.cycles)
      out.push_back({v, c.length, c.length == two_pi});
  }
  return out;
}

namespace {

// Exact development of a strip of patch triangles. Walks t0, t1, ... with
// consecutive triangles glued along the given interior edges; returns the
// exact direction of each oriented canonical edge germ encountered.
class StripDeveloper {
 public:
  StripDeveloper(const TriangleComplex& X, const Patch& patch)
      : X_(X), patch_(patch) {
    for (size_t i = 0; i < patch.tris.size(); ++i)
      orient_[patch.tris[i]] = patch.orientation[i];
  }

  // Starts the development: triangle t placed with the canonical a->b germ
  // of edge e at exact direction `dir`.
  void start(int t, int e, const AngleExpr& dir) {
    dirs_.clear();
    cur_tri_ = t;
    set_dirs_from_edge(t, e, dir);
  }

  // Crosses from the current triangle to triangle `nt` through interior
  // edge `e` (both must contain e).
  void cross(int e, int nt) {
    AngleExpr germ = canonical_dir(e);
    cur_tri_ = nt;
    set_dirs_from_edge(nt, e, germ);
  }

  // Exact direction of the canonical a->b germ of edge e in the current
  // triangle's placement.
  AngleExpr canonical_dir(int e) const {
    auto it = dirs_.find(key(cur_tri_, e));
    if (it == dirs_.end()) throw Error("Internal", "edge not developed");
    return it->second;
  }

  int current() const { return cur_tri_; }

 private:
  const TriangleComplex& X_;
  const Patch& patch_;
  std::map<long long, AngleExpr> dirs_;  // (tri, edge) -> canonical a->b dir
  std::map<int, int> orient_;
  int cur_tri_ = -1;

  static long long key(int t, int e) {
    return static_cast<long long>(t) * 1000000 + e;
  }

  // Given the canonical direction of edge e in triangle t, derive the
  // canonical directions of t's other two edges using exact corner angles.
  // The patch orientation fixes all rotation signs: for orientation +1 the
  // stored vertex cycle is counterclockwise in the developed plane.
  void set_dirs_from_edge(int t, int e, const AngleExpr& dir_ab) {
    const Triangle& tr = X_.triangle(t);
    int sign = orient_.at(t);
    // local sides: side j joins v[j], v[j+1]; cyclic dir (v[j] -> v[j+1]).
    // With ccw placement, dir(v[j+1] -> v[j+2]) = dir(v[j] -> v[j+1]) + pi
    // - angle(v[j+1]); with cw placement the rotation flips sign.
    int j0 = -1;
    for (int j = 0; j < 3; ++j)
      if (tr.edge[(j + 2) % 3] == e) j0 = j;
    if (j0 < 0) throw Error("Internal", "triangle lacks edge");
    const Edge& ed = X_.edge(e);
    // cyclic direction of side j0 (v[j0] -> v[j0+1])
    AngleExpr cyc = (tr.v[j0] == ed.a) ? dir_ab : dir_ab + angle_pi(1);
    std::array<AngleExpr, 3> side;
    side[j0] = cyc;
    for (int stp = 0; stp < 2; ++stp) {
      int j = (j0 + stp) % 3;
      int n = (j + 1) % 3;
      AngleExpr turn = angle_pi(1) - tr.angle[n];
      side[n] = (sign > 0) ? side[j] + turn : side[j] - turn;
    }
    for (int j = 0; j < 3; ++j) {
      int ej = tr.edge[(j + 2) % 3];
      const Edge& edj = X_.edge(ej);
      AngleExpr ab = (tr.v[j] == edj.a) ? side[j] : side[j] + angle_pi(1);
      dirs_[key(t, ej)] = ab;
    }
  }
};

// Dual spanning tree of the patch: parent triangle + connecting interior
// edge per triangle, rooted at patch.tris.front().
struct DualTree {
  std::map<int, int> parent;       // triangle -> parent triangle (-1 at root)
  std::map<int, int> parent_edge;  // triangle -> interior edge to parent
  std::vector<int> order;          // BFS order
  std::vector<int> non_tree_edges;
};

DualTree dual_tree(const TriangleComplex& X, const Patch& patch) {
  DualTree dt;
  std::set<int> interior(patch.interior_edges.begin(), patch.interior_edges.end());
  std::map<int, std::vector<std::pair<int, int>>> adj;  // tri -> (other, edge)
  for (int e : patch.interior_edges) {
    const Edge& ed = X.edge(e);
    adj[ed.tris[0]].push_back({ed.tris[1], e});
    adj[ed.tris[1]].push_back({ed.tris[0], e});
  }
  for (auto& [t, v] : adj) std::sort(v.begin(), v.end());
  std::set<int> seen;
  int root = patch.tris.front();
  dt.parent[root] = -1;
  dt.parent_edge[root] = -1;
  seen.insert(root);
  std::queue<int> bfs;
  bfs.push(root);
  std::set<int> tree_edges;
  while (!bfs.empty()) {
    int t = bfs.front();
    bfs.pop();
    dt.order.push_back(t);
    for (auto [o, e] : adj[t]) {
      if (seen.count(o)) continue;
      seen.insert(o);
      dt.parent[o] = t;
      dt.parent_edge[o] = e;
      tree_edges.insert(e);
      bfs.push(o);
    }
  }
  if (seen.size() != patch.tris.size())
    throw Error("Internal", "patch dual graph is not connected");
  for (int e : patch.interior_edges)
    if (!tree_edges.count(e)) dt.non_tree_edges.push_back(e);
  return dt;
}

std::vector<int> tree_path(const DualTree& dt, int from, int to) {
  // path of triangles from `from` up to root, then down to `to`
  std::map<int, int> depth;
  auto depth_of = [&](int t) {
    int d = 0;
    for (int cur = t; dt.parent.at(cur) >= 0; cur = dt.parent.at(cur)) ++d;
    return d;
  };
  int df = depth_of(from), dtto = depth_of(to);
  std::vector<int> up, down;
  int a = from, b = to;
  while (df > dtto) {
    up.push_back(a);
    a = dt.parent.at(a);
    --df;
  }
  while (dtto > df) {
    down.push_back(b);
    b = dt.parent.at(b);
    --dtto;
  }
  while (a != b) {
    up.push_back(a);
    down.push_back(b);
    a = dt.parent.at(a);
    b = dt.parent.at(b);
  }
  up.push_back(a);
  std::reverse(down.begin(), down.end());
  up.insert(up.end(), down.begin(), down.end());
  return up;
}

// Boundary component index of each boundary side, matching the walk in
// TriangleComplex::patches() closely enough for generator construction: we
// recompute components here over (tri, edge) sides.
std::map<std::pair<int, int>, int> boundary_components(const TriangleComplex& X,
                                                       const Patch& patch) {
  std::set<int> tri_set(patch.tris.begin(), patch.tris.end());
  std::set<int> interior(patch.interior_edges.begin(), patch.interior_edges.end());
  auto partner = [&](int t, int e, int v) {
    int cur_t = t, cur_e = e;
    for (;;) {
      const Triangle& tr = X.triangle(cur_t);
      int corner = tr.corner_of(v);
      int e1 = tr.edge[(corner + 1) % 3], e2 = tr.edge[(corner + 2) % 3];
      int next_e = (e1 == cur_e) ? e2 : e1;
      if (!interior.count(next_e)) return std::make_pair(cur_t, next_e);
      const Edge& ed = X.edge(next_e);
      cur_t = ed.tris[0] == cur_t ? ed.tris[1] : ed.tris[0];
      cur_e = next_e;
    }
  };
  std::map<std::pair<int, int>, int> comp;
  int next_comp = 0;
  for (const auto& bs : patch.boundary) {
    auto k = std::make_pair(bs.tri, bs.edge);
    if (comp.count(k)) continue;
    int id = next_comp++;
    // walk the circle
    int cur_t = bs.tri, cur_e = bs.edge;
    int enter_v = X.edge(cur_e).a;
    for (;;) {
      comp[{cur_t, cur_e}] = id;
      const Edge& ed = X.edge(cur_e);
      int exit_v = (enter_v == ed.a) ? ed.b : ed.a;
      auto [nt, ne] = partner(cur_t, cur_e, exit_v);
      cur_t = nt;
      cur_e = ne;
      enter_v = exit_v;
      if (comp.count({cur_t, cur_e})) break;
    }
  }
  return comp;
}

}  // namespace

AngleExpr triangle_boundary_psi(const TriangleComplex& X, int tri) {
  // Sum of the oriented angles between the backward and forward germs at the
  // three corners; equals the sum of interior angles up to sign.
  const Triangle& tr = X.triangle(tri);
  return tr.angle[0] + tr.angle[1] + tr.angle[2];
}

AngleExpr dual_loop_holonomy(const TriangleComplex& X, const Patch& patch,
                             const std::vector<int>& walk) {
  if (walk.size() < 2 || walk.front() != walk.back())
    throw Error("BadPath", "walk must be a closed dual loop");
  std::set<int> interior(patch.interior_edges.begin(), patch.interior_edges.end());
  StripDeveloper dev(X, patch);
  auto shared_interior_edge = [&](int t1, int t2) {
    for (int e : X.triangle(t1).edge)
      if (interior.count(e) &&
          (X.edge(e).tris[0] == t2 || X.edge(e).tris[1] == t2) &&
          (X.edge(e).tris[0] == t1 || X.edge(e).tris[1] == t1))
        return e;
    throw Error("BadPath", "consecutive walk triangles not glued in the patch");
  };
  int ref = shared_interior_edge(walk[0], walk[1]);
  dev.start(walk[0], ref, AngleExpr());
  for (size_t i = 0; i + 1 < walk.size(); ++i)
    dev.cross(shared_interior_edge(walk[i], walk[i + 1]), walk[i + 1]);
  return dev.canonical_dir(ref);
}

PsiReport psi(const TriangleComplex& X, const Patch& patch) {
  PsiReport rep;
  rep.patch_id = patch.id;
  if (patch.tris.empty()) throw Error("EmptyPatch", "patch has no triangles");
  if (!patch.orientable) {
    rep.orientable = false;
    throw Error("NonOrientablePatch", "psi needs an oriented patch");
  }
  DualTree dt = dual_tree(X, patch);
  StripDeveloper dev(X, patch);

  // Loops: one per non-tree interior edge.
  for (int e : dt.non_tree_edges) {
    const Edge& ed = X.edge(e);
    int ta = ed.tris[0], tb = ed.tris[1];
    std::vector<int> strip = tree_path(dt, tb, ta);
    // develop from ta, through the crossing edge e into tb, then back along
    // the tree path to ta; holonomy = final minus initial reference dir.
    int ref_edge = e;
    dev.start(ta, ref_edge, AngleExpr());
    dev.cross(e, tb);
    for (size_t i = 0; i + 1 < strip.size(); ++i) {
      int from = strip[i], to = strip[i + 1];
      int ce = dt.parent.at(from) == to ? dt.parent_edge.at(from)
                                        : dt.parent_edge.at(to);
      dev.cross(ce, to);
    }
    AngleExpr final_dir = dev.canonical_dir(ref_edge);
    PsiGenerator g;
    g.kind = "loop";
    g.crossing_edge = e;
    g.strip = strip;
    g.strip.insert(g.strip.begin(), ta);
    g.holonomy_raw = final_dir;
    g.psi = final_dir.mod_pi_rational();
    if (!g.psi.is_zero()) rep.trivial = false;
    rep.generators.push_back(std::move(g));
  }

  // Arcs: boundary components beyond the first, connected through the tree.
  auto comp = boundary_components(X, patch);
  int ncomp = 0;
  for (auto& [k, id] : comp) ncomp = std::max(ncomp, id + 1);
  if (ncomp > 1) {
    // representative side per component: smallest (tri, edge)
    std::vector<std::pair<int, int>> reps(ncomp, {-1, -1});
    for (const auto& [k, id] : comp)
      if (reps[id].first < 0 || k < reps[id]) reps[id] = k;
    for (int cid = 1; cid < ncomp; ++cid) {
      auto [t0, e0] = reps[0];
      auto [t1, e1] = reps[cid];
      std::vector<int> strip = tree_path(dt, t0, t1);
      dev.start(t0, e0, AngleExpr());
      for (size_t i = 0; i + 1 < strip.size(); ++i) {
        int from = strip[i], to = strip[i + 1];
        int ce = dt.parent.at(from) == to ? dt.parent_edge.at(from)
                                          : dt.parent_edge.at(to);
        dev.cross(ce, to);
      }
      AngleExpr end_dir = dev.canonical_dir(e1);
      PsiGenerator g;
      g.kind = "arc";
      g.from_component = 0;
      g.to_component = cid;
      g.strip = strip;
      g.holonomy_raw = end_dir;
      g.psi = end_dir.mod_pi_rational();
      if (!g.psi.is_zero()) rep.trivial = false;
      rep.generators.push_back(std::move(g));
    }
  }
  return rep;
}

ExtrationalityReport check_extrational(const TriangleComplex& X) {
  ExtrationalityReport rep;
  RationalReport rational = check_rational(X);
  rep.rational = rational.rational;
  if (!rep.rational)
    throw Error("NotRational", "extrationality is defined for rational complexes");

  rep.circle_links_ok = true;
  for (const auto& c : circle_link_report(X)) {
    if (!c.is_two_pi) {
      rep.circle_links_ok = false;
      rep.circle_failures.push_back(c);
    }
  }
  rep.psi_trivial = true;
  for (const auto& patch : X.patches()) {
    if (!patch.orientable) {
      rep.undetermined_patches.push_back(patch.id);
      continue;
    }
    PsiReport pr = psi(X, patch);
    for (const auto& g : pr.generators)
      if (!g.psi.is_zero()) {
        rep.psi_trivial = false;
        // canonical sign: make the first nonzero atom coefficient positive
        AngleExpr val = g.psi;
        if (!val.atom_terms().empty() && val.atom_terms().begin()->second < 0)
          val = -val;
        rep.psi_failures.push_back({patch.id, val});
      }
  }
  rep.extrational = rep.circle_links_ok && rep.psi_trivial;
  return rep;
}

ShearSpectrum shear_spectrum(const TriangleComplex& X, const Patch& patch) {
  ShearSpectrum sp;
  sp.patch_id = patch.id;
  if (patch.boundary.empty())
    throw Error("NotExtrational", "shear spectrum needs a patch with boundary");
  // q: lcm of the denominators of (boundary vertex link length)/pi.
  BigInt q = 1;
  for (const AngleExpr& len : patch.boundary_vertex_links) {
    if (!len.is_pi_commensurable())
      throw Error("NotExtrational", "boundary link length not commensurable with pi");
    BigInt den = boost::multiprecision::denominator(len.pi_coeff());
    q = boost::multiprecision::lcm(q, den);
  }
  PsiReport pr = psi(X, patch);
  Rational qr(q);
  Rational modulus = Rational(1) / qr;  // values live mod (pi/q)Z
  BigInt qp = q;
  for (const auto& g : pr.generators) {
    if (!g.holonomy_raw.is_pi_commensurable())
      throw Error("NotExtrational", "holonomy has an irrational part");
    AngleExpr val = g.holonomy_raw.mod_pi_multiple(modulus);
    sp.holonomies.push_back(val);
    BigInt den = boost::multiprecision::denominator(val.pi_coeff());
    qp = boost::multiprecision::lcm(qp, den);
  }
  if (qp % 2 != 0) qp *= 2;
  sp.q = q.convert_to<long long>();
  sp.q_prime = qp.convert_to<long long>();
  return sp;
}

}  // namespace tcx
