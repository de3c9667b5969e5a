#include "tcx/folding.hpp"

#include <algorithm>
#include <set>

#include "tcx/cat0.hpp"

namespace tcx {

namespace {

std::string fresh_name(const TriangleComplex& X, const std::string& base) {
  if (!X.vertex_by_name(base)) return base;
  for (int k = 2;; ++k) {
    std::string cand = base + "_" + std::to_string(k);
    if (!X.vertex_by_name(cand)) return cand;
  }
}

}  // namespace

std::pair<TriangleComplex, UnfoldStep> unfold_once(const TriangleComplex& X, int v,
                                                   const Unfoldable& u) {
  LinkGraph L = link_of_vertex(X, v);
  // Arcs are in triangle order of link_of_vertex: arc i corresponds to the
  // i-th triangle containing v. Rebuild that correspondence.
  std::vector<int> tri_of_arc(L.arc_count());
  for (int a = 0; a < L.arc_count(); ++a) tri_of_arc[a] = L.arc(a).tri;

  std::set<int> gamma1(u.cycle_arcs.begin(), u.cycle_arcs.end());
  int wedge_edge = L.node(u.y).edge;

  TriangleComplex Y;
  std::vector<int> vmap(X.vertex_count(), -1);
  for (int i = 0; i < X.vertex_count(); ++i)
    if (i != v) vmap[i] = Y.add_vertex(X.vertex_name(i));
  std::string n1 = fresh_name(X, X.vertex_name(v) + ".1");
  int v1 = Y.add_vertex(n1);
  std::string n2 = fresh_name(X, X.vertex_name(v) + ".2");
  int v2 = Y.add_vertex(n2);
  Y.set_atoms(X.atoms());

  std::map<int, int> part_of_tri;  // triangle at v -> 1 or 2
  for (int a = 0; a < L.arc_count(); ++a)
    part_of_tri[tri_of_arc[a]] = gamma1.count(a) ? 1 : 2;

  for (int t = 0; t < X.triangle_count(); ++t) {
    const Triangle& tr = X.triangle(t);
    std::array<int, 3> verts;
    for (int i = 0; i < 3; ++i) {
      if (tr.v[i] == v)
        verts[i] = part_of_tri.at(t) == 1 ? v1 : v2;
      else
        verts[i] = vmap[tr.v[i]];
    }
    Y.add_triangle(verts, tr.angle, tr.side);
  }
  // Bare edges keep their endpoints; a bare edge at v would have made the
  // link non-unfoldable (isolated node), so v cannot occur here.
  for (int e = 0; e < X.edge_count(); ++e) {
    const Edge& ed = X.edge(e);
    if (ed.tris.empty()) {
      if (ed.a == v || ed.b == v)
        throw Error("NotUnfoldable", "bare edge at the split vertex");
      Y.add_bare_edge(vmap[ed.a], vmap[ed.b], ed.length);
    }
  }
  Y.finalize();

  UnfoldStep step;
  step.vertex = v;
  step.wedge_edge = wedge_edge;
  step.v1 = v1;
  step.v2 = v2;
  step.cycle_arcs = u.cycle_arcs;
  int w = X.edge(wedge_edge).a == v ? X.edge(wedge_edge).b : X.edge(wedge_edge).a;
  auto e1 = Y.edge_between(v1, vmap[w]);
  auto e2 = Y.edge_between(v2, vmap[w]);
  if (!e1 || !e2)
    throw Error("Internal", "unfold did not produce both duplicated edges");
  step.e1 = *e1;
  step.e2 = *e2;
  return {std::move(Y), step};
}

UnfoldRun unfold_all(const TriangleComplex& X) {
  UnfoldRun run{X, {}};
  size_t corner_budget = 3u * static_cast<size_t>(X.triangle_count()) + 1;
  for (size_t iter = 0; iter <= corner_budget; ++iter) {
    bool changed = false;
    for (int v = 0; v < run.fixpoint.vertex_count(); ++v) {
      LinkGraph L = link_of_vertex(run.fixpoint, v);
      auto u = find_unfoldable(L, run.fixpoint.atoms());
      if (!u) continue;
      auto [Y, step] = unfold_once(run.fixpoint, v, *u);
      run.fixpoint = std::move(Y);
      run.steps.push_back(step);
      changed = true;
      break;
    }
    if (!changed) return run;
  }
  throw Error("Internal", "unfold_all exceeded the corner-count bound");
}

FoldingPropertiesReport verify_folding_properties(const TriangleComplex& X,
                                                  const TriangleComplex& X_fix) {
  FoldingPropertiesReport r;
  r.euler_preserved = X.euler_characteristic() == X_fix.euler_characteristic();
  auto ca = X.classify(), cb = X_fix.classify();
  r.components_preserved = ca.components == cb.components;
  r.essential_preserved = ca.essential == cb.essential;
  auto ra = check_local_cat0(X), rb = check_local_cat0(X_fix);
  r.cat0_preserved = !ra.pass || rb.pass;
  r.pass = r.euler_preserved && r.components_preserved && r.essential_preserved &&
           r.cat0_preserved;
  if (!r.pass) {
    std::string which = !r.euler_preserved        ? "euler_characteristic"
                        : !r.components_preserved ? "components"
                        : !r.essential_preserved  ? "essential"
                                                  : "local_cat0";
    throw Error("PropertyViolation", which + " not preserved by unfolding");
  }
  return r;
}

}  // namespace tcx
