#include "tcx/link.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <queue>
#include <set>

namespace tcx {

int LinkGraph::add_node(int edge, std::string label) {
  nodes_.push_back({edge, std::move(label)});
  incidence_.emplace_back();
  return static_cast<int>(nodes_.size()) - 1;
}

int LinkGraph::add_arc(int a, int b, AngleExpr length, int tri) {
  arcs_.push_back({a, b, std::move(length), tri});
  int id = static_cast<int>(arcs_.size()) - 1;
  incidence_[a].push_back(id);
  if (b != a) incidence_[b].push_back(id);
  return id;
}

std::optional<int> LinkGraph::node_of_edge(int edge) const {
  for (int i = 0; i < node_count(); ++i)
    if (nodes_[i].edge == edge) return i;
  return std::nullopt;
}

int LinkGraph::degree(int node) const {
  int d = 0;
  for (int a : incidence_[node]) d += (arcs_[a].a == arcs_[a].b) ? 2 : 1;
  return d;
}

int LinkGraph::other_end(int arc, int node) const {
  const Arc& a = arcs_[arc];
  return a.a == node ? a.b : a.a;
}

AngleExpr LinkGraph::total_length() const {
  AngleExpr s;
  for (const auto& a : arcs_) s += a.length;
  return s;
}

LinkGraph link_of_vertex(const TriangleComplex& X, int v) {
  if (v < 0 || v >= X.vertex_count()) throw Error("UnknownVertex", "no such vertex");
  LinkGraph L;
  std::map<int, int> node_of_edge;
  for (int e = 0; e < X.edge_count(); ++e) {
    const Edge& ed = X.edge(e);
    if (ed.a == v || ed.b == v)
      node_of_edge[e] =
          L.add_node(e, X.vertex_name(ed.a) + "-" + X.vertex_name(ed.b));
  }
  for (int t = 0; t < X.triangle_count(); ++t) {
    const Triangle& tr = X.triangle(t);
    int c = tr.corner_of(v);
    if (c < 0) continue;
    int e1 = tr.edge[(c + 1) % 3], e2 = tr.edge[(c + 2) % 3];
    L.add_arc(node_of_edge.at(std::min(e1, e2)), node_of_edge.at(std::max(e1, e2)),
              tr.angle[c], t);
  }
  return L;
}

LinkGraph link_of_edge_point(const TriangleComplex& X, int e) {
  if (e < 0 || e >= X.edge_count()) throw Error("UnknownEdge", "no such edge");
  const Edge& ed = X.edge(e);
  LinkGraph L;
  int na = L.add_node(-1, "toward " + X.vertex_name(ed.a));
  int nb = L.add_node(-1, "toward " + X.vertex_name(ed.b));
  for (int t : ed.tris) L.add_arc(na, nb, angle_pi(1), t);
  return L;
}

namespace {

// Deterministic Dijkstra over arcs with numeric weights. Returns the arc
// sequence of a shortest path from s to t avoiding `banned_arc`, or nullopt.
std::optional<std::vector<int>> shortest_path(const LinkGraph& L, const AtomEnv& env,
                                              int s, int t, int banned_arc) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(L.node_count(), inf);
  std::vector<int> parent_arc(L.node_count(), -1);
  using Item = std::tuple<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.push({0.0, s});
  while (!pq.empty()) {
    auto [d, n] = pq.top();
    pq.pop();
    if (d > dist[n]) continue;
    std::vector<int> arcs = L.arcs_at(n);
    std::sort(arcs.begin(), arcs.end());
    for (int a : arcs) {
      if (a == banned_arc) continue;
      if (L.arc(a).a == L.arc(a).b) continue;  // self-loops never shorten paths
      int m = L.other_end(a, n);
      double nd = d + L.arc(a).length.numeric(env);
      if (nd < dist[m] - 1e-15) {
        dist[m] = nd;
        parent_arc[m] = a;
        pq.push({nd, m});
      }
    }
  }
  if (dist[t] == inf) return std::nullopt;
  std::vector<int> path;
  int cur = t;
  while (cur != s) {
    int a = parent_arc[cur];
    path.push_back(a);
    cur = L.other_end(a, cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

AngleExpr arcs_length(const LinkGraph& L, const std::vector<int>& arcs) {
  AngleExpr s;
  for (int a : arcs) s += L.arc(a).length;
  return s;
}

std::vector<int> canonical_cycle(std::vector<int> arcs) {
  // Rotation-and-reflection canonical form for tie-breaking.
  if (arcs.empty()) return arcs;
  std::vector<int> best;
  auto consider = [&](const std::vector<int>& c) {
    for (size_t r = 0; r < c.size(); ++r) {
      std::vector<int> rot(c.begin() + r, c.end());
      rot.insert(rot.end(), c.begin(), c.begin() + r);
      if (best.empty() || rot < best) best = rot;
    }
  };
  consider(arcs);
  std::reverse(arcs.begin(), arcs.end());
  consider(arcs);
  return best;
}

}  // namespace

GirthResult girth(const LinkGraph& L, const AtomEnv& env) {
  GirthResult best;
  auto offer = [&](std::vector<int> cycle) {
    AngleExpr len = arcs_length(L, cycle);
    if (!best.finite) {
      best = {true, len, len.numeric(env), canonical_cycle(cycle)};
      return;
    }
    int c = compare(len, best.exact, env);
    std::vector<int> canon = canonical_cycle(cycle);
    if (c < 0 || (c == 0 && canon < best.cycle_arcs))
      best = {true, len, len.numeric(env), canon};
  };
  for (int a = 0; a < L.arc_count(); ++a) {
    const auto& arc = L.arc(a);
    if (arc.a == arc.b) {
      offer({a});
      continue;
    }
    auto path = shortest_path(L, env, arc.a, arc.b, a);
    if (!path) continue;
    path->push_back(a);
    offer(*path);
  }
  return best;
}

LinkDecomposition decompose(const LinkGraph& L, const AtomEnv& env) {
  (void)env;
  LinkDecomposition out;
  std::vector<bool> used(L.arc_count(), false);

  auto walk_chain = [&](int start_node, int first_arc) {
    // Walk from start_node along first_arc through degree-2 nodes.
    Chain ch;
    int node = start_node;
    int a = first_arc;
    for (;;) {
      ch.arcs.push_back(a);
      ch.length += L.arc(a).length;
      used[a] = true;
      int nxt = L.other_end(a, node);
      if (L.degree(nxt) != 2) {
        ch.end_a = start_node;
        ch.end_b = nxt;
        return ch;
      }
      // continue through nxt on its other arc
      int next_arc = -1;
      for (int cand : L.arcs_at(nxt))
        if (cand != a) next_arc = cand;
      if (next_arc == -1) {  // closed loop of two germs of the same arc
        ch.end_a = start_node;
        ch.end_b = nxt;
        return ch;
      }
      node = nxt;
      a = next_arc;
      if (used[a]) {  // closed back to the start
        ch.end_a = start_node;
        ch.end_b = node;
        return ch;
      }
    }
  };

  // Chains from every node of degree != 2.
  for (int n = 0; n < L.node_count(); ++n) {
    if (L.degree(n) == 2) continue;
    std::vector<int> arcs = L.arcs_at(n);
    std::sort(arcs.begin(), arcs.end());
    for (int a : arcs) {
      if (used[a]) continue;
      Chain ch = walk_chain(n, a);
      bool at_branch_a = L.degree(ch.end_a) >= 3;
      bool at_branch_b = L.degree(ch.end_b) >= 3;
      if (at_branch_a && at_branch_b)
        out.segments.push_back(std::move(ch));
      else
        out.hairs.push_back(std::move(ch));
    }
  }
  // Remaining components are cycles with all nodes of degree 2.
  for (int a0 = 0; a0 < L.arc_count(); ++a0) {
    if (used[a0]) continue;
    Chain ch;
    int node = L.arc(a0).a;
    int a = a0;
    for (;;) {
      ch.arcs.push_back(a);
      ch.length += L.arc(a).length;
      used[a] = true;
      node = L.other_end(a, node);
      int next_arc = -1;
      for (int cand : L.arcs_at(node))
        if (!used[cand]) next_arc = cand;
      if (next_arc == -1) break;
      a = next_arc;
    }
    ch.end_a = ch.end_b = L.arc(a0).a;
    out.cycles.push_back(std::move(ch));
  }
  return out;
}

LinkDistance link_distance(const LinkGraph& L, const AtomEnv& env,
                           const LinkPoint& p, const LinkPoint& q) {
  // Dijkstra over nodes plus the two arc points; exact length reconstructed
  // from the winning route.
  const double inf = std::numeric_limits<double>::infinity();
  auto arc_num = [&](int a) { return L.arc(a).length.numeric(env); };

  LinkDistance best;
  best.numeric = inf;
  auto offer = [&](double num, AngleExpr exact) {
    if (num < best.numeric - 1e-15) {
      best.numeric = num;
      best.exact = std::move(exact);
      best.has_exact = true;
    }
  };

  if (p.arc == q.arc) {
    AngleExpr d = p.offset - q.offset;
    double dn = std::abs(p.numeric_offset - q.numeric_offset);
    offer(dn, compare(p.offset, q.offset, env) >= 0 ? d : -d);
  }
  // Distances from a point to the two endpoint nodes of its arc.
  struct Anchor {
    int node;
    AngleExpr exact;
    double num;
  };
  auto anchors = [&](const LinkPoint& pt) {
    std::vector<Anchor> out;
    const auto& arc = L.arc(pt.arc);
    out.push_back({arc.a, pt.offset, pt.numeric_offset});
    out.push_back({arc.b, arc.length - pt.offset, arc_num(pt.arc) - pt.numeric_offset});
    return out;
  };

  // All-pairs над node set via Dijkstra from each p-anchor.
  for (const auto& ap : anchors(p)) {
    std::vector<double> dist(L.node_count(), inf);
    std::vector<int> parent(L.node_count(), -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[ap.node] = 0;
    pq.push({0.0, ap.node});
    while (!pq.empty()) {
      auto [d, n] = pq.top();
      pq.pop();
      if (d > dist[n]) continue;
      std::vector<int> arcs = L.arcs_at(n);
      std::sort(arcs.begin(), arcs.end());
      for (int a : arcs) {
        if (L.arc(a).a == L.arc(a).b) continue;
        int m = L.other_end(a, n);
        double nd = d + arc_num(a);
        if (nd < dist[m] - 1e-15) {
          dist[m] = nd;
          parent[m] = a;
          pq.push({nd, m});
        }
      }
    }
    auto exact_to = [&](int node) {
      AngleExpr s = ap.exact;
      int cur = node;
      while (cur != ap.node) {
        s += L.arc(parent[cur]).length;
        cur = L.other_end(parent[cur], cur);
      }
      return s;
    };
    for (const auto& aq : anchors(q)) {
      if (dist[aq.node] == inf) continue;
      offer(ap.num + dist[aq.node] + aq.num, exact_to(aq.node) + aq.exact);
    }
  }
  return best;
}

namespace {

std::string angle_key(const AngleExpr& a) { return a.str(); }

}  // namespace

bool is_clover_with_basepoint(const LinkGraph& L, const AtomEnv& env, int b) {
  if (L.arc_count() == 0) return false;
  // Isolated nodes rule a clover out.
  for (int n = 0; n < L.node_count(); ++n)
    if (L.degree(n) == 0) return false;
  std::vector<int> germs = L.arcs_at(b);
  std::sort(germs.begin(), germs.end());
  if (germs.size() < 2) return false;

  const AngleExpr pi1 = angle_pi(1);
  std::vector<int> consumed(L.arc_count(), 0);  // 0 none, 1 full, 2 split
  // split records offset from the arc's `a` node of the tip point
  std::map<int, std::vector<AngleExpr>> splits;
  std::map<std::string, int> tip_count;   // tip key -> strand multiplicity
  std::map<std::string, int> tip_node;    // node-tip key -> node id

  for (int g : germs) {
    AngleExpr remaining = pi1;
    int node = b;
    int a = g;
    for (;;) {
      if (L.arc(a).a == L.arc(a).b) return false;  // self-loops: not a clover
      const AngleExpr& len = L.arc(a).length;
      int cmp = compare(len, remaining, env);
      if (cmp < 0) {
        if (consumed[a]) return false;
        consumed[a] = 1;
        remaining -= len;
        int nxt = L.other_end(a, node);
        if (nxt == b) return false;            // strand returned to basepoint
        if (L.degree(nxt) != 2) return false;  // branch or leaf before pi
        int next_arc = -1;
        for (int cand : L.arcs_at(nxt))
          if (cand != a) next_arc = cand;
        if (next_arc == -1) return false;
        node = nxt;
        a = next_arc;
      } else if (cmp == 0) {
        if (consumed[a]) return false;
        consumed[a] = 1;
        int tip = L.other_end(a, node);
        if (tip == b) return false;
        std::string key = "n" + std::to_string(tip);
        tip_count[key]++;
        tip_node[key] = tip;
        break;
      } else {
        // tip strictly inside arc `a` at `remaining` from `node`
        if (consumed[a] == 1) return false;
        consumed[a] = 2;
        AngleExpr off_from_a =
            (L.arc(a).a == node) ? remaining : L.arc(a).length - remaining;
        splits[a].push_back(off_from_a);
        tip_count["a" + std::to_string(a) + "@" + angle_key(off_from_a)]++;
        break;
      }
    }
  }
  // every arc consumed exactly once, or split by exactly two matching walks
  for (int a = 0; a < L.arc_count(); ++a) {
    if (consumed[a] == 0) return false;
    if (consumed[a] == 2) {
      auto it = splits.find(a);
      if (it == splits.end() || it->second.size() != 2) return false;
      if (!(it->second[0] == it->second[1])) return false;
    }
  }
  for (const auto& [key, count] : tip_count) {
    if (count < 2) return false;
    auto nit = tip_node.find(key);
    // A node tip absorbs all of its germs as strand ends.
    if (nit != tip_node.end() && count != L.degree(nit->second)) return false;
  }
  return !tip_count.empty();
}

CloverResult classify_clover(const LinkGraph& L, const AtomEnv& env) {
  for (int b = 0; b < L.node_count(); ++b)
    if (is_clover_with_basepoint(L, env, b)) return {true, b};
  return {false, -1};
}

namespace {

// Embedded cycles through y of exact length 2*pi whose internal nodes have
// degree 2 in L, enumerated deterministically.
std::vector<std::vector<int>> two_pi_cycles_at(const LinkGraph& L, const AtomEnv& env,
                                               int y) {
  std::vector<std::vector<int>> found;
  std::set<std::vector<int>> dedupe;
  const AngleExpr two_pi = angle_pi(2);
  const double budget = two_pi.numeric(env) + 1e-9;

  struct Frame {
    int node;
    std::vector<int> arcs;
    AngleExpr len;
    double num;
  };
  std::vector<int> visited(L.node_count(), 0);
  std::function<void(Frame&)> dfs = [&](Frame& f) {
    std::vector<int> arcs = L.arcs_at(f.node);
    std::sort(arcs.begin(), arcs.end());
    for (int a : arcs) {
      if (!f.arcs.empty() && a == f.arcs.back()) continue;
      if (L.arc(a).a == L.arc(a).b) continue;
      int nxt = L.other_end(a, f.node);
      double nn = f.num + L.arc(a).length.numeric(env);
      if (nn > budget) continue;
      if (nxt == y) {
        if (f.arcs.empty()) continue;
        std::vector<int> cyc = f.arcs;
        cyc.push_back(a);
        if (cyc.size() < 2) continue;
        AngleExpr total = f.len + L.arc(a).length;
        if (!(total == two_pi)) continue;
        std::vector<int> canon = canonical_cycle(cyc);
        if (dedupe.insert(canon).second) found.push_back(cyc);
        continue;
      }
      if (visited[nxt]) continue;
      if (L.degree(nxt) != 2) continue;  // internal nodes must be degree 2
      visited[nxt] = 1;
      Frame g{nxt, f.arcs, f.len + L.arc(a).length, nn};
      g.arcs.push_back(a);
      dfs(g);
      visited[nxt] = 0;
    }
  };
  Frame root{y, {}, AngleExpr(), 0.0};
  dfs(root);
  // Deterministic order: lexicographically smallest canonical form first.
  std::sort(found.begin(), found.end(),
            [](const std::vector<int>& x, const std::vector<int>& v) {
              return canonical_cycle(x) < canonical_cycle(v);
            });
  return found;
}

}  // namespace

std::optional<Unfoldable> find_unfoldable(const LinkGraph& L, const AtomEnv& env) {
  for (int y = 0; y < L.node_count(); ++y) {
    for (const auto& cyc : two_pi_cycles_at(L, env, y)) {
      std::set<int> cycle_arcs(cyc.begin(), cyc.end());
      // Gamma_2 = L minus the cycle arcs and internal cycle nodes.
      LinkGraph G2;
      std::vector<int> node_map(L.node_count(), -1);
      std::set<int> internal;
      for (int a : cyc) {
        internal.insert(L.arc(a).a);
        internal.insert(L.arc(a).b);
      }
      internal.erase(y);
      bool ok = true;
      for (int n : internal)
        if (L.degree(n) != 2) ok = false;  // cycle must split off cleanly
      if (!ok) continue;
      std::vector<int> g2_arcs;
      for (int a = 0; a < L.arc_count(); ++a) {
        if (cycle_arcs.count(a)) continue;
        if (internal.count(L.arc(a).a) || internal.count(L.arc(a).b)) {
          ok = false;
          break;
        }
        g2_arcs.push_back(a);
      }
      if (!ok || g2_arcs.empty()) continue;
      for (int n = 0; n < L.node_count(); ++n) {
        if (internal.count(n)) continue;
        // keep nodes that carry Gamma_2 arcs, plus y
        bool has = (n == y);
        for (int a : g2_arcs)
          if (L.arc(a).a == n || L.arc(a).b == n) has = true;
        if (has) node_map[n] = G2.add_node(L.node(n).edge, L.node(n).label);
      }
      // Nodes of L outside both parts mean L is not the wedge.
      for (int n = 0; n < L.node_count(); ++n) {
        bool in_cycle = internal.count(n) || n == y;
        if (node_map[n] == -1 && !in_cycle && L.degree(n) > 0) ok = false;
        if (node_map[n] == -1 && !in_cycle && L.degree(n) == 0) ok = false;
      }
      if (!ok) continue;
      std::map<int, int> arc_map;
      for (int a : g2_arcs)
        arc_map[a] =
            G2.add_arc(node_map[L.arc(a).a], node_map[L.arc(a).b], L.arc(a).length,
                       L.arc(a).tri);
      if (!is_clover_with_basepoint(G2, env, node_map[y])) continue;
      Unfoldable u;
      u.y = y;
      u.cycle_arcs = cyc;
      u.clover_arcs = g2_arcs;
      return u;
    }
  }
  return std::nullopt;
}

}  // namespace tcx
