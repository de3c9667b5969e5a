#include "tcx/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace tcx {

namespace {

constexpr double kRelTol = 1e-9;

bool rel_close(double a, double b, double tol = kRelTol) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= tol * scale;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

int TriangleComplex::add_vertex(const std::string& name) {
  if (name.empty()) throw Error("BadDocument", "vertex name must be nonempty");
  if (vertex_index_.count(name))
    throw Error("BadDocument", "duplicate vertex name '" + name + "'");
  int id = static_cast<int>(vertex_names_.size());
  vertex_names_.push_back(name);
  vertex_index_[name] = id;
  return id;
}

std::optional<int> TriangleComplex::vertex_by_name(const std::string& name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

int TriangleComplex::intern_edge(int a, int b, double length) {
  if (a == b) throw Error("NonSimplicial", "edge endpoints must be distinct");
  if (a > b) std::swap(a, b);
  auto key = std::make_pair(a, b);
  auto it = edge_index_.find(key);
  if (it != edge_index_.end()) {
    Edge& e = edges_[it->second];
    if (!rel_close(e.length, length))
      throw Error("SharedEdgeLengthMismatch",
                  "edge " + vertex_names_[a] + "-" + vertex_names_[b] +
                      " has lengths " + std::to_string(e.length) + " and " +
                      std::to_string(length));
    return it->second;
  }
  if (!(length > 0) || !std::isfinite(length))
    throw Error("BadDocument", "edge length must be finite positive");
  Edge e;
  e.a = a;
  e.b = b;
  e.length = length;
  edges_.push_back(e);
  int id = static_cast<int>(edges_.size()) - 1;
  edge_index_[key] = id;
  return id;
}

void TriangleComplex::add_triangle(const std::array<int, 3>& v,
                                   const std::array<AngleExpr, 3>& angles,
                                   const std::array<double, 3>& sides) {
  if (finalized_) throw Error("BadDocument", "complex already finalized");
  Triangle t;
  t.v = v;
  t.angle = angles;
  t.side = sides;
  t.edge = {-1, -1, -1};
  tris_.push_back(t);
}

void TriangleComplex::add_bare_edge(int a, int b, double length) {
  if (finalized_) throw Error("BadDocument", "complex already finalized");
  intern_edge(a, b, length);
}

void TriangleComplex::finalize() {
  if (finalized_) return;
  std::set<std::array<int, 3>> seen;
  for (auto& t : tris_) {
    for (int i = 0; i < 3; ++i)
      if (t.v[i] < 0 || t.v[i] >= vertex_count())
        throw Error("BadDocument", "triangle references unknown vertex");
    if (t.v[0] == t.v[1] || t.v[1] == t.v[2] || t.v[0] == t.v[2])
      throw Error("NonSimplicial", "triangle vertices must be pairwise distinct");
    std::array<int, 3> key = t.v;
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second)
      throw Error("NonSimplicial", "two triangles share the same vertex triple");

    AngleExpr sum = t.angle[0] + t.angle[1] + t.angle[2];
    if (!(sum == angle_pi(1)))
      throw Error("AngleSumViolation",
                  "corner angles of triangle " + vertex_names_[t.v[0]] + "," +
                      vertex_names_[t.v[1]] + "," + vertex_names_[t.v[2]] +
                      " sum to " + sum.str());
    for (int i = 0; i < 3; ++i) {
      double a = t.angle[i].numeric(atoms_);
      if (!(a > 0) || !(a < kPi))
        throw Error("BadDocument", "corner angle out of range (0, pi)");
      if (!(t.side[i] > 0) || !std::isfinite(t.side[i]))
        throw Error("BadDocument", "side length must be finite positive");
    }
    // law of sines, relative 1e-9 across the three corners
    double r0 = t.side[0] / std::sin(t.angle[0].numeric(atoms_));
    for (int i = 1; i < 3; ++i) {
      double ri = t.side[i] / std::sin(t.angle[i].numeric(atoms_));
      if (!rel_close(r0, ri))
        throw Error("LawOfSinesMismatch",
                    "sides and angles of a triangle disagree (" +
                        std::to_string(r0) + " vs " + std::to_string(ri) + ")");
    }
  }
  // Derive edges. Edge i of a triangle is opposite corner i.
  for (size_t ti = 0; ti < tris_.size(); ++ti) {
    Triangle& t = tris_[ti];
    for (int i = 0; i < 3; ++i) {
      int a = t.v[(i + 1) % 3], b = t.v[(i + 2) % 3];
      t.edge[i] = intern_edge(a, b, t.side[i]);
    }
  }
  for (size_t ti = 0; ti < tris_.size(); ++ti)
    for (int e : tris_[ti].edge) edges_[e].tris.push_back(static_cast<int>(ti));
  for (auto& e : edges_) {
    std::sort(e.tris.begin(), e.tris.end());
    e.tris.erase(std::unique(e.tris.begin(), e.tris.end()), e.tris.end());
  }
  finalized_ = true;
}

void TriangleComplex::check_finalized() const {
  if (!finalized_) throw Error("BadDocument", "complex not finalized");
}

std::optional<int> TriangleComplex::edge_between(int a, int b) const {
  if (a > b) std::swap(a, b);
  auto it = edge_index_.find({a, b});
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

int TriangleComplex::apex(int t, int e) const {
  int s = tris_[t].side_of(e);
  if (s < 0) throw Error("TriangleNotIncident", "triangle does not contain edge");
  return tris_[t].v[s];
}

int TriangleComplex::edge_degree(int e) const {
  check_finalized();
  if (e < 0 || e >= edge_count()) throw Error("UnknownEdge", "no such edge");
  return edges_[e].degree();
}

std::vector<std::vector<int>> TriangleComplex::vertex_components() const {
  check_finalized();
  UnionFind uf(vertex_count());
  for (const auto& e : edges_) uf.unite(e.a, e.b);
  std::map<int, std::vector<int>> comps;
  for (int v = 0; v < vertex_count(); ++v) comps[uf.find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& [root, vs] : comps) out.push_back(std::move(vs));
  return out;
}

Classification TriangleComplex::classify() const {
  check_finalized();
  Classification c;
  c.essential = true;
  for (const auto& e : edges_) {
    if (e.degree() < 2) c.essential = false;
    if (e.degree() >= 3) c.thick = true;
  }
  auto comps = vertex_components();
  c.components = static_cast<int>(comps.size());
  std::vector<bool> incident(vertex_count(), false);
  for (const auto& e : edges_) incident[e.a] = incident[e.b] = true;
  for (const auto& comp : comps)
    if (comp.size() == 1 && !incident[comp[0]]) c.essential = false;
  if (tris_.empty() && edges_.empty()) c.essential = false;
  return c;
}

std::vector<int> TriangleComplex::branching_locus() const {
  check_finalized();
  std::vector<int> out;
  for (int e = 0; e < edge_count(); ++e)
    if (edges_[e].degree() >= 3) out.push_back(e);
  return out;
}

long long TriangleComplex::euler_characteristic() const {
  check_finalized();
  return static_cast<long long>(vertex_count()) - edge_count() + triangle_count();
}

std::vector<Patch> TriangleComplex::patches() const {
  check_finalized();
  // Glue triangles across edges of degree <= 2 (i.e. off the branching locus).
  UnionFind uf(triangle_count());
  for (const auto& e : edges_)
    if (e.degree() == 2) uf.unite(e.tris[0], e.tris[1]);

  std::map<int, std::vector<int>> groups;
  for (int t = 0; t < triangle_count(); ++t) groups[uf.find(t)].push_back(t);

  std::vector<Patch> out;
  for (auto& [root, tris] : groups) {
    Patch p;
    p.id = static_cast<int>(out.size());
    std::sort(tris.begin(), tris.end());
    p.tris = tris;
    std::set<int> tri_set(tris.begin(), tris.end());

    std::set<int> interior;
    for (int t : tris) {
      for (int e : tris_[t].edge) {
        const Edge& ed = edges_[e];
        if (ed.degree() == 2 && tri_set.count(ed.tris[0]) && tri_set.count(ed.tris[1]))
          interior.insert(e);
        else
          p.boundary.push_back({t, e});
      }
    }
    p.interior_edges.assign(interior.begin(), interior.end());
    std::sort(p.boundary.begin(), p.boundary.end(),
              [](const Patch::BoundarySide& x, const Patch::BoundarySide& y) {
                return std::tie(x.tri, x.edge) < std::tie(y.tri, y.edge);
              });

    // Orientability: propagate a coherent orientation across interior edges.
    // Orientation +1 keeps the stored vertex cycle, -1 reverses it. Two
    // triangles glued along an edge must induce opposite directions on it.
    std::map<int, int> pos;  // triangle id -> index in p.tris
    for (size_t i = 0; i < p.tris.size(); ++i) pos[p.tris[i]] = static_cast<int>(i);
    p.orientation.assign(p.tris.size(), 0);
    p.orientable = true;
    auto induced_dir = [&](int t, int e) {
      // +1 if the stored cycle of t traverses edge e from its smaller
      // endpoint to its larger one.
      const Triangle& tr = tris_[t];
      int s = tr.side_of(e);
      int x = tr.v[(s + 1) % 3], y = tr.v[(s + 2) % 3];
      return x < y ? 1 : -1;
    };
    for (size_t i = 0; i < p.tris.size(); ++i) {
      if (p.orientation[i] != 0) continue;
      p.orientation[i] = 1;
      std::vector<int> stack = {p.tris[i]};
      while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        for (int e : tris_[t].edge) {
          const Edge& ed = edges_[e];
          if (!interior.count(e)) continue;
          int other = ed.tris[0] == t ? ed.tris[1] : ed.tris[0];
          int want = -p.orientation[pos[t]] * induced_dir(t, e) * induced_dir(other, e);
          int& o = p.orientation[pos[other]];
          if (o == 0) {
            o = want;
            stack.push_back(other);
          } else if (o != want) {
            p.orientable = false;
          }
        }
      }
    }

    // Completion vertices: sectors of corners around each vertex, connected
    // through interior edge germs; boundary sector link lengths recorded.
    std::map<int, std::vector<std::pair<int, int>>> corners_at;  // v -> (tri, corner)
    for (int t : tris)
      for (int i = 0; i < 3; ++i) corners_at[tris_[t].v[i]].push_back({t, i});
    int sectors = 0;
    std::vector<AngleExpr> bd_links;
    for (auto& [v, corners] : corners_at) {
      std::map<std::pair<int, int>, int> cidx;
      for (size_t i = 0; i < corners.size(); ++i) cidx[corners[i]] = static_cast<int>(i);
      UnionFind cuf(static_cast<int>(corners.size()));
      // Corners of t at v touch the two edges of t through v.
      for (int e : p.interior_edges) {
        const Edge& ed = edges_[e];
        if (ed.a != v && ed.b != v) continue;
        int t0 = ed.tris[0], t1 = ed.tris[1];
        cuf.unite(cidx.at({t0, tris_[t0].corner_of(v)}),
                  cidx.at({t1, tris_[t1].corner_of(v)}));
      }
      std::map<int, std::vector<int>> sec;
      for (size_t i = 0; i < corners.size(); ++i)
        sec[cuf.find(static_cast<int>(i))].push_back(static_cast<int>(i));
      sectors += static_cast<int>(sec.size());
      for (auto& [r, members] : sec) {
        // A sector is interior iff both edge germs of every corner are
        // interior; otherwise it is a completion boundary vertex.
        bool interior_sector = true;
        AngleExpr len;
        for (int ci : members) {
          auto [t, corner] = corners[ci];
          len += tris_[t].angle[corner];
          for (int k = 1; k <= 2; ++k) {
            int e = tris_[t].edge[(corner + k) % 3];
            const Edge& ed = edges_[e];
            bool edge_interior =
                ed.degree() == 2 && tri_set.count(ed.tris[0]) && tri_set.count(ed.tris[1]);
            if (!edge_interior) interior_sector = false;
          }
        }
        if (!interior_sector) bd_links.push_back(len);
      }
    }
    p.completion_vertices = sectors;
    p.boundary_vertex_links = std::move(bd_links);

    // Boundary components: walk boundary sides through boundary sectors.
    // Germ (t, e, v): the free end of the sector chain at vertex v starting
    // from the corner of t not glued through e's side.
    std::map<std::tuple<int, int, int>, std::pair<int, int>> germ_to_side;
    // Map germ -> boundary side index; then pair germs by sector walk.
    std::map<int, std::vector<std::tuple<int, int, int>>> side_germs;
    for (size_t bi = 0; bi < p.boundary.size(); ++bi) {
      const auto& bs = p.boundary[bi];
      const Edge& ed = edges_[bs.edge];
      germ_to_side[{bs.tri, bs.edge, ed.a}] = {static_cast<int>(bi), 0};
      germ_to_side[{bs.tri, bs.edge, ed.b}] = {static_cast<int>(bi), 1};
    }
    // Walk around vertex v inside the patch starting at corner of t adjacent
    // to edge e, moving away from e, until a non-interior edge germ is hit.
    auto partner_germ = [&](int t, int e, int v) -> std::tuple<int, int, int> {
      int cur_t = t;
      int cur_e = e;  // edge germ we came from
      for (;;) {
        const Triangle& tr = tris_[cur_t];
        int corner = tr.corner_of(v);
        int e1 = tr.edge[(corner + 1) % 3], e2 = tr.edge[(corner + 2) % 3];
        int next_e = (e1 == cur_e) ? e2 : e1;
        const Edge& ed = edges_[next_e];
        bool edge_interior =
            ed.degree() == 2 && tri_set.count(ed.tris[0]) && tri_set.count(ed.tris[1]);
        if (!edge_interior) return {cur_t, next_e, v};
        cur_t = ed.tris[0] == cur_t ? ed.tris[1] : ed.tris[0];
        cur_e = next_e;
      }
    };
    std::set<int> visited;
    int comps = 0;
    for (size_t bi = 0; bi < p.boundary.size(); ++bi) {
      if (visited.count(static_cast<int>(bi))) continue;
      ++comps;
      int cur = static_cast<int>(bi);
      int enter_v = edges_[p.boundary[cur].edge].a;
      for (;;) {
        visited.insert(cur);
        const auto& bs = p.boundary[cur];
        const Edge& ed = edges_[bs.edge];
        int exit_v = (enter_v == ed.a) ? ed.b : ed.a;
        auto nxt = partner_germ(bs.tri, bs.edge, exit_v);
        auto it = germ_to_side.find(nxt);
        if (it == germ_to_side.end())
          throw Error("Internal", "boundary walk left the patch boundary");
        cur = it->second.first;
        enter_v = exit_v;
        if (cur == static_cast<int>(bi) && enter_v == edges_[p.boundary[cur].edge].a)
          break;
        if (visited.count(cur) && cur == static_cast<int>(bi)) break;
        if (visited.count(cur) && cur != static_cast<int>(bi)) {
          // walked into an already-visited side mid-loop; the traversal is a
          // closed walk so this only happens when the loop closes
          break;
        }
      }
    }
    p.completion_boundary_components = comps;
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace tcx
