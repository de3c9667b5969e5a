#include "tcx/svg.hpp"

#include <cmath>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "tcx/link.hpp"

namespace tcx {

namespace {

struct SvgDoc {
  std::ostringstream body;
  double min_x = 0, min_y = 0, max_x = 100, max_y = 100;

  void grow(double x, double y) {
    min_x = std::min(min_x, x - 10);
    min_y = std::min(min_y, y - 10);
    max_x = std::max(max_x, x + 10);
    max_y = std::max(max_y, y + 10);
  }
  void line(double x1, double y1, double x2, double y2, const char* color) {
    body << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2
         << "\" y2=\"" << y2 << "\" stroke=\"" << color
         << "\" stroke-width=\"0.5\"/>\n";
    grow(x1, y1);
    grow(x2, y2);
  }
  void circle(double x, double y, double r, const char* color) {
    body << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << r
         << "\" fill=\"" << color << "\"/>\n";
    grow(x, y);
  }
  void text(double x, double y, const std::string& s) {
    body << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"3\">" << s
         << "</text>\n";
    grow(x, y);
  }
  void polygon(const std::vector<std::pair<double, double>>& pts) {
    body << "<polygon points=\"";
    for (auto [x, y] : pts) {
      body << x << "," << y << " ";
      grow(x, y);
    }
    body << "\" fill=\"none\" stroke=\"black\" stroke-width=\"0.3\"/>\n";
  }
  std::string str() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << min_x << " "
       << min_y << " " << (max_x - min_x) << " " << (max_y - min_y) << "\">\n"
       << body.str() << "</svg>\n";
    return os.str();
  }
};

}  // namespace

std::string svg_links(const TriangleComplex& X) {
  SvgDoc doc;
  double cx = 0;
  for (int v = 0; v < X.vertex_count(); ++v) {
    LinkGraph L = link_of_vertex(X, v);
    int n = L.node_count();
    if (n == 0) continue;
    double cy = 0, r = 12;
    std::vector<std::pair<double, double>> pos(n);
    for (int i = 0; i < n; ++i) {
      double a = 2 * kPi * i / n;
      pos[i] = {cx + r * std::cos(a), cy + r * std::sin(a)};
      doc.circle(pos[i].first, pos[i].second, 0.8, "black");
    }
    for (int a = 0; a < L.arc_count(); ++a) {
      auto [x1, y1] = pos[L.arc(a).a];
      auto [x2, y2] = pos[L.arc(a).b];
      doc.line(x1, y1, x2, y2, "steelblue");
    }
    doc.text(cx - r, cy + r + 6, "lk(" + X.vertex_name(v) + ")");
    cx += 3 * r;
  }
  return doc.str();
}

std::string svg_patches(const TriangleComplex& X) {
  SvgDoc doc;
  double offset_y = 0;
  for (const auto& patch : X.patches()) {
    // develop the dual tree numerically, BFS from the first triangle
    std::map<int, std::array<Vec2, 3>> placed;
    std::set<int> interior(patch.interior_edges.begin(), patch.interior_edges.end());
    int root = patch.tris.front();
    const Triangle& tr = X.triangle(root);
    double l01 = tr.side[2], l02 = tr.side[1], l12 = tr.side[0];
    double x = (l01 * l01 + l02 * l02 - l12 * l12) / (2 * l01);
    double h = std::sqrt(std::max(0.0, l02 * l02 - x * x));
    placed[root] = {Vec2{0, offset_y}, Vec2{l01, offset_y}, Vec2{x, offset_y + h}};
    std::queue<int> bfs;
    bfs.push(root);
    std::set<int> seen{root};
    while (!bfs.empty()) {
      int t = bfs.front();
      bfs.pop();
      const Triangle& cur = X.triangle(t);
      for (int e : cur.edge) {
        if (!interior.count(e)) continue;
        const Edge& ed = X.edge(e);
        int other = ed.tris[0] == t ? ed.tris[1] : ed.tris[0];
        if (seen.count(other)) continue;
        seen.insert(other);
        Vec2 pa{}, pb{}, apex{};
        for (int i = 0; i < 3; ++i) {
          if (cur.v[i] == ed.a)
            pa = placed[t][i];
          else if (cur.v[i] == ed.b)
            pb = placed[t][i];
          else
            apex = placed[t][i];
        }
        const Triangle& nt = X.triangle(other);
        int ja = -1, jb = -1, jc = -1;
        for (int i = 0; i < 3; ++i) {
          if (nt.v[i] == ed.a) ja = i;
          else if (nt.v[i] == ed.b) jb = i;
          else jc = i;
        }
        double ac = nt.side[jb], bc = nt.side[ja];
        Vec2 ab = pb - pa;
        double L = norm(ab);
        Vec2 u{ab.x / L, ab.y / L}, nvec{-u.y, u.x};
        double xx = (L * L + ac * ac - bc * bc) / (2 * L);
        double hh = std::sqrt(std::max(0.0, ac * ac - xx * xx));
        double side = cross(ab, apex - pa) > 0 ? -1.0 : 1.0;
        std::array<Vec2, 3> pos{};
        pos[ja] = pa;
        pos[jb] = pb;
        pos[jc] = pa + xx * u + (side * hh) * nvec;
        placed[other] = pos;
        bfs.push(other);
      }
    }
    for (const auto& [t, pos] : placed)
      doc.polygon({{pos[0].x, pos[0].y}, {pos[1].x, pos[1].y}, {pos[2].x, pos[2].y}});
    doc.text(0, offset_y - 2, "patch " + std::to_string(patch.id));
    offset_y += 20;
  }
  return doc.str();
}

std::string svg_trace(const TriangleComplex& X, const GeodesicPath& path) {
  (void)X;
  SvgDoc doc;
  for (const auto& c : path.crossings) {
    doc.polygon({{c.placed[0].x, c.placed[0].y},
                 {c.placed[1].x, c.placed[1].y},
                 {c.placed[2].x, c.placed[2].y}});
  }
  Vec2 prev = path.start_xy;
  for (const auto& c : path.crossings) {
    doc.line(prev.x, prev.y, c.exit_xy.x, c.exit_xy.y, "crimson");
    prev = c.exit_xy;
  }
  doc.line(prev.x, prev.y, path.end_xy.x, path.end_xy.y, "crimson");
  doc.circle(path.start_xy.x, path.start_xy.y, 0.6, "green");
  doc.circle(path.end_xy.x, path.end_xy.y, 0.6, "red");
  return doc.str();
}

}  // namespace tcx
