#include "tcx/cat0.hpp"

#include <algorithm>
#include <atomic>
#include <queue>
#include <set>
#include <sstream>
#include <thread>

namespace tcx {

Cat0Report check_local_cat0(const TriangleComplex& X, int threads) {
  Cat0Report report;
  const AngleExpr two_pi = angle_pi(2);
  int n = X.vertex_count();
  std::vector<std::optional<Cat0Failure>> results(n);
  auto work = [&](int v) {
    LinkGraph L = link_of_vertex(X, v);
    GirthResult g = girth(L, X.atoms());
    if (g.finite && compare(g.exact, two_pi, X.atoms()) < 0)
      results[v] = Cat0Failure{v, g};
  };
  if (threads <= 1 || n < 2) {
    for (int v = 0; v < n; ++v) work(v);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    int k = std::min<int>(threads, n);
    for (int i = 0; i < k; ++i)
      pool.emplace_back([&] {
        for (;;) {
          int v = next.fetch_add(1);
          if (v >= n) return;
          work(v);
        }
      });
    for (auto& t : pool) t.join();
  }
  for (int v = 0; v < n; ++v)
    if (results[v]) report.failures.push_back(*results[v]);
  report.pass = report.failures.empty();
  return report;
}

Word reduce_word(Word w) {
  Word out;
  for (int x : w) {
    if (x == 0) continue;
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

Word invert_word(const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ".";
    os << "g" << std::abs(w[i]) - 1;
    if (w[i] < 0) os << "^-1";
  }
  return os.str();
}

int Presentation::letter(int edge, int from) const {
  auto it = generator_of_edge.find(edge);
  if (it == generator_of_edge.end()) return 0;
  const Edge& e = X->edge(edge);
  return (from == e.a) ? (it->second + 1) : -(it->second + 1);
}

Word Presentation::word_of_closed_path(const std::vector<int>& vertices) const {
  if (vertices.size() < 2 || vertices.front() != vertices.back())
    throw Error("BadPath", "expected a closed vertex path");
  Word w;
  for (size_t i = 0; i + 1 < vertices.size(); ++i) {
    int a = vertices[i], b = vertices[i + 1];
    if (a == b) continue;
    auto e = X->edge_between(a, b);
    if (!e) throw Error("BadPath", "consecutive path vertices not joined by an edge");
    int l = letter(*e, a);
    if (l) w.push_back(l);
  }
  return reduce_word(w);
}

Presentation fundamental_group(const TriangleComplex& X, int basepoint) {
  auto comps = X.vertex_components();
  if (comps.size() != 1)
    throw Error("Disconnected", "fundamental group requires a connected complex");
  if (basepoint < 0 || basepoint >= X.vertex_count())
    throw Error("UnknownVertex", "bad basepoint");

  Presentation P;
  P.X = &X;
  P.basepoint = basepoint;
  P.tree_parent_edge.assign(X.vertex_count(), -1);
  std::vector<bool> seen(X.vertex_count(), false);
  std::vector<std::vector<std::pair<int, int>>> adj(X.vertex_count());  // (nbr, edge)
  for (int e = 0; e < X.edge_count(); ++e) {
    adj[X.edge(e).a].push_back({X.edge(e).b, e});
    adj[X.edge(e).b].push_back({X.edge(e).a, e});
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  std::set<int> tree_edges;
  std::queue<int> bfs;
  bfs.push(basepoint);
  seen[basepoint] = true;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (auto [w, e] : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      P.tree_parent_edge[w] = e;
      tree_edges.insert(e);
      bfs.push(w);
    }
  }
  for (int e = 0; e < X.edge_count(); ++e) {
    if (tree_edges.count(e)) continue;
    P.generator_of_edge[e] = static_cast<int>(P.edge_of_generator.size());
    P.edge_of_generator.push_back(e);
  }
  for (int t = 0; t < X.triangle_count(); ++t) {
    const Triangle& tr = X.triangle(t);
    std::vector<int> cycle = {tr.v[0], tr.v[1], tr.v[2], tr.v[0]};
    Word r = P.word_of_closed_path(cycle);
    if (!r.empty()) P.relators.push_back(std::move(r));
  }
  std::sort(P.relators.begin(), P.relators.end());
  P.relators.erase(std::unique(P.relators.begin(), P.relators.end()), P.relators.end());

  // Abelianization via the Smith normal form of the exponent-sum matrix.
  int g = static_cast<int>(P.edge_of_generator.size());
  if (g > 0) {
    IntMatrix m(std::max<size_t>(P.relators.size(), 1), std::vector<BigInt>(g, 0));
    for (size_t r = 0; r < P.relators.size(); ++r)
      for (int x : P.relators[r]) m[r][std::abs(x) - 1] += (x > 0) ? 1 : -1;
    auto inv = smith_invariants(m);
    int rank = 0;
    for (const auto& d : inv)
      if (d != 0) {
        ++rank;
        if (d > 1) P.abelianization_torsion.push_back(d);
      }
    P.abelianization_rank = g - rank;
  }
  return P;
}

}  // namespace tcx
