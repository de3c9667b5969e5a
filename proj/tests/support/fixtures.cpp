#include "support/fixtures.hpp"

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fixtures {

using tcx::AngleExpr;
using tcx::AtomEnv;
using tcx::Rational;
using tcx::TriangleComplex;
using tcx::angle_pi;

namespace {

const double kSqrt2 = std::sqrt(2.0);

}  // namespace

TriangleComplex c1_square() {
  TriangleComplex X;
  int A = X.add_vertex("A"), B = X.add_vertex("B"), C = X.add_vertex("C"),
      D = X.add_vertex("D");
  // ABC: right angle at B, legs 1, hypotenuse AC
  X.add_triangle({A, B, C}, {angle_pi(1, 4), angle_pi(1, 2), angle_pi(1, 4)},
                 {1.0, kSqrt2, 1.0});
  X.add_triangle({A, C, D}, {angle_pi(1, 4), angle_pi(1, 4), angle_pi(1, 2)},
                 {1.0, 1.0, kSqrt2});
  X.finalize();
  return X;
}

TriangleComplex c2_book(int pages) {
  TriangleComplex X;
  int P = X.add_vertex("P"), Q = X.add_vertex("Q");
  for (int i = 0; i < pages; ++i) {
    int S = X.add_vertex("S" + std::to_string(i));
    int R = X.add_vertex("R" + std::to_string(i));
    // square P(0,0) S(1,0) R(1,1) Q(0,1), diagonal P-R
    X.add_triangle({P, S, R}, {angle_pi(1, 4), angle_pi(1, 2), angle_pi(1, 4)},
                   {1.0, kSqrt2, 1.0});
    X.add_triangle({P, R, Q}, {angle_pi(1, 4), angle_pi(1, 4), angle_pi(1, 2)},
                   {1.0, 1.0, kSqrt2});
  }
  X.finalize();
  return X;
}

namespace {

// Adds the two triangles of a unit square split along the ascending
// diagonal p00-p11.
void add_unit_square(TriangleComplex& X, int p00, int p10, int p01, int p11) {
  X.add_triangle({p00, p10, p11}, {angle_pi(1, 4), angle_pi(1, 2), angle_pi(1, 4)},
                 {1.0, kSqrt2, 1.0});
  X.add_triangle({p00, p11, p01}, {angle_pi(1, 4), angle_pi(1, 4), angle_pi(1, 2)},
                 {1.0, 1.0, kSqrt2});
}

}  // namespace

TriangleComplex long_book(int pages, int cols) {
  TriangleComplex X;
  int s0 = X.add_vertex("S.0"), s1 = X.add_vertex("S.1");
  for (int p = 0; p < pages; ++p) {
    int prev0 = s0, prev1 = s1;
    for (int k = 1; k <= cols; ++k) {
      int c0 = X.add_vertex("p" + std::to_string(p) + "." + std::to_string(k) + ".0");
      int c1 = X.add_vertex("p" + std::to_string(p) + "." + std::to_string(k) + ".1");
      add_unit_square(X, prev0, c0, prev1, c1);
      prev0 = c0;
      prev1 = c1;
    }
  }
  X.finalize();
  return X;
}

TriangleComplex c3_theta_circle() {
  TriangleComplex X;
  const std::vector<std::string> graph_vertices = {"u", "mx", "my", "mz", "v"};
  const std::vector<std::pair<std::string, std::string>> graph_edges = {
      {"u", "mx"}, {"mx", "v"}, {"u", "my"},
      {"my", "v"}, {"u", "mz"}, {"mz", "v"}};
  const int circ = 3;
  std::map<std::string, std::array<int, 3>> id;
  for (const auto& g : graph_vertices) {
    std::array<int, 3> row{};
    for (int c = 0; c < circ; ++c)
      row[c] = X.add_vertex(g + "." + std::to_string(c));
    id[g] = row;
  }
  for (const auto& [g1, g2] : graph_edges)
    for (int c = 0; c < circ; ++c) {
      int cn = (c + 1) % circ;
      add_unit_square(X, id[g1][c], id[g2][c], id[g1][cn], id[g2][cn]);
    }
  X.finalize();
  return X;
}

TriangleComplex equilateral_fan(int k) {
  TriangleComplex X;
  int O = X.add_vertex("O");
  std::vector<int> ring;
  for (int i = 0; i < k; ++i) ring.push_back(X.add_vertex("p" + std::to_string(i)));
  for (int i = 0; i < k; ++i)
    X.add_triangle({O, ring[i], ring[(i + 1) % k]},
                   {angle_pi(1, 3), angle_pi(1, 3), angle_pi(1, 3)},
                   {1.0, 1.0, 1.0});
  X.finalize();
  return X;
}

TriangleComplex square_fan(int k) {
  TriangleComplex X;
  int O = X.add_vertex("O");
  std::vector<int> ring;
  for (int i = 0; i < k; ++i) ring.push_back(X.add_vertex("p" + std::to_string(i)));
  for (int i = 0; i < k; ++i)
    X.add_triangle({O, ring[i], ring[(i + 1) % k]},
                   {angle_pi(1, 2), angle_pi(1, 4), angle_pi(1, 4)},
                   {kSqrt2, 1.0, 1.0});
  X.finalize();
  return X;
}

TriangleComplex cone_annulus(int n, const AngleExpr& extra, const AtomEnv& env) {
  TriangleComplex X;
  X.set_atoms(env);
  // inner link iota = pi - (2pi + extra)/n; odd triangles (pi/6, pi/6, 2pi/3)
  AngleExpr b1 = angle_pi(2, 3) - (angle_pi(2) + extra).scaled(Rational(1, n));
  AngleExpr b23 = (angle_pi(1) - b1).scaled(Rational(1, 2));
  double leg = std::sin(tcx::kPi / 6) / std::sin(2 * tcx::kPi / 3);
  double outer = leg * std::sin(b1.numeric(env)) / std::sin(b23.numeric(env));
  std::vector<int> r, R;
  for (int i = 0; i < n; ++i) r.push_back(X.add_vertex("r" + std::to_string(i)));
  for (int i = 0; i < n; ++i) R.push_back(X.add_vertex("R" + std::to_string(i)));
  for (int i = 0; i < n; ++i) {
    int in = (i + 1) % n;
    // odd: (r_i, r_{i+1}, R_i); sides opposite: diag, radial, inner
    X.add_triangle({r[i], r[in], R[i]},
                   {angle_pi(1, 6), angle_pi(1, 6), angle_pi(2, 3)},
                   {leg, leg, 1.0});
    // even: (r_{i+1}, R_{i+1}, R_i); sides opposite: outer, diag, radial
    X.add_triangle({r[in], R[in], R[i]}, {b1, b23, b23}, {outer, leg, leg});
  }
  X.finalize();
  return X;
}

namespace {

// A closed fan of k triangles around `apex`, with the ring starting at the
// existing vertex `shared`; triangles are equilateral (hex = true k=6 style)
// or right isosceles (apex angle pi/2).
void add_fan(TriangleComplex& X, int apex, int shared, const std::string& prefix,
             int k, bool equilateral) {
  std::vector<int> ring{shared};
  for (int i = 1; i < k; ++i)
    ring.push_back(X.add_vertex(prefix + std::to_string(i)));
  for (int i = 0; i < k; ++i) {
    int a = ring[i], b = ring[(i + 1) % k];
    if (equilateral)
      X.add_triangle({apex, a, b}, {angle_pi(1, 3), angle_pi(1, 3), angle_pi(1, 3)},
                     {1.0, 1.0, 1.0});
    else
      X.add_triangle({apex, a, b}, {angle_pi(1, 2), angle_pi(1, 4), angle_pi(1, 4)},
                     {kSqrt2, 1.0, 1.0});
  }
}

}  // namespace

TriangleComplex wedge_hex_hex() {
  TriangleComplex X;
  int O = X.add_vertex("O");
  int s = X.add_vertex("s");
  add_fan(X, O, s, "p", 6, true);
  add_fan(X, O, s, "q", 6, true);
  X.finalize();
  return X;
}

TriangleComplex wedge_sq_hex() {
  TriangleComplex X;
  int O = X.add_vertex("O");
  int s = X.add_vertex("s");
  add_fan(X, O, s, "p", 4, false);
  add_fan(X, O, s, "q", 6, true);
  X.finalize();
  return X;
}

TriangleComplex wedge_sq_sq() {
  TriangleComplex X;
  int O = X.add_vertex("O");
  int s = X.add_vertex("s");
  add_fan(X, O, s, "p", 4, false);
  add_fan(X, O, s, "q", 4, false);
  X.finalize();
  return X;
}

TriangleComplex chain3_hex() {
  TriangleComplex X;
  int O = X.add_vertex("O");
  int s = X.add_vertex("s");
  add_fan(X, O, s, "p", 6, true);
  add_fan(X, O, s, "q", 6, true);
  add_fan(X, O, s, "r", 6, true);
  X.finalize();
  return X;
}

TriangleComplex clover3_wedge() {
  TriangleComplex X;
  int v = X.add_vertex("v");
  int w = X.add_vertex("w");
  add_fan(X, v, w, "p", 6, true);
  int z = X.add_vertex("z");
  for (int i = 0; i < 3; ++i) {
    int a = X.add_vertex("a" + std::to_string(i));
    X.add_triangle({v, w, a}, {angle_pi(1, 2), angle_pi(1, 4), angle_pi(1, 4)},
                   {kSqrt2, 1.0, 1.0});
    X.add_triangle({v, a, z}, {angle_pi(1, 2), angle_pi(1, 4), angle_pi(1, 4)},
                   {kSqrt2, 1.0, 1.0});
  }
  X.finalize();
  return X;
}

namespace {

void add_torus(TriangleComplex& X, const std::vector<std::vector<int>>& v) {
  int n = static_cast<int>(v.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int in = (i + 1) % n, jn = (j + 1) % n;
      add_unit_square(X, v[i][j], v[in][j], v[i][jn], v[in][jn]);
    }
}

}  // namespace

TriangleComplex torus_pair() {
  TriangleComplex X;
  std::vector<std::vector<int>> a(3, std::vector<int>(3));
  std::vector<std::vector<int>> b(3, std::vector<int>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      a[i][j] = X.add_vertex("a" + std::to_string(i) + std::to_string(j));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == 0 && j == 0) {
        b[i][j] = a[0][0];
      } else if (i == 1 && j == 0) {
        b[i][j] = a[1][0];
      } else {
        b[i][j] = X.add_vertex("b" + std::to_string(i) + std::to_string(j));
      }
    }
  add_torus(X, a);
  add_torus(X, b);
  X.finalize();
  return X;
}

TriangleComplex theta_interval() {
  TriangleComplex X;
  const std::vector<std::string> graph_vertices = {"u", "mx", "my", "mz", "v"};
  const std::vector<std::pair<std::string, std::string>> graph_edges = {
      {"u", "mx"}, {"mx", "v"}, {"u", "my"},
      {"my", "v"}, {"u", "mz"}, {"mz", "v"}};
  std::map<std::string, std::array<int, 2>> id;
  for (const auto& g : graph_vertices) {
    std::array<int, 2> row{};
    for (int c = 0; c < 2; ++c)
      row[c] = X.add_vertex(g + "." + std::to_string(c));
    id[g] = row;
  }
  for (const auto& [g1, g2] : graph_edges)
    add_unit_square(X, id[g1][0], id[g2][0], id[g1][1], id[g2][1]);
  X.finalize();
  return X;
}

}  // namespace fixtures
