#include <doctest.h>

#include <set>

#include "support/fixtures.hpp"
#include "tcx/complex.hpp"
#include "tcx/json_io.hpp"

using namespace tcx;

TEST_CASE("C1 loads with the expected counts") {
  auto X = fixtures::c1_square();
  CHECK(X.vertex_count() == 4);
  CHECK(X.edge_count() == 5);
  CHECK(X.triangle_count() == 2);
  CHECK(X.euler_characteristic() == 1);
}

TEST_CASE("angle sum violations are rejected") {
  TriangleComplex X;
  int a = X.add_vertex("a"), b = X.add_vertex("b"), c = X.add_vertex("c");
  X.add_triangle({a, b, c}, {angle_pi(1, 2), angle_pi(1, 2), angle_pi(1, 2)},
                 {1.0, 1.0, 1.0});
  CHECK_THROWS_WITH_AS(X.finalize(), doctest::Contains("AngleSumViolation"), Error);
}

TEST_CASE("law of sines mismatches are rejected") {
  TriangleComplex X;
  int a = X.add_vertex("a"), b = X.add_vertex("b"), c = X.add_vertex("c");
  X.add_triangle({a, b, c}, {angle_pi(1, 3), angle_pi(1, 3), angle_pi(1, 3)},
                 {1.0, 1.0, 1.5});
  CHECK_THROWS_WITH_AS(X.finalize(), doctest::Contains("LawOfSinesMismatch"), Error);
}

TEST_CASE("shared edge length mismatches are rejected") {
  TriangleComplex X;
  int a = X.add_vertex("a"), b = X.add_vertex("b"), c = X.add_vertex("c"),
      d = X.add_vertex("d");
  X.add_triangle({a, b, c}, {angle_pi(1, 3), angle_pi(1, 3), angle_pi(1, 3)},
                 {1.0, 1.0, 1.0});
  // a-b appears again with a different length
  X.add_triangle({a, b, d}, {angle_pi(1, 3), angle_pi(1, 3), angle_pi(1, 3)},
                 {1.5, 1.5, 1.5});
  CHECK_THROWS_WITH_AS(X.finalize(), doctest::Contains("SharedEdgeLengthMismatch"),
                       Error);
}

TEST_CASE("duplicate triples are rejected") {
  TriangleComplex X;
  int a = X.add_vertex("a"), b = X.add_vertex("b"), c = X.add_vertex("c");
  X.add_triangle({a, b, c}, {angle_pi(1, 3), angle_pi(1, 3), angle_pi(1, 3)},
                 {1.0, 1.0, 1.0});
  X.add_triangle({b, c, a}, {angle_pi(1, 3), angle_pi(1, 3), angle_pi(1, 3)},
                 {1.0, 1.0, 1.0});
  CHECK_THROWS_WITH_AS(X.finalize(), doctest::Contains("NonSimplicial"), Error);
}

TEST_CASE("edge degrees") {
  auto C2 = fixtures::c2_book(3);
  auto spine = C2.edge_between(*C2.vertex_by_name("P"), *C2.vertex_by_name("Q"));
  REQUIRE(spine.has_value());
  CHECK(C2.edge_degree(*spine) == 3);

  auto C1 = fixtures::c1_square();
  auto diag = C1.edge_between(*C1.vertex_by_name("A"), *C1.vertex_by_name("C"));
  CHECK(C1.edge_degree(*diag) == 2);
  auto ab = C1.edge_between(*C1.vertex_by_name("A"), *C1.vertex_by_name("B"));
  CHECK(C1.edge_degree(*ab) == 1);
  CHECK_THROWS_AS(C1.edge_degree(99), Error);
}

TEST_CASE("classification") {
  auto C2 = fixtures::c2_book(3);
  auto c2c = C2.classify();
  CHECK(!c2c.essential);
  CHECK(c2c.thick);
  CHECK(c2c.components == 1);

  auto C3 = fixtures::c3_theta_circle();
  auto c3c = C3.classify();
  CHECK(c3c.essential);
  CHECK(c3c.thick);
  CHECK(c3c.components == 1);

  TriangleComplex single;
  int a = single.add_vertex("a"), b = single.add_vertex("b"), c = single.add_vertex("c");
  single.add_triangle({a, b, c}, {angle_pi(1, 3), angle_pi(1, 3), angle_pi(1, 3)},
                      {1.0, 1.0, 1.0});
  single.finalize();
  auto sc = single.classify();
  CHECK(!sc.essential);
  CHECK(!sc.thick);
}

TEST_CASE("branching locus") {
  auto C1 = fixtures::c1_square();
  CHECK(C1.branching_locus().empty());

  auto C2 = fixtures::c2_book(3);
  auto bl = C2.branching_locus();
  REQUIRE(bl.size() == 1);
  CHECK(C2.edge(bl[0]).a == *C2.vertex_by_name("P"));

  auto C3 = fixtures::c3_theta_circle();
  auto bl3 = C3.branching_locus();
  CHECK(bl3.size() == 6);  // the two vertical circles, three edges each
  for (int e : bl3) {
    std::string na = C3.vertex_name(C3.edge(e).a);
    std::string nb = C3.vertex_name(C3.edge(e).b);
    CHECK(na.substr(0, 1) == nb.substr(0, 1));
    bool over_u = na.substr(0, 1) == "u";
    bool over_v = na.substr(0, 1) == "v";
    CHECK((over_u || over_v));
  }
}

TEST_CASE("patches") {
  auto C2 = fixtures::c2_book(3);
  auto p2 = C2.patches();
  REQUIRE(p2.size() == 3);
  for (const auto& p : p2) {
    CHECK(p.tris.size() == 2);
    CHECK(p.orientable);
    CHECK(p.completion_euler() == 1);
    CHECK(p.completion_boundary_components == 1);
  }

  auto C1 = fixtures::c1_square();
  auto p1 = C1.patches();
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].tris.size() == 2);

  auto C3 = fixtures::c3_theta_circle();
  auto p3 = C3.patches();
  REQUIRE(p3.size() == 3);
  for (const auto& p : p3) {
    CHECK(p.tris.size() == 12);
    CHECK(p.orientable);
    CHECK(p.completion_euler() == 0);  // annulus
    CHECK(p.completion_boundary_components == 2);
  }
}

TEST_CASE("patch invariants: partition and interior degrees") {
  for (const auto& X : {fixtures::c2_book(3), fixtures::c3_theta_circle(),
                        fixtures::cone_annulus(7, angle_pi(1, 3))}) {
    auto patches = X.patches();
    std::set<int> seen;
    for (const auto& p : patches) {
      for (int t : p.tris) CHECK(seen.insert(t).second);
      for (int e : p.interior_edges) CHECK(X.edge_degree(e) <= 2);
    }
    CHECK(static_cast<int>(seen.size()) == X.triangle_count());
    auto bl = X.branching_locus();
    std::set<int> blset(bl.begin(), bl.end());
    for (const auto& p : patches)
      for (int e : p.interior_edges) CHECK(!blset.count(e));
  }
}

TEST_CASE("euler characteristic of fixtures") {
  CHECK(fixtures::c2_book(3).euler_characteristic() == 8 - 13 + 6);
  CHECK(fixtures::c3_theta_circle().euler_characteristic() == 0);
}

TEST_CASE("json round trip") {
  auto X = fixtures::c3_theta_circle();
  Json doc = complex_to_json(X);
  TriangleComplex Y = complex_from_json(doc);
  CHECK(Y.vertex_count() == X.vertex_count());
  CHECK(Y.edge_count() == X.edge_count());
  CHECK(Y.triangle_count() == X.triangle_count());
  CHECK(dump_deterministic(complex_to_json(Y)) == dump_deterministic(doc));
}

TEST_CASE("bare edges load and count as degree zero") {
  TriangleComplex X;
  int a = X.add_vertex("a"), b = X.add_vertex("b"), c = X.add_vertex("c");
  X.add_bare_edge(a, b, 1.0);
  X.add_bare_edge(b, c, 1.0);
  X.add_bare_edge(a, c, 1.0);
  X.finalize();
  CHECK(X.edge_count() == 3);
  CHECK(X.edge_degree(0) == 0);
  CHECK(X.triangle_count() == 0);
}
