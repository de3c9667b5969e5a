#pragma once

#include "tcx/complex.hpp"

namespace fixtures {

// Unit square on A,B,C,D split along the diagonal AC.
tcx::TriangleComplex c1_square();

// Book of `pages` unit squares glued along the spine PQ, each page split
// along the diagonal P-R_i.
tcx::TriangleComplex c2_book(int pages = 3);

// Book whose pages are 1 x cols rectangles of unit squares sharing the
// vertical spine S0-S1; contractible for any page count.
tcx::TriangleComplex long_book(int pages, int cols);

// Simplicial product of the subdivided theta graph (u, mx, my, mz, v) with a
// circle of three arcs; unit squares split along ascending diagonals.
tcx::TriangleComplex c3_theta_circle();

// k unit equilateral triangles around an apex with a closed ring.
tcx::TriangleComplex equilateral_fan(int k);

// k right isosceles triangles (apex angle pi/2) around an apex.
tcx::TriangleComplex square_fan(int k = 4);

// Annulus of 2n triangles around a missing cone point of total angle
// 2*pi + extra. Inner edges length 1; odd triangles (pi/6, pi/6, 2pi/3).
tcx::TriangleComplex cone_annulus(int n, const tcx::AngleExpr& extra,
                                  const tcx::AtomEnv& env = {});

// Two fans sharing one spoke: vertex link = wedge of two 2*pi circles.
tcx::TriangleComplex wedge_hex_hex();
tcx::TriangleComplex wedge_sq_hex();
tcx::TriangleComplex wedge_sq_sq();

// Three hexagonal fans sharing one common spoke: unfolding takes two steps.
tcx::TriangleComplex chain3_hex();

// Hexagonal fan wedged with a 3-strand clover at the same vertex.
tcx::TriangleComplex clover3_wedge();

// Two 3x3 flat square tori glued along one edge: essential and unfoldable.
tcx::TriangleComplex torus_pair();

// Subdivided theta graph times an interval: the book-chain fixture with two
// parallel degree-3 spines.
tcx::TriangleComplex theta_interval();

}  // namespace fixtures
