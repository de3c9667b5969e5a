#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcx/complex.hpp"
#include "tcx/link.hpp"

namespace tcx {

struct RationalityWitness {
  int vertex = -1;
  std::string kind;  // "cycle" or "segment"
  AngleExpr length;
};

struct RationalReport {
  bool rational = true;
  std::vector<RationalityWitness> witnesses;
};

// Def. of rational complexes: every cycle and segment in every vertex link
// has length commensurable with pi. Leaf chains are unconstrained.
RationalReport check_rational(const TriangleComplex& X);

struct CircleLink {
  int vertex;
  AngleExpr length;
  bool is_two_pi;
};
// Every circle component of every vertex link with its exact length.
std::vector<CircleLink> circle_link_report(const TriangleComplex& X);

// Generator of H_1(P-bar, dP) realized as a dual strip, with its developed
// holonomy.
struct PsiGenerator {
  std::string kind;  // "loop" (non-tree dual edge) or "arc" (boundary to boundary)
  int crossing_edge = -1;   // for loops: the non-tree interior edge
  int from_component = 0, to_component = 0;  // for arcs
  std::vector<int> strip;   // triangle ids of the developed strip, in order
  AngleExpr holonomy_raw;   // developed direction difference, exact
  AngleExpr psi;            // holonomy mod pi*Q (atom part)
};

struct PsiReport {
  int patch_id = -1;
  bool orientable = true;
  std::vector<PsiGenerator> generators;
  bool trivial = true;  // all psi values zero
};

PsiReport psi(const TriangleComplex& X, const Patch& patch);

struct ExtrationalityReport {
  bool rational = false;
  bool circle_links_ok = false;
  std::vector<CircleLink> circle_failures;
  bool psi_trivial = false;
  std::vector<std::pair<int, AngleExpr>> psi_failures;  // (patch id, psi value)
  std::vector<int> undetermined_patches;                // non-orientable
  bool extrational = false;
};

ExtrationalityReport check_extrational(const TriangleComplex& X);

struct ShearSpectrum {
  int patch_id = -1;
  long long q = 1;        // boundary vertex links are multiples of pi/q
  long long q_prime = 2;  // smallest even multiple of q with all holonomies
                          // in (pi/q')Z
  std::vector<AngleExpr> holonomies;  // rational multiples of pi mod (pi/q)Z
};

ShearSpectrum shear_spectrum(const TriangleComplex& X, const Patch& patch);

// psi(dtau) = +-pi: the germ-convention angle sum of a triangle boundary.
AngleExpr triangle_boundary_psi(const TriangleComplex& X, int tri);

// Developed rotation of a closed walk in the patch's dual graph: consecutive
// triangles share an interior edge and the first triangle equals the last.
AngleExpr dual_loop_holonomy(const TriangleComplex& X, const Patch& patch,
                             const std::vector<int>& walk);

}  // namespace tcx
