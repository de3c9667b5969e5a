#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcx/complex.hpp"
#include "tcx/link.hpp"

namespace tcx {

struct UnfoldStep {
  int vertex;          // split vertex of the input complex
  int wedge_edge;      // edge vw of X corresponding to the wedge point y
  int v1, v2;          // resulting vertices (v1 carries Gamma_1)
  int e1, e2;          // duplicated edges v1-w, v2-w in the result
  std::vector<int> cycle_arcs;  // Gamma_1 as arcs of the old link
};

// Splits v along the unfoldable decomposition of its link; the quotient map
// X' -> X identifying v1 with v2 and e1 with e2 is the paper's folding.
std::pair<TriangleComplex, UnfoldStep> unfold_once(const TriangleComplex& X, int v,
                                                   const Unfoldable& u);

struct UnfoldRun {
  TriangleComplex fixpoint;
  std::vector<UnfoldStep> steps;
};

// Repeats unfold_once with the deterministic tie-break (smallest vertex id,
// lexicographically smallest cycle) until no link is unfoldable. Terminates:
// each step adds a vertex and vertex count is bounded by the corner count.
UnfoldRun unfold_all(const TriangleComplex& X);

struct FoldingPropertiesReport {
  bool euler_preserved = false;
  bool components_preserved = false;
  bool essential_preserved = false;
  bool cat0_preserved = false;
  bool pass = false;
};

// Checks the preserved quantities of the folding lemma between X and the
// result of unfold_all(X); throws Error("PropertyViolation") on failure.
FoldingPropertiesReport verify_folding_properties(const TriangleComplex& X,
                                                  const TriangleComplex& X_fix);

}  // namespace tcx
