#pragma once

#include <vector>

#include "tcx/angle.hpp"
#include "tcx/complex.hpp"

namespace tcx {

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

// Rank over Q.
int matrix_rank(IntMatrix m);

// Nonzero diagonal entries of the Smith normal form, ascending by divisibility.
std::vector<BigInt> smith_invariants(IntMatrix m);

struct BettiNumbers {
  int b0 = 0, b1 = 0, b2 = 0;
  std::vector<BigInt> h1_torsion;  // invariant factors > 1
};

// Simplicial homology of the whole complex over Z.
BettiNumbers homology(const TriangleComplex& X);

}  // namespace tcx
