#include "tcx/homology.hpp"

#include <algorithm>

namespace tcx {

namespace {

using boost::multiprecision::abs;

// Fraction-free Gaussian elimination.
int rank_impl(IntMatrix& m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t pivot = rank;
    while (pivot < rows && m[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c] == 0) continue;
      BigInt a = m[rank][c], b = m[r][c];
      for (size_t k = c; k < cols; ++k) m[r][k] = m[r][k] * a - m[rank][k] * b;
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

}  // namespace

int matrix_rank(IntMatrix m) { return rank_impl(m); }

std::vector<BigInt> smith_invariants(IntMatrix m) {
  std::vector<BigInt> out;
  if (m.empty() || m[0].empty()) return out;
  size_t rows = m.size(), cols = m[0].size();
  size_t r0 = 0, c0 = 0;
  while (r0 < rows && c0 < cols) {
    // find the entry with the smallest nonzero absolute value
    size_t pr = rows, pc = cols;
    for (size_t r = r0; r < rows; ++r)
      for (size_t c = c0; c < cols; ++c)
        if (m[r][c] != 0 &&
            (pr == rows || abs(m[r][c]) < abs(m[pr][pc])))
          pr = r, pc = c;
    if (pr == rows) break;
    std::swap(m[r0], m[pr]);
    for (size_t r = 0; r < rows; ++r) std::swap(m[r][c0], m[r][pc]);
    bool clean = true;
    for (size_t r = r0 + 1; r < rows; ++r) {
      BigInt q = m[r][c0] / m[r0][c0];
      if (q != 0)
        for (size_t c = c0; c < cols; ++c) m[r][c] -= q * m[r0][c];
      if (m[r][c0] != 0) clean = false;
    }
    for (size_t c = c0 + 1; c < cols; ++c) {
      BigInt q = m[r0][c] / m[r0][c0];
      if (q != 0)
        for (size_t r = r0; r < rows; ++r) m[r][c] -= q * m[r][c0];
      if (m[r0][c] != 0) clean = false;
    }
    if (!clean) continue;  // repeat with a smaller pivot
    out.push_back(abs(m[r0][c0]));
    ++r0;
    ++c0;
  }
  // enforce divisibility chain
  for (size_t i = 0; i + 1 < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (out[j] % out[i] != 0) {
        BigInt g = gcd(out[i], out[j]);
        BigInt l = out[i] / g * out[j];
        out[i] = g;
        out[j] = l;
      }
  std::sort(out.begin(), out.end());
  return out;
}

BettiNumbers homology(const TriangleComplex& X) {
  int V = X.vertex_count(), E = X.edge_count(), F = X.triangle_count();
  // boundary_1: E x V ;  boundary_2: F x E (rows = higher cells)
  IntMatrix d1(E, std::vector<BigInt>(V, 0));
  for (int e = 0; e < E; ++e) {
    d1[e][X.edge(e).b] += 1;
    d1[e][X.edge(e).a] -= 1;
  }
  IntMatrix d2(F, std::vector<BigInt>(E, 0));
  for (int t = 0; t < F; ++t) {
    const Triangle& tr = X.triangle(t);
    for (int i = 0; i < 3; ++i) {
      int x = tr.v[(i + 1) % 3], y = tr.v[(i + 2) % 3];
      d2[t][tr.edge[i]] += (x < y) ? 1 : -1;
    }
  }
  int r1 = E ? matrix_rank(d1) : 0;
  int r2 = F ? matrix_rank(d2) : 0;
  BettiNumbers b;
  b.b0 = V - r1;
  b.b1 = E - r1 - r2;
  b.b2 = F - r2;
  if (F) {
    for (const BigInt& inv : smith_invariants(d1))
      (void)inv;  // H0 is free; torsion lives in H1 via d2
    for (const BigInt& inv : smith_invariants(d2))
      if (inv > 1) b.h1_torsion.push_back(inv);
  }
  return b;
}

}  // namespace tcx
