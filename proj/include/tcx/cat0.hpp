#pragma once

#include <map>
#include <string>
#include <vector>

#include "tcx/complex.hpp"
#include "tcx/homology.hpp"
#include "tcx/link.hpp"

namespace tcx {

struct Cat0Failure {
  int vertex;
  GirthResult girth;
};

struct Cat0Report {
  bool pass = true;
  std::vector<Cat0Failure> failures;
};

// Theorem-B link condition for piecewise Euclidean complexes: conditions
// (i),(ii) hold identically, so local CAT(0) reduces to vertex-link girth
// >= 2*pi. Edge-interior links are always 2*pi cycles or acyclic.
Cat0Report check_local_cat0(const TriangleComplex& X, int threads = 1);

// Oriented edge word: positive ids are generators g<k>, negative inverses.
using Word = std::vector<int>;
Word reduce_word(Word w);
Word invert_word(const Word& w);
std::string word_str(const Word& w);

struct Presentation {
  int basepoint = 0;
  std::vector<int> tree_parent_edge;   // per vertex, edge toward basepoint (-1 at root)
  std::map<int, int> generator_of_edge;  // non-tree edge id -> generator index
  std::vector<int> edge_of_generator;
  std::vector<Word> relators;            // one per triangle, freely reduced
  int abelianization_rank = 0;
  std::vector<BigInt> abelianization_torsion;

  // Word of a closed edge path given as a vertex sequence v0, v1, ..., v0.
  Word word_of_closed_path(const std::vector<int>& vertices) const;
  // Generator letter of traversing edge e from vertex `from` (0 for tree edges).
  int letter(int edge, int from) const;

  const TriangleComplex* X = nullptr;
};

Presentation fundamental_group(const TriangleComplex& X, int basepoint);

}  // namespace tcx
