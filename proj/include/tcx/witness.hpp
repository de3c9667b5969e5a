#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcx/cat0.hpp"
#include "tcx/complex.hpp"
#include "tcx/geodesic.hpp"

namespace tcx {

// A geodesic starting and ending perpendicularly to branching edges,
// traced with exact launch angle pi/2.
struct PerpConnection {
  int start_edge = -1;
  double start_offset = 0;
  int start_tri = -1;
  int end_edge = -1;
  double end_offset = 0;
  int end_tri = -1;
  GeodesicPath path;
  std::vector<int> edge_sequence;  // edges crossed, start through end
  std::optional<Word> word;        // loop word when start and end edge agree
  bool exact = true;               // perpendicular arrival certified exactly
};

struct ConnectionParams {
  int offsets = 16;       // sample grid per edge: j*L/(offsets+1)
  double budget = 8.0;
  int max_connections = 256;
};

std::vector<PerpConnection> find_sheared_connections(const TriangleComplex& X,
                                                     const Presentation& pres,
                                                     int edge,
                                                     const ConnectionParams& params);

// The section-9 graph: five intervals I^{ab}, I^{ca}, I^{bc}, I, I' with the
// four identifications; words f, f' generate the candidate free subgroup.
struct GammaGraph {
  int edge = -1;
  PerpConnection c_ab, c_ca, c_bc;
  GeodesicPath rev_ab, rev_ca, rev_bc;  // reverse traversals
  double a = 0, b = 0, c = 0;     // offsets on e covered by I
  double a2 = 0, b2 = 0, c2 = 0;  // offsets covered by I'
  Word f, f_prime;
};

GammaGraph build_gamma(const TriangleComplex& X, const Presentation& pres, int edge,
                       const PerpConnection& c_ab, const PerpConnection& c_ca,
                       const PerpConnection& c_bc);

// Alternating path: each leg is a perpendicular-to-perpendicular geodesic
// followed by a slide (possibly trivial) inside the arrival edge.
struct ShearedLeg {
  GeodesicPath geo;
  double slide_to_offset = 0;
};
struct ShearedPath {
  std::vector<ShearedLeg> legs;
};

struct ShearedCheck {
  bool ok = true;
  std::string reason;
};
ShearedCheck verify_sheared(const TriangleComplex& X, const ShearedPath& p);

struct ShearedDevelopment {
  Vec2 start;
  Vec2 end;
  std::vector<double> junction_separations;  // after each leg's slide
  double final_separation = 0;
  bool all_positive = true;   // every junction separation > 1e-9
  bool monotone = true;       // nondecreasing along the path
};
ShearedDevelopment develop_sheared(const TriangleComplex& X, const ShearedPath& p);

struct WordCheck {
  std::string word;              // letters h, H (inverse), j, J
  bool sheared_ok = false;
  bool endpoints_distinct = false;
  bool monotone = false;
  double separation = 0;
};

struct FreeWitness {
  GammaGraph gamma;
  int word_length_bound = 0;
  std::vector<WordCheck> checks;
  bool complete = false;           // all words verified
  std::string failure_kind;        // "ShearedCheckFailed" or "EndpointsCoincide"
  std::string failure_word;
};

// Verifies every reduced word over {h,h'} of length 1..N: the mapped path is
// a sheared geodesic and its developed endpoints stay distinct after every
// prefix (never-closing certificate for <f, f'>). Word checks run on
// `threads` workers; results are aggregated in word order.
FreeWitness free_subgroup_certificate(const TriangleComplex& X, const GammaGraph& g,
                                      int N, int threads = 1);

// Reduced words over {h, h', h^-1, h'^-1} of exactly length n, lexicographic.
std::vector<std::string> reduced_words(int n);

// Builds the alternating path of a reduced word through the gamma graph.
ShearedPath word_path(const TriangleComplex& X, const GammaGraph& g,
                      const std::string& word);

}  // namespace tcx
