#pragma once
// Packing kernel: integral configurations of the four families, their
// face generators, modular classification, tangency parametrizations,
// simultaneous tangency and coprime insertion, colorings, and canonical keys.
#include <array>
#include <set>
#include <vector>

#include "pk/ford.hpp"

namespace pk {

// Identifies a circle of a configuration: slot index for oct/cube tuples,
// lattice cell (i,j) for the grid families.
struct CircleId {
  int idx = -1;
  long i = 0, j = 0;
  static CircleId slot(int k) { return CircleId{k, 0, 0}; }
  static CircleId cell(long i, long j) { return CircleId{-1, i, j}; }
  bool operator==(const CircleId& o) const {
    return idx == o.idx && i == o.i && j == o.j;
  }
};

// A face generator: for oct a 3-bit mask selecting one circle per diagonal
// pair; for cube a face index 0..5; for the grids a lattice cell (plus
// triangle orientation up/down for tri).
struct FaceId {
  int code = 0;
  long i = 0, j = 0;
  bool up = true;
};

struct Config {
  Kind kind;
  // Octahedral: t has 6 entries, diagonal pairs (0,5),(1,4),(2,3), pair sum 2w.
  // Cubic: t has 8 entries: top cycle a,b,c,d = 0..3, bottom e,f,g,h = 4..7
  //   with e below a; antipodal pairs (0,6),(1,7),(2,4),(3,5), pair sum w.
  std::vector<Int> t;
  Int w;
  // Square grid: curvature(i,j) = (L(i^2+j^2) + A i + B j)/2 + G, L=2*lambda.
  // Triangular grid: curvature(i,j) = L(i^2+ij+j^2) + A i + B j + G.
  Int L, A, B, G;
  std::vector<Int> seed;  // input echo
  char sign = '+';
};

// ---- construction ----------------------------------------------------------

// Validates an input tuple and builds the configuration.
//   oct:    6 ordered curvatures (a,b,c,d,e,f)
//   cube:   8 curvatures, order-insensitive (the lexicographically least
//           valid labeling is chosen)
//   square: 4 curvatures at cells (0,0),(1,0),(0,1),(1,1); `sign` picks the
//           root of the staircase quadratic
//   tri:    3 curvatures at cells (0,0),(1,0),(0,1); `sign` picks the root
//           of the diamond quadratic
Config validate_config(Kind k, const std::vector<Int>& values, char sign = '+');

// Completion data from a minimal tuple: the two roots (w for oct/cube, the
// completing curvature for the grids).
std::pair<Int, Int> completion_roots(Kind k, const std::vector<Int>& minimal);

// Curvature of a circle of the configuration.
Int curvature(const Config& c, const CircleId& id);

// All circle slots of a tuple configuration (oct/cube only).
std::vector<CircleId> circle_slots(const Config& c);

// Whether two circles of the configuration are tangent (combinatorial rule).
bool tangent_circles(const Config& c, const CircleId& u, const CircleId& v);

// All faces of a tuple configuration (oct: 8, cube: 6).  Grid faces are
// indexed by lattice cells; build them directly as FaceId{0,i,j,up}.
std::vector<FaceId> faces(const Config& c);

// Applies the face generator (reflection), returning the new configuration.
Config apply_generator(const Config& c, const FaceId& f);

// ---- modular classification ------------------------------------------------

struct ModularType {
  long modulus;               // 8 (oct, square), 4 (cube), 12 (tri)
  std::set<long> residues;    // admissible curvature residues = type label
  std::string label() const;  // e.g. "(0,1,2)" or "(3,7)"
};

ModularType modular_type(const Config& c);

// ---- tangency parametrization ---------------------------------------------

// Quadratic form with exact rational coefficients A x^2 + B xy + C y^2.
struct QForm {
  Rat A, B, C;
  Rat eval(const Int& x, const Int& y) const;
  Int eval_int(const Int& x, const Int& y) const;  // asserts integrality
  Rat disc() const { return B * B - 4 * A * C; }
};

// The parametrization of all circles tangent to the given circle: tangent
// curvatures are Q(x,y) - a over gcd(x,y)=1, y >= 0, with the form chosen by
// the family's congruence rule on (x,y).
struct TangentForms {
  Kind kind;
  Int a;  // curvature of the central circle
  QForm alpha, beta;
  bool use_alpha(const Int& x, const Int& y) const;
  Int curvature_at(const Int& x, const Int& y) const;  // Q(x,y) - a
};

TangentForms tangent_forms(const Config& c, const CircleId& id);

// ---- simultaneous tangency and insertion ----------------------------------

// Curvatures of circles simultaneously associated to the tangent pair (u,v)
// at parameter n: one value for oct/tri (tangent to both), two values (k, l)
// for cube/square (k tangent to u, l tangent to v, k and l tangent).
std::vector<Int> simultaneous_tangent(const Config& c, const CircleId& u,
                                      const CircleId& v, const Int& n);

// Searches for a parameter n so that the inserted circles repair
// non-coprimality: the returned chain u, k [, l], v has consecutive entries
// tangent with coprime curvatures.  Throws if no n in the search window works.
struct Insertion {
  Int n;
  std::vector<Int> inserted;
};
Insertion coprime_insert(const Config& c, const CircleId& u, const CircleId& v);

// ---- coloring --------------------------------------------------------------

// Proper coloring class of a circle: oct: 0 = yellow (odd pair), 1 = red,
// 2 = blue; cube: bipartition class 0/1; square: (i+j) mod 2; tri: (i-j) mod 3.
int coloring(const Config& c, const CircleId& id);

// ---- canonical keys --------------------------------------------------------

// Canonical key of the configuration under the packing's relabeling
// symmetries (tuple automorphisms, grid dihedral + translation symmetries).
// Two configurations with equal keys generate identical curvature sets.
std::array<Int, 4> canonical_key(const Config& c);

// The tuple automorphism groups (as slot permutations).
const std::vector<std::array<int, 6>>& oct_automorphisms();
const std::vector<std::array<int, 8>>& cube_automorphisms();

// Completion of a cube face cycle (p,q,r,s) to its two containing octuples:
// w = 2(p+r) +/- 2 sqrt(pr+qs).  Returns both configurations.
std::vector<Config> cube_configs_from_face(const std::array<Int, 4>& cycle);

}  // namespace pk
