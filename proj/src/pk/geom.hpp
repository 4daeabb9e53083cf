#pragma once
// Inversive coordinates for circles/lines, the Lorentzian inner product,
// reflections, and linear circle maps preserving the inversive form.
#include <array>
#include <optional>

#include "pk/exact.hpp"

namespace pk {

// A circle in inversive coordinates (bt, b, h1, h2) with entries in
// Q(sqrt d): bt = co-curvature, b = curvature, (h1,h2) = curvature*center.
// Normalization: h1^2 + h2^2 - b*bt == 1.
struct InversiveCircle {
  QuadRat bt, b, h1, h2;

  InversiveCircle() = default;
  InversiveCircle(QuadRat bt_, QuadRat b_, QuadRat h1_, QuadRat h2_);
  static InversiveCircle make(int d, const Rat& bt, const Rat& b, const QuadRat& h1,
                              const QuadRat& h2);

  int field() const { return b.d; }
  bool is_line() const { return b.is_zero(); }
  bool operator==(const InversiveCircle& o) const;
  bool operator!=(const InversiveCircle& o) const { return !(*this == o); }
};

// Lorentzian inner product <c,c'> = h1 h1' + h2 h2' - (b bt' + bt b')/2.
// <c,c> == 1 for normalized circles; <c,c'> == -1 for externally tangent
// circles (oriented consistently).
QuadRat inner_product(const InversiveCircle& c, const InversiveCircle& m);

// Reflection of c through the mirror circle m: c - 2<c,m> m.
InversiveCircle reflect(const InversiveCircle& c, const InversiveCircle& m);

bool tangent(const InversiveCircle& c, const InversiveCircle& m);

// Euclidean data of a proper circle: center and radius as doubles.
// For lines returns unit normal (h1,h2) and offset bt/2 instead.
struct EuclideanData {
  bool line = false;
  double cx = 0, cy = 0;  // center (circle) or unit normal (line)
  double r = 0;           // radius (circle) or offset (line): n.x = offset
};
EuclideanData euclidean_data(const InversiveCircle& c);

// A 4x4 matrix over Q(sqrt d) acting on inversive coordinate vectors
// (bt, b, h1, h2); the constructor verifies that the inversive form is
// preserved exactly.
struct LinearCircleMap {
  std::array<std::array<QuadRat, 4>, 4> m;

  explicit LinearCircleMap(std::array<std::array<QuadRat, 4>, 4> entries);
  // Reflection through a fixed mirror circle as a matrix.
  static LinearCircleMap reflection(const InversiveCircle& mirror);
  static LinearCircleMap identity(int d);

  InversiveCircle apply(const InversiveCircle& c) const;
  LinearCircleMap compose(const LinearCircleMap& o) const;
};

}  // namespace pk
