#pragma once
// Generalized Ford strip packings for the four families, together with the
// dual mirror circles generating their reflection symmetries.
#include <vector>

#include "pk/geom.hpp"

namespace pk {

enum class Kind { Oct, Cube, Square, Tri };

const char* kind_name(Kind k);
Kind kind_from_name(const std::string& s);

// Field discriminant d of Q(sqrt d) used by each family.
int kind_field(Kind k);

// Whether integer parameters (x,y) index a Ford circle: y >= 0, gcd(x,y)=1.
bool ford_domain(const Int& x, const Int& y);

// The Ford circle c(x,y) of the strip packing in inversive coordinates.
// Form selection (alpha/beta) is by the family's congruence rule on (x,y).
InversiveCircle ford_circle(Kind k, const Int& x, const Int& y);

// Curvature of ford_circle as an exact rational (integer in all cases).
Int ford_curvature(Kind k, const Int& x, const Int& y);

// A dual mirror circle with its integral index map (x,y) -> (m00 x + m01 y,
// m10 x + m11 y) describing the induced permutation of Ford circles.
struct DualMirror {
  InversiveCircle circle;
  long m00, m01, m10, m11;
};

// Generating dual mirrors of the strip packing's reflection group.
std::vector<DualMirror> dual_mirrors(Kind k);

// Canonical representative of the index pair (x,y) ~ (-x,-y): y > 0, or
// y == 0 and x > 0.
void ford_canonicalize(Int& x, Int& y);

}  // namespace pk
