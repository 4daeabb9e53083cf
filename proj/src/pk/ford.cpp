#include "pk/ford.hpp"

namespace pk {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Oct: return "oct";
    case Kind::Cube: return "cube";
    case Kind::Square: return "square";
    case Kind::Tri: return "tri";
  }
  return "?";
}

Kind kind_from_name(const std::string& s) {
  if (s == "oct") return Kind::Oct;
  if (s == "cube") return Kind::Cube;
  if (s == "square") return Kind::Square;
  if (s == "tri") return Kind::Tri;
  throw exact_error("unknown kind: " + s);
}

int kind_field(Kind k) {
  switch (k) {
    case Kind::Oct:
    case Kind::Cube: return 2;
    case Kind::Square: return 1;
    case Kind::Tri: return 3;
  }
  return 1;
}

bool ford_domain(const Int& x, const Int& y) {
  if (y < 0) return false;
  return gcd(x, y) == 1;
}

void ford_canonicalize(Int& x, Int& y) {
  if (y < 0 || (y == 0 && x < 0)) {
    x = -x;
    y = -y;
  }
}

InversiveCircle ford_circle(Kind k, const Int& x, const Int& y) {
  if (!ford_domain(x, y)) throw exact_error("ford_circle: (x,y) outside domain");
  Rat x2(x * x), y2(y * y), xy(x * y);
  switch (k) {
    case Kind::Oct:
      if (mpz_odd_p(x.get_mpz_t()))
        // c_alpha(x,y) = (4x^2, 2y^2, 2 sqrt2 xy, 1)
        return InversiveCircle(QuadRat(2, 4 * x2, 0), QuadRat(2, 2 * y2, 0),
                               QuadRat(2, 0, 2 * xy), QuadRat::rational(2, 1));
      // c_beta(x,y) = (2x^2, y^2, sqrt2 xy, 1)
      return InversiveCircle(QuadRat(2, 2 * x2, 0), QuadRat(2, y2, 0),
                             QuadRat(2, 0, xy), QuadRat::rational(2, 1));
    case Kind::Cube:
      // c(x,y) = (8x^2, y^2, 2 sqrt2 xy, 1)
      return InversiveCircle(QuadRat(2, 8 * x2, 0), QuadRat(2, y2, 0),
                             QuadRat(2, 0, 2 * xy), QuadRat::rational(2, 1));
    case Kind::Square:
      if (mpz_odd_p(Int(x * y).get_mpz_t()))
        // c_alpha(x,y) = (4x^2, y^2, 2xy, 1) for xy odd
        return InversiveCircle(QuadRat(1, 4 * x2, 0), QuadRat(1, y2, 0),
                               QuadRat(1, 2 * xy, 0), QuadRat::rational(1, 1));
      // c_beta(x,y) = (8x^2, 2y^2, 4xy, 1) for xy even
      return InversiveCircle(QuadRat(1, 8 * x2, 0), QuadRat(1, 2 * y2, 0),
                             QuadRat(1, 4 * xy, 0), QuadRat::rational(1, 1));
    case Kind::Tri:
      if (mod_nonneg(y, 3L) != 0)
        // c_alpha(x,y) = (12x^2, y^2, 2 sqrt3 xy, 1) for 3 not dividing y
        return InversiveCircle(QuadRat(3, 12 * x2, 0), QuadRat(3, y2, 0),
                               QuadRat(3, 0, 2 * xy), QuadRat::rational(3, 1));
      // c_beta(x,y) = (4x^2, y^2/3, (2xy/3) sqrt3, 1) for 3 | y
      return InversiveCircle(QuadRat(3, 4 * x2, 0), QuadRat(3, y2 / 3, 0),
                             QuadRat(3, 0, 2 * xy / 3), QuadRat::rational(3, 1));
  }
  throw exact_error("ford_circle: bad kind");
}

Int ford_curvature(Kind k, const Int& x, const Int& y) {
  Rat b = ford_circle(k, x, y).b.r;
  if (b.get_den() != 1) throw exact_error("ford_curvature: non-integral");
  return b.get_num();
}

std::vector<DualMirror> dual_mirrors(Kind k) {
  auto mk = [&](Rat bt_r, Rat bt_s, Rat b_r, Rat b_s, Rat h1_r, Rat h1_s, long a,
                long b, long c, long d) {
    int fd = kind_field(k);
    return DualMirror{InversiveCircle(QuadRat(fd, bt_r, bt_s), QuadRat(fd, b_r, b_s),
                                      QuadRat(fd, h1_r, h1_s),
                                      QuadRat::rational(fd, 0)),
                      a, b, c, d};
  };
  switch (k) {
    case Kind::Oct:
      return {
          mk(0, 0, 0, 0, -1, 0, -1, 0, 0, 1),  // line x = 0:        (-x, y)
          mk(0, 4, 0, 0, 1, 0, -1, 4, 0, 1),   // line x = 2 sqrt2:  (4y-x, y)
          mk(0, 0, 0, 1, 1, 0, 1, 0, 2, -1),   // circle ctr 1/sqrt2 (x, 2x-y)
          mk(0, 4, 0, 1, 3, 0, -3, 4, -2, 3),  // circle ctr 3/sqrt2 (4y-3x, 3y-2x)
      };
    case Kind::Cube:
      return {
          mk(0, 0, 0, 0, -1, 0, -1, 0, 0, 1),        // line x = 0
          mk(0, 4, 0, 0, 1, 0, -1, 2, 0, 1),         // line x = 2 sqrt2
          mk(0, 0, 0, Rat(1, 2), 1, 0, 1, 0, 2, -1)  // circle ctr sqrt2, r sqrt2
      };
    case Kind::Square:
      return {
          mk(0, 0, 0, 0, -1, 0, -1, 0, 0, 1),  // line x = 0
          mk(4, 0, 0, 0, 1, 0, -1, 2, 0, 1),   // line x = 2
          mk(0, 0, 1, 0, 1, 0, 1, 0, 2, -1),   // circle ctr 1, r 1
      };
    case Kind::Tri:
      return {
          mk(0, 0, 0, 0, -1, 0, -1, 0, 0, 1),  // line x = 0
          mk(0, 4, 0, 0, 1, 0, -1, 2, 0, 1),   // line x = 2 sqrt3
          mk(0, 0, 0, 1, 1, 0, 1, 0, 6, -1),   // circle ctr 1/sqrt3, r 1/sqrt3
          mk(0, 4, 0, 2, 5, 0, 5, -2, 12, -5)  // circle ctr 5/(2 sqrt3), r 1/(2 sqrt3)
      };
  }
  throw exact_error("dual_mirrors: bad kind");
}

}  // namespace pk
