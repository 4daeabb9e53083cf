#pragma once
// Exact integer / rational arithmetic layer: Kronecker symbols, quadratic
// reciprocity sign, small integer utilities, and Q(sqrt d) field elements.
#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace pk {

using Int = mpz_class;
using Rat = mpq_class;

struct exact_error : std::runtime_error {
  explicit exact_error(const std::string& m) : std::runtime_error(m) {}
};

// ---- integer utilities -----------------------------------------------------

// Largest odd divisor of a (sign preserved).  odd_part(0) is an error.
Int odd_part(const Int& a);

// 2-adic valuation of a.  v2(0) is an error.
unsigned long v2(const Int& a);

// Exact integer square root: returns r with r*r == a if a is a perfect
// square (a >= 0), nullopt otherwise.
std::optional<Int> exact_sqrt(const Int& a);

// Mathematical (always nonnegative) residue a mod m, m > 0.
Int mod_nonneg(const Int& a, const Int& m);
long mod_nonneg(const Int& a, long m);

// ---- Kronecker symbol ------------------------------------------------------

// Kronecker symbol (a|b), fully extended:
//   (a|2)  = 0 for even a, +1 for a = 1,7 (mod 8), -1 for a = 3,5 (mod 8)
//   (a|-1) = +1 for a >= 0, -1 for a < 0
//   (a|b)  = (a|-1) * (a|-b) for b < 0
//   (a|b)  = 0 when gcd(a,b) > 1
// b == 0 is an error.
int kronecker(const Int& a, const Int& b);
int kronecker(long a, long b);

// Quadratic reciprocity sign (-1)^(((a0-1)/2)*((b0-1)/2)) where a0, b0 are
// the odd parts of a and b.  Requires at least one of a, b positive and both
// nonzero; errors otherwise.
int reciprocity_sign(const Int& a, const Int& b);

// ---- Q(sqrt d) field elements ---------------------------------------------

// Element r + s*sqrt(d) of the real quadratic field Q(sqrt d), d in {1,2,3}.
// For d == 1 the representation is canonicalized to s == 0.
struct QuadRat {
  int d = 1;
  Rat r, s;

  QuadRat() = default;
  QuadRat(int d_, Rat r_, Rat s_);
  static QuadRat rational(int d, const Rat& r) { return QuadRat(d, r, 0); }
  static QuadRat sqrt_d(int d) { return QuadRat(d, 0, 1); }

  bool is_rational() const { return s == 0; }
  bool is_zero() const { return r == 0 && s == 0; }
  QuadRat conj() const { return QuadRat(d, r, -s); }
  Rat norm() const;  // r^2 - d s^2
  double to_double() const;

  QuadRat operator-() const { return QuadRat(d, -r, -s); }
  bool operator==(const QuadRat& o) const;
  bool operator!=(const QuadRat& o) const { return !(*this == o); }
  std::string str() const;
};

QuadRat operator+(const QuadRat& x, const QuadRat& y);
QuadRat operator-(const QuadRat& x, const QuadRat& y);
QuadRat operator*(const QuadRat& x, const QuadRat& y);
QuadRat operator/(const QuadRat& x, const QuadRat& y);
QuadRat operator*(const Rat& c, const QuadRat& x);

}  // namespace pk
