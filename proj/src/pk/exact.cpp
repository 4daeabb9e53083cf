#include "pk/exact.hpp"

namespace pk {

Int odd_part(const Int& a) {
  if (a == 0) throw exact_error("odd_part(0) undefined");
  Int r = a;
  while (mpz_even_p(r.get_mpz_t())) r /= 2;
  return r;
}

unsigned long v2(const Int& a) {
  if (a == 0) throw exact_error("v2(0) undefined");
  return mpz_scan1(a.get_mpz_t(), 0);
}

std::optional<Int> exact_sqrt(const Int& a) {
  if (a < 0) return std::nullopt;
  if (!mpz_perfect_square_p(a.get_mpz_t())) return std::nullopt;
  Int r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

Int mod_nonneg(const Int& a, const Int& m) {
  if (m <= 0) throw exact_error("mod_nonneg: modulus must be positive");
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

long mod_nonneg(const Int& a, long m) {
  return mod_nonneg(a, Int(m)).get_si();
}

namespace {

// (a|2) for the Kronecker symbol.
int kron2(const Int& a) {
  if (mpz_even_p(a.get_mpz_t())) return 0;
  long r = mod_nonneg(a, 8L);
  return (r == 1 || r == 7) ? 1 : -1;
}

// Jacobi symbol (a|m) for odd m > 0, via the standard reciprocity loop.
int jacobi_odd(Int a, Int m) {
  a = mod_nonneg(a, m);
  int sign = 1;
  while (a != 0) {
    unsigned long t = v2(a);
    a >>= t;
    long m8 = mod_nonneg(m, 8L);
    if ((t & 1) && (m8 == 3 || m8 == 5)) sign = -sign;
    // reciprocity flip: both a, m odd now
    if (mod_nonneg(a, 4L) == 3 && mod_nonneg(m, 4L) == 3) sign = -sign;
    std::swap(a, m);
    a = mod_nonneg(a, m);
  }
  return m == 1 ? sign : 0;
}

}  // namespace

int kronecker(const Int& a, const Int& b) {
  if (b == 0) throw exact_error("kronecker: b == 0");
  if (b < 0) {
    int unit = (a >= 0) ? 1 : -1;
    return unit * kronecker(a, Int(-b));
  }
  // b > 0: split off the even part.
  unsigned long t = v2(b);
  Int bo = b >> t;
  int s = 1;
  if (t > 0) {
    int k2 = kron2(a);
    if (k2 == 0) return 0;
    if (t & 1) s = k2;
  }
  return s * jacobi_odd(a, bo);
}

int kronecker(long a, long b) { return kronecker(Int(a), Int(b)); }

int reciprocity_sign(const Int& a, const Int& b) {
  if (a == 0 || b == 0) throw exact_error("reciprocity_sign: zero argument");
  if (a < 0 && b < 0)
    throw exact_error("reciprocity_sign: requires at least one positive argument");
  Int a0 = odd_part(a), b0 = odd_part(b);
  Int e = ((a0 - 1) / 2) * ((b0 - 1) / 2);
  return mpz_even_p(e.get_mpz_t()) ? 1 : -1;
}

QuadRat::QuadRat(int d_, Rat r_, Rat s_) : d(d_), r(std::move(r_)), s(std::move(s_)) {
  if (d != 1 && d != 2 && d != 3) throw exact_error("QuadRat: d must be 1, 2 or 3");
  if (d == 1) {
    r += s;
    s = 0;
  }
  r.canonicalize();
  s.canonicalize();
}

Rat QuadRat::norm() const { return r * r - d * s * s; }

double QuadRat::to_double() const {
  double sd = d == 1 ? 1.0 : (d == 2 ? 1.4142135623730951 : 1.7320508075688772);
  return r.get_d() + s.get_d() * sd;
}

bool QuadRat::operator==(const QuadRat& o) const {
  if (d != o.d) throw exact_error("QuadRat: comparing different fields");
  return r == o.r && s == o.s;
}

std::string QuadRat::str() const {
  if (s == 0) return r.get_str();
  return r.get_str() + "+" + s.get_str() + "*sqrt(" + std::to_string(d) + ")";
}

namespace {
void check_same(const QuadRat& x, const QuadRat& y) {
  if (x.d != y.d) throw exact_error("QuadRat: field tag mismatch");
}
}  // namespace

QuadRat operator+(const QuadRat& x, const QuadRat& y) {
  check_same(x, y);
  return QuadRat(x.d, x.r + y.r, x.s + y.s);
}
QuadRat operator-(const QuadRat& x, const QuadRat& y) {
  check_same(x, y);
  return QuadRat(x.d, x.r - y.r, x.s - y.s);
}
QuadRat operator*(const QuadRat& x, const QuadRat& y) {
  check_same(x, y);
  return QuadRat(x.d, x.r * y.r + Rat(x.d) * x.s * y.s, x.r * y.s + x.s * y.r);
}
QuadRat operator/(const QuadRat& x, const QuadRat& y) {
  check_same(x, y);
  Rat n = y.norm();
  if (n == 0) throw exact_error("QuadRat: division by zero");
  QuadRat num = x * y.conj();
  return QuadRat(x.d, num.r / n, num.s / n);
}
QuadRat operator*(const Rat& c, const QuadRat& x) {
  return QuadRat(x.d, c * x.r, c * x.s);
}

}  // namespace pk
