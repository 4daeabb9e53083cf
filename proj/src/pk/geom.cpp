#include "pk/geom.hpp"

namespace pk {

InversiveCircle::InversiveCircle(QuadRat bt_, QuadRat b_, QuadRat h1_, QuadRat h2_)
    : bt(std::move(bt_)), b(std::move(b_)), h1(std::move(h1_)), h2(std::move(h2_)) {
  if (bt.d != b.d || bt.d != h1.d || bt.d != h2.d)
    throw exact_error("InversiveCircle: mixed field tags");
  QuadRat n = h1 * h1 + h2 * h2 - b * bt;
  if (n != QuadRat::rational(bt.d, 1))
    throw exact_error("InversiveCircle: not normalized (h1^2+h2^2-b*bt != 1)");
}

InversiveCircle InversiveCircle::make(int d, const Rat& bt, const Rat& b,
                                      const QuadRat& h1, const QuadRat& h2) {
  return InversiveCircle(QuadRat::rational(d, bt), QuadRat::rational(d, b), h1, h2);
}

bool InversiveCircle::operator==(const InversiveCircle& o) const {
  return bt == o.bt && b == o.b && h1 == o.h1 && h2 == o.h2;
}

QuadRat inner_product(const InversiveCircle& c, const InversiveCircle& m) {
  Rat half(1, 2);
  return c.h1 * m.h1 + c.h2 * m.h2 - half * (c.b * m.bt + c.bt * m.b);
}

InversiveCircle reflect(const InversiveCircle& c, const InversiveCircle& m) {
  QuadRat t = Rat(2) * inner_product(c, m);
  return InversiveCircle(c.bt - t * m.bt, c.b - t * m.b, c.h1 - t * m.h1,
                         c.h2 - t * m.h2);
}

bool tangent(const InversiveCircle& c, const InversiveCircle& m) {
  return inner_product(c, m) == QuadRat::rational(c.field(), -1);
}

EuclideanData euclidean_data(const InversiveCircle& c) {
  EuclideanData e;
  if (c.is_line()) {
    e.line = true;
    e.cx = c.h1.to_double();
    e.cy = c.h2.to_double();
    e.r = c.bt.to_double() / 2;
    return e;
  }
  double b = c.b.to_double();
  e.cx = c.h1.to_double() / b;
  e.cy = c.h2.to_double() / b;
  e.r = 1.0 / std::abs(b);
  return e;
}

namespace {
// Gram matrix J of the inversive form in coordinates (bt, b, h1, h2):
// <u,v> = u^T J v with J = [[0,-1/2,0,0],[-1/2,0,0,0],[0,0,1,0],[0,0,0,1]].
Rat formJ(int i, int j) {
  if (i == 2 && j == 2) return Rat(1);
  if (i == 3 && j == 3) return Rat(1);
  if ((i == 0 && j == 1) || (i == 1 && j == 0)) return Rat(-1, 2);
  return Rat(0);
}
}  // namespace

LinearCircleMap::LinearCircleMap(std::array<std::array<QuadRat, 4>, 4> entries)
    : m(std::move(entries)) {
  int d = m[0][0].d;
  for (auto& row : m)
    for (auto& e : row)
      if (e.d != d) throw exact_error("LinearCircleMap: mixed field tags");
  // Verify M^T J M == J.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      QuadRat acc = QuadRat::rational(d, 0);
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) acc = acc + formJ(k, l) * (m[k][i] * m[l][j]);
      if (acc != QuadRat::rational(d, formJ(i, j)))
        throw exact_error("LinearCircleMap: does not preserve the inversive form");
    }
}

LinearCircleMap LinearCircleMap::reflection(const InversiveCircle& mirror) {
  int d = mirror.field();
  std::array<QuadRat, 4> v = {mirror.bt, mirror.b, mirror.h1, mirror.h2};
  std::array<std::array<QuadRat, 4>, 4> e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      // (I - 2 v v^T J)_{ij} = delta_ij - 2 v_i (J v)_j
      QuadRat jv = QuadRat::rational(d, 0);
      for (int k = 0; k < 4; ++k) jv = jv + formJ(j, k) * v[k];
      QuadRat val = Rat(-2) * (v[i] * jv);
      if (i == j) val = val + QuadRat::rational(d, 1);
      e[i][j] = val;
    }
  return LinearCircleMap(std::move(e));
}

LinearCircleMap LinearCircleMap::identity(int d) {
  std::array<std::array<QuadRat, 4>, 4> e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e[i][j] = QuadRat::rational(d, i == j ? 1 : 0);
  return LinearCircleMap(std::move(e));
}

InversiveCircle LinearCircleMap::apply(const InversiveCircle& c) const {
  std::array<QuadRat, 4> v = {c.bt, c.b, c.h1, c.h2}, out;
  for (int i = 0; i < 4; ++i) {
    QuadRat acc = QuadRat::rational(c.field(), 0);
    for (int k = 0; k < 4; ++k) acc = acc + m[i][k] * v[k];
    out[i] = acc;
  }
  return InversiveCircle(out[0], out[1], out[2], out[3]);
}

LinearCircleMap LinearCircleMap::compose(const LinearCircleMap& o) const {
  int d = m[0][0].d;
  std::array<std::array<QuadRat, 4>, 4> e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      QuadRat acc = QuadRat::rational(d, 0);
      for (int k = 0; k < 4; ++k) acc = acc + m[i][k] * o.m[k][j];
      e[i][j] = acc;
    }
  return LinearCircleMap(std::move(e));
}

}  // namespace pk
