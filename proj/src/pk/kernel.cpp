#include "pk/kernel.hpp"

#include <algorithm>
#include <numeric>

namespace pk {

namespace {

Int vec_gcd(const std::vector<Int>& v) {
  Int g = 0;
  for (auto& x : v) g = gcd(g, x);
  return g;
}

[[noreturn]] void invalid(const std::string& why) {
  throw exact_error("invalid configuration: " + why);
}

// ---- cube structure --------------------------------------------------------

// Edges of the cube tangency graph; slots: top cycle 0,1,2,3 (a,b,c,d),
// bottom 4,5,6,7 (e,f,g,h) with e below a, f below b, g below c, h below d.
constexpr int kCubeEdges[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
                                  {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
constexpr int kCubeAntipode[8] = {6, 7, 4, 5, 2, 3, 0, 1};
// Faces as 4-cycles; diagonal pairs are (f[0],f[2]) and (f[1],f[3]).
constexpr int kCubeFaces[6][4] = {{0, 1, 2, 3}, {6, 7, 4, 5}, {0, 1, 5, 4},
                                 {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};

bool cube_adjacent(int u, int v) {
  for (auto& e : kCubeEdges)
    if ((e[0] == u && e[1] == v) || (e[0] == v && e[1] == u)) return true;
  return false;
}

int oct_partner(int s) { return 5 - s; }

}  // namespace

const std::vector<std::array<int, 6>>& oct_automorphisms() {
  static const auto autos = [] {
    std::vector<std::array<int, 6>> out;
    std::array<int, 6> p = {0, 1, 2, 3, 4, 5};
    do {
      bool ok = true;
      for (int s = 0; s < 6 && ok; ++s)
        if (p[oct_partner(s)] != oct_partner(p[s])) ok = false;
      if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    if (out.size() != 48) throw exact_error("oct automorphism count != 48");
    return out;
  }();
  return autos;
}

const std::vector<std::array<int, 8>>& cube_automorphisms() {
  static const auto autos = [] {
    std::vector<std::array<int, 8>> out;
    std::array<int, 8> p = {0, 1, 2, 3, 4, 5, 6, 7};
    do {
      bool ok = true;
      for (auto& e : kCubeEdges)
        if (!cube_adjacent(p[e[0]], p[e[1]])) {
          ok = false;
          break;
        }
      if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    if (out.size() != 48) throw exact_error("cube automorphism count != 48");
    return out;
  }();
  return autos;
}

namespace {

// First automorphism sending slot 0 to u (and slot 1 to v if v >= 0).
template <size_t N>
const std::array<int, N>& find_auto(const std::vector<std::array<int, N>>& g, int u,
                                    int v) {
  for (auto& p : g)
    if (p[0] == u && (v < 0 || p[1] == v)) return p;
  throw exact_error("no automorphism for the requested slots (not tangent?)");
}

// ---- validation ------------------------------------------------------------

Config make_oct_config(const std::vector<Int>& t) {
  if (t.size() != 6) invalid("oct expects 6 curvatures");
  Int s0 = t[0] + t[5], s1 = t[1] + t[4], s2 = t[2] + t[3];
  if (s0 != s1 || s1 != s2) invalid("oct diagonal pair sums differ");
  if (mpz_odd_p(s0.get_mpz_t())) invalid("oct pair sum 2w is odd");
  Int w = s0 / 2;
  if (w < 1) invalid("oct generating value w < 1");
  if (mpz_even_p(w.get_mpz_t())) invalid("oct generating value w is even");
  if (vec_gcd(t) != 1) invalid("oct tuple not primitive");
  // Face relation w^2 - 2w(x+y+z) + x^2+y^2+z^2 = 0 for each face triple.
  for (int mask = 0; mask < 8; ++mask) {
    Int x = t[(mask & 1) ? 5 : 0], y = t[(mask & 2) ? 4 : 1],
        z = t[(mask & 4) ? 3 : 2];
    if (w * w - 2 * w * (x + y + z) + x * x + y * y + z * z != 0)
      invalid("oct face relation fails");
  }
  Config c;
  c.kind = Kind::Oct;
  c.t = t;
  c.w = w;
  c.seed = t;
  return c;
}

Config make_cube_config_ordered(const std::vector<Int>& t, bool throw_on_fail) {
  auto fail = [&](const char* why) -> Config {
    if (throw_on_fail) invalid(why);
    Config bad;
    bad.kind = Kind::Cube;
    return bad;  // t empty marks failure
  };
  if (t.size() != 8) return fail("cube expects 8 curvatures");
  Int w = t[0] + t[kCubeAntipode[0]];
  for (int s = 1; s < 4; ++s)
    if (t[s] + t[kCubeAntipode[s]] != w) return fail("cube antipodal sums differ");
  if (mod_nonneg(w, 4L) != 2) return fail("cube generating value w != 2 mod 4");
  if (t[0] + t[2] != t[1] + t[3]) return fail("cube face diagonal sums differ");
  // Tetrahedral relation 3(a+c+f+h)^2 = 8(a^2+c^2+f^2+h^2), both tetrahedra.
  for (auto& tet : {std::array<int, 4>{0, 2, 5, 7}, std::array<int, 4>{1, 3, 4, 6}}) {
    Int s = 0, q = 0;
    for (int k : tet) {
      s += t[k];
      q += t[k] * t[k];
    }
    if (3 * s * s != 8 * q) return fail("cube tetrahedral relation fails");
  }
  if (!exact_sqrt(t[0] * t[2] + t[1] * t[3]))
    return fail("cube face product ac+bd not a perfect square");
  if (vec_gcd(t) != 1) return fail("cube tuple not primitive");
  Config c;
  c.kind = Kind::Cube;
  c.t = t;
  c.w = w;
  c.seed = t;
  return c;
}

Config make_square_config(const std::vector<Int>& v, char sign) {
  if (v.size() != 4) invalid("square expects 4 curvatures");
  const Int &p = v[0], &q = v[1], &r = v[2], &s = v[3];
  if (p + s != q + r) invalid("square window relation p+s = q+r fails");
  // Staircase (j,k,l) = (p,q,s): quadratic roots m = j+k+3l +/- 4n with
  // jk + jl + kl - k^2 = 2 n^2.
  Int val = p * q + p * s + q * s - q * q;
  if (val < 0) invalid("square staircase discriminant negative");
  if (mpz_odd_p(val.get_mpz_t())) invalid("square staircase discriminant odd");
  auto n = exact_sqrt(val / 2);
  if (!n) invalid("square staircase discriminant not of the form 2n^2");
  Int m = p + q + 3 * s + (sign == '+' ? 4 * *n : -4 * *n);
  Config c;
  c.kind = Kind::Square;
  c.L = m + p - q - s;
  c.A = 2 * (q - p) - c.L;
  c.B = 2 * (r - p) - c.L;
  c.G = p;
  c.seed = v;
  c.sign = sign;
  if (c.L < 0) invalid("square grid has negative leading coefficient");
  if (c.L == 0 && (c.A != 0 || c.B != 0))
    invalid("square grid degenerates to a non-constant linear grid");
  c.kind = Kind::Square;
  Int g = gcd(gcd(c.G, curvature(c, CircleId::cell(1, 0))),
              gcd(curvature(c, CircleId::cell(0, 1)), curvature(c, CircleId::cell(1, 1))));
  g = gcd(g, curvature(c, CircleId::cell(2, 0)));
  g = gcd(g, curvature(c, CircleId::cell(0, 2)));
  if (g != 1) invalid("square grid not primitive");
  return c;
}

Config make_tri_config(const std::vector<Int>& v, char sign) {
  if (v.size() != 3) invalid("tri expects 3 curvatures");
  const Int &a = v[0], &b = v[1], &cc = v[2];
  Int val = a * b + b * cc + cc * a;
  if (val < 0 || mod_nonneg(val, 3L) != 0) invalid("tri ab+bc+ca not 3m^2");
  auto m = exact_sqrt(val / 3);
  if (!m) invalid("tri ab+bc+ca not 3m^2");
  Int d = a + 3 * b + 3 * cc + (sign == '+' ? 6 * *m : -6 * *m);
  Config c;
  c.kind = Kind::Tri;
  c.L = d + a - b - cc;  // lambda
  c.A = b - a - c.L;
  c.B = cc - a - c.L;
  c.G = a;
  c.seed = v;
  c.sign = sign;
  if (c.L < 0) invalid("tri grid has negative leading coefficient");
  if (c.L == 0 && (c.A != 0 || c.B != 0))
    invalid("tri grid degenerates to a non-constant linear grid");
  Int g = 0;
  for (long i = 0; i < 3; ++i)
    for (long j = 0; j < 3; ++j) g = gcd(g, curvature(c, CircleId::cell(i, j)));
  if (g != 1) invalid("tri grid not primitive");
  return c;
}

}  // namespace

std::vector<Config> cube_configs_from_face(const std::array<Int, 4>& cy) {
  if (cy[0] + cy[2] != cy[1] + cy[3]) invalid("cube face diagonal sums differ");
  auto sq = exact_sqrt(cy[0] * cy[2] + cy[1] * cy[3]);
  if (!sq) invalid("cube face ac+bd not a perfect square");
  std::vector<Config> out;
  for (int sgn : {1, -1}) {
    Int w = 2 * (cy[0] + cy[2]) + sgn * 2 * *sq;
    std::vector<Int> t = {cy[0], cy[1], cy[2], cy[3], w - cy[2], w - cy[3],
                          w - cy[0], w - cy[1]};
    Config c = make_cube_config_ordered(t, false);
    if (!c.t.empty()) out.push_back(c);
  }
  if (out.empty()) invalid("cube face has no valid completion");
  return out;
}

std::pair<Int, Int> completion_roots(Kind k, const std::vector<Int>& v) {
  switch (k) {
    case Kind::Oct: {
      if (v.size() != 3) invalid("oct minimal tuple has 3 curvatures");
      Int val = v[0] * v[1] + v[0] * v[2] + v[1] * v[2];
      if (val < 0 || mpz_odd_p(val.get_mpz_t())) invalid("oct ab+ac+bc not 2m^2");
      auto m = exact_sqrt(val / 2);
      if (!m) invalid("oct ab+ac+bc not 2m^2");
      Int s = v[0] + v[1] + v[2];
      return {s + 2 * *m, s - 2 * *m};
    }
    case Kind::Cube: {
      if (v.size() != 4) invalid("cube minimal tuple has 4 curvatures");
      if (v[0] + v[2] != v[1] + v[3]) invalid("cube face diagonal sums differ");
      auto sq = exact_sqrt(v[0] * v[2] + v[1] * v[3]);
      if (!sq) invalid("cube face ac+bd not a perfect square");
      return {2 * (v[0] + v[2]) + 2 * *sq, 2 * (v[0] + v[2]) - 2 * *sq};
    }
    case Kind::Square: {
      if (v.size() != 3) invalid("square minimal staircase has 3 curvatures");
      Int val = v[0] * v[1] + v[0] * v[2] + v[1] * v[2] - v[1] * v[1];
      if (val < 0 || mpz_odd_p(val.get_mpz_t()))
        invalid("square staircase value not 2n^2");
      auto n = exact_sqrt(val / 2);
      if (!n) invalid("square staircase value not 2n^2");
      Int s = v[0] + v[1] + 3 * v[2];
      return {s + 4 * *n, s - 4 * *n};
    }
    case Kind::Tri: {
      if (v.size() != 3) invalid("tri minimal triangle has 3 curvatures");
      Int val = v[0] * v[1] + v[1] * v[2] + v[2] * v[0];
      if (val < 0 || mod_nonneg(val, 3L) != 0) invalid("tri ab+bc+ca not 3m^2");
      auto m = exact_sqrt(val / 3);
      if (!m) invalid("tri ab+bc+ca not 3m^2");
      Int s = v[0] + 3 * v[1] + 3 * v[2];
      return {s + 6 * *m, s - 6 * *m};
    }
  }
  invalid("bad kind");
}

Config validate_config(Kind k, const std::vector<Int>& values, char sign) {
  if (sign != '+' && sign != '-') invalid("sign must be '+' or '-'");
  switch (k) {
    case Kind::Oct: {
      if (values.size() == 3) {
        auto [wp, wm] = completion_roots(k, values);
        Int w = sign == '+' ? wp : wm;
        std::vector<Int> t = {values[0], values[1],     values[2],
                              2 * w - values[2], 2 * w - values[1], 2 * w - values[0]};
        Config c = make_oct_config(t);
        c.seed = values;
        c.sign = sign;
        return c;
      }
      return make_oct_config(values);
    }
    case Kind::Cube: {
      if (values.size() == 4) {
        auto configs = cube_configs_from_face(
            {values[0], values[1], values[2], values[3]});
        // sign '+' selects the larger w
        std::sort(configs.begin(), configs.end(),
                  [](const Config& x, const Config& y) { return x.w > y.w; });
        Config c = sign == '+' ? configs.front() : configs.back();
        c.seed = values;
        c.sign = sign;
        return c;
      }
      if (values.size() != 8) invalid("cube expects 8 curvatures");
      // Order-insensitive: scan multiset permutations in lex order and take
      // the first valid labeling.
      std::vector<Int> t = values;
      std::sort(t.begin(), t.end());
      do {
        Config c = make_cube_config_ordered(t, false);
        if (!c.t.empty()) {
          c.seed = values;
          c.sign = sign;
          return c;
        }
      } while (std::next_permutation(t.begin(), t.end()));
      invalid("cube octuple admits no valid labeling");
    }
    case Kind::Square: return make_square_config(values, sign);
    case Kind::Tri: return make_tri_config(values, sign);
  }
  invalid("bad kind");
}

Int curvature(const Config& c, const CircleId& id) {
  switch (c.kind) {
    case Kind::Oct:
    case Kind::Cube:
      if (id.idx < 0 || id.idx >= (int)c.t.size()) invalid("bad circle slot");
      return c.t[id.idx];
    case Kind::Square: {
      Int num = c.L * (Int(id.i) * id.i + Int(id.j) * id.j) + c.A * id.i + c.B * id.j;
      if (mpz_odd_p(num.get_mpz_t())) invalid("square curvature not integral");
      return num / 2 + c.G;
    }
    case Kind::Tri:
      return c.L * (Int(id.i) * id.i + Int(id.i) * id.j + Int(id.j) * id.j) +
             c.A * id.i + c.B * id.j + c.G;
  }
  invalid("bad kind");
}

std::vector<CircleId> circle_slots(const Config& c) {
  if (c.kind != Kind::Oct && c.kind != Kind::Cube)
    invalid("circle_slots: tuple families only");
  std::vector<CircleId> out;
  for (int s = 0; s < (int)c.t.size(); ++s) out.push_back(CircleId::slot(s));
  return out;
}

bool tangent_circles(const Config& c, const CircleId& u, const CircleId& v) {
  switch (c.kind) {
    case Kind::Oct:
      return u.idx != v.idx && u.idx != oct_partner(v.idx);
    case Kind::Cube:
      return cube_adjacent(u.idx, v.idx);
    case Kind::Square:
      return std::abs(u.i - v.i) + std::abs(u.j - v.j) == 1;
    case Kind::Tri: {
      long di = u.i - v.i, dj = u.j - v.j;
      return (di * di + di * dj + dj * dj) == 1;
    }
  }
  return false;
}

std::vector<FaceId> faces(const Config& c) {
  std::vector<FaceId> out;
  if (c.kind == Kind::Oct)
    for (int m = 0; m < 8; ++m) out.push_back(FaceId{m});
  else if (c.kind == Kind::Cube)
    for (int f = 0; f < 6; ++f) out.push_back(FaceId{f});
  else
    invalid("faces: grid faces are indexed by lattice cells");
  return out;
}

Config apply_generator(const Config& c, const FaceId& f) {
  Config out = c;
  out.seed.clear();
  switch (c.kind) {
    case Kind::Oct: {
      int s0 = (f.code & 1) ? 5 : 0, s1 = (f.code & 2) ? 4 : 1,
          s2 = (f.code & 4) ? 3 : 2;
      Int w2 = 2 * (c.t[s0] + c.t[s1] + c.t[s2]) - c.w;
      out.w = w2;
      for (int s : {s0, s1, s2}) out.t[oct_partner(s)] = 2 * w2 - c.t[s];
      return out;
    }
    case Kind::Cube: {
      if (f.code < 0 || f.code >= 6) invalid("bad cube face");
      const int* fc = kCubeFaces[f.code];
      Int w2 = 4 * (c.t[fc[0]] + c.t[fc[2]]) - c.w;
      out.w = w2;
      for (int k = 0; k < 4; ++k) out.t[kCubeAntipode[fc[k]]] = w2 - c.t[fc[k]];
      return out;
    }
    case Kind::Square: {
      long i0 = f.i, j0 = f.j;
      Int p = curvature(c, CircleId::cell(i0, j0));
      Int q = curvature(c, CircleId::cell(i0 + 1, j0));
      Int r = curvature(c, CircleId::cell(i0, j0 + 1));
      Int s = curvature(c, CircleId::cell(i0 + 1, j0 + 1));
      Int m = curvature(c, CircleId::cell(i0 + 2, j0 + 1));
      Int m2 = 2 * p + 2 * q + 6 * s - m;
      Int L2 = m2 - 2 * q - r + 2 * p;
      Int Al = 2 * (q - p) - L2, Bl = 2 * (r - p) - L2;  // local frame
      out.L = L2;
      out.A = Al - 2 * L2 * i0;
      out.B = Bl - 2 * L2 * j0;
      Int num = L2 * (Int(i0) * i0 + Int(j0) * j0) - Al * i0 - Bl * j0;
      if (mpz_odd_p(num.get_mpz_t())) invalid("square flip parity failure");
      out.G = num / 2 + p;
      if (out.L < 0) invalid("square flip produced negative leading coefficient");
      return out;
    }
    case Kind::Tri: {
      long i0 = f.i, j0 = f.j;
      Int b = curvature(c, CircleId::cell(i0 + 1, j0));
      Int cc = curvature(c, CircleId::cell(i0, j0 + 1));
      Int a, d;
      if (f.up) {
        a = curvature(c, CircleId::cell(i0, j0));
        d = 6 * b + 6 * cc + 2 * a - curvature(c, CircleId::cell(i0 + 1, j0 + 1));
      } else {
        d = curvature(c, CircleId::cell(i0 + 1, j0 + 1));
        a = 6 * b + 6 * cc + 2 * d - curvature(c, CircleId::cell(i0, j0));
      }
      Int lam = d + a - b - cc;
      Int Al = b - a - lam, Bl = cc - a - lam;  // local frame
      out.L = lam;
      out.A = Al - lam * (2 * i0 + j0);
      out.B = Bl - lam * (i0 + 2 * j0);
      out.G = lam * (Int(i0) * i0 + Int(i0) * j0 + Int(j0) * j0) - Al * i0 -
              Bl * j0 + a;
      if (out.L < 0) invalid("tri flip produced negative leading coefficient");
      return out;
    }
  }
  invalid("bad kind");
}

// ---- modular classification ------------------------------------------------

std::string ModularType::label() const {
  std::string s = "(";
  bool first = true;
  for (long r : residues) {
    if (!first) s += ",";
    s += std::to_string(r);
    first = false;
  }
  return s + ")";
}

namespace {

const std::vector<std::set<long>>& known_types(Kind k) {
  static const std::vector<std::set<long>> oct = {
      {0, 1, 2}, {0, 3, 6}, {4, 5, 6}, {2, 4, 7}};
  static const std::vector<std::set<long>> cube = {{0, 1, 2}, {0, 2, 3}};
  static const std::vector<std::set<long>> square = {
      {1}, {5}, {3, 7}, {0, 1, 2, 3, 4, 5, 6, 7}};
  static const std::vector<std::set<long>> tri = {
      {1},    {7},          {3, 11},
      {5, 9}, {2, 5, 8, 11}, {0, 1, 3, 4, 6, 7, 9, 10}};
  switch (k) {
    case Kind::Oct: return oct;
    case Kind::Cube: return cube;
    case Kind::Square: return square;
    case Kind::Tri: return tri;
  }
  throw exact_error("bad kind");
}

void window_residues(const Config& c, long modulus, long extent,
                     std::set<long>& out) {
  for (long i = 0; i < extent; ++i)
    for (long j = 0; j < extent; ++j)
      out.insert(mod_nonneg(curvature(c, CircleId::cell(i, j)), modulus));
}

}  // namespace

ModularType modular_type(const Config& c) {
  ModularType mt;
  switch (c.kind) {
    case Kind::Oct:
      mt.modulus = 8;
      for (auto& v : c.t) mt.residues.insert(mod_nonneg(v, 8L));
      break;
    case Kind::Cube:
      mt.modulus = 4;
      for (auto& v : c.t) mt.residues.insert(mod_nonneg(v, 4L));
      break;
    case Kind::Square: {
      mt.modulus = 8;
      window_residues(c, 8, 16, mt.residues);
      for (long i = -2; i <= 1; ++i)
        for (long j = -2; j <= 1; ++j)
          window_residues(apply_generator(c, FaceId{0, i, j}), 8, 16, mt.residues);
      break;
    }
    case Kind::Tri: {
      mt.modulus = 12;
      window_residues(c, 12, 12, mt.residues);
      for (long i = -2; i <= 1; ++i)
        for (long j = -2; j <= 1; ++j)
          for (bool up : {true, false})
            window_residues(apply_generator(c, FaceId{0, i, j, up}), 12, 12,
                            mt.residues);
      break;
    }
  }
  for (auto& known : known_types(c.kind))
    if (mt.residues == known) return mt;
  throw exact_error("modular_type: residue set " + mt.label() +
                    " matches no known type");
}

// ---- tangency parametrization ---------------------------------------------

Rat QForm::eval(const Int& x, const Int& y) const {
  return A * Rat(x * x) + B * Rat(x * y) + C * Rat(y * y);
}

Int QForm::eval_int(const Int& x, const Int& y) const {
  Rat v = eval(x, y);
  if (v.get_den() != 1) throw exact_error("QForm: non-integral value");
  return v.get_num();
}

bool TangentForms::use_alpha(const Int& x, const Int& y) const {
  switch (kind) {
    case Kind::Oct: return mpz_odd_p(x.get_mpz_t());
    case Kind::Cube: return true;
    case Kind::Square: return mpz_odd_p(Int(x * y).get_mpz_t());
    case Kind::Tri: return mod_nonneg(y, 3L) != 0;
  }
  return true;
}

Int TangentForms::curvature_at(const Int& x, const Int& y) const {
  const QForm& q = use_alpha(x, y) ? alpha : beta;
  return q.eval_int(x, y) - a;
}

TangentForms tangent_forms(const Config& c, const CircleId& id) {
  TangentForms tf;
  tf.kind = c.kind;
  tf.a = curvature(c, id);
  switch (c.kind) {
    case Kind::Oct: {
      int k = id.idx, pr = oct_partner(k);
      int nb = 0;
      while (nb == k || nb == pr) ++nb;
      int p1 = -1;
      for (int s = 0; s < 6 && p1 < 0; ++s)
        if (s != k && s != pr && s != nb && s != oct_partner(nb)) p1 = s;
      int p2 = oct_partner(p1);
      if (p2 < p1) std::swap(p1, p2);
      Rat a(tf.a), b(c.t[nb]), cc(c.t[p1]), d(c.t[p2]);
      tf.alpha = QForm{a + cc, -2 * a - 2 * b - cc + d, 2 * (a + b)};
      tf.beta = QForm{(a + cc) / 2, (-2 * a - 2 * b - cc + d) / 2, a + b};
      break;
    }
    case Kind::Cube: {
      auto& sig = find_auto(cube_automorphisms(), id.idx, -1);
      Rat a(tf.a), b(c.t[sig[1]]), d(c.t[sig[3]]), e(c.t[sig[4]]);
      tf.alpha = QForm{a + b, -(a + b + d - e), a + d};
      tf.beta = tf.alpha;
      break;
    }
    case Kind::Square: {
      Rat a(tf.a), b(curvature(c, CircleId::cell(id.i - 1, id.j)));
      Rat d(curvature(c, CircleId::cell(id.i + 1, id.j)));
      Rat cc(curvature(c, CircleId::cell(id.i, id.j + 1)));
      Rat e(curvature(c, CircleId::cell(id.i, id.j - 1)));
      tf.beta = QForm{a + b, cc - e, a + d};
      tf.alpha = QForm{(a + b) / 2, (cc - e) / 2, (a + d) / 2};
      break;
    }
    case Kind::Tri: {
      Rat a(tf.a), cc(curvature(c, CircleId::cell(id.i + 1, id.j)));
      Rat b(curvature(c, CircleId::cell(id.i, id.j + 1)));
      Rat d(curvature(c, CircleId::cell(id.i + 1, id.j - 1)));
      tf.alpha = QForm{3 * (a + b), -3 * a - b - 3 * cc + d, a + cc};
      tf.beta = QForm{a + b, (-3 * a - b - 3 * cc + d) / 3, (a + cc) / 3};
      break;
    }
  }
  return tf;
}

// ---- simultaneous tangency -------------------------------------------------

std::vector<Int> simultaneous_tangent(const Config& c, const CircleId& u,
                                      const CircleId& v, const Int& n) {
  if (!tangent_circles(c, u, v))
    invalid("simultaneous_tangent: circles not tangent");
  switch (c.kind) {
    case Kind::Oct: {
      auto& sig = find_auto(oct_automorphisms(), u.idx, v.idx);
      const Int &a = c.t[sig[0]], &b = c.t[sig[1]], &cc = c.t[sig[2]],
                &d = c.t[sig[3]];
      return {cc + (-2 * a - 2 * b - cc + d) * n + 2 * (a + b) * n * n};
    }
    case Kind::Cube: {
      auto& sig = find_auto(cube_automorphisms(), u.idx, v.idx);
      const Int &a = c.t[sig[0]], &b = c.t[sig[1]], &cc = c.t[sig[2]],
                &d = c.t[sig[3]], &e = c.t[sig[4]], &f = c.t[sig[5]];
      Int quad = (a + b) * (n * n - n);
      return {quad + d * (1 - n) + e * n, quad + cc * (1 - n) + f * n};
    }
    case Kind::Square: {
      long pi = -(v.j - u.j), pj = v.i - u.i;  // perpendicular direction
      Int a = curvature(c, u), b = curvature(c, v);
      Int cc = curvature(c, CircleId::cell(u.i + pi, u.j + pj));
      Int e = curvature(c, CircleId::cell(u.i - pi, u.j - pj));
      Int d = curvature(c, CircleId::cell(v.i + pi, v.j + pj));
      Int f = curvature(c, CircleId::cell(v.i - pi, v.j - pj));
      Int quad = (a + b) * (2 * n * n - 2 * n);
      return {quad + cc * (1 - n) + e * n, quad + d * (1 - n) + f * n};
    }
    case Kind::Tri: {
      // common neighbors of the shared edge
      std::vector<CircleId> nbrs;
      static const long dirs[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
      for (auto& d0 : dirs) {
        CircleId cand = CircleId::cell(u.i + d0[0], u.j + d0[1]);
        if (tangent_circles(c, cand, v)) nbrs.push_back(cand);
      }
      if (nbrs.size() != 2) invalid("tri shared edge lacks two common neighbors");
      if (std::make_pair(nbrs[1].i, nbrs[1].j) < std::make_pair(nbrs[0].i, nbrs[0].j))
        std::swap(nbrs[0], nbrs[1]);
      Int a = curvature(c, u), cc = curvature(c, v);
      Int b = curvature(c, nbrs[0]), d = curvature(c, nbrs[1]);
      return {(a + cc) * (3 * n * n - 3 * n) + b * (1 - n) + d * n};
    }
  }
  invalid("bad kind");
}

namespace {

bool power_of_two(const Int& g) {
  return g > 0 && mpz_popcount(g.get_mpz_t()) == 1;
}

// Acceptance per the insertion lemmas.  Octahedral: between even curvatures
// the inserted circle is coprime to both; in mixed parity only an even
// circle coprime to the odd curvature exists (the remaining repair is a
// second insertion, done at path level).  Triangular: gcds divide 3.  Cubic:
// gcd(k,a)=gcd(l,b)=1 and gcd(k,l) a power of 2.  Square: gcd(k,a),
// gcd(l,b) divide 4 and gcd(k,l) divides 8.
bool insertion_ok(Kind kind, const Int& a, const Int& b,
                  const std::vector<Int>& vals) {
  if (vals.size() == 1) {
    const Int& k = vals[0];
    if (k == 0) return false;
    switch (kind) {
      case Kind::Oct: {
        bool a_odd = mpz_odd_p(a.get_mpz_t()), b_odd = mpz_odd_p(b.get_mpz_t());
        if (!a_odd && !b_odd) return gcd(k, a) == 1 && gcd(k, b) == 1;
        if (a_odd && !b_odd) return mpz_even_p(k.get_mpz_t()) && gcd(k, a) == 1;
        if (!a_odd && b_odd) return mpz_even_p(k.get_mpz_t()) && gcd(k, b) == 1;
        return gcd(k, a) == 1 && gcd(k, b) == 1;
      }
      case Kind::Tri: {
        Int ga = gcd(k, a), gb = gcd(k, b);
        return (ga == 1 || ga == 3) && (gb == 1 || gb == 3);
      }
      default: return gcd(k, a) == 1 && gcd(k, b) == 1;
    }
  }
  const Int& k = vals[0];
  const Int& l = vals[1];
  if (k == 0 || l == 0) return false;
  if (kind == Kind::Cube)
    return gcd(k, a) == 1 && gcd(l, b) == 1 && power_of_two(gcd(k, l));
  // square
  Int ga = gcd(k, a), gb = gcd(l, b), gk = gcd(k, l);
  auto div4 = [](const Int& g) { return g == 1 || g == 2 || g == 4; };
  return div4(ga) && div4(gb) && (div4(gk) || gk == 8);
}

}  // namespace

Insertion coprime_insert(const Config& c, const CircleId& u, const CircleId& v) {
  Int a = curvature(c, u), b = curvature(c, v);
  for (long k = 0; k <= 2048; ++k) {
    for (long sgn : {1, -1}) {
      if (k == 0 && sgn < 0) continue;
      Int n(sgn * k);
      auto vals = simultaneous_tangent(c, u, v, n);
      if (insertion_ok(c.kind, a, b, vals)) return Insertion{n, vals};
    }
  }
  throw exact_error("coprime_insert: no parameter found in search window");
}

// ---- coloring --------------------------------------------------------------

int coloring(const Config& c, const CircleId& id) {
  switch (c.kind) {
    case Kind::Oct: {
      // the (unique) diagonal pair with odd curvatures is yellow = 0
      int odd_pair = -1;
      for (int p = 0; p < 3; ++p)
        if (mpz_odd_p(c.t[p].get_mpz_t())) {
          if (odd_pair >= 0) invalid("oct coloring: two odd pairs");
          odd_pair = p;
        }
      if (odd_pair < 0) invalid("oct coloring: no odd pair");
      int pair = std::min(id.idx, oct_partner(id.idx));
      if (pair == odd_pair) return 0;
      // remaining pairs get 1, 2 in slot order
      int col = 1;
      for (int p = 0; p < 3; ++p) {
        if (p == odd_pair) continue;
        if (p == pair) return col;
        ++col;
      }
      invalid("oct coloring: bad slot");
    }
    case Kind::Cube: {
      static const int cls[8] = {0, 1, 0, 1, 1, 0, 1, 0};
      return cls[id.idx];
    }
    case Kind::Square: return (int)mod_nonneg(Int(id.i + id.j), 2L);
    case Kind::Tri: return (int)mod_nonneg(Int(id.i - id.j), 3L);
  }
  invalid("bad kind");
}

// ---- canonical keys --------------------------------------------------------

std::array<Int, 4> canonical_key(const Config& c) {
  switch (c.kind) {
    case Kind::Oct: {
      std::array<Int, 3> m = {std::min(c.t[0], c.t[5]), std::min(c.t[1], c.t[4]),
                              std::min(c.t[2], c.t[3])};
      std::sort(m.begin(), m.end());
      return {m[0], m[1], m[2], c.w};
    }
    case Kind::Cube: {
      std::vector<Int> best = c.t;
      for (auto& sig : cube_automorphisms()) {
        std::vector<Int> cand(8);
        for (int s = 0; s < 8; ++s) cand[s] = c.t[sig[s]];
        if (cand < best) best = cand;
      }
      return {best[0], best[1], best[2], c.w};
    }
    case Kind::Square: {
      if (c.L == 0) return {0, 0, 0, c.G};
      std::array<Int, 4> best = {-1, 0, 0, 0};
      bool have = false;
      // dihedral images: (i,j) -> (+-i, +-j) and the swap
      for (int sw = 0; sw < 2; ++sw)
        for (int si = 0; si < 2; ++si)
          for (int sj = 0; sj < 2; ++sj) {
            Int A1 = si ? -c.A : c.A, B1 = sj ? -c.B : c.B;
            if (sw) std::swap(A1, B1);
            Int A2 = mod_nonneg(A1, 2 * c.L), B2 = mod_nonneg(B1, 2 * c.L);
            Int ti = (A2 - A1) / (2 * c.L), tj = (B2 - B1) / (2 * c.L);
            Int G2 = (c.L * (ti * ti + tj * tj) + A1 * ti + B1 * tj) / 2 + c.G;
            std::array<Int, 4> cand = {c.L, A2, B2, G2};
            if (!have || cand < best) best = cand, have = true;
          }
      return best;
    }
    case Kind::Tri: {
      if (c.L == 0) return {0, 0, 0, c.G};
      // the 12 point-group images of the hex lattice
      static const long mats[12][4] = {
          {1, 0, 0, 1},   {0, -1, 1, 1},   {-1, -1, 1, 0}, {-1, 0, 0, -1},
          {0, 1, -1, -1}, {1, 1, -1, 0},   {0, 1, 1, 0},   {1, 1, 0, -1},
          {1, 0, -1, -1}, {0, -1, -1, 0},  {-1, -1, 0, 1}, {-1, 0, 1, 1}};
      std::array<Int, 4> best = {-1, 0, 0, 0};
      bool have = false;
      Int three_l = 3 * c.L;
      for (auto& M : mats) {
        // substitution (i,j) -> (m00 i + m01 j, m10 i + m11 j)
        Int A1 = c.A * M[0] + c.B * M[2], B1 = c.A * M[1] + c.B * M[3];
        // base reduction mod 3L plus the two lattice coset shifts
        for (auto& sh : std::array<std::array<long, 2>, 3>{
                 {{0, 0}, {1, 2}, {2, 1}}}) {
          Int A2 = mod_nonneg(A1 + sh[0] * c.L, three_l);
          Int B2 = mod_nonneg(B1 + sh[1] * c.L, three_l);
          Int da = A2 - A1, db = B2 - B1;
          Int tnum = 2 * da - db, unum = 2 * db - da;
          if (mod_nonneg(tnum, three_l) != 0 || mod_nonneg(unum, three_l) != 0)
            continue;  // not a lattice translation
          Int t = tnum / three_l, u0 = unum / three_l;
          Int G2 = c.L * (t * t + t * u0 + u0 * u0) + A1 * t + B1 * u0 + c.G;
          std::array<Int, 4> cand = {c.L, A2, B2, G2};
          if (!have || cand < best) best = cand, have = true;
        }
      }
      if (!have) throw exact_error("tri canonicalization failed");
      return best;
    }
  }
  throw exact_error("bad kind");
}

}  // namespace pk
