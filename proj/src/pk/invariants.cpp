#include "pk/invariants.hpp"

#include <random>

namespace pk {

namespace {

[[noreturn]] void inv_error(const std::string& why) {
  throw exact_error("invariants: " + why);
}

bool set_eq(const std::set<long>& s, std::initializer_list<long> v) {
  return s == std::set<long>(v);
}

// Evaluates the family/type piecewise chi_2 formula at curvature a with
// witness rho.
int chi2_with_type(Kind kind, const std::set<long>& type, const Int& a,
                   const Int& rho) {
  switch (kind) {
    case Kind::Oct: {
      if (!set_eq(type, {0, 1, 2}) && !set_eq(type, {2, 4, 7}))
        inv_error("oct type without per-circle chi_2");
      long m = mod_nonneg(a, 8L);
      if (m == 2) return kronecker(rho, a / 2);
      if (m == 4) return kronecker(-rho, a);
      return kronecker(rho, a);
    }
    case Kind::Cube: {
      long m = mod_nonneg(a, 4L);
      if (set_eq(type, {0, 1, 2})) {
        if (m == 2) return kronecker(-rho, a / 2);
        return kronecker(rho, a);
      }
      if (set_eq(type, {0, 2, 3})) {
        if (m == 3) return kronecker(rho, a);
        if (m == 0) return -kronecker(-rho, a);
        if (m == 2) return -kronecker(rho, a / 2);
        inv_error("cube type (0,2,3): curvature 1 mod 4 impossible");
      }
      inv_error("unknown cube type");
    }
    case Kind::Square: {
      if (!set_eq(type, {1}) && type.size() != 8)
        inv_error("square type without per-circle chi_2");
      long m = mod_nonneg(a, 8L);
      int base = kronecker(rho, a);
      int rho_odd = mpz_odd_p(rho.get_mpz_t()) ? 1 : 0;
      if (m == 0 || m == 1 || m == 4) return base;
      if (m == 2 || m == 6 || m == 7) return -base;
      if (m == 3) return rho_odd ? -base : base;
      if (m == 5) return rho_odd ? base : -base;
      inv_error("square chi_2: unexpected residue");
    }
    case Kind::Tri: {
      if (set_eq(type, {1})) return kronecker(rho, a);
      if (set_eq(type, {3, 11})) {
        long m = mod_nonneg(a, 12L);
        if (m == 11) return kronecker(rho, a);
        if (m == 3) return -kronecker(rho, a);
        inv_error("tri type (3,11): unexpected residue");
      }
      inv_error("tri type without per-circle chi_2");
    }
  }
  inv_error("bad kind");
}

bool per_circle_defined(Kind kind, const std::set<long>& type) {
  switch (kind) {
    case Kind::Oct: return set_eq(type, {0, 1, 2}) || set_eq(type, {2, 4, 7});
    case Kind::Cube: return true;
    case Kind::Square: return set_eq(type, {1}) || type.size() == 8;
    case Kind::Tri: return set_eq(type, {1}) || set_eq(type, {3, 11});
  }
  return false;
}

}  // namespace

RhoWitness find_rho(const Config& c, const CircleId& id) {
  Int a = curvature(c, id);
  if (a == 0) inv_error("find_rho: curvature zero");
  TangentForms tf = tangent_forms(c, id);
  const long bound = 512;
  for (long y = 0; y <= bound; ++y) {
    for (long k = 0; k <= bound; ++k) {
      for (long sgn : {1, -1}) {
        if (k == 0 && sgn < 0) continue;
        long x = sgn * k;
        if (!ford_domain(Int(x), Int(y))) continue;
        bool alpha = tf.use_alpha(Int(x), Int(y));
        Rat val = (alpha ? tf.alpha : tf.beta).eval(Int(x), Int(y));
        if (val.get_den() != 1) continue;
        Int rho = val.get_num();
        if (rho == 0 || gcd(rho, a) != 1) continue;
        return RhoWitness{id, Int(x), Int(y),
                          alpha ? FormTag::Alpha : FormTag::Beta, rho};
      }
    }
  }
  inv_error("find_rho: search bound exhausted");
}

bool chi2_applicable(const Config& c) {
  ModularType mt = modular_type(c);
  if (c.kind == Kind::Cube && set_eq(mt.residues, {0, 2, 3}))
    return false;  // per-circle formula exists, but no packing-level constant
  return per_circle_defined(c.kind, mt.residues);
}

int chi2_formula(const Config& c, const Int& a, const Int& rho) {
  return chi2_with_type(c.kind, modular_type(c).residues, a, rho);
}

int chi2_circle(const Config& c, const CircleId& id) {
  ModularType mt = modular_type(c);
  if (!per_circle_defined(c.kind, mt.residues))
    inv_error("chi2_circle: type without per-circle formula");
  RhoWitness w = find_rho(c, id);
  return chi2_with_type(c.kind, mt.residues, curvature(c, id), w.rho);
}

Chi2Value chi2_packing(const Config& c, int samples, unsigned long rng_seed) {
  if (!chi2_applicable(c)) return Chi2Value{false, 0};
  ModularType mt = modular_type(c);
  std::mt19937_64 rng(rng_seed);
  int value = 0;
  auto visit = [&](const Config& cfg, const CircleId& id) {
    Int a = curvature(cfg, id);
    if (a <= 0) return;  // sample interior circles only
    int v = chi2_with_type(cfg.kind, mt.residues, a, find_rho(cfg, id).rho);
    if (value == 0)
      value = v;
    else if (v != value)
      inv_error("chi2_packing: inconsistent values (bug)");
  };
  bool tuples = c.kind == Kind::Oct || c.kind == Kind::Cube;
  if (tuples)
    for (auto& s : circle_slots(c)) visit(c, s);
  else
    for (long i = -1; i <= 1; ++i)
      for (long j = -1; j <= 1; ++j) visit(c, CircleId::cell(i, j));
  for (int s = 0; s < samples; ++s) {
    Config x = c;
    int depth = 1 + (int)(rng() % 8);
    for (int d = 0; d < depth; ++d) {
      if (c.kind == Kind::Oct)
        x = apply_generator(x, FaceId{(int)(rng() % 8)});
      else if (c.kind == Kind::Cube)
        x = apply_generator(x, FaceId{(int)(rng() % 6)});
      else
        x = apply_generator(x, FaceId{0, (long)(rng() % 4) - 2,
                                      (long)(rng() % 4) - 2, (rng() & 1) != 0});
    }
    if (tuples)
      visit(x, CircleId::slot((int)(rng() % x.t.size())));
    else
      visit(x, CircleId::cell((long)(rng() % 7) - 3, (long)(rng() % 7) - 3));
  }
  if (value == 0) inv_error("chi2_packing: no positive-curvature sample");
  return Chi2Value{true, value};
}

int partial_symbol(const Config& c, const CircleId& u, const CircleId& v) {
  if (!tangent_circles(c, u, v)) inv_error("partial_symbol: pair not tangent");
  Int a = curvature(c, u), b = curvature(c, v);
  if (a == 0 || b == 0) inv_error("partial_symbol: zero curvature");
  if (gcd(a, b) != 1) inv_error("partial_symbol: curvatures not coprime");
  ModularType mt = modular_type(c);
  if (c.kind == Kind::Oct && set_eq(mt.residues, {0, 3, 6})) {
    long m = mod_nonneg(a, 8L);
    if (m == 6) return kronecker(a + b, a / 2);
    if (m == 0) return kronecker(-(a + b), a);
    return kronecker(a + b, a);
  }
  if (c.kind == Kind::Oct && set_eq(mt.residues, {4, 5, 6}))
    return kronecker(a + b, a);
  if (per_circle_defined(c.kind, mt.residues))
    return chi2_with_type(c.kind, mt.residues, a, a + b);
  // square (5)/(3,7), tri (7)/(5,9)/even types: raw arrow symbol
  return kronecker(b, a);
}

FormConstancyReport form_symbol_constancy(const QForm& Q, const Int& a,
                                          long bound) {
  if (a == 0) inv_error("form_symbol_constancy: a = 0");
  Rat disc = Q.disc();
  if (disc.get_den() != 1)
    inv_error("form_symbol_constancy: non-integral discriminant");
  Int D = disc.get_num();
  long v = v2(a);
  long k = v == 1 ? 4 : v == 3 ? 2 : 0;
  Int m = abs(a) << k;
  if (D % m != 0)
    inv_error("form_symbol_constancy: discriminant divisibility hypothesis fails");
  FormConstancyReport rep;
  for (long y = 0; y <= bound; ++y)
    for (long x = -bound; x <= bound; ++x) {
      if (!ford_domain(Int(x), Int(y))) continue;
      Rat val = Q.eval(Int(x), Int(y));
      if (val.get_den() != 1) continue;
      Int rho = val.get_num();
      if (rho == 0 || gcd(rho, a) != 1) continue;
      int s = kronecker(rho, a);
      if (rep.value == 0)
        rep.value = s;
      else if (s != rep.value)
        inv_error("form_symbol_constancy: constancy violated");
      ++rep.checked;
    }
  if (rep.value == 0)
    inv_error("form_symbol_constancy: no represented value coprime to a");
  return rep;
}

}  // namespace pk
