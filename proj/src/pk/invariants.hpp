#pragma once
// Quadratic invariants: the per-circle chi_2 of each family/type, packing-level
// constancy, pair-level partial symbols, and the Kronecker-constancy check for
// shifted quadratic forms.
#include <optional>

#include "pk/kernel.hpp"

namespace pk {

enum class FormTag { Alpha, Beta };

// A witness value rho = Q(x,y) represented by the tangency form of a circle,
// with gcd(rho, a) = 1; used to evaluate chi_2.
struct RhoWitness {
  CircleId circle;
  Int x, y;
  FormTag form;
  Int rho;
};

// Deterministic witness search: y ascending from 0, x ordered 0, 1, -1, 2,
// -2, ...; first (y,x) with gcd(x,y)=1, the family's domain congruence, and
// gcd(rho, a)=1.  Throws on bound exhaustion (existence is guaranteed).
RhoWitness find_rho(const Config& c, const CircleId& id);

// Whether the packing's type admits a per-circle chi_2 formula.
bool chi2_applicable(const Config& c);

// The per-circle chi_2 (+1/-1).  Throws for types without a formula, or for
// circles of curvature zero.
int chi2_circle(const Config& c, const CircleId& id);

// Evaluates the piecewise chi_2 formula at curvature a with a given witness
// value rho (gcd(rho, a)=1).  Exposed for edge-propagation checks that use
// rho = a + b.
int chi2_formula(const Config& c, const Int& a, const Int& rho);

struct Chi2Value {
  bool applicable = false;
  int value = 0;  // +1 or -1 when applicable
};

// Samples the seed circles plus `samples` circles reached by random generator
// words, asserts chi2_circle is constant, and returns the common value.
// Returns {applicable=false} for types without a global invariant.
Chi2Value chi2_packing(const Config& c, int samples, unsigned long rng_seed);

// Pair-level symbol chi_2(C1, C2) for a tangent pair of coprime nonzero
// curvatures.  For types with a per-circle chi_2 this evaluates the piecewise
// formula with rho = a + b; for the octahedral partial types it is the
// paper's pair formula; for the remaining square/triangular types it is the
// raw Kronecker arrow symbol (b|a), defined up to a global flip.
int partial_symbol(const Config& c, const CircleId& u, const CircleId& v);

struct FormConstancyReport {
  int value = 0;    // the common Kronecker symbol
  long checked = 0;  // number of represented values examined
};

// Verifies the hypothesis and conclusion of the Kronecker-constancy lemma:
// with k = 4 if v2(a) = 1, k = 2 if v2(a) = 3, k = 0 otherwise, requires
// 2^k * a | disc(Q), then checks kronecker(rho, a) is constant over all
// values rho = Q(x,y), |x|,|y| <= bound, gcd(x,y) = 1, gcd(rho, a) = 1.
// Throws if the divisibility hypothesis fails or constancy is violated.
FormConstancyReport form_symbol_constancy(const QForm& Q, const Int& a,
                                          long bound);

}  // namespace pk
