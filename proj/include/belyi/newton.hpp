#pragma once

#include <vector>

#include "belyi/bigfloat.hpp"
#include "belyi/dessin.hpp"
#include "belyi/linalg.hpp"
#include "belyi/series.hpp"

namespace belyi {

// Complex polynomial, coefficients low-to-high.
using CPoly = std::vector<BigComplex>;

CPoly poly_mul(const CPoly& p, const CPoly& q);
CPoly poly_sub(const CPoly& p, const CPoly& q);
CPoly poly_from_roots(const std::vector<BigComplex>& roots, Bits prec);
CPoly poly_with_prec(const CPoly& p, Bits prec);

// P3^3 P1 - Q2^2 Q1 = c R with P3, P1, Q2, Q1, R monic.
struct NumericAnsatz {
  CPoly P3, P1, Q2, Q1, R;
  BigComplex c;

  CPoly& poly(int k);
  const CPoly& poly(int k) const;
  Bits prec() const { return c.prec(); }
  NumericAnsatz with_prec(Bits prec) const;
};

enum PolyIndex { kP3 = 0, kP1 = 1, kQ2 = 2, kQ1 = 3, kR = 4 };

struct Slot {
  int poly;
  int index;  // coefficient of z^index
};

// Free coefficients of the ansatz plus c.  Two coefficients are pinned to
// fix the affine freedom z -> Az + B: the subleading coefficient of P3 is 0
// (of P1 when there are no trivalent black vertices) and that of Q2 is -1
// (of Q1 when there are no bivalent white vertices).
struct UnknownLayout {
  std::vector<Slot> slots;  // c is the extra last unknown
  Slot pin0, pin1;
  int n = 0;

  int unknowns() const { return static_cast<int>(slots.size()) + 1; }
};

// Throws InvalidDessin for passports with no pole of order > 0 at infinity.
UnknownLayout unknown_layout(const Passport& p);

// Coefficients z^0..z^{n-1} of P3^3 P1 - Q2^2 Q1 - c R.
std::vector<BigComplex> residual_vector(const NumericAnsatz& a, int n);

// d residual_vector / d unknowns, columns in layout order, c last
ComplexMatrix jacobian(const NumericAnsatz& a, const UnknownLayout& L);

// max |residual| relative to max(1, |coefficients of P3^3 P1|)
BigReal relative_residual(const NumericAnsatz& a, int n);

// Roots from the vertex estimates, c and R read off P3^3 P1 - Q2^2 Q1.
// SeedRejected when the coefficients above z^r are not small.
NumericAnsatz seed_ansatz(const VertexEstimates& est, const Passport& p, long digits);

struct NewtonStep {
  int step;
  long digits;
  double log10_residual;
  double log10_step;
  int damping;  // step halvings taken
};

struct NewtonConfig {
  long start_digits = 30;
  long target_digits = 100;
  int max_iterations = 80;
};

struct NewtonResult {
  NumericAnsatz ansatz;
  std::vector<NewtonStep> log;
  long digits = 0;
  double log10_residual = 0;
};

// Damped Newton with precision doubling; throws NewtonFailure.
NewtonResult newton_solve(const NumericAnsatz& start, const Passport& p, const NewtonConfig& cfg);

}  // namespace belyi
