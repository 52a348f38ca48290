#pragma once

#include <vector>

#include "belyi/bigfloat.hpp"
#include "belyi/dessin.hpp"
#include "belyi/domain.hpp"
#include "belyi/linalg.hpp"

namespace belyi {

// Partial sum c_{-1} zeta^-1 + c_0 + ... + c_N zeta^N, zeta = e^{2 pi i tau/m}.
struct TruncatedSeries {
  int m = 1;
  int N = 0;
  long digits = 0;
  std::vector<BigComplex> coeffs;  // coeffs[k + 1] = c_k
  double condition = 0;

  const BigComplex& c(int k) const { return coeffs[static_cast<std::size_t>(k + 1)]; }
};

struct SamplePoint {
  BigComplex tau;      // point on the arc, in the upper half plane
  BigComplex partner;  // M(tau)
  UnimodularMap M;
  UnimodularMap g;     // owning cell's representative
  int arc;             // index into FundamentalDomain::arcs
};

BigComplex zeta_of(const BigComplex& tau, int m);

// k points per usable arc (translation pairings are skipped) at equal
// hyperbolic steps; `shift` in (-1/2, 1/2) moves every point by a fraction
// of a step, which gives held-out points for validation.
std::vector<SamplePoint> sample_arcs(const FundamentalDomain& dom, int k, Bits prec, double shift = 0.0);

// points per arc used for truncation N: at least `k`, and enough that the
// pasting equations outnumber the unknowns twice over
int effective_points(const FundamentalDomain& dom, int N, int k);

// the pasting row zeta(tau)^j - zeta(M tau)^j for j = -1..N
std::vector<BigComplex> pasting_row(const SamplePoint& s, int N, int m);

// Unknowns are c_{-1}..c_N, stored scaled: column j holds c_{j-1} / scale[j].
struct LinearSystem {
  ComplexMatrix A;
  std::vector<BigComplex> rhs;
  std::vector<BigReal> scale;
  int m = 1;
  int N = 0;
};

// Rows 0..N-1: normal equations of the pasting least-squares problem with
// respect to c_1..c_N.  Row N: sum over black degree-3 classes = 0.  Row
// N+1: sum over white degree-2 classes = 1.  With no degree-3 (degree-2)
// vertices the sum runs over all black (white) vertices.
LinearSystem assemble_system(const FundamentalDomain& dom, const std::vector<SamplePoint>& samples, int N,
                             const Passport& p, long digits);

TruncatedSeries solve_series(const LinearSystem& sys, long digits);

// *outside is set when |zeta| >= 1
BigComplex evaluate_series(const TruncatedSeries& s, const BigComplex& tau, bool* outside = nullptr);

// max |t(x) - t(Mx)| over k held-out points per arc
BigReal pasting_residual(const FundamentalDomain& dom, const TruncatedSeries& s, int k);

struct VertexClass {
  int degree;
  std::vector<int> edges;
  BigComplex value;  // mean over the class
  double spread;     // max deviation from the mean
};

struct VertexEstimates {
  std::vector<VertexClass> black, white;
  double max_spread = 0;
};

VertexEstimates vertex_estimates(const FundamentalDomain& dom, const TruncatedSeries& s);

BigComplex rho0(Bits prec);  // e^{2 pi i / 3}

TruncatedSeries solve_modular_function(const FundamentalDomain& dom, const Passport& p, int N, int points,
                                       long digits);

}  // namespace belyi
