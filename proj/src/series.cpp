#include "belyi/series.hpp"

#include <algorithm>
#include <cmath>

#include "belyi/errors.hpp"

namespace belyi {

BigComplex rho0(Bits prec) {
  BigReal h(0.5, prec);
  return BigComplex(-h, sqrt(BigReal(3.0, prec)) * h);
}

BigComplex zeta_of(const BigComplex& tau, int m) {
  Bits prec = tau.prec();
  BigReal f = pi(prec) * 2L / static_cast<long>(m);
  // e^{2 pi i tau / m} = e^{-2 pi Im/m} e^{2 pi i Re/m}
  return cis(tau.re() * f) * exp(-(tau.im() * f));
}

namespace {

bool usable(const BoundaryArc& a) { return !a.translation; }

// base-cell point on the given side at parameter t in (0, 1); t -> 0 is
// the elliptic end of the side
BigComplex side_point(Side side, double t, Bits prec) {
  BigReal half(0.5, prec);
  if (side == Side::RIGHT) {
    // Re = 1/2, ln Im uniform between ln(sqrt 3/2) and ln 1.3
    BigReal y0 = sqrt(BigReal(3.0, prec)) * half;
    BigReal l0 = log(y0), l1 = log(BigReal(1.3, prec));
    BigReal y = exp(l0 + (l1 - l0) * BigReal(t, prec));
    return BigComplex(half, y);
  }
  // left half of the unit arc, from i (t = 0) towards rho0 (t = 1);
  // geodesic parameter s with cos(theta) = tanh(s)
  BigReal s_end = log(BigReal(3.0, prec)) * half;  // artanh(1/2)
  BigReal s = -(s_end * BigReal(t, prec));
  BigReal e2 = exp(s * 2L);
  BigReal one(1.0, prec);
  BigReal th = (e2 - one) / (e2 + one);
  return BigComplex(th, sqrt(one - th * th));
}

}  // namespace

std::vector<SamplePoint> sample_arcs(const FundamentalDomain& dom, int k, Bits prec, double shift) {
  if (k < 1) throw NumericError("points per arc must be positive");
  std::vector<SamplePoint> out;
  BigReal limit(0.995, prec);
  for (std::size_t ai = 0; ai < dom.arcs.size(); ++ai) {
    const BoundaryArc& arc = dom.arcs[ai];
    if (!usable(arc)) continue;
    const UnimodularMap& g = dom.cells[static_cast<std::size_t>(arc.cell)].g;
    for (int j = 1; j <= k; ++j) {
      double t = (static_cast<double>(j) + shift) / static_cast<double>(k + 1);
      BigComplex tau, partner;
      for (int attempt = 0; attempt < 40; ++attempt) {
        tau = g.apply(side_point(arc.side, t, prec));
        partner = arc.pairing.apply(tau);
        if (abs(zeta_of(tau, dom.width)) <= limit && abs(zeta_of(partner, dom.width)) <= limit) break;
        t *= 0.5;  // deeper towards the elliptic end
      }
      out.push_back(SamplePoint{tau, partner, arc.pairing, g, static_cast<int>(ai)});
    }
  }
  return out;
}

int effective_points(const FundamentalDomain& dom, int N, int k) {
  int arcs = static_cast<int>(std::count_if(dom.arcs.begin(), dom.arcs.end(), usable));
  if (arcs == 0) throw NumericError("domain has no usable boundary arcs");
  int need = (2 * (N + 2) + arcs - 1) / arcs;
  return std::max(k, need);
}

namespace {

// zeta^-1, 1, zeta, ..., zeta^N
std::vector<BigComplex> powers(const BigComplex& z, int N) {
  std::vector<BigComplex> out;
  out.reserve(static_cast<std::size_t>(N + 2));
  out.push_back(inverse(z));
  out.push_back(BigComplex(BigReal(1.0, z.prec()), BigReal::zero(z.prec())));
  for (int k = 1; k <= N; ++k) out.push_back(out.back() * z);
  return out;
}

}  // namespace

std::vector<BigComplex> pasting_row(const SamplePoint& s, int N, int m) {
  auto a = powers(zeta_of(s.tau, m), N);
  auto b = powers(zeta_of(s.partner, m), N);
  for (std::size_t j = 0; j < a.size(); ++j) a[j] -= b[j];
  return a;
}

namespace {

struct ClassPoints {
  std::vector<std::vector<int>> classes;  // cells per vertex class
  std::vector<int> degrees;
};

ClassPoints vertex_classes(const FundamentalDomain& dom, const Permutation& rot) {
  ClassPoints out;
  for (const auto& cyc : rot.cycles()) {
    std::vector<int> cells;
    for (int e : cyc) cells.push_back(dom.cell_of_edge[static_cast<std::size_t>(e)]);
    out.classes.push_back(std::move(cells));
    out.degrees.push_back(static_cast<int>(cyc.size()));
  }
  return out;
}

}  // namespace

LinearSystem assemble_system(const FundamentalDomain& dom, const std::vector<SamplePoint>& samples, int N,
                             const Passport& p, long digits) {
  if (N < 1) throw NumericError("truncation order must be positive");
  if (static_cast<int>(samples.size()) < N)
    throw NumericError("need at least N = " + std::to_string(N) + " sample points, got " +
                       std::to_string(samples.size()));
  Bits prec = digits_to_bits(digits);
  const int m = dom.width;
  const std::size_t U = static_cast<std::size_t>(N + 2);
  LinearSystem sys;
  sys.m = m;
  sys.N = N;
  sys.A = ComplexMatrix(U, U, prec);
  sys.rhs.assign(U, BigComplex::zero(prec));

  // column scaling r^-k for c_k, k >= 1, with r the largest |zeta| seen
  BigReal r = BigReal::zero(prec);
  std::vector<std::vector<BigComplex>> rows;
  rows.reserve(samples.size());
  for (const auto& s : samples) {
    BigReal za = abs(zeta_of(s.tau, m)), zb = abs(zeta_of(s.partner, m));
    r = max(r, max(za, zb));
    rows.push_back(pasting_row(s, N, m));
  }
  if (r >= BigReal(1.0, prec)) throw NumericError("sample point outside the disc of convergence");
  sys.scale.assign(U, BigReal(1.0, prec));
  for (std::size_t j = 2; j < U; ++j) sys.scale[j] = sys.scale[j - 1] / r;
  for (auto& row : rows) {
    if (std::all_of(row.begin(), row.end(), [](const BigComplex& z) { return z.is_zero(); }))
      throw NumericError("all-zero pasting row (sample at an elliptic point)");
    for (std::size_t j = 2; j < U; ++j) row[j] *= sys.scale[j];
  }

  // normal equations for c_1..c_N; column 1 (c_0) vanishes in every row
  for (std::size_t k = 2; k < U; ++k) {
    for (std::size_t j = 0; j < U; ++j) {
      if (j == 1) continue;
      if (j >= 2 && j < k) {
        sys.A(k - 2, j) = conj(sys.A(j - 2, k));
        continue;
      }
      BigComplex acc = BigComplex::zero(prec);
      for (const auto& row : rows) acc.add_mul(conj(row[k]), row[j]);
      sys.A(k - 2, j) = acc;
    }
  }

  // normalization rows
  BigComplex rho = rho0(prec);
  BigComplex i_pt(BigReal::zero(prec), BigReal(1.0, prec));
  auto norm_row = [&](std::size_t row, const Permutation& rot, int wanted, const BigComplex& pt) {
    ClassPoints cp = vertex_classes(dom, rot);
    bool any = std::find(cp.degrees.begin(), cp.degrees.end(), wanted) != cp.degrees.end();
    for (std::size_t c = 0; c < cp.classes.size(); ++c) {
      if (any && cp.degrees[c] != wanted) continue;
      BigReal w = BigReal(1.0, prec) / static_cast<long>(cp.classes[c].size());
      for (int cell : cp.classes[c]) {
        auto pw = powers(zeta_of(dom.cells[static_cast<std::size_t>(cell)].g.apply(pt), m), N);
        for (std::size_t j = 0; j < U; ++j) sys.A(row, j) += pw[j] * sys.scale[j] * w;
      }
    }
  };
  (void)p;  // vertex degrees are read off the permutations, which realize p
  norm_row(U - 2, then(dom.sigma_S, dom.sigma_T), 3, rho);
  norm_row(U - 1, dom.sigma_S, 2, i_pt);
  sys.rhs[U - 1] = BigComplex(BigReal(1.0, prec), BigReal::zero(prec));
  return sys;
}

TruncatedSeries solve_series(const LinearSystem& sys, long digits) {
  LinearSolution sol = gauss_solve(sys.A, sys.rhs, digits);
  TruncatedSeries s;
  s.m = sys.m;
  s.N = sys.N;
  s.digits = digits;
  s.condition = sol.condition;
  for (std::size_t j = 0; j < sol.x.size(); ++j) s.coeffs.push_back(sol.x[j] * sys.scale[j]);
  BigReal tiny = pow10(-(digits - 5), s.coeffs[0].prec());
  if (abs(s.coeffs[0]) <= tiny) throw SingularSystem("solved series has vanishing pole coefficient c_-1");
  return s;
}

BigComplex evaluate_series(const TruncatedSeries& s, const BigComplex& tau, bool* outside) {
  BigComplex z = zeta_of(tau, s.m);
  if (outside) *outside = abs(z) >= BigReal(1.0, z.prec());
  BigComplex acc = s.coeffs.back();
  for (std::size_t k = s.coeffs.size() - 1; k-- > 1;) acc = acc * z + s.coeffs[k];
  return acc + s.coeffs[0] * inverse(z);
}

BigReal pasting_residual(const FundamentalDomain& dom, const TruncatedSeries& s, int k) {
  Bits prec = s.coeffs[0].prec();
  BigReal worst = BigReal::zero(prec);
  for (const auto& pt : sample_arcs(dom, k, prec, 0.37)) {
    BigReal d = abs(evaluate_series(s, pt.tau) - evaluate_series(s, pt.partner));
    worst = max(worst, d);
  }
  return worst;
}

VertexEstimates vertex_estimates(const FundamentalDomain& dom, const TruncatedSeries& s) {
  VertexEstimates out;
  Bits prec = s.coeffs[0].prec();
  BigComplex rho = rho0(prec);
  BigComplex i_pt(BigReal::zero(prec), BigReal(1.0, prec));
  Permutation a = then(dom.sigma_S, dom.sigma_T);  // sigma_{ST}
  auto collect = [&](const Permutation& rot, const BigComplex& pt, std::vector<VertexClass>& dst) {
    for (const auto& cyc : rot.cycles()) {
      std::vector<BigComplex> vals;
      for (int e : cyc)
        vals.push_back(evaluate_series(s, dom.cells[static_cast<std::size_t>(dom.cell_of_edge[static_cast<std::size_t>(e)])].g.apply(pt)));
      BigComplex mean = BigComplex::zero(prec);
      for (const auto& v : vals) mean += v;
      mean /= BigReal(static_cast<long>(vals.size()), prec);
      double spread = 0;
      for (const auto& v : vals) spread = std::max(spread, abs(v - mean).to_double());
      out.max_spread = std::max(out.max_spread, spread);
      dst.push_back(VertexClass{static_cast<int>(cyc.size()), cyc, mean, spread});
    }
  };
  collect(a, rho, out.black);
  collect(dom.sigma_S, i_pt, out.white);
  return out;
}

TruncatedSeries solve_modular_function(const FundamentalDomain& dom, const Passport& p, int N, int points,
                                       long digits) {
  Bits prec = digits_to_bits(digits);
  PrecisionScope scope(prec);
  int k = effective_points(dom, N, points);
  auto samples = sample_arcs(dom, k, prec);
  LinearSystem sys = assemble_system(dom, samples, N, p, digits);
  return solve_series(sys, digits);
}

}  // namespace belyi
